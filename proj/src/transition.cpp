#include "padicsub/transition.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace padicsub {

IndexSet::IndexSet(long p, std::vector<IpElement> elements) : p_(p), elems_(std::move(elements)) {
    if (!is_prime(p_)) throw std::invalid_argument("p is not prime");
    for (const auto& e : elems_)
        if (e.prime() != p_) throw std::invalid_argument("mismatched primes");
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool IndexSet::contains(const IpElement& a) const {
    return std::binary_search(elems_.begin(), elems_.end(), a);
}

std::size_t IndexSet::index_of(const IpElement& a) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), a);
    if (it == elems_.end() || !(*it == a)) return elems_.size();
    return static_cast<std::size_t>(it - elems_.begin());
}

std::vector<std::string> IndexSet::to_strings() const {
    std::vector<std::string> out;
    out.reserve(elems_.size());
    for (const auto& e : elems_) out.push_back(e.to_string());
    return out;
}

IndexSet admissible_closure(const Mask& m, const std::vector<IpElement>& generators) {
    long p = m.prime();
    std::set<IpElement> K;
    K.insert(IpElement(p));
    for (const auto& g : generators) {
        if (g.prime() != p) throw std::invalid_argument("mismatched primes");
        K.insert(g);
    }
    const auto E = coset_representatives(p);
    std::deque<IpElement> work(K.begin(), K.end());
    while (!work.empty()) {
        IpElement beta = work.front();
        work.pop_front();
        for (const auto& [omega, hv] : m.coefficients().terms()) {
            for (const IpElement& eps : E) {
                IpElement t = group_add(group_sub(omega, eps), beta);
                if (t.first_digit() != 0) continue;
                IpElement cand = dilate_up(t);
                if (K.insert(cand).second) work.push_back(cand);
            }
        }
    }
    return IndexSet(p, std::vector<IpElement>(K.begin(), K.end()));
}

bool is_admissible(const Mask& m, const IndexSet& K) {
    for (const IpElement& eps : coset_representatives(m.prime()))
        for (const auto& [omega, hv] : m.coefficients().terms())
            for (const IpElement& beta : K.elements()) {
                IpElement t = group_add(group_sub(omega, eps), beta);
                if (t.first_digit() != 0) continue;
                if (!K.contains(dilate_up(t))) return false;
            }
    return true;
}

TransitionMatrix transition_matrix(const Mask& m, const IpElement& eps, const IndexSet& K) {
    if (eps.prime() != m.prime() || K.prime() != m.prime())
        throw std::invalid_argument("mismatched primes");
    if (!is_admissible(m, K)) throw std::invalid_argument("index set is not admissible");
    std::size_t n = K.size();
    ExactMatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        IpElement row = group_add(eps, dilate_down(K[i]));
        for (std::size_t j = 0; j < n; ++j) M.at(i, j) = m.at(group_sub(row, K[j]));
    }
    return {eps, K, std::move(M)};
}

std::vector<TransitionMatrix> transition_family(const Mask& m, const IndexSet& K) {
    std::vector<TransitionMatrix> ops;
    for (const IpElement& eps : coset_representatives(m.prime()))
        ops.push_back(transition_matrix(m, eps, K));
    return ops;
}

std::vector<GaussianRational> coordinates(const Sequence& u, const IndexSet& K) {
    std::vector<GaussianRational> x(K.size());
    for (const auto& [a, v] : u.terms()) {
        std::size_t i = K.index_of(a);
        if (i == K.size())
            throw std::invalid_argument("sequence support outside the index set: " + a.to_string());
        x[i] = v;
    }
    return x;
}

Subspace::Subspace(IndexSet ambient, std::vector<std::vector<GaussianRational>> basis)
    : ambient_(std::move(ambient)), basis_(std::move(basis)) {
    RowSpace rs(ambient_.size());
    for (const auto& b : basis_)
        if (!rs.insert(b)) throw std::invalid_argument("subspace basis is linearly dependent");
}

Subspace minimal_invariant_subspace(const std::vector<TransitionMatrix>& ops,
                                    const std::vector<Sequence>& generators) {
    if (ops.empty()) throw std::invalid_argument("empty operator family");
    const IndexSet& K = ops.front().K;
    for (const auto& op : ops)
        if (!(op.K.elements() == K.elements()))
            throw std::invalid_argument("operators live on different index sets");

    RowSpace rs(K.size());
    std::vector<std::vector<GaussianRational>> basis;
    std::deque<std::size_t> work;
    for (const auto& g : generators) {
        std::vector<GaussianRational> x = coordinates(g, K);
        if (rs.insert(x)) {
            basis.push_back(std::move(x));
            work.push_back(basis.size() - 1);
        }
    }
    while (!work.empty()) {
        std::size_t idx = work.front();
        work.pop_front();
        for (const auto& op : ops) {
            std::vector<GaussianRational> img = op.M.apply(basis[idx]);
            if (rs.insert(img)) {
                basis.push_back(std::move(img));
                work.push_back(basis.size() - 1);
            }
        }
    }
    return Subspace(K, std::move(basis));
}

ExactMatrix restrict_to(const TransitionMatrix& op, const Subspace& W) {
    if (!(op.K.elements() == W.ambient().elements()))
        throw std::invalid_argument("operator and subspace live on different index sets");
    std::size_t d = W.dimension();
    ExactMatrix R(d, d);
    if (d == 0) return R;
    SpanSolver solver(W.basis());
    for (std::size_t i = 0; i < d; ++i) {
        auto coords = solver.solve(op.M.apply(W.basis()[i]));
        if (!coords)
            throw std::invalid_argument("subspace is not invariant under the operator");
        for (std::size_t j = 0; j < d; ++j) R.at(j, i) = (*coords)[j];
    }
    return R;
}

}  // namespace padicsub
