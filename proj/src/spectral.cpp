#include "padicsub/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <future>

namespace padicsub {

namespace {

double op_norm(const Eigen::MatrixXcd& M, MatrixNorm which) {
    if (M.size() == 0) return 0.0;
    if (which == MatrixNorm::MaxRowSum) return M.cwiseAbs().rowwise().sum().maxCoeff();
    return M.cwiseAbs().colwise().sum().maxCoeff();
}

/// Multiplications needed to enumerate all words of length n with one
/// product per tree node below depth 1.
double enumeration_cost(std::size_t fan, long n) {
    double cost = 0.0, level = static_cast<double>(fan);
    for (long j = 2; j <= n; ++j) {
        level *= static_cast<double>(fan);
        cost += level;
    }
    return cost;
}

struct LeafFold {
    bool use_max = false;   // q = inf
    double qd = 1.0;
    MatrixNorm which = MatrixNorm::MaxRowSum;
    bool with_rho = false;  // also track max spectral radius over leaves
};

struct FoldResult {
    double acc = 0.0;  // q-sum, or running max when use_max
    double rho = 0.0;
    void absorb(const FoldResult& o, bool use_max) {
        acc = use_max ? std::max(acc, o.acc) : acc + o.acc;
        rho = std::max(rho, o.rho);
    }
};

FoldResult enumerate_leaves(const MatrixFamily& F, const Eigen::MatrixXcd& prefix, long remaining,
                            const LeafFold& fold) {
    if (remaining == 0) {
        FoldResult r;
        double nv = op_norm(prefix, fold.which);
        r.acc = fold.use_max ? nv : std::pow(nv, fold.qd);
        if (fold.with_rho) r.rho = spectral_radius(prefix);
        return r;
    }
    FoldResult r;
    for (std::size_t b = 0; b < F.count(); ++b) {
        FoldResult sub = enumerate_leaves(F, prefix * F.mirror[b], remaining - 1, fold);
        r.absorb(sub, fold.use_max);
    }
    return r;
}

/// Enumeration over all words of length n. Work is always split at the
/// length-2 prefixes and folded in prefix order, whether the prefixes run
/// inline or on a pool, so the result is bit-identical for every thread
/// count.
FoldResult enumerate_words(const MatrixFamily& F, long n, const LeafFold& fold, int threads) {
    FoldResult total;
    if (F.count() == 0 || n <= 0) return total;
    if (n < 2) {
        for (std::size_t b = 0; b < F.count(); ++b)
            total.absorb(enumerate_leaves(F, F.mirror[b], n - 1, fold), fold.use_max);
        return total;
    }
    std::vector<std::pair<std::size_t, std::size_t>> prefixes;
    for (std::size_t b = 0; b < F.count(); ++b)
        for (std::size_t c = 0; c < F.count(); ++c) prefixes.emplace_back(b, c);
    bool parallel =
        threads > 1 && n >= 3 && std::pow(static_cast<double>(F.count()), n) >= 4096.0;
    if (!parallel) {
        for (auto [b, c] : prefixes)
            total.absorb(enumerate_leaves(F, F.mirror[b] * F.mirror[c], n - 2, fold),
                         fold.use_max);
        return total;
    }
    std::vector<std::future<FoldResult>> tasks;
    for (auto [b, c] : prefixes)
        tasks.push_back(std::async(std::launch::async, [&, b = b, c = c] {
            return enumerate_leaves(F, F.mirror[b] * F.mirror[c], n - 2, fold);
        }));
    for (auto& t : tasks) total.absorb(t.get(), fold.use_max);
    return total;
}

}  // namespace

const char* matrix_norm_name(MatrixNorm n) {
    return n == MatrixNorm::MaxRowSum ? "max-row-sum" : "max-column-sum";
}

MatrixFamily MatrixFamily::from(std::vector<ExactMatrix> members) {
    MatrixFamily F;
    F.exact = std::move(members);
    for (const auto& m : F.exact) {
        if (m.rows() != m.cols()) throw std::invalid_argument("family members must be square");
        if (m.rows() != F.exact.front().rows())
            throw std::invalid_argument("family members must have equal dimension");
        F.mirror.push_back(m.to_complex());
    }
    F.dim = F.exact.empty() ? 0 : F.exact.front().rows();
    return F;
}

std::optional<long> nilpotency_index(const MatrixFamily& F, long max_n) {
    if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
    if (F.exact.empty()) return std::nullopt;
    std::size_t d = F.dim;
    // span of the images of all length-k words; strictly decreasing until it
    // either reaches zero or stalls (then no word length can reach zero)
    RowSpace span(d);
    for (const auto& A : F.exact)
        for (std::size_t j = 0; j < d && span.dim() < d; ++j) {
            std::vector<GaussianRational> col(d);
            for (std::size_t i = 0; i < d; ++i) col[i] = A.at(i, j);
            span.insert(std::move(col));
        }
    long k = 1;
    while (k <= max_n) {
        if (span.dim() == 0) return k;
        RowSpace next(d);
        for (const auto& A : F.exact)
            for (const auto& b : span.echelon_rows()) next.insert(A.apply(b));
        if (next.dim() >= span.dim()) return std::nullopt;  // stalled, never nilpotent
        span = std::move(next);
        ++k;
    }
    return std::nullopt;
}

double spectral_radius(const Eigen::MatrixXcd& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("matrix must be square");
    if (M.rows() == 0) return 0.0;
    if (M.rows() == 1) return std::abs(M(0, 0));
    if (M.isZero(0.0)) return 0.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigenvalue iteration did not converge; residual scale " +
                                 std::to_string(op_norm(M, MatrixNorm::MaxRowSum)));
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius(const ExactMatrix& M) { return spectral_radius(M.to_complex()); }

double family_norm(const MatrixFamily& F, long n, const QValue& q, MatrixNorm norm, Budget* budget,
                   int threads) {
    if (n < 1) throw std::invalid_argument("word length must be >= 1");
    if (F.count() == 0) return 0.0;
    auto nil = nilpotency_index(F, std::min<long>(n, static_cast<long>(F.dim) + 1));
    if (nil && *nil <= n) return 0.0;
    if (budget) budget->charge(enumeration_cost(F.count(), n));
    LeafFold fold;
    fold.use_max = q.is_inf();
    fold.qd = q.is_inf() ? 1.0 : q.as_double();
    fold.which = norm;
    FoldResult r = enumerate_words(F, n, fold, threads);
    return fold.use_max ? r.acc : std::pow(r.acc, 1.0 / fold.qd);
}

double jsr_upper(const MatrixFamily& F, const QValue& q, long depth, MatrixNorm norm,
                 Budget* budget, int threads) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (F.count() == 0) return 0.0;
    if (nilpotency_index(F, static_cast<long>(F.dim) + 1)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (long n = 1; n <= depth; ++n)
        best = std::min(best, std::pow(family_norm(F, n, q, norm, budget, threads),
                                       1.0 / static_cast<double>(n)));
    return best;
}

double jsr_lower(const MatrixFamily& F, long depth, Budget* budget, int threads) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (F.count() == 0) return 0.0;
    if (nilpotency_index(F, static_cast<long>(F.dim) + 1)) return 0.0;
    LeafFold fold;
    fold.use_max = true;
    fold.with_rho = true;
    double best = 0.0;
    for (long n = 1; n <= depth; ++n) {
        if (budget) budget->charge(enumeration_cost(F.count(), n));
        FoldResult r = enumerate_words(F, n, fold, threads);
        best = std::max(best, std::pow(r.rho, 1.0 / static_cast<double>(n)));
    }
    return best;
}

JsrBracket jsr_bracket(const MatrixFamily& F, const QValue& q, long depth, MatrixNorm norm,
                       Budget* budget, int threads) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    JsrBracket b;
    b.q = q;
    b.depth_requested = depth;
    b.norm_used = norm;
    if (F.count() == 0) {
        b.lower = b.upper = 0.0;
        b.depth_achieved = depth;
        return b;
    }
    b.nilpotency = nilpotency_index(F, static_cast<long>(F.dim) + 1);
    if (b.nilpotency) {
        b.lower = b.upper = 0.0;
        b.depth_achieved = depth;
        return b;
    }
    LeafFold fold;
    fold.use_max = q.is_inf();
    fold.qd = q.is_inf() ? 1.0 : q.as_double();
    fold.which = norm;
    fold.with_rho = true;
    for (long n = 1; n <= depth; ++n) {
        try {
            if (budget) budget->charge(enumeration_cost(F.count(), n));
        } catch (const MulBudgetExceeded&) {
            b.budget_exhausted = true;
            break;
        }
        FoldResult r = enumerate_words(F, n, fold, threads);
        double fn = fold.use_max ? r.acc : std::pow(r.acc, 1.0 / fold.qd);
        b.upper = std::min(b.upper, std::pow(fn, 1.0 / static_cast<double>(n)));
        b.lower = std::max(b.lower, std::pow(r.rho, 1.0 / static_cast<double>(n)));
        b.depth_achieved = n;
    }
    return b;
}

}  // namespace padicsub
