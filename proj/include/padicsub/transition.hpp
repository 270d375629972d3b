#pragma once

#include "padicsub/exact_matrix.hpp"
#include "padicsub/mask.hpp"

namespace padicsub {

/// Ordered finite index set in the shift group; fixes the basis order
/// {delta_alpha : alpha in K} by the (gamma, k) order of its elements.
class IndexSet {
  public:
    IndexSet(long p, std::vector<IpElement> elements);

    long prime() const { return p_; }
    std::size_t size() const { return elems_.size(); }
    const std::vector<IpElement>& elements() const { return elems_; }
    const IpElement& operator[](std::size_t i) const { return elems_[i]; }

    bool contains(const IpElement& a) const;
    /// Position of a in the basis order, or size() if absent.
    std::size_t index_of(const IpElement& a) const;

    std::vector<std::string> to_strings() const;

  private:
    long p_;
    std::vector<IpElement> elems_;  // sorted, unique
};

/// Smallest K containing G and 0 such that l(K) is invariant under every
/// transition operator: closed under t = omega - eps + beta pulling back
/// through the dilation whenever the leading digit of t vanishes.
IndexSet admissible_closure(const Mask& m, const std::vector<IpElement>& generators);

/// Invariance test for all coset representatives eps.
bool is_admissible(const Mask& m, const IndexSet& K);

/// Transition operator A_eps restricted to K: M(alpha, beta) = h(eps + A alpha - beta).
struct TransitionMatrix {
    IpElement eps;
    IndexSet K;
    ExactMatrix M;
};

/// Builds A_eps on K; K must be admissible (checked).
TransitionMatrix transition_matrix(const Mask& m, const IpElement& eps, const IndexSet& K);

/// Transition operators for every coset representative, in E order.
std::vector<TransitionMatrix> transition_family(const Mask& m, const IndexSet& K);

/// Coordinates of a sequence over K; throws if its support leaves K.
std::vector<GaussianRational> coordinates(const Sequence& u, const IndexSet& K);

/// Subspace of l(K) with an explicitly ordered basis. Basis vectors are kept
/// as given (generators first, then closure images); rank bookkeeping is a
/// separate exact echelon form.
class Subspace {
  public:
    Subspace(IndexSet ambient, std::vector<std::vector<GaussianRational>> basis);

    const IndexSet& ambient() const { return ambient_; }
    std::size_t dimension() const { return basis_.size(); }
    const std::vector<std::vector<GaussianRational>>& basis() const { return basis_; }

  private:
    IndexSet ambient_;
    std::vector<std::vector<GaussianRational>> basis_;
};

/// Minimal common invariant subspace of the given operators generated by the
/// sequences; breadth-first closure with exact rank updates. The basis keeps
/// generator order, followed by new images in discovery order.
Subspace minimal_invariant_subspace(const std::vector<TransitionMatrix>& ops,
                                    const std::vector<Sequence>& generators);

/// Coordinate matrix of op restricted to W in W's basis order (columns are
/// images of basis vectors); throws if W is not invariant under op.
ExactMatrix restrict_to(const TransitionMatrix& op, const Subspace& W);

}  // namespace padicsub
