#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "padicsub/sequence.hpp"

namespace padicsub {

/// Refinement mask h on the grid {k/p^{N+1} : 0 <= k < p^{N+1}} with exact
/// complex-rational coefficients normalized by sum h = p.
class Mask {
  public:
    Mask(long p, long order, Sequence coefficients);

    long prime() const { return p_; }
    /// Support order N: the grid has denominator p^{N+1}.
    long order() const { return order_; }
    const Sequence& coefficients() const { return coeffs_; }

    GaussianRational at(const IpElement& alpha) const { return coeffs_.at(alpha); }
    /// Grid point k/p^{N+1}.
    IpElement grid_point(long k) const;
    long grid_size() const;

    std::vector<IpElement> support() const;

  private:
    long p_;
    long order_;
    Sequence coeffs_;
};

struct ValidationReport {
    bool pass = false;
    GaussianRational coefficient_sum;
    std::vector<IpElement> off_grid;
};

/// Parses the mask JSON document. Coefficient values are rational strings
/// ("a" or "a/b"); JSON numbers are also accepted and converted exactly.
/// Duplicate k or k outside [0, p^{N+1}) is an error.
Mask parse_mask(const std::string& text);
Mask load_mask(const std::string& path);
std::string mask_to_json(const Mask& m);

/// Exact normalization check: sum of coefficients equals p and the support
/// lies on the declared grid.
ValidationReport validate(const Mask& m);

/// Symbol H(xi) = (1/p) sum_k h(k/p^{N+1}) chi(k/p^{N+1}, xi).
std::complex<double> symbol(const Mask& m, const PadicRational& xi);

struct PrecheckEntry {
    long k = 0;
    std::complex<double> value;
    /// Required |H(k)|: 0 when p does not divide k, 1 otherwise.
    double required_modulus = 0.0;
    bool ok = false;
};

struct PrecheckReport {
    bool pass = false;
    double tol = 0.0;
    std::vector<PrecheckEntry> entries;
};

/// Orthonormality pre-check on the symbol: H(k) ~ 0 for k = 1..p^{N+1}-1 not
/// divisible by p, |H(k)| ~ 1 for the k divisible by p.
PrecheckReport orthonormality_precheck(const Mask& m, double tol = 1e-10);

/// sum_{beta} h(alpha - A beta), a finite sum realized over the support.
GaussianRational sum_rule_at(const Mask& m, const IpElement& alpha);

/// Sum rules at the coset representatives {0, 1/p, ..., (p-1)/p}.
std::map<IpElement, GaussianRational> sum_rules(const Mask& m);

}  // namespace padicsub
