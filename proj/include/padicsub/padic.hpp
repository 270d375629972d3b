#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "padicsub/rational.hpp"

namespace padicsub {

bool is_prime(long p);

/// Element of Z[1/p] (and of Q more generally) carrying its prime, with the
/// p-adic norm |x|_p = p^{-gamma} where gamma is the p-valuation.
class PadicRational {
  public:
    PadicRational(long p, mpq_class value);
    PadicRational(long p, long value) : PadicRational(p, mpq_class(value)) {}

    long prime() const { return p_; }
    const mpq_class& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    /// p-valuation; only meaningful for nonzero values.
    long valuation() const;

    /// Canonical form x = a * p^{-s} with p not dividing a. Requires a
    /// Z[1/p] value (p-power denominator); throws otherwise.
    std::pair<mpz_class, long> unit_and_exponent() const;

    PadicRational operator-() const { return {p_, -v_}; }
    friend PadicRational operator+(const PadicRational& a, const PadicRational& b);
    friend PadicRational operator-(const PadicRational& a, const PadicRational& b);
    friend PadicRational operator*(const PadicRational& a, const PadicRational& b);
    friend bool operator==(const PadicRational& a, const PadicRational& b) {
        return a.p_ == b.p_ && a.v_ == b.v_;
    }
    friend bool operator!=(const PadicRational& a, const PadicRational& b) { return !(a == b); }

  private:
    long p_;
    mpq_class v_;
};

/// |x|_p as an exact rational power of p (0 for x = 0).
mpq_class padic_norm(const PadicRational& x);

/// Reduced fraction k/p^gamma in [0,1): the shift set, a group under
/// addition mod 1 (Pruefer p-group). Canonical: 0 <= k < p^gamma, and
/// p does not divide k unless gamma = 0 (then k = 0).
class IpElement {
  public:
    /// The zero element.
    explicit IpElement(long p);

    /// Reduced representative of (k/p^s) mod 1. Requires s >= 0, p prime.
    static IpElement canonical(long p, mpz_class k, long s);

    long prime() const { return p_; }
    const mpz_class& numerator() const { return k_; }
    long exponent() const { return gamma_; }
    bool is_zero() const { return gamma_ == 0; }

    mpq_class value() const;
    PadicRational to_padic() const { return {p_, value()}; }
    std::string to_string() const;

    /// Leading digit a_1 in k/p^gamma = a_1/p + a_2/p^2 + ...
    long first_digit() const;

    friend bool operator==(const IpElement& a, const IpElement& b) {
        return a.p_ == b.p_ && a.gamma_ == b.gamma_ && a.k_ == b.k_;
    }
    friend bool operator!=(const IpElement& a, const IpElement& b) { return !(a == b); }
    /// Order by (gamma, k); this is the basis order used throughout.
    friend bool operator<(const IpElement& a, const IpElement& b) {
        if (a.gamma_ != b.gamma_) return a.gamma_ < b.gamma_;
        return a.k_ < b.k_;
    }

  private:
    IpElement(long p, mpz_class k, long gamma) : p_(p), k_(std::move(k)), gamma_(gamma) {}
    long p_;
    mpz_class k_;
    long gamma_;
};

/// (alpha + beta) mod 1; primes must match.
IpElement group_add(const IpElement& alpha, const IpElement& beta);
IpElement group_sub(const IpElement& alpha, const IpElement& beta);
IpElement group_neg(const IpElement& alpha);

/// A(alpha) = alpha/p, exact (no wrap: the image lies in [0, 1/p)).
IpElement dilate_down(const IpElement& alpha);
/// (p * alpha) mod 1; left inverse of dilate_down.
IpElement dilate_up(const IpElement& alpha);

/// Unique digit split alpha = eps + A(gamma) with eps in {0, 1/p, ..., (p-1)/p}.
std::pair<IpElement, IpElement> decompose(const IpElement& alpha);

/// {0, 1/p, ..., (p-1)/p}, ascending.
std::vector<IpElement> coset_representatives(long p);

/// Fractional part {x}_p: zero when x is a p-adic integer, otherwise the
/// negative-power digits p^gamma(x_0 + x_1 p + ... + x_{-gamma-1} p^{-gamma-1}).
/// Denominators coprime to p are handled by inverting them modulo p^{-gamma}.
IpElement frac_part(const PadicRational& x);

/// Character chi(a, xi) = e^{2 pi i {a xi}_p}.
std::complex<double> character(const PadicRational& a, const PadicRational& xi);

mpz_class pow_z(long p, long e);

}  // namespace padicsub
