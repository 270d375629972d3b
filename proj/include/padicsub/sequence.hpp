#pragma once

#include <map>

#include "padicsub/padic.hpp"
#include "padicsub/qvalue.hpp"
#include "padicsub/rational.hpp"

namespace padicsub {

/// Finitely supported sequence on the shift set, with exact complex-rational
/// values. Only nonzero entries are stored; iteration order is the (gamma, k)
/// order of the support.
class Sequence {
  public:
    using Terms = std::map<IpElement, GaussianRational>;

    explicit Sequence(long p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("p is not prime");
    }

    long prime() const { return p_; }
    const Terms& terms() const { return terms_; }
    std::size_t support_size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Value at alpha (zero off the support).
    GaussianRational at(const IpElement& alpha) const {
        auto it = terms_.find(alpha);
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    /// Accumulates v into the entry at alpha, dropping it if the sum is zero.
    void add(const IpElement& alpha, const GaussianRational& v) {
        if (v.is_zero()) return;
        auto [it, inserted] = terms_.emplace(alpha, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void set(const IpElement& alpha, const GaussianRational& v) {
        if (v.is_zero())
            terms_.erase(alpha);
        else
            terms_[alpha] = v;
    }

    GaussianRational sum() const {
        GaussianRational s;
        for (const auto& [a, v] : terms_) s += v;
        return s;
    }

    friend Sequence operator+(const Sequence& a, const Sequence& b) {
        if (a.p_ != b.p_) throw std::invalid_argument("mismatched primes");
        Sequence r = a;
        for (const auto& [k, v] : b.terms_) r.add(k, v);
        return r;
    }
    friend Sequence operator-(const Sequence& a, const Sequence& b) {
        if (a.p_ != b.p_) throw std::invalid_argument("mismatched primes");
        Sequence r = a;
        for (const auto& [k, v] : b.terms_) r.add(k, -v);
        return r;
    }
    friend Sequence operator*(const GaussianRational& c, const Sequence& a) {
        Sequence r(a.p_);
        if (c.is_zero()) return r;
        for (const auto& [k, v] : a.terms_) r.terms_.emplace(k, c * v);
        return r;
    }
    friend bool operator==(const Sequence& a, const Sequence& b) {
        return a.p_ == b.p_ && a.terms_ == b.terms_;
    }

  private:
    long p_;
    Terms terms_;
};

/// l_q norm of the coordinate vector (sup norm for q = inf).
double lq_norm(const Sequence& u, const QValue& q);

}  // namespace padicsub
