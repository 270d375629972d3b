#pragma once

#include <gmpxx.h>

#include <string>

namespace padicsub {

/// Exponent q in [1, inf] for the L_q / l_q scales. Kept exact so that
/// threshold exponents like p^{1/q} are formed from the exact reciprocal.
class QValue {
  public:
    static QValue infinity() { return QValue(true, 1); }
    static QValue of(mpq_class q);
    static QValue of(long q) { return of(mpq_class(q)); }
    /// Accepts "inf", "infinity", or a rational literal like "2" or "3/2".
    static QValue parse(const std::string& text);

    bool is_inf() const { return inf_; }
    const mpq_class& rational() const { return q_; }
    double as_double() const;
    /// 1/q (0 when q = inf).
    double reciprocal() const;
    std::string to_string() const;

    friend bool operator==(const QValue& a, const QValue& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.q_ == b.q_);
    }

  private:
    QValue(bool inf, mpq_class q) : inf_(inf), q_(std::move(q)) {}
    bool inf_;
    mpq_class q_;
};

}  // namespace padicsub
