#include "padicsub/qvalue.hpp"

#include <limits>
#include <stdexcept>

#include "padicsub/rational.hpp"

namespace padicsub {

QValue QValue::of(mpq_class q) {
    q.canonicalize();
    if (q < 1) throw std::invalid_argument("q must satisfy 1 <= q <= inf");
    return QValue(false, std::move(q));
}

QValue QValue::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
    return of(parse_rational(text));
}

double QValue::as_double() const {
    if (inf_) return std::numeric_limits<double>::infinity();
    return q_.get_d();
}

double QValue::reciprocal() const {
    if (inf_) return 0.0;
    return mpq_class(q_.get_den(), q_.get_num()).get_d();
}

std::string QValue::to_string() const { return inf_ ? "inf" : rational_to_string(q_); }

}  // namespace padicsub
