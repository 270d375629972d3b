#include "padicsub/subdivision.hpp"

#include <cmath>

namespace padicsub {

double lq_norm(const Sequence& u, const QValue& q) {
    if (q.is_inf()) {
        double m = 0.0;
        for (const auto& [a, v] : u.terms()) m = std::max(m, std::sqrt(v.abs2().get_d()));
        return m;
    }
    double qd = q.as_double();
    double acc = 0.0;
    for (const auto& [a, v] : u.terms()) acc += std::pow(v.abs2().get_d(), qd / 2.0);
    return std::pow(acc, 1.0 / qd);
}

Sequence delta(const IpElement& alpha) {
    Sequence d(alpha.prime());
    d.add(alpha, GaussianRational(1));
    return d;
}

Sequence subdivide(const Mask& m, const Sequence& u) {
    if (m.prime() != u.prime()) throw std::invalid_argument("mismatched primes");
    Sequence r(m.prime());
    for (const auto& [beta, uv] : u.terms()) {
        IpElement shifted = dilate_down(beta);
        for (const auto& [omega, hv] : m.coefficients().terms())
            r.add(group_add(omega, shifted), hv * uv);
    }
    return r;
}

Sequence iterate(const Mask& m, long n) {
    if (n < 0) throw std::invalid_argument("negative iteration count");
    Sequence a = delta(IpElement(m.prime()));
    for (long i = 0; i < n; ++i) a = subdivide(m, a);
    return a;
}

Sequence difference(const Sequence& u, const IpElement& y) {
    if (u.prime() != y.prime()) throw std::invalid_argument("mismatched primes");
    Sequence r = u;
    for (const auto& [a, v] : u.terms()) r.add(group_add(a, y), -v);
    return r;
}

Sequence apply_symbol_diff(const Sequence& v, const Sequence& u) {
    if (v.prime() != u.prime()) throw std::invalid_argument("mismatched primes");
    Sequence r(u.prime());
    for (const auto& [beta, vb] : v.terms())
        for (const auto& [gamma, ug] : u.terms()) r.add(group_add(gamma, beta), vb * ug);
    return r;
}

BallCell BallCell::of(long p, long level, const mpq_class& center) {
    if (!is_prime(p)) throw std::invalid_argument("p is not prime");
    if (level < 0) throw std::invalid_argument("negative level");
    return {p, level, canonical_center(p, center, level)};
}

std::vector<std::pair<BallCell, GaussianRational>> BallStepFunction::cell_list() const {
    std::vector<std::pair<BallCell, GaussianRational>> out;
    out.reserve(cells_.size());
    for (const auto& [c, v] : cells_) out.push_back({BallCell{p_, level_, c}, v});
    return out;
}

GaussianRational BallStepFunction::value_at_center(const mpq_class& center) const {
    auto it = cells_.find(canonical_center(p_, center, level_));
    return it == cells_.end() ? GaussianRational() : it->second;
}

void BallStepFunction::add_cell(const mpq_class& center, const GaussianRational& v) {
    if (v.is_zero()) return;
    mpq_class c = canonical_center(p_, center, level_);
    auto [it, inserted] = cells_.emplace(std::move(c), v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) cells_.erase(it);
    }
}

BallStepFunction operator-(const BallStepFunction& a, const BallStepFunction& b) {
    if (a.p_ != b.p_ || a.level_ != b.level_)
        throw std::invalid_argument("mismatched step functions");
    BallStepFunction r(a.p_, a.level_);
    r.cells_ = a.cells_;
    for (const auto& [c, v] : b.cells_) {
        auto [it, inserted] = r.cells_.emplace(c, -v);
        if (!inserted) {
            it->second -= v;
            if (it->second.is_zero()) r.cells_.erase(it);
        }
    }
    return r;
}

mpq_class canonical_center(long p, const mpq_class& x, long level) {
    mpz_class den = x.get_den();
    long s = integer_valuation(den, p);
    mpz_class ps = pow_z(p, s);
    mpz_class cop = den / ps;  // part of the denominator coprime to p
    mpz_class modulus = pow_z(p, level + s);
    mpz_class num = x.get_num();
    if (cop != 1) {
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), cop.get_mpz_t(), modulus.get_mpz_t()) == 0)
            throw std::domain_error("center denominator not invertible");
        num *= inv;
    }
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), modulus.get_mpz_t());
    mpq_class out(r, ps);
    out.canonicalize();
    return out;
}

BallStepFunction unit_ball_indicator(long p) {
    BallStepFunction f(p, 0);
    f.add_cell(0, GaussianRational(1));
    return f;
}

BallStepFunction cascade_apply(const Mask& m, const BallStepFunction& f, std::size_t cell_budget) {
    if (m.prime() != f.prime()) throw std::invalid_argument("mismatched primes");
    std::size_t worst = f.cell_count() * std::max<std::size_t>(1, m.coefficients().support_size());
    if (worst > cell_budget) throw CellBudgetExceeded(cell_budget, worst);
    BallStepFunction out(m.prime(), f.level() + 1);
    mpq_class p(m.prime());
    for (const auto& [c, v] : f.cells()) {
        for (const auto& [omega, hv] : m.coefficients().terms()) {
            // f(x/p - omega) is constant v on the ball centered at p(c + omega).
            out.add_cell(p * (c + omega.value()), hv * v);
        }
    }
    return out;
}

BallStepFunction cascade_iterate(const Mask& m, long n, std::size_t cell_budget) {
    if (n < 0) throw std::invalid_argument("negative iteration count");
    Sequence a = delta(IpElement(m.prime()));
    for (long i = 0; i < n; ++i) {
        a = subdivide(m, a);
        if (a.support_size() > cell_budget) throw CellBudgetExceeded(cell_budget, a.support_size());
    }
    BallStepFunction f(m.prime(), n);
    mpq_class pn(pow_z(m.prime(), n));
    for (const auto& [beta, v] : a.terms()) f.add_cell(pn * beta.value(), v);
    return f;
}

mpq_class monna_coordinate(long p, const mpq_class& center) {
    // digit at p^j maps to weight p^{-j-1}
    mpz_class den = center.get_den();
    long s = integer_valuation(den, p);
    if (den != pow_z(p, s)) throw std::domain_error("center is not in canonical digit form");
    mpz_class num = center.get_num();
    if (num < 0) throw std::domain_error("center is not in canonical digit form");
    mpq_class acc(0);
    mpq_class weight(pow_z(p, s), p);  // p^{s-1}, weight of the lowest digit (j = -s)
    weight.canonicalize();
    while (num > 0) {
        mpz_class digit = num % p;
        acc += mpq_class(digit) * weight;
        num /= p;
        weight /= p;
    }
    return acc;
}

}  // namespace padicsub
