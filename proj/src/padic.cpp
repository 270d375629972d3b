#include "padicsub/padic.hpp"

#include <cmath>

namespace padicsub {

mpq_class parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    for (char c : text) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw std::invalid_argument("malformed rational literal: " + text);
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

std::string gaussian_to_string(const GaussianRational& z) {
    if (z.im == 0) return rational_to_string(z.re);
    std::string s = rational_to_string(z.re);
    if (z.im > 0) s += "+";
    return s + rational_to_string(z.im) + "i";
}

long integer_valuation(const mpz_class& n, long p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    mpz_class rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

mpz_class pow_z(long p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

PadicRational::PadicRational(long p, mpq_class value) : p_(p), v_(std::move(value)) {
    if (!is_prime(p)) throw std::invalid_argument("p is not prime");
    v_.canonicalize();
}

long PadicRational::valuation() const {
    if (v_ == 0) throw std::domain_error("valuation of zero");
    return integer_valuation(v_.get_num(), p_) - integer_valuation(v_.get_den(), p_);
}

std::pair<mpz_class, long> PadicRational::unit_and_exponent() const {
    if (v_ == 0) return {mpz_class(0), 0};
    mpz_class den = v_.get_den();
    long s = integer_valuation(den, p_);
    if (den != pow_z(p_, s)) throw std::domain_error("not an element of Z[1/p]");
    mpz_class a = v_.get_num();
    long t = integer_valuation(a, p_);
    if (t > 0) {
        a /= pow_z(p_, t);
        s -= t;
    }
    return {a, s};
}

PadicRational operator+(const PadicRational& a, const PadicRational& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("mismatched primes");
    return {a.p_, a.v_ + b.v_};
}
PadicRational operator-(const PadicRational& a, const PadicRational& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("mismatched primes");
    return {a.p_, a.v_ - b.v_};
}
PadicRational operator*(const PadicRational& a, const PadicRational& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("mismatched primes");
    return {a.p_, a.v_ * b.v_};
}

mpq_class padic_norm(const PadicRational& x) {
    if (x.is_zero()) return 0;
    long g = x.valuation();
    if (g >= 0) return mpq_class(1) / mpq_class(pow_z(x.prime(), g));
    return mpq_class(pow_z(x.prime(), -g));
}

IpElement::IpElement(long p) : p_(p), k_(0), gamma_(0) {
    if (!is_prime(p)) throw std::invalid_argument("p is not prime");
}

IpElement IpElement::canonical(long p, mpz_class k, long s) {
    if (!is_prime(p)) throw std::invalid_argument("p is not prime");
    if (s < 0) throw std::invalid_argument("negative exponent");
    mpz_class m = pow_z(p, s);
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), k.get_mpz_t(), m.get_mpz_t());
    while (s > 0 && mpz_divisible_ui_p(r.get_mpz_t(), static_cast<unsigned long>(p))) {
        r /= p;
        --s;
    }
    if (s == 0) r = 0;
    return IpElement(p, r, s);
}

mpq_class IpElement::value() const { return mpq_class(k_) / mpq_class(pow_z(p_, gamma_)); }

std::string IpElement::to_string() const {
    if (gamma_ == 0) return "0";
    return k_.get_str() + "/" + pow_z(p_, gamma_).get_str();
}

long IpElement::first_digit() const {
    if (gamma_ == 0) return 0;
    mpz_class q = k_ / pow_z(p_, gamma_ - 1);
    return q.get_si();
}

IpElement group_add(const IpElement& a, const IpElement& b) {
    if (a.prime() != b.prime()) throw std::invalid_argument("mismatched primes");
    long g = std::max(a.exponent(), b.exponent());
    mpz_class k = a.numerator() * pow_z(a.prime(), g - a.exponent()) +
                  b.numerator() * pow_z(b.prime(), g - b.exponent());
    return IpElement::canonical(a.prime(), k, g);
}

IpElement group_neg(const IpElement& a) {
    return IpElement::canonical(a.prime(), pow_z(a.prime(), a.exponent()) - a.numerator(),
                                a.exponent());
}

IpElement group_sub(const IpElement& a, const IpElement& b) { return group_add(a, group_neg(b)); }

IpElement dilate_down(const IpElement& a) {
    return IpElement::canonical(a.prime(), a.numerator(), a.exponent() + 1);
}

IpElement dilate_up(const IpElement& a) {
    if (a.exponent() == 0) return IpElement(a.prime());
    return IpElement::canonical(a.prime(), a.numerator(), a.exponent() - 1);
}

std::pair<IpElement, IpElement> decompose(const IpElement& a) {
    long p = a.prime();
    if (a.is_zero()) return {IpElement(p), IpElement(p)};
    mpz_class pw = pow_z(p, a.exponent() - 1);
    mpz_class lead = a.numerator() / pw;
    mpz_class rest = a.numerator() % pw;
    return {IpElement::canonical(p, lead, 1), IpElement::canonical(p, rest, a.exponent() - 1)};
}

std::vector<IpElement> coset_representatives(long p) {
    std::vector<IpElement> e;
    e.reserve(static_cast<std::size_t>(p));
    for (long j = 0; j < p; ++j) e.push_back(IpElement::canonical(p, j, 1));
    return e;
}

IpElement frac_part(const PadicRational& x) {
    long p = x.prime();
    if (x.is_zero()) return IpElement(p);
    long g = x.valuation();
    if (g >= 0) return IpElement(p);
    long s = -g;
    mpz_class ps = pow_z(p, s);
    // x * p^s is a p-adic unit u = a/b with p coprime to a and b; its residue
    // mod p^s gives the digits of the fractional part.
    mpq_class u = x.value() * mpq_class(ps);
    mpz_class a = u.get_num(), b = u.get_den();
    mpz_class binv;
    if (mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), ps.get_mpz_t()) == 0)
        throw std::domain_error("denominator not invertible mod p^s");
    mpz_class c = a * binv;
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), ps.get_mpz_t());
    return IpElement::canonical(p, c, s);
}

std::complex<double> character(const PadicRational& a, const PadicRational& xi) {
    if (a.prime() != xi.prime()) throw std::invalid_argument("mismatched primes");
    IpElement t = frac_part(a * xi);
    double angle = 2.0 * M_PI * t.value().get_d();
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace padicsub
