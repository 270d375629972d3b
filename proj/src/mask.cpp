#include "padicsub/mask.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace padicsub {

namespace {

constexpr long kMaxGridPoints = 1000000;

mpq_class json_rational(const nlohmann::json& v, const char* field) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    if (v.is_number_float()) return mpq_class(v.get<double>());  // exact binary value
    throw std::invalid_argument(std::string("mask field '") + field +
                                "' must be a rational string or a number");
}

}  // namespace

Mask::Mask(long p, long order, Sequence coefficients)
    : p_(p), order_(order), coeffs_(std::move(coefficients)) {
    if (!is_prime(p_)) throw std::invalid_argument("p is not prime");
    if (order_ < 0) throw std::invalid_argument("mask order N must be >= 0");
    if (coeffs_.prime() != p_) throw std::invalid_argument("mismatched primes");
    if (grid_size() > kMaxGridPoints) throw std::invalid_argument("mask grid too large");
}

IpElement Mask::grid_point(long k) const { return IpElement::canonical(p_, k, order_ + 1); }

long Mask::grid_size() const {
    mpz_class g = pow_z(p_, order_ + 1);
    if (!g.fits_slong_p()) return kMaxGridPoints + 1;
    return g.get_si();
}

std::vector<IpElement> Mask::support() const {
    std::vector<IpElement> s;
    s.reserve(coeffs_.support_size());
    for (const auto& [a, v] : coeffs_.terms()) s.push_back(a);
    return s;
}

Mask parse_mask(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("mask JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("mask document must be a JSON object");
    if (!j.contains("p") || !j["p"].is_number_integer())
        throw std::invalid_argument("mask field 'p' missing or not an integer");
    if (!j.contains("N") || !j["N"].is_number_integer())
        throw std::invalid_argument("mask field 'N' missing or not an integer");
    long p = j["p"].get<long>();
    long N = j["N"].get<long>();
    if (!is_prime(p)) throw std::invalid_argument("mask field 'p' is not prime");
    if (N < 0) throw std::invalid_argument("mask field 'N' must be >= 0");
    if (!j.contains("coefficients") || !j["coefficients"].is_array())
        throw std::invalid_argument("mask field 'coefficients' missing or not an array");

    mpz_class grid = pow_z(p, N + 1);
    if (grid > kMaxGridPoints) throw std::invalid_argument("mask grid too large");

    Sequence coeffs(p);
    std::vector<bool> seen(static_cast<std::size_t>(grid.get_si()), false);
    for (const auto& entry : j["coefficients"]) {
        if (!entry.is_object() || !entry.contains("k") || !entry["k"].is_number_integer())
            throw std::invalid_argument("coefficient entry must be an object with integer 'k'");
        long k = entry["k"].get<long>();
        if (k < 0 || k >= grid) throw std::invalid_argument("coefficient index k out of range");
        if (seen[static_cast<std::size_t>(k)])
            throw std::invalid_argument("duplicate coefficient index k=" + std::to_string(k));
        seen[static_cast<std::size_t>(k)] = true;
        if (!entry.contains("re")) throw std::invalid_argument("coefficient entry missing 're'");
        mpq_class re = json_rational(entry["re"], "re");
        mpq_class im = entry.contains("im") ? json_rational(entry["im"], "im") : mpq_class(0);
        coeffs.add(IpElement::canonical(p, k, N + 1), GaussianRational(re, im));
    }
    return Mask(p, N, std::move(coeffs));
}

Mask load_mask(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open mask file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_mask(ss.str());
}

std::string mask_to_json(const Mask& m) {
    nlohmann::json j;
    j["p"] = m.prime();
    j["N"] = m.order();
    j["coefficients"] = nlohmann::json::array();
    mpz_class grid = pow_z(m.prime(), m.order() + 1);
    for (const auto& [a, v] : m.coefficients().terms()) {
        // k such that a = k/p^{N+1}
        mpz_class k = a.numerator() * pow_z(m.prime(), m.order() + 1 - a.exponent());
        nlohmann::json e;
        e["k"] = k.get_si();
        e["re"] = rational_to_string(v.re);
        if (v.im != 0) e["im"] = rational_to_string(v.im);
        j["coefficients"].push_back(e);
    }
    return j.dump(2);
}

ValidationReport validate(const Mask& m) {
    ValidationReport r;
    r.coefficient_sum = m.coefficients().sum();
    for (const auto& [a, v] : m.coefficients().terms())
        if (a.exponent() > m.order() + 1) r.off_grid.push_back(a);
    r.pass = r.off_grid.empty() && r.coefficient_sum == GaussianRational(m.prime());
    return r;
}

std::complex<double> symbol(const Mask& m, const PadicRational& xi) {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [a, v] : m.coefficients().terms())
        acc += v.to_complex() * character(a.to_padic(), xi);
    return acc / static_cast<double>(m.prime());
}

PrecheckReport orthonormality_precheck(const Mask& m, double tol) {
    PrecheckReport rep;
    rep.tol = tol;
    rep.pass = true;
    long L = m.grid_size();
    for (long k = 1; k < L; ++k) {
        PrecheckEntry e;
        e.k = k;
        e.value = symbol(m, PadicRational(m.prime(), k));
        e.required_modulus = (k % m.prime() == 0) ? 1.0 : 0.0;
        e.ok = std::abs(std::abs(e.value) - e.required_modulus) <= tol;
        if (!e.ok) rep.pass = false;
        rep.entries.push_back(e);
    }
    return rep;
}

GaussianRational sum_rule_at(const Mask& m, const IpElement& alpha) {
    if (alpha.prime() != m.prime()) throw std::invalid_argument("mismatched primes");
    // A term h(alpha - A beta) = h(omega) appears iff alpha - omega lands in
    // the image of the dilation, i.e. has leading digit zero.
    GaussianRational acc;
    for (const auto& [omega, v] : m.coefficients().terms()) {
        IpElement t = group_sub(alpha, omega);
        if (t.first_digit() == 0) acc += v;
    }
    return acc;
}

std::map<IpElement, GaussianRational> sum_rules(const Mask& m) {
    std::map<IpElement, GaussianRational> table;
    for (const IpElement& eps : coset_representatives(m.prime()))
        table.emplace(eps, sum_rule_at(m, eps));
    return table;
}

}  // namespace padicsub
