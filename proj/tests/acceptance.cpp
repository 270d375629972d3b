// Acceptance suite: every release criterion in one binary, one verdict line
// each. Exits nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>

#include "helpers.hpp"
#include "padicsub/smoothness.hpp"
#include "padicsub/wavelet.hpp"

using namespace padicsub;
using padicsub::testing::fixture;
using padicsub::testing::random_coset_invariant_mask;
using padicsub::testing::random_mask;

namespace {

int failures = 0;
int checks = 0;

void require(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
        ++failures;
        std::cout << "    failed: " << what << "\n";
    }
}

struct Criterion {
    int number;
    std::string title;
    std::function<void()> run;
};

IpElement ip(long p, long k, long s) { return IpElement::canonical(p, k, s); }

Sequence nabla_delta(long p, const IpElement& g) { return difference(delta(IpElement(p)), g); }

MatrixFamily restricted_family(const Mask& m, Subspace* w_out = nullptr) {
    IndexSet K = admissible_closure(m, m.support());
    auto ops = transition_family(m, K);
    std::vector<Sequence> gens;
    for (const IpElement& g : m.support())
        if (!g.is_zero()) gens.push_back(nabla_delta(m.prime(), g));
    Subspace W = minimal_invariant_subspace(ops, gens);
    std::vector<ExactMatrix> restricted;
    for (const auto& op : ops) restricted.push_back(restrict_to(op, W));
    if (w_out) *w_out = W;
    return MatrixFamily::from(std::move(restricted));
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    Mask m = fixture("ex41.json");
    MatrixFamily F = restricted_family(m);
    for (const auto& A : F.exact) require(A.is_zero(), "restricted operator is exactly zero");
    require(nilpotency_index(F, 3) == 1, "nilpotency index 1");
    for (const QValue& q : {QValue::of(1), QValue::of(2), QValue::infinity()}) {
        JsrBracket b = jsr_bracket(F, q, 4);
        require(b.lower == 0.0 && b.upper == 0.0, "rho_q = 0 at q = " + q.to_string());
        Certificate c = certify(m, q, 4);
        require(c.verdict == Verdict::Convergent, "Convergent at q = " + q.to_string());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(secs < 1.0, "runtime under 1 s");
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    Mask m = fixture("ex42.json");
    IndexSet K = admissible_closure(m, m.support());
    auto ops = transition_family(m, K);
    std::vector<Sequence> gens{nabla_delta(2, ip(2, 1, 2)), nabla_delta(2, ip(2, 1, 1)),
                               nabla_delta(2, ip(2, 3, 2))};
    Subspace W = minimal_invariant_subspace(ops, gens);
    require(W.dimension() == 3, "dim W = 3");
    GaussianRational i_unit{mpq_class(0), mpq_class(1)};
    ExactMatrix r0 = restrict_to(ops[0], W);
    ExactMatrix r1 = restrict_to(ops[1], W);
    require(r0 == r1, "A_0 = A_{1/2} on W");
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
            GaussianRational expect =
                (r == 1 && (c == 0 || c == 2)) ? i_unit : GaussianRational();
            require(r0.at(r, c) == expect, "restricted matrix entry");
        }
    MatrixFamily F = MatrixFamily::from({r0, r1});
    require((r0 * r0).is_zero() && (r0 * r1).is_zero() && (r1 * r0).is_zero() &&
                (r1 * r1).is_zero(),
            "all length-2 products vanish");
    require(nilpotency_index(F, 3) == 2, "nilpotency index 2");
    require(certify(m, QValue::infinity(), 4).verdict == Verdict::Convergent,
            "Convergent at q = inf");
    require(certify(m, QValue::of(2), 4).verdict == Verdict::Convergent, "Convergent at q = 2");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(secs < 1.0, "runtime under 1 s");
}

void criterion3() {
    Mask m = fixture("ex43.json");
    auto table = sum_rules(m);
    require(table.at(IpElement(2)) == GaussianRational(2), "sum rule at 0 equals 2");
    require(!(table.at(IpElement(2)) == GaussianRational(1)), "sum rule differs from 1 exactly");
    Certificate c = certify(m, QValue::of(1), 4);
    require(c.verdict == Verdict::Divergent, "verdict Divergent");
}

void criterion4() {
    Mask haar = fixture("haar2.json");
    for (long n = 0; n <= 10; ++n) {
        BallStepFunction f = cascade_iterate(haar, n);
        bool tiles = f.cell_count() == static_cast<std::size_t>(pow_z(2, n).get_si());
        bool ones = true;
        for (const auto& [c, v] : f.cells()) ones = ones && v == GaussianRational(1);
        require(tiles && ones, "f_" + std::to_string(n) + " = 1 on the unit ball");
        require(locally_constant_at(f, 0), "f_n locally constant of order 0");
        for (long k : {0L, 1L, 2L})
            for (const QValue& q : {QValue::of(1), QValue::of(2), QValue::infinity()})
                require(modulus_of_continuity(f, k, q) == 0.0, "omega_q(f_n, k) = 0");
    }
    SmoothnessReport rep = critical_exponent_estimate(haar, QValue::of(2), 6, 0, 6);
    require(rep.infinite, "smoothness reports infinite");
}

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(51);
    std::uniform_int_distribution<long> numd(-2, 2);
    int mask_count = 0;
    for (int trial = 0; trial < 50; ++trial) {
        long p = trial % 2 ? 3 : 2;
        long N = trial % 5 == 4 ? 0 : 1;  // N <= 1, mostly grid p^2
        Mask m = random_coset_invariant_mask(rng, p, N);
        ++mask_count;
        IndexSet K = admissible_closure(m, m.support());
        auto ops = transition_family(m, K);
        auto E = coset_representatives(p);

        Sequence v(p);
        for (const IpElement& a : K.elements()) {
            mpq_class re(numd(rng), 2), im(numd(rng), 2);
            re.canonicalize();
            im.canonicalize();
            v.add(a, GaussianRational(re, im));
        }

        for (long n = 1; n <= 4; ++n) {
            Sequence an = iterate(m, n);
            Sequence lhs = apply_symbol_diff(v, an);
            bool lemma31 = true;
            bool lemma32_entries = true;
            double q1 = 0.0, q2 = 0.0, qi = 0.0;
            std::vector<std::size_t> word(static_cast<std::size_t>(n), 0);
            while (true) {
                ExactMatrix prod = ExactMatrix::identity(K.size());
                for (long j = 0; j < n; ++j)
                    prod = ops[word[static_cast<std::size_t>(j)]].M * prod;
                std::vector<GaussianRational> img = prod.apply(coordinates(v, K));
                for (std::size_t g = 0; g < K.size(); ++g) {
                    IpElement alpha = K[g];
                    for (long j = n - 1; j >= 0; --j)
                        alpha = group_add(E[word[static_cast<std::size_t>(j)]],
                                          dilate_down(alpha));
                    for (std::size_t b = 0; b < K.size(); ++b)
                        lemma31 = lemma31 &&
                                  an.at(group_sub(alpha, K[b])) == prod.at(g, b);
                    lemma32_entries = lemma32_entries && lhs.at(alpha) == img[g];
                    double a2 = img[g].abs2().get_d();
                    q1 += std::sqrt(a2);
                    q2 += a2;
                    qi = std::max(qi, std::sqrt(a2));
                }
                std::size_t pos = 0;
                while (pos < word.size() && ++word[pos] == ops.size()) word[pos++] = 0;
                if (pos == word.size()) break;
            }
            require(lemma31, "word products equal subdivision coefficients (exact)");
            require(lemma32_entries, "difference-sequence entries equal family images (exact)");
            require(std::abs(lq_norm(lhs, QValue::of(1)) - q1) <= 1e-10 * (1 + q1),
                    "l1 norms agree");
            require(std::abs(lq_norm(lhs, QValue::infinity()) - qi) <= 1e-10 * (1 + qi),
                    "sup norms agree");
            require(std::abs(lq_norm(lhs, QValue::of(2)) - std::sqrt(q2)) <=
                        1e-10 * (1 + std::sqrt(q2)),
                    "l2 norms agree within 1e-10");
        }
    }
    require(mask_count == 50, "corpus holds 50 masks");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(secs < 60.0, "runtime under 60 s");
}

void criterion6() {
    std::mt19937 rng(66);
    for (int trial = 0; trial < 20; ++trial) {
        long p = trial % 2 ? 3 : 2;
        Mask m = trial % 3 == 0 ? random_mask(rng, p, 1) : random_coset_invariant_mask(rng, p, 1);
        Sequence a = delta(IpElement(p));
        mpq_class expect(1);
        bool ok = true;
        for (long n = 1; n <= 8; ++n) {
            a = subdivide(m, a);
            expect *= p;
            ok = ok && a.sum() == GaussianRational(mpq_class(expect));
        }
        require(ok, "iterate sums are p^n exactly, n <= 8");
    }
}

void criterion7() {
    ExactMatrix one(1, 1);
    one.at(0, 0) = GaussianRational(1);
    MatrixFamily F = MatrixFamily::from({one, one});
    for (long qi : {1L, 2L}) {
        QValue q = QValue::of(qi);
        double up = jsr_upper(F, q, 12);
        require(std::abs(up - std::pow(2.0, 1.0 / static_cast<double>(qi))) <= 1e-6,
                "upper bound 2^{1/q} within 1e-6 at q = " + q.to_string());
    }
    require(std::abs(jsr_lower(F, 12) - 1.0) <= 1e-12, "lower bound 1 for q = inf");
    // (#A)^{1/r - 1/q} rho_q <= rho_r <= rho_q across q <= r
    std::vector<QValue> qs{QValue::of(1), QValue::of(2), QValue::of(4), QValue::infinity()};
    for (std::size_t i = 0; i < qs.size(); ++i)
        for (std::size_t j = i; j < qs.size(); ++j) {
            double rq = jsr_upper(F, qs[i], 12);
            double rr = jsr_upper(F, qs[j], 12);
            double factor = std::pow(2.0, qs[j].reciprocal() - qs[i].reciprocal());
            require(factor * rq <= rr + 1e-9 && rr <= rq + 1e-9, "factor inequality");
        }
}

void criterion8() {
    PrecheckReport r42 = orthonormality_precheck(fixture("ex42.json"), 1e-12);
    require(r42.pass, "ex42 pre-check passes at 1e-12");
    require(std::abs(r42.entries[0].value) <= 1e-12, "H(1) = 0");
    require(std::abs(std::abs(r42.entries[1].value) - 1.0) <= 1e-12, "|H(2)| = 1");
    require(std::abs(r42.entries[2].value) <= 1e-12, "H(3) = 0");

    PrecheckReport r43 = orthonormality_precheck(fixture("ex43.json"), 1e-12);
    require(!r43.pass, "ex43 pre-check fails");
    require(std::abs(r43.entries[0].value - std::complex<double>(1.0, 0.0)) <= 1e-12,
            "H(1) = 1");
}

void criterion9() {
    BallStepFunction f(2, 1);
    f.add_cell(0, GaussianRational(1));
    for (const QValue& q : {QValue::of(1), QValue::of(2), QValue::infinity()}) {
        require(modulus_of_continuity(f, 0, q) == 1.0, "omega_q(f, 0) = 1");
        require(modulus_of_continuity(f, 1, q) == 0.0, "omega_q(f, 1) = 0");
    }
    require(std::abs(best_approximation_error(f, 0, QValue::of(2)) - 0.5) <= 1e-9,
            "E_0^2 = 1/2");
    require(std::abs(best_approximation_error(f, 0, QValue::infinity()) - 0.5) <= 1e-9,
            "E_0^inf = 1/2");
}

void criterion10() {
    for (const char* name : {"haar2.json", "ex41.json", "ex42.json"}) {
        Mask m = fixture(name);
        WaveletMasks w = complete_masks(m);
        UnitarityReport rep =
            verify_unitary(build_U(mask_coefficient_vector(m), w.wavelets), 1e-9);
        require(rep.pass, std::string("||U*U - I|| <= 1e-9 for ") + name);
    }
    // haar p=2: psi_1 = 1_{B_{-1}(0)} - 1_{B_{-1}(1)} up to a unimodular phase
    Mask haar = fixture("haar2.json");
    WaveletMasks w = complete_masks(haar);
    BallStepFunction psi = wavelet_cascade(haar, w, 1, 3);
    std::complex<double> phase{0.0, 0.0};
    bool shape_ok = true;
    for (const auto& [c, v] : psi.cells()) {
        if (c.get_den() != 1) {
            shape_ok = false;
            break;
        }
        std::complex<double> z = v.to_complex();
        std::complex<double> want = (c.get_num() % 2 == 0) ? z : -z;
        if (std::abs(phase) == 0.0) phase = want;
        shape_ok = shape_ok && std::abs(want - phase) <= 1e-12;
    }
    require(shape_ok && std::abs(std::abs(phase) - 1.0) <= 1e-12,
            "psi_1 = phase * (1_{B_{-1}(0)} - 1_{B_{-1}(1)})");
}

void criterion11() {
    // group laws
    bool group_ok = true;
    for (long p : {2L, 3L}) {
        std::vector<IpElement> g;
        for (long k = 0; k < pow_z(p, 3).get_si(); ++k) g.push_back(ip(p, k, 3));
        for (const auto& a : g) {
            group_ok = group_ok && group_add(a, group_neg(a)).is_zero();
            for (const auto& b : g)
                group_ok = group_ok && group_add(a, b) == group_add(b, a);
        }
    }
    require(group_ok, "group laws");

    // ultrametric inequality
    std::mt19937 rng(1111);
    std::uniform_int_distribution<long> numd(-40, 40), dend(0, 4);
    bool ultra_ok = true;
    for (int t = 0; t < 200; ++t) {
        long p = t % 2 ? 2 : 3;
        PadicRational x(p, mpq_class(numd(rng), pow_z(p, dend(rng))));
        PadicRational y(p, mpq_class(numd(rng), pow_z(p, dend(rng))));
        ultra_ok = ultra_ok && padic_norm(x + y) <= std::max(padic_norm(x), padic_norm(y));
    }
    require(ultra_ok, "ultrametric inequality");

    // E_n <= omega_n and omega monotone on random step functions
    std::uniform_int_distribution<long> vald(-2, 2);
    bool smooth_ok = true;
    for (int t = 0; t < 15; ++t) {
        BallStepFunction f(2, 2);
        for (long k = 0; k < 4; ++k) {
            mpq_class re(vald(rng), 2);
            re.canonicalize();
            f.add_cell(k, GaussianRational(re));
        }
        for (const QValue& q : {QValue::of(1), QValue::of(2), QValue::infinity()}) {
            double prev = std::numeric_limits<double>::infinity();
            for (long n = 0; n <= 3; ++n) {
                double w = modulus_of_continuity(f, n, q);
                smooth_ok = smooth_ok && best_approximation_error(f, n, q) <= w + 1e-9 &&
                            w <= prev + 1e-12;
                prev = w;
            }
        }
    }
    require(smooth_ok, "E_n <= omega_n and omega monotone");

    // bracket soundness across both matrix norms
    bool bracket_ok = true;
    for (int t = 0; t < 6; ++t) {
        long p = t % 2 ? 3 : 2;
        MatrixFamily F = restricted_family(random_coset_invariant_mask(rng, p, 1));
        for (MatrixNorm nm : {MatrixNorm::MaxRowSum, MatrixNorm::MaxColSum})
            for (const QValue& q : {QValue::of(1), QValue::of(2), QValue::infinity()})
                bracket_ok =
                    bracket_ok && jsr_lower(F, 3) <= jsr_upper(F, q, 3, nm) + 1e-9;
    }
    require(bracket_ok, "bracket soundness for both matrix norms");

    // certificate internal consistency
    bool cert_ok = true;
    for (int t = 0; t < 8; ++t) {
        Mask m = random_coset_invariant_mask(rng, t % 2 ? 3 : 2, 1);
        for (const QValue& q : {QValue::of(1), QValue::of(2), QValue::infinity()})
            cert_ok = cert_ok && certificate_consistent(certify(m, q, 4));
    }
    cert_ok = cert_ok && certificate_consistent(certify(fixture("ex43.json"), QValue::of(1), 4));
    require(cert_ok, "certificate internal consistency");
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "ex41: zero restricted family, rho_q = 0, Convergent", criterion1},
        {2, "ex42: dim W = 3, pinned restriction matrix, length-2 products vanish", criterion2},
        {3, "ex43: sum rule 2 != 1, Divergent", criterion3},
        {4, "Haar fixed point and vanishing moduli up to n = 10", criterion4},
        {5, "word-product and difference-norm oracles on 50 random masks", criterion5},
        {6, "mass conservation of iterate sums", criterion6},
        {7, "JSR closed form for the pair of 1x1 identities", criterion7},
        {8, "symbol pre-check values on ex42 and ex43", criterion8},
        {9, "smoothness functionals of the half-ball indicator", criterion9},
        {10, "wavelet completion unitarity and the haar wavelet", criterion10},
        {11, "property suites (groups, ultrametric, moduli, brackets, certificates)",
         criterion11},
    };
    for (const auto& c : criteria) {
        int before = failures;
        c.run();
        std::cout << (failures == before ? "[PASS]" : "[FAIL]") << " criterion " << c.number
                  << ": " << c.title << "\n";
    }
    std::cout << checks << " checks, " << failures << " failures\n";
    return failures == 0 ? 0 : 1;
}
