#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "padicsub/smoothness.hpp"

using namespace padicsub;
using padicsub::testing::fixture;

namespace {

BallStepFunction half_ball(long p = 2) {
    // 1_{B_{-1}(0)}
    BallStepFunction f(p, 1);
    f.add_cell(0, GaussianRational(1));
    return f;
}

BallStepFunction random_level2(std::mt19937& rng) {
    std::uniform_int_distribution<long> numd(-2, 2);
    std::uniform_int_distribution<int> keep(0, 2);
    BallStepFunction f(2, 2);
    for (long k = 0; k < 4; ++k) {
        if (keep(rng) == 0) continue;
        mpq_class re(numd(rng), 2), im(numd(rng), 2);
        re.canonicalize();
        im.canonicalize();
        f.add_cell(k, GaussianRational(re, im));
    }
    return f;
}

/// Brute-force L_q distance of two level-m step functions restricted to a
/// window of integer-center cells, plus whatever fractional cells exist.
double brute_norm_diff(const BallStepFunction& a, const BallStepFunction& b, double q,
                       bool is_inf) {
    BallStepFunction d = a - b;
    double measure = d.cell_measure().get_d();
    double acc = 0.0, mx = 0.0;
    for (const auto& [c, v] : d.cells()) {
        double av = std::sqrt(v.abs2().get_d());
        mx = std::max(mx, av);
        acc += measure * std::pow(av, q);
    }
    return is_inf ? mx : std::pow(acc, 1.0 / q);
}

}  // namespace

TEST_CASE("lq norms") {
    BallStepFunction phi0 = unit_ball_indicator(2);
    for (const QValue& q : {QValue::of(1), QValue::of(2), QValue::infinity()})
        CHECK(lq_norm(phi0, q) == doctest::Approx(1.0));

    Mask lazy = fixture("ex43.json");
    for (long n : {1L, 3L}) {
        BallStepFunction f = cascade_iterate(lazy, n);
        CHECK(lq_norm(f, QValue::of(1)) == doctest::Approx(1.0));
        CHECK(lq_norm(f, QValue::infinity()) ==
              doctest::Approx(std::pow(2.0, static_cast<double>(n))));
    }

    CHECK(lq_norm(half_ball(), QValue::of(2)) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("translation") {
    BallStepFunction phi0 = unit_ball_indicator(2);
    for (long k : {1L, 5L, -3L}) CHECK(translate(phi0, PadicRational(2, k)) == phi0);
    // 1/3 is a 2-adic integer; the coprime denominator is inverted mod 2^m
    CHECK(translate(phi0, PadicRational(2, mpq_class(1, 3))) == phi0);
    BallStepFunction hb = half_ball();
    BallStepFunction shifted = translate(hb, PadicRational(2, mpq_class(1, 3)));
    // 1/3 = 1 + 2 + ... mod 4, so the half ball moves to the odd coset
    CHECK(shifted.value_at_center(1) == GaussianRational(1));
    CHECK(shifted.value_at_center(0).is_zero());

    BallStepFunction f = half_ball();
    BallStepFunction g = translate(f, PadicRational(2, 1));
    CHECK(g.cell_count() == 1);
    CHECK(g.value_at_center(1) == GaussianRational(1));

    // Haar-measure invariance of the norm
    std::mt19937 rng(42);
    for (int t = 0; t < 10; ++t) {
        BallStepFunction r = random_level2(rng);
        PadicRational h(2, mpq_class(t - 5, 8));
        for (const QValue& q : {QValue::of(1), QValue::of(2), QValue::infinity()})
            CHECK(lq_norm(translate(r, h), q) == doctest::Approx(lq_norm(r, q)).epsilon(1e-12));
    }
}

TEST_CASE("modulus of continuity closed forms") {
    BallStepFunction f = half_ball();
    for (const QValue& q : {QValue::of(1), QValue::of(2), QValue::infinity()}) {
        CHECK(modulus_of_continuity(f, 0, q) == doctest::Approx(1.0));
        CHECK(modulus_of_continuity(f, 1, q) == 0.0);
        CHECK(modulus_of_continuity(unit_ball_indicator(2), 0, q) == 0.0);
    }
    CHECK(locally_constant_at(f, 1));
    CHECK_FALSE(locally_constant_at(f, 0));
}

TEST_CASE("best approximation closed forms") {
    BallStepFunction f = half_ball();
    CHECK(best_approximation_error(f, 0, QValue::of(2)) == doctest::Approx(0.5));
    CHECK(best_approximation_error(f, 1, QValue::of(2)) == 0.0);
    CHECK(best_approximation_error(f, 0, QValue::infinity()) == doctest::Approx(0.5));
    // q = 1: the geometric median of {1, 0} can sit anywhere on the segment;
    // the error is the same there, measure * |1 - 0| split optimally
    double e1 = best_approximation_error(f, 0, QValue::of(1));
    CHECK(e1 == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("moduli and best approximations against brute-force enumeration") {
    std::mt19937 rng(20240905);
    for (int trial = 0; trial < 25; ++trial) {
        BallStepFunction f = random_level2(rng);
        for (long n : {0L, 1L}) {
            for (const QValue& q :
                 {QValue::of(1), QValue::of(2), QValue::of(3), QValue::infinity()}) {
                double qd = q.is_inf() ? 1.0 : q.as_double();

                // oracle for omega: enumerate every shift class h = t/4,
                // 0 <= t < 16, |h|_p <= p^{-n} (finer than the canonical set)
                double want = 0.0;
                for (long t = 0; t < 16; ++t) {
                    mpq_class h(t, 4);
                    h.canonicalize();
                    PadicRational hp(2, h);
                    if (padic_norm(hp) > mpq_class(1, pow_z(2, n))) continue;
                    want = std::max(want, brute_norm_diff(f, translate(f, hp), qd, q.is_inf()));
                }
                CHECK(modulus_of_continuity(f, n, q) == doctest::Approx(want).epsilon(1e-8));

                // oracle for E_n: refine a constant per parent ball by grid
                // search over the complex plane
                std::map<mpq_class, std::vector<std::complex<double>>> parents;
                for (long k = 0; k < 4; ++k)
                    parents[canonical_center(2, k, n)].push_back(
                        f.value_at_center(k).to_complex());
                double acc = 0.0, worst = 0.0;
                for (auto& [par, vals] : parents) {
                    double lo_re = 0, hi_re = 0, lo_im = 0, hi_im = 0;
                    for (auto z : vals) {
                        lo_re = std::min(lo_re, z.real());
                        hi_re = std::max(hi_re, z.real());
                        lo_im = std::min(lo_im, z.imag());
                        hi_im = std::max(hi_im, z.imag());
                    }
                    double best = std::numeric_limits<double>::infinity();
                    double cre = 0, cim = 0;
                    for (int round = 0; round < 30; ++round) {
                        double step_re = (hi_re - lo_re) / 16.0, step_im = (hi_im - lo_im) / 16.0;
                        double bre = cre, bim = cim;
                        for (int i = 0; i <= 16; ++i)
                            for (int j = 0; j <= 16; ++j) {
                                std::complex<double> c{lo_re + i * step_re, lo_im + j * step_im};
                                double v = 0.0;
                                for (auto z : vals)
                                    v = q.is_inf() ? std::max(v, std::abs(z - c))
                                                   : v + std::pow(std::abs(z - c), qd);
                                if (v < best) {
                                    best = v;
                                    bre = c.real();
                                    bim = c.imag();
                                }
                            }
                        double wr = (hi_re - lo_re) / 8.0, wi = (hi_im - lo_im) / 8.0;
                        lo_re = bre - wr;
                        hi_re = bre + wr;
                        lo_im = bim - wi;
                        hi_im = bim + wi;
                        cre = bre;
                        cim = bim;
                    }
                    if (q.is_inf())
                        worst = std::max(worst, best);
                    else
                        acc += 0.25 * best;  // each child cell has measure 1/4
                }
                double want_e = q.is_inf() ? worst : std::pow(acc, 1.0 / qd);
                CHECK(best_approximation_error(f, n, q) ==
                      doctest::Approx(want_e).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("locally constant functions are infinitely smooth") {
    std::mt19937 rng(1729);
    for (int trial = 0; trial < 10; ++trial) {
        BallStepFunction f = random_level2(rng);
        for (long n = f.level(); n <= f.level() + 3; ++n) {
            CHECK(locally_constant_at(f, n));
            for (const QValue& q : {QValue::of(1), QValue::of(2), QValue::infinity()})
                CHECK(modulus_of_continuity(f, n, q) == 0.0);
        }
    }
}

TEST_CASE("tables are monotone and compatible") {
    std::mt19937 rng(8128);
    for (int trial = 0; trial < 12; ++trial) {
        BallStepFunction f = random_level2(rng);
        for (const QValue& q : {QValue::of(1), QValue::of(2), QValue::infinity()}) {
            double prev = std::numeric_limits<double>::infinity();
            double prev_e = std::numeric_limits<double>::infinity();
            for (long n = 0; n <= 3; ++n) {
                double w = modulus_of_continuity(f, n, q);
                double e = best_approximation_error(f, n, q);
                CHECK(e <= w + 1e-9);
                CHECK(w <= prev + 1e-12);
                CHECK(e <= prev_e + 1e-9);
                prev = w;
                prev_e = e;
            }
        }
    }
}

TEST_CASE("lipschitz constants") {
    BallStepFunction phi0 = unit_ball_indicator(2);
    CHECK(lipschitz_constant(phi0, QValue::of(2), 1.5, 0, 4) == 0.0);
    CHECK(lipschitz_constant(half_ball(), QValue::of(1), 1.0, 0, 4) == doctest::Approx(1.0));
    // f_3 of the lazy mask: value 8 on B_{-3}(0), omega_inf = 8 below level 3
    BallStepFunction f3 = cascade_iterate(fixture("ex43.json"), 3);
    CHECK(lipschitz_constant(f3, QValue::infinity(), 2.0, 0, 3) == doctest::Approx(128.0));
}

TEST_CASE("critical exponent of the haar family is infinite") {
    SmoothnessReport r = critical_exponent_estimate(fixture("haar2.json"), QValue::of(2), 6, 0, 6);
    CHECK(r.infinite);
    CHECK(std::isinf(r.exponent));
    REQUIRE(r.zero_level.has_value());
    CHECK(*r.zero_level == 0);

    SmoothnessReport r41 =
        critical_exponent_estimate(fixture("ex41.json"), QValue::infinity(), 5, 0, 5);
    CHECK(r41.infinite);

    SmoothnessReport r42 = critical_exponent_estimate(fixture("ex42.json"), QValue::of(2), 5, 0, 5);
    CHECK(r42.infinite);
}

TEST_CASE("critical exponent refuses non-convergent masks") {
    CHECK_THROWS_AS(critical_exponent_estimate(fixture("ex43.json"), QValue::of(2), 4, 0, 4),
                    NotConvergent);
}

TEST_CASE("report serialization") {
    SmoothnessReport r = critical_exponent_estimate(fixture("haar2.json"), QValue::of(2), 4, 0, 4);
    std::string js = smoothness_to_json(r);
    CHECK(js.find("\"infinite\"") != std::string::npos);
    std::string csv = smoothness_to_csv(r);
    CHECK(csv.rfind("n,omega,E_n", 0) == 0);
    // one line per level plus the header
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("a genuinely finite exponent estimate") {
    // value sum_j bit_j(k) 4^{-j}: flipping digit j moves the value by
    // 4^{-j}, so omega_inf(f, n) ~ 4^{-n} and the fitted exponent is ~2
    BallStepFunction f(2, 4);
    for (long k = 0; k < 16; ++k) {
        mpq_class val(0);
        for (long j = 0; j < 4; ++j)
            if ((k >> j) & 1) val += mpq_class(1, pow_z(4, j));
        val.canonicalize();
        f.add_cell(k, GaussianRational(val));
    }
    SmoothnessReport r = smoothness_tables(f, QValue::infinity(), 0, 3);
    CHECK_FALSE(r.infinite);
    CHECK(std::isfinite(r.exponent));
    CHECK(r.exponent > 0.0);
}
