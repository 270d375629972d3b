#include "padicsub/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "json.hpp"

namespace padicsub {

namespace {

using Cpx = std::complex<double>;

struct WeightedPoint {
    Cpx z;
    double weight;  // multiplicity of the value among the children
};

/// Children of one level-n parent ball: distinct values with multiplicities,
/// plus the implicit zero children.
struct ChildGroup {
    std::vector<WeightedPoint> points;
    double total = 0.0;
};

double objective(const ChildGroup& g, Cpx c, double q) {
    double acc = 0.0;
    for (const auto& wp : g.points) acc += wp.weight * std::pow(std::abs(wp.z - c), q);
    return acc;
}

/// Geometric median by a damped fixed-point scheme with the usual safeguard
/// at anchor points.
Cpx geometric_median(const ChildGroup& g) {
    Cpx x{0.0, 0.0};
    double wsum = 0.0;
    for (const auto& wp : g.points) {
        x += wp.weight * wp.z;
        wsum += wp.weight;
    }
    x /= wsum;
    for (int it = 0; it < 10000; ++it) {
        // check whether x sits on a data point
        const WeightedPoint* anchor = nullptr;
        for (const auto& wp : g.points)
            if (std::abs(wp.z - x) < 1e-13) anchor = &wp;
        Cpx num{0.0, 0.0};
        double den = 0.0;
        Cpx pull{0.0, 0.0};
        for (const auto& wp : g.points) {
            double d = std::abs(wp.z - x);
            if (d < 1e-13) continue;
            num += wp.weight / d * wp.z;
            den += wp.weight / d;
            pull += wp.weight / d * (wp.z - x);
        }
        if (den == 0.0) return x;  // all mass at x
        if (anchor) {
            double r = std::abs(pull);
            if (r <= anchor->weight + 1e-15) return x;  // subgradient contains 0
            Cpx t = num / den;
            double step = 1.0 - anchor->weight / r;
            Cpx next = x + step * (t - x);
            if (std::abs(next - x) <= 1e-10) return next;
            x = next;
            continue;
        }
        Cpx next = num / den;
        if (std::abs(next - x) <= 1e-10) return next;
        x = next;
    }
    return x;
}

/// One-constant minimizer of sum w |v - c|^q for 1 < q < inf by damped
/// reweighted averaging.
Cpx power_mean_minimizer(const ChildGroup& g, double q) {
    Cpx x{0.0, 0.0};
    double wsum = 0.0;
    for (const auto& wp : g.points) {
        x += wp.weight * wp.z;
        wsum += wp.weight;
    }
    x /= wsum;
    double fx = objective(g, x, q);
    for (int it = 0; it < 10000; ++it) {
        Cpx num{0.0, 0.0};
        double den = 0.0;
        for (const auto& wp : g.points) {
            double d = std::max(std::abs(wp.z - x), 1e-300);
            double w = wp.weight * std::pow(d, q - 2.0);
            num += w * wp.z;
            den += w;
        }
        if (den == 0.0) break;
        Cpx target = num / den;
        double lambda = 1.0;
        Cpx next = x;
        double fnext = fx;
        for (int back = 0; back < 40; ++back) {
            Cpx cand = x + lambda * (target - x);
            double fc = objective(g, cand, q);
            if (fc <= fx) {
                next = cand;
                fnext = fc;
                break;
            }
            lambda *= 0.5;
        }
        if (std::abs(next - x) <= 1e-10) return next;
        x = next;
        fx = fnext;
    }
    return x;
}

struct Circle {
    Cpx center{0.0, 0.0};
    double r = 0.0;
    bool covers(Cpx z) const { return std::abs(z - center) <= r + 1e-12; }
};

Circle circle_two(Cpx a, Cpx b) { return {(a + b) / 2.0, std::abs(a - b) / 2.0}; }

Circle circle_three(Cpx a, Cpx b, Cpx c) {
    // circumcenter; falls back to the best two-point circle when degenerate
    double ax = a.real(), ay = a.imag(), bx = b.real(), by = b.imag(), cx = c.real(),
           cy = c.imag();
    double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if (std::abs(d) < 1e-14) {
        Circle best = circle_two(a, b);
        for (const Circle& cand : {circle_two(a, c), circle_two(b, c)})
            if (cand.r > best.r) best = cand;
        return best;
    }
    double ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) +
                 (cx * cx + cy * cy) * (ay - by)) /
                d;
    double uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) +
                 (cx * cx + cy * cy) * (bx - ax)) /
                d;
    Circle out{{ux, uy}, 0.0};
    out.r = std::max({std::abs(a - out.center), std::abs(b - out.center),
                      std::abs(c - out.center)});
    return out;
}

Circle circle_of_support(const std::vector<Cpx>& s) {
    switch (s.size()) {
        case 0: return {};
        case 1: return {s[0], 0.0};
        case 2: return circle_two(s[0], s[1]);
        default: return circle_three(s[0], s[1], s[2]);
    }
}

Circle welzl(std::vector<Cpx>& pts, std::vector<Cpx> support, std::size_t n) {
    if (n == 0 || support.size() == 3) return circle_of_support(support);
    Cpx p = pts[n - 1];
    Circle c = welzl(pts, support, n - 1);
    if (c.covers(p)) return c;
    support.push_back(p);
    return welzl(pts, support, n - 1);
}

/// Minimum enclosing circle (Chebyshev center) of the distinct child values.
Circle min_enclosing_circle(const ChildGroup& g) {
    std::vector<Cpx> pts;
    pts.reserve(g.points.size());
    for (const auto& wp : g.points) pts.push_back(wp.z);
    return welzl(pts, {}, pts.size());
}

std::map<mpq_class, ChildGroup> group_children(const BallStepFunction& f, long n) {
    std::map<mpq_class, ChildGroup> groups;
    double siblings = pow_z(f.prime(), f.level() - n).get_d();
    // collapse equal child values: only value multiplicities matter
    std::map<mpq_class, std::map<std::pair<mpq_class, mpq_class>, double>> raw;
    for (const auto& [c, v] : f.cells())
        raw[canonical_center(f.prime(), c, n)][{v.re, v.im}] += 1.0;
    for (auto& [parent, values] : raw) {
        ChildGroup g;
        double listed = 0.0;
        for (auto& [rv, mult] : values) {
            g.points.push_back({{rv.first.get_d(), rv.second.get_d()}, mult});
            listed += mult;
        }
        if (listed < siblings) g.points.push_back({{0.0, 0.0}, siblings - listed});
        g.total = siblings;
        groups.emplace(parent, std::move(g));
    }
    return groups;
}

}  // namespace

double lq_norm(const BallStepFunction& f, const QValue& q) {
    if (q.is_inf()) {
        double m = 0.0;
        for (const auto& [c, v] : f.cells()) m = std::max(m, std::sqrt(v.abs2().get_d()));
        return m;
    }
    double qd = q.as_double();
    double measure = f.cell_measure().get_d();
    double acc = 0.0;
    for (const auto& [c, v] : f.cells()) acc += measure * std::pow(v.abs2().get_d(), qd / 2.0);
    return std::pow(acc, 1.0 / qd);
}

BallStepFunction translate(const BallStepFunction& f, const PadicRational& h) {
    if (f.prime() != h.prime()) throw std::invalid_argument("mismatched primes");
    BallStepFunction out(f.prime(), f.level());
    for (const auto& [c, v] : f.cells()) out.add_cell(c + h.value(), v);
    return out;
}

bool locally_constant_at(const BallStepFunction& f, long n) {
    if (n < 0) throw std::invalid_argument("negative level");
    if (n >= f.level()) return true;
    long p = f.prime();
    mpz_class reps = pow_z(p, f.level() - n);
    mpq_class step(pow_z(p, n));
    for (mpz_class t = 1; t < reps; ++t) {
        mpq_class shift = mpq_class(t) * step;
        for (const auto& [c, v] : f.cells()) {
            if (f.value_at_center(c - shift) != v) return false;
        }
    }
    return true;
}

double modulus_of_continuity(const BallStepFunction& f, long n, const QValue& q) {
    if (n < 0) throw std::invalid_argument("negative level");
    if (n >= f.level()) return 0.0;
    long p = f.prime();
    mpz_class reps = pow_z(p, f.level() - n);
    mpq_class step(pow_z(p, n));
    double sup = 0.0;
    for (mpz_class t = 1; t < reps; ++t) {
        PadicRational h(p, mpq_class(t) * step);
        sup = std::max(sup, lq_norm(f - translate(f, h), q));
    }
    return sup;
}

double best_approximation_error(const BallStepFunction& f, long n, const QValue& q) {
    if (n < 0) throw std::invalid_argument("negative level");
    if (n >= f.level()) return 0.0;
    auto groups = group_children(f, n);
    double measure = f.cell_measure().get_d();
    if (q.is_inf()) {
        double worst = 0.0;
        for (const auto& [parent, g] : groups) worst = std::max(worst, min_enclosing_circle(g).r);
        return worst;
    }
    double qd = q.as_double();
    double acc = 0.0;
    for (const auto& [parent, g] : groups) {
        Cpx c;
        if (qd == 2.0) {
            Cpx mean{0.0, 0.0};
            for (const auto& wp : g.points) mean += wp.weight * wp.z;
            c = mean / g.total;
        } else if (qd == 1.0) {
            c = geometric_median(g);
        } else {
            c = power_mean_minimizer(g, qd);
        }
        acc += measure * objective(g, c, qd);
    }
    return std::pow(acc, 1.0 / qd);
}

double lipschitz_constant(const BallStepFunction& f, const QValue& q, double alpha, long n_lo,
                          long n_hi) {
    if (n_lo < 0 || n_hi < n_lo) throw std::invalid_argument("bad level range");
    double best = 0.0;
    double p = static_cast<double>(f.prime());
    for (long n = n_lo; n <= n_hi; ++n)
        best = std::max(best, modulus_of_continuity(f, n, q) * std::pow(p, alpha * n));
    return best;
}

SmoothnessReport smoothness_tables(const BallStepFunction& f, const QValue& q, long n_lo,
                                   long n_hi) {
    if (n_lo < 0 || n_hi < n_lo) throw std::invalid_argument("bad level range");
    SmoothnessReport r;
    r.q = q;
    r.p = f.prime();
    for (long n = n_lo; n <= n_hi; ++n) {
        r.levels.push_back(n);
        r.omega.push_back(modulus_of_continuity(f, n, q));
        r.approx.push_back(best_approximation_error(f, n, q));
        if (!r.zero_level && locally_constant_at(f, n)) r.zero_level = n;
    }
    if (r.zero_level) {
        // locally constant tail: infinitely smooth
        r.infinite = true;
        r.exponent = std::numeric_limits<double>::infinity();
        return r;
    }
    // least-squares slope of -log_p omega against n
    double logp = std::log(static_cast<double>(r.p));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = r.levels.size();
    std::vector<double> ys(cnt);
    for (std::size_t i = 0; i < cnt; ++i) {
        ys[i] = -std::log(r.omega[i]) / logp;
        double x = static_cast<double>(r.levels[i]);
        sx += x;
        sy += ys[i];
        sxx += x * x;
        sxy += x * ys[i];
    }
    double denom = cnt * sxx - sx * sx;
    double slope = denom == 0.0 ? 0.0 : (cnt * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / cnt;
    double res = 0.0;
    for (std::size_t i = 0; i < cnt; ++i)
        res = std::max(res, std::abs(slope * r.levels[i] + intercept - ys[i]));
    r.exponent = slope;
    r.fit_residual = res;
    return r;
}

SmoothnessReport critical_exponent_estimate(const Mask& m, const QValue& q, long n_iter,
                                            long level_lo, long level_hi, long depth,
                                            long long budget, int threads,
                                            std::size_t cell_budget) {
    Certificate cert = certify(m, q, depth, budget, threads);
    if (cert.verdict != Verdict::Convergent) throw NotConvergent(cert.verdict);
    BallStepFunction f = cascade_iterate(m, n_iter, cell_budget);
    SmoothnessReport r = smoothness_tables(f, q, level_lo, level_hi);
    r.iterations = n_iter;
    return r;
}

std::string smoothness_to_json(const SmoothnessReport& r) {
    nlohmann::json j;
    j["q"] = r.q.to_string();
    j["p"] = r.p;
    j["iterations"] = r.iterations;
    j["table"] = nlohmann::json::array();
    for (std::size_t i = 0; i < r.levels.size(); ++i)
        j["table"].push_back(
            {{"n", r.levels[i]}, {"omega", r.omega[i]}, {"E", r.approx[i]}});
    j["infinite"] = r.infinite;
    if (r.infinite)
        j["exponent"] = "infinite";
    else
        j["exponent"] = r.exponent;
    if (r.zero_level) j["zero_level"] = *r.zero_level;
    j["fit_residual"] = r.fit_residual;
    j["extrapolated"] = r.extrapolated;
    return j.dump(2);
}

std::string smoothness_to_csv(const SmoothnessReport& r) {
    std::ostringstream out;
    out << "n,omega,E_n\n";
    out.precision(17);
    for (std::size_t i = 0; i < r.levels.size(); ++i)
        out << r.levels[i] << "," << r.omega[i] << "," << r.approx[i] << "\n";
    return out.str();
}

}  // namespace padicsub
