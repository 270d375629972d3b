#pragma once

#include "padicsub/convergence.hpp"
#include "padicsub/subdivision.hpp"

namespace padicsub {

/// L_q norm (sum of cell measures times |value|^q, essential sup for q = inf).
double lq_norm(const BallStepFunction& f, const QValue& q);

/// Exact cell recentering f(. - h); measure preserving.
BallStepFunction translate(const BallStepFunction& f, const PadicRational& h);

/// True iff f(. - h) = f for every shift with |h|_p <= p^{-n}, decided
/// exactly over the finitely many shift classes.
bool locally_constant_at(const BallStepFunction& f, long n);

/// Modulus of continuity: sup over |h|_p <= p^{-n} of ||f - f(. - h)||_q,
/// realized over the p^{m-n} shift classes of a level-m step function.
double modulus_of_continuity(const BallStepFunction& f, long n, const QValue& q);

/// Distance in L_q from f to the locally constant functions of order n,
/// minimized per level-n ball over one constant: mean for q = 2, minimum
/// enclosing circle for q = inf, geometric median for q = 1, iterative
/// convex minimization otherwise.
double best_approximation_error(const BallStepFunction& f, long n, const QValue& q);

/// Smallest c with omega_q(f, n) <= c p^{-alpha n} over the level range.
double lipschitz_constant(const BallStepFunction& f, const QValue& q, double alpha, long n_lo,
                          long n_hi);

struct SmoothnessReport {
    QValue q = QValue::of(2);
    long p = 2;
    long iterations = 0;
    std::vector<long> levels;
    std::vector<double> omega;
    std::vector<double> approx;  // E_n
    bool infinite = false;
    double exponent = 0.0;  // +inf when infinite
    std::optional<long> zero_level;
    double fit_residual = 0.0;
    /// Finite-iterate extrapolation, not the exponent of the limit function.
    bool extrapolated = true;
};

/// Moduli/best-approximation tables of a given step function plus the fitted
/// decay exponent; exact vanishing reports an infinite exponent.
SmoothnessReport smoothness_tables(const BallStepFunction& f, const QValue& q, long n_lo,
                                   long n_hi);

/// Thrown when the convergence precondition of the estimator fails.
struct NotConvergent : std::runtime_error {
    explicit NotConvergent(Verdict v)
        : std::runtime_error(std::string("mask is not certified convergent (verdict ") +
                             verdict_name(v) + ")"),
          verdict(v) {}
    Verdict verdict;
};

/// Critical-exponent estimate for the scheme's limit, read off a cascade
/// iterate. Requires the mask to certify convergent at the given q.
SmoothnessReport critical_exponent_estimate(const Mask& m, const QValue& q, long n_iter,
                                            long level_lo, long level_hi,
                                            long depth = kDefaultDepth,
                                            long long budget = kDefaultMulBudget, int threads = 1,
                                            std::size_t cell_budget = kDefaultCellBudget);

std::string smoothness_to_json(const SmoothnessReport& r);
std::string smoothness_to_csv(const SmoothnessReport& r);

}  // namespace padicsub
