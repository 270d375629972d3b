#pragma once

#include <cstddef>
#include <stdexcept>

#include "padicsub/mask.hpp"

namespace padicsub {

/// Thrown when the cascade cell budget would be exceeded.
struct CellBudgetExceeded : std::runtime_error {
    CellBudgetExceeded(std::size_t budget, std::size_t needed)
        : std::runtime_error("cell budget exceeded: needed " + std::to_string(needed) +
                             " cells, budget " + std::to_string(budget)),
          budget(budget),
          needed(needed) {}
    std::size_t budget;
    std::size_t needed;
};

inline constexpr std::size_t kDefaultCellBudget = 1000000;

/// delta_alpha.
Sequence delta(const IpElement& alpha);

/// Subdivision step (S_h u)(alpha) = sum_beta h(alpha - A beta) u(beta).
Sequence subdivide(const Mask& m, const Sequence& u);

/// S_h^n delta.
Sequence iterate(const Mask& m, long n);

/// Difference operator (nabla_y u) = u - u(. - y).
Sequence difference(const Sequence& u, const IpElement& y);

/// v~(tau) u = sum_beta v(beta) u(. - beta).
Sequence apply_symbol_diff(const Sequence& v, const Sequence& u);

/// Ball c + B_{-m}(0) of level m; the canonical center makes two cells of
/// equal level equal exactly when their centers agree mod p^m Z_p.
struct BallCell {
    long p;
    long level;
    mpq_class center;  // canonical digit form, in [0, p^level)

    static BallCell of(long p, long level, const mpq_class& center);
    mpq_class measure() const { return mpq_class(1) / mpq_class(pow_z(p, level)); }
    friend bool operator==(const BallCell& a, const BallCell& b) {
        return a.p == b.p && a.level == b.level && a.center == b.center;
    }
};

/// Exact step function: finitely many disjoint balls c + B_{-m}(0) of a
/// common level m, each carrying a constant value. Centers are stored in
/// canonical digit form, so equal cells have equal keys.
class BallStepFunction {
  public:
    using Cells = std::map<mpq_class, GaussianRational>;

    BallStepFunction(long p, long level) : p_(p), level_(level) {
        if (!is_prime(p)) throw std::invalid_argument("p is not prime");
        if (level < 0) throw std::invalid_argument("negative level");
    }

    long prime() const { return p_; }
    long level() const { return level_; }
    const Cells& cells() const { return cells_; }
    std::size_t cell_count() const { return cells_.size(); }
    bool is_zero() const { return cells_.empty(); }

    /// Ball measure p^{-level}.
    mpq_class cell_measure() const { return mpq_class(1) / mpq_class(pow_z(p_, level_)); }

    GaussianRational value_at_center(const mpq_class& center) const;

    void add_cell(const mpq_class& center, const GaussianRational& v);

    std::vector<std::pair<BallCell, GaussianRational>> cell_list() const;

    friend BallStepFunction operator-(const BallStepFunction& a, const BallStepFunction& b);
    friend bool operator==(const BallStepFunction& a, const BallStepFunction& b) {
        return a.p_ == b.p_ && a.level_ == b.level_ && a.cells_ == b.cells_;
    }

  private:
    long p_;
    long level_;
    Cells cells_;
};

/// Canonical representative of x mod p^m Z_p: the digit expansion
/// sum_{j < m} c_j p^j, a rational in [0, p^m). Denominator factors coprime
/// to p are inverted modulo the relevant p-power.
mpq_class canonical_center(long p, const mpq_class& x, long level);

/// Indicator of the unit ball, the cascade seed.
BallStepFunction unit_ball_indicator(long p);

/// One cascade step Q_h f = sum_alpha h(alpha) f(A . - alpha); a level-m
/// input yields a level-(m+1) output.
BallStepFunction cascade_apply(const Mask& m, const BallStepFunction& f,
                               std::size_t cell_budget = kDefaultCellBudget);

/// n-th cascade iterate f_n = sum_beta (S_h^n delta)(beta) 1_{p^n beta + B_{-n}(0)}.
BallStepFunction cascade_iterate(const Mask& m, long n,
                                 std::size_t cell_budget = kDefaultCellBudget);

/// Monna plotting coordinate: digit-reversal of the cell center.
mpq_class monna_coordinate(long p, const mpq_class& center);

}  // namespace padicsub
