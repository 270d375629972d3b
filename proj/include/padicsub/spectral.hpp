#pragma once

#include <optional>

#include "padicsub/exact_matrix.hpp"
#include "padicsub/qvalue.hpp"

namespace padicsub {

inline constexpr long long kDefaultMulBudget = 20000000;

/// Thrown when an enumeration would exceed the matrix-multiplication budget.
struct MulBudgetExceeded : std::runtime_error {
    MulBudgetExceeded(long long budget, double needed)
        : std::runtime_error("multiplication budget exceeded"), budget(budget), needed(needed) {}
    long long budget;
    double needed;
};

/// Shared multiplication budget; enumerations reserve their full cost up
/// front, so exhaustion never depends on traversal or thread order.
struct Budget {
    long long remaining = kDefaultMulBudget;
    void charge(double cost) {
        if (cost > static_cast<double>(remaining)) throw MulBudgetExceeded(remaining, cost);
        remaining -= static_cast<long long>(cost);
    }
};

enum class MatrixNorm { MaxRowSum, MaxColSum };

const char* matrix_norm_name(MatrixNorm n);

/// Finite family of equal-sized square matrices; exact forms plus float
/// mirrors (the mirrors drive norm enumeration, the exact forms drive
/// nilpotency certificates).
struct MatrixFamily {
    std::vector<ExactMatrix> exact;
    std::vector<Eigen::MatrixXcd> mirror;
    std::size_t dim = 0;

    static MatrixFamily from(std::vector<ExactMatrix> members);
    std::size_t count() const { return mirror.size(); }
};

/// ||A^n||_q over all words of length n: q-sum (or max, q = inf) of the
/// chosen operator norm over all products A_1...A_n.
double family_norm(const MatrixFamily& F, long n, const QValue& q,
                   MatrixNorm norm = MatrixNorm::MaxRowSum, Budget* budget = nullptr,
                   int threads = 1);

/// min over 1 <= n <= depth of family_norm(F, n, q)^{1/n}; an upper bound
/// for rho_q at every depth.
double jsr_upper(const MatrixFamily& F, const QValue& q, long depth,
                 MatrixNorm norm = MatrixNorm::MaxRowSum, Budget* budget = nullptr,
                 int threads = 1);

/// max over words P of length n <= depth of rho(P)^{1/n}; a lower bound for
/// rho_q for every q.
double jsr_lower(const MatrixFamily& F, long depth, Budget* budget = nullptr, int threads = 1);

/// Least n <= max_n with every length-n word exactly zero, if any. Computed
/// from the exact image-subspace chain, so the answer is a certificate.
std::optional<long> nilpotency_index(const MatrixFamily& F, long max_n);

/// Largest eigenvalue modulus of the float mirror.
double spectral_radius(const Eigen::MatrixXcd& M);
double spectral_radius(const ExactMatrix& M);

struct JsrBracket {
    QValue q = QValue::of(1);
    long depth_requested = 0;
    long depth_achieved = 0;
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    std::optional<long> nilpotency;
    MatrixNorm norm_used = MatrixNorm::MaxRowSum;
    bool budget_exhausted = false;
};

/// Lower/upper bracket for rho_q, stopping early (with the depth actually
/// reached) when the budget runs out. A nilpotency certificate pins the
/// bracket to [0, 0] exactly.
JsrBracket jsr_bracket(const MatrixFamily& F, const QValue& q, long depth,
                       MatrixNorm norm = MatrixNorm::MaxRowSum, Budget* budget = nullptr,
                       int threads = 1);

}  // namespace padicsub
