#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "padicsub/rational.hpp"

namespace padicsub {

/// Dense matrix over the Gaussian rationals. Small dimensions only; all
/// arithmetic is exact.
class ExactMatrix {
  public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ExactMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    GaussianRational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const GaussianRational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;

    std::vector<GaussianRational> apply(const std::vector<GaussianRational>& x) const;

    Eigen::MatrixXcd to_complex() const;

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<GaussianRational> a_;
};

/// Incrementally maintained row space with exact rank decisions (reduced
/// row echelon over the Gaussian rationals).
class RowSpace {
  public:
    explicit RowSpace(std::size_t width) : width_(width) {}

    /// Inserts a vector; returns true iff it enlarged the span.
    bool insert(std::vector<GaussianRational> v);
    bool contains(std::vector<GaussianRational> v) const;

    std::size_t dim() const { return rows_.size(); }
    std::size_t width() const { return width_; }
    const std::vector<std::vector<GaussianRational>>& echelon_rows() const { return rows_; }

  private:
    void reduce(std::vector<GaussianRational>& v) const;
    std::size_t width_;
    std::vector<std::vector<GaussianRational>> rows_;   // pivot-normalized, by pivot column
    std::vector<std::size_t> pivots_;
};

/// Solves for exact coordinates of targets in a fixed ordered basis.
class SpanSolver {
  public:
    explicit SpanSolver(const std::vector<std::vector<GaussianRational>>& basis);

    /// Coordinates c with sum_i c_i basis_i = y, or nullopt if y is outside
    /// the span.
    std::optional<std::vector<GaussianRational>> solve(
        const std::vector<GaussianRational>& y) const;

  private:
    std::size_t n_ = 0;  // ambient width
    std::size_t d_ = 0;  // basis size
    // rows [r | t] with r in the span and t its basis coordinates
    std::vector<std::vector<GaussianRational>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace padicsub
