#include "padicsub/exact_matrix.hpp"

#include <stdexcept>

namespace padicsub {

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GaussianRational(1);
    return m;
}

bool ExactMatrix::is_zero() const {
    for (const auto& v : a_)
        if (!v.is_zero()) return false;
    return true;
}

std::vector<GaussianRational> ExactMatrix::apply(const std::vector<GaussianRational>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
    std::vector<GaussianRational> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        GaussianRational acc;
        for (std::size_t j = 0; j < cols_; ++j) {
            if (!a_[i * cols_ + j].is_zero() && !x[j].is_zero()) acc += a_[i * cols_ + j] * x[j];
        }
        y[i] = acc;
    }
    return y;
}

Eigen::MatrixXcd ExactMatrix::to_complex() const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = at(i, j).to_complex();
    return m;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product size mismatch");
    ExactMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const GaussianRational& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (b.at(k, j).is_zero()) continue;
                c.at(i, j) += aik * b.at(k, j);
            }
        }
    return c;
}

void RowSpace::reduce(std::vector<GaussianRational>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const GaussianRational& c = v[pivots_[r]];
        if (c.is_zero()) continue;
        GaussianRational f = c;  // pivot of stored row is 1
        for (std::size_t j = 0; j < width_; ++j)
            if (!rows_[r][j].is_zero()) v[j] -= f * rows_[r][j];
    }
}

bool RowSpace::insert(std::vector<GaussianRational> v) {
    if (v.size() != width_) throw std::invalid_argument("row width mismatch");
    reduce(v);
    std::size_t pivot = width_;
    for (std::size_t j = 0; j < width_; ++j)
        if (!v[j].is_zero()) {
            pivot = j;
            break;
        }
    if (pivot == width_) return false;
    GaussianRational inv = GaussianRational(1) / v[pivot];
    for (auto& x : v) x = x * inv;
    // back-substitute into existing rows to keep them fully reduced
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const GaussianRational& c = rows_[r][pivot];
        if (c.is_zero()) continue;
        GaussianRational f = c;
        for (std::size_t j = 0; j < width_; ++j)
            if (!v[j].is_zero()) rows_[r][j] -= f * v[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
    std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, pivot);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
    return true;
}

bool RowSpace::contains(std::vector<GaussianRational> v) const {
    if (v.size() != width_) throw std::invalid_argument("row width mismatch");
    reduce(v);
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

SpanSolver::SpanSolver(const std::vector<std::vector<GaussianRational>>& basis) {
    d_ = basis.size();
    n_ = d_ == 0 ? 0 : basis[0].size();
    for (std::size_t i = 0; i < d_; ++i) {
        if (basis[i].size() != n_) throw std::invalid_argument("basis width mismatch");
        std::vector<GaussianRational> aug(n_ + d_);
        std::copy(basis[i].begin(), basis[i].end(), aug.begin());
        aug[n_ + i] = GaussianRational(1);
        // eliminate against stored rows
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const GaussianRational& c = aug[pivots_[r]];
            if (c.is_zero()) continue;
            GaussianRational f = c;
            for (std::size_t j = 0; j < n_ + d_; ++j)
                if (!rows_[r][j].is_zero()) aug[j] -= f * rows_[r][j];
        }
        std::size_t pivot = n_;
        for (std::size_t j = 0; j < n_; ++j)
            if (!aug[j].is_zero()) {
                pivot = j;
                break;
            }
        if (pivot == n_) throw std::invalid_argument("basis rows are linearly dependent");
        GaussianRational inv = GaussianRational(1) / aug[pivot];
        for (auto& x : aug) x = x * inv;
        pivots_.push_back(pivot);
        rows_.push_back(std::move(aug));
    }
}

std::optional<std::vector<GaussianRational>> SpanSolver::solve(
    const std::vector<GaussianRational>& y) const {
    if (y.size() != n_) throw std::invalid_argument("target width mismatch");
    std::vector<GaussianRational> work(n_);
    std::copy(y.begin(), y.end(), work.begin());
    std::vector<GaussianRational> coord(d_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const GaussianRational& c = work[pivots_[r]];
        if (c.is_zero()) continue;
        GaussianRational f = c;
        for (std::size_t j = 0; j < n_; ++j)
            if (!rows_[r][j].is_zero()) work[j] -= f * rows_[r][j];
        for (std::size_t j = 0; j < d_; ++j)
            if (!rows_[r][n_ + j].is_zero()) coord[j] += f * rows_[r][n_ + j];
    }
    for (const auto& x : work)
        if (!x.is_zero()) return std::nullopt;
    return coord;
}

}  // namespace padicsub
