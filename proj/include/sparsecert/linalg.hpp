#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sparsecert {

using Vector = std::vector<double>;
using IndexSet = std::vector<std::size_t>;

/// Real m x n matrix stored row-major. Immutable once built: every operation
/// returns a fresh matrix, so values can be shared freely between threads.
class DenseMatrix {
public:
    /// Throws DimensionMismatch if data.size() != rows*cols or either count
    /// is zero, and Error if any entry is NaN or infinite.
    DenseMatrix(std::size_t rows, std::size_t cols, Vector data);

    /// Row-wise literal, mostly for tests and fixtures.
    static DenseMatrix fromRows(std::initializer_list<std::initializer_list<double>> rows);
    static DenseMatrix fromRows(const std::vector<Vector>& rows);
    static DenseMatrix fromColumns(const std::vector<Vector>& columns);
    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(std::span<const double> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    std::span<const double> data() const noexcept { return data_; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    Vector column(std::size_t j) const;
    DenseMatrix transpose() const;
    DenseMatrix selectColumns(std::span<const std::size_t> indices) const;
    DenseMatrix withoutColumn(std::size_t j) const;
    DenseMatrix appendColumn(std::span<const double> c) const;
    double maxAbs() const noexcept;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    Vector data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double normInf(std::span<const double> v);

struct NormalizedColumns {
    DenseMatrix matrix;
    Vector scaleFactors;  // scaleFactors[i] = 1 / ||a_i||_2
};

/// Scales every column to unit l2-norm. Throws ZeroColumn(i) on a zero column.
NormalizedColumns normalizeColumns(const DenseMatrix& a);

/// n x n Gram matrix A^T A. Only the upper triangle is computed and then
/// mirrored, so the stored matrix is exactly symmetric.
class GramMatrix {
public:
    std::size_t dim() const noexcept { return dim_; }
    bool sourceNormalized() const noexcept { return sourceNormalized_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * dim_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {entries_.data() + i * dim_, dim_}; }

    /// Principal submatrix on the given indices.
    GramMatrix restrict(std::span<const std::size_t> indices) const;

private:
    GramMatrix(std::size_t dim, Vector entries, bool normalized)
        : dim_(dim), entries_(std::move(entries)), sourceNormalized_(normalized) {}
    friend GramMatrix gram(const DenseMatrix&);
    friend GramMatrix gram(const NormalizedColumns&);

    std::size_t dim_;
    Vector entries_;
    bool sourceNormalized_;
};

GramMatrix gram(const DenseMatrix& a);
/// Gram of a column-normalized matrix; the diagonal is stored as exactly 1.
GramMatrix gram(const NormalizedColumns& a);
/// Shorthand for gram(normalizeColumns(a)).
GramMatrix normalizedGram(const DenseMatrix& a);

struct SvdFactors {
    DenseMatrix u;               // m x m orthogonal
    Vector singularValues;       // length min(m, n), nonincreasing
    DenseMatrix vt;              // n x n orthogonal
};

/// One-sided (Hestenes) Jacobi SVD with cyclic sweeps. Throws NoConvergence
/// if the sweep budget of 30 * (column count) is spent without the
/// factors reaching orthogonality 1e-10.
SvdFactors svd(const DenseMatrix& a);

/// Singular values only, nonincreasing.
Vector singularValues(const DenseMatrix& a);

/// Number of singular values above max(m, n) * eps * sigma_max.
std::size_t numericalRank(const DenseMatrix& a);

/// sigma_max / sigma_min over the min(m, n) singular values; +inf if singular.
double conditionNumber(const DenseMatrix& a);

/// Minimum-norm least-squares solution via the pseudo-inverse, truncating
/// singular values at the numericalRank tolerance.
Vector leastSquares(const DenseMatrix& a, std::span<const double> b);

/// Orthonormal basis of the null space, one basis vector per entry.
std::vector<Vector> nullSpaceBasis(const DenseMatrix& a);

/// Solves a square system by Gaussian elimination with partial pivoting.
/// Throws RankDeficient when a pivot vanishes.
Vector solveSquare(const DenseMatrix& a, std::span<const double> b);

}  // namespace sparsecert
