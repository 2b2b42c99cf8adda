#include "sparsecert/linalg.hpp"

#include "sparsecert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace sparsecert {

namespace {

constexpr double kMachineEps = std::numeric_limits<double>::epsilon();
constexpr double kOrthTolerance = 1e-10;
constexpr double kJacobiTolerance = 1e-15;

double rankTolerance(std::size_t rows, std::size_t cols, double sigmaMax) {
    return static_cast<double>(std::max(rows, cols)) * kMachineEps * sigmaMax;
}

// Column-major working copy used by the Jacobi sweeps.
struct Columns {
    std::size_t length;
    std::vector<Vector> cols;
};

// Extends `basis` (orthonormal vectors of length dim) to a full orthonormal
// basis of R^dim using the standard basis vectors as candidates.
void completeBasis(std::vector<Vector>& basis, std::size_t dim) {
    for (std::size_t k = 0; k < dim && basis.size() < dim; ++k) {
        Vector v(dim, 0.0);
        v[k] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) {
                const double c = dot(v, q);
                for (std::size_t i = 0; i < dim; ++i) v[i] -= c * q[i];
            }
        }
        const double nv = norm2(v);
        if (nv > 1e-8) {
            for (auto& x : v) x /= nv;
            basis.push_back(std::move(v));
        }
    }
}

// Orthogonalizes the columns of b (tall: length >= count). Returns the
// accumulated right rotation as columns of a q x q matrix.
std::vector<Vector> jacobiSweeps(Columns& b) {
    const std::size_t q = b.cols.size();
    std::vector<Vector> v(q, Vector(q, 0.0));
    for (std::size_t i = 0; i < q; ++i) v[i][i] = 1.0;

    const std::size_t budget = 30 * std::max<std::size_t>(q, 1);
    for (std::size_t sweep = 0; sweep < budget; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < q; ++p) {
            for (std::size_t r = p + 1; r < q; ++r) {
                Vector& bp = b.cols[p];
                Vector& br = b.cols[r];
                const double alpha = dot(bp, bp);
                const double beta = dot(br, br);
                const double gamma = dot(bp, br);
                if (gamma == 0.0 || alpha == 0.0 || beta == 0.0) continue;
                if (std::abs(gamma) <= kJacobiTolerance * std::sqrt(alpha) * std::sqrt(beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < b.length; ++i) {
                    const double x = bp[i];
                    const double y = br[i];
                    bp[i] = c * x - s * y;
                    br[i] = s * x + c * y;
                }
                for (std::size_t i = 0; i < q; ++i) {
                    const double x = v[p][i];
                    const double y = v[r][i];
                    v[p][i] = c * x - s * y;
                    v[r][i] = s * x + c * y;
                }
            }
        }
        if (!rotated) return v;
    }
    throw NoConvergence("Jacobi SVD did not converge within " + std::to_string(budget) + " sweeps");
}

struct TallSvd {
    std::vector<Vector> left;   // p vectors of length p
    Vector sigma;               // q values, nonincreasing
    std::vector<Vector> right;  // q vectors of length q
};

// SVD of a p x q matrix with p >= q given by its columns.
TallSvd tallSvd(Columns b) {
    const std::size_t p = b.length;
    const std::size_t q = b.cols.size();
    std::vector<Vector> v = jacobiSweeps(b);

    Vector sigma(q);
    for (std::size_t j = 0; j < q; ++j) sigma[j] = norm2(b.cols[j]);
    std::vector<std::size_t> order(q);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    TallSvd out;
    out.sigma.reserve(q);
    out.right.reserve(q);
    const double sigmaMax = q > 0 ? sigma[order[0]] : 0.0;
    const double cut = rankTolerance(p, q, sigmaMax);
    for (std::size_t j : order) {
        out.sigma.push_back(sigma[j]);
        out.right.push_back(v[j]);
        if (sigma[j] > cut && sigma[j] > 0.0) {
            Vector u = b.cols[j];
            for (auto& x : u) x /= sigma[j];
            out.left.push_back(std::move(u));
        }
    }
    // Left vectors for negligible singular values are re-derived so that
    // U stays orthogonal; their contribution to A is below the rank cut.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < out.left.size(); ++i) {
            for (std::size_t k = 0; k < i; ++k) {
                const double c = dot(out.left[i], out.left[k]);
                for (std::size_t r = 0; r < p; ++r) out.left[i][r] -= c * out.left[k][r];
            }
            const double nl = norm2(out.left[i]);
            for (auto& x : out.left[i]) x /= nl;
        }
    }
    completeBasis(out.left, p);
    if (out.left.size() != p) throw NoConvergence("could not complete orthonormal left basis");
    return out;
}

double orthogonalityDefect(const std::vector<Vector>& basis) {
    double worst = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(dot(basis[i], basis[j]) - target));
        }
    }
    return worst;
}

}  // namespace

// ---------------------------------------------------------------------------
// DenseMatrix

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, Vector data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows_ == 0 || cols_ == 0) throw DimensionMismatch("matrix dimensions must be positive");
    if (data_.size() != rows_ * cols_) {
        throw DimensionMismatch("expected " + std::to_string(rows_ * cols_) + " entries, got " +
                                std::to_string(data_.size()));
    }
    for (double x : data_) {
        if (!std::isfinite(x)) throw Error("matrix entries must be finite");
    }
}

DenseMatrix DenseMatrix::fromRows(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<Vector> r;
    for (const auto& row : rows) r.emplace_back(row);
    return fromRows(r);
}

DenseMatrix DenseMatrix::fromRows(const std::vector<Vector>& rows) {
    if (rows.empty()) throw DimensionMismatch("matrix needs at least one row");
    const std::size_t cols = rows.front().size();
    Vector data;
    data.reserve(rows.size() * cols);
    for (const auto& row : rows) {
        if (row.size() != cols) throw DimensionMismatch("ragged rows");
        data.insert(data.end(), row.begin(), row.end());
    }
    return DenseMatrix(rows.size(), cols, std::move(data));
}

DenseMatrix DenseMatrix::fromColumns(const std::vector<Vector>& columns) {
    if (columns.empty()) throw DimensionMismatch("matrix needs at least one column");
    const std::size_t rows = columns.front().size();
    Vector data(rows * columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) throw DimensionMismatch("columns of different length");
        for (std::size_t i = 0; i < rows; ++i) data[i * columns.size() + j] = columns[j][i];
    }
    return DenseMatrix(rows, columns.size(), std::move(data));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    Vector data(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1.0;
    return DenseMatrix(n, n, std::move(data));
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
    const std::size_t n = d.size();
    Vector data(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) data[i * n + i] = d[i];
    return DenseMatrix(n, n, std::move(data));
}

Vector DenseMatrix::column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

DenseMatrix DenseMatrix::transpose() const {
    Vector t(data_.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = (*this)(i, j);
    return DenseMatrix(cols_, rows_, std::move(t));
}

DenseMatrix DenseMatrix::selectColumns(std::span<const std::size_t> indices) const {
    Vector out(rows_ * indices.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < indices.size(); ++k) out[i * indices.size() + k] = (*this)(i, indices[k]);
    return DenseMatrix(rows_, indices.size(), std::move(out));
}

DenseMatrix DenseMatrix::withoutColumn(std::size_t j) const {
    IndexSet keep;
    for (std::size_t k = 0; k < cols_; ++k)
        if (k != j) keep.push_back(k);
    return selectColumns(keep);
}

DenseMatrix DenseMatrix::appendColumn(std::span<const double> c) const {
    if (c.size() != rows_) throw DimensionMismatch("appended column has wrong length");
    Vector out;
    out.reserve(rows_ * (cols_ + 1));
    for (std::size_t i = 0; i < rows_; ++i) {
        auto r = row(i);
        out.insert(out.end(), r.begin(), r.end());
        out.push_back(c[i]);
    }
    return DenseMatrix(rows_, cols_ + 1, std::move(out));
}

double DenseMatrix::maxAbs() const noexcept { return normInf(data_); }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("inner dimensions differ in matrix product");
    Vector out(a.rows() * b.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) out[i * b.cols() + j] += aik * b(k, j);
        }
    return DenseMatrix(a.rows(), b.cols(), std::move(out));
}

Vector operator*(const DenseMatrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw DimensionMismatch("vector length differs from column count");
    Vector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), x);
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double normInf(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// ---------------------------------------------------------------------------
// Normalization and Gram

NormalizedColumns normalizeColumns(const DenseMatrix& a) {
    Vector factors(a.cols());
    Vector data(a.data().begin(), a.data().end());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        const double nj = norm2(a.column(j));
        if (nj == 0.0) throw ZeroColumn(j);
        factors[j] = 1.0 / nj;
        for (std::size_t i = 0; i < a.rows(); ++i) data[i * a.cols() + j] /= nj;
    }
    return {DenseMatrix(a.rows(), a.cols(), std::move(data)), std::move(factors)};
}

namespace {
Vector upperGram(const DenseMatrix& a) {
    const std::size_t n = a.cols();
    std::vector<Vector> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = a.column(j);
    Vector g(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = dot(cols[i], cols[j]);
            g[i * n + j] = v;
            g[j * n + i] = v;
        }
    return g;
}
}  // namespace

GramMatrix gram(const DenseMatrix& a) { return GramMatrix(a.cols(), upperGram(a), false); }

GramMatrix gram(const NormalizedColumns& a) {
    Vector g = upperGram(a.matrix);
    const std::size_t n = a.matrix.cols();
    for (std::size_t i = 0; i < n; ++i) g[i * n + i] = 1.0;
    return GramMatrix(n, std::move(g), true);
}

GramMatrix normalizedGram(const DenseMatrix& a) { return gram(normalizeColumns(a)); }

GramMatrix GramMatrix::restrict(std::span<const std::size_t> indices) const {
    const std::size_t k = indices.size();
    Vector e(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) e[i * k + j] = (*this)(indices[i], indices[j]);
    return GramMatrix(k, std::move(e), sourceNormalized_);
}

// ---------------------------------------------------------------------------
// SVD and friends

SvdFactors svd(const DenseMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const bool tall = m >= n;
    // Work on whichever orientation has at least as many rows as columns.
    const DenseMatrix& src = a;
    Columns b;
    if (tall) {
        b.length = m;
        for (std::size_t j = 0; j < n; ++j) b.cols.push_back(src.column(j));
    } else {
        b.length = n;
        for (std::size_t i = 0; i < m; ++i) b.cols.emplace_back(src.row(i).begin(), src.row(i).end());
    }
    TallSvd t = tallSvd(std::move(b));

    // tall:  A   = L S R^T  -> U = L (m x m), V = R (n x n)
    // wide:  A^T = L S R^T  -> U = R (m x m), V = L (n x n)
    const std::vector<Vector>& uCols = tall ? t.left : t.right;
    const std::vector<Vector>& vCols = tall ? t.right : t.left;

    if (orthogonalityDefect(uCols) > kOrthTolerance || orthogonalityDefect(vCols) > kOrthTolerance)
        throw NoConvergence("SVD factors failed the orthogonality check");

    return {DenseMatrix::fromColumns(uCols), std::move(t.sigma), DenseMatrix::fromRows(vCols)};
}

Vector singularValues(const DenseMatrix& a) {
    Columns b;
    if (a.rows() >= a.cols()) {
        b.length = a.rows();
        for (std::size_t j = 0; j < a.cols(); ++j) b.cols.push_back(a.column(j));
    } else {
        b.length = a.cols();
        for (std::size_t i = 0; i < a.rows(); ++i) b.cols.emplace_back(a.row(i).begin(), a.row(i).end());
    }
    jacobiSweeps(b);
    Vector sigma;
    sigma.reserve(b.cols.size());
    for (const auto& c : b.cols) sigma.push_back(norm2(c));
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    return sigma;
}

std::size_t numericalRank(const DenseMatrix& a) {
    const Vector sigma = singularValues(a);
    if (sigma.empty() || sigma.front() == 0.0) return 0;
    const double cut = rankTolerance(a.rows(), a.cols(), sigma.front());
    return static_cast<std::size_t>(std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s > cut; }));
}

double conditionNumber(const DenseMatrix& a) {
    const Vector sigma = singularValues(a);
    if (sigma.back() == 0.0) return std::numeric_limits<double>::infinity();
    return sigma.front() / sigma.back();
}

Vector leastSquares(const DenseMatrix& a, std::span<const double> b) {
    if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length differs from row count");
    const SvdFactors f = svd(a);
    const double cut = f.singularValues.empty() ? 0.0 : rankTolerance(a.rows(), a.cols(), f.singularValues.front());
    Vector x(a.cols(), 0.0);
    for (std::size_t k = 0; k < f.singularValues.size(); ++k) {
        const double s = f.singularValues[k];
        if (s <= cut || s == 0.0) continue;
        double coeff = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) coeff += f.u(i, k) * b[i];
        coeff /= s;
        for (std::size_t j = 0; j < a.cols(); ++j) x[j] += coeff * f.vt(k, j);
    }
    return x;
}

std::vector<Vector> nullSpaceBasis(const DenseMatrix& a) {
    const SvdFactors f = svd(a);
    const std::size_t r = numericalRank(a);
    std::vector<Vector> basis;
    for (std::size_t k = r; k < a.cols(); ++k) {
        auto row = f.vt.row(k);
        basis.emplace_back(row.begin(), row.end());
    }
    return basis;
}

Vector solveSquare(const DenseMatrix& a, std::span<const double> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw DimensionMismatch("solveSquare needs a square system");
    Vector m(a.data().begin(), a.data().end());
    Vector x(b.begin(), b.end());
    const double scale = std::max(a.maxAbs(), 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i * n + k]) > std::abs(m[piv * n + k])) piv = i;
        if (std::abs(m[piv * n + k]) <= 1e-14 * scale) throw RankDeficient("singular system in solveSquare");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
            std::swap(x[k], x[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = m[i * n + k] / m[k * n + k];
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
            x[i] -= f * x[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = x[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= m[k * n + j] * x[j];
        x[k] = s / m[k * n + k];
    }
    return x;
}

}  // namespace sparsecert
