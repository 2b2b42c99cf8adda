#pragma once

#include "sparsecert/coherence.hpp"
#include "sparsecert/linalg.hpp"
#include "sparsecert/spark.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sparsecert {

enum class ScalingKind { Explicit, DiagonalFromB, SvdVt, SearchHeuristic };

const char* toString(ScalingKind k);

/// A nonsingular m x m left scaling W together with where it came from.
struct ScalingSpec {
    ScalingKind kind = ScalingKind::Explicit;
    DenseMatrix w = DenseMatrix::identity(1);
    double conditionNumber = 1.0;
    std::optional<Vector> b;  // set for DiagonalFromB
    std::string label;        // free-form name used in reports
    // SearchHeuristic only: the best mu_W found. It is an upper bound on
    // the optimal scaled coherence, never the optimum itself.
    std::optional<double> bestFoundMu;
};

/// Wraps an explicit W. Throws SingularScaling if W is not square or has
/// numerical rank below its size.
ScalingSpec explicitScaling(DenseMatrix w, std::string label = "explicit");

/// W * A. The caller renormalizes columns before any Gram analysis. A
/// DiagonalFromB scaling divides row i by b_i instead of multiplying by the
/// stored reciprocal, so that it maps b to |sign(b)| exactly.
DenseMatrix applyScaling(const DenseMatrix& a, const ScalingSpec& spec);
Vector applyScaling(const ScalingSpec& spec, std::span<const double> v);

/// diag(phi(b)) with phi(t) = 1/t for t != 0 and 1 otherwise, so that
/// diag(phi(b)) b = |sign(b)|.
ScalingSpec phiDiagonalFromB(std::span<const double> b);

/// W = Sigma^{-1} U^T from A = U Sigma V^T (first m singular triplets), so
/// that W A equals the leading m rows of V^T. Throws RankDeficient when
/// rank(A) < m.
ScalingSpec svdScaling(const DenseMatrix& a);

/// Heuristic search for a W with small mu(W A): the identity, `trials`
/// random Gaussian matrices with condition number <= 1e3, then coordinate
/// descent from the best random candidate. Deterministic for a given seed.
/// Never returns a W worse than the identity.
ScalingSpec searchScaling(const DenseMatrix& a, std::size_t trials, std::uint64_t seed);

/// Mutual coherence of the column-normalized W A.
double scaledMu(const DenseMatrix& a, const DenseMatrix& w);

struct BoundDelta {
    std::string bound;
    std::optional<double> unscaled;
    std::optional<double> scaled;
};

struct ScaledCertificates {
    ScalingSpec spec;
    std::optional<CoherenceSummary> summary;  // of W A
    SparkReport report;                       // of W A
    std::vector<BoundDelta> comparison;
};

/// Full certificate set for W A, with per-bound comparison against the
/// unscaled report when one is supplied.
ScaledCertificates scaledCertificates(const DenseMatrix& a, const ScalingSpec& spec,
                                      double tieTolerance = kDefaultTieTolerance, bool wantExact = false,
                                      std::uint64_t budget = kDefaultSparkBudget,
                                      const SparkReport* unscaled = nullptr);

struct MatrixFormSystem {
    DenseMatrix a;  // (m q) x N, column i = vec(A_i)
    Vector b;       // vec(B)
};

/// Turns sum_i x_i A_i = B into vector form. vec stacks the columns of the
/// transposed operator, i.e. it reads each A_i row by row. Throws
/// DimensionMismatch if the operators and B do not share a shape.
MatrixFormSystem matrixFormIngest(const std::vector<DenseMatrix>& operators, const DenseMatrix& rhs);

/// Coherence of the operator family through trace inner products
/// tr(A_i^T A_j) / (||A_i||_F ||A_j||_F).
double operatorCoherence(const std::vector<DenseMatrix>& operators);

}  // namespace sparsecert
