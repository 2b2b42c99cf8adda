#pragma once

#include "sparsecert/linalg.hpp"

#include <cstddef>
#include <optional>

namespace sparsecert {

/// Intersection of the supports of every solution of A x = b.
///
/// Column i belongs to it exactly when b is outside the span of the other
/// columns, i.e. no solution with x_i = 0 exists.
struct SupportOverlap {
    IndexSet indices;
    bool feasible = false;

    std::size_t cardinality() const { return indices.size(); }
};

/// Throws Infeasible when rank([A | b]) > rank(A).
SupportOverlap supportOverlap(const DenseMatrix& a, std::span<const double> b);

/// Strengthened spark criterion: ||x||_0 < (|S*| + spark) / 2. `sparkValue`
/// may be the exact spark or any certified lower bound of it.
bool overlapVerdict(std::size_t sparsity, double sparkValue, std::size_t overlapSize);

}  // namespace sparsecert
