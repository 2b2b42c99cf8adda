#pragma once

#include "sparsecert/linalg.hpp"
#include "sparsecert/spark.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sparsecert {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct VariableBounds {
    double lower = 0.0;
    double upper = kInf;
};

/// minimize c^T x  s.t.  Aeq x = beq,  Aub x <= bub,  lower <= x <= upper.
/// Constraint rows may be empty; bounds may be infinite, everything else
/// must be finite.
struct LpProblem {
    Vector objective;
    std::vector<Vector> equalityRows;
    Vector equalityRhs;
    std::vector<Vector> inequalityRows;
    Vector inequalityRhs;
    std::vector<VariableBounds> bounds;  // one per variable
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* toString(LpStatus s);

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::optional<Vector> solution;
    std::optional<double> value;
    // |primal - dual objective| plus any dual infeasibility of the final
    // basis; only meaningful when status is Optimal.
    double dualityGap = 0.0;
};

/// Dense two-phase simplex with Bland's rule. Throws DimensionMismatch on
/// inconsistent sizes, NumericalBreakdown on a pivot below 1e-12 and
/// CycleDetected if the iteration cap is hit.
LpResult solveLp(const LpProblem& p);

inline constexpr double kRangeStrictMargin = 1e-7;
inline constexpr std::uint64_t kRangePairBudget = 200'000;

struct SignPattern {
    IndexSet plus;   // eta_i = +1
    IndexSet minus;  // eta_i = -1, at most one index
};

struct PatternMargin {
    SignPattern pattern;
    LpStatus status = LpStatus::Infeasible;
    // Optimal max |eta_j| off the pattern; absent unless status is Optimal.
    std::optional<double> margin;
    double dualityGap = 0.0;
    bool passed = false;
    std::string diagnostic;
};

struct RangePropertyCertificate {
    std::size_t order = 0;
    bool holds = true;
    std::optional<SignPattern> failingPair;  // first failing pattern
    std::vector<PatternMargin> margins;
};

/// Range property (II) of order k: for every pattern with |plus| + |minus|
/// = k and |minus| <= 1, some eta in range(A^T) equals the pattern on its
/// indices and has |eta_j| < 1 elsewhere. Each pattern is an LP minimizing
/// the off-pattern magnitude t; it passes when t < 1 - kRangeStrictMargin.
/// Throws BudgetExhausted if C(n,k)(k+1) exceeds `pairBudget`.
RangePropertyCertificate rangePropertyII(const DenseMatrix& a, std::size_t k,
                                         std::uint64_t pairBudget = kRangePairBudget);

/// Existence-level null space test: every k columns are linearly
/// independent, i.e. spark(A) > k. Requires k <= min(m, n).
bool kColumnIndependence(const DenseMatrix& a, std::size_t k, std::uint64_t budget = kDefaultSparkBudget);

}  // namespace sparsecert
