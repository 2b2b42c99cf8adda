#pragma once

#include "sparsecert/linalg.hpp"
#include "sparsecert/overlap.hpp"
#include "sparsecert/rangeprop.hpp"
#include "sparsecert/scaling.hpp"
#include "sparsecert/spark.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sparsecert {

/// Number of |x_i| > zeroTol. The default tolerance is 1e-10 * max|x_i|.
std::size_t countSparsity(std::span<const double> x, std::optional<double> zeroTol = std::nullopt);

struct SystemInstance {
    DenseMatrix a;
    std::optional<Vector> b;
    std::optional<Vector> candidate;
    // Known lower bound on the support overlap size, used when the overlap
    // itself is not computed.
    std::optional<std::size_t> gammaStar;
    std::vector<ScalingSpec> scalings;
};

/// Throws DimensionMismatch on inconsistent sizes, and Error when the
/// candidate misses A x = b by more than 1e-9 * max(1, ||b||_2) or is
/// given without b.
void validate(const SystemInstance& instance);

struct AnalysisOptions {
    double tieTolerance = kDefaultTieTolerance;
    bool exactSpark = true;
    std::uint64_t budget = kDefaultSparkBudget;
    bool coherenceFamily = true;  // classic, psi, closed forms, rank-one
    bool babelFamily = true;
    bool overlap = true;
    std::optional<std::size_t> rangePropertyOrder;
};

/// Verdicts compare ||x||_0 < threshold - kComparisonMargin so that a
/// threshold computed a hair above an integer cannot admit that integer.
inline constexpr double kComparisonMargin = 1e-9;

enum class Comparison { Strict, NonStrict };

struct Criterion {
    std::string name;
    bool applicable = false;
    std::optional<double> threshold;  // half the spark lower bound in use
    bool passed = false;              // implies applicable
    std::string provenance;
    Comparison comparison = Comparison::Strict;
    // Search-found scalings only: the comparison with <= in place of <.
    // Informational; `passed` never depends on it.
    std::optional<bool> passedNonStrict;
    std::string note;
};

enum class Conclusion { UniqueSparsest, Inconclusive };

const char* toString(Conclusion c);
const char* toString(Comparison c);

struct UniquenessVerdict {
    std::optional<Vector> candidate;
    std::optional<std::size_t> sparsity;
    std::vector<Criterion> criteria;
    Conclusion conclusion = Conclusion::Inconclusive;

    // Artifacts the criteria were read from.
    SparkReport spark;
    std::vector<ScaledCertificates> scaled;
    std::optional<SupportOverlap> overlap;
    std::optional<RangePropertyCertificate> rangeProperty;
    std::vector<std::string> diagnostics;

    const Criterion* find(std::string_view name) const;
};

/// Runs every enabled criterion. Module failures make the affected
/// criteria inapplicable and add a diagnostic; only an invalid instance
/// throws.
UniquenessVerdict evaluate(const SystemInstance& instance, const AnalysisOptions& options = {});

struct RecoverableLevel {
    double level = 0.0;
    std::string criterion;
};

/// Largest applicable threshold; the first criterion wins ties. Throws
/// NoApplicableCriterion when nothing applies.
RecoverableLevel bestRecoverableSparsity(const SystemInstance& instance, const AnalysisOptions& options = {});
RecoverableLevel bestRecoverableSparsity(const UniquenessVerdict& verdict);

}  // namespace sparsecert
