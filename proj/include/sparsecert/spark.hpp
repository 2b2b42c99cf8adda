#pragma once

#include "sparsecert/babel.hpp"
#include "sparsecert/coherence.hpp"
#include "sparsecert/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sparsecert {

inline constexpr std::uint64_t kDefaultSparkBudget = 2'000'000;

struct ExactSpark {
    // Empty when no subset of columns is dependent (full column rank, n <= m).
    std::optional<std::size_t> spark;
    IndexSet witness;
    std::uint64_t rankTests = 0;

    bool infinite() const { return !spark.has_value(); }
};

/// Smallest number of linearly dependent columns, by enumerating subsets in
/// increasing size and lexicographic order within a size. The first
/// dependent subset found is returned as the witness.
///
/// Throws BudgetExhausted once `budget` rank tests have been spent; its
/// sizeReached() is the largest size whose subsets were all independent.
ExactSpark exactSpark(const DenseMatrix& a, std::uint64_t budget = kDefaultSparkBudget);

/// Whether every k-column subset has full rank k (equivalently spark > k).
/// Shares the rank-test budget semantics of exactSpark.
bool allSubsetsIndependent(const DenseMatrix& a, std::size_t k, std::uint64_t budget = kDefaultSparkBudget);

/// Coherence-rank lower bound on the spark
///   1 + 2(1 - a b t^2) / (mu2 [ t(a+b) + sqrt((t(a-b))^2 + 4) ]),  t = mu - mu2.
/// Throws NotApplicable unless the summary is in M1 or M2 with mu2 > 0,
/// DegenerateCoherence if mu2 is missing.
double psiBound(const CoherenceSummary& s);

struct PsiEstimates {
    std::optional<double> case1;  // alpha < 1/mu
    std::optional<double> case2;  // alpha <= 1/mu and beta < alpha
};

/// Closed-form lower estimates of psiBound. Throws NotApplicable when
/// neither case's precondition holds.
PsiEstimates psiClosedFormEstimates(const CoherenceSummary& s);

/// Bound for coherence-rank-one matrices (mu < 1, alpha == 1); it is the
/// first closed-form estimate with alpha = 1. Throws NotApplicable otherwise.
double rankOneBound(const CoherenceSummary& s);

/// 1 + 1/mu. Throws NotApplicable when mu == 0.
double classicBound(const CoherenceSummary& s);

enum class ExactStatus { Computed, Skipped, BudgetExhausted };

struct SparkReport {
    std::optional<std::size_t> exact;
    bool exactInfinite = false;
    ExactStatus exactStatus = ExactStatus::Skipped;
    // Set when the budget ran out: spark > partialSizeReached is certified.
    std::optional<std::size_t> partialSizeReached;
    IndexSet witness;

    std::optional<double> classicBound;
    std::optional<double> psiBound;
    std::optional<double> psiCase1;
    std::optional<double> psiCase2;
    std::optional<double> rankOneBound;
    std::optional<std::size_t> babelBound;     // qHat
    std::optional<std::size_t> subBabelBound;  // qStar

    /// Largest certified lower bound, counting the exact spark (or the
    /// partial enumeration bound) when available. +inf for full column rank.
    double bestCertified = 0.0;

    std::optional<CoherenceSummary> summary;
    std::optional<ClassMembership> membership;
    std::optional<BabelProfile> profile;
    std::vector<std::string> diagnostics;
};

/// Every applicable spark bound for A. Sub-operation failures show up as
/// absent fields plus a diagnostic line, never as an exception; only m < 2
/// or n < 2 is rejected up front.
SparkReport sparkReport(const DenseMatrix& a, double tieTolerance = kDefaultTieTolerance, bool wantExact = true,
                        std::uint64_t budget = kDefaultSparkBudget);

/// Checks that lambda = 0 lies in a Cassini oval of the Gram submatrix on
/// `subset`: some i != j with |G_ii| |G_jj| <= Delta_i Delta_j, where Delta is
/// the off-diagonal absolute row sum. Meaningful only for dependent subsets.
bool brauerInclusionCheck(const GramMatrix& g, std::span<const std::size_t> subset);

const char* toString(ExactStatus s);

}  // namespace sparsecert
