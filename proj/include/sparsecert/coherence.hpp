#pragma once

#include "sparsecert/linalg.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace sparsecert {

inline constexpr double kDefaultTieTolerance = 1e-9;

/// Coherence-family statistics read off a normalized Gram matrix.
///
/// An off-diagonal value counts as "equal to mu" when |G_ij| >= mu - tol.
/// rowTieCounts[i] is the number of such entries in row i; alpha is the
/// largest count and beta the second largest counted with multiplicity, so
/// two rows that both reach alpha give beta == alpha.
struct CoherenceSummary {
    double mu = 0.0;
    std::optional<double> mu2;
    std::size_t alpha = 0;
    std::size_t beta = 0;
    std::vector<std::size_t> rowTieCounts;
    double tieTolerance = kDefaultTieTolerance;
    // mu == 0: 1/mu is +inf and no coherence bound is reported.
    bool unbounded = false;

    double muTilde() const { return mu - mu2.value_or(mu); }
};

/// Never throws on degenerate input: mu2 is left empty when every
/// off-diagonal entry ties with mu. Requires a normalized Gram with n >= 2.
CoherenceSummary coherenceStatistics(const GramMatrix& g, double tieTolerance = kDefaultTieTolerance);

/// Same as coherenceStatistics but throws DegenerateCoherence when mu > 0 and
/// mu2 does not exist. An all-orthogonal Gram (mu == 0) is reported with
/// `unbounded` set rather than as an error.
CoherenceSummary coherenceSummary(const GramMatrix& g, double tieTolerance = kDefaultTieTolerance);

enum class Membership { M1, M2, NotInM };

struct ClassMembership {
    Membership membership = Membership::NotInM;
    bool inM1 = false;  // alpha < 1/mu
    bool inM2 = false;  // alpha <= 1/mu and beta < alpha
};

/// Requires mu > 0. M1 wins when both conditions hold.
ClassMembership classMembership(const CoherenceSummary& s);

const char* toString(Membership m);

}  // namespace sparsecert
