#include "sparsecert/coherence.hpp"

#include "sparsecert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparsecert {

CoherenceSummary coherenceStatistics(const GramMatrix& g, double tieTolerance) {
    if (!g.sourceNormalized()) throw std::invalid_argument("coherence statistics need a normalized Gram matrix");
    if (tieTolerance < 0.0) throw std::invalid_argument("tie tolerance must be nonnegative");
    const std::size_t n = g.dim();
    if (n < 2) throw DimensionMismatch("coherence statistics need at least two columns");

    CoherenceSummary s;
    s.tieTolerance = tieTolerance;

    // Parallel unit columns give |G_ij| within a few ulps of 1 on either side;
    // snap those to exactly 1.
    auto absEntry = [&](std::size_t i, std::size_t j) {
        const double v = std::abs(g(i, j));
        return v > 1.0 - 1e-14 ? 1.0 : v;
    };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s.mu = std::max(s.mu, absEntry(i, j));

    const double tieFloor = s.mu - tieTolerance;
    s.rowTieCounts.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double v = absEntry(i, j);
            if (v >= tieFloor) {
                ++s.rowTieCounts[i];
            } else if (!s.mu2 || v > *s.mu2) {
                s.mu2 = v;
            }
        }
    }

    std::vector<std::size_t> sorted = s.rowTieCounts;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    s.alpha = sorted[0];
    s.beta = sorted[1];
    s.unbounded = (s.mu == 0.0);
    return s;
}

CoherenceSummary coherenceSummary(const GramMatrix& g, double tieTolerance) {
    CoherenceSummary s = coherenceStatistics(g, tieTolerance);
    if (!s.mu2 && !s.unbounded)
        throw DegenerateCoherence("every off-diagonal Gram entry ties with mu; sub-mutual coherence undefined");
    return s;
}

ClassMembership classMembership(const CoherenceSummary& s) {
    if (!(s.mu > 0.0)) throw std::invalid_argument("class membership requires mu > 0");
    const double a = static_cast<double>(s.alpha);
    const double inv = 1.0 / s.mu;
    ClassMembership c;
    c.inM1 = a < inv;
    c.inM2 = a <= inv && s.beta < s.alpha;
    if (c.inM1)
        c.membership = Membership::M1;
    else if (c.inM2)
        c.membership = Membership::M2;
    return c;
}

const char* toString(Membership m) {
    switch (m) {
        case Membership::M1: return "M1";
        case Membership::M2: return "M2";
        case Membership::NotInM: return "NotInM";
    }
    return "?";
}

}  // namespace sparsecert
