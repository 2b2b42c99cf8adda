#pragma once

#include "sparsecert/linalg.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace sparsecert {

/// Babel and sub-Babel profiles of a normalized Gram matrix.
///
/// Index q-1 of `babel` holds mu1(q): the largest, over rows k, sum of the q
/// biggest off-diagonal |G_kj|. `subBabel` holds the same maximum taken over
/// every row except the maximizing one (smallest index on ties), recomputed
/// for each q. mu1(0) is taken as 0.
struct BabelProfile {
    std::size_t n = 0;
    std::vector<double> babel;              // q = 1..n-1
    std::vector<double> subBabel;           // q = 1..n-1
    std::vector<std::size_t> maximizingRow; // q = 1..n-1
    std::optional<std::size_t> qHat;        // min q with mu1(q-1) >= 1
    std::optional<std::size_t> qStar;       // min q with mu1(q-1) * mu1_2(q-1) >= 1

    double babelAt(std::size_t q) const { return q == 0 ? 0.0 : babel.at(q - 1); }
    double subBabelAt(std::size_t q) const { return q == 0 ? 0.0 : subBabel.at(q - 1); }
};

/// Slack used in the ">= 1" threshold tests. A profile value that rounds to
/// just under 1 would otherwise push the threshold one step too high and
/// make the spark bound unsound; accepting values within the slack only
/// lowers the threshold.
inline constexpr double kBabelThresholdSlack = 1e-10;

BabelProfile babelProfile(const GramMatrix& g);

/// Whether mu1_2(qHat-1) * mu1(qHat-1) < 1, the condition under which the
/// sub-Babel threshold strictly exceeds qHat. Throws MissingThreshold if
/// qHat is absent.
bool subBabelStrictGainHolds(const BabelProfile& p);

}  // namespace sparsecert
