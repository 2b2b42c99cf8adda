#include "sparsecert/babel.hpp"

#include "sparsecert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace sparsecert {

BabelProfile babelProfile(const GramMatrix& g) {
    if (!g.sourceNormalized()) throw std::invalid_argument("Babel profile needs a normalized Gram matrix");
    const std::size_t n = g.dim();
    if (n < 2) throw DimensionMismatch("Babel profile needs at least two columns");

    // prefix[k][q] = sum of the q largest off-diagonal |G_kj| in row k.
    std::vector<std::vector<double>> prefix(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> row;
        row.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) row.push_back(std::abs(g(k, j)));
        std::sort(row.begin(), row.end(), std::greater<>());
        prefix[k].assign(n, 0.0);
        for (std::size_t q = 1; q < n; ++q) prefix[k][q] = prefix[k][q - 1] + row[q - 1];
    }

    BabelProfile p;
    p.n = n;
    for (std::size_t q = 1; q < n; ++q) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < n; ++k)
            if (prefix[k][q] > prefix[best][q]) best = k;
        double second = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            if (k != best) second = std::max(second, prefix[k][q]);
        p.babel.push_back(prefix[best][q]);
        p.subBabel.push_back(second);
        p.maximizingRow.push_back(best);
    }

    const double one = 1.0 - kBabelThresholdSlack;
    for (std::size_t q = 1; q <= n; ++q) {
        const double b = p.babelAt(q - 1);
        if (!p.qHat && b >= one) p.qHat = q;
        if (!p.qStar && b * p.subBabelAt(q - 1) >= one) p.qStar = q;
    }
    return p;
}

bool subBabelStrictGainHolds(const BabelProfile& p) {
    if (!p.qHat) throw MissingThreshold("Babel threshold qHat does not exist for this matrix");
    const std::size_t q = *p.qHat - 1;
    // Same slack as the threshold scan, so a true result always means qStar > qHat.
    return p.subBabelAt(q) * p.babelAt(q) < 1.0 - kBabelThresholdSlack;
}

}  // namespace sparsecert
