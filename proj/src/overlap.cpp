#include "sparsecert/overlap.hpp"

#include "sparsecert/errors.hpp"

namespace sparsecert {

SupportOverlap supportOverlap(const DenseMatrix& a, std::span<const double> b) {
    if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length differs from row count");
    if (numericalRank(a.appendColumn(b)) > numericalRank(a))
        throw Infeasible("A x = b has no solution; support overlap undefined");

    SupportOverlap s;
    s.feasible = true;
    if (a.cols() == 1) {
        // Removing the only column leaves nothing to represent b with.
        if (normInf(b) > 0.0) s.indices.push_back(0);
        return s;
    }
    for (std::size_t i = 0; i < a.cols(); ++i) {
        const DenseMatrix rest = a.withoutColumn(i);
        if (numericalRank(rest.appendColumn(b)) == numericalRank(rest) + 1) s.indices.push_back(i);
    }
    return s;
}

bool overlapVerdict(std::size_t sparsity, double sparkValue, std::size_t overlapSize) {
    return static_cast<double>(sparsity) < (static_cast<double>(overlapSize) + sparkValue) / 2.0;
}

}  // namespace sparsecert
