#pragma once

#include "sparsecert/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using sparsecert::DenseMatrix;
using sparsecert::Vector;

// Matrices entered at four-decimal precision, so reference values carry
// about 5e-4 of rounding.

inline DenseMatrix rank2() {
    return DenseMatrix::fromRows({{-0.9802, 0.1, 0.3521, 0.9239, 0.9239, 0.7405},
                                  {-1.8282, 0, 1.0365, 0.3827, -0.3827, -1.6821},
                                  {0.3269, 0, 1.3563, 0, 0, -0.2949}});
}

inline DenseMatrix rank2Scaling() {
    return DenseMatrix::fromRows(
        {{-0.9415, -0.5320, -0.4838}, {-0.1623, 1.6821, -0.7120}, {-0.1461, -0.8757, -1.1742}});
}

inline DenseMatrix rank1() {
    return DenseMatrix::fromRows({{0.0010, -0.7998, -0.6002, 0.0717},
                                  {0.8001, -0.3558, 0.4798, -0.1913},
                                  {0.5999, 0.4801, -0.6398, -0.6412}});
}

inline DenseMatrix skewed() {
    return DenseMatrix::fromRows({{0.0010, -0.7998, -0.6002, 1.4290},
                                  {0.8001, -0.3558, 0.4798, 1.2393},
                                  {0.5999, 0.4801, -0.6398, -0.6849}});
}

inline DenseMatrix skewedScaling() {
    return DenseMatrix::fromRows(
        {{-0.2078, 0.9393, 0.1905}, {-0.9381, 0.5715, 0.3268}, {0.6702, 0.2228, 0.7662}});
}

inline DenseMatrix integer() {
    return DenseMatrix::fromRows({{1, -3, -6, 4, -3}, {2, 3, -2, -2, 3}, {3, -2, 1, 0, 4}});
}

inline Vector integerRhs() { return {3.6159, -3.5189, 2.6954}; }

inline DenseMatrix overlap() {
    return DenseMatrix::fromRows({{-1, 0, -4, 2, 4}, {0, -1, -1, 1, 2}, {0, 0, -1, 0, 0}});
}

inline Vector overlapSolution() { return {0, 0, 0.5, 0, 0}; }

// A x* for the solution above.
inline Vector overlapRhs() { return {-2, -0.5, -0.5}; }

inline std::string dir() { return FIXTURE_DIR; }

}  // namespace fixtures

namespace randomized {

using sparsecert::DenseMatrix;
using sparsecert::Vector;

inline DenseMatrix gaussian(std::size_t m, std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector d(m * n);
    for (auto& x : d) x = g(rng);
    return DenseMatrix(m, n, std::move(d));
}

inline Vector gaussianVector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(n);
    for (auto& x : v) x = g(rng);
    return v;
}

// Gaussian m x n matrix where, depending on `variant`, one column repeats
// (spark 2) or equals the sum of two others (spark <= 3).
inline DenseMatrix withPlantedDependency(std::size_t m, std::size_t n, int variant, std::mt19937_64& rng) {
    DenseMatrix a = gaussian(m, n, rng);
    if (variant == 0) return a;
    Vector d(a.data().begin(), a.data().end());
    for (std::size_t i = 0; i < m; ++i) {
        if (variant == 1) d[i * n + n - 1] = d[i * n];
        else d[i * n + n - 1] = d[i * n] + d[i * n + 1];
    }
    return DenseMatrix(m, n, std::move(d));
}

// Square matrix with condition number at most `maxCond`.
inline DenseMatrix wellConditioned(std::size_t m, std::mt19937_64& rng, double maxCond = 100.0) {
    while (true) {
        DenseMatrix w = gaussian(m, m, rng);
        if (sparsecert::conditionNumber(w) <= maxCond) return w;
    }
}

}  // namespace randomized

// Absolute-tolerance comparison that reports the actual value on failure.
#define CHECK_NEAR(actual, expected, tol)                          \
    do {                                                           \
        const double checkNearValue = (actual);                    \
        INFO(#actual " = ", checkNearValue);                       \
        CHECK(std::abs(checkNearValue - (expected)) <= (tol));     \
    } while (0)
