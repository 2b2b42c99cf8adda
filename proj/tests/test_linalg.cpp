#include "sparsecert/errors.hpp"
#include "sparsecert/linalg.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace sparsecert;

namespace {

double maxAbsDiff(const DenseMatrix& a, const DenseMatrix& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
    return d;
}

DenseMatrix reconstruct(const SvdFactors& f, std::size_t m, std::size_t n) {
    Vector us(m * n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < f.singularValues.size(); ++k) us[i * n + k] = f.u(i, k) * f.singularValues[k];
    return DenseMatrix(m, n, std::move(us)) * f.vt;
}

double orthogonalityError(const DenseMatrix& q) {
    const DenseMatrix p = q.transpose() * q;
    double e = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) e = std::max(e, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
    return e;
}

}  // namespace

TEST_CASE("DenseMatrix construction validates shape and entries") {
    CHECK_THROWS_AS(DenseMatrix(0, 2, {}), DimensionMismatch);
    CHECK_THROWS_AS(DenseMatrix(2, 2, {1, 2, 3}), DimensionMismatch);
    CHECK_THROWS_AS(DenseMatrix(1, 2, {1, std::numeric_limits<double>::quiet_NaN()}), Error);
    CHECK_THROWS_AS(DenseMatrix(1, 1, {std::numeric_limits<double>::infinity()}), Error);
    const DenseMatrix a = DenseMatrix::fromRows({{1, 2, 3}, {4, 5, 6}});
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 3);
    CHECK(a(1, 2) == 6);
    CHECK(a.transpose()(2, 1) == 6);
    CHECK(a.column(1) == Vector{2, 5});
    CHECK(a.withoutColumn(0) == DenseMatrix::fromRows({{2, 3}, {5, 6}}));
    CHECK(a.appendColumn(Vector{7, 8}) == DenseMatrix::fromRows({{1, 2, 3, 7}, {4, 5, 6, 8}}));
    CHECK(a * Vector{1, 0, -1} == Vector{-2, -2});
}

TEST_CASE("normalizeColumns") {
    SUBCASE("identity is already normalized") {
        const NormalizedColumns n = normalizeColumns(DenseMatrix::identity(2));
        CHECK(n.matrix == DenseMatrix::identity(2));
        CHECK(n.scaleFactors == Vector{1, 1});
    }
    SUBCASE("3-4-5 column") {
        const NormalizedColumns n = normalizeColumns(DenseMatrix::fromRows({{3}, {4}}));
        CHECK(n.matrix(0, 0) == doctest::Approx(0.6));
        CHECK(n.matrix(1, 0) == doctest::Approx(0.8));
        CHECK(n.scaleFactors[0] == doctest::Approx(0.2));
    }
    SUBCASE("zero column reports its index") {
        try {
            normalizeColumns(DenseMatrix::fromRows({{1, 0, 2}, {1, 0, 3}}));
            FAIL("expected ZeroColumn");
        } catch (const ZeroColumn& e) {
            CHECK(e.column() == 1);
        }
    }
}

TEST_CASE("Gram matrix of the rank-two fixture matches the reference entries") {
    const GramMatrix g = normalizedGram(fixtures::rank2());
    CHECK(g.sourceNormalized());
    for (std::size_t i = 0; i < g.dim(); ++i) {
        CHECK(g(i, i) == 1.0);
        for (std::size_t j = 0; j < g.dim(); ++j) CHECK(g(i, j) == g(j, i));
    }
    CHECK_NEAR(g(1, 3), 0.9239, 5e-4);
    CHECK_NEAR(g(0, 3), -0.7644, 5e-4);
}

TEST_CASE("Gram of orthonormal columns is the identity") {
    const double s = 1.0 / std::sqrt(2.0);
    const GramMatrix g = gram(DenseMatrix::fromRows({{s, s}, {s, -s}}));
    CHECK_FALSE(g.sourceNormalized());
    CHECK(g(0, 0) == doctest::Approx(1.0));
    CHECK(g(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("rank-one fixture has |G_14| = 0.7989") {
    CHECK_NEAR(std::abs(normalizedGram(fixtures::rank1())(0, 3)), 0.7989, 5e-4);
}

TEST_CASE("numericalRank") {
    CHECK(numericalRank(DenseMatrix::identity(3)) == 3);
    CHECK(numericalRank(DenseMatrix::fromRows({{1, 1}, {0, 0}})) == 1);
    CHECK(numericalRank(DenseMatrix(2, 3, Vector(6, 0.0))) == 0);
    CHECK(numericalRank(fixtures::overlap()) == 3);
    CHECK(numericalRank(fixtures::overlap().selectColumns(IndexSet{3, 4})) == 1);
}

TEST_CASE("svd of small known matrices") {
    const SvdFactors id = svd(DenseMatrix::identity(3));
    CHECK(id.singularValues == Vector{1, 1, 1});
    const Vector s = singularValues(DenseMatrix::fromRows({{3, 0}, {0, 2}}));
    CHECK(s[0] == doctest::Approx(3.0));
    CHECK(s[1] == doctest::Approx(2.0));
    CHECK(conditionNumber(DenseMatrix::identity(4)) == doctest::Approx(1.0));
    CHECK(std::isinf(conditionNumber(DenseMatrix::fromRows({{1, 2}, {2, 4}}))));
}

TEST_CASE("svd reconstructs random matrices of every orientation") {
    std::mt19937_64 rng(11);
    for (auto [m, n] : {std::pair{3, 5}, {5, 3}, {4, 4}, {1, 6}, {6, 1}, {5, 10}}) {
        for (int rep = 0; rep < 5; ++rep) {
            const DenseMatrix a = randomized::gaussian(m, n, rng);
            const SvdFactors f = svd(a);
            CAPTURE(m);
            CAPTURE(n);
            CHECK(maxAbsDiff(reconstruct(f, m, n), a) <= 1e-9 * a.maxAbs());
            CHECK(orthogonalityError(f.u) <= 1e-10);
            CHECK(orthogonalityError(f.vt.transpose()) <= 1e-10);
            for (std::size_t k = 1; k < f.singularValues.size(); ++k)
                CHECK(f.singularValues[k] <= f.singularValues[k - 1]);
        }
    }
}

TEST_CASE("svd reconstructs the fixtures, including rank-deficient ones") {
    for (const DenseMatrix& a : {fixtures::rank2(), fixtures::rank1(), fixtures::integer(), fixtures::overlap()}) {
        const SvdFactors f = svd(a);
        CHECK(maxAbsDiff(reconstruct(f, a.rows(), a.cols()), a) <= 1e-9 * a.maxAbs());
        CHECK(orthogonalityError(f.u) <= 1e-10);
        CHECK(orthogonalityError(f.vt) <= 1e-10);
    }
}

TEST_CASE("rank is invariant under transposition and nonsingular left scaling") {
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t m = 3 + rep % 3;
        const DenseMatrix a = randomized::withPlantedDependency(m, 2 * m, rep % 3, rng);
        const DenseMatrix w = randomized::wellConditioned(m, rng, 1e3);
        CHECK(numericalRank(a) == numericalRank(a.transpose()));
        CHECK(numericalRank(w * a) == numericalRank(a));
        // The planted column never raises the rank above m.
        CHECK(numericalRank(a) == m);
        CHECK(numericalRank(a.selectColumns(IndexSet{0, 2 * m - 1})) == (rep % 3 == 1 ? 1u : 2u));
    }
}

TEST_CASE("leastSquares, nullSpaceBasis and solveSquare") {
    const DenseMatrix a = fixtures::overlap();
    const Vector b = fixtures::overlapRhs();
    const Vector x = leastSquares(a, b);
    const Vector r = a * x;
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(r[i] == doctest::Approx(b[i]));

    const std::vector<Vector> basis = nullSpaceBasis(a);
    REQUIRE(basis.size() == 2);
    for (const auto& v : basis) {
        CHECK(norm2(v) == doctest::Approx(1.0));
        CHECK(normInf(a * v) <= 1e-12);
        // The minimum-norm solution is orthogonal to the null space.
        CHECK(std::abs(dot(v, x)) <= 1e-12);
    }
    CHECK(std::abs(dot(basis[0], basis[1])) <= 1e-12);

    const Vector s = solveSquare(DenseMatrix::fromRows({{0, 2}, {1, 1}}), Vector{4, 3});
    CHECK(s[0] == doctest::Approx(1.0));
    CHECK(s[1] == doctest::Approx(2.0));
    CHECK_THROWS_AS(solveSquare(DenseMatrix::fromRows({{1, 2}, {2, 4}}), Vector{1, 2}), RankDeficient);
}
