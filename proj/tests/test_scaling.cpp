#include "sparsecert/errors.hpp"
#include "sparsecert/scaling.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace sparsecert;

namespace {

constexpr double kStatTol = 5e-4;
constexpr double kBoundTol = 1e-3;

CoherenceSummary scaledSummary(const DenseMatrix& a, const ScalingSpec& s) {
    return coherenceSummary(normalizedGram(applyScaling(a, s)), kStatTol);
}

}  // namespace

TEST_CASE("identity scaling leaves A unchanged") {
    const DenseMatrix a = fixtures::rank1();
    CHECK(applyScaling(a, explicitScaling(DenseMatrix::identity(3))) == a);
}

TEST_CASE("explicit scaling validation") {
    CHECK_THROWS_AS(explicitScaling(DenseMatrix::fromRows({{1, 2}, {2, 4}})), SingularScaling);
    CHECK_THROWS_AS(explicitScaling(DenseMatrix::fromRows({{1, 2, 3}, {4, 5, 6}})), SingularScaling);
    CHECK_THROWS_AS(applyScaling(fixtures::rank1(), explicitScaling(DenseMatrix::identity(2))), DimensionMismatch);
}

TEST_CASE("reference scaling on the skewed fixture") {
    const ScalingSpec w = explicitScaling(fixtures::skewedScaling());
    const CoherenceSummary s = scaledSummary(fixtures::skewed(), w);
    CHECK_NEAR(s.mu, 0.8343, kStatTol);
    CHECK_NEAR(*s.mu2, 0.7272, kStatTol);
    CHECK(s.alpha == 1);
    CHECK(s.beta == 1);
    const ScaledCertificates c = scaledCertificates(fixtures::skewed(), w, kStatTol);
    CHECK_NEAR(*c.report.classicBound / 2, 1.0993, kBoundTol);
    CHECK_NEAR(*c.report.psiBound / 2, 1.1139, kBoundTol);
}

TEST_CASE("reference scaling on the rank-two fixture changes the coherence and keeps the spark") {
    const DenseMatrix a = fixtures::rank2();
    const ScalingSpec w = explicitScaling(fixtures::rank2Scaling());
    const CoherenceSummary s = scaledSummary(a, w);
    CHECK(std::abs(s.mu - coherenceSummary(normalizedGram(a), kStatTol).mu) > 1e-4);
    CHECK(s.alpha == 1);
    CHECK(exactSpark(applyScaling(a, w)).spark == exactSpark(a).spark);
}

TEST_CASE("flipping the sign of entry (3,6) reproduces the reference scaled statistics") {
    // The reference scaled Gram matrix is consistent with +0.2949 in the last
    // entry of column 6; the unscaled statistics agree with either sign.
    const DenseMatrix a = fixtures::rank2();
    Vector d(a.data().begin(), a.data().end());
    d[2 * 6 + 5] = 0.2949;
    const DenseMatrix flipped(3, 6, d);
    const CoherenceSummary s = scaledSummary(flipped, explicitScaling(fixtures::rank2Scaling()));
    CHECK_NEAR(s.mu, 0.8954, kStatTol);
    CHECK_NEAR(*s.mu2, 0.8302, kStatTol);
    CHECK(s.alpha == 1);
    CHECK(s.beta == 1);
}

TEST_CASE("phi(b) diagonal") {
    SUBCASE("all-ones b gives the identity") {
        CHECK(phiDiagonalFromB(Vector{1, 1, 1}).w == DenseMatrix::identity(3));
    }
    SUBCASE("zero entries map to one") {
        const ScalingSpec s = phiDiagonalFromB(Vector{2, 0, -4});
        CHECK(s.w == DenseMatrix::diagonal(Vector{0.5, 1, -0.25}));
        CHECK(applyScaling(s, Vector{2, 0, -4}) == Vector{1, 0, 1});
        CHECK((s.kind == ScalingKind::DiagonalFromB));
        CHECK(s.b == Vector{2, 0, -4});
    }
    SUBCASE("integer fixture") {
        const ScalingSpec s = phiDiagonalFromB(fixtures::integerRhs());
        const ScaledCertificates c = scaledCertificates(fixtures::integer(), s, kStatTol);
        CHECK_NEAR(c.summary->mu, 0.8042, kStatTol);
        CHECK_NEAR(*c.summary->mu2, 0.7833, kStatTol);
        CHECK_NEAR(*c.report.classicBound / 2, 1.1217, kBoundTol);
        CHECK_NEAR(*c.report.psiBound / 2, 1.1250, kBoundTol);
    }
    SUBCASE("maps random b to |sign(b)| exactly") {
        std::mt19937_64 rng(51);
        for (int rep = 0; rep < 50; ++rep) {
            Vector b = randomized::gaussianVector(6, rng);
            b[static_cast<std::size_t>(rep) % 6] = 0.0;
            const Vector out = applyScaling(phiDiagonalFromB(b), b);
            for (std::size_t i = 0; i < b.size(); ++i) CHECK(out[i] == (b[i] != 0.0 ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("svd scaling maps A onto orthonormal rows") {
    std::mt19937_64 rng(52);
    for (int rep = 0; rep < 10; ++rep) {
        const DenseMatrix a = randomized::gaussian(3, 5, rng);
        const ScalingSpec s = svdScaling(a);
        CHECK((s.kind == ScalingKind::SvdVt));
        const DenseMatrix wa = applyScaling(a, s);
        const DenseMatrix p = wa * wa.transpose();
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) CHECK(p(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0));

        // Recompute from the leading rows of V^T directly.
        const SvdFactors f = svd(a);
        Vector rows;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 5; ++j) rows.push_back(f.vt(i, j));
        const double muV = coherenceStatistics(normalizedGram(DenseMatrix(3, 5, rows))).mu;
        CHECK(std::abs(coherenceStatistics(normalizedGram(wa)).mu - muV) <= 1e-8);
    }
    SUBCASE("orthonormal rows keep their coherence") {
        const double s = 1.0 / std::sqrt(2.0);
        const DenseMatrix a = DenseMatrix::fromRows({{s, s, 0}, {0, 0, 1}});
        CHECK(scaledMu(a, svdScaling(a).w) == doctest::Approx(coherenceStatistics(normalizedGram(a)).mu));
    }
    SUBCASE("rank-deficient input") {
        const DenseMatrix a = DenseMatrix::fromRows({{1, 2, 3, 4, 5}, {2, 4, 6, 8, 10}, {0, 1, 0, 1, 0}});
        CHECK_THROWS_AS(svdScaling(a), RankDeficient);
    }
}

TEST_CASE("search scaling never does worse than the identity and is deterministic") {
    const DenseMatrix a = fixtures::rank2();
    const ScalingSpec s = searchScaling(a, 100, 7);
    const double mu = coherenceStatistics(normalizedGram(a)).mu;
    REQUIRE(s.bestFoundMu);
    CHECK(*s.bestFoundMu <= mu);
    CHECK(scaledMu(a, s.w) == doctest::Approx(*s.bestFoundMu));
    CHECK(s.conditionNumber <= 1e3);
    CHECK(searchScaling(a, 100, 7).w == s.w);

    const ScalingSpec id = searchScaling(DenseMatrix::identity(3), 1, 3);
    CHECK(*id.bestFoundMu == 0.0);
    CHECK_THROWS_AS(searchScaling(a, 0, 1), std::invalid_argument);
}

TEST_CASE("scaling preserves the solution set") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 20; ++rep) {
        const DenseMatrix a = randomized::withPlantedDependency(3, 6, rep % 3, rng);
        const ScalingSpec w = explicitScaling(randomized::wellConditioned(3, rng));
        const Vector x = randomized::gaussianVector(6, rng);
        const Vector b = a * x;
        const DenseMatrix wa = applyScaling(a, w);
        const Vector wb = applyScaling(w, b);
        Vector r = wa * x;
        for (std::size_t i = 0; i < 3; ++i) r[i] -= wb[i];
        CHECK(norm2(r) <= 1e-9 * std::max(1.0, norm2(wb)));
        // Both null spaces coincide, so every solution of one solves the other.
        for (const auto& v : nullSpaceBasis(wa)) CHECK(normInf(a * v) <= 1e-9 * a.maxAbs());
        CHECK(nullSpaceBasis(wa).size() == nullSpaceBasis(a).size());
    }
}

TEST_CASE("matrix-form systems") {
    const DenseMatrix e11 = DenseMatrix::fromRows({{1, 0}, {0, 0}});
    const DenseMatrix e22 = DenseMatrix::fromRows({{0, 0}, {0, 1}});
    const MatrixFormSystem sys = matrixFormIngest({e11, e22}, e11);
    CHECK(sys.a.rows() == 4);
    CHECK(sys.a.cols() == 2);
    CHECK(coherenceStatistics(normalizedGram(sys.a)).mu == 0.0);
    const Vector x = leastSquares(sys.a, sys.b);
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS_AS(matrixFormIngest({e11}, DenseMatrix::identity(3)), DimensionMismatch);

    std::mt19937_64 rng(54);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<DenseMatrix> ops;
        for (int k = 0; k < 5; ++k) ops.push_back(randomized::gaussian(2, 2, rng));
        const MatrixFormSystem s = matrixFormIngest(ops, randomized::gaussian(2, 2, rng));
        CHECK(operatorCoherence(ops) == doctest::Approx(coherenceStatistics(normalizedGram(s.a)).mu).epsilon(1e-12));
    }
}

TEST_CASE("scaled certificates compare against the unscaled report") {
    const DenseMatrix a = fixtures::integer();
    const SparkReport base = sparkReport(a, kStatTol, false);
    const ScaledCertificates c =
        scaledCertificates(a, phiDiagonalFromB(fixtures::integerRhs()), kStatTol, true, kDefaultSparkBudget, &base);
    REQUIRE(c.comparison.size() == 7);
    CHECK(c.comparison[0].bound == "classic");
    CHECK(*c.comparison[0].scaled > *c.comparison[0].unscaled);
    CHECK(c.report.exact == exactSpark(a).spark);
}
