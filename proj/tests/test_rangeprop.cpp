#include "sparsecert/errors.hpp"
#include "sparsecert/rangeprop.hpp"
#include "lp_oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace sparsecert;

using lporacle::randomBoxLp;
using lporacle::vertexOptimum;

TEST_CASE("LP basics") {
    SUBCASE("min x with x >= 1") {
        LpProblem p;
        p.objective = {1.0};
        p.bounds = {{1.0, kInf}};
        const LpResult r = solveLp(p);
        REQUIRE((r.status == LpStatus::Optimal));
        CHECK((*r.solution)[0] == doctest::Approx(1.0));
        CHECK(*r.value == doctest::Approx(1.0));
    }
    SUBCASE("x >= 1 and x <= 0 is infeasible") {
        LpProblem p;
        p.objective = {1.0};
        p.bounds = {{-kInf, kInf}};
        p.inequalityRows = {{-1.0}, {1.0}};
        p.inequalityRhs = {-1.0, 0.0};
        CHECK((solveLp(p).status == LpStatus::Infeasible));
    }
    SUBCASE("unbounded below") {
        LpProblem p;
        p.objective = {1.0, 0.0};
        p.bounds = {{-kInf, 0.0}, {0.0, 1.0}};
        CHECK((solveLp(p).status == LpStatus::Unbounded));
    }
    SUBCASE("equality rows with a redundant copy") {
        LpProblem p;
        p.objective = {1.0, 2.0, 0.0};
        p.bounds = {{0.0, kInf}, {0.0, kInf}, {0.0, kInf}};
        p.equalityRows = {{1, 1, 1}, {2, 2, 2}, {1, -1, 0}};
        p.equalityRhs = {3, 6, 0};
        const LpResult r = solveLp(p);
        REQUIRE((r.status == LpStatus::Optimal));
        CHECK(*r.value == doctest::Approx(0.0).scale(1.0));
        CHECK((*r.solution)[2] == doctest::Approx(3.0));
        CHECK(r.dualityGap <= 1e-8);
    }
    SUBCASE("size validation") {
        LpProblem p;
        p.objective = {1.0};
        CHECK_THROWS_AS(solveLp(p), DimensionMismatch);
    }
}

TEST_CASE("LP optimum matches vertex enumeration on tiny random problems") {
    std::mt19937_64 rng(71);
    for (int rep = 0; rep < 20; ++rep) {
        const LpProblem p = randomBoxLp(rng, 2 + rep % 4, 3 + rep % 3);
        const LpResult r = solveLp(p);
        const std::optional<double> o = vertexOptimum(p);
        REQUIRE(o);
        REQUIRE((r.status == LpStatus::Optimal));
        CHECK(std::abs(*r.value - *o) <= 1e-8);
        CHECK(r.dualityGap <= 1e-8);
    }
}

TEST_CASE("range property of [I2 | (1,1)/sqrt 2] agrees with a grid search") {
    const double s = 1.0 / std::sqrt(2.0);
    const DenseMatrix a = DenseMatrix::fromRows({{1, 0, s}, {0, 1, s}});
    const RangePropertyCertificate c = rangePropertyII(a, 1);
    CHECK(c.holds);
    CHECK(c.margins.size() == 6);

    // eta = A^T y = (y1, y2, (y1 + y2) s); each pattern fixes one linear
    // condition, leaving a line of y to scan.
    for (const auto& pm : c.margins) {
        const std::size_t idx = pm.pattern.plus.empty() ? pm.pattern.minus[0] : pm.pattern.plus[0];
        const double target = pm.pattern.plus.empty() ? -1.0 : 1.0;
        double best = kInf;
        for (double t = -3.0; t <= 3.0; t += 1e-4) {
            double y1 = 0.0, y2 = 0.0;
            if (idx == 0) {
                y1 = target;
                y2 = t;
            } else if (idx == 1) {
                y1 = t;
                y2 = target;
            } else {
                y1 = t;
                y2 = target / s - t;
            }
            const Vector eta{y1, y2, (y1 + y2) * s};
            double off = 0.0;
            for (std::size_t j = 0; j < 3; ++j)
                if (j != idx) off = std::max(off, std::abs(eta[j]));
            best = std::min(best, off);
        }
        REQUIRE(pm.margin);
        CHECK(std::abs(*pm.margin - best) <= 1e-3);
        CHECK(pm.dualityGap <= 1e-8);
    }
    CHECK(exactSpark(a).spark.value() > 1);
}

TEST_CASE("range property edge cases") {
    CHECK(rangePropertyII(fixtures::rank1(), 0).holds);
    const DenseMatrix dup = DenseMatrix::fromRows({{1, 1, 0}, {0, 0, 1}});
    const RangePropertyCertificate c = rangePropertyII(dup, 2);
    CHECK_FALSE(c.holds);
    REQUIRE(c.failingPair);
    CHECK_THROWS_AS(rangePropertyII(fixtures::rank1(), 5), std::invalid_argument);
    std::mt19937_64 rng(1);
    // C(40, 5) * 6 patterns is far over the budget.
    CHECK_THROWS_AS(rangePropertyII(randomized::gaussian(3, 40, rng), 5), BudgetExhausted);
}

TEST_CASE("k-column independence") {
    CHECK_FALSE(kColumnIndependence(fixtures::overlap(), 2));
    CHECK(kColumnIndependence(DenseMatrix::identity(4), 3));
    CHECK(kColumnIndependence(fixtures::rank1(), 3));
    CHECK_THROWS_AS(kColumnIndependence(fixtures::rank1(), 4), std::invalid_argument);
}

TEST_CASE("range property implies spark > k; certificate permutes with the columns") {
    std::mt19937_64 rng(72);
    for (int rep = 0; rep < 15; ++rep) {
        const DenseMatrix a = randomized::withPlantedDependency(3, 6, rep % 3, rng);
        const ExactSpark e = exactSpark(a);
        for (std::size_t k = 1; k <= 3; ++k) {
            const RangePropertyCertificate c = rangePropertyII(a, k);
            if (c.holds) CHECK(*e.spark > k);
            CHECK(kColumnIndependence(a, k) == (*e.spark > k));
            IndexSet perm{5, 3, 1, 0, 2, 4};
            CHECK(rangePropertyII(a.selectColumns(perm), k).holds == c.holds);
        }
    }
}
