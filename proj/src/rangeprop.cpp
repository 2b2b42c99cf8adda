#include "sparsecert/rangeprop.hpp"

#include "sparsecert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sparsecert {

namespace {

constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kBreakdownTol = 1e-12;
constexpr double kFeasibilityTol = 1e-9;

// How an original variable maps onto nonnegative standard-form columns.
enum class VarMap { Shifted, Reflected, Split };

struct StandardVar {
    VarMap map;
    double anchor;       // lower bound for Shifted, upper bound for Reflected
    std::size_t column;  // first standard column; Split uses column and column + 1
};

// Dense tableau of a standard-form LP: rows [A | rhs], one basic column per row.
struct Tableau {
    std::vector<Vector> rows;
    std::vector<std::size_t> basis;
    std::size_t cols = 0;  // excluding the rhs

    double rhs(std::size_t r) const { return rows[r][cols]; }

    void pivot(std::size_t r, std::size_t j) {
        const double p = rows[r][j];
        if (std::abs(p) < kBreakdownTol) throw NumericalBreakdown("simplex pivot below 1e-12");
        for (double& v : rows[r]) v /= p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r) continue;
            const double f = rows[i][j];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= cols; ++c) rows[i][c] -= f * rows[r][c];
            rows[i][j] = 0.0;
        }
        basis[r] = j;
    }
};

enum class PhaseOutcome { Optimal, Unbounded };

// Bland's rule: lowest-index improving column enters, lowest-index basic
// variable among ratio ties leaves. `allowed` masks columns out of play.
PhaseOutcome runSimplex(Tableau& t, const Vector& cost, const std::vector<bool>& allowed) {
    const std::size_t cap = 50 * (t.rows.size() + t.cols) + 1000;
    for (std::size_t iter = 0; iter < cap; ++iter) {
        std::optional<std::size_t> entering;
        for (std::size_t j = 0; j < t.cols && !entering; ++j) {
            if (!allowed[j]) continue;
            double d = cost[j];
            for (std::size_t r = 0; r < t.rows.size(); ++r) d -= cost[t.basis[r]] * t.rows[r][j];
            if (d < -kCostTol) entering = j;
        }
        if (!entering) return PhaseOutcome::Optimal;

        const std::size_t j = *entering;
        std::optional<std::size_t> leaving;
        double best = 0.0;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            if (t.rows[r][j] <= kPivotTol) continue;
            const double ratio = t.rhs(r) / t.rows[r][j];
            const bool tie = leaving && std::abs(ratio - best) <= 1e-12 * (1.0 + std::abs(best));
            if (!leaving || (!tie && ratio < best) || (tie && t.basis[r] < t.basis[*leaving])) {
                leaving = r;
                best = ratio;
            }
        }
        if (!leaving) return PhaseOutcome::Unbounded;
        t.pivot(*leaving, j);
    }
    throw CycleDetected("simplex iteration cap reached");
}

void checkSizes(const LpProblem& p) {
    const std::size_t n = p.objective.size();
    if (p.bounds.size() != n) throw DimensionMismatch("LP needs one bound pair per variable");
    if (p.equalityRows.size() != p.equalityRhs.size() || p.inequalityRows.size() != p.inequalityRhs.size())
        throw DimensionMismatch("LP constraint rows and right-hand sides differ in count");
    auto finite = [](const Vector& v) { return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); }); };
    for (const auto* rows : {&p.equalityRows, &p.inequalityRows})
        for (const auto& r : *rows) {
            if (r.size() != n) throw DimensionMismatch("LP constraint row length differs from variable count");
            if (!finite(r)) throw Error("LP constraint row has a non-finite entry");
        }
    if (!finite(p.objective) || !finite(p.equalityRhs) || !finite(p.inequalityRhs))
        throw Error("LP data has a non-finite entry");
    for (const auto& b : p.bounds)
        if (std::isnan(b.lower) || std::isnan(b.upper) || b.lower == kInf || b.upper == -kInf)
            throw Error("LP bound is NaN or points the wrong way");
}

}  // namespace

const char* toString(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

LpResult solveLp(const LpProblem& p) {
    checkSizes(p);
    const std::size_t n = p.objective.size();

    for (const auto& b : p.bounds)
        if (b.lower > b.upper) return {};

    // Standard form: min c'^T z + offset, A' z = b', z >= 0.
    std::vector<StandardVar> vars;
    std::size_t nz = 0;
    struct Row {
        Vector coef;  // over original variables
        double rhs;
        bool inequality;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < p.equalityRows.size(); ++i) rows.push_back({p.equalityRows[i], p.equalityRhs[i], false});
    for (std::size_t i = 0; i < p.inequalityRows.size(); ++i)
        rows.push_back({p.inequalityRows[i], p.inequalityRhs[i], true});
    for (std::size_t j = 0; j < n; ++j) {
        const auto [lo, hi] = p.bounds[j];
        if (std::isfinite(lo)) {
            vars.push_back({VarMap::Shifted, lo, nz++});
            if (std::isfinite(hi)) {
                Vector coef(n, 0.0);
                coef[j] = 1.0;
                rows.push_back({std::move(coef), hi, true});
            }
        } else if (std::isfinite(hi)) {
            vars.push_back({VarMap::Reflected, hi, nz++});
        } else {
            vars.push_back({VarMap::Split, 0.0, nz});
            nz += 2;
        }
    }
    std::size_t slacks = 0;
    for (const auto& r : rows) slacks += r.inequality ? 1 : 0;
    const std::size_t nStd = nz + slacks;
    const std::size_t nRows = rows.size();

    std::vector<Vector> aStd(nRows, Vector(nStd, 0.0));
    Vector bStd(nRows, 0.0);
    std::size_t slack = nz;
    for (std::size_t r = 0; r < nRows; ++r) {
        double rhs = rows[r].rhs;
        for (std::size_t j = 0; j < n; ++j) {
            const double a = rows[r].coef[j];
            const StandardVar& v = vars[j];
            switch (v.map) {
                case VarMap::Shifted: aStd[r][v.column] = a; rhs -= a * v.anchor; break;
                case VarMap::Reflected: aStd[r][v.column] = -a; rhs -= a * v.anchor; break;
                case VarMap::Split: aStd[r][v.column] = a; aStd[r][v.column + 1] = -a; break;
            }
        }
        if (rows[r].inequality) aStd[r][slack++] = 1.0;
        if (rhs < 0.0) {
            for (double& x : aStd[r]) x = -x;
            rhs = -rhs;
        }
        bStd[r] = rhs;
    }
    Vector cStd(nStd, 0.0);
    double offset = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double c = p.objective[j];
        const StandardVar& v = vars[j];
        switch (v.map) {
            case VarMap::Shifted: cStd[v.column] = c; offset += c * v.anchor; break;
            case VarMap::Reflected: cStd[v.column] = -c; offset += c * v.anchor; break;
            case VarMap::Split: cStd[v.column] = c; cStd[v.column + 1] = -c; break;
        }
    }

    // Phase 1 on [A' | I] with one artificial per row.
    Tableau t;
    t.cols = nStd + nRows;
    for (std::size_t r = 0; r < nRows; ++r) {
        Vector row(t.cols + 1, 0.0);
        std::copy(aStd[r].begin(), aStd[r].end(), row.begin());
        row[nStd + r] = 1.0;
        row[t.cols] = bStd[r];
        t.rows.push_back(std::move(row));
        t.basis.push_back(nStd + r);
    }
    Vector phase1Cost(t.cols, 0.0);
    std::fill(phase1Cost.begin() + static_cast<std::ptrdiff_t>(nStd), phase1Cost.end(), 1.0);
    runSimplex(t, phase1Cost, std::vector<bool>(t.cols, true));

    double infeasibility = 0.0;
    for (std::size_t r = 0; r < nRows; ++r)
        if (t.basis[r] >= nStd) infeasibility += t.rhs(r);
    const double bScale = std::max(1.0, std::accumulate(bStd.begin(), bStd.end(), 0.0));
    if (infeasibility > kFeasibilityTol * bScale) return {};

    // Drive remaining artificials out of the basis; rows where that is
    // impossible are linear combinations of the others and are dropped.
    std::vector<std::size_t> keptRows;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (t.basis[r] >= nStd) {
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < nStd && !col; ++j)
                if (std::abs(t.rows[r][j]) > kPivotTol) col = j;
            if (col) t.pivot(r, *col);
        }
    }
    {
        Tableau kept;
        kept.cols = t.cols;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            if (t.basis[r] >= nStd) continue;
            kept.rows.push_back(t.rows[r]);
            kept.basis.push_back(t.basis[r]);
            keptRows.push_back(r);
        }
        t = std::move(kept);
    }
    // Pivots preserve the row order, so tableau row r still descends from
    // original row keptRows[r].

    Vector phase2Cost(t.cols, 0.0);
    std::copy(cStd.begin(), cStd.end(), phase2Cost.begin());
    std::vector<bool> allowed(t.cols, false);
    std::fill(allowed.begin(), allowed.begin() + static_cast<std::ptrdiff_t>(nStd), true);
    if (runSimplex(t, phase2Cost, allowed) == PhaseOutcome::Unbounded) return {LpStatus::Unbounded, {}, {}, 0.0};

    Vector z(nStd, 0.0);
    for (std::size_t r = 0; r < t.rows.size(); ++r) z[t.basis[r]] = std::max(0.0, t.rhs(r));

    Vector x(n);
    for (std::size_t j = 0; j < n; ++j) {
        const StandardVar& v = vars[j];
        switch (v.map) {
            case VarMap::Shifted: x[j] = v.anchor + z[v.column]; break;
            case VarMap::Reflected: x[j] = v.anchor - z[v.column]; break;
            case VarMap::Split: x[j] = z[v.column] - z[v.column + 1]; break;
        }
    }
    const double primal = dot(cStd, z);

    // Dual certificate from the final basis: B^T y = c_B on the kept rows.
    double gap = 0.0;
    const std::size_t k = t.rows.size();
    Vector y;
    if (k > 0) {
        Vector bt(k * k);
        Vector cb(k);
        for (std::size_t r = 0; r < k; ++r) {
            cb[r] = cStd[t.basis[r]];
            for (std::size_t i = 0; i < k; ++i) bt[r * k + i] = aStd[keptRows[i]][t.basis[r]];
        }
        y = solveSquare(DenseMatrix(k, k, std::move(bt)), cb);
        double dual = 0.0;
        for (std::size_t i = 0; i < k; ++i) dual += bStd[keptRows[i]] * y[i];
        gap = std::abs(primal - dual);
    }
    double worstReduced = 0.0;
    for (std::size_t j = 0; j < nStd; ++j) {
        double d = cStd[j];
        for (std::size_t i = 0; i < k; ++i) d -= aStd[keptRows[i]][j] * y[i];
        worstReduced = std::max(worstReduced, -d);
    }
    gap += worstReduced;

    return {LpStatus::Optimal, std::move(x), primal + offset, gap};
}

RangePropertyCertificate rangePropertyII(const DenseMatrix& a, std::size_t k, std::uint64_t pairBudget) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    RangePropertyCertificate cert;
    cert.order = k;
    if (k == 0) return cert;
    if (k > n) throw std::invalid_argument("range property order exceeds column count");

    double pairs = static_cast<double>(k + 1);
    for (std::size_t i = 0; i < k; ++i) pairs = pairs * static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (std::round(pairs) > static_cast<double>(pairBudget))
        throw BudgetExhausted("range property needs " + std::to_string(static_cast<std::uint64_t>(std::round(pairs))) +
                                  " sign patterns, budget is " + std::to_string(pairBudget),
                              0);

    const DenseMatrix at = a.transpose();  // row j of A^T is column j of A

    auto solvePattern = [&](SignPattern pattern) {
        PatternMargin pm;
        std::vector<bool> onPattern(n, false);
        LpProblem lp;
        // Variables: y (m, free) then t >= 0.
        lp.objective.assign(m + 1, 0.0);
        lp.objective[m] = 1.0;
        lp.bounds.assign(m + 1, VariableBounds{-kInf, kInf});
        lp.bounds[m] = VariableBounds{0.0, kInf};
        auto addEquality = [&](std::size_t j, double value) {
            onPattern[j] = true;
            Vector row(m + 1, 0.0);
            std::copy(at.row(j).begin(), at.row(j).end(), row.begin());
            lp.equalityRows.push_back(std::move(row));
            lp.equalityRhs.push_back(value);
        };
        for (std::size_t j : pattern.plus) addEquality(j, 1.0);
        for (std::size_t j : pattern.minus) addEquality(j, -1.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (onPattern[j]) continue;
            for (double sign : {1.0, -1.0}) {
                Vector row(m + 1, 0.0);
                for (std::size_t r = 0; r < m; ++r) row[r] = sign * at(j, r);
                row[m] = -1.0;
                lp.inequalityRows.push_back(std::move(row));
                lp.inequalityRhs.push_back(0.0);
            }
        }
        pm.pattern = std::move(pattern);
        try {
            const LpResult res = solveLp(lp);
            pm.status = res.status;
            if (res.status == LpStatus::Optimal) {
                pm.margin = *res.value;
                pm.dualityGap = res.dualityGap;
                pm.passed = *res.value < 1.0 - kRangeStrictMargin;
            }
        } catch (const Error& e) {
            pm.diagnostic = e.what();
        }
        if (!pm.passed && cert.holds) {
            cert.holds = false;
            cert.failingPair = pm.pattern;
        }
        cert.margins.push_back(std::move(pm));
    };

    IndexSet idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        solvePattern({idx, {}});
        for (std::size_t i = 0; i < k; ++i) {
            IndexSet plus;
            for (std::size_t q = 0; q < k; ++q)
                if (q != i) plus.push_back(idx[q]);
            solvePattern({std::move(plus), {idx[i]}});
        }
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t q = i; q < k; ++q) idx[q] = idx[q - 1] + 1;
    }
    return cert;
}

bool kColumnIndependence(const DenseMatrix& a, std::size_t k, std::uint64_t budget) {
    if (k > std::min(a.rows(), a.cols())) throw std::invalid_argument("order exceeds min(rows, cols)");
    return allSubsetsIndependent(a, k, budget);
}

}  // namespace sparsecert
