#include "sparsecert/scaling.hpp"

#include "sparsecert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace sparsecert {

namespace {

constexpr double kMaxRandomCondition = 1e3;
constexpr double kDescentShrink = 0.5;
constexpr int kDescentLevels = 8;
constexpr double kDescentInitialStep = 0.25;
constexpr int kDescentPassesPerLevel = 50;

double muOf(const DenseMatrix& a) {
    try {
        return coherenceStatistics(normalizedGram(a)).mu;
    } catch (const ZeroColumn&) {
        return std::numeric_limits<double>::infinity();
    }
}

}  // namespace

const char* toString(ScalingKind k) {
    switch (k) {
        case ScalingKind::Explicit: return "explicit";
        case ScalingKind::DiagonalFromB: return "phi-b";
        case ScalingKind::SvdVt: return "svd";
        case ScalingKind::SearchHeuristic: return "search";
    }
    return "?";
}

ScalingSpec explicitScaling(DenseMatrix w, std::string label) {
    if (w.rows() != w.cols()) throw SingularScaling("scaling matrix must be square");
    if (numericalRank(w) < w.rows()) throw SingularScaling("scaling matrix is singular");
    ScalingSpec s;
    s.kind = ScalingKind::Explicit;
    s.conditionNumber = conditionNumber(w);
    s.w = std::move(w);
    s.label = std::move(label);
    return s;
}

DenseMatrix applyScaling(const DenseMatrix& a, const ScalingSpec& spec) {
    if (spec.w.rows() != spec.w.cols() || spec.w.cols() != a.rows())
        throw DimensionMismatch("scaling matrix must be " + std::to_string(a.rows()) + " x " +
                                std::to_string(a.rows()));
    if (numericalRank(spec.w) < spec.w.rows()) throw SingularScaling("scaling matrix is singular");
    if (spec.kind == ScalingKind::DiagonalFromB && spec.b) {
        Vector d(a.data().begin(), a.data().end());
        for (std::size_t i = 0; i < a.rows(); ++i)
            if ((*spec.b)[i] != 0.0)
                for (std::size_t j = 0; j < a.cols(); ++j) d[i * a.cols() + j] /= (*spec.b)[i];
        return DenseMatrix(a.rows(), a.cols(), std::move(d));
    }
    return spec.w * a;
}

Vector applyScaling(const ScalingSpec& spec, std::span<const double> v) {
    if (v.size() != spec.w.cols()) throw DimensionMismatch("vector length differs from scaling size");
    if (spec.kind == ScalingKind::DiagonalFromB && spec.b) {
        Vector out(v.begin(), v.end());
        for (std::size_t i = 0; i < out.size(); ++i)
            if ((*spec.b)[i] != 0.0) out[i] /= (*spec.b)[i];
        return out;
    }
    return spec.w * v;
}

ScalingSpec phiDiagonalFromB(std::span<const double> b) {
    Vector d(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) d[i] = b[i] != 0.0 ? 1.0 / b[i] : 1.0;
    ScalingSpec s;
    s.kind = ScalingKind::DiagonalFromB;
    s.w = DenseMatrix::diagonal(d);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double x : d) {
        lo = std::min(lo, std::abs(x));
        hi = std::max(hi, std::abs(x));
    }
    s.conditionNumber = hi / lo;
    s.b = Vector(b.begin(), b.end());
    s.label = "phi-b";
    return s;
}

ScalingSpec svdScaling(const DenseMatrix& a) {
    const std::size_t m = a.rows();
    if (m > a.cols()) throw RankDeficient("SVD scaling needs m <= n");
    const SvdFactors f = svd(a);
    if (numericalRank(a) < m) throw RankDeficient("SVD scaling needs A to have full row rank");
    Vector w(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) w[i * m + j] = f.u(j, i) / f.singularValues[i];
    ScalingSpec s;
    s.kind = ScalingKind::SvdVt;
    s.w = DenseMatrix(m, m, std::move(w));
    s.conditionNumber = f.singularValues.front() / f.singularValues[m - 1];
    s.label = "svd";
    return s;
}

double scaledMu(const DenseMatrix& a, const DenseMatrix& w) { return muOf(w * a); }

ScalingSpec searchScaling(const DenseMatrix& a, std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("searchScaling needs at least one trial");
    const std::size_t m = a.rows();

    DenseMatrix best = DenseMatrix::identity(m);
    double bestMu = muOf(a);

    // Random candidates. Trial order fixes the tie-break: a later trial must
    // be strictly better to replace an earlier one.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::optional<DenseMatrix> bestRandom;
    double bestRandomMu = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            Vector d(m * m);
            for (auto& x : d) x = gauss(rng);
            DenseMatrix w(m, m, std::move(d));
            if (!(conditionNumber(w) <= kMaxRandomCondition)) continue;
            const double mu = scaledMu(a, w);
            if (mu < bestRandomMu) {
                bestRandomMu = mu;
                bestRandom = std::move(w);
            }
            break;
        }
    }

    if (bestRandom) {
        // Coordinate descent: nudge one entry at a time, keep strict
        // improvements, halve the step when a full pass changes nothing.
        Vector w(bestRandom->data().begin(), bestRandom->data().end());
        double mu = bestRandomMu;
        double step = kDescentInitialStep * std::max(1.0, bestRandom->maxAbs());
        for (int level = 0; level < kDescentLevels; ++level) {
            bool improved = true;
            for (int pass = 0; improved && pass < kDescentPassesPerLevel; ++pass) {
                improved = false;
                for (std::size_t k = 0; k < w.size(); ++k) {
                    for (double dir : {1.0, -1.0}) {
                        Vector trial = w;
                        trial[k] += dir * step;
                        DenseMatrix cand(m, m, trial);
                        if (!(conditionNumber(cand) <= kMaxRandomCondition)) continue;
                        const double cm = scaledMu(a, cand);
                        if (cm < mu) {
                            mu = cm;
                            w = std::move(trial);
                            improved = true;
                            break;
                        }
                    }
                }
            }
            step *= kDescentShrink;
        }
        if (mu < bestMu) {
            bestMu = mu;
            best = DenseMatrix(m, m, std::move(w));
        }
    }

    ScalingSpec s;
    s.kind = ScalingKind::SearchHeuristic;
    s.conditionNumber = conditionNumber(best);
    s.w = std::move(best);
    s.label = "search";
    s.bestFoundMu = bestMu;
    return s;
}

ScaledCertificates scaledCertificates(const DenseMatrix& a, const ScalingSpec& spec, double tieTolerance,
                                      bool wantExact, std::uint64_t budget, const SparkReport* unscaled) {
    ScaledCertificates c{spec, std::nullopt, sparkReport(applyScaling(a, spec), tieTolerance, wantExact, budget), {}};
    c.summary = c.report.summary;
    if (unscaled) {
        auto add = [&](const char* name, std::optional<double> before, std::optional<double> after) {
            c.comparison.push_back({name, before, after});
        };
        auto asReal = [](std::optional<std::size_t> v) -> std::optional<double> {
            if (v) return static_cast<double>(*v);
            return std::nullopt;
        };
        add("classic", unscaled->classicBound, c.report.classicBound);
        add("psi", unscaled->psiBound, c.report.psiBound);
        add("psiCase1", unscaled->psiCase1, c.report.psiCase1);
        add("psiCase2", unscaled->psiCase2, c.report.psiCase2);
        add("rankOne", unscaled->rankOneBound, c.report.rankOneBound);
        add("babel", asReal(unscaled->babelBound), asReal(c.report.babelBound));
        add("subBabel", asReal(unscaled->subBabelBound), asReal(c.report.subBabelBound));
    }
    return c;
}

MatrixFormSystem matrixFormIngest(const std::vector<DenseMatrix>& operators, const DenseMatrix& rhs) {
    if (operators.empty()) throw DimensionMismatch("matrix-form system needs at least one operator");
    std::vector<Vector> cols;
    cols.reserve(operators.size());
    for (const auto& op : operators) {
        if (op.rows() != rhs.rows() || op.cols() != rhs.cols())
            throw DimensionMismatch("operator shape differs from right-hand side shape");
        cols.emplace_back(op.data().begin(), op.data().end());
    }
    return {DenseMatrix::fromColumns(cols), Vector(rhs.data().begin(), rhs.data().end())};
}

double operatorCoherence(const std::vector<DenseMatrix>& operators) {
    double mu = 0.0;
    for (std::size_t i = 0; i < operators.size(); ++i) {
        for (std::size_t j = i + 1; j < operators.size(); ++j) {
            const DenseMatrix prod = operators[i].transpose() * operators[j];
            double tr = 0.0;
            for (std::size_t k = 0; k < prod.rows(); ++k) tr += prod(k, k);
            const double ni = norm2(operators[i].data());
            const double nj = norm2(operators[j].data());
            mu = std::max(mu, std::abs(tr) / (ni * nj));
        }
    }
    return mu;
}

}  // namespace sparsecert
