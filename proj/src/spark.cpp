#include "sparsecert/spark.hpp"

#include "sparsecert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sparsecert {

namespace {

// Advances `idx` to the next k-combination of {0..n-1} in lexicographic
// order. Returns false after the last one.
bool nextCombination(IndexSet& idx, std::size_t n) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Searches all k-subsets for a dependent one. Returns it if found.
std::optional<IndexSet> findDependent(const DenseMatrix& a, std::size_t k, std::uint64_t& tests,
                                      std::uint64_t budget, std::size_t sizeReached) {
    IndexSet idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    do {
        if (tests >= budget) {
            throw BudgetExhausted("spark enumeration budget of " + std::to_string(budget) + " rank tests exhausted",
                                  sizeReached);
        }
        ++tests;
        if (numericalRank(a.selectColumns(idx)) < k) return idx;
    } while (nextCombination(idx, a.cols()));
    return std::nullopt;
}

}  // namespace

ExactSpark exactSpark(const DenseMatrix& a, std::uint64_t budget) {
    ExactSpark out;
    const std::size_t maxSize = std::min(a.rows() + 1, a.cols());
    for (std::size_t k = 1; k <= maxSize; ++k) {
        if (auto dep = findDependent(a, k, out.rankTests, budget, k - 1)) {
            out.spark = k;
            out.witness = std::move(*dep);
            return out;
        }
    }
    return out;
}

bool allSubsetsIndependent(const DenseMatrix& a, std::size_t k, std::uint64_t budget) {
    if (k == 0) return true;
    if (k > a.cols()) throw std::invalid_argument("subset size exceeds column count");
    if (k > a.rows()) return false;
    std::uint64_t tests = 0;
    return !findDependent(a, k, tests, budget, 0).has_value();
}

double classicBound(const CoherenceSummary& s) {
    if (!(s.mu > 0.0)) throw NotApplicable("mu is zero; 1 + 1/mu is unbounded");
    return 1.0 + 1.0 / s.mu;
}

double psiBound(const CoherenceSummary& s) {
    if (!(s.mu > 0.0)) throw NotApplicable("mu is zero");
    if (classMembership(s).membership == Membership::NotInM)
        throw NotApplicable("coherence rank too large: matrix is outside M1 and M2");
    if (!s.mu2) throw DegenerateCoherence("sub-mutual coherence undefined");
    if (!(*s.mu2 > 0.0)) throw NotApplicable("sub-mutual coherence is zero");
    const double a = static_cast<double>(s.alpha);
    const double b = static_cast<double>(s.beta);
    const double mu2 = *s.mu2;
    const double t = s.mu - mu2;
    const double root = std::sqrt(t * (a - b) * t * (a - b) + 4.0);
    return 1.0 + 2.0 * (1.0 - a * b * t * t) / (mu2 * (t * (a + b) + root));
}

PsiEstimates psiClosedFormEstimates(const CoherenceSummary& s) {
    if (!s.mu2 || !(*s.mu2 > 0.0) || !(s.mu > 0.0))
        throw NotApplicable("closed-form estimates need 0 < mu2 < mu");
    const ClassMembership c = classMembership(s);
    const double a = static_cast<double>(s.alpha);
    const double mu = s.mu;
    const double mu2 = *s.mu2;
    const double t = mu - mu2;
    const double base = (1.0 + 1.0 / mu) + (1.0 / mu2 - 1.0 / mu) * (1.0 - a * mu);
    PsiEstimates e;
    if (c.inM1) e.case1 = base;
    if (c.inM2) e.case2 = base + a * t * t / (mu2 * (1.0 + a * t));
    if (!e.case1 && !e.case2) throw NotApplicable("neither closed-form estimate applies");
    return e;
}

double rankOneBound(const CoherenceSummary& s) {
    if (!(s.mu < 1.0) || s.alpha != 1) throw NotApplicable("rank-one bound needs mu < 1 and alpha == 1");
    if (!s.mu2 || !(*s.mu2 > 0.0)) throw NotApplicable("rank-one bound needs mu2 > 0");
    const double mu = s.mu;
    const double mu2 = *s.mu2;
    return 1.0 + 1.0 / mu + (1.0 / mu2 - 1.0 / mu) * (1.0 - mu);
}

SparkReport sparkReport(const DenseMatrix& a, double tieTolerance, bool wantExact, std::uint64_t budget) {
    if (a.rows() < 2) throw DimensionMismatch("spark analysis assumes at least two rows");
    if (a.cols() < 2) throw DimensionMismatch("spark analysis needs at least two columns");

    SparkReport r;
    auto note = [&](const std::string& what, const std::exception& e) {
        r.diagnostics.push_back(what + ": " + e.what());
    };

    if (wantExact) {
        try {
            ExactSpark e = exactSpark(a, budget);
            r.exactStatus = ExactStatus::Computed;
            r.exact = e.spark;
            r.exactInfinite = e.infinite();
            r.witness = std::move(e.witness);
        } catch (const BudgetExhausted& e) {
            r.exactStatus = ExactStatus::BudgetExhausted;
            r.partialSizeReached = e.sizeReached();
            note("exact spark", e);
        }
    }

    try {
        const GramMatrix g = normalizedGram(a);
        r.summary = coherenceStatistics(g, tieTolerance);
        r.profile = babelProfile(g);
        if (r.profile->qHat) r.babelBound = r.profile->qHat;
        if (r.profile->qStar) r.subBabelBound = r.profile->qStar;
    } catch (const Error& e) {
        note("coherence", e);
    }

    if (r.summary) {
        const CoherenceSummary& s = *r.summary;
        if (s.unbounded) {
            r.diagnostics.push_back("mu is zero; coherence bounds skipped, use the exact spark");
        } else {
            r.classicBound = classicBound(s);
            r.membership = classMembership(s);
            try {
                r.psiBound = psiBound(s);
            } catch (const Error& e) {
                note("psi bound", e);
            }
            try {
                const PsiEstimates pe = psiClosedFormEstimates(s);
                r.psiCase1 = pe.case1;
                r.psiCase2 = pe.case2;
            } catch (const Error& e) {
                note("closed-form estimates", e);
            }
            try {
                r.rankOneBound = rankOneBound(s);
            } catch (const Error& e) {
                note("rank-one bound", e);
            }
        }
    }

    double best = 0.0;
    for (const auto& b : {r.classicBound, r.psiBound, r.psiCase1, r.psiCase2, r.rankOneBound})
        if (b) best = std::max(best, *b);
    if (r.babelBound) best = std::max(best, static_cast<double>(*r.babelBound));
    if (r.subBabelBound) best = std::max(best, static_cast<double>(*r.subBabelBound));
    if (r.exactStatus == ExactStatus::Computed) {
        best = r.exactInfinite ? std::numeric_limits<double>::infinity() : static_cast<double>(*r.exact);
    } else if (r.partialSizeReached) {
        best = std::max(best, static_cast<double>(*r.partialSizeReached + 1));
    }
    r.bestCertified = best;
    return r;
}

bool brauerInclusionCheck(const GramMatrix& g, std::span<const std::size_t> subset) {
    const GramMatrix s = g.restrict(subset);
    const std::size_t k = s.dim();
    if (k < 2) return false;
    Vector delta(k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j) delta[i] += std::abs(s(i, j));
    // Relative slack: a numerically dependent subset has a smallest
    // eigenvalue of order 1e-16 rather than exactly 0.
    constexpr double kSlack = 1e-12;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (std::abs(s(i, i)) * std::abs(s(j, j)) <= delta[i] * delta[j] * (1.0 + kSlack) + kSlack) return true;
    return false;
}

const char* toString(ExactStatus s) {
    switch (s) {
        case ExactStatus::Computed: return "computed";
        case ExactStatus::Skipped: return "skipped";
        case ExactStatus::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

}  // namespace sparsecert
