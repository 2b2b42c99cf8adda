#include "sparsecert/engine.hpp"

#include "sparsecert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sparsecert {

namespace {

class CriterionSink {
public:
    CriterionSink(UniquenessVerdict& v) : v_(v) {}

    Criterion& add(std::string name, std::string provenance, std::optional<double> bound, std::string note = {}) {
        Criterion c;
        c.name = std::move(name);
        c.provenance = std::move(provenance);
        c.note = std::move(note);
        if (bound) {
            c.applicable = true;
            c.threshold = *bound / 2.0;
            if (v_.sparsity) c.passed = static_cast<double>(*v_.sparsity) < *c.threshold - kComparisonMargin;
        }
        v_.criteria.push_back(std::move(c));
        return v_.criteria.back();
    }

    // ||x||_0 <= order / 2, for certificates that only prove spark > order.
    Criterion& addOrder(std::string name, std::string provenance, bool holds, std::size_t order, std::string note) {
        Criterion c;
        c.name = std::move(name);
        c.provenance = std::move(provenance);
        c.comparison = Comparison::NonStrict;
        c.note = std::move(note);
        if (holds) {
            c.applicable = true;
            c.threshold = static_cast<double>(order) / 2.0;
            if (v_.sparsity) c.passed = 2 * *v_.sparsity <= order;
        }
        v_.criteria.push_back(std::move(c));
        return v_.criteria.back();
    }

private:
    UniquenessVerdict& v_;
};

std::optional<double> asBound(std::optional<std::size_t> q) {
    if (q) return static_cast<double>(*q);
    return std::nullopt;
}

void addCoherenceFamily(CriterionSink& sink, const SparkReport& r, const std::string& prefix) {
    sink.add(prefix + "coherence", "spark >= 1 + 1/mu", r.classicBound);
    sink.add(prefix + "psi", "coherence-rank spark bound", r.psiBound);
    sink.add(prefix + "psi-case1", "closed-form coherence-rank estimate, alpha < 1/mu", r.psiCase1);
    sink.add(prefix + "psi-case2", "closed-form coherence-rank estimate, beta < alpha", r.psiCase2);
    sink.add(prefix + "rank-one", "closed-form estimate for alpha = 1", r.rankOneBound);
}

void addBabelFamily(CriterionSink& sink, const SparkReport& r, const std::string& prefix) {
    sink.add(prefix + "babel", "spark >= qHat from the Babel function", asBound(r.babelBound));
    sink.add(prefix + "sub-babel", "spark >= qStar from the sub-Babel function", asBound(r.subBabelBound));
}

}  // namespace

std::size_t countSparsity(std::span<const double> x, std::optional<double> zeroTol) {
    const double tol = zeroTol ? *zeroTol : 1e-10 * normInf(x);
    return static_cast<std::size_t>(std::count_if(x.begin(), x.end(), [&](double v) { return std::abs(v) > tol; }));
}

void validate(const SystemInstance& in) {
    if (in.b && in.b->size() != in.a.rows()) throw DimensionMismatch("right-hand side length differs from row count");
    if (in.candidate) {
        if (in.candidate->size() != in.a.cols()) throw DimensionMismatch("candidate length differs from column count");
        if (!in.b) throw Error("a candidate solution needs a right-hand side");
        Vector r = in.a * *in.candidate;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= (*in.b)[i];
        const double tol = 1e-9 * std::max(1.0, norm2(*in.b));
        if (norm2(r) > tol) throw Error("candidate does not solve A x = b (residual " + std::to_string(norm2(r)) + ")");
    }
    for (const auto& s : in.scalings)
        if (s.w.rows() != in.a.rows() || s.w.cols() != in.a.rows())
            throw DimensionMismatch("scaling '" + s.label + "' is not m x m");
}

const char* toString(Conclusion c) {
    return c == Conclusion::UniqueSparsest ? "unique-sparsest" : "inconclusive";
}

const char* toString(Comparison c) { return c == Comparison::Strict ? "<" : "<="; }

const Criterion* UniquenessVerdict::find(std::string_view name) const {
    for (const auto& c : criteria)
        if (c.name == name) return &c;
    return nullptr;
}

UniquenessVerdict evaluate(const SystemInstance& in, const AnalysisOptions& opt) {
    validate(in);
    UniquenessVerdict v;
    v.candidate = in.candidate;
    if (in.candidate) v.sparsity = countSparsity(*in.candidate);
    CriterionSink sink(v);

    v.spark = sparkReport(in.a, opt.tieTolerance, opt.exactSpark, opt.budget);
    const SparkReport& r = v.spark;
    for (const auto& d : r.diagnostics) v.diagnostics.push_back(d);

    if (opt.exactSpark) {
        std::optional<double> bound;
        std::string note;
        if (r.exactStatus == ExactStatus::Computed) {
            bound = r.exactInfinite ? std::numeric_limits<double>::infinity() : static_cast<double>(*r.exact);
            if (r.exactInfinite) note = "columns are independent; any solution is unique";
        } else if (r.partialSizeReached) {
            bound = static_cast<double>(*r.partialSizeReached + 1);
            note = "budget exhausted; spark > " + std::to_string(*r.partialSizeReached) + " certified";
        }
        sink.add("spark", "spark from subset enumeration", bound, note);
    }
    if (opt.coherenceFamily) addCoherenceFamily(sink, r, "");
    if (opt.babelFamily) addBabelFamily(sink, r, "");

    // Spark is invariant under nonsingular left scaling, so every scaled
    // bound is also a bound for A.
    double sparkLowerBound = r.bestCertified;
    for (const auto& spec : in.scalings) {
        const std::string prefix = spec.label + "/";
        try {
            ScaledCertificates c = scaledCertificates(in.a, spec, opt.tieTolerance, false, opt.budget, &r);
            if (opt.coherenceFamily) {
                addCoherenceFamily(sink, c.report, prefix);
                if (spec.kind == ScalingKind::SearchHeuristic) {
                    Criterion* coh = nullptr;
                    for (auto& crit : v.criteria)
                        if (crit.name == prefix + "coherence") coh = &crit;
                    if (coh && coh->threshold && v.sparsity)
                        coh->passedNonStrict = static_cast<double>(*v.sparsity) <= *coh->threshold;
                    if (coh) coh->note = "searched W bounds the optimal scaled coherence from above";
                }
            }
            if (opt.babelFamily) addBabelFamily(sink, c.report, prefix);
            sparkLowerBound = std::max(sparkLowerBound, c.report.bestCertified);
            for (const auto& d : c.report.diagnostics) v.diagnostics.push_back(prefix + d);
            v.scaled.push_back(std::move(c));
        } catch (const Error& e) {
            v.diagnostics.push_back(prefix + "scaling: " + e.what());
        }
    }

    if (opt.overlap || in.gammaStar) {
        std::optional<std::size_t> overlapSize = in.gammaStar;
        std::string source = "gamma-star supplied";
        if (opt.overlap && in.b) {
            try {
                v.overlap = supportOverlap(in.a, *in.b);
                overlapSize = v.overlap->cardinality();
                source = "support overlap computed";
            } catch (const Error& e) {
                v.diagnostics.push_back(std::string("overlap: ") + e.what());
            }
        }
        std::optional<double> bound;
        std::optional<double> rankOne;
        if (overlapSize) {
            if (sparkLowerBound > 0.0) bound = static_cast<double>(*overlapSize) + sparkLowerBound;
            if (r.rankOneBound) rankOne = static_cast<double>(*overlapSize) + *r.rankOneBound;
        }
        sink.add("overlap", "(|S*| + spark lower bound) / 2", bound, source);
        if (opt.coherenceFamily) sink.add("overlap-rank-one", "(|S*| + rank-one estimate) / 2", rankOne, source);
    }

    if (opt.rangePropertyOrder) {
        const std::size_t k = *opt.rangePropertyOrder;
        try {
            v.rangeProperty = rangePropertyII(in.a, k);
            sink.addOrder("range-property", "range property (II) of order k gives spark > k",
                          v.rangeProperty->holds, k, "order " + std::to_string(k));
        } catch (const Error& e) {
            v.diagnostics.push_back(std::string("range property: ") + e.what());
            sink.addOrder("range-property", "range property (II) of order k gives spark > k", false, k, e.what());
        }
        try {
            sink.addOrder("k-independence", "every k columns independent gives spark > k",
                          kColumnIndependence(in.a, k, opt.budget), k, "order " + std::to_string(k));
        } catch (const std::exception& e) {
            v.diagnostics.push_back(std::string("k-independence: ") + e.what());
            sink.addOrder("k-independence", "every k columns independent gives spark > k", false, k, e.what());
        }
    }

    const bool any = std::any_of(v.criteria.begin(), v.criteria.end(), [](const Criterion& c) { return c.passed; });
    v.conclusion = any ? Conclusion::UniqueSparsest : Conclusion::Inconclusive;
    return v;
}

RecoverableLevel bestRecoverableSparsity(const UniquenessVerdict& v) {
    std::optional<RecoverableLevel> best;
    for (const auto& c : v.criteria) {
        if (!c.applicable || !c.threshold) continue;
        if (!best || *c.threshold > best->level) best = RecoverableLevel{*c.threshold, c.name};
    }
    if (!best) throw NoApplicableCriterion("no criterion applies to this instance");
    return *best;
}

RecoverableLevel bestRecoverableSparsity(const SystemInstance& instance, const AnalysisOptions& options) {
    SystemInstance bare = instance;
    bare.candidate.reset();
    return bestRecoverableSparsity(evaluate(bare, options));
}

}  // namespace sparsecert
