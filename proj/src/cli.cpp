#include "sparsecert/cli.hpp"

#include "sparsecert/errors.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace sparsecert {

namespace {

std::string_view trim(std::string_view s, std::size_t& offset) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
        ++offset;
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

DenseMatrix parseCsv(std::string_view text) {
    std::vector<Vector> rows;
    std::size_t lineNo = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::size_t lead = 0;
        const std::string_view body = trim(line, lead);
        if (body.empty() || body.front() == '#') continue;

        Vector row;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string_view::npos) comma = line.size();
            std::size_t col = start;
            const std::string_view field = trim(line.substr(start, comma - start), col);
            if (field.empty()) throw ParseError("empty field", lineNo, col + 1);
            double v = 0.0;
            const char* first = field.data();
            // from_chars rejects a leading '+', which CSV writers do emit.
            if (*first == '+') ++first;
            const auto [ptr, ec] = std::from_chars(first, field.data() + field.size(), v);
            if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v))
                throw ParseError("not a finite decimal number: '" + std::string(field) + "'", lineNo, col + 1);
            row.push_back(v);
            if (comma == line.size()) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("row has " + std::to_string(row.size()) + " fields, expected " +
                                 std::to_string(rows.front().size()),
                             lineNo, 1);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no matrix rows found", lineNo, 1);
    return DenseMatrix::fromRows(rows);
}

DenseMatrix parseJsonMatrix(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("malformed JSON", line, col);
    }
    auto field = [&](const char* name) -> const Json& {
        if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field '") + name + "'", 1, 1);
        return j.at(name);
    };
    const Json& rows = field("rows");
    const Json& cols = field("cols");
    const Json& data = field("data");
    if (!rows.is_number_unsigned() || !cols.is_number_unsigned())
        throw ParseError("'rows' and 'cols' must be non-negative integers", 1, 1);
    if (!data.is_array()) throw ParseError("'data' must be an array", 1, 1);
    const std::size_t m = rows.get<std::size_t>();
    const std::size_t n = cols.get<std::size_t>();
    if (data.size() != m * n)
        throw DimensionMismatch("'data' has " + std::to_string(data.size()) + " entries, expected " +
                                std::to_string(m * n));
    Vector v;
    v.reserve(data.size());
    for (const auto& x : data) {
        if (!x.is_number()) throw ParseError("'data' entry " + std::to_string(v.size()) + " is not a number", 1, 1);
        v.push_back(x.get<double>());
    }
    return DenseMatrix(m, n, std::move(v));
}

Json number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

Json number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

Json count(const std::optional<std::size_t>& x) { return x ? Json(*x) : Json(nullptr); }

Json oneBased(const IndexSet& s) {
    Json a = Json::array();
    for (std::size_t i : s) a.push_back(i + 1);
    return a;
}

Json matrixJson(const DenseMatrix& m) {
    Json data = Json::array();
    for (double x : m.data()) data.push_back(x);
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Json boundsJson(const SparkReport& r) {
    return Json{{"classic", number(r.classicBound)},  {"psi", number(r.psiBound)},
                {"psiCase1", number(r.psiCase1)},     {"psiCase2", number(r.psiCase2)},
                {"rankOne", number(r.rankOneBound)},  {"babel", count(r.babelBound)},
                {"subBabel", count(r.subBabelBound)}};
}

// ---- human-readable output ------------------------------------------------

std::string fixed4(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << x;
    return s.str();
}

std::string fixed4(const std::optional<double>& x) { return x ? fixed4(*x) : "-"; }

std::string indexList(const IndexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
    return out + "}";
}

void printRow(std::ostream& out, std::string_view label, const std::string& value) {
    out << "  " << std::left << std::setw(26) << label << value << '\n';
}

void printCoherence(std::ostream& out, const std::optional<CoherenceSummary>& s,
                    const std::optional<ClassMembership>& c) {
    if (!s) {
        out << "  coherence statistics unavailable\n";
        return;
    }
    printRow(out, "mu", fixed4(s->mu));
    printRow(out, "mu2", fixed4(s->mu2));
    printRow(out, "alpha", std::to_string(s->alpha));
    printRow(out, "beta", std::to_string(s->beta));
    if (c) printRow(out, "class", toString(c->membership));
}

void printSpark(std::ostream& out, const SparkReport& r) {
    out << "spark\n";
    std::string exact = toString(r.exactStatus);
    if (r.exactStatus == ExactStatus::Computed)
        exact = r.exactInfinite ? "inf (full column rank)" : std::to_string(*r.exact) + " witness " + indexList(r.witness);
    else if (r.partialSizeReached)
        exact += ", spark > " + std::to_string(*r.partialSizeReached);
    printRow(out, "exact", exact);
    out << "  " << std::left << std::setw(26) << "bound" << std::setw(12) << "spark >=" << "half\n";
    auto line = [&](const char* name, std::optional<double> b) {
        out << "  " << std::left << std::setw(26) << name << std::setw(12) << fixed4(b)
            << (b ? fixed4(*b / 2.0) : std::string("-")) << '\n';
    };
    auto asReal = [](std::optional<std::size_t> q) -> std::optional<double> {
        if (q) return static_cast<double>(*q);
        return std::nullopt;
    };
    line("classic 1+1/mu", r.classicBound);
    line("psi", r.psiBound);
    line("psi case 1", r.psiCase1);
    line("psi case 2", r.psiCase2);
    line("rank-one", r.rankOneBound);
    line("babel qHat", asReal(r.babelBound));
    line("sub-babel qStar", asReal(r.subBabelBound));
    printRow(out, "best certified", fixed4(r.bestCertified));
}

void printScaled(std::ostream& out, const ScaledCertificates& c) {
    out << "scaling " << c.spec.label << " (" << toString(c.spec.kind) << ", cond " << fixed4(c.spec.conditionNumber)
        << ")\n";
    printCoherence(out, c.summary, c.report.membership);
    if (c.spec.bestFoundMu) printRow(out, "best mu found", fixed4(*c.spec.bestFoundMu));
    out << "  " << std::left << std::setw(26) << "half-bound" << std::setw(12) << "unscaled" << "scaled\n";
    for (const auto& d : c.comparison) {
        auto half = [](std::optional<double> x) -> std::optional<double> {
            if (x) return *x / 2.0;
            return std::nullopt;
        };
        out << "  " << std::left << std::setw(26) << d.bound << std::setw(12) << fixed4(half(d.unscaled))
            << fixed4(half(d.scaled)) << '\n';
    }
}

void printOverlap(std::ostream& out, const SupportOverlap& o) {
    out << "support overlap\n";
    printRow(out, "S*", indexList(o.indices));
    printRow(out, "|S*|", std::to_string(o.cardinality()));
}

void printRange(std::ostream& out, const RangePropertyCertificate& c) {
    out << "range property (II)\n";
    printRow(out, "order k", std::to_string(c.order));
    printRow(out, "holds", c.holds ? "yes" : "no");
    printRow(out, "patterns checked", std::to_string(c.margins.size()));
    if (c.failingPair)
        printRow(out, "first failure", "+1 on " + indexList(c.failingPair->plus) + ", -1 on " +
                                           indexList(c.failingPair->minus));
    double worst = 0.0;
    for (const auto& m : c.margins)
        if (m.margin) worst = std::max(worst, *m.margin);
    if (!c.margins.empty()) printRow(out, "largest off-pattern |eta|", fixed4(worst));
}

void printVerdict(std::ostream& out, const UniquenessVerdict& v) {
    out << "criteria\n";
    out << "  " << std::left << std::setw(26) << "name" << std::setw(12) << "threshold" << std::setw(8) << "cmp"
        << "result\n";
    for (const auto& c : v.criteria) {
        std::string result = !c.applicable ? "n/a" : !v.sparsity ? "-" : c.passed ? "pass" : "fail";
        if (c.passedNonStrict && *c.passedNonStrict != c.passed)
            result += *c.passedNonStrict ? " (<= would pass)" : " (<= would fail)";
        out << "  " << std::left << std::setw(26) << c.name << std::setw(12) << fixed4(c.threshold) << std::setw(8)
            << toString(c.comparison) << result << '\n';
    }
    if (v.sparsity) printRow(out, "candidate ||x||_0", std::to_string(*v.sparsity));
    try {
        const RecoverableLevel best = bestRecoverableSparsity(v);
        printRow(out, "best threshold", fixed4(best.level) + " via " + best.criterion);
    } catch (const NoApplicableCriterion&) {
        printRow(out, "best threshold", "none");
    }
    if (v.sparsity) printRow(out, "conclusion", toString(v.conclusion));
}

void printDiagnostics(std::ostream& out, const std::vector<std::string>& d) {
    if (d.empty()) return;
    out << "diagnostics\n";
    for (const auto& s : d) out << "  " << s << '\n';
}

// ---- command plumbing ------------------------------------------------------

struct CommonArgs {
    std::string matrix;
    std::string rhs;
    std::string candidate;
    std::string format;
    std::vector<std::string> scalings;
    double tieTol = kDefaultTieTolerance;
    std::uint64_t budget = kDefaultSparkBudget;
    std::uint64_t seed = 1;
    std::size_t trials = 200;
    std::optional<std::size_t> gammaStar;
    std::size_t k = 1;
    bool json = false;
    bool exact = true;
};

std::optional<MatrixFormat> formatOverride(const CommonArgs& a) {
    if (a.format.empty()) return std::nullopt;
    return a.format == "json" ? MatrixFormat::Json : MatrixFormat::Csv;
}

Json inputJson(const CommonArgs& args, const DenseMatrix& a) {
    auto path = [](const std::string& p) { return p.empty() ? Json(nullptr) : Json(p); };
    return Json{{"matrix", args.matrix}, {"rows", a.rows()},           {"cols", a.cols()},
                {"rhs", path(args.rhs)}, {"candidate", path(args.candidate)}, {"tieTolerance", args.tieTol},
                {"budget", args.budget}};
}

void emit(std::ostream& out, Json report, std::chrono::steady_clock::time_point start) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["timings"] = Json{{"totalSeconds", secs}};
    out << report.dump(2) << '\n';
}

}  // namespace

MatrixFormat formatForPath(const std::filesystem::path& path) {
    return path.extension() == ".json" ? MatrixFormat::Json : MatrixFormat::Csv;
}

DenseMatrix parseMatrixText(std::string_view text, MatrixFormat format) {
    return format == MatrixFormat::Json ? parseJsonMatrix(text) : parseCsv(text);
}

DenseMatrix parseMatrix(const std::filesystem::path& path, std::optional<MatrixFormat> format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path.string(), 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parseMatrixText(buf.str(), format.value_or(formatForPath(path)));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
    }
}

Vector parseVector(const std::filesystem::path& path, std::optional<MatrixFormat> format) {
    const DenseMatrix m = parseMatrix(path, format);
    if (m.rows() != 1 && m.cols() != 1)
        throw DimensionMismatch(path.string() + " holds a matrix, expected a single row or column");
    return Vector(m.data().begin(), m.data().end());
}

Json toJson(const CoherenceSummary& s) {
    Json ties = Json::array();
    for (std::size_t t : s.rowTieCounts) ties.push_back(t);
    Json j{{"mu", number(s.mu)},         {"mu2", number(s.mu2)},
           {"alpha", s.alpha},           {"beta", s.beta},
           {"rowTieCounts", std::move(ties)}, {"tieTolerance", s.tieTolerance},
           {"unbounded", s.unbounded}};
    if (s.mu > 0.0) j["membership"] = toString(classMembership(s).membership);
    return j;
}

Json toJson(const BabelProfile& p) {
    Json babel = Json::array();
    Json sub = Json::array();
    for (double x : p.babel) babel.push_back(number(x));
    for (double x : p.subBabel) sub.push_back(number(x));
    return Json{{"qHat", count(p.qHat)}, {"qStar", count(p.qStar)}, {"babel", std::move(babel)},
                {"subBabel", std::move(sub)}};
}

Json toJson(const SparkReport& r) {
    Json j{{"exactStatus", toString(r.exactStatus)},
           {"exact", count(r.exact)},
           {"infinite", r.exactInfinite},
           {"witness", oneBased(r.witness)},
           {"partialSizeReached", count(r.partialSizeReached)},
           {"bounds", boundsJson(r)},
           {"bestCertified", number(r.bestCertified)}};
    j["coherence"] = r.summary ? toJson(*r.summary) : Json(nullptr);
    j["babel"] = r.profile ? toJson(*r.profile) : Json(nullptr);
    j["diagnostics"] = r.diagnostics;
    return j;
}

Json toJson(const ScaledCertificates& c) {
    Json cmp = Json::array();
    for (const auto& d : c.comparison)
        cmp.push_back(Json{{"bound", d.bound}, {"unscaled", number(d.unscaled)}, {"scaled", number(d.scaled)}});
    return Json{{"label", c.spec.label},
                {"kind", toString(c.spec.kind)},
                {"conditionNumber", number(c.spec.conditionNumber)},
                {"w", matrixJson(c.spec.w)},
                {"bestFoundMu", number(c.spec.bestFoundMu)},
                {"coherence", c.summary ? toJson(*c.summary) : Json(nullptr)},
                {"bounds", boundsJson(c.report)},
                {"bestCertified", number(c.report.bestCertified)},
                {"comparison", std::move(cmp)}};
}

Json toJson(const SupportOverlap& o) {
    return Json{{"indices", oneBased(o.indices)}, {"cardinality", o.cardinality()}, {"feasible", o.feasible}};
}

Json toJson(const RangePropertyCertificate& c) {
    auto pattern = [](const SignPattern& p) { return Json{{"plus", oneBased(p.plus)}, {"minus", oneBased(p.minus)}}; };
    Json pats = Json::array();
    for (const auto& m : c.margins) {
        Json e = pattern(m.pattern);
        e["status"] = toString(m.status);
        e["margin"] = number(m.margin);
        e["dualityGap"] = number(m.dualityGap);
        e["passed"] = m.passed;
        if (!m.diagnostic.empty()) e["diagnostic"] = m.diagnostic;
        pats.push_back(std::move(e));
    }
    return Json{{"order", c.order},
                {"holds", c.holds},
                {"failingPair", c.failingPair ? pattern(*c.failingPair) : Json(nullptr)},
                {"patterns", std::move(pats)}};
}

Json toJson(const UniquenessVerdict& v) {
    Json crit = Json::array();
    for (const auto& c : v.criteria) {
        Json e{{"name", c.name},
               {"applicable", c.applicable},
               {"threshold", number(c.threshold)},
               {"comparison", toString(c.comparison)},
               {"passed", c.passed},
               {"provenance", c.provenance}};
        if (c.passedNonStrict) e["passedNonStrict"] = *c.passedNonStrict;
        if (!c.note.empty()) e["note"] = c.note;
        crit.push_back(std::move(e));
    }
    Json best = nullptr;
    try {
        const RecoverableLevel b = bestRecoverableSparsity(v);
        best = Json{{"level", number(b.level)}, {"criterion", b.criterion}};
    } catch (const NoApplicableCriterion&) {
    }
    return Json{{"sparsity", count(v.sparsity)},
                {"conclusion", v.sparsity ? Json(toString(v.conclusion)) : Json(nullptr)},
                {"criteria", std::move(crit)},
                {"bestRecoverable", std::move(best)}};
}

int runCommand(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certify uniqueness of sparsest solutions of A x = b from coherence, spark and related bounds"};
    app.require_subcommand(1);

    CommonArgs args;
    auto common = [&](CLI::App* sub, bool exactDefault) {
        sub->add_option("--matrix", args.matrix, "Matrix A (CSV or JSON)")->required();
        sub->add_option("--format", args.format, "Input format, default from file extension")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--tie-tol", args.tieTol, "Tolerance for ties with mu")->check(CLI::NonNegativeNumber);
        sub->add_option("--budget", args.budget, "Rank-test budget of the exact spark search");
        sub->add_flag("--json", args.json, "Machine-readable report on stdout");
        sub->add_flag("--exact,!--no-exact", args.exact, "Compute the exact spark")
            ->default_str(exactDefault ? "true" : "false");
        sub->preparse_callback([&args, exactDefault](std::size_t) { args.exact = exactDefault; });
    };
    auto rhs = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--rhs", args.rhs, "Right-hand side b");
        if (required) o->required();
    };
    auto gamma = [&](CLI::App* sub) {
        sub->add_option("--gamma-star", args.gammaStar, "Known lower bound on the support overlap size");
    };
    auto scalings = [&](CLI::App* sub) {
        sub->add_option("--w", args.scalings, "Explicit scaling matrix W (repeatable)");
    };

    auto* analyze = app.add_subcommand("analyze", "Full report: statistics, bounds, scalings, overlap, criteria");
    common(analyze, true);
    rhs(analyze, false);
    gamma(analyze);
    scalings(analyze);
    analyze->add_option("--x", args.candidate, "Candidate solution");

    auto* spark = app.add_subcommand("spark", "Exact spark and every spark lower bound");
    common(spark, true);

    auto* bounds = app.add_subcommand("bounds", "Coherence and Babel thresholds without enumeration");
    common(bounds, false);

    auto* scale = app.add_subcommand("scale", "Scaled coherence certificates");
    common(scale, false);
    rhs(scale, false);
    scalings(scale);
    scale->add_option("--trials", args.trials, "Random trials of the scaling search (0 disables it)");
    scale->add_option("--seed", args.seed, "Seed of the scaling search");

    auto* overlap = app.add_subcommand("overlap", "Support overlap and the overlap-strengthened criterion");
    common(overlap, true);
    rhs(overlap, true);
    gamma(overlap);
    overlap->add_option("--x", args.candidate, "Candidate solution");

    auto* range = app.add_subcommand("rangeprop", "Range property (II) and k-column independence");
    common(range, false);
    range->add_option("--k", args.k, "Order k")->required()->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Certify a candidate as the unique sparsest solution");
    common(verify, true);
    rhs(verify, true);
    gamma(verify);
    scalings(verify);
    verify->add_option("--x", args.candidate, "Candidate solution")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        const auto fmt = formatOverride(args);
        SystemInstance in{parseMatrix(args.matrix, fmt), std::nullopt, std::nullopt, args.gammaStar, {}};
        if (!args.rhs.empty()) in.b = parseVector(args.rhs, fmt);
        if (!args.candidate.empty()) in.candidate = parseVector(args.candidate, fmt);
        for (const auto& path : args.scalings)
            in.scalings.push_back(explicitScaling(parseMatrix(path, fmt), std::filesystem::path(path).stem().string()));

        Json report{{"schemaVersion", kReportSchemaVersion}, {"command", app.get_subcommands().front()->get_name()}};
        report["input"] = inputJson(args, in.a);

        AnalysisOptions opt;
        opt.tieTolerance = args.tieTol;
        opt.exactSpark = args.exact;
        opt.budget = args.budget;

        if (spark->parsed() || bounds->parsed()) {
            const SparkReport r = sparkReport(in.a, args.tieTol, args.exact, args.budget);
            if (args.json) {
                report["spark"] = toJson(r);
                emit(out, std::move(report), start);
            } else {
                out << "coherence\n";
                printCoherence(out, r.summary, r.membership);
                printSpark(out, r);
                printDiagnostics(out, r.diagnostics);
            }
            return 0;
        }

        if (scale->parsed()) {
            const SparkReport base = sparkReport(in.a, args.tieTol, args.exact, args.budget);
            std::vector<ScalingSpec> specs = in.scalings;
            std::vector<std::string> diagnostics;
            if (in.b) specs.push_back(phiDiagonalFromB(*in.b));
            try {
                specs.push_back(svdScaling(in.a));
            } catch (const Error& e) {
                diagnostics.push_back(std::string("svd scaling: ") + e.what());
            }
            if (args.trials > 0) specs.push_back(searchScaling(in.a, args.trials, args.seed));
            std::vector<ScaledCertificates> certs;
            for (const auto& s : specs) {
                try {
                    certs.push_back(scaledCertificates(in.a, s, args.tieTol, args.exact, args.budget, &base));
                } catch (const Error& e) {
                    diagnostics.push_back(s.label + ": " + e.what());
                }
            }
            if (args.json) {
                report["spark"] = toJson(base);
                Json arr = Json::array();
                for (const auto& c : certs) arr.push_back(toJson(c));
                report["scalings"] = std::move(arr);
                report["diagnostics"] = diagnostics;
                emit(out, std::move(report), start);
            } else {
                out << "unscaled\n";
                printCoherence(out, base.summary, base.membership);
                for (const auto& c : certs) printScaled(out, c);
                printDiagnostics(out, diagnostics);
            }
            return 0;
        }

        if (range->parsed()) {
            const RangePropertyCertificate cert = rangePropertyII(in.a, args.k);
            std::optional<bool> indep;
            if (args.k <= std::min(in.a.rows(), in.a.cols())) indep = kColumnIndependence(in.a, args.k, args.budget);
            if (args.json) {
                report["rangeProperty"] = toJson(cert);
                report["kIndependence"] = indep ? Json(*indep) : Json(nullptr);
                emit(out, std::move(report), start);
            } else {
                printRange(out, cert);
                printRow(out, "k columns independent", indep ? (*indep ? "yes" : "no") : "k > min(m, n)");
            }
            return 0;
        }

        if (overlap->parsed()) {
            opt.coherenceFamily = false;
            opt.babelFamily = false;
        }
        if (analyze->parsed() || verify->parsed()) {
            if (in.b) in.scalings.push_back(phiDiagonalFromB(*in.b));
            try {
                in.scalings.push_back(svdScaling(in.a));
            } catch (const Error&) {
                // Reported below as a diagnostic of the verdict.
            }
        }
        UniquenessVerdict v = evaluate(in, opt);
        if (analyze->parsed() && std::none_of(in.scalings.begin(), in.scalings.end(), [](const ScalingSpec& s) {
                return s.kind == ScalingKind::SvdVt;
            }))
            v.diagnostics.push_back("svd scaling: needs full row rank and m <= n");

        if (args.json) {
            report["spark"] = toJson(v.spark);
            Json arr = Json::array();
            for (const auto& c : v.scaled) arr.push_back(toJson(c));
            report["scalings"] = std::move(arr);
            report["overlap"] = v.overlap ? toJson(*v.overlap) : Json(nullptr);
            report["rangeProperty"] = v.rangeProperty ? toJson(*v.rangeProperty) : Json(nullptr);
            report["verdict"] = toJson(v);
            report["diagnostics"] = v.diagnostics;
            emit(out, std::move(report), start);
        } else {
            if (!overlap->parsed()) {
                out << "coherence\n";
                printCoherence(out, v.spark.summary, v.spark.membership);
                printSpark(out, v.spark);
                for (const auto& c : v.scaled) printScaled(out, c);
            }
            if (v.overlap) printOverlap(out, *v.overlap);
            printVerdict(out, v);
            printDiagnostics(out, v.diagnostics);
        }
        if (verify->parsed() && v.conclusion != Conclusion::UniqueSparsest) return 1;
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace sparsecert
