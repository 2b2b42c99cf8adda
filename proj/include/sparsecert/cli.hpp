#pragma once

#include "sparsecert/engine.hpp"
#include "sparsecert/linalg.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

namespace sparsecert {

enum class MatrixFormat { Csv, Json };

/// ".json" selects Json, anything else Csv.
MatrixFormat formatForPath(const std::filesystem::path& path);

/// CSV: one row per line, comma-separated decimals; blank lines and lines
/// starting with '#' are skipped. JSON: {"rows": m, "cols": n, "data": [...]}
/// in row-major order. Throws ParseError with a 1-based line and column,
/// or DimensionMismatch when the declared shape and data disagree.
DenseMatrix parseMatrixText(std::string_view text, MatrixFormat format);

/// Reads and parses a file; an unreadable file is a ParseError at 0:0.
DenseMatrix parseMatrix(const std::filesystem::path& path, std::optional<MatrixFormat> format = std::nullopt);

/// A vector stored as a single row or a single column.
Vector parseVector(const std::filesystem::path& path, std::optional<MatrixFormat> format = std::nullopt);

inline constexpr int kReportSchemaVersion = 1;

using Json = nlohmann::ordered_json;

// Report fragments. Non-finite numbers become the strings "inf", "-inf" or
// "nan"; column indices are 1-based.
Json toJson(const CoherenceSummary& s);
Json toJson(const BabelProfile& p);
Json toJson(const SparkReport& r);
Json toJson(const ScaledCertificates& c);
Json toJson(const SupportOverlap& o);
Json toJson(const RangePropertyCertificate& c);
Json toJson(const UniquenessVerdict& v);

/// Entry point of the command-line tool. Returns 0 on success, 1 when
/// `verify` could not certify the candidate, 2 on usage or input errors.
int runCommand(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sparsecert
