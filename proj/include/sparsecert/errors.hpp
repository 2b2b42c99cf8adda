#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparsecert {

// Base of every error raised by the library. Callers that only care about
// "the analysis failed" catch this; the derived types carry the detail.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ZeroColumn : public Error {
public:
    explicit ZeroColumn(std::size_t column)
        : Error("column " + std::to_string(column) + " has zero l2-norm"), column_(column) {}
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

// All off-diagonal Gram entries tie with mu, so the sub-mutual coherence
// does not exist.
class DegenerateCoherence : public Error {
public:
    using Error::Error;
};

class NotApplicable : public Error {
public:
    using Error::Error;
};

class MissingThreshold : public Error {
public:
    using Error::Error;
};

// Enumeration stopped before finishing. sizeReached is the largest subset
// size that was fully checked, so the spark is certified to exceed it.
class BudgetExhausted : public Error {
public:
    BudgetExhausted(const std::string& what, std::size_t sizeReached)
        : Error(what), sizeReached_(sizeReached) {}
    std::size_t sizeReached() const noexcept { return sizeReached_; }

private:
    std::size_t sizeReached_;
};

class SingularScaling : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    using Error::Error;
};

class Infeasible : public Error {
public:
    using Error::Error;
};

class NumericalBreakdown : public Error {
public:
    using Error::Error;
};

class CycleDetected : public Error {
public:
    using Error::Error;
};

class NoApplicableCriterion : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace sparsecert
