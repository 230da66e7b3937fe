#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tickmoments {

/// Invalid argument or configuration (non-positive width, n_max out of range, alpha outside (0,1), ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Trades handed to an aggregation routine were not sorted by time.
class InputOrderError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A statistic was requested over an empty (or degenerate where forbidden) sample.
class UndefinedStatistic : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// No trade exists at or before the requested lookback time.
class InsufficientHistory : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A secondary window lacks past-value means for some of its points.
class IncompleteWindow : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed input data. Carries the 1-based line number when known (0 otherwise).
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace tickmoments
