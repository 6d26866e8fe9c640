#pragma once

#include <stdexcept>
#include <string>

namespace prismcalc {

struct PrimeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct FieldMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ShapeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotMonic : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotEisenstein : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroDivisor : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotIntegral : std::domain_error {
    using std::domain_error::domain_error;
};

struct NonzeroConstantTerm : std::domain_error {
    using std::domain_error::domain_error;
};

// A valuation or hull vertex cannot be certified at the tracked precision.
struct PrecisionInsufficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The n! precision margin ran out mid-computation.
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int ln, int col, const std::string& what)
        : std::runtime_error("line " + std::to_string(ln) + ", col " + std::to_string(col) + ": " + what),
          line(ln), column(col) {}
};

} // namespace prismcalc
