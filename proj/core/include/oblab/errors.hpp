#pragma once

#include <stdexcept>
#include <string>

namespace oblab {

// Base class for everything the lab throws on a contract violation.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Circuit DSL syntax / semantic errors, with 1-based source position.
struct ParseError : Error {
    ParseError(int l, int c, const std::string& what)
        : Error("parse error at line " + std::to_string(l) + ", col " +
                std::to_string(c) + ": " + what),
          line(l), col(c) {}
    int line;
    int col;
};

// An operand width or bit-string length does not match the declared one.
struct WidthError : Error {
    using Error::Error;
};

// Parameter outside its valid range (key sizes, domain bits, profiles...).
struct ParamError : Error {
    using Error::Error;
};

// A configured memory / scan / query budget would be exceeded.
struct BudgetError : Error {
    using Error::Error;
};

// Circuit does not fit the m-bit encoding layout.
struct NotEncodableError : Error {
    using Error::Error;
};

// Punctured key asked to evaluate at its own punctured point.
struct PuncturedPointError : Error {
    using Error::Error;
};

}  // namespace oblab
