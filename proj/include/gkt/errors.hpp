#pragma once

#include <stdexcept>
#include <string>

namespace gkt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};

// presentation
struct InvalidRelation : Error {
    using Error::Error;
};
struct NotAdmissibleWithinBound : Error {
    using Error::Error;
};

// rep / gorenstein
struct FieldUnsupported : Error {
    using Error::Error;
};
struct AlgebraMismatch : Error {
    using Error::Error;
};
struct NotGPInput : Error {
    using Error::Error;
};
struct CatalogUnknown : Error {
    using Error::Error;
};

// ktheory
struct NotInvertible : Error {
    using Error::Error;
};
struct UnsupportedRing : Error {
    using Error::Error;
};
struct NoncommutativeStableEnd : Error {
    using Error::Error;
};

/// Syntax or semantic error in an input file, with 1-based line/column.
struct ParseError : Error {
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

}  // namespace gkt
