#ifndef HOSOS_ERRORS_HPP
#define HOSOS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hosos {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by the term/spec text parsers; line is 1-based, 0 when unknown.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg), line(line_) {}
};

struct ArityMismatch : Error {
    using Error::Error;
};

struct UnboundMetavariable : Error {
    std::string name;
    explicit UnboundMetavariable(const std::string& n)
        : Error("unbound metavariable: " + n), name(n) {}
};

// A rule target mentions a metavariable its premises do not bind.
struct ScopeError : Error {
    std::string variable;
    ScopeError(const std::string& where, const std::string& var)
        : Error(where + ": metavariable out of scope: " + var), variable(var) {}
};

struct ConflictingRules : Error {
    using Error::Error;
};

struct IncompleteSpec : Error {
    using Error::Error;
};

struct UniverseMismatch : Error {
    UniverseMismatch() : Error("relations are over different universes") {}
};

struct ScopeMismatch : Error {
    using Error::Error;
};

} // namespace hosos

#endif
