#pragma once

#include <stdexcept>
#include <string>

namespace holo {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// invalid input for an operation (wrong variable, non-admissible term, ...)
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// a recurrence cannot determine a value at a singular index
struct SingularIndexError : Error {
    long index;
    SingularIndexError(const std::string& msg, long idx) : Error(msg), index(idx) {}
};

// cooperative step budget exhausted (long Groebner runs etc.)
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

// Zeilberger order loop exhausted without finding a recurrence
struct OrderExceeded : Error {
    explicit OrderExceeded(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    int line, column;
    std::string expected;
    ParseError(const std::string& msg, int l, int c, std::string exp = "")
        : Error(msg), line(l), column(c), expected(std::move(exp)) {}
};

}  // namespace holo
