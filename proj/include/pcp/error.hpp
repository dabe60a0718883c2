#ifndef PCP_ERROR_HPP
#define PCP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pcp {

// Errors caused by bad input (files, datasets, degenerate numerics).
// The CLI maps these to exit code 1; anything else is an internal
// failure and maps to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInput : DataError {
    using DataError::DataError;
};

struct ParseError : DataError {
    ParseError(const std::string& what, int line)
        : DataError(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    int line_number;
};

struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

#define PCP_CHECK(cond, msg)                                 \
    do {                                                     \
        if (!(cond)) throw ::pcp::InternalError(msg);        \
    } while (0)

}  // namespace pcp

#endif
