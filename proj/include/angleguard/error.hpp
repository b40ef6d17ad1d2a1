#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace angleguard {

enum class ErrorKind {
    input,          // malformed or non-finite input, shape mismatch, zero vector
    not_positive,   // matrix is not positive semidefinite within slack
    precondition,   // operation-specific precondition violated
    degenerate,     // linearly dependent vectors where independence is required
    excluded_angle, // theta coincides with the angle between the inputs
    zero_map,       // operation needs a nonzero map
    usage,          // unknown suite or generator, invalid harness configuration
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::input: return "input-error";
    case ErrorKind::not_positive: return "not-positive";
    case ErrorKind::precondition: return "precondition-error";
    case ErrorKind::degenerate: return "degenerate-error";
    case ErrorKind::excluded_angle: return "excluded-angle-error";
    case ErrorKind::zero_map: return "zero-map-error";
    case ErrorKind::usage: return "usage-error";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace angleguard
