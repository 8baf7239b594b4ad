#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mink {

enum class Errc {
    parse = 1,
    unknown_function,
    unbound_variable,
    domain,
    pole,
    degenerate_curvature,
    lightlike_normal,
    straight_null_line,
    degenerate_frame,
    not_normalized,
    precondition,
    kappa_not_one,
    sigma_singular,
    range,
    empty_grid,
    insufficient_samples,
    no_convergence,
    frame_blowup,
    invalid_argument,
    internal,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Parse failure with the byte offset into the input text.
class ParseError : public Error {
public:
    ParseError(Errc code, std::size_t offset, const std::string& msg)
        : Error(code, "offset " + std::to_string(offset) + ": " + msg), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace mink
