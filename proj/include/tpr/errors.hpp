#pragma once

#include <stdexcept>
#include <string>

namespace tpr {

enum class ErrorKind {
    domain,
    eos_invalid,
    state_decode,
    inadmissible_wave,
    numerics,
    degenerate_shock,
    degenerate_jump,
    not_a_discontinuity,
    out_of_fan,
    construction,
    positivity,
    relaxation,
    config,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace tpr
