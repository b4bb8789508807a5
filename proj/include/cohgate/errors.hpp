#pragma once

#include <stdexcept>
#include <string>

namespace cohgate {

// Malformed or out-of-range input; the CLI maps it to exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& m) : std::runtime_error(m) {}
};

// A requested exact check did not hold.
struct CheckFailure : std::runtime_error {
    explicit CheckFailure(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace cohgate
