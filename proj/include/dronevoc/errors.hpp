#pragma once

#include <stdexcept>
#include <string>

namespace dronevoc {

// Bad inputs: config schema, malformed files, contract violations. CLI exit 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failures: controller divergence, audio clipping. CLI exit 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dronevoc
