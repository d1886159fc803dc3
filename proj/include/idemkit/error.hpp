#pragma once

#include <stdexcept>
#include <string>

namespace idemkit {

// Raised when an input violates a documented invariant (unnormalized
// density, space mismatch, malformed document). The CLI maps it to exit 2.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) throw ValidationError(message);
}

}  // namespace detail
}  // namespace idemkit
