#pragma once

#include <stdexcept>
#include <string>

namespace chirpwave {

/// Raised when a numerical guard trips: aliasing near Nyquist, a quadrature
/// that fails to converge, or an oracle grid that would exceed its size cap.
/// The CLI maps this family to exit code 1 (argument errors map to 2).
class numerical_guard_error : public std::runtime_error {
public:
    explicit numerical_guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

class aliasing_error : public numerical_guard_error {
public:
    explicit aliasing_error(const std::string& msg) : numerical_guard_error(msg) {}
};

class quadrature_error : public numerical_guard_error {
public:
    explicit quadrature_error(const std::string& msg) : numerical_guard_error(msg) {}
};

}  // namespace chirpwave
