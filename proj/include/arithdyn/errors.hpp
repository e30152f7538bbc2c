#pragma once

#include <stdexcept>
#include <string>

namespace arithdyn {

// Bad user input: shape mismatches, off-curve points, malformed fans.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Desk-scale limits exceeded: dimension caps, digit budgets, ray counts.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace arithdyn
