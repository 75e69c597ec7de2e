#pragma once

#include <stdexcept>
#include <string>

namespace blockising {

// Thrown when a requested computation exceeds a configured budget
// (e.g. weight tables beyond the memory limit).
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a numeric routine fails to deliver its contract
// (non-finite values, quadrature non-convergence).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when external input (batch files, configs) cannot be parsed.
class MalformedInputError : public std::runtime_error {
public:
    explicit MalformedInputError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace blockising
