#pragma once

#include <stdexcept>
#include <string>

namespace latc {

/// Malformed input data (CSV cells, config lines, mask files).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Shape mismatch between matrices, tensors, or file contents.
struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid or inconsistent solver/scenario configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace latc
