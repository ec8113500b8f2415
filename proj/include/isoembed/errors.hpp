#pragma once

#include <stdexcept>
#include <string>

namespace isoembed {

/// Thrown when a frame's pointwise Gram matrix is (near-)singular or too ill
/// conditioned for the span solves to be trusted.
class FreenessError : public std::runtime_error {
 public:
  explicit FreenessError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown for unusable run configurations: unknown scenario names, malformed
/// perturbation specs, metrics that fail validation.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace isoembed
