#pragma once

#include <stdexcept>
#include <string>

namespace nvrf {

/// Raised when a sampling grid is too coarse for the requested evaluation,
/// or a probe region contains too few usable nodes.
class ResolutionError : public std::runtime_error {
public:
  explicit ResolutionError(const std::string &what) : std::runtime_error(what) {}
};

/// Raised on malformed or out-of-range configuration input.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

namespace detail {

inline void require_positive(double v, const char *name) {
  if (!(v > 0.0)) {
    throw std::domain_error(std::string(name) + " must be positive");
  }
}

inline void require_finite_positive(double v, const char *name) {
  if (!(v > 0.0) || v != v || v > 1.0e308) {
    throw std::domain_error(std::string(name) + " must be finite and positive");
  }
}

} // namespace detail
} // namespace nvrf
