#pragma once

#include <stdexcept>
#include <string>

namespace linespec {

/// Numerical routine failed to produce a usable result (eigensolver breakdown,
/// degenerate null space, singular interpolation system, ...).
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// A sampling or iteration budget was exhausted before success.
class resource_exhausted : public std::runtime_error {
public:
  explicit resource_exhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace linespec
