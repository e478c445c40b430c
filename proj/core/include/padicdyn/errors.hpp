#pragma once

#include <stdexcept>
#include <string>

namespace padicdyn {

/// Thrown when a computation would exceed a configured node/work bound.
class resource_error : public std::runtime_error {
public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a requested output would need more p-adic digits than the
/// operands carry.
class precision_error : public std::runtime_error {
public:
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace padicdyn
