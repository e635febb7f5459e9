#pragma once

#include <stdexcept>
#include <string>

namespace nl {

struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

/// An operator field violates J^2 = -id beyond tolerance.
struct InvalidStructureError : std::runtime_error {
  explicit InvalidStructureError(const std::string& what)
      : std::runtime_error(what) {}
};

struct InvalidInputError : std::runtime_error {
  explicit InvalidInputError(const std::string& what)
      : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nl
