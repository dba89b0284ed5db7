#pragma once

#include <stdexcept>
#include <string>

namespace polcum {

/// Ground-state degeneracy prevents the requested construction
/// (frontier degeneracy deeper than two-fold, a parameter-space path
/// crossing a degeneracy point, fidelity at a degenerate endpoint).
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

/// A quantity has no defined value for the given input (metallic /
/// flat-distribution polarization, gapless band cumulants).
class UndefinedQuantityError : public std::runtime_error {
 public:
  explicit UndefinedQuantityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polcum
