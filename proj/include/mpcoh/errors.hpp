#pragma once

#include <stdexcept>
#include <string>

namespace mpcoh {

/// Invalid model parameters or configuration. Maps to CLI exit code 1.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Non-finite values, integrator divergence or unconverged step halving.
/// Maps to CLI exit code 2.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mpcoh
