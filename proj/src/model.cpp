#include "mpcoh/model.hpp"

#include <cmath>
#include <string>

#include "mpcoh/errors.hpp"

namespace mpcoh {

void ModelParams::validate() const {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw ParameterError("invariant omega0 > 0 violated (omega0 = " + std::to_string(omega0) + ")");
  }
  if (!std::isfinite(delta)) throw ParameterError("invariant: delta must be finite");
  if (k < 1) throw ParameterError("invariant k >= 1 violated (k = " + std::to_string(k) + ")");
  if (m < k) {
    throw ParameterError("invariant m >= k violated (m = " + std::to_string(m) +
                         ", k = " + std::to_string(k) + ")");
  }
  if (!(g_sq >= 0.0) || !std::isfinite(g_sq)) throw ParameterError("invariant g_sq >= 0 violated");
  if (!(d_sq > 0.0) || !std::isfinite(d_sq)) throw ParameterError("invariant d_sq > 0 violated");
}

double rising_ratio(int m, int k) {
  if (m < 0 || k < 0) throw ParameterError("rising_ratio: m and k must be non-negative");
  double product = 1.0;
  for (int j = 1; j <= k; ++j) product *= static_cast<double>(m + j);
  return product;
}

double falling_ratio(int m, int k) {
  if (m < 0 || k < 0) throw ParameterError("falling_ratio: m and k must be non-negative");
  if (m < k) throw ParameterError("falling_ratio: occupation m >= k required");
  // Multiply from the small end so partial products stay below the result.
  double product = 1.0;
  for (int j = k - 1; j >= 0; --j) product *= static_cast<double>(m - j);
  return product;
}

RateSet derived_rates(const ModelParams& params) {
  params.validate();
  RateSet rates;
  rates.r_plus = rising_ratio(params.m, params.k);
  rates.r_minus = falling_ratio(params.m, params.k);
  rates.g_plus = params.g_sq * rates.r_plus;
  rates.g_sum = params.g_sq * (rates.r_plus + rates.r_minus);
  rates.kappa = params.d_sq / (2.0 * params.omega0);
  return rates;
}

}  // namespace mpcoh
