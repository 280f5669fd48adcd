#pragma once

#include <numbers>

namespace mpcoh {

/// Physical constants of the multiphoton two-state model.
///
/// Time is in seconds and frequencies in rad/s. The field enters only through
/// the intensity x = E*E, reported in units where |d|^2 = d_sq.
struct ModelParams {
  double omega0 = 1.0e11;  ///< two-state transition frequency
  double delta = 0.0;      ///< detuning k*omega - omega0
  int k = 1;               ///< photons exchanged per transition
  int m = 100;             ///< reservoir Fock occupation
  double g_sq = 1.0;       ///< |g|^2, noise coupling
  double d_sq = 1.0;       ///< |d|^2, drive dipole coupling

  /// Throws ParameterError naming the first violated invariant.
  void validate() const;
};

/// Rates derived from the reservoir occupation.
struct RateSet {
  double r_plus = 0.0;   ///< (m+k)!/m!
  double r_minus = 0.0;  ///< m!/(m-k)!
  double g_plus = 0.0;   ///< |g|^2 r_plus
  double g_sum = 0.0;    ///< |g|^2 (r_plus + r_minus)
  double kappa = 0.0;    ///< |d|^2 / (2 omega0)
};

/// prod_{j=1..k} (m+j), accumulated in floating point so that m = 100 does
/// not overflow through raw factorials.
double rising_ratio(int m, int k);

/// prod_{j=0..k-1} (m-j). Requires m >= k.
double falling_ratio(int m, int k);

RateSet derived_rates(const ModelParams& params);

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace mpcoh
