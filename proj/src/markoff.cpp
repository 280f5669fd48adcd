#include "mpcoh/markoff.hpp"

#include <cmath>

namespace mpcoh {

double sinc(double z) {
  if (std::abs(z) < kSeriesThreshold) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0));
  }
  return std::sin(z) / z;
}

cplx phase_integral(double delta, double t) {
  const double half = 0.5 * delta * t;
  return std::polar(t * sinc(half), -half);
}

AlphaBeta alpha_beta(const ModelParams& params, const RateSet& rates, double t) {
  return {-rates.g_sum * phase_integral(params.delta, t), rates.kappa * std::sin(params.omega0 * t)};
}

double coefficient_c2(const ModelParams& params, const RateSet& rates, double t) {
  const cplx pi = phase_integral(params.delta, t);
  return -2.0 * rates.g_plus * pi.real();
}

AlphaSumDiff alpha_sum_diff(const ModelParams& params, const RateSet& rates, double t) {
  // 2 sin(δt)/δ = 2t sinc(δt);  2(1 - cos δt)/δ = 2t sin(δt/2) sinc(δt/2).
  const double half = 0.5 * params.delta * t;
  AlphaSumDiff out;
  out.sum = -rates.g_sum * 2.0 * t * sinc(params.delta * t);
  // -g_sum * (2(1-cos δt)/δ) / i = i * g_sum * 2(1-cos δt)/δ
  out.diff_imag = rates.g_sum * 2.0 * t * std::sin(half) * sinc(half);
  return out;
}

CoefficientSample sample_coefficients(const ModelParams& params, const RateSet& rates, double t, double x) {
  const AlphaBeta ab = alpha_beta(params, rates, t);
  CoefficientSample s;
  s.t = t;
  s.alpha = ab.alpha;
  s.beta = ab.beta;
  s.c1 = coefficient_c1(ab.alpha, ab.beta, x);
  s.c2 = coefficient_c2(params, rates, t);
  s.det = determinant(s.c1, s.c2);
  return s;
}

}  // namespace mpcoh
