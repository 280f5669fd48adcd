#pragma once

#include <complex>

#include "mpcoh/model.hpp"

namespace mpcoh {

using cplx = std::complex<double>;

/// Below this |z| the sinc and versine kernels switch to their Taylor series.
inline constexpr double kSeriesThreshold = 1.0e-4;

/// sin(z)/z, exact 1 at z = 0.
double sinc(double z);

/// (1 - exp(-iδt)) / (iδ), evaluated as t e^{-iδt/2} sinc(δt/2).
/// Continuous through δ = 0 where it equals t.
cplx phase_integral(double delta, double t);

struct AlphaBeta {
  cplx alpha;   ///< -g_sum (1 - e^{-iδt})/(iδ)
  double beta;  ///< kappa sin(ω0 t)
};

AlphaBeta alpha_beta(const ModelParams& params, const RateSet& rates, double t);

/// -g_plus [pi + conj(pi)] with pi = phase_integral. Real by construction.
double coefficient_c2(const ModelParams& params, const RateSet& rates, double t);

inline cplx coefficient_c1(cplx alpha, double beta, double x) { return alpha + beta * x; }

/// α + α* (real) and α - α* = i * diff_imag (purely imaginary), each from its
/// own closed form rather than from α.
struct AlphaSumDiff {
  double sum = 0.0;
  double diff_imag = 0.0;
};

AlphaSumDiff alpha_sum_diff(const ModelParams& params, const RateSet& rates, double t);

/// Everything the drive and the integrator need at one instant.
struct CoefficientSample {
  double t = 0.0;
  cplx alpha;
  double beta = 0.0;
  cplx c1;
  double c2 = 0.0;
  double det = 0.0;  ///< |c1|^2 - c2^2
};

CoefficientSample sample_coefficients(const ModelParams& params, const RateSet& rates, double t, double x);

inline double determinant(cplx c1, double c2) { return std::norm(c1) - c2 * c2; }

}  // namespace mpcoh
