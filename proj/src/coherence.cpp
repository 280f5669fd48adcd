#include "mpcoh/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "mpcoh/errors.hpp"

namespace mpcoh {

namespace {

using Vec2 = Eigen::Vector2cd;

// Unit vector v with (A - λ I) v = 0, A symmetric 2x2 (so left = right).
Vec2 kernel_vector(const Eigen::Matrix2cd& generator, cplx lambda, const Vec2& fallback) {
  const Eigen::Matrix2cd shifted = generator.transpose() - lambda * Eigen::Matrix2cd::Identity();
  const Vec2 from_row0(-shifted(0, 1), shifted(0, 0));
  const Vec2 from_row1(shifted(1, 1), -shifted(1, 0));
  const Vec2& pick = from_row0.norm() >= from_row1.norm() ? from_row0 : from_row1;
  const double scale = generator.norm();
  if (pick.norm() <= 1e-14 * scale || pick.norm() == 0.0) return fallback;
  return pick / pick.norm();
}

struct Coefficients {
  cplx c1;
  double c2;
};

class CoefficientSource {
 public:
  CoefficientSource(const ModelParams& params, std::span<const double> grid, std::span<const double> drive_x)
      : params_(params), rates_(derived_rates(params)), grid_(grid), drive_x_(drive_x) {}

  double drive_term(std::size_t i) const {
    if (drive_x_.empty()) return 0.0;
    return alpha_beta(params_, rates_, grid_[i]).beta * drive_x_[i];
  }

  // Coefficients at time tau inside interval [grid[i], grid[i+1]].
  Coefficients at(double tau, std::size_t i, double b0, double b1) const {
    const double span = grid_[i + 1] - grid_[i];
    const double frac = (tau - grid_[i]) / span;
    const cplx alpha = alpha_beta(params_, rates_, tau).alpha;
    return {alpha + (b0 + (b1 - b0) * frac), coefficient_c2(params_, rates_, tau)};
  }

  Coefficients at_node(std::size_t i) const {
    const AlphaBeta ab = alpha_beta(params_, rates_, grid_[i]);
    const double x = drive_x_.empty() ? 0.0 : drive_x_[i];
    return {coefficient_c1(ab.alpha, ab.beta, x), coefficient_c2(params_, rates_, grid_[i])};
  }

 private:
  const ModelParams& params_;
  RateSet rates_;
  std::span<const double> grid_;
  std::span<const double> drive_x_;
};

Vec2 rhs(const Coefficients& c, const Vec2& y, Representation rep) {
  if (rep == Representation::ConjugateConstrained) {
    const cplx d = c.c1 * y(0) - c.c2 * std::conj(y(0));
    return Vec2(d, std::conj(d));
  }
  return Vec2(c.c1 * y(0) - c.c2 * y(1), std::conj(c.c1) * y(1) - c.c2 * y(0));
}

std::vector<Vec2> integrate(const CoefficientSource& source, std::span<const double> grid, Vec2 y0,
                            Representation rep, int substeps) {
  std::vector<Vec2> out;
  out.reserve(grid.size());
  out.push_back(y0);
  Vec2 y = y0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double b0 = source.drive_term(i);
    const double b1 = source.drive_term(i + 1);
    const double h = (grid[i + 1] - grid[i]) / substeps;
    for (int s = 0; s < substeps; ++s) {
      const double t = grid[i] + s * h;
      const Coefficients c_start = source.at(t, i, b0, b1);
      const Coefficients c_mid = source.at(t + 0.5 * h, i, b0, b1);
      const Coefficients c_end = source.at(s + 1 == substeps ? grid[i + 1] : t + h, i, b0, b1);
      const Vec2 k1 = rhs(c_start, y, rep);
      const Vec2 k2 = rhs(c_mid, y + (0.5 * h) * k1, rep);
      const Vec2 k3 = rhs(c_mid, y + (0.5 * h) * k2, rep);
      const Vec2 k4 = rhs(c_end, y + h * k3, rep);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (rep == Representation::ConjugateConstrained) y(1) = std::conj(y(0));
    if (!std::isfinite(y(0).real()) || !std::isfinite(y(0).imag()) || !std::isfinite(y(1).real()) ||
        !std::isfinite(y(1).imag())) {
      char msg[96];
      std::snprintf(msg, sizeof msg, "evolve: non-finite coherence at t = %.6e", grid[i + 1]);
      throw NumericalFailure(msg);
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace

Eigen::Matrix2cd generator_matrix(cplx c1, double c2) {
  Eigen::Matrix2cd m;
  m << c1, -c2, -c2, std::conj(c1);
  return m;
}

GeneratorModes generator_modes(const Eigen::Matrix2cd& generator) {
  const cplx half_trace = 0.5 * generator.trace();
  const cplx det = generator.determinant();
  const cplx disc = std::sqrt(half_trace * half_trace - det);
  const cplx la = half_trace + disc;
  const cplx lb = half_trace - disc;
  const cplx big = std::abs(la) >= std::abs(lb) ? la : lb;
  // Recover the small eigenvalue from the determinant to avoid cancellation.
  const cplx small = big != cplx(0.0) ? det / big : cplx(0.0);

  GeneratorModes modes;
  modes.lambda_null = small;
  modes.lambda_other = big;
  modes.null_functional = kernel_vector(generator, small, Vec2(1.0, 0.0));
  modes.other_functional = kernel_vector(generator, big, Vec2(0.0, 1.0));
  return modes;
}

CoherenceTrajectory evolve(const ModelParams& params, std::span<const double> grid, std::span<const double> drive_x,
                           CoherenceState rho0, const EvolveOptions& options) {
  params.validate();
  if (grid.empty()) throw ParameterError("evolve: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ParameterError("evolve: grid must be strictly increasing");
  }
  if (!drive_x.empty() && drive_x.size() != grid.size()) {
    throw ParameterError("evolve: drive has " + std::to_string(drive_x.size()) + " samples for a grid of " +
                         std::to_string(grid.size()));
  }
  for (double x : drive_x) {
    if (!std::isfinite(x) || x < 0.0) throw ParameterError("evolve: drive intensities must be finite and >= 0");
  }
  if (options.substeps < 1) throw ParameterError("evolve: substeps must be >= 1");
  if (std::abs(rho0.rho_mp) > 0.5 + 1e-15 || std::abs(rho0.rho_pm) > 0.5 + 1e-15) {
    throw ParameterError("evolve: initial coherence must satisfy |rho| <= 1/2");
  }
  if (options.representation == Representation::ConjugateConstrained) rho0.rho_pm = std::conj(rho0.rho_mp);

  const CoefficientSource source(params, grid, drive_x);
  const Vec2 y0(rho0.rho_mp, rho0.rho_pm);

  std::vector<Vec2> states = integrate(source, grid, y0, options.representation, options.substeps);
  double halving = 0.0;
  if (options.check_halving) {
    std::vector<Vec2> fine = integrate(source, grid, y0, options.representation, 2 * options.substeps);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double denom = std::max(fine[i].norm(), 1e-300);
      halving = std::max(halving, (fine[i] - states[i]).norm() / denom);
    }
    if (halving > options.halving_tolerance) {
      char msg[160];
      std::snprintf(msg, sizeof msg, "evolve: step halving changed the solution by %.3e (relative, tolerance %.1e); "
                    "raise substeps or refine the grid", halving, options.halving_tolerance);
      throw NumericalFailure(msg);
    }
    states = std::move(fine);
  }

  CoherenceTrajectory traj;
  traj.grid.assign(grid.begin(), grid.end());
  traj.halving_deviation = halving;
  const std::size_t n = grid.size();
  traj.states.resize(n);
  traj.c1.resize(n);
  traj.c2.resize(n);
  traj.det_trace.resize(n);
  traj.null_mode_abs.resize(n);
  traj.other_mode_abs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Coefficients c = source.at_node(i);
    traj.states[i] = {states[i](0), states[i](1)};
    traj.c1[i] = c.c1;
    traj.c2[i] = c.c2;
    traj.det_trace[i] = determinant(c.c1, c.c2);
    const GeneratorModes modes = generator_modes(generator_matrix(c.c1, c.c2));
    traj.null_mode_abs[i] = std::abs((modes.null_functional.transpose() * states[i]).value());
    traj.other_mode_abs[i] = std::abs((modes.other_functional.transpose() * states[i]).value());
  }
  return traj;
}

cplx analytic_rhs(const ModelParams& params, const RateSet& rates, double t, const Eigen::Matrix2cd& rho_s, double x) {
  const CoefficientSample s = sample_coefficients(params, rates, t, x);
  return s.c1 * rho_s(1, 0) - s.c2 * rho_s(0, 1);
}

}  // namespace mpcoh
