#include "mpcoh/drive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mpcoh/errors.hpp"

namespace mpcoh {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Radicands this far below zero, relative to their terms, are rounding noise.
constexpr double kRadicandSlack = 1.0e-12;

struct Selection {
  double x = 0.0;
  Branch branch = Branch::None;
};

Selection select_root(const RootPair& roots, BranchPolicy policy) {
  if (roots.status != RootStatus::Real) return {};
  switch (policy) {
    case BranchPolicy::LeastIntensity:
      if (roots.x_minus >= 0.0) return {roots.x_minus, Branch::Minus};
      if (roots.x_plus >= 0.0) return {roots.x_plus, Branch::Plus};
      return {};
    case BranchPolicy::Plus:
      if (roots.x_plus >= 0.0) return {roots.x_plus, Branch::Plus};
      return {};
    case BranchPolicy::Minus:
      if (roots.x_minus >= 0.0) return {roots.x_minus, Branch::Minus};
      return {};
  }
  return {};
}

void fill_point(const ModelParams& params, const RateSet& rates, std::span<const double> grid,
                BranchPolicy policy, double eps_beta, std::size_t i, DriveProfile& out) {
  const RootPair roots = drive_roots(params, rates, grid[i], eps_beta);
  const Selection sel = select_root(roots, policy);
  out.x_plus[i] = roots.x_plus;
  out.x_minus[i] = roots.x_minus;
  out.branch[i] = sel.branch;
  out.gated[i] = sel.branch == Branch::None ? 1 : 0;
  // Store x as E*E so that the amplitude squares back to it exactly.
  const double e = std::sqrt(sel.x);
  out.e_amplitude[i] = e;
  out.x_chosen[i] = e * e;
}

void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw ParameterError("drive grid is empty");
  if (grid.front() != 0.0) throw ParameterError("drive grid must start at t = 0");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ParameterError("drive grid must be strictly increasing");
  }
}

}  // namespace

RootPair drive_roots(const ModelParams& params, const RateSet& rates, double t, double eps_beta) {
  RootPair out;
  out.t = t;
  const AlphaBeta ab = alpha_beta(params, rates, t);
  const double beta = ab.beta;
  if (beta == 0.0 || !(std::abs(beta) >= eps_beta * rates.kappa)) {
    out.status = RootStatus::DegenerateBeta;
    out.x_plus = out.x_minus = kNaN;
    return out;
  }

  const AlphaSumDiff sd = alpha_sum_diff(params, rates, t);
  const double c2 = coefficient_c2(params, rates, t);

  // (α-α*)^2 = -(diff_imag)^2, so the radicand is 4c2^2 - |α-α*|^2.
  const double four_c2_sq = 4.0 * c2 * c2;
  const double diff_sq = sd.diff_imag * sd.diff_imag;
  double radicand = four_c2_sq - diff_sq;
  if (radicand < 0.0) {
    if (radicand < -kRadicandSlack * (four_c2_sq + diff_sq)) {
      out.status = RootStatus::Complex;
      out.x_plus = out.x_minus = kNaN;
      return out;
    }
    radicand = 0.0;
  }

  const double abs_beta = std::abs(beta);
  const double linear = sd.sum / beta;  // (α+α*)/β
  const double half_width = 0.5 * std::sqrt(radicand) / abs_beta;
  const double abs_alpha = std::abs(ab.alpha);
  const double abs_c2 = std::abs(c2);
  const double product = ((abs_alpha - abs_c2) / abs_beta) * ((abs_alpha + abs_c2) / abs_beta);

  // Take the root without cancellation first, recover the other from the
  // product of the roots.
  if (linear >= 0.0) {
    const double far = -0.5 * linear - half_width;
    out.x_minus = far;
    out.x_plus = far != 0.0 ? product / far : 0.0;
  } else {
    const double far = -0.5 * linear + half_width;
    out.x_plus = far;
    out.x_minus = far != 0.0 ? product / far : 0.0;
  }
  if (out.x_minus > out.x_plus) std::swap(out.x_minus, out.x_plus);
  return out;
}

double root_residual(const ModelParams& params, const RateSet& rates, double t, double x) {
  const AlphaBeta ab = alpha_beta(params, rates, t);
  const double c2 = coefficient_c2(params, rates, t);
  const double linear = 2.0 * ab.alpha.real() / ab.beta;
  const double constant = (std::norm(ab.alpha) - c2 * c2) / (ab.beta * ab.beta);
  const double value = x * x + linear * x + constant;
  const double scale = x * x + std::abs(linear * x) + std::abs(constant);
  return scale > 0.0 ? std::abs(value) / scale : 0.0;
}

std::string_view to_string(BranchPolicy policy) {
  switch (policy) {
    case BranchPolicy::LeastIntensity: return "least";
    case BranchPolicy::Plus: return "plus";
    case BranchPolicy::Minus: return "minus";
  }
  return "least";
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::None: return "none";
    case Branch::Plus: return "plus";
    case Branch::Minus: return "minus";
  }
  return "none";
}

std::optional<BranchPolicy> parse_branch_policy(std::string_view text) {
  if (text == "least") return BranchPolicy::LeastIntensity;
  if (text == "plus") return BranchPolicy::Plus;
  if (text == "minus") return BranchPolicy::Minus;
  return std::nullopt;
}

std::optional<Branch> parse_branch(std::string_view text) {
  if (text == "none") return Branch::None;
  if (text == "plus") return Branch::Plus;
  if (text == "minus") return Branch::Minus;
  return std::nullopt;
}

std::vector<double> uniform_grid(double dt, double t_end) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("grid step dt must be > 0");
  if (!(t_end >= dt) || !std::isfinite(t_end)) throw ParameterError("grid end t_end must be >= dt");
  // Guard against t_end/dt landing a hair below an integer.
  const auto last = static_cast<std::size_t>(std::floor(t_end / dt * (1.0 + 1e-12)));
  std::vector<double> grid(last + 1);
  for (std::size_t i = 0; i <= last; ++i) grid[i] = static_cast<double>(i) * dt;
  return grid;
}

DriveProfile synthesize_profile(const ModelParams& params, std::span<const double> grid, BranchPolicy policy,
                                double eps_beta, Execution exec) {
  validate_grid(grid);
  const RateSet rates = derived_rates(params);

  const std::size_t n = grid.size();
  DriveProfile out;
  out.grid.assign(grid.begin(), grid.end());
  out.x_plus.resize(n);
  out.x_minus.resize(n);
  out.x_chosen.resize(n);
  out.e_amplitude.resize(n);
  out.gated.resize(n);
  out.branch.resize(n);

  if (exec == Execution::Parallel) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      fill_point(params, rates, grid, policy, eps_beta, static_cast<std::size_t>(i), out);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) fill_point(params, rates, grid, policy, eps_beta, i, out);
  }
  return out;
}

std::optional<double> detect_period(const DriveProfile& profile, double w_min) {
  const std::size_t n = profile.size();
  std::size_t i = 0;
  while (i < n) {
    if (!profile.gated[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && profile.gated[j + 1]) ++j;
    if (profile.grid[j] - profile.grid[i] >= w_min) return profile.grid[i];
    i = j + 1;
  }
  return std::nullopt;
}

void attach_period(DriveProfile& profile, double w_min) {
  profile.period_T = detect_period(profile, w_min);
  profile.period_index.reset();
  if (profile.period_T) {
    const auto it = std::lower_bound(profile.grid.begin(), profile.grid.end(), *profile.period_T);
    profile.period_index = static_cast<std::size_t>(it - profile.grid.begin());
  }
}

DriveProfile cyclic_extend(const DriveProfile& profile, double horizon) {
  if (!profile.period_T || !profile.period_index) {
    throw ParameterError("cyclic_extend: profile has no detected period T");
  }
  const double period = *profile.period_T;
  const std::size_t window = *profile.period_index;
  if (!(period > 0.0) || window == 0) throw ParameterError("cyclic_extend: period T must be positive");

  DriveProfile out;
  out.period_T = profile.period_T;
  out.period_index = profile.period_index;
  auto copy_point = [&](double t, std::size_t src) {
    out.grid.push_back(t);
    out.x_plus.push_back(profile.x_plus[src]);
    out.x_minus.push_back(profile.x_minus[src]);
    out.x_chosen.push_back(profile.x_chosen[src]);
    out.e_amplitude.push_back(profile.e_amplitude[src]);
    out.gated.push_back(profile.gated[src]);
    out.branch.push_back(profile.branch[src]);
  };

  if (horizon <= period) {
    for (std::size_t i = 0; i < profile.size() && profile.grid[i] <= horizon; ++i) copy_point(profile.grid[i], i);
    return out;
  }
  for (std::size_t cycle = 0;; ++cycle) {
    const double offset = static_cast<double>(cycle) * period;
    if (offset > horizon) break;
    for (std::size_t i = 0; i < window; ++i) {
      const double t = offset + profile.grid[i];
      if (t > horizon) return out;
      copy_point(t, i);
    }
  }
  return out;
}

DriveSummary summarize(const ModelParams& params, const DriveProfile& profile) {
  const RateSet rates = derived_rates(params);
  DriveSummary s;
  s.period_T = profile.period_T;
  std::size_t gated = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile.gated[i]) {
      ++gated;
      continue;
    }
    s.peak_x = std::max(s.peak_x, profile.x_chosen[i]);
    const CoefficientSample c = sample_coefficients(params, rates, profile.grid[i], profile.x_chosen[i]);
    const double scale = std::norm(c.c1) + c.c2 * c.c2;
    s.max_abs_det = std::max(s.max_abs_det, std::abs(c.det));
    if (scale > 0.0) s.max_rel_det = std::max(s.max_rel_det, std::abs(c.det) / scale);
  }
  s.gated_fraction = profile.size() ? static_cast<double>(gated) / static_cast<double>(profile.size()) : 0.0;
  return s;
}

}  // namespace mpcoh
