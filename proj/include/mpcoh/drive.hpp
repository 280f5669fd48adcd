#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mpcoh/execution.hpp"
#include "mpcoh/markoff.hpp"
#include "mpcoh/model.hpp"

namespace mpcoh {

/// Default |beta| gate, relative to kappa.
inline constexpr double kDefaultEpsBeta = 1.0e-6;

enum class RootStatus : std::uint8_t {
  Real,            ///< both roots finite and real
  DegenerateBeta,  ///< |beta| < eps_beta * kappa, roots undefined
  Complex,         ///< radicand negative, no real intensity exists
};

/// Roots x± of x^2 + ((α+α*)/β) x + (α*α - c2^2)/β^2 = 0 at one instant.
/// x_plus and x_minus are NaN unless status == Real.
struct RootPair {
  double t = 0.0;
  double x_plus = 0.0;
  double x_minus = 0.0;
  RootStatus status = RootStatus::Real;

  bool degenerate_beta() const { return status == RootStatus::DegenerateBeta; }
};

RootPair drive_roots(const ModelParams& params, const RateSet& rates, double t,
                     double eps_beta = kDefaultEpsBeta);

/// Relative residual of x in the quadratic above (0 for an exact root).
double root_residual(const ModelParams& params, const RateSet& rates, double t, double x);

enum class BranchPolicy { LeastIntensity, Plus, Minus };

enum class Branch : std::uint8_t { None, Plus, Minus };

std::string_view to_string(BranchPolicy policy);
std::string_view to_string(Branch branch);
std::optional<BranchPolicy> parse_branch_policy(std::string_view text);
std::optional<Branch> parse_branch(std::string_view text);

/// Drive intensity on a time grid. Gated points carry x_chosen = 0 and E = 0.
struct DriveProfile {
  std::vector<double> grid;
  std::vector<double> x_plus;
  std::vector<double> x_minus;
  std::vector<double> x_chosen;
  std::vector<double> e_amplitude;
  std::vector<std::uint8_t> gated;
  std::vector<Branch> branch;
  std::optional<double> period_T;
  std::optional<std::size_t> period_index;  ///< grid index of period_T

  std::size_t size() const { return grid.size(); }
};

/// Uniform grid t_i = i * dt for i = 0 .. floor(t_end / dt).
std::vector<double> uniform_grid(double dt, double t_end);

/// Per-point root solve and branch selection. Throws ParameterError for an
/// empty grid or one that does not start at 0 and increase strictly.
DriveProfile synthesize_profile(const ModelParams& params, std::span<const double> grid,
                                BranchPolicy policy = BranchPolicy::LeastIntensity,
                                double eps_beta = kDefaultEpsBeta,
                                Execution exec = Execution::Serial);

/// Start of the first gated run whose span (last - first gated time) is at
/// least w_min. Single isolated gated samples have zero span.
std::optional<double> detect_period(const DriveProfile& profile, double w_min);

/// Runs detect_period and stores the result (time and grid index).
void attach_period(DriveProfile& profile, double w_min);

/// Repeats the samples on [0, T) so that E(nT + t) = E(t) bit-for-bit.
/// Output times are n*T + t_i. Throws ParameterError when no period is set.
DriveProfile cyclic_extend(const DriveProfile& profile, double horizon);

struct DriveSummary {
  std::optional<double> period_T;
  double gated_fraction = 0.0;
  double peak_x = 0.0;
  double max_abs_det = 0.0;  ///< max |c1|^2 - c2^2 over ungated points
  double max_rel_det = 0.0;  ///< same, divided by |c1|^2 + c2^2
};

DriveSummary summarize(const ModelParams& params, const DriveProfile& profile);

}  // namespace mpcoh
