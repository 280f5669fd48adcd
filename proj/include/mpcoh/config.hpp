#pragma once

#include <complex>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "mpcoh/coherence.hpp"
#include "mpcoh/drive.hpp"
#include "mpcoh/model.hpp"

namespace mpcoh {

enum class FieldMode { Driven, Zero, Both };

/// Everything a CLI run needs. Parsed from flat `key = value` text; `#`
/// starts a comment. Unknown keys are rejected.
struct RunConfig {
  ModelParams model;

  // Time grid. dt defaults to 2π/(200 ω0).
  std::optional<double> dt;
  double t_end = 3.0e-10;

  // Drive synthesis.
  BranchPolicy branch_policy = BranchPolicy::LeastIntensity;
  double eps_beta = kDefaultEpsBeta;
  std::optional<double> w_min;  ///< defaults to one grid step
  std::optional<double> cyclic_horizon;

  int n_max_margin = 2;
  std::string output;

  // Sweep axes; an absent axis falls back to the scalar model value.
  std::optional<std::vector<int>> sweep_k;
  std::optional<std::vector<int>> sweep_m;
  std::optional<std::vector<double>> sweep_delta_over_omega0;

  // Coherence integration.
  std::complex<double> rho0{0.3, 0.2};
  Representation representation = Representation::Independent;
  FieldMode field_mode = FieldMode::Driven;
  int substeps = 1;

  // Verification thresholds.
  double algebra_tolerance = 1e-12;
  double interaction_tolerance = 1e-10;
  double oracle_tolerance = 1e-6;
  int oracle_panels = 512;

  double grid_step() const;
  double period_window() const;
  std::vector<double> grid() const;

  /// Throws ParameterError naming the violated invariant.
  void validate() const;
};

RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::string& path);

}  // namespace mpcoh
