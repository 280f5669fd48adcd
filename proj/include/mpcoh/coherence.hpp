#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mpcoh/execution.hpp"
#include "mpcoh/fock_algebra.hpp"
#include "mpcoh/markoff.hpp"
#include "mpcoh/model.hpp"

namespace mpcoh {

/// Off-diagonal elements <-|ρ|+> and <+|ρ|->.
struct CoherenceState {
  cplx rho_mp;
  cplx rho_pm;

  static CoherenceState conjugate_pair(cplx rho_mp) { return {rho_mp, std::conj(rho_mp)}; }
};

enum class Representation {
  Independent,           ///< integrate (ρ-+, ρ+-) as a linear 2-vector
  ConjugateConstrained,  ///< integrate ρ-+ only, ρ+- = conj(ρ-+)
};

/// M = [[c1, -c2], [-c2, c1*]] acting on (ρ-+, ρ+-).
Eigen::Matrix2cd generator_matrix(cplx c1, double c2);

/// Eigen-split of a 2x2 generator. The functionals are unit-norm left
/// eigenvectors l (l^T M = λ l^T), so d/dt (l^T ρ) = λ l^T ρ for frozen M.
/// "null" is the eigenvalue of smaller modulus.
struct GeneratorModes {
  cplx lambda_null;
  cplx lambda_other;
  Eigen::Vector2cd null_functional;
  Eigen::Vector2cd other_functional;
};

GeneratorModes generator_modes(const Eigen::Matrix2cd& generator);

struct EvolveOptions {
  Representation representation = Representation::Independent;
  int substeps = 1;                 ///< RK4 steps per grid interval
  bool check_halving = true;        ///< rerun at twice the substeps and compare
  double halving_tolerance = 1e-8;  ///< max relative change per sample
};

struct CoherenceTrajectory {
  std::vector<double> grid;
  std::vector<CoherenceState> states;
  std::vector<cplx> c1;
  std::vector<double> c2;
  std::vector<double> det_trace;
  std::vector<double> null_mode_abs;
  std::vector<double> other_mode_abs;
  double halving_deviation = 0.0;  ///< max relative change under step halving

  std::size_t size() const { return grid.size(); }
};

/// Integrates ρ̇-+ = c1 ρ-+ - c2 ρ+-, ρ̇+- = c1* ρ+- - c2 ρ-+ with a classical
/// fourth-order Runge-Kutta method.
///
/// drive_x holds the intensity at each grid point (empty for zero field). The
/// drive enters c1 through β(t) x(t); that product is interpolated linearly
/// inside each grid interval so every stage sees a smooth coefficient.
/// Throws NumericalFailure on non-finite states or, with check_halving, when
/// halving the step moves any sample by more than halving_tolerance.
CoherenceTrajectory evolve(const ModelParams& params, std::span<const double> grid,
                           std::span<const double> drive_x, CoherenceState rho0,
                           const EvolveOptions& options = {});

/// Right-hand side of the kept terms, c1 ρ-+ - c2 ρ+-.
cplx analytic_rhs(const ModelParams& params, const RateSet& rates, double t, const Eigen::Matrix2cd& rho_s,
                  double x);

struct OracleResult {
  cplx full;  ///< -∫_0^t <-| Tr_r [H(t),[H(t'), ρ_s ⊗ |m><m|]] |+> dt'
  cplx fast;  ///< contribution of the (E*)^2 σ- ρ σ- terms alone
  cplx kept() const { return full - fast; }
};

/// Brute-force second-order Markoff right-hand side for <-|ρ̇|+>.
///
/// Builds H_I(t) and H_I(t') as dense matrices, forms the double commutator
/// with ρ_s ⊗ |m><m|, traces out the mode and integrates over t' in [0, t]
/// with composite Simpson on `panels` subintervals (even, >= 2). The field is
/// frozen at E(t) over the window. rho_s is in the (|+>, |->) basis.
OracleResult markoff_rhs_oracle(const ModelParams& params, const Couplings& couplings, const OperatorSet& ops,
                                double t, const Eigen::Matrix2cd& rho_s, cplx e_field, int panels);

struct OracleComparison {
  std::vector<double> rel_dev;  ///< per grid point
  double max_rel_dev = 0.0;
};

/// Sweeps the grid and compares oracle-minus-fast-term with analytic_rhs:
/// |kept - analytic| / (|analytic| + 1e-30).
OracleComparison compare_oracle(const ModelParams& params, const Couplings& couplings,
                                std::span<const double> grid, std::span<const cplx> e_values,
                                const Eigen::Matrix2cd& rho_s, int panels, Execution exec = Execution::Serial);

}  // namespace mpcoh
