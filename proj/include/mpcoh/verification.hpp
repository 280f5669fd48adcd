#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mpcoh/coherence.hpp"
#include "mpcoh/execution.hpp"
#include "mpcoh/fock_algebra.hpp"

namespace mpcoh {

/// Largest projected residual of each supersymmetric relation over all
/// (k, m) instances, n_max = m + 2k + margin.
std::vector<RelationResidual> algebra_suite(const std::vector<int>& ks, const std::vector<int>& ms, int margin = 2);

/// Built-in instance for the interaction-picture check: ω0 = 1, δ = 0.3,
/// complex g, d and E.
struct InteractionCase {
  ModelParams params;
  Couplings couplings;
  cplx e_field;
  HilbertConfig config;
};

InteractionCase interaction_case(int k, int margin = 2);

/// Max entrywise |H_I(t) - (V† H_tot V - H_0)| over `samples` times in
/// [0, t_max].
double interaction_picture_deviation(const InteractionCase& c, int samples = 100, double t_max = 20.0);

/// Built-in small instance for the Markoff oracle comparison (ω0 = 1).
struct OracleCase {
  ModelParams params;
  Couplings couplings;
  cplx e_field;
  Eigen::Matrix2cd rho_s;
};

OracleCase oracle_case(int k, int m, cplx e_field);

/// (k, m, E) triples used by verify and the acceptance suite.
std::vector<OracleCase> default_oracle_cases();

/// Times t_j = t_max * j / samples, j = 1..samples.
std::vector<double> oracle_times(int samples = 10, double t_max = 10.0);

OracleComparison run_oracle_case(const OracleCase& c, const std::vector<double>& times, int panels,
                                 Execution exec = Execution::Parallel);

}  // namespace mpcoh
