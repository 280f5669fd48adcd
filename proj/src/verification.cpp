#include "mpcoh/verification.hpp"

#include <algorithm>

namespace mpcoh {

std::vector<RelationResidual> algebra_suite(const std::vector<int>& ks, const std::vector<int>& ms, int margin) {
  std::vector<RelationResidual> worst;
  for (int k : ks) {
    for (int m : ms) {
      const OperatorSet ops = build_operators(HilbertConfig::for_model(m, k, margin), k);
      const auto residuals = check_susy_relations(ops);
      if (worst.empty()) {
        worst = residuals;
        continue;
      }
      for (std::size_t i = 0; i < residuals.size(); ++i)
        worst[i].residual = std::max(worst[i].residual, residuals[i].residual);
    }
  }
  return worst;
}

InteractionCase interaction_case(int k, int margin) {
  InteractionCase c;
  c.params.omega0 = 1.0;
  c.params.delta = 0.3;
  c.params.k = k;
  c.params.m = 2;
  c.params.g_sq = 0.49;
  c.params.d_sq = 1.21;
  c.couplings = Couplings::from(c.params, 0.4, -0.2);
  c.e_field = std::polar(0.8, 0.3);
  c.config = HilbertConfig::for_model(c.params.m, k, margin);
  return c;
}

double interaction_picture_deviation(const InteractionCase& c, int samples, double t_max) {
  const OperatorSet ops = build_operators(c.config, c.params.k);
  double worst = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double t = samples > 1 ? t_max * j / (samples - 1) : 0.0;
    const Matrix literal = build_interaction_hamiltonian(t, c.params, c.couplings, c.e_field, ops);
    const Matrix explicit_route = transformed_hamiltonian(t, c.params, c.couplings, c.e_field, c.config);
    worst = std::max(worst, (literal - explicit_route).cwiseAbs().maxCoeff());
  }
  return worst;
}

OracleCase oracle_case(int k, int m, cplx e_field) {
  OracleCase c;
  c.params.omega0 = 1.0;
  c.params.delta = 0.2;
  c.params.k = k;
  c.params.m = m;
  c.params.g_sq = 0.05;
  c.params.d_sq = 1.0;
  c.couplings = Couplings::from(c.params);
  c.e_field = e_field;
  c.rho_s << cplx(0.6, 0.0), cplx(0.2, -0.3), cplx(0.2, 0.3), cplx(0.4, 0.0);
  return c;
}

std::vector<OracleCase> default_oracle_cases() {
  return {oracle_case(1, 2, 0.0), oracle_case(2, 3, std::polar(0.3, 0.2)), oracle_case(1, 5, 0.0)};
}

std::vector<double> oracle_times(int samples, double t_max) {
  std::vector<double> times;
  for (int j = 1; j <= samples; ++j) times.push_back(t_max * j / samples);
  return times;
}

OracleComparison run_oracle_case(const OracleCase& c, const std::vector<double>& times, int panels, Execution exec) {
  const std::vector<cplx> fields(times.size(), c.e_field);
  return compare_oracle(c.params, c.couplings, times, fields, c.rho_s, panels, exec);
}

}  // namespace mpcoh
