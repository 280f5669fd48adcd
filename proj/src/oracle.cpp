#include <algorithm>
#include <cmath>
#include <string>

#include "mpcoh/coherence.hpp"
#include "mpcoh/errors.hpp"

namespace mpcoh {

namespace {

// ρ_s ⊗ |m><m| in the (spin outer, Fock inner) basis.
Matrix system_times_fock(const Eigen::Matrix2cd& rho_s, int m, const HilbertConfig& cfg) {
  Matrix x = Matrix::Zero(cfg.dim(), cfg.dim());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) x(cfg.index(a, m), cfg.index(b, m)) = rho_s(a, b);
  return x;
}

double simpson_weight(int node, int panels) {
  if (node == 0 || node == panels) return 1.0;
  return node % 2 == 1 ? 4.0 : 2.0;
}

void check_couplings(const ModelParams& params, const Couplings& couplings) {
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
  if (!close(std::norm(couplings.g), params.g_sq) || !close(std::norm(couplings.d), params.d_sq)) {
    throw ParameterError("Markoff oracle: |g|^2 and |d|^2 must match the model parameters");
  }
}

}  // namespace

OracleResult markoff_rhs_oracle(const ModelParams& params, const Couplings& couplings, const OperatorSet& ops,
                                double t, const Eigen::Matrix2cd& rho_s, cplx e_field, int panels) {
  const HilbertConfig& cfg = ops.config;
  if (cfg.n_max < params.m + 2 * params.k) {
    throw ParameterError("markoff_rhs_oracle: cutoff n_max = " + std::to_string(cfg.n_max) + " below m + 2k = " +
                         std::to_string(params.m + 2 * params.k));
  }
  if (ops.k != params.k) throw ParameterError("markoff_rhs_oracle: operator set built for a different k");
  if (panels < 2 || panels % 2 != 0) throw ParameterError("markoff_rhs_oracle: Simpson panels must be even and >= 2");
  if (!(t >= 0.0)) throw ParameterError("markoff_rhs_oracle: t must be >= 0");
  check_couplings(params, couplings);

  OracleResult out{};
  if (t == 0.0) return out;

  const Matrix x = system_times_fock(rho_s, params.m, cfg);
  const Matrix h_now = build_interaction_hamiltonian(t, params, couplings, e_field, ops);
  const Matrix low_now = drive_lowering_part(t, params, couplings, e_field, ops);
  const int lower = 1;
  const int upper = 0;

  const double h = t / panels;
  cplx full_sum = 0.0;
  cplx fast_sum = 0.0;
  for (int node = 0; node <= panels; ++node) {
    const double tp = node == panels ? t : node * h;
    const double w = simpson_weight(node, panels);

    const Matrix h_then = build_interaction_hamiltonian(tp, params, couplings, e_field, ops);
    const Matrix inner = h_then * x - x * h_then;
    const Matrix outer = h_now * inner - inner * h_now;
    full_sum += w * trace_reservoir(outer, cfg)(lower, upper);

    // [H,[H',X]] contains -H X H' - H' X H; keep only the σ- ... σ- pieces.
    const Matrix low_then = drive_lowering_part(tp, params, couplings, e_field, ops);
    const Matrix fast = -(low_now * x * low_then + low_then * x * low_now);
    fast_sum += w * trace_reservoir(fast, cfg)(lower, upper);
  }
  out.full = -(h / 3.0) * full_sum;
  out.fast = -(h / 3.0) * fast_sum;
  return out;
}

OracleComparison compare_oracle(const ModelParams& params, const Couplings& couplings, std::span<const double> grid,
                                std::span<const cplx> e_values, const Eigen::Matrix2cd& rho_s, int panels,
                                Execution exec) {
  params.validate();
  if (e_values.size() != grid.size()) throw ParameterError("compare_oracle: one field value per grid point required");
  if (panels < 2 || panels % 2 != 0) throw ParameterError("compare_oracle: Simpson panels must be even and >= 2");
  for (double t : grid) {
    if (!(t >= 0.0)) throw ParameterError("compare_oracle: grid times must be >= 0");
  }
  check_couplings(params, couplings);
  const RateSet rates = derived_rates(params);
  const OperatorSet ops = build_operators(HilbertConfig::for_model(params.m, params.k), params.k);
  constexpr double kFloor = 1e-30;

  OracleComparison out;
  out.rel_dev.resize(grid.size());
  auto point = [&](std::size_t i) {
    const OracleResult r = markoff_rhs_oracle(params, couplings, ops, grid[i], rho_s, e_values[i], panels);
    const cplx analytic = analytic_rhs(params, rates, grid[i], rho_s, std::norm(e_values[i]));
    out.rel_dev[i] = std::abs(r.kept() - analytic) / (std::abs(analytic) + kFloor);
  };

  if (exec == Execution::Parallel) {
    const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) point(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) point(i);
  }
  for (double d : out.rel_dev) out.max_rel_dev = std::max(out.max_rel_dev, d);
  return out;
}

}  // namespace mpcoh
