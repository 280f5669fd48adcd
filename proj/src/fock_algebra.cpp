#include "mpcoh/fock_algebra.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "mpcoh/errors.hpp"

namespace mpcoh {

namespace {

const cplx kI{0.0, 1.0};

// Embed a single-mode operator into the spin block (row_spin, col_spin).
Matrix embed_block(const Matrix& fock_op, int row_spin, int col_spin, const HilbertConfig& cfg) {
  Matrix out = Matrix::Zero(cfg.dim(), cfg.dim());
  out.block(cfg.index(row_spin, 0), cfg.index(col_spin, 0), cfg.fock_dim(), cfg.fock_dim()) = fock_op;
  return out;
}

Matrix spin_operator(const Eigen::Matrix2cd& s, const HilbertConfig& cfg) {
  const Matrix id = Matrix::Identity(cfg.fock_dim(), cfg.fock_dim());
  Matrix out(cfg.dim(), cfg.dim());
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      out.block(cfg.index(r, 0), cfg.index(c, 0), cfg.fock_dim(), cfg.fock_dim()) = s(r, c) * id;
  return out;
}

Matrix power(const Matrix& op, int k) {
  Matrix out = Matrix::Identity(op.rows(), op.cols());
  for (int j = 0; j < k; ++j) out = out * op;
  return out;
}

Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }
Matrix anticommutator(const Matrix& x, const Matrix& y) { return x * y + y * x; }

}  // namespace

HilbertConfig HilbertConfig::for_model(int m, int k, int margin) {
  if (m < 0 || k < 1 || margin < 0) throw ParameterError("HilbertConfig: need m >= 0, k >= 1, margin >= 0");
  return HilbertConfig{m + 2 * k + margin};
}

Matrix fock_annihilation(int n_max) {
  if (n_max < 0) throw ParameterError("fock_annihilation: n_max must be >= 0");
  Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

OperatorSet build_operators(const HilbertConfig& config, int k) {
  if (k < 1) throw ParameterError("build_operators: k >= 1 required");
  if (config.n_max < k) {
    throw ParameterError("build_operators: Fock cutoff n_max = " + std::to_string(config.n_max) +
                         " too small for k = " + std::to_string(k));
  }
  OperatorSet ops;
  ops.config = config;
  ops.k = k;

  const Matrix af = fock_annihilation(config.n_max);
  const Matrix af_dag = af.adjoint();
  const Matrix adk = power(af_dag, k);  // (a†)^k
  const Matrix ak = adk.adjoint();      // a^k

  ops.a = embed_block(af, 0, 0, config) + embed_block(af, 1, 1, config);
  ops.a_dag = ops.a.adjoint();

  Eigen::Matrix2cd sp = Eigen::Matrix2cd::Zero();
  sp(0, 1) = 1.0;
  ops.sigma_plus = spin_operator(sp, config);
  ops.sigma_minus = spin_operator(sp.adjoint(), config);
  ops.sigma_z = spin_operator(Eigen::Vector2cd(1.0, -1.0).asDiagonal(), config);

  ops.Q = embed_block(adk, 1, 0, config);
  ops.Q_dag = ops.Q.adjoint();

  const Matrix id = Matrix::Identity(config.dim(), config.dim());
  ops.N = ops.a_dag * ops.a + (0.5 * (k - 1)) * ops.sigma_z + 0.5 * id;
  ops.N_prime = embed_block(ak * adk, 0, 0, config) + embed_block(adk * ak, 1, 1, config);
  return ops;
}

std::vector<RelationResidual> check_susy_relations(const OperatorSet& ops) {
  const HilbertConfig& cfg = ops.config;
  const int keep = cfg.n_max - ops.k + 1;  // photon numbers 0..n_max-k

  auto projected_norm = [&](const Matrix& r) {
    double sum = 0.0;
    for (int rs = 0; rs < 2; ++rs)
      for (int cs = 0; cs < 2; ++cs)
        sum += r.block(cfg.index(rs, 0), cfg.index(cs, 0), keep, keep).squaredNorm();
    return std::sqrt(sum);
  };

  const Matrix& Q = ops.Q;
  const Matrix& Qd = ops.Q_dag;
  const Matrix& N = ops.N;
  const Matrix& Np = ops.N_prime;
  const Matrix& sz = ops.sigma_z;
  const Matrix diff = Qd - Q;

  std::vector<RelationResidual> out;
  out.push_back({"Q^2 = 0", projected_norm(Q * Q)});
  out.push_back({"(Q†)^2 = 0", projected_norm(Qd * Qd)});
  out.push_back({"[Q†,Q] = N'σz", projected_norm(commutator(Qd, Q) - Np * sz)});
  out.push_back({"[N,N'] = 0", projected_norm(commutator(N, Np))});
  out.push_back({"[N,Q] = Q", projected_norm(commutator(N, Q) - Q)});
  out.push_back({"[N,Q†] = -Q†", projected_norm(commutator(N, Qd) + Qd)});
  out.push_back({"{Q†,Q} = N'", projected_norm(anticommutator(Qd, Q) - Np)});
  out.push_back({"{Q,σz} = 0", projected_norm(anticommutator(Q, sz))});
  out.push_back({"{Q†,σz} = 0", projected_norm(anticommutator(Qd, sz))});
  out.push_back({"[Q,σz] = 2Q", projected_norm(commutator(Q, sz) - 2.0 * Q)});
  out.push_back({"[Q†,σz] = -2Q†", projected_norm(commutator(Qd, sz) + 2.0 * Qd)});
  out.push_back({"(Q†-Q)^2 = -N'", projected_norm(diff * diff + Np)});
  return out;
}

Couplings Couplings::from(const ModelParams& params, double g_phase, double d_phase) {
  return Couplings{std::polar(std::sqrt(params.g_sq), g_phase), std::polar(std::sqrt(params.d_sq), d_phase)};
}

Matrix build_interaction_hamiltonian(double t, const ModelParams& params, const Couplings& c,
                                     cplx e_field, const OperatorSet& ops) {
  const cplx noise_phase = std::exp(-kI * (params.delta * t));
  const cplx drive = c.d * e_field * std::exp(kI * (params.omega0 * t));
  Matrix h = (c.g * noise_phase) * ops.Q + (std::conj(c.g) * std::conj(noise_phase)) * ops.Q_dag;
  h -= 0.5 * (drive * ops.sigma_plus + std::conj(drive) * ops.sigma_minus);
  return h;
}

Matrix drive_lowering_part(double t, const ModelParams& params, const Couplings& c, cplx e_field,
                           const OperatorSet& ops) {
  const cplx drive = c.d * e_field * std::exp(kI * (params.omega0 * t));
  return (-0.5 * std::conj(drive)) * ops.sigma_minus;
}

Matrix transformed_hamiltonian(double t, const ModelParams& params, const Couplings& c,
                               cplx e_field, const HilbertConfig& config) {
  const Matrix af = fock_annihilation(config.n_max);
  const Matrix af_dag = af.adjoint();
  Matrix adk = Matrix::Identity(config.fock_dim(), config.fock_dim());
  Matrix ak = adk;
  for (int j = 0; j < params.k; ++j) {
    adk = af_dag * adk;
    ak = af * ak;
  }

  const double mode_omega = (params.omega0 - params.delta) / params.k;
  Matrix h0 = Matrix::Zero(config.dim(), config.dim());
  for (int s = 0; s < 2; ++s) {
    const double spin_energy = (s == 0 ? 0.5 : -0.5) * params.omega0;
    for (int n = 0; n <= config.n_max; ++n) h0(config.index(s, n), config.index(s, n)) = spin_energy + mode_omega * n;
  }

  // σ+ = |+><-| lives in the (upper, lower) block.
  const Matrix id = Matrix::Identity(config.fock_dim(), config.fock_dim());
  const cplx dE = c.d * e_field;
  Matrix h_tot = h0;
  h_tot.block(config.index(1, 0), config.index(0, 0), config.fock_dim(), config.fock_dim()) +=
      c.g * adk - 0.5 * std::conj(dE) * id;
  h_tot.block(config.index(0, 0), config.index(1, 0), config.fock_dim(), config.fock_dim()) +=
      std::conj(c.g) * ak - 0.5 * dE * id;

  const Matrix v = (cplx(0.0, -t) * h0).exp();
  return v.adjoint() * h_tot * v - h0;
}

cplx fock_expectation(const Matrix& op, int m) {
  if (m < 0 || m >= op.rows() || op.rows() != op.cols()) {
    throw ParameterError("fock_expectation: occupation m = " + std::to_string(m) + " beyond the Fock cutoff");
  }
  return op(m, m);
}

Eigen::Matrix2cd trace_reservoir(const Matrix& op, const HilbertConfig& config) {
  Eigen::Matrix2cd out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      out(r, c) = op.block(config.index(r, 0), config.index(c, 0), config.fock_dim(), config.fock_dim()).trace();
  return out;
}

}  // namespace mpcoh
