#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mpcoh/model.hpp"

namespace mpcoh {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Truncated Fock (x) spin space.
///
/// Basis index = s * (n_max + 1) + n with s = 0 for the upper state |+>,
/// s = 1 for |->, and n the photon number. Spin is the outer (block) index,
/// so every 2x2 block formula of the supersymmetric generators is a literal
/// sub-matrix.
struct HilbertConfig {
  int n_max = 0;

  int fock_dim() const { return n_max + 1; }
  int dim() const { return 2 * (n_max + 1); }
  int index(int spin, int n) const { return spin * (n_max + 1) + n; }

  /// n_max = m + 2k + margin.
  static HilbertConfig for_model(int m, int k, int margin = 2);
};

/// Dense operators on the full space. Immutable after construction.
struct OperatorSet {
  HilbertConfig config;
  int k = 1;
  Matrix a, a_dag;
  Matrix sigma_plus, sigma_minus, sigma_z;
  Matrix Q, Q_dag;  ///< (a†)^k σ-, a^k σ+
  Matrix N, N_prime;
};

/// Fock-space (single mode) annihilation operator, a[n-1, n] = sqrt(n).
Matrix fock_annihilation(int n_max);

/// Throws ParameterError when n_max < k.
OperatorSet build_operators(const HilbertConfig& config, int k);

struct RelationResidual {
  std::string name;
  double residual = 0.0;  ///< Frobenius norm of (lhs - rhs), projected
};

/// Residuals of the twelve supersymmetric relations, restricted to photon
/// numbers <= n_max - k in both spin blocks. Returned in a fixed order.
std::vector<RelationResidual> check_susy_relations(const OperatorSet& ops);

/// Complex couplings g and d. Only |g|^2 and |d|^2 enter the analytic
/// coefficients; phases are kept so the matrix oracles see the general
/// Hamiltonian.
struct Couplings {
  cplx g;
  cplx d;

  static Couplings from(const ModelParams& params, double g_phase = 0.0, double d_phase = 0.0);
};

/// g e^{-iδt} Q + g* e^{iδt} Q† - (d E e^{iω0 t} σ+ + d* E* e^{-iω0 t} σ-)/2
Matrix build_interaction_hamiltonian(double t, const ModelParams& params, const Couplings& c,
                                     cplx e_field, const OperatorSet& ops);

/// Only the (E*)^2-carrying σ- part of the drive, -(d* E* e^{-iω0 t} σ-)/2.
Matrix drive_lowering_part(double t, const ModelParams& params, const Couplings& c,
                           cplx e_field, const OperatorSet& ops);

/// Interaction-picture Hamiltonian by the explicit route
/// V†(t) H_tot V(t) - H_0, with V(t) = exp(-i H_0 t) evaluated by a general
/// matrix exponential and H_tot assembled from ladder and spin operators
/// (not from Q). The mode frequency is omega = (omega0 - delta)/k, the sign
/// for which the e^{-iδt}Q phase above is exact.
Matrix transformed_hamiltonian(double t, const ModelParams& params, const Couplings& c,
                               cplx e_field, const HilbertConfig& config);

/// <m| op |m> for a single-mode operator. Throws when m is beyond the cutoff.
cplx fock_expectation(const Matrix& op, int m);

/// Partial trace over the photon mode; returns a 2x2 spin matrix in the
/// (|+>, |->) basis.
Eigen::Matrix2cd trace_reservoir(const Matrix& op, const HilbertConfig& config);

}  // namespace mpcoh
