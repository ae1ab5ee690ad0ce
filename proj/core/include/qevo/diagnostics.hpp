#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qevo/pauli.hpp"
#include "qevo/state.hpp"

namespace qevo {

/// rho_A = tr_B |psi><psi|. subset[k] is bit k of the row/column index.
struct ReducedDensity {
  std::vector<int> subset;
  Eigen::MatrixXcd matrix;
};

constexpr int kMaxReducedQubits = 8;

/// Throws std::invalid_argument for an empty, repeated, out-of-range or oversized subset.
ReducedDensity reduced_density(const StateVector& state, std::span<const int> subset);

/// -ln Tr rho_A^2, in nats.
double renyi2(const StateVector& state, std::span<const int> subset);

/// k ln 2 - 2^-(N - 2k + 1). Requires 1 <= k <= N/2.
double page_entropy(int k, int n_qubits);

struct GroundSpace {
  double energy = 0.0;
  std::vector<StateVector> basis;  // orthonormal, every vector within degeneracy_tol of energy
  double degeneracy_tol = 0.0;
  bool converged = false;
  double max_residual = 0.0;  // max ||H v - E_v v|| over the basis
};

struct GroundSpaceOptions {
  /// Negative selects 1e-6 * max(1, |E0|).
  double degeneracy_tol = -1.0;
  double residual_tol = 1e-8;
  int max_iterations = 3000;  // Lanczos steps per eigenvector
  int krylov_dim = 120;       // steps between restarts
};

constexpr int kMaxGroundSpaceQubits = 20;

/// Restarted Lanczos with full reorthogonalization. Degenerate levels are collected by
/// deflating each converged vector and searching the orthogonal complement again.
/// Non-convergence is reported through `converged` and `max_residual`.
GroundSpace ground_space(const Hamiltonian& h, const GroundSpaceOptions& options = {});

/// sum_b |<b|psi>|^2 over the ground-space basis.
double overlap(const StateVector& state, const GroundSpace& gs);

}  // namespace qevo
