#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qevo/pauli.hpp"

namespace qevo {

/// Simple undirected graph where every vertex has the same degree.
/// Edges are stored as (u, v) with u < v, sorted lexicographically.
class RegularGraph {
 public:
  using Edge = std::pair<int, int>;

  /// Validates regularity, no self-loops and no duplicate edges.
  RegularGraph(int n_vertices, std::vector<Edge> edges);

  int n_vertices() const noexcept { return n_vertices_; }
  int degree() const noexcept { return degree_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Edge-list text, one `u v` per line.
  void write(std::ostream& out) const;
  static RegularGraph read(std::istream& in);

 private:
  int n_vertices_;
  int degree_;
  std::vector<Edge> edges_;
};

/// Uniform random simple `degree`-regular graph on n vertices via the pairing
/// (configuration) model with full rejection of loops and multi-edges.
/// Throws std::invalid_argument when n*degree is odd or degree >= n, and
/// std::runtime_error if 10^4 pairings are rejected in a row.
RegularGraph random_regular_graph(int n, int degree, std::uint64_t seed);

/// Cycle 0-1-...-(n-1)-0 (n >= 3).
RegularGraph ring_graph(int n);

struct HeisenbergSpec {
  int n_qubits;
  RegularGraph graph;
  double J = 1.0;
  double h_z = 1.0;
};

/// sum over edges J(XX + YY + ZZ) + h_z sum_i Z_i.
Hamiltonian build_heisenberg(const HeisenbergSpec& spec);

/// Majorana operator chi_index (0-based, index < 2N) under the Jordan-Wigner map
///   chi_{2i-1} = X_1 ... X_{i-1} Z_i,   chi_{2i} = X_1 ... X_{i-1} Y_i   (1-based),
/// so 0-based even indices 2k carry Z on qubit k, odd indices 2k+1 carry Y on qubit k,
/// each with an X string on qubits 0..k-1. chi^2 = I and {chi_a, chi_b} = 2 delta_ab.
PhasedPauli majorana(int index, int n_qubits);

struct SykSpec {
  int n_qubits;  // N >= 4; the model has 2N Majorana modes
  double J = 1.0;
  std::uint64_t seed = 0;
};

/// Coupling variance 3! J^2 / ((N-3)(N-2)(N-1)) with N the qubit count.
double syk_coupling_variance(int n_qubits, double J);

/// Draws couplings for every quadruple i<j<k<l of the 2N Majoranas, in lexicographic
/// order, from a Gaussian stream keyed by the seed.
std::vector<double> syk_couplings(const SykSpec& spec);

/// sum_{i<j<k<l} J_ijkl chi_i chi_j chi_k chi_l, each product reduced to one real-weighted
/// Pauli term. Throws std::logic_error if a reduced product carries an imaginary phase.
Hamiltonian build_syk(const SykSpec& spec);

}  // namespace qevo
