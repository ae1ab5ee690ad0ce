#include "qevo/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qevo/random.hpp"

namespace qevo {

namespace {

using Vec = Eigen::VectorXcd;

void check_subset(std::span<const int> subset, int n) {
  if (subset.empty()) throw std::invalid_argument("subset must not be empty");
  if (subset.size() > static_cast<std::size_t>(kMaxReducedQubits)) {
    throw std::invalid_argument("subset of " + std::to_string(subset.size()) + " qubits exceeds the limit of " +
                                std::to_string(kMaxReducedQubits));
  }
  std::uint64_t seen = 0;
  for (int q : subset) {
    if (q < 0 || q >= n) throw std::invalid_argument("subset qubit " + std::to_string(q) + " out of range");
    if (seen >> q & 1U) throw std::invalid_argument("subset qubit " + std::to_string(q) + " repeated");
    seen |= std::uint64_t{1} << q;
  }
}

// Rows indexed by the subset bits, columns by the remaining bits in ascending order.
Eigen::MatrixXcd reshape(const StateVector& state, std::span<const int> subset) {
  const int n = state.n_qubits();
  std::vector<int> rest;
  std::uint64_t mask = 0;
  for (int q : subset) mask |= std::uint64_t{1} << q;
  for (int q = 0; q < n; ++q)
    if (!(mask >> q & 1U)) rest.push_back(q);

  const std::size_t k = subset.size();
  Eigen::MatrixXcd psi(Eigen::Index{1} << k, Eigen::Index{1} << rest.size());
  for (std::uint64_t x = 0; x < state.dimension(); ++x) {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < k; ++i) a |= (x >> subset[i] & 1U) << i;
    for (std::size_t i = 0; i < rest.size(); ++i) b |= (x >> rest[i] & 1U) << i;
    psi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = state[x];
  }
  return psi;
}

Vec multiply_h(const Hamiltonian& h, const Vec& v) {
  std::vector<Complex> out;
  apply_hamiltonian(h, std::span<const Complex>(v.data(), static_cast<std::size_t>(v.size())), out);
  return Eigen::Map<Vec>(out.data(), static_cast<Eigen::Index>(out.size()));
}

void project_out(Vec& w, const std::vector<Vec>& basis) {
  for (const Vec& b : basis) w -= b.dot(w) * b;
}

struct Eigenpair {
  double energy = 0.0;
  Vec vector;
  double residual = 0.0;
  bool converged = false;
};

// Lowest eigenpair of H restricted to the orthogonal complement of `locked`.
Eigenpair lowest_in_complement(const Hamiltonian& h, const std::vector<Vec>& locked, Vec start,
                               const GroundSpaceOptions& opt, int krylov_cap) {
  const Eigen::Index dim = start.size();
  const int free_dim = static_cast<int>(dim) - static_cast<int>(locked.size());
  project_out(start, locked);
  project_out(start, locked);
  Vec x = start.normalized();

  Eigenpair best;
  int steps = 0;
  for (;;) {
    std::vector<Vec> krylov{x};
    std::vector<double> alpha;
    std::vector<double> beta;
    const int kmax = std::min(krylov_cap, free_dim);
    for (int j = 0; j < kmax; ++j) {
      Vec w = multiply_h(h, krylov[static_cast<std::size_t>(j)]);
      ++steps;
      alpha.push_back(krylov[static_cast<std::size_t>(j)].dot(w).real());
      for (int pass = 0; pass < 2; ++pass) {
        project_out(w, locked);
        project_out(w, krylov);
      }
      const double b = w.norm();
      const double scale = std::max(1.0, std::abs(alpha.back()));
      if (j + 1 == kmax || b < 1e-10 * scale || steps >= opt.max_iterations) break;
      beta.push_back(b);
      krylov.push_back(w / b);
    }

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1)) : Eigen::VectorXd(0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::VectorXd y = tri.eigenvectors().col(0);

    x.setZero(dim);
    for (Eigen::Index i = 0; i < m; ++i) x += y(i) * krylov[static_cast<std::size_t>(i)];
    project_out(x, locked);
    x.normalize();

    const Vec hx = multiply_h(h, x);
    best.energy = x.dot(hx).real();
    best.residual = (hx - best.energy * x).norm();
    best.vector = x;
    if (best.residual < opt.residual_tol) {
      best.converged = true;
      return best;
    }
    if (steps >= opt.max_iterations) return best;
  }
}

}  // namespace

ReducedDensity reduced_density(const StateVector& state, std::span<const int> subset) {
  check_subset(subset, state.n_qubits());
  const Eigen::MatrixXcd psi = reshape(state, subset);
  return ReducedDensity{std::vector<int>(subset.begin(), subset.end()), psi * psi.adjoint()};
}

double renyi2(const StateVector& state, std::span<const int> subset) {
  const ReducedDensity rho = reduced_density(state, subset);
  return -std::log(rho.matrix.squaredNorm());
}

double page_entropy(int k, int n_qubits) {
  if (k < 1 || 2 * k > n_qubits) {
    throw std::invalid_argument("page_entropy: need 1 <= k <= N/2, got k=" + std::to_string(k) +
                                ", N=" + std::to_string(n_qubits));
  }
  return k * std::numbers::ln2 - std::ldexp(1.0, -(n_qubits - 2 * k + 1));
}

GroundSpace ground_space(const Hamiltonian& h, const GroundSpaceOptions& options) {
  const int n = h.n_qubits();
  if (n > kMaxGroundSpaceQubits) {
    throw std::invalid_argument("ground_space: " + std::to_string(n) + " qubits exceeds the limit of " +
                                std::to_string(kMaxGroundSpaceQubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  // Keep the Krylov basis under roughly 1 GiB.
  const auto memory_cap = static_cast<int>(std::max<Eigen::Index>(16, (Eigen::Index{1} << 26) / dim));
  const int krylov_cap = std::max(2, std::min(options.krylov_dim, memory_cap));

  GroundSpace gs;
  gs.converged = true;
  std::vector<Vec> locked;
  while (static_cast<Eigen::Index>(locked.size()) < dim) {
    CounterRng rng(derive_stream_key({0x4c414e43ULL, locked.size()}));
    Vec start(dim);
    for (Eigen::Index i = 0; i < dim; ++i) start(i) = Complex(rng.normal(), rng.normal());

    Eigenpair pair = lowest_in_complement(h, locked, std::move(start), options, krylov_cap);
    if (locked.empty()) {
      gs.energy = pair.energy;
      gs.degeneracy_tol = options.degeneracy_tol >= 0.0 ? options.degeneracy_tol : 1e-6 * std::max(1.0, std::abs(pair.energy));
    } else if (pair.energy > gs.energy + gs.degeneracy_tol) {
      break;
    }
    gs.energy = std::min(gs.energy, pair.energy);
    gs.converged = gs.converged && pair.converged;
    gs.max_residual = std::max(gs.max_residual, pair.residual);
    locked.push_back(std::move(pair.vector));
  }

  for (const Vec& v : locked) {
    gs.basis.push_back(StateVector::from_amplitudes(std::vector<Complex>(v.data(), v.data() + v.size())));
  }
  return gs;
}

double overlap(const StateVector& state, const GroundSpace& gs) {
  double m = 0.0;
  for (const StateVector& b : gs.basis) {
    if (b.dimension() != state.dimension()) throw std::invalid_argument("overlap: dimension mismatch");
    m += std::norm(b.inner(state));
  }
  return m;
}

}  // namespace qevo
