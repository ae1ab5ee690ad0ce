#include "qevo/models.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qevo/random.hpp"

namespace qevo {

namespace {
constexpr int kMaxPairingAttempts = 10'000;
constexpr std::uint64_t kSykStreamTag = 0x53594bULL;  // "SYK"
constexpr std::uint64_t kGraphStreamTag = 0x475248ULL;  // "GRH"
}  // namespace

RegularGraph::RegularGraph(int n_vertices, std::vector<Edge> edges) : n_vertices_(n_vertices), degree_(0) {
  if (n_vertices < 1) throw std::invalid_argument("RegularGraph: need at least one vertex");
  std::vector<int> deg(static_cast<std::size_t>(n_vertices), 0);
  for (Edge& e : edges) {
    if (e.first == e.second) throw std::invalid_argument("RegularGraph: self-loop");
    if (e.first < 0 || e.second < 0 || e.first >= n_vertices || e.second >= n_vertices) {
      throw std::invalid_argument("RegularGraph: vertex out of range");
    }
    if (e.first > e.second) std::swap(e.first, e.second);
    ++deg[static_cast<std::size_t>(e.first)];
    ++deg[static_cast<std::size_t>(e.second)];
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw std::invalid_argument("RegularGraph: duplicate edge");
  if (std::adjacent_find(deg.begin(), deg.end(), std::not_equal_to<>()) != deg.end()) {
    throw std::invalid_argument("RegularGraph: graph is not regular");
  }
  degree_ = deg.front();
  edges_ = std::move(edges);
}

void RegularGraph::write(std::ostream& out) const {
  for (const auto& [u, v] : edges_) out << u << ' ' << v << '\n';
}

RegularGraph RegularGraph::read(std::istream& in) {
  std::vector<Edge> edges;
  int max_vertex = -1;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    int u = 0;
    int v = 0;
    if (!(ls >> u)) continue;
    if (!(ls >> v)) throw std::invalid_argument("RegularGraph::read: malformed edge line '" + line + "'");
    edges.emplace_back(u, v);
    max_vertex = std::max({max_vertex, u, v});
  }
  return RegularGraph(max_vertex + 1, std::move(edges));
}

RegularGraph random_regular_graph(int n, int degree, std::uint64_t seed) {
  if (n < 1 || degree < 1) throw std::invalid_argument("random_regular_graph: n and degree must be positive");
  if ((n * degree) % 2 != 0) throw std::invalid_argument("random_regular_graph: n*degree must be even");
  if (degree >= n) throw std::invalid_argument("random_regular_graph: degree must be below n");

  CounterRng rng(derive_stream_key({kGraphStreamTag, seed}));
  const std::size_t n_points = static_cast<std::size_t>(n * degree);
  std::vector<int> points(n_points);
  for (std::size_t p = 0; p < n_points; ++p) points[p] = static_cast<int>(p) / degree;

  for (int attempt = 0; attempt < kMaxPairingAttempts; ++attempt) {
    // Fisher-Yates, then pair consecutive points.
    for (std::size_t i = n_points - 1; i > 0; --i) std::swap(points[i], points[rng.below(i + 1)]);
    std::set<RegularGraph::Edge> edges;
    bool simple = true;
    for (std::size_t p = 0; p < n_points && simple; p += 2) {
      int u = points[p];
      int v = points[p + 1];
      if (u == v) {
        simple = false;
        break;
      }
      if (u > v) std::swap(u, v);
      simple = edges.emplace(u, v).second;
    }
    if (simple) return RegularGraph(n, {edges.begin(), edges.end()});
  }
  throw std::runtime_error("random_regular_graph: rejection budget exhausted");
}

RegularGraph ring_graph(int n) {
  if (n < 3) throw std::invalid_argument("ring_graph: need at least 3 vertices");
  std::vector<RegularGraph::Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return RegularGraph(n, std::move(edges));
}

Hamiltonian build_heisenberg(const HeisenbergSpec& spec) {
  if (spec.graph.n_vertices() != spec.n_qubits) throw std::invalid_argument("build_heisenberg: graph size must equal qubit count");
  const int n = spec.n_qubits;
  std::vector<PauliTerm> terms;
  for (const auto& [u, v] : spec.graph.edges()) {
    const std::uint64_t m = (std::uint64_t{1} << u) | (std::uint64_t{1} << v);
    terms.push_back({spec.J, PauliString(n, m, 0)});  // XX
    terms.push_back({spec.J, PauliString(n, m, m)});  // YY
    terms.push_back({spec.J, PauliString(n, 0, m)});  // ZZ
  }
  for (int q = 0; q < n; ++q) terms.push_back({spec.h_z, PauliString::single(n, q, 'Z')});
  return Hamiltonian(n, terms);
}

PhasedPauli majorana(int index, int n_qubits) {
  if (index < 0 || index >= 2 * n_qubits) throw std::out_of_range("majorana: index out of range");
  const int qubit = index / 2;
  const std::uint64_t tail = (std::uint64_t{1} << qubit) - 1;
  const std::uint64_t site = std::uint64_t{1} << qubit;
  if (index % 2 == 0) return {0, PauliString(n_qubits, tail, site)};       // X..X Z
  return {0, PauliString(n_qubits, tail | site, site)};                     // X..X Y
}

double syk_coupling_variance(int n_qubits, double J) {
  if (n_qubits < 4) throw std::invalid_argument("syk_coupling_variance: need N >= 4");
  const double n = n_qubits;
  return 6.0 * J * J / ((n - 3.0) * (n - 2.0) * (n - 1.0));
}

std::vector<double> syk_couplings(const SykSpec& spec) {
  const double sigma = std::sqrt(syk_coupling_variance(spec.n_qubits, spec.J));
  const int modes = 2 * spec.n_qubits;
  CounterRng rng(derive_stream_key({kSykStreamTag, spec.seed}));
  std::vector<double> couplings;
  for (int i = 0; i < modes; ++i)
    for (int j = i + 1; j < modes; ++j)
      for (int k = j + 1; k < modes; ++k)
        for (int l = k + 1; l < modes; ++l) couplings.push_back(sigma * rng.normal());
  return couplings;
}

Hamiltonian build_syk(const SykSpec& spec) {
  const int n = spec.n_qubits;
  const std::vector<double> couplings = syk_couplings(spec);
  std::vector<PhasedPauli> chi;
  for (int m = 0; m < 2 * n; ++m) chi.push_back(majorana(m, n));

  std::vector<PauliTerm> terms;
  terms.reserve(couplings.size());
  std::size_t c = 0;
  const int modes = 2 * n;
  for (int i = 0; i < modes; ++i)
    for (int j = i + 1; j < modes; ++j) {
      const PhasedPauli ij = multiply(chi[i], chi[j]);
      for (int k = j + 1; k < modes; ++k) {
        const PhasedPauli ijk = multiply(ij, chi[k]);
        for (int l = k + 1; l < modes; ++l) {
          const PhasedPauli prod = multiply(ijk, chi[l]);
          if (prod.phase_exponent % 2 != 0) throw std::logic_error("build_syk: non-real reduced weight");
          const double sign = prod.phase_exponent == 0 ? 1.0 : -1.0;
          terms.push_back({sign * couplings[c++], prod.string});
        }
      }
    }
  return Hamiltonian(n, terms);
}

}  // namespace qevo
