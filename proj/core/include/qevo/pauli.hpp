#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qevo/state.hpp"

namespace qevo {

/// Pauli string in symplectic form: qubit q carries X if bit q of x_mask is set,
/// Z if bit q of z_mask is set, and Y when both are set. The operator is the plain
/// tensor product of single-qubit Paulis (no hidden phase).
class PauliString {
 public:
  static constexpr int kMaxQubits = 62;

  explicit PauliString(int n_qubits) : PauliString(n_qubits, 0, 0) {}
  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  /// Parses "XIZY" with qubit 0 leftmost.
  static PauliString parse(std::string_view text);
  /// Single-qubit operator `op` in {I,X,Y,Z} on `qubit`.
  static PauliString single(int n_qubits, int qubit, char op);

  int n_qubits() const noexcept { return n_qubits_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }

  char op(int qubit) const noexcept;
  bool is_identity() const noexcept { return x_ == 0 && z_ == 0; }
  int weight() const noexcept;
  std::string str() const;

  bool commutes_with(const PauliString& other) const;

  auto operator<=>(const PauliString&) const = default;

 private:
  int n_qubits_;
  std::uint64_t x_;
  std::uint64_t z_;
};

struct PauliTerm {
  double weight;
  PauliString string;
};

/// String times a fourth root of unity, phase = i^phase_exponent.
struct PhasedPauli {
  int phase_exponent = 0;  // 0:+1, 1:+i, 2:-1, 3:-i
  PauliString string;

  Complex phase() const noexcept;
  bool operator==(const PhasedPauli&) const = default;
};

/// Exact product a*b. Throws std::invalid_argument on a qubit-count mismatch.
PhasedPauli multiply(const PhasedPauli& a, const PhasedPauli& b);

/// Returns string|state>.
StateVector apply_pauli(const PauliString& string, const StateVector& state);

/// Weighted sum of Pauli strings. Duplicate strings are merged at construction and
/// terms with |weight| < 1e-14 are dropped; terms are kept in first-appearance order.
class Hamiltonian {
 public:
  static constexpr double kDropTolerance = 1e-14;

  Hamiltonian(int n_qubits, const std::vector<PauliTerm>& terms);

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// One `<weight> <string>` line per term, weights with round-trip precision.
  void write(std::ostream& out) const;
  std::string to_text() const;
  /// Parses the text format; blank lines and lines starting with '#' are skipped.
  static Hamiltonian read(std::istream& in);
  static Hamiltonian from_text(std::string_view text);

 private:
  int n_qubits_;
  std::vector<PauliTerm> terms_;
};

/// out = H|in>, matrix-free. `out` is resized as needed.
void apply_hamiltonian(const Hamiltonian& h, std::span<const Complex> in, std::vector<Complex>& out);

}  // namespace qevo
