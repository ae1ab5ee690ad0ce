#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qevo {

using Complex = std::complex<double>;

/// Dense statevector over n qubits. Qubit q is bit q of the basis index
/// (qubit 0 is the least significant bit).
class StateVector {
 public:
  /// |0...0>.
  explicit StateVector(int n_qubits);

  static StateVector basis(int n_qubits, std::uint64_t index);
  /// Takes ownership of `amplitudes`; size must be a power of two. No normalization.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }

  std::span<Complex> amplitudes() noexcept { return amplitudes_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

  Complex& operator[](std::size_t i) noexcept { return amplitudes_[i]; }
  const Complex& operator[](std::size_t i) const noexcept { return amplitudes_[i]; }

  double norm() const noexcept;
  void normalize();

  /// <this|other>
  Complex inner(const StateVector& other) const;

 private:
  StateVector(int n_qubits, std::vector<Complex> amplitudes)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

  int n_qubits_;
  std::vector<Complex> amplitudes_;
};

}  // namespace qevo
