#include "qevo/state.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qevo {

namespace {
constexpr int kMaxStateQubits = 30;

void check_qubits(int n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxStateQubits) {
    throw std::invalid_argument("StateVector: qubit count out of range: " + std::to_string(n_qubits));
  }
}
}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  check_qubits(n_qubits);
  amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dimension()) throw std::out_of_range("StateVector::basis: index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("StateVector: amplitude count must be a power of two");
  }
  const int n = std::countr_zero(dim);
  check_qubits(n);
  return StateVector(n, std::move(amplitudes));
}

double StateVector::norm() const noexcept {
  double sum = 0.0;
  for (const Complex& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("StateVector::normalize: zero vector");
  for (Complex& a : amplitudes_) a /= n;
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dimension() != dimension()) throw std::invalid_argument("StateVector::inner: dimension mismatch");
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) sum += std::conj(amplitudes_[i]) * other.amplitudes_[i];
  return sum;
}

}  // namespace qevo
