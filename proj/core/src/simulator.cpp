#include "qevo/simulator.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qevo {

namespace {

void check_qubit(const StateVector& state, int q, const char* what) {
  if (q < 0 || q >= state.n_qubits()) throw std::out_of_range(std::string("apply_gate: ") + what + " out of range");
}

// Visits every index pair (i0, i1) differing only in bit `target`, with i0 having it clear.
template <typename F>
void for_each_pair(std::size_t dim, int target, F&& f) {
  const std::size_t stride = std::size_t{1} << target;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) f(i, i + stride);
  }
}

void rot_y(std::span<Complex> a, int target, std::size_t control_mask, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  for_each_pair(a.size(), target, [&](std::size_t i0, std::size_t i1) {
    if ((i0 & control_mask) != control_mask) return;
    const Complex a0 = a[i0];
    const Complex a1 = a[i1];
    a[i0] = c * a0 - s * a1;
    a[i1] = s * a0 + c * a1;
  });
}

void rot_z(std::span<Complex> a, int target, double angle) {
  const Complex phase = std::polar(1.0, 2.0 * angle);
  for_each_pair(a.size(), target, [&](std::size_t, std::size_t i1) { a[i1] *= phase; });
}

void cnot(std::span<Complex> a, int control, int target) {
  const std::size_t cmask = std::size_t{1} << control;
  for_each_pair(a.size(), target, [&](std::size_t i0, std::size_t i1) {
    if (i0 & cmask) std::swap(a[i0], a[i1]);
  });
}

void apply_unchecked(std::span<Complex> a, const Gate& gate, double angle) {
  switch (gate.kind) {
    case GateKind::RotZ: rot_z(a, gate.target, angle); break;
    case GateKind::RotY: rot_y(a, gate.target, 0, angle); break;
    case GateKind::CNOT: cnot(a, *gate.control, gate.target); break;
    case GateKind::CRY: rot_y(a, gate.target, std::size_t{1} << *gate.control, angle); break;
  }
}

Complex i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

void apply_gate(StateVector& state, const Gate& gate, std::optional<double> angle) {
  check_qubit(state, gate.target, "target");
  if (is_controlled(gate.kind)) {
    if (!gate.control) throw std::invalid_argument("apply_gate: controlled gate without control");
    check_qubit(state, *gate.control, "control");
    if (*gate.control == gate.target) throw std::invalid_argument("apply_gate: control equals target");
  }
  if (is_parametric(gate.kind) && !angle) throw std::invalid_argument("apply_gate: missing angle for parametric gate");
  if (!is_parametric(gate.kind) && angle) throw std::invalid_argument("apply_gate: angle given for parameter-free gate");
  apply_unchecked(state.amplitudes(), gate, angle.value_or(0.0));
}

void run_circuit_inplace(const Circuit& circuit, std::span<const double> params, StateVector& state) {
  if (state.n_qubits() != circuit.n_qubits()) throw std::invalid_argument("run_circuit: qubit count mismatch");
  if (params.size() != circuit.n_params()) throw std::invalid_argument("run_circuit: parameter count mismatch");
  const std::span<Complex> a = state.amplitudes();
  for (const Gate& gate : circuit.gates()) {
    apply_unchecked(a, gate, gate.param_index ? params[*gate.param_index] : 0.0);
  }
}

StateVector run_circuit(const Circuit& circuit, const ParameterVector& params, const StateVector& initial) {
  StateVector state = initial;
  run_circuit_inplace(circuit, params.values(), state);
  return state;
}

StateVector run_circuit(const Circuit& circuit, const ParameterVector& params) {
  return run_circuit(circuit, params, StateVector(circuit.n_qubits()));
}

double expectation(const StateVector& state, const Hamiltonian& hamiltonian) {
  if (state.n_qubits() != hamiltonian.n_qubits()) throw std::invalid_argument("expectation: qubit count mismatch");
  const std::span<const Complex> a = state.amplitudes();
  double energy = 0.0;
  for (const PauliTerm& term : hamiltonian.terms()) {
    const std::uint64_t x = term.string.x_mask();
    const std::uint64_t z = term.string.z_mask();
    // P|i> = i^{#Y} (-1)^{|i & z|} |i ^ x>
    Complex sum{0.0, 0.0};
    if (x == 0) {
      double diag = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double p = std::norm(a[i]);
        diag += (std::popcount(i & z) & 1) ? -p : p;
      }
      sum = diag;
    } else {
      for (std::size_t i = 0; i < a.size(); ++i) {
        const Complex v = std::conj(a[i ^ x]) * a[i];
        sum += (std::popcount(i & z) & 1) ? -v : v;
      }
      sum *= i_power(std::popcount(x & z));
    }
    energy += term.weight * sum.real();
  }
  return energy;
}

double expectation(const StateVector& state, const Hamiltonian& hamiltonian, EvaluationCounter& counter) {
  const double e = expectation(state, hamiltonian);
  counter.increment();
  return e;
}

}  // namespace qevo
