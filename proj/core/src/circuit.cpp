#include "qevo/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qevo {

std::string_view to_string(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::RotZ: return "RotZ";
    case GateKind::RotY: return "RotY";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CRY: return "CRY";
  }
  return "?";
}

Circuit::Circuit(int n_qubits, std::vector<Gate> gates, std::size_t n_params)
    : n_qubits_(n_qubits), gates_(std::move(gates)), n_params_(n_params) {
  if (n_qubits < 1) throw std::invalid_argument("Circuit: need at least one qubit");
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  gate_of_param_.assign(n_params, kUnset);

  for (std::size_t g = 0; g < gates_.size(); ++g) {
    const Gate& gate = gates_[g];
    const std::string where = "Circuit: gate " + std::to_string(g) + " (" + std::string(to_string(gate.kind)) + ")";
    if (gate.target < 0 || gate.target >= n_qubits) throw std::invalid_argument(where + ": target out of range");
    if (is_controlled(gate.kind)) {
      if (!gate.control) throw std::invalid_argument(where + ": missing control");
      if (*gate.control < 0 || *gate.control >= n_qubits) throw std::invalid_argument(where + ": control out of range");
      if (*gate.control == gate.target) throw std::invalid_argument(where + ": control equals target");
    } else if (gate.control) {
      throw std::invalid_argument(where + ": unexpected control");
    }
    if (is_parametric(gate.kind)) {
      if (!gate.param_index) throw std::invalid_argument(where + ": missing parameter index");
      const std::size_t p = *gate.param_index;
      if (p >= n_params) throw std::invalid_argument(where + ": parameter index out of range");
      if (gate_of_param_[p] != kUnset) throw std::invalid_argument(where + ": parameter " + std::to_string(p) + " shared");
      gate_of_param_[p] = g;
    } else if (gate.param_index) {
      throw std::invalid_argument(where + ": parameter-free gate carries a parameter index");
    }
  }
  if (std::find(gate_of_param_.begin(), gate_of_param_.end(), kUnset) != gate_of_param_.end()) {
    throw std::invalid_argument("Circuit: unused parameter index");
  }
}

std::size_t Circuit::count(GateKind kind) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

double canonical_angle(double radians) noexcept {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

ParameterVector::ParameterVector(std::vector<double> values) : values_(std::move(values)) {
  for (double& v : values_) v = canonical_angle(v);
}

}  // namespace qevo
