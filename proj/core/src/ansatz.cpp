#include "qevo/ansatz.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qevo {

namespace {

std::string angle_text(double radians) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", radians);
  return buf;
}

void add_rotation_layer(std::vector<Gate>& gates, int n, std::size_t& next) {
  for (int q = 0; q < n; ++q) {
    gates.push_back(Gate::rot_z(q, next++));
    gates.push_back(Gate::rot_y(q, next++));
    gates.push_back(Gate::rot_z(q, next++));
  }
}

}  // namespace

std::string to_string(Entangler e) { return e == Entangler::CnotChain ? "cnot_chain" : "cry_chain"; }

Entangler parse_entangler(const std::string& name) {
  if (name == "cnot_chain") return Entangler::CnotChain;
  if (name == "cry_chain") return Entangler::CryChain;
  throw std::invalid_argument("unknown entangler '" + name + "'");
}

std::size_t ansatz_parameter_count(const AnsatzSpec& spec) {
  const auto n = static_cast<std::size_t>(spec.n_qubits);
  const auto p = static_cast<std::size_t>(spec.layers);
  std::size_t count = 3 * n * p;
  if (spec.entangler == Entangler::CryChain) count += (n - 1) * p;
  if (spec.final_rotations) count += 3 * n;
  return count;
}

Circuit build_ansatz(const AnsatzSpec& spec) {
  if (spec.layers < 1) throw std::invalid_argument("build_ansatz: need at least one layer");
  if (spec.n_qubits < 2) throw std::invalid_argument("build_ansatz: need at least two qubits");
  const int n = spec.n_qubits;
  std::vector<Gate> gates;
  std::size_t next = 0;
  for (int layer = 0; layer < spec.layers; ++layer) {
    add_rotation_layer(gates, n, next);
    for (int q = 0; q + 1 < n; ++q) {
      if (spec.entangler == Entangler::CnotChain) {
        gates.push_back(Gate::cnot(q, q + 1));
      } else {
        gates.push_back(Gate::cry(q, q + 1, next++));
      }
    }
  }
  if (spec.final_rotations) add_rotation_layer(gates, n, next);
  return Circuit(n, std::move(gates), next);
}

std::string export_qasm(const Circuit& circuit, const ParameterVector& params) {
  if (params.size() != circuit.n_params()) {
    throw std::invalid_argument("export_qasm: circuit has " + std::to_string(circuit.n_params()) +
                                " parameters but " + std::to_string(params.size()) + " are bound");
  }
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << circuit.n_qubits() << "];\n";
  for (const Gate& g : circuit.gates()) {
    const double angle = g.param_index ? 2.0 * params[*g.param_index] : 0.0;
    switch (g.kind) {
      case GateKind::RotZ: out << "u1(" << angle_text(angle) << ") q[" << g.target << "];\n"; break;
      case GateKind::RotY: out << "ry(" << angle_text(angle) << ") q[" << g.target << "];\n"; break;
      case GateKind::CNOT: out << "cx q[" << *g.control << "],q[" << g.target << "];\n"; break;
      case GateKind::CRY:
        out << "cry(" << angle_text(angle) << ") q[" << *g.control << "],q[" << g.target << "];\n";
        break;
    }
  }
  return out.str();
}

}  // namespace qevo
