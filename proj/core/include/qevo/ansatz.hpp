#pragma once

#include <cstddef>
#include <string>

#include "qevo/circuit.hpp"

namespace qevo {

enum class Entangler { CnotChain, CryChain };

std::string to_string(Entangler e);
Entangler parse_entangler(const std::string& name);  // "cnot_chain" | "cry_chain"

struct AnsatzSpec {
  int n_qubits = 2;
  int layers = 1;
  Entangler entangler = Entangler::CnotChain;
  /// Appends one more RotZ-RotY-RotZ layer after the last entangler. Off for the
  /// plain hardware-efficient ansatz; synthesis uses it to close the circuit with
  /// local rotations.
  bool final_rotations = false;
};

/// Number of parameters build_ansatz(spec) will have:
/// 3np (+ (n-1)p for cry_chain) (+ 3n with final_rotations).
std::size_t ansatz_parameter_count(const AnsatzSpec& spec);

/// Hardware-efficient layered circuit. Each layer is RotZ-RotY-RotZ on every qubit
/// (parameters 3q, 3q+1, 3q+2 of the layer) followed by a nearest-neighbour
/// entangling chain q -> q+1 for q = 0..n-2 (CNOT, or CRY with one fresh parameter each).
/// Throws std::invalid_argument for layers < 1 or n_qubits < 2.
Circuit build_ansatz(const AnsatzSpec& spec);

/// OpenQASM 2.0 text (qelib1.inc). Angles are emitted with round-trip precision:
/// RotZ(t) -> u1(2t), RotY(t) -> ry(2t), CRY(t) -> cry(2t), CNOT -> cx.
/// Throws std::invalid_argument if params does not bind every circuit parameter.
std::string export_qasm(const Circuit& circuit, const ParameterVector& params);

}  // namespace qevo
