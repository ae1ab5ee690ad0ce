#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qevo {

/// Gate set of the simulator. Rotations are full-angle so that every
/// single-parameter cross-section of an expectation value has period pi
/// (a sin(2t) harmonic) for RotZ/RotY, and periods {pi, 2pi} with CRY present:
///
///   RotZ(t) = diag(1, e^{2it})                (exp(-itZ) up to a global phase)
///   RotY(t) = exp(-itY) = [[cos t, -sin t], [sin t, cos t]]
///   CNOT    = X on target iff control is 1
///   CRY(t)  = RotY(t) on target iff control is 1
enum class GateKind { RotZ, RotY, CNOT, CRY };

std::string_view to_string(GateKind kind) noexcept;
constexpr bool is_parametric(GateKind kind) noexcept { return kind != GateKind::CNOT; }
constexpr bool is_controlled(GateKind kind) noexcept {
  return kind == GateKind::CNOT || kind == GateKind::CRY;
}

struct Gate {
  GateKind kind;
  int target;
  std::optional<int> control;
  std::optional<std::size_t> param_index;

  static Gate rot_z(int target, std::size_t param) { return {GateKind::RotZ, target, {}, param}; }
  static Gate rot_y(int target, std::size_t param) { return {GateKind::RotY, target, {}, param}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, target, control, {}}; }
  static Gate cry(int control, int target, std::size_t param) {
    return {GateKind::CRY, target, control, param};
  }

  bool operator==(const Gate&) const = default;
};

/// Immutable gate sequence with a one-to-one map from parameters to gates.
class Circuit {
 public:
  /// Throws std::invalid_argument if any gate is malformed, a qubit index is out of
  /// range, or the parameter indices are not exactly {0, ..., n_params-1} each used once.
  Circuit(int n_qubits, std::vector<Gate> gates, std::size_t n_params);

  /// Empty circuit.
  explicit Circuit(int n_qubits) : Circuit(n_qubits, {}, 0) {}

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t n_params() const noexcept { return n_params_; }
  std::span<const Gate> gates() const noexcept { return gates_; }

  /// Index into gates() of the gate that consumes `param`.
  std::size_t gate_of_param(std::size_t param) const { return gate_of_param_.at(param); }

  std::size_t count(GateKind kind) const noexcept;

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
  std::size_t n_params_;
  std::vector<std::size_t> gate_of_param_;
};

/// Wraps an angle into [0, 2pi).
double canonical_angle(double radians) noexcept;

/// Circuit parameters, each kept in [0, 2pi).
class ParameterVector {
 public:
  ParameterVector() = default;
  explicit ParameterVector(std::size_t size) : values_(size, 0.0) {}
  explicit ParameterVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  void set(std::size_t i, double radians) noexcept { values_[i] = canonical_angle(radians); }

  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const ParameterVector&) const = default;

 private:
  std::vector<double> values_;
};

}  // namespace qevo
