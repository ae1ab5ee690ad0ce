#pragma once

#include <atomic>
#include <cstdint>
#include <optional>

#include "qevo/circuit.hpp"
#include "qevo/pauli.hpp"
#include "qevo/state.hpp"

namespace qevo {

/// Monotone evaluation counter shared between concurrent cost-function users.
class EvaluationCounter {
 public:
  void increment(std::uint64_t by = 1) noexcept { count_.fetch_add(by, std::memory_order_relaxed); }
  std::uint64_t value() const noexcept { return count_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> count_{0};
};

/// Applies `gate` in place. `angle` must be present exactly when the gate is parametric.
/// Throws std::invalid_argument / std::out_of_range on misuse.
void apply_gate(StateVector& state, const Gate& gate, std::optional<double> angle = {});

/// U(params)|initial>.
StateVector run_circuit(const Circuit& circuit, const ParameterVector& params,
                        const StateVector& initial);
/// U(params)|0...0>.
StateVector run_circuit(const Circuit& circuit, const ParameterVector& params);

/// Applies `circuit` in place, reading angles from `params` (size n_params).
void run_circuit_inplace(const Circuit& circuit, std::span<const double> params, StateVector& state);

/// sum_a w_a <state|P_a|state>. Imaginary round-off is discarded.
double expectation(const StateVector& state, const Hamiltonian& hamiltonian);
/// Same, counting one cost-function call on `counter`.
double expectation(const StateVector& state, const Hamiltonian& hamiltonian,
                   EvaluationCounter& counter);

}  // namespace qevo
