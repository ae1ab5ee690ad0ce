#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "qevo/ansatz.hpp"
#include "qevo/evolve.hpp"

namespace qevo {

/// Square complex matrix of size 2^n, unitary within `tolerance` in max norm.
class TargetUnitary {
 public:
  static constexpr double kUnitarityTolerance = 1e-8;

  /// Throws std::invalid_argument for a non-square, non-power-of-two or non-unitary matrix.
  explicit TargetUnitary(Eigen::MatrixXcd matrix, double tolerance = kUnitarityTolerance);

  static TargetUnitary identity(int n_qubits);

  int n_qubits() const noexcept { return n_qubits_; }
  Eigen::Index dimension() const noexcept { return matrix_.rows(); }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

 private:
  Eigen::MatrixXcd matrix_;
  int n_qubits_ = 0;
};

constexpr int kMaxSynthesisQubits = 8;

/// Column j is the circuit applied to basis state |j>.
TargetUnitary circuit_unitary(const Circuit& circuit, const ParameterVector& params);

/// d - Re Tr(U^dag V).
double frobenius_cost(const TargetUnitary& u, const TargetUnitary& v);
/// 0.5 ||V - U||_F^2, the same quantity for unitary inputs.
double frobenius_half_squared(const TargetUnitary& u, const TargetUnitary& v);

/// Multiplies the target by a global phase so that its largest-magnitude diagonal
/// entry becomes real and positive.
TargetUnitary align_global_phase(const TargetUnitary& target);

/// frobenius_cost(target, circuit_unitary(circuit, params)) without forming V.
class SynthesisObjective final : public Objective {
 public:
  SynthesisObjective(const TargetUnitary& target, const Circuit& circuit);

  std::size_t n_params() const override { return circuit_.n_params(); }
  LandscapeOrder order() const override { return LandscapeOrder::Five; }
  double evaluate(std::span<const double> params) const override;

 private:
  const TargetUnitary& target_;
  const Circuit& circuit_;
};

struct SynthesisReport {
  double final_cost = 0.0;
  int cnot_count = 0;
  std::uint64_t evaluations = 0;         // evolution plus polish
  std::uint64_t polish_evaluations = 0;
  int episodes = 0;
  int polish_sweeps = 0;
  bool polished = false;
  double wall_time = 0.0;                // seconds
  Circuit circuit{1};
  ParameterVector params;
  std::vector<TraceRecord> trace;
};

struct PolishOptions {
  double threshold = 1e-3;       // evolution hands over once best cost drops below this
  double target = 1e-8;
  double min_improvement = 1e-14;
  int max_sweeps = 100000;
};

/// Evolutionary search until the cost falls below options.threshold, followed by
/// full coordinate sweeps of exact single-parameter minimization. Non-convergence is
/// reported through final_cost.
SynthesisReport synthesize(const TargetUnitary& target, const AnsatzSpec& ansatz, const EvolutionConfig& cfg,
                           const PolishOptions& options = {}, const RunOptions& run_options = {});

/// Matrix text format: a line with n, then 2^n rows of 2^n "re,im" pairs.
TargetUnitary read_target(std::istream& in);
TargetUnitary load_target(const std::string& path);
void write_target(std::ostream& out, const TargetUnitary& target);

}  // namespace qevo
