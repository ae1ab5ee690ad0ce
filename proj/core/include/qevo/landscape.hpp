#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qevo/circuit.hpp"
#include "qevo/random.hpp"
#include "qevo/simulator.hpp"

namespace qevo {

/// Harmonic content of every single-parameter cross-section of a cost function.
/// Three: kappa sin(2t + xi) + C (rotations between parameter-free entanglers).
/// Five: adds gamma sin(t + phi) (parametric controlled rotations, Frobenius costs).
enum class LandscapeOrder { Three = 3, Five = 5 };

/// Cost evaluations needed per coordinate when the value at the base point is known.
constexpr int evaluations_per_coordinate(LandscapeOrder order) noexcept {
  return order == LandscapeOrder::Three ? 2 : 4;
}

/// Deterministic map from circuit parameters to a real cost. Implementations must
/// tolerate concurrent evaluate() calls.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual std::size_t n_params() const = 0;
  virtual LandscapeOrder order() const = 0;
  virtual double evaluate(std::span<const double> params) const = 0;
};

/// Objective backed by a callable, mostly for synthetic landscapes.
class FunctionObjective final : public Objective {
 public:
  using Fn = std::function<double(std::span<const double>)>;
  FunctionObjective(std::size_t n_params, LandscapeOrder order, Fn fn)
      : n_params_(n_params), order_(order), fn_(std::move(fn)) {}

  std::size_t n_params() const override { return n_params_; }
  LandscapeOrder order() const override { return order_; }
  double evaluate(std::span<const double> params) const override { return fn_(params); }

 private:
  std::size_t n_params_;
  LandscapeOrder order_;
  Fn fn_;
};

/// <0|U(t)^dag H U(t)|0> for a circuit and Hamiltonian on the same qubits.
/// Order is Five when the circuit contains CRY gates, Three otherwise.
class VqeObjective final : public Objective {
 public:
  VqeObjective(const Circuit& circuit, const Hamiltonian& hamiltonian);

  std::size_t n_params() const override { return circuit_.n_params(); }
  LandscapeOrder order() const override { return order_; }
  double evaluate(std::span<const double> params) const override;

  const Circuit& circuit() const noexcept { return circuit_; }
  const Hamiltonian& hamiltonian() const noexcept { return hamiltonian_; }

 private:
  const Circuit& circuit_;
  const Hamiltonian& hamiltonian_;
  LandscapeOrder order_;
};

/// Counting view of an Objective. Each agent owns one; `shared`, when given, is
/// incremented alongside the local count.
class CostFunction {
 public:
  explicit CostFunction(const Objective& objective, EvaluationCounter* shared = nullptr)
      : objective_(&objective), shared_(shared) {}

  double operator()(std::span<const double> params);
  double operator()(const ParameterVector& params) { return (*this)(params.values()); }

  LandscapeOrder order() const { return objective_->order(); }
  std::size_t n_params() const { return objective_->n_params(); }
  std::uint64_t evaluations() const noexcept { return local_; }
  const Objective& objective() const noexcept { return *objective_; }

 private:
  const Objective* objective_;
  EvaluationCounter* shared_;
  std::uint64_t local_ = 0;
};

/// kappa sin(2t + xi) + C.
struct Sinusoid3 {
  double kappa = 0.0;
  double xi = 0.0;
  double C = 0.0;

  double operator()(double t) const noexcept;
};

/// kappa sin(2t + xi) + gamma sin(t + phi) + C.
struct Sinusoid5 {
  double kappa = 0.0;
  double xi = 0.0;
  double gamma = 0.0;
  double phi = 0.0;
  double C = 0.0;

  double operator()(double t) const noexcept;
  double derivative(double t) const noexcept;
  double second_derivative(double t) const noexcept;
};

/// Model from samples at theta, theta + pi/4, theta + pi/2.
Sinusoid3 fit3_from_samples(double y0, double y1, double y2, double theta) noexcept;
/// Model from samples at theta + 2 pi k / 5, k = 0..4 (exact Fourier inversion).
Sinusoid5 fit5_from_samples(const std::array<double, 5>& y, double theta) noexcept;

/// Cross-section along coordinate i, reusing f0 = f(params). Exactly 2 evaluations.
Sinusoid3 fit3(CostFunction& f, const ParameterVector& params, std::size_t i, double f0);
/// Cross-section along coordinate i, reusing f0 = f(params). Exactly 4 evaluations.
Sinusoid5 fit5(CostFunction& f, const ParameterVector& params, std::size_t i, double f0);

/// Global minimizer of the model in [0, 2pi); of the two per period, the one closest
/// to `current` on the circle. A flat model returns `current`.
double argmin3(const Sinusoid3& model, double current) noexcept;

struct CoordinateMinimum {
  double angle;
  bool refined;  // false when Newton refinement failed and a grid point was used
};

/// 64-point grid plus safeguarded Newton refinement of every grid-local minimum.
CoordinateMinimum minimize5(const Sinusoid5& model, double current) noexcept;
double argmin5(const Sinusoid5& model, double current) noexcept;

/// Sparse displacement d with d_i = 0 off the support.
struct SearchDirection {
  std::vector<std::size_t> support;
  std::vector<double> displacement;  // parallel to support

  bool is_zero() const noexcept;
  /// Dense copy of length n.
  std::vector<double> dense(std::size_t n) const;
};

/// d_i = theta_i* - theta_i for i in subset, each theta_i* the exact coordinate
/// minimum at the frozen base point. theta_i* is taken as the representative closest
/// to theta_i, so |d_i| <= pi. Costs evaluations_per_coordinate(order) * |subset|.
/// Throws std::invalid_argument for an empty subset or repeated indices.
SearchDirection search_direction(CostFunction& f, const ParameterVector& params,
                                 std::span<const std::size_t> subset, double f0);

struct LineSearchResult {
  double t_best;
  ParameterVector params;
  double cost;
};

/// Best of f(params + t d) over t = k/(S-1), k = 0..S-1, with f(params) = f0 reused.
/// Costs S-1 evaluations. Requires S >= 2.
LineSearchResult line_search(CostFunction& f, const ParameterVector& params,
                             const SearchDirection& d, double f0, int samples);

struct IterateConfig {
  std::size_t subset_size = 1;   // M
  int line_samples = 32;         // S
  int max_direction_attempts = 16;
};

struct IterationResult {
  ParameterVector params;
  double cost;
  double t_best = 0.0;
  int direction_attempts = 0;
  bool line_search_ran = false;
  bool converged = false;  // every attempt produced a zero direction
  std::uint64_t evaluations = 0;
};

/// Draws min(M, L) distinct indices uniformly, in ascending order.
std::vector<std::size_t> sample_subset(CounterRng& rng, std::size_t n_params, std::size_t subset_size);

/// One optimizer step: random subset, search direction, line search. A zero
/// direction triggers a fresh subset, up to max_direction_attempts, after which the
/// point is reported converged and returned unchanged. Never increases the cost.
IterationResult iterate(CostFunction& f, const ParameterVector& params, double f0,
                        const IterateConfig& cfg, CounterRng& rng);

/// Expected evaluation count of an iteration with the given outcome.
std::uint64_t iteration_cost(LandscapeOrder order, std::size_t subset_size, int line_samples,
                             int direction_attempts, bool line_search_ran) noexcept;

/// Dense cross-section (t_k, f(..., t_k, ...)) at t_k = 2 pi k / n_points. Not counted.
std::vector<std::pair<double, double>> scan_cross_section(const Objective& objective,
                                                          const ParameterVector& params,
                                                          std::size_t index, std::size_t n_points);

}  // namespace qevo
