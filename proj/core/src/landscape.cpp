#include "qevo/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qevo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kGridPoints = 64;
constexpr int kNewtonIterations = 100;
// Displacements below this are treated as exact zeros.
constexpr double kZeroDisplacement = 1e-14;

// Amplitudes below this fraction of the offset scale are round-off, not landscape.
double flat_tolerance(double offset) noexcept { return 1e-13 * std::max(1.0, std::abs(offset)); }

double circular_distance(double a, double b) noexcept {
  const double d = canonical_angle(a - b);
  return std::min(d, kTwoPi - d);
}

// Representative of x modulo 2pi in (-pi, pi].
double wrap_signed(double x) noexcept {
  const double c = canonical_angle(x);
  return c > kPi ? c - kTwoPi : c;
}

std::vector<double> with_coordinate(const ParameterVector& params, std::size_t i, double value) {
  std::vector<double> v(params.values().begin(), params.values().end());
  v[i] = value;
  return v;
}

}  // namespace

VqeObjective::VqeObjective(const Circuit& circuit, const Hamiltonian& hamiltonian)
    : circuit_(circuit),
      hamiltonian_(hamiltonian),
      order_(circuit.count(GateKind::CRY) > 0 ? LandscapeOrder::Five : LandscapeOrder::Three) {
  if (circuit.n_qubits() != hamiltonian.n_qubits()) throw std::invalid_argument("VqeObjective: qubit count mismatch");
}

double VqeObjective::evaluate(std::span<const double> params) const {
  StateVector state(circuit_.n_qubits());
  run_circuit_inplace(circuit_, params, state);
  return expectation(state, hamiltonian_);
}

double CostFunction::operator()(std::span<const double> params) {
  const double value = objective_->evaluate(params);
  ++local_;
  if (shared_ != nullptr) shared_->increment();
  return value;
}

double Sinusoid3::operator()(double t) const noexcept { return kappa * std::sin(2.0 * t + xi) + C; }

double Sinusoid5::operator()(double t) const noexcept {
  return kappa * std::sin(2.0 * t + xi) + gamma * std::sin(t + phi) + C;
}

double Sinusoid5::derivative(double t) const noexcept {
  return 2.0 * kappa * std::cos(2.0 * t + xi) + gamma * std::cos(t + phi);
}

double Sinusoid5::second_derivative(double t) const noexcept {
  return -4.0 * kappa * std::sin(2.0 * t + xi) - gamma * std::sin(t + phi);
}

Sinusoid3 fit3_from_samples(double y0, double y1, double y2, double theta) noexcept {
  // At u = t - theta: y0 = k sin(s) + C, y1 = k cos(s) + C, y2 = -k sin(s) + C with s = 2 theta + xi.
  Sinusoid3 m;
  m.C = 0.5 * (y0 + y2);
  const double ks = y0 - m.C;
  const double kc = y1 - m.C;
  m.kappa = std::hypot(ks, kc);
  m.xi = m.kappa == 0.0 ? 0.0 : canonical_angle(std::atan2(ks, kc) - 2.0 * theta);
  return m;
}

Sinusoid5 fit5_from_samples(const std::array<double, 5>& y, double theta) noexcept {
  double c0 = 0.0;
  std::array<double, 3> a{};
  std::array<double, 3> b{};
  for (int k = 0; k < 5; ++k) {
    const double delta = kTwoPi * k / 5.0;
    c0 += y[k];
    for (int m = 1; m <= 2; ++m) {
      a[m] += y[k] * std::cos(m * delta);
      b[m] += y[k] * std::sin(m * delta);
    }
  }
  Sinusoid5 model;
  model.C = c0 / 5.0;
  for (int m = 1; m <= 2; ++m) {
    a[m] *= 2.0 / 5.0;
    b[m] *= 2.0 / 5.0;
  }
  // a cos(mu) + b sin(mu) = hypot(a, b) sin(mu + atan2(a, b)), then shift u = t - theta.
  model.kappa = std::hypot(a[2], b[2]);
  model.xi = model.kappa == 0.0 ? 0.0 : canonical_angle(std::atan2(a[2], b[2]) - 2.0 * theta);
  model.gamma = std::hypot(a[1], b[1]);
  model.phi = model.gamma == 0.0 ? 0.0 : canonical_angle(std::atan2(a[1], b[1]) - theta);
  return model;
}

Sinusoid3 fit3(CostFunction& f, const ParameterVector& params, std::size_t i, double f0) {
  if (i >= params.size()) throw std::out_of_range("fit3: coordinate out of range");
  const double theta = params[i];
  const double y1 = f(with_coordinate(params, i, canonical_angle(theta + kPi / 4.0)));
  const double y2 = f(with_coordinate(params, i, canonical_angle(theta + kPi / 2.0)));
  return fit3_from_samples(f0, y1, y2, theta);
}

Sinusoid5 fit5(CostFunction& f, const ParameterVector& params, std::size_t i, double f0) {
  if (i >= params.size()) throw std::out_of_range("fit5: coordinate out of range");
  const double theta = params[i];
  std::array<double, 5> y{};
  y[0] = f0;
  for (int k = 1; k < 5; ++k) y[k] = f(with_coordinate(params, i, canonical_angle(theta + kTwoPi * k / 5.0)));
  return fit5_from_samples(y, theta);
}

double argmin3(const Sinusoid3& model, double current) noexcept {
  if (model.kappa <= flat_tolerance(model.C)) return current;
  // sin(2t + xi) = -1 at 2t + xi = 3pi/2 (mod 2pi).
  const double p0 = canonical_angle((1.5 * kPi - model.xi) / 2.0);
  const double p1 = canonical_angle(p0 + kPi);
  const double d0 = circular_distance(p0, current);
  const double d1 = circular_distance(p1, current);
  if (std::abs(d0 - d1) <= 1e-12) return std::min(p0, p1);
  return d0 < d1 ? p0 : p1;
}

CoordinateMinimum minimize5(const Sinusoid5& model, double current) noexcept {
  const double scale = 2.0 * model.kappa + model.gamma;
  if (model.kappa + model.gamma <= flat_tolerance(model.C)) return {current, true};

  constexpr double h = kTwoPi / kGridPoints;
  std::array<double, kGridPoints> grid{};
  for (int k = 0; k < kGridPoints; ++k) grid[k] = model(h * k);

  const double deriv_tol = 1e-12 * std::max(1.0, scale);
  struct Candidate {
    double angle;
    double value;
    bool refined;
  };
  std::vector<Candidate> candidates;
  for (int k = 0; k < kGridPoints; ++k) {
    const double left = grid[(k + kGridPoints - 1) % kGridPoints];
    const double right = grid[(k + 1) % kGridPoints];
    if (grid[k] > left || grid[k] > right) continue;

    // Safeguarded Newton on the derivative inside the bracket around grid point k.
    double lo = h * (k - 1);
    double hi = h * (k + 1);
    double x = h * k;
    bool refined = false;
    if (model.derivative(lo) <= 0.0 && model.derivative(hi) >= 0.0) {
      for (int it = 0; it < kNewtonIterations; ++it) {
        const double g = model.derivative(x);
        if (std::abs(g) < deriv_tol || hi - lo < 1e-15) {
          refined = true;
          break;
        }
        if (g < 0.0) lo = x; else hi = x;
        const double curvature = model.second_derivative(x);
        double next = curvature > 0.0 ? x - g / curvature : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
      }
    }
    if (!refined) x = h * k;
    candidates.push_back({canonical_angle(x), model(x), refined});
  }
  if (candidates.empty()) return {current, false};

  double best_value = candidates.front().value;
  for (const Candidate& c : candidates) best_value = std::min(best_value, c.value);
  const double tie = 1e-13 * std::max(1.0, scale);
  const Candidate* chosen = nullptr;
  for (const Candidate& c : candidates) {
    if (c.value > best_value + tie) continue;
    if (chosen == nullptr || circular_distance(c.angle, current) < circular_distance(chosen->angle, current)) {
      chosen = &c;
    }
  }
  return {chosen->angle, chosen->refined};
}

double argmin5(const Sinusoid5& model, double current) noexcept { return minimize5(model, current).angle; }

bool SearchDirection::is_zero() const noexcept {
  return std::all_of(displacement.begin(), displacement.end(), [](double d) { return d == 0.0; });
}

std::vector<double> SearchDirection::dense(std::size_t n) const {
  std::vector<double> d(n, 0.0);
  for (std::size_t k = 0; k < support.size(); ++k) d.at(support[k]) = displacement[k];
  return d;
}

SearchDirection search_direction(CostFunction& f, const ParameterVector& params,
                                 std::span<const std::size_t> subset, double f0) {
  if (subset.empty()) throw std::invalid_argument("search_direction: empty subset");
  std::vector<std::size_t> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("search_direction: repeated index");
  }
  if (sorted.back() >= params.size()) throw std::out_of_range("search_direction: index out of range");

  SearchDirection d;
  d.support.assign(subset.begin(), subset.end());
  d.displacement.reserve(subset.size());
  const bool three = f.order() == LandscapeOrder::Three;
  for (std::size_t i : subset) {
    const double theta = params[i];
    const double target = three ? argmin3(fit3(f, params, i, f0), theta) : argmin5(fit5(f, params, i, f0), theta);
    double step = wrap_signed(target - theta);
    if (std::abs(step) <= kZeroDisplacement) step = 0.0;
    d.displacement.push_back(step);
  }
  return d;
}

LineSearchResult line_search(CostFunction& f, const ParameterVector& params, const SearchDirection& d,
                             double f0, int samples) {
  if (samples < 2) throw std::invalid_argument("line_search: need at least two samples");
  LineSearchResult best{0.0, params, f0};
  std::vector<double> trial(params.values().begin(), params.values().end());
  for (int k = 1; k < samples; ++k) {
    const double t = static_cast<double>(k) / (samples - 1);
    for (std::size_t j = 0; j < d.support.size(); ++j) {
      const std::size_t i = d.support[j];
      trial[i] = canonical_angle(params[i] + t * d.displacement[j]);
    }
    const double cost = f(trial);
    if (cost < best.cost) {
      best.t_best = t;
      best.cost = cost;
      best.params = ParameterVector(trial);
    }
  }
  return best;
}

std::vector<std::size_t> sample_subset(CounterRng& rng, std::size_t n_params, std::size_t subset_size) {
  const std::size_t m = std::min(subset_size, n_params);
  std::vector<std::size_t> pool(n_params);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t k = 0; k < m; ++k) std::swap(pool[k], pool[k + rng.below(n_params - k)]);
  pool.resize(m);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::uint64_t iteration_cost(LandscapeOrder order, std::size_t subset_size, int line_samples,
                             int direction_attempts, bool line_search_ran) noexcept {
  const auto per_attempt = static_cast<std::uint64_t>(evaluations_per_coordinate(order)) * subset_size;
  return per_attempt * static_cast<std::uint64_t>(direction_attempts) +
         (line_search_ran ? static_cast<std::uint64_t>(line_samples - 1) : 0);
}

IterationResult iterate(CostFunction& f, const ParameterVector& params, double f0, const IterateConfig& cfg,
                        CounterRng& rng) {
  if (cfg.subset_size == 0) throw std::invalid_argument("iterate: subset size must be positive");
  if (params.size() != f.n_params()) throw std::invalid_argument("iterate: parameter count mismatch");
  const std::uint64_t before = f.evaluations();
  IterationResult result{params, f0};
  for (int attempt = 1; attempt <= cfg.max_direction_attempts; ++attempt) {
    const std::vector<std::size_t> subset = sample_subset(rng, params.size(), cfg.subset_size);
    const SearchDirection d = search_direction(f, params, subset, f0);
    result.direction_attempts = attempt;
    if (d.is_zero()) continue;
    LineSearchResult ls = line_search(f, params, d, f0, cfg.line_samples);
    result.params = std::move(ls.params);
    result.cost = ls.cost;
    result.t_best = ls.t_best;
    result.line_search_ran = true;
    result.evaluations = f.evaluations() - before;
    return result;
  }
  result.converged = true;
  result.evaluations = f.evaluations() - before;
  return result;
}

std::vector<std::pair<double, double>> scan_cross_section(const Objective& objective, const ParameterVector& params,
                                                          std::size_t index, std::size_t n_points) {
  if (index >= params.size()) throw std::out_of_range("scan_cross_section: parameter index out of range");
  if (n_points == 0) throw std::invalid_argument("scan_cross_section: need at least one point");
  std::vector<std::pair<double, double>> rows;
  rows.reserve(n_points);
  std::vector<double> v(params.values().begin(), params.values().end());
  for (std::size_t k = 0; k < n_points; ++k) {
    const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(n_points);
    v[index] = t;
    rows.emplace_back(t, objective.evaluate(v));
  }
  return rows;
}

}  // namespace qevo
