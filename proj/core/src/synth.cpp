#include "qevo/synth.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qevo/simulator.hpp"

namespace qevo {

namespace {

int log2_exact(Eigen::Index d) {
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  return (Eigen::Index{1} << n) == d ? n : -1;
}

void check_dimensions(const TargetUnitary& u, const TargetUnitary& v) {
  if (u.dimension() != v.dimension()) throw std::invalid_argument("frobenius_cost: dimension mismatch");
}

Complex parse_pair(const std::string& token) {
  const auto comma = token.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("target file: expected 're,im', got '" + token + "'");
  try {
    std::size_t used_re = 0;
    std::size_t used_im = 0;
    const std::string re = token.substr(0, comma);
    const std::string im = token.substr(comma + 1);
    const double a = std::stod(re, &used_re);
    const double b = std::stod(im, &used_im);
    if (used_re != re.size() || used_im != im.size()) throw std::invalid_argument("trailing characters");
    return {a, b};
  } catch (const std::exception&) {
    throw std::invalid_argument("target file: malformed entry '" + token + "'");
  }
}

}  // namespace

TargetUnitary::TargetUnitary(Eigen::MatrixXcd matrix, double tolerance) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) throw std::invalid_argument("TargetUnitary: matrix must be square");
  n_qubits_ = log2_exact(matrix_.rows());
  if (n_qubits_ < 0) throw std::invalid_argument("TargetUnitary: dimension must be a power of two");
  const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
  const double err = (gram - Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols())).cwiseAbs().maxCoeff();
  if (!(err <= tolerance)) {
    throw std::invalid_argument("TargetUnitary: matrix is not unitary (max |U^dag U - I| = " + std::to_string(err) + ")");
  }
}

TargetUnitary TargetUnitary::identity(int n_qubits) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  return TargetUnitary(Eigen::MatrixXcd::Identity(d, d));
}

TargetUnitary circuit_unitary(const Circuit& circuit, const ParameterVector& params) {
  const int n = circuit.n_qubits();
  if (n > kMaxSynthesisQubits) throw std::invalid_argument("circuit_unitary: too many qubits");
  if (params.size() != circuit.n_params()) throw std::invalid_argument("circuit_unitary: parameter count mismatch");
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd v(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    StateVector column = StateVector::basis(n, static_cast<std::uint64_t>(j));
    run_circuit_inplace(circuit, params.values(), column);
    for (Eigen::Index i = 0; i < d; ++i) v(i, j) = column[static_cast<std::size_t>(i)];
  }
  return TargetUnitary(std::move(v), 1e-10);
}

double frobenius_cost(const TargetUnitary& u, const TargetUnitary& v) {
  check_dimensions(u, v);
  const Complex tr = (u.matrix().adjoint() * v.matrix()).trace();
  return static_cast<double>(u.dimension()) - tr.real();
}

double frobenius_half_squared(const TargetUnitary& u, const TargetUnitary& v) {
  check_dimensions(u, v);
  return 0.5 * (v.matrix() - u.matrix()).squaredNorm();
}

TargetUnitary align_global_phase(const TargetUnitary& target) {
  Eigen::Index k = 0;
  target.matrix().diagonal().cwiseAbs().maxCoeff(&k);
  const Complex entry = target.matrix()(k, k);
  if (std::abs(entry) == 0.0) return target;
  return TargetUnitary(target.matrix() * (std::abs(entry) / entry));
}

SynthesisObjective::SynthesisObjective(const TargetUnitary& target, const Circuit& circuit)
    : target_(target), circuit_(circuit) {
  if (target.n_qubits() != circuit.n_qubits()) throw std::invalid_argument("SynthesisObjective: qubit count mismatch");
  if (circuit.n_qubits() > kMaxSynthesisQubits) throw std::invalid_argument("SynthesisObjective: too many qubits");
}

double SynthesisObjective::evaluate(std::span<const double> params) const {
  const int n = circuit_.n_qubits();
  const Eigen::MatrixXcd& u = target_.matrix();
  const Eigen::Index d = u.rows();
  double re_trace = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    StateVector column = StateVector::basis(n, static_cast<std::uint64_t>(j));
    run_circuit_inplace(circuit_, params, column);
    for (Eigen::Index i = 0; i < d; ++i) re_trace += (std::conj(u(i, j)) * column[static_cast<std::size_t>(i)]).real();
  }
  return static_cast<double>(d) - re_trace;
}

SynthesisReport synthesize(const TargetUnitary& target, const AnsatzSpec& ansatz, const EvolutionConfig& cfg,
                           const PolishOptions& options, const RunOptions& run_options) {
  if (ansatz.n_qubits != target.n_qubits()) throw std::invalid_argument("synthesize: ansatz and target qubit counts differ");
  const auto start = std::chrono::steady_clock::now();

  SynthesisReport report;
  report.circuit = build_ansatz(ansatz);
  report.cnot_count = static_cast<int>(report.circuit.count(GateKind::CNOT) + 2 * report.circuit.count(GateKind::CRY));
  const SynthesisObjective objective(target, report.circuit);

  EvolutionConfig stage = cfg;
  stage.target_cost = std::max(cfg.target_cost, options.threshold);
  const RunResult evolved = run(objective, stage, run_options);
  report.params = evolved.best_params;
  report.final_cost = evolved.best_cost;
  report.evaluations = evolved.evaluations_used;
  report.episodes = evolved.episodes;
  report.trace = evolved.trace;

  if (report.final_cost < options.threshold && report.final_cost >= options.target) {
    report.polished = true;
    CostFunction f(objective);
    double cost = report.final_cost;
    ParameterVector params = report.params;
    while (report.polish_sweeps < options.max_sweeps && cost >= options.target) {
      const double before = cost;
      for (std::size_t i = 0; i < params.size(); ++i) {
        const Sinusoid5 model = fit5(f, params, i, cost);
        const double angle = argmin5(model, params[i]);
        if (angle == params[i]) continue;
        ParameterVector trial = params;
        trial.set(i, angle);
        const double value = f(trial);
        if (value < cost) {
          cost = value;
          params = std::move(trial);
        }
      }
      ++report.polish_sweeps;
      if (before - cost < options.min_improvement) break;
    }
    report.params = std::move(params);
    report.final_cost = cost;
    report.polish_evaluations = f.evaluations();
    report.evaluations += f.evaluations();
  }

  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

TargetUnitary read_target(std::istream& in) {
  std::string line;
  int n = -1;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n) || (header >> extra) || n < 0 || n > kMaxSynthesisQubits) {
      throw std::invalid_argument("target file: bad qubit-count line '" + line + "'");
    }
    break;
  }
  if (n < 0) throw std::invalid_argument("target file: empty");
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd m(d, d);
  Eigen::Index row = 0;
  while (row < d && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream tokens(line);
    std::string token;
    Eigen::Index col = 0;
    while (tokens >> token) {
      if (col >= d) throw std::invalid_argument("target file: row " + std::to_string(row) + " has too many entries");
      m(row, col++) = parse_pair(token);
    }
    if (col != d) throw std::invalid_argument("target file: row " + std::to_string(row) + " has too few entries");
    ++row;
  }
  if (row != d) throw std::invalid_argument("target file: expected " + std::to_string(d) + " rows");
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw std::invalid_argument("target file: trailing data");
  }
  return TargetUnitary(std::move(m));
}

TargetUnitary load_target(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open target file '" + path + "'");
  return read_target(in);
}

void write_target(std::ostream& out, const TargetUnitary& target) {
  const Eigen::MatrixXcd& m = target.matrix();
  out << target.n_qubits() << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", m(i, j).real(), m(i, j).imag());
      out << (j ? " " : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace qevo
