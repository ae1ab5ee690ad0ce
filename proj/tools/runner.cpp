#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qevo/diagnostics.hpp"
#include "qevo/models.hpp"
#include "qevo/simulator.hpp"
#include "qevo/synth.hpp"

namespace qevo::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";
constexpr int kMaxOverlapQubits = 16;

// Typed, strict view of one JSON object. Keys never read are reported by finish().
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw SchemaError(path_ + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json* get(const std::string& key) {
    used_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = get(key);
    if (v == nullptr) throw SchemaError(where(key) + ": required key missing");
    return *v;
  }

  double number(const std::string& key, double fallback) {
    const json* v = get(key);
    if (v == nullptr) return fallback;
    if (!v->is_number()) throw SchemaError(where(key) + ": expected a number");
    return v->get<double>();
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t lo, std::int64_t hi) {
    const json* v = get(key);
    if (v == nullptr) return fallback;
    return as_integer(*v, where(key), lo, hi);
  }

  std::optional<std::uint64_t> unsigned_opt(const std::string& key) {
    const json* v = get(key);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number_unsigned()) throw SchemaError(where(key) + ": expected a non-negative integer");
    return v->get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = get(key);
    if (v == nullptr) return fallback;
    if (!v->is_boolean()) throw SchemaError(where(key) + ": expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = get(key);
    if (v == nullptr) return fallback;
    if (!v->is_string()) throw SchemaError(where(key) + ": expected a string");
    return v->get<std::string>();
  }

  std::string where(const std::string& key) const { return path_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) throw SchemaError(where(it.key()) + ": unknown key");
    }
  }

  static std::int64_t as_integer(const json& v, const std::string& where, std::int64_t lo, std::int64_t hi) {
    if (!v.is_number_integer()) throw SchemaError(where + ": expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) {
      throw SchemaError(where + ": out of range");
    }
    const auto x = v.get<std::int64_t>();
    if (x < lo || x > hi) {
      throw SchemaError(where + ": must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return x;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

GraphConfig parse_graph(const json& j, const fs::path& base) {
  Section s(j, "model.graph");
  GraphConfig g;
  g.type = s.string("type", "ring");
  if (g.type == "ring") {
  } else if (g.type == "random_regular") {
    g.degree = static_cast<int>(s.integer("degree", 3, 1, 1 << 20));
    g.seed = s.unsigned_opt("seed");
  } else if (g.type == "file") {
    g.path = resolve(base, s.string("path", ""));
    if (g.path.empty()) throw SchemaError("model.graph.path: required for type 'file'");
  } else {
    throw SchemaError("model.graph.type: expected ring, random_regular or file");
  }
  s.finish();
  return g;
}

ModelConfig parse_model(const json& j, const fs::path& base) {
  Section s(j, "model");
  ModelConfig m;
  m.type = s.string("type", "");
  if (m.type == "heisenberg") {
    m.n_qubits = static_cast<int>(s.integer("n_qubits", 0, 2, 30));
    if (!s.has("n_qubits")) throw SchemaError("model.n_qubits: required key missing");
    if (const json* g = s.get("graph")) m.graph = parse_graph(*g, base);
    m.J = s.number("J", 1.0);
    m.h_z = s.number("h_z", 1.0);
  } else if (m.type == "syk") {
    m.n_qubits = static_cast<int>(s.integer("n_qubits", 0, 4, 30));
    if (!s.has("n_qubits")) throw SchemaError("model.n_qubits: required key missing");
    m.J = s.number("J", 1.0);
    m.seed = s.unsigned_opt("seed");
  } else if (m.type == "pauli_file" || m.type == "unitary_file") {
    m.path = resolve(base, s.string("path", ""));
    if (m.path.empty()) throw SchemaError("model.path: required for type '" + m.type + "'");
    if (m.type == "unitary_file") m.align_phase = s.boolean("align_phase", false);
  } else {
    throw SchemaError("model.type: expected heisenberg, syk, pauli_file or unitary_file");
  }
  s.finish();
  return m;
}

AnsatzSpec parse_ansatz(const json& j) {
  Section s(j, "ansatz");
  AnsatzSpec a;
  a.layers = static_cast<int>(s.integer("layers", 1, 1, 100000));
  try {
    a.entangler = parse_entangler(s.string("entangler", "cnot_chain"));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("ansatz.entangler: ") + e.what());
  }
  a.final_rotations = s.boolean("final_rotations", false);
  s.finish();
  return a;
}

void parse_optimizer(const json& j, RunConfig& cfg) {
  Section s(j, "optimizer");
  EvolutionConfig& e = cfg.optimizer;
  e.n_agents = static_cast<int>(s.integer("n_agents", e.n_agents, 1, 1 << 16));
  e.episode_length = static_cast<int>(s.integer("episode_length", e.episode_length, 1, 1 << 30));
  e.p_exploration = s.number("p_exploration", e.p_exploration);
  e.p_randomization = s.number("p_randomization", e.p_randomization);
  e.r = s.number("r", e.r);
  e.subset_size = static_cast<std::size_t>(s.integer("subset_size", static_cast<std::int64_t>(e.subset_size), 1, 1 << 30));
  e.line_samples = static_cast<int>(s.integer("line_samples", e.line_samples, 2, 1 << 20));
  if (s.has("landscape_order")) {
    const auto order = s.integer("landscape_order", 0, 3, 5);
    if (order == 3) {
      e.landscape_order = LandscapeOrder::Three;
    } else if (order == 5) {
      e.landscape_order = LandscapeOrder::Five;
    } else {
      throw SchemaError("optimizer.landscape_order: expected 3 or 5");
    }
  }
  if (const auto budget = s.unsigned_opt("max_evaluations")) e.max_evaluations = *budget;
  e.target_cost = s.number("target_cost", e.target_cost);
  if (const auto seed = s.unsigned_opt("seed")) e.master_seed = *seed;
  const std::string init = s.string("init", "random");
  if (init == "random") {
    e.init = InitMode::Random;
  } else if (init == "zeros") {
    e.init = InitMode::Zeros;
  } else {
    throw SchemaError("optimizer.init: expected zeros or random");
  }
  cfg.polish_threshold = s.number("polish_threshold", cfg.polish_threshold);
  if (!(cfg.polish_threshold > 0.0)) throw SchemaError("optimizer.polish_threshold: must be positive");
  s.finish();
  try {
    e.validate();
  } catch (const std::invalid_argument& err) {
    throw SchemaError(std::string("optimizer: ") + err.what());
  }
}

DiagnosticsConfig parse_diagnostics(const json& j) {
  Section s(j, "diagnostics");
  DiagnosticsConfig d;
  if (const json* subset = s.get("entropy_subset")) {
    if (!subset->is_array() || subset->empty()) throw SchemaError("diagnostics.entropy_subset: expected a non-empty array");
    d.entropy_subset.clear();
    for (const json& q : *subset) {
      d.entropy_subset.push_back(static_cast<int>(Section::as_integer(q, "diagnostics.entropy_subset", 0, 61)));
    }
  }
  d.overlap = s.boolean("overlap", false);
  d.record_every = static_cast<int>(s.integer("record_every", 1, 1, 1 << 30));
  s.finish();
  return d;
}

ScanConfig parse_scan(const json& j) {
  Section s(j, "scan");
  ScanConfig c;
  c.param_index = static_cast<std::size_t>(s.integer("param_index", 0, 0, 1 << 30));
  c.n_points = static_cast<std::size_t>(s.integer("n_points", 64, 1, 1 << 24));
  s.finish();
  return c;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trace_csv(const std::vector<TraceRecord>& trace) {
  std::string out = "episode,evaluations,best_cost,s2_normalized,overlap\n";
  for (const TraceRecord& r : trace) {
    out += std::to_string(r.episode) + "," + std::to_string(r.evaluations) + "," + fmt(r.best_cost) + ",";
    if (r.s2_normalized) out += fmt(*r.s2_normalized);
    out += ",";
    if (r.overlap) out += fmt(*r.overlap);
    out += "\n";
  }
  return out;
}

struct Problem {
  std::optional<Hamiltonian> hamiltonian;
  std::optional<TargetUnitary> target;
  std::optional<RegularGraph> generated_graph;
  std::optional<std::uint64_t> model_seed;
};

Problem load_problem(const RunConfig& cfg) {
  const ModelConfig& m = cfg.model;
  Problem p;
  if (m.type == "heisenberg") {
    std::optional<RegularGraph> graph;
    if (m.graph.type == "ring") {
      graph = ring_graph(m.n_qubits);
      p.generated_graph = graph;
    } else if (m.graph.type == "random_regular") {
      p.model_seed = m.graph.seed.value_or(cfg.optimizer.master_seed);
      graph = random_regular_graph(m.n_qubits, m.graph.degree, *p.model_seed);
      p.generated_graph = graph;
    } else {
      std::ifstream in(m.graph.path);
      if (!in) throw std::runtime_error("cannot open graph file '" + m.graph.path.string() + "'");
      graph = RegularGraph::read(in);
      if (graph->n_vertices() != m.n_qubits) throw SchemaError("model.graph: file vertex count differs from model.n_qubits");
    }
    p.hamiltonian = build_heisenberg(HeisenbergSpec{m.n_qubits, *graph, m.J, m.h_z});
  } else if (m.type == "syk") {
    p.model_seed = m.seed.value_or(cfg.optimizer.master_seed);
    p.hamiltonian = build_syk(SykSpec{m.n_qubits, m.J, *p.model_seed});
  } else if (m.type == "pauli_file") {
    std::ifstream in(m.path);
    if (!in) throw std::runtime_error("cannot open Hamiltonian file '" + m.path.string() + "'");
    p.hamiltonian = Hamiltonian::read(in);
  } else {
    TargetUnitary u = load_target(m.path.string());
    p.target = m.align_phase ? align_global_phase(u) : std::move(u);
  }
  return p;
}

void check_subset(const std::vector<int>& subset, int n) {
  std::set<int> seen;
  for (int q : subset) {
    if (q >= n) throw SchemaError("diagnostics.entropy_subset: qubit " + std::to_string(q) + " out of range");
    if (!seen.insert(q).second) throw SchemaError("diagnostics.entropy_subset: qubit " + std::to_string(q) + " repeated");
  }
  if (subset.size() > static_cast<std::size_t>(kMaxReducedQubits)) {
    throw SchemaError("diagnostics.entropy_subset: at most " + std::to_string(kMaxReducedQubits) + " qubits");
  }
}

json base_summary(const RunConfig& cfg, Mode mode, const Problem& problem) {
  json s;
  s["version"] = kVersion;
  s["mode"] = to_string(mode);
  s["seeds"]["master_seed"] = cfg.optimizer.master_seed;
  if (problem.model_seed) s["seeds"]["model_seed"] = *problem.model_seed;
  s["config"] = json::parse(config_to_json(cfg));
  return s;
}

void write_common(const fs::path& out, const Problem& problem) {
  if (problem.generated_graph) {
    std::ostringstream g;
    problem.generated_graph->write(g);
    write_file(out / "graph.edges", g.str());
  }
}

const Hamiltonian& require_hamiltonian(const Problem& p, Mode mode) {
  if (!p.hamiltonian) throw SchemaError("model.type: mode '" + to_string(mode) + "' needs a Hamiltonian model");
  return *p.hamiltonian;
}

RunOptions run_options(const RunConfig& cfg, const Overrides& ov) {
  RunOptions opt;
  opt.threads = std::max(1, ov.threads);
  opt.record_every = cfg.diagnostics.record_every;
  if (ov.checkpoint) {
    const fs::path path = *ov.checkpoint;
    const EvolutionConfig evo = cfg.optimizer;
    opt.on_episode = [path, evo](const EvolutionState& state) {
      const fs::path tmp = path.string() + ".tmp";
      write_file(tmp, checkpoint_to_json(state, evo));
      fs::rename(tmp, path);
    };
  }
  return opt;
}

void run_vqe(RunConfig& cfg, const Overrides& ov, const Problem& problem, const fs::path& out) {
  const Hamiltonian& h = require_hamiltonian(problem, Mode::Vqe);
  const int n = h.n_qubits();
  check_subset(cfg.diagnostics.entropy_subset, n);
  if (cfg.diagnostics.overlap && n > kMaxOverlapQubits) {
    throw SchemaError("diagnostics.overlap: limited to " + std::to_string(kMaxOverlapQubits) + " qubits");
  }
  cfg.ansatz.n_qubits = n;
  const Circuit circuit = build_ansatz(cfg.ansatz);
  const VqeObjective objective(circuit, h);

  std::optional<GroundSpace> gs;
  if (cfg.diagnostics.overlap) gs = ground_space(h);

  const std::vector<int> subset = cfg.diagnostics.entropy_subset;
  const int k = std::min<int>(static_cast<int>(subset.size()), n - static_cast<int>(subset.size()));
  RunOptions opt = run_options(cfg, ov);
  opt.annotate = [&](const ParameterVector& best, TraceRecord& rec) {
    const StateVector psi = run_circuit(circuit, best);
    if (k >= 1) rec.s2_normalized = renyi2(psi, subset) / page_entropy(k, n);
    if (gs) rec.overlap = overlap(psi, *gs);
  };

  std::optional<EvolutionState> resume;
  if (ov.resume) resume = checkpoint_from_json(read_file(*ov.resume), cfg.optimizer);
  const RunResult result = run(objective, cfg.optimizer, opt, resume ? &*resume : nullptr);

  json summary = base_summary(cfg, Mode::Vqe, problem);
  summary["n_qubits"] = n;
  summary["n_params"] = circuit.n_params();
  summary["final_cost"] = result.best_cost;
  summary["evaluations"] = result.evaluations_used;
  summary["episodes"] = result.episodes;
  if (!result.trace.empty() && result.trace.back().s2_normalized) {
    summary["s2_normalized"] = *result.trace.back().s2_normalized;
  }
  if (gs) {
    summary["E0"] = gs->energy;
    summary["ground_degeneracy"] = gs->basis.size();
    summary["overlap"] = overlap(run_circuit(circuit, result.best_params), *gs);
  }
  write_file(out / "trace.csv", trace_csv(result.trace));
  write_file(out / "summary.json", summary.dump(2) + "\n");
  write_file(out / "best_circuit.qasm", export_qasm(circuit, result.best_params));
  write_common(out, problem);
}

void run_synth(RunConfig& cfg, const Overrides& ov, const Problem& problem, const fs::path& out) {
  if (!problem.target) throw SchemaError("model.type: mode 'synth' needs a unitary_file model");
  if (ov.resume) throw SchemaError("--resume is only supported for mode 'vqe'");
  cfg.ansatz.n_qubits = problem.target->n_qubits();
  PolishOptions polish;
  polish.threshold = cfg.polish_threshold;
  const SynthesisReport report = synthesize(*problem.target, cfg.ansatz, cfg.optimizer, polish, run_options(cfg, ov));

  json summary = base_summary(cfg, Mode::Synth, problem);
  summary["n_qubits"] = cfg.ansatz.n_qubits;
  summary["n_params"] = report.circuit.n_params();
  summary["final_cost"] = report.final_cost;
  summary["cnot_count"] = report.cnot_count;
  summary["evaluations"] = report.evaluations;
  summary["polish_evaluations"] = report.polish_evaluations;
  summary["episodes"] = report.episodes;
  summary["polished"] = report.polished;
  summary["polish_sweeps"] = report.polish_sweeps;
  write_file(out / "trace.csv", trace_csv(report.trace));
  write_file(out / "summary.json", summary.dump(2) + "\n");
  write_file(out / "best_circuit.qasm", export_qasm(report.circuit, report.params));
}

void run_eig(const RunConfig& cfg, const Problem& problem, const fs::path& out) {
  const Hamiltonian& h = require_hamiltonian(problem, Mode::Eig);
  const GroundSpace gs = ground_space(h);
  json summary = base_summary(cfg, Mode::Eig, problem);
  summary["n_qubits"] = h.n_qubits();
  summary["E0"] = gs.energy;
  summary["ground_degeneracy"] = gs.basis.size();
  summary["degeneracy_tol"] = gs.degeneracy_tol;
  summary["converged"] = gs.converged;
  summary["max_residual"] = gs.max_residual;
  write_file(out / "summary.json", summary.dump(2) + "\n");
  write_common(out, problem);
}

void run_scan(RunConfig& cfg, const Problem& problem, const fs::path& out) {
  std::optional<Circuit> circuit;
  std::unique_ptr<Objective> objective;
  if (problem.hamiltonian) {
    cfg.ansatz.n_qubits = problem.hamiltonian->n_qubits();
    circuit = build_ansatz(cfg.ansatz);
    objective = std::make_unique<VqeObjective>(*circuit, *problem.hamiltonian);
  } else {
    cfg.ansatz.n_qubits = problem.target->n_qubits();
    circuit = build_ansatz(cfg.ansatz);
    objective = std::make_unique<SynthesisObjective>(*problem.target, *circuit);
  }
  if (cfg.scan.param_index >= objective->n_params()) {
    throw SchemaError("scan.param_index: " + std::to_string(cfg.scan.param_index) + " out of range for " +
                      std::to_string(objective->n_params()) + " parameters");
  }
  EvolutionConfig single = cfg.optimizer;
  single.n_agents = 1;
  const Agent start = initialize_agents(*objective, single).front();
  const auto points = scan_cross_section(*objective, start.params, cfg.scan.param_index, cfg.scan.n_points);

  // Residual of the exact sinusoid model against the dense scan.
  CostFunction f(*objective);
  double residual = 0.0;
  json model;
  const std::size_t i = cfg.scan.param_index;
  if (objective->order() == LandscapeOrder::Three) {
    const Sinusoid3 s = fit3(f, start.params, i, start.cost);
    for (const auto& [t, y] : points) residual = std::max(residual, std::abs(s(t) - y));
    model = {{"order", 3}, {"kappa", s.kappa}, {"xi", s.xi}, {"C", s.C}};
  } else {
    const Sinusoid5 s = fit5(f, start.params, i, start.cost);
    for (const auto& [t, y] : points) residual = std::max(residual, std::abs(s(t) - y));
    model = {{"order", 5}, {"kappa", s.kappa}, {"xi", s.xi}, {"gamma", s.gamma}, {"phi", s.phi}, {"C", s.C}};
  }

  std::string csv = "theta,cost\n";
  for (const auto& [t, y] : points) csv += fmt(t) + "," + fmt(y) + "\n";
  json summary = base_summary(cfg, Mode::Scan, problem);
  summary["param_index"] = i;
  summary["n_points"] = points.size();
  summary["base_cost"] = start.cost;
  summary["model"] = model;
  summary["fit_residual"] = residual;
  write_file(out / "scan.csv", csv);
  write_file(out / "summary.json", summary.dump(2) + "\n");
  write_common(out, problem);
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Vqe: return "vqe";
    case Mode::Synth: return "synth";
    case Mode::Eig: return "eig";
    case Mode::Scan: return "scan";
  }
  return "?";
}

Mode parse_mode(const std::string& name) {
  if (name == "vqe") return Mode::Vqe;
  if (name == "synth") return Mode::Synth;
  if (name == "eig") return Mode::Eig;
  if (name == "scan") return Mode::Scan;
  throw SchemaError("mode: expected vqe, synth, eig or scan, got '" + name + "'");
}

RunConfig parse_config(const std::string& json_text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("config is not valid JSON: ") + e.what());
  }
  Section s(root, "config");
  RunConfig cfg;
  if (s.has("mode")) cfg.mode = parse_mode(s.string("mode", ""));
  cfg.model = parse_model(s.require("model"), base_dir);
  if (const json* a = s.get("ansatz")) cfg.ansatz = parse_ansatz(*a);
  if (const json* o = s.get("optimizer")) parse_optimizer(*o, cfg);
  if (const json* d = s.get("diagnostics")) cfg.diagnostics = parse_diagnostics(*d);
  if (const json* sc = s.get("scan")) cfg.scan = parse_scan(*sc);
  if (s.has("output_dir")) cfg.output_dir = resolve(base_dir, s.string("output_dir", ""));
  s.finish();
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  json j;
  if (cfg.mode) j["mode"] = to_string(*cfg.mode);
  const ModelConfig& m = cfg.model;
  j["model"]["type"] = m.type;
  if (m.type == "heisenberg") {
    j["model"]["n_qubits"] = m.n_qubits;
    j["model"]["J"] = m.J;
    j["model"]["h_z"] = m.h_z;
    j["model"]["graph"]["type"] = m.graph.type;
    if (m.graph.type == "random_regular") {
      j["model"]["graph"]["degree"] = m.graph.degree;
      if (m.graph.seed) j["model"]["graph"]["seed"] = *m.graph.seed;
    }
    if (m.graph.type == "file") j["model"]["graph"]["path"] = m.graph.path.string();
  } else if (m.type == "syk") {
    j["model"]["n_qubits"] = m.n_qubits;
    j["model"]["J"] = m.J;
    if (m.seed) j["model"]["seed"] = *m.seed;
  } else {
    j["model"]["path"] = m.path.string();
    if (m.type == "unitary_file") j["model"]["align_phase"] = m.align_phase;
  }
  j["ansatz"] = {{"layers", cfg.ansatz.layers},
                 {"entangler", to_string(cfg.ansatz.entangler)},
                 {"final_rotations", cfg.ansatz.final_rotations}};
  const EvolutionConfig& e = cfg.optimizer;
  json& o = j["optimizer"];
  o["n_agents"] = e.n_agents;
  o["episode_length"] = e.episode_length;
  o["p_exploration"] = e.p_exploration;
  o["p_randomization"] = e.p_randomization;
  o["r"] = e.r;
  o["subset_size"] = e.subset_size;
  o["line_samples"] = e.line_samples;
  if (e.landscape_order) o["landscape_order"] = static_cast<int>(*e.landscape_order);
  o["max_evaluations"] = e.max_evaluations;
  if (std::isfinite(e.target_cost)) o["target_cost"] = e.target_cost;
  o["seed"] = e.master_seed;
  o["init"] = e.init == InitMode::Zeros ? "zeros" : "random";
  o["polish_threshold"] = cfg.polish_threshold;
  j["diagnostics"] = {{"entropy_subset", cfg.diagnostics.entropy_subset},
                      {"overlap", cfg.diagnostics.overlap},
                      {"record_every", cfg.diagnostics.record_every}};
  j["scan"] = {{"param_index", cfg.scan.param_index}, {"n_points", cfg.scan.n_points}};
  return j.dump(2);
}

void execute(RunConfig config, const Overrides& ov) {
  if (ov.mode && config.mode && *ov.mode != *config.mode) {
    throw SchemaError("mode: config says '" + to_string(*config.mode) + "' but the command is '" + to_string(*ov.mode) + "'");
  }
  if (ov.mode) config.mode = ov.mode;
  if (!config.mode) throw SchemaError("mode: not given by the command or the config");
  if (ov.seed) config.optimizer.master_seed = *ov.seed;
  if (ov.out_dir) config.output_dir = *ov.out_dir;
  if (config.output_dir.empty()) config.output_dir = ".";
  fs::create_directories(config.output_dir);

  const Problem problem = load_problem(config);
  const fs::path& out = config.output_dir;
  switch (*config.mode) {
    case Mode::Vqe: run_vqe(config, ov, problem, out); break;
    case Mode::Synth: run_synth(config, ov, problem, out); break;
    case Mode::Eig: run_eig(config, problem, out); break;
    case Mode::Scan: run_scan(config, problem, out); break;
  }
}

int run_from_config(const fs::path& config_path, const Overrides& overrides) {
  try {
    std::string text;
    try {
      text = read_file(config_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
    execute(parse_config(text, config_path.parent_path()), overrides);
    return 0;
  } catch (const SchemaError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qevo::cli
