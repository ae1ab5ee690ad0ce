#include "qevo/evolve.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace qevo {

namespace {

constexpr std::uint64_t kInitTag = 0x494e4954ULL;  // "INIT"
constexpr std::uint64_t kSyncTag = 0x53594e43ULL;  // "SYNC"
constexpr int kCheckpointVersion = 1;

class OrderedObjective final : public Objective {
 public:
  OrderedObjective(const Objective& base, LandscapeOrder order) : base_(base), order_(order) {}
  std::size_t n_params() const override { return base_.n_params(); }
  LandscapeOrder order() const override { return order_; }
  double evaluate(std::span<const double> params) const override { return base_.evaluate(params); }

 private:
  const Objective& base_;
  LandscapeOrder order_;
};

// Applies cfg.landscape_order, refusing to under-sample a two-frequency objective.
LandscapeOrder effective_order(const Objective& objective, const EvolutionConfig& cfg) {
  if (!cfg.landscape_order) return objective.order();
  if (*cfg.landscape_order == LandscapeOrder::Three && objective.order() == LandscapeOrder::Five) {
    throw std::invalid_argument("landscape_order 3 requested for an objective with two-frequency cross-sections");
  }
  return *cfg.landscape_order;
}

std::size_t best_index(const std::vector<Agent>& agents) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < agents.size(); ++k) {
    const Agent& a = agents[k];
    const Agent& b = agents[best];
    if (a.cost < b.cost || (a.cost == b.cost && a.id < b.id)) best = k;
  }
  return best;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void update_best(EvolutionState& state) {
  const Agent& best = state.agents[best_index(state.agents)];
  if (best.cost < state.best_cost) {
    state.best_cost = best.cost;
    state.best_params = best.params;
  }
}

nlohmann::json params_json(const ParameterVector& p) { return nlohmann::json(std::vector<double>(p.values().begin(), p.values().end())); }

}  // namespace

void EvolutionConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("EvolutionConfig: " + what); };
  if (n_agents < 1) fail("n_agents must be >= 1");
  if (episode_length < 1) fail("episode_length must be >= 1");
  if (!(p_exploration >= 0.0 && p_exploration <= 1.0)) fail("p_exploration must lie in [0, 1]");
  if (!(p_randomization >= 0.0 && p_randomization <= 1.0)) fail("p_randomization must lie in [0, 1]");
  if (!(r >= 0.0)) fail("r must be >= 0");
  if (subset_size < 1) fail("subset_size must be >= 1");
  if (line_samples < 2) fail("line_samples must be >= 2");
}

std::uint64_t config_hash(const EvolutionConfig& cfg) {
  std::string canon;
  canon += "agents=" + std::to_string(cfg.n_agents);
  canon += ";episode=" + std::to_string(cfg.episode_length);
  canon += ";pexp=" + format_double(cfg.p_exploration);
  canon += ";prand=" + format_double(cfg.p_randomization);
  canon += ";r=" + format_double(cfg.r);
  canon += ";M=" + std::to_string(cfg.subset_size);
  canon += ";S=" + std::to_string(cfg.line_samples);
  canon += ";order=" + std::to_string(cfg.landscape_order ? static_cast<int>(*cfg.landscape_order) : 0);
  canon += ";max=" + std::to_string(cfg.max_evaluations);
  canon += ";target=" + format_double(cfg.target_cost);
  canon += ";seed=" + std::to_string(cfg.master_seed);
  canon += ";init=" + std::string(cfg.init == InitMode::Zeros ? "zeros" : "random");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

CounterRng agent_stream(std::uint64_t master_seed, int agent_id, int episode) {
  return CounterRng(derive_stream_key({master_seed, static_cast<std::uint64_t>(agent_id), static_cast<std::uint64_t>(episode)}));
}

std::vector<Agent> initialize_agents(const Objective& objective, const EvolutionConfig& cfg, EvaluationCounter* shared) {
  cfg.validate();
  std::vector<Agent> agents;
  agents.reserve(static_cast<std::size_t>(cfg.n_agents));
  for (int id = 0; id < cfg.n_agents; ++id) {
    Agent a;
    a.id = id;
    a.params = ParameterVector(objective.n_params());
    if (cfg.init == InitMode::Random) {
      CounterRng rng(derive_stream_key({cfg.master_seed, kInitTag, static_cast<std::uint64_t>(id)}));
      for (std::size_t i = 0; i < a.params.size(); ++i) a.params.set(i, rng.uniform(0.0, 2.0 * std::numbers::pi));
    }
    CostFunction f(objective, shared);
    a.cost = f(a.params);
    a.evaluations = f.evaluations();
    agents.push_back(std::move(a));
  }
  return agents;
}

Agent run_episode(Agent agent, const Objective& objective, const EvolutionConfig& cfg, int episode,
                  std::uint64_t allowance, EvaluationCounter* shared) {
  const OrderedObjective ordered(objective, effective_order(objective, cfg));
  CostFunction f(ordered, shared);
  CounterRng rng = agent_stream(cfg.master_seed, agent.id, episode);

  const std::size_t m = std::min(cfg.subset_size, objective.n_params());
  const std::uint64_t per_attempt = iteration_cost(ordered.order(), m, cfg.line_samples, 1, false);
  const std::uint64_t line_cost = static_cast<std::uint64_t>(cfg.line_samples - 1);
  IterateConfig icfg{cfg.subset_size, cfg.line_samples, 16};

  for (int it = 0; it < cfg.episode_length; ++it) {
    if (agent.cost <= cfg.target_cost) break;
    const std::uint64_t used = f.evaluations();
    if (used + per_attempt + line_cost > allowance) break;
    // Cap resampling so that even the worst case stays inside the allowance.
    const std::uint64_t affordable = (allowance - used - line_cost) / per_attempt;
    icfg.max_direction_attempts = static_cast<int>(std::min<std::uint64_t>(16, affordable));
    IterationResult step = iterate(f, agent.params, agent.cost, icfg, rng);
    agent.params = std::move(step.params);
    agent.cost = step.cost;
    if (step.converged) break;
  }
  agent.evaluations += f.evaluations();
  return agent;
}

std::uint64_t synchronize(std::vector<Agent>& agents, const Objective& objective, const EvolutionConfig& cfg,
                          int episode, EvaluationCounter* shared) {
  if (agents.empty()) throw std::invalid_argument("synchronize: no agents");
  if (agents.size() == 1) return 0;
  const std::size_t best = best_index(agents);
  const ParameterVector elite_params = agents[best].params;
  const double elite_cost = agents[best].cost;

  CounterRng rng(derive_stream_key({cfg.master_seed, kSyncTag, static_cast<std::uint64_t>(episode)}));
  CostFunction f(objective, shared);
  for (std::size_t k = 0; k < agents.size(); ++k) {
    if (k == best) continue;
    Agent& a = agents[k];
    const double explore = rng.uniform();
    const double randomize = rng.uniform();
    if (explore >= cfg.p_exploration) {
      a.params = elite_params;
      a.cost = elite_cost;
    }
    if (randomize < cfg.p_randomization) {
      const std::uint64_t before = f.evaluations();
      for (std::size_t i = 0; i < a.params.size(); ++i) a.params.set(i, a.params[i] + rng.uniform(-cfg.r, cfg.r));
      a.cost = f(a.params);
      a.evaluations += f.evaluations() - before;
    }
  }
  return f.evaluations();
}

RunResult run(const Objective& objective, const EvolutionConfig& cfg, const RunOptions& options,
              const EvolutionState* resume) {
  cfg.validate();
  (void)effective_order(objective, cfg);
  const int n_agents = cfg.n_agents;
  EvaluationCounter counter;

  auto record = [&](EvolutionState& s) {
    if (!s.trace.empty() && s.trace.back().evaluations >= s.evaluations) return;
    TraceRecord rec{s.episode, s.evaluations, s.best_cost, {}, {}};
    if (options.annotate) options.annotate(s.best_params, rec);
    s.trace.push_back(rec);
  };

  EvolutionState state;
  if (resume != nullptr) {
    state = *resume;
    if (static_cast<int>(state.agents.size()) != n_agents) throw std::invalid_argument("run: resume state agent count mismatch");
  } else {
    state.agents = initialize_agents(objective, cfg, &counter);
    for (const Agent& a : state.agents) state.evaluations += a.evaluations;
    update_best(state);
    record(state);
  }

  const std::uint64_t reserve = (n_agents > 1 && cfg.p_randomization > 0.0) ? static_cast<std::uint64_t>(n_agents - 1) : 0;
  const int threads = std::max(1, std::min(options.threads, n_agents));

  while (state.best_cost > cfg.target_cost && state.evaluations < cfg.max_evaluations) {
    if (options.stop_after_episode && state.episode >= *options.stop_after_episode) break;
    const std::uint64_t remaining = cfg.max_evaluations - state.evaluations;
    const std::uint64_t allowance = remaining > reserve ? (remaining - reserve) / static_cast<std::uint64_t>(n_agents) : 0;
    const int episode = state.episode + 1;

    std::vector<Agent> next(state.agents.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
      for (std::size_t k = cursor.fetch_add(1); k < state.agents.size(); k = cursor.fetch_add(1)) {
        next[k] = run_episode(state.agents[k], objective, cfg, episode, allowance, &counter);
      }
    };
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    std::uint64_t spent = 0;
    for (std::size_t k = 0; k < next.size(); ++k) spent += next[k].evaluations - state.agents[k].evaluations;
    if (spent == 0) break;  // the budget cannot fund another iteration
    std::vector<ParameterVector> before;
    for (const Agent& a : state.agents) before.push_back(a.params);
    state.agents = std::move(next);
    spent += synchronize(state.agents, objective, cfg, episode, &counter);
    state.episode = episode;
    state.evaluations += spent;
    update_best(state);

    bool moved = false;
    for (std::size_t k = 0; k < before.size(); ++k) moved = moved || !(before[k] == state.agents[k].params);
    // An unmoved population sits at a fixed point of the optimizer.
    const bool last = !moved || state.best_cost <= cfg.target_cost || state.evaluations >= cfg.max_evaluations;
    if (last || episode % std::max(1, options.record_every) == 0) record(state);
    if (options.on_episode) options.on_episode(state);
    if (!moved) break;
  }
  record(state);

  RunResult result;
  result.best_params = state.best_params;
  result.best_cost = state.best_cost;
  result.evaluations_used = state.evaluations;
  result.episodes = state.episode;
  result.trace = state.trace;
  result.final_state = std::move(state);
  return result;
}

std::string checkpoint_to_json(const EvolutionState& state, const EvolutionConfig& cfg) {
  nlohmann::json j;
  j["format"] = "qevo-checkpoint";
  j["version"] = kCheckpointVersion;
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  j["config_hash"] = hash;
  j["master_seed"] = cfg.master_seed;
  j["episode"] = state.episode;
  j["evaluations"] = state.evaluations;
  j["best_cost"] = state.best_cost;
  j["best_params"] = params_json(state.best_params);
  for (const Agent& a : state.agents) {
    j["agents"].push_back({{"id", a.id}, {"params", params_json(a.params)}, {"cost", a.cost}, {"evaluations", a.evaluations}});
  }
  j["trace"] = nlohmann::json::array();
  for (const TraceRecord& t : state.trace) {
    nlohmann::json r = {{"episode", t.episode}, {"evaluations", t.evaluations}, {"best_cost", t.best_cost}};
    if (t.s2_normalized) r["s2_normalized"] = *t.s2_normalized;
    if (t.overlap) r["overlap"] = *t.overlap;
    j["trace"].push_back(r);
  }
  return j.dump(2);
}

EvolutionState checkpoint_from_json(const std::string& text, const EvolutionConfig& cfg) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format") != "qevo-checkpoint") throw std::invalid_argument("checkpoint: not a qevo checkpoint");
    if (j.at("version").get<int>() != kCheckpointVersion) throw std::invalid_argument("checkpoint: unsupported version");
    char hash[20];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
    if (j.at("config_hash").get<std::string>() != hash) throw std::invalid_argument("checkpoint: configuration hash mismatch");

    EvolutionState s;
    s.episode = j.at("episode").get<int>();
    s.evaluations = j.at("evaluations").get<std::uint64_t>();
    s.best_cost = j.at("best_cost").get<double>();
    s.best_params = ParameterVector(j.at("best_params").get<std::vector<double>>());
    for (const auto& a : j.at("agents")) {
      s.agents.push_back(Agent{a.at("id").get<int>(), ParameterVector(a.at("params").get<std::vector<double>>()),
                               a.at("cost").get<double>(), a.at("evaluations").get<std::uint64_t>()});
    }
    for (const auto& t : j.at("trace")) {
      TraceRecord r{t.at("episode").get<int>(), t.at("evaluations").get<std::uint64_t>(), t.at("best_cost").get<double>(), {}, {}};
      if (t.contains("s2_normalized")) r.s2_normalized = t["s2_normalized"].get<double>();
      if (t.contains("overlap")) r.overlap = t["overlap"].get<double>();
      s.trace.push_back(r);
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("checkpoint: ") + e.what());
  }
}

}  // namespace qevo
