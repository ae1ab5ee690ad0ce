#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qevo/landscape.hpp"

namespace qevo {

enum class InitMode { Zeros, Random };

struct EvolutionConfig {
  int n_agents = 1;
  int episode_length = 500;
  double p_exploration = 0.2;
  double p_randomization = 0.2;
  double r = 0.3;                 // perturbation half-width, radians
  std::size_t subset_size = 64;   // M
  int line_samples = 32;          // S
  std::optional<LandscapeOrder> landscape_order;  // defaults to the objective's order
  std::uint64_t max_evaluations = 10'000'000;
  double target_cost = -std::numeric_limits<double>::infinity();
  std::uint64_t master_seed = 0;
  InitMode init = InitMode::Random;

  /// Throws std::invalid_argument on out-of-range knobs.
  void validate() const;
};

/// Stable 64-bit FNV-1a hash of every result-affecting field.
std::uint64_t config_hash(const EvolutionConfig& cfg);

struct Agent {
  int id = 0;
  ParameterVector params;
  double cost = 0.0;                 // cost at params
  std::uint64_t evaluations = 0;     // lifetime evaluations spent by this agent
};

struct TraceRecord {
  int episode = 0;
  std::uint64_t evaluations = 0;     // cumulative
  double best_cost = 0.0;
  std::optional<double> s2_normalized;
  std::optional<double> overlap;
};

/// Everything needed to continue a run. Random streams are derived from
/// (master_seed, agent id, episode), so the episode number is the stream position.
struct EvolutionState {
  int episode = 0;
  std::vector<Agent> agents;
  ParameterVector best_params;
  double best_cost = std::numeric_limits<double>::infinity();
  std::uint64_t evaluations = 0;
  std::vector<TraceRecord> trace;
};

struct RunResult {
  ParameterVector best_params;
  double best_cost = 0.0;
  std::uint64_t evaluations_used = 0;
  int episodes = 0;
  std::vector<TraceRecord> trace;
  EvolutionState final_state;
};

struct RunOptions {
  int threads = 1;        // affects wall time only
  int record_every = 1;   // episodes between trace records
  /// Fills diagnostic fields of a record from the current best parameters.
  std::function<void(const ParameterVector& best, TraceRecord& record)> annotate;
  /// Called after every synchronization with the new state (checkpointing).
  std::function<void(const EvolutionState&)> on_episode;
  /// Stop (without finishing the run) once this episode has completed.
  std::optional<int> stop_after_episode;
};

/// Random stream of `agent_id` during `episode`.
CounterRng agent_stream(std::uint64_t master_seed, int agent_id, int episode);

/// Fresh agents with zero or uniform [0, 2pi) parameters and evaluated costs.
std::vector<Agent> initialize_agents(const Objective& objective, const EvolutionConfig& cfg,
                                     EvaluationCounter* shared = nullptr);

/// Up to episode_length iterations for one agent with its episode stream. Stops early
/// when the agent reaches target_cost, converges, or its next iteration could exceed
/// `allowance` evaluations. The agent's cost never increases.
Agent run_episode(Agent agent, const Objective& objective, const EvolutionConfig& cfg, int episode,
                  std::uint64_t allowance, EvaluationCounter* shared = nullptr);

/// Agent synchronization: the best agent (lowest cost, then lowest id) is kept intact;
/// every other agent keeps its state with probability p_exploration and otherwise
/// restarts from the best agent's parameters; then, with probability p_randomization,
/// it shifts every parameter by uniform [-r, r] and is re-evaluated.
/// Returns the number of evaluations spent.
std::uint64_t synchronize(std::vector<Agent>& agents, const Objective& objective, const EvolutionConfig& cfg,
                          int episode, EvaluationCounter* shared = nullptr);

/// Episodes and synchronizations until max_evaluations or target_cost. The result
/// depends only on (objective, cfg), never on thread count or scheduling.
RunResult run(const Objective& objective, const EvolutionConfig& cfg, const RunOptions& options = {},
              const EvolutionState* resume = nullptr);

/// Versioned JSON checkpoint.
std::string checkpoint_to_json(const EvolutionState& state, const EvolutionConfig& cfg);
/// Throws std::invalid_argument on malformed input, a version mismatch, or a config hash
/// that differs from `cfg`.
EvolutionState checkpoint_from_json(const std::string& text, const EvolutionConfig& cfg);

}  // namespace qevo
