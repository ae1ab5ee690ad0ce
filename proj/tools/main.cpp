#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qevo: variational circuit training with exact sinusoidal line searches"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string checkpoint;
  std::string resume;

  const char* modes[][2] = {{"vqe", "Variational ground-state search"},
                            {"synth", "Gate synthesis against a target unitary"},
                            {"eig", "Exact ground space by Lanczos"},
                            {"scan", "Dense single-parameter cross-section"}};
  std::vector<CLI::App*> subcommands;
  std::vector<CLI::Option*> seed_options;
  for (const auto& [name, help] : modes) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory (overrides the config)");
    seed_options.push_back(sub->add_option("--seed", seed, "Master seed (overrides the config)"));
    sub->add_option("--threads", threads, "Worker threads; never changes results")->check(CLI::PositiveNumber);
    if (std::string(name) == "vqe" || std::string(name) == "synth") {
      sub->add_option("--checkpoint", checkpoint, "Write a resumable checkpoint after every episode");
    }
    if (std::string(name) == "vqe") sub->add_option("--resume", resume, "Continue from a checkpoint file");
    subcommands.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  qevo::cli::Overrides ov;
  for (std::size_t k = 0; k < subcommands.size(); ++k) {
    if (subcommands[k]->parsed()) {
      ov.mode = qevo::cli::parse_mode(subcommands[k]->get_name());
      if (seed_options[k]->count() > 0) ov.seed = seed;
    }
  }
  if (!out.empty()) ov.out_dir = out;
  ov.threads = threads;
  if (!checkpoint.empty()) ov.checkpoint = checkpoint;
  if (!resume.empty()) ov.resume = resume;
  return qevo::cli::run_from_config(config, ov);
}
