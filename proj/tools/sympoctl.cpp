#include <iostream>

#include <CLI11.hpp>

#include "sympoc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"sympoctl - optimal control of continuous-variable quantum gates"};
  app.require_subcommand(1);

  using sympoc::cli::RunConfig;
  RunConfig config;
  std::string config_path;
  std::string out_dir;
  std::string algorithm;
  std::string init_kind;
  bool have_tf = false, have_steps = false, have_seed = false, have_amp = false;
  double tf_flag = 1.0, amp_flag = 1.0;
  int steps_flag = 32;
  std::uint64_t seed_flag = 0;

  auto* opt = app.add_subcommand("optimize", "search a control field for a target gate");
  opt->add_option("--config", config_path, "config file (key = value lines)");
  opt->add_option("--model", config.model, "model name, e.g. photon:2");
  opt->add_option("--gate", config.gate, "gate name, e.g. sum");
  opt->add_option("--tf", tf_flag, "final time")->each([&](const std::string&) { have_tf = true; });
  opt->add_option("--steps", steps_flag, "time grid points q")
      ->each([&](const std::string&) { have_steps = true; });
  opt->add_option("--algorithm", algorithm, "cg | sd");
  opt->add_option("--init", init_kind, "random | constant | sine");
  opt->add_option("--amplitude", amp_flag, "initial field amplitude")
      ->each([&](const std::string&) { have_amp = true; });
  opt->add_option("--seed", seed_flag, "RNG seed")
      ->each([&](const std::string&) { have_seed = true; });
  opt->add_option("--out", out_dir, "output directory (default $SYMPOCTL_OUT)");
  opt->add_option("--max-iterations", config.max_iterations, "iteration cap");
  opt->add_option("--j-tolerance", config.j_tolerance, "convergence tolerance on J");

  std::string gate_name = "sum";
  std::string domain = "Sp";
  auto* land = app.add_subcommand("landscape", "critical topology of a gate's fidelity landscape");
  land->add_option("gate", gate_name, "symplectic gate name")->required();
  land->add_option("--domain", domain, "Sp | OSp");
  land->add_option("--out", out_dir, "output directory");

  std::string model_name = "photon:2";
  auto* ctrl = app.add_subcommand("controllability", "Lie-algebra rank analysis of a model");
  ctrl->add_option("model", model_name, "model name")->required();
  ctrl->add_option("--out", out_dir, "output directory");

  double s_max = 20.0;
  auto* flow = app.add_subcommand("flow", "kinematic gradient flow toward a gate");
  flow->add_option("gate", gate_name, "gate name")->required();
  flow->add_option("--seed", seed_flag, "0 starts at W, else seeded perturbation");
  flow->add_option("--smax", s_max, "flow horizon");
  flow->add_option("--out", out_dir, "output directory");

  auto* gates = app.add_subcommand("gates", "list the gate catalog");
  auto* models = app.add_subcommand("models", "list the model registry");

  std::vector<std::string> batch_configs;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  auto* batch = app.add_subcommand("batch", "run several optimize configs concurrently");
  batch->add_option("configs", batch_configs, "config files")->required();
  batch->add_option("--jobs", jobs, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (opt->parsed()) {
      RunConfig base;
      if (!config_path.empty()) base = sympoc::cli::parse_config_file(config_path);
      // Explicit flags override the config file.
      if (opt->count("--model")) base.model = config.model;
      if (opt->count("--gate")) base.gate = config.gate;
      if (have_tf) base.t_f = tf_flag;
      if (have_steps) base.steps = steps_flag;
      if (have_seed) base.seed = seed_flag;
      if (have_amp) base.amplitude = amp_flag;
      if (opt->count("--max-iterations")) base.max_iterations = config.max_iterations;
      if (opt->count("--j-tolerance")) base.j_tolerance = config.j_tolerance;
      if (!algorithm.empty()) {
        if (algorithm == "cg") {
          base.algorithm = sympoc::Algorithm::CgPolakRibiere;
        } else if (algorithm == "sd") {
          base.algorithm = sympoc::Algorithm::SteepestDescent;
        } else {
          std::cerr << "error: --algorithm must be cg or sd\n";
          return 1;
        }
      }
      if (!init_kind.empty()) {
        if (init_kind == "random") {
          base.init = sympoc::InitKind::Random;
        } else if (init_kind == "constant") {
          base.init = sympoc::InitKind::Constant;
        } else if (init_kind == "sine") {
          base.init = sympoc::InitKind::Sine;
        } else {
          std::cerr << "error: --init must be random, constant or sine\n";
          return 1;
        }
      }
      if (!out_dir.empty()) base.out_dir = out_dir;
      return sympoc::cli::cmd_optimize(base, std::cout);
    }
    if (land->parsed()) return sympoc::cli::cmd_landscape(gate_name, domain, out_dir, std::cout);
    if (ctrl->parsed()) {
      return sympoc::cli::cmd_controllability(model_name, out_dir, std::cout);
    }
    if (flow->parsed()) {
      return sympoc::cli::cmd_flow(gate_name, seed_flag, s_max, out_dir, std::cout);
    }
    if (gates->parsed()) return sympoc::cli::cmd_list_gates(std::cout);
    if (models->parsed()) return sympoc::cli::cmd_list_models(std::cout);
    if (batch->parsed()) return sympoc::cli::cmd_batch(batch_configs, jobs, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
