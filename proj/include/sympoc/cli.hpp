#pragma once

#include <iosfwd>

#include "sympoc/lie.hpp"
#include "sympoc/optimizer.hpp"

namespace sympoc::cli {

/// One reproducible optimization run: model/gate names resolved through the
/// registries, grid and algorithm settings, and the output directory.
struct RunConfig {
  std::string model = "photon:2";
  std::string gate = "sum";
  double t_f = 1.0;
  int steps = 32;
  Algorithm algorithm = Algorithm::CgPolakRibiere;
  InitKind init = InitKind::Random;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  std::string out_dir;
  int max_iterations = 5000;
  double j_tolerance = 1e-4;
  double gradient_tolerance = 1e-8;

  OptimizerOptions optimizer_options() const;
};

/// Parse a flat key = value config file (TOML-compatible subset: comments
/// with '#', optional double quotes around values). Unknown keys and
/// malformed lines are reported with their line number.
RunConfig parse_config_file(const std::string& path);
void apply_config_line(RunConfig& config, const std::string& line, int line_number);

/// Default output root: $SYMPOCTL_OUT when set, else the current directory.
std::string default_output_root();

/// Runs the optimization described by the config and writes trace.csv,
/// field.csv, final_propagator.json and summary.json into the output
/// directory. Returns 0 when the run converged to the J tolerance, 2 when it
/// did not, 1 on configuration errors.
int cmd_optimize(const RunConfig& config, std::ostream& log);

/// Critical-topology report for a symplectic gate over Sp or OSp, written to
/// <out>/landscape.json and echoed to the log stream.
int cmd_landscape(const std::string& gate, const std::string& domain, const std::string& out_dir,
                  std::ostream& log);

/// Controllability report for a registry model, written to
/// <out>/controllability.json.
int cmd_controllability(const std::string& model, const std::string& out_dir, std::ostream& log);

/// Gradient-flow trajectory for a gate, written to <out>/flow.csv as
/// (s, J) rows. Seed 0 starts exactly at W; other seeds start from a seeded
/// perturbation of W (symplectic) or a seeded random unitary.
int cmd_flow(const std::string& gate, std::uint64_t seed, double s_max, const std::string& out_dir,
             std::ostream& log);

int cmd_list_gates(std::ostream& log);
int cmd_list_models(std::ostream& log);

/// Fan out independent configs across worker threads; returns the maximum
/// exit code.
int cmd_batch(const std::vector<std::string>& config_paths, int jobs, std::ostream& log);

}  // namespace sympoc::cli
