#include "sympoc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sympoc/models.hpp"
#include "sympoc/propagate.hpp"

namespace sympoc::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json cmatrix_to_json(const ComplexMatrix& m, bool imag) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(imag ? m(r, c).imag() : m(r, c).real());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

fs::path prepare_out_dir(const std::string& dir) {
  const fs::path p = dir.empty() ? fs::path(default_output_root()) : fs::path(dir);
  fs::create_directories(p);
  return p;
}

}  // namespace

OptimizerOptions RunConfig::optimizer_options() const {
  OptimizerOptions opt;
  opt.algorithm = algorithm;
  opt.max_iterations = max_iterations;
  opt.j_tolerance = j_tolerance;
  opt.gradient_tolerance = gradient_tolerance;
  return opt;
}

std::string default_output_root() {
  if (const char* env = std::getenv("SYMPOCTL_OUT"); env != nullptr && env[0] != '\0') {
    return env;
  }
  return ".";
}

void apply_config_line(RunConfig& config, const std::string& raw, int line_number) {
  std::string line = raw;
  if (const auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
  line = trim(line);
  if (line.empty()) return;

  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("config line " + std::to_string(line_number) +
                                ": expected key = value, got '" + line + "'");
  }
  const std::string key = trim(line.substr(0, eq));
  std::string value = trim(line.substr(eq + 1));
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
    value = value.substr(1, value.size() - 2);
  }
  auto bad_value = [&](const std::string& what) {
    return std::invalid_argument("config line " + std::to_string(line_number) + ": " + what +
                                 " (key '" + key + "', value '" + value + "')");
  };
  try {
    if (key == "model") {
      config.model = value;
    } else if (key == "gate") {
      config.gate = value;
    } else if (key == "tf" || key == "t_f") {
      config.t_f = std::stod(value);
    } else if (key == "steps" || key == "q") {
      config.steps = std::stoi(value);
    } else if (key == "algorithm") {
      if (value == "cg" || value == "cg-pr") {
        config.algorithm = Algorithm::CgPolakRibiere;
      } else if (value == "sd" || value == "steepest") {
        config.algorithm = Algorithm::SteepestDescent;
      } else {
        throw bad_value("algorithm must be cg or sd");
      }
    } else if (key == "init") {
      if (value == "random") {
        config.init = InitKind::Random;
      } else if (value == "constant") {
        config.init = InitKind::Constant;
      } else if (value == "sine") {
        config.init = InitKind::Sine;
      } else {
        throw bad_value("init must be random, constant or sine");
      }
    } else if (key == "amplitude") {
      config.amplitude = std::stod(value);
    } else if (key == "seed") {
      config.seed = std::stoull(value);
    } else if (key == "out") {
      config.out_dir = value;
    } else if (key == "max_iterations") {
      config.max_iterations = std::stoi(value);
    } else if (key == "j_tolerance") {
      config.j_tolerance = std::stod(value);
    } else if (key == "gradient_tolerance") {
      config.gradient_tolerance = std::stod(value);
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_number) +
                                  ": unknown key '" + key + "'");
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw bad_value("malformed number");
  }
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file '" + path + "'");
  }
  RunConfig config;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    apply_config_line(config, line, line_number);
  }
  return config;
}

int cmd_optimize(const RunConfig& config, std::ostream& log) {
  ControlSystem system;
  GateTarget target;
  try {
    system = model_from_name(config.model);
    target = gate_from_name(config.gate);
    if (system.flavor != target.flavor) {
      throw std::invalid_argument("model '" + config.model + "' is " +
                                  to_string(system.flavor) + "-flavored but gate '" +
                                  config.gate + "' is " + to_string(target.flavor) +
                                  "-flavored");
    }
    if (system.dim() != target.dim()) {
      throw std::invalid_argument("model '" + config.model + "' (dim " +
                                  std::to_string(system.dim()) + ") does not match gate '" +
                                  config.gate + "' (dim " + std::to_string(target.dim()) + ")");
    }
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }

  const fs::path out = prepare_out_dir(config.out_dir);
  const ControlField init = initial_field(config.init, system.num_controls(), config.steps,
                                          config.t_f, config.amplitude, config.seed);
  const OptimizationTrace trace =
      optimize(system, target, config.t_f, config.optimizer_options(), init);

  // trace.csv: one row per iteration.
  std::string csv = "iteration,J,grad_norm,step,fluence\n";
  for (const auto& r : trace.records) {
    csv += std::to_string(r.iteration) + "," + fmt17(r.j) + "," + fmt17(r.gradient_norm) + "," +
           fmt17(r.step_size) + "," + fmt17(r.fluence) + "\n";
  }
  write_file(out / "trace.csv", csv);

  // field.csv: rows = controls, columns = time points.
  const ControlField& field = trace.final_field;
  std::string fcsv = "control";
  for (int k = 0; k < field.n_steps; ++k) {
    fcsv += "," + fmt17(field.t_f * static_cast<double>(k) / (field.n_steps - 1));
  }
  fcsv += "\n";
  for (int i = 0; i < field.n_controls; ++i) {
    fcsv += "C" + std::to_string(i);
    for (int k = 0; k < field.n_steps; ++k) fcsv += "," + fmt17(field.amplitudes(i, k));
    fcsv += "\n";
  }
  write_file(out / "field.csv", fcsv);

  json prop;
  prop["flavor"] = to_string(system.flavor);
  if (system.flavor == Flavor::Symplectic) {
    prop["n_modes"] = system.n_modes;
    prop["matrix"] = matrix_to_json(trace.final_propagator);
  } else {
    prop["dim"] = system.dim();
    prop["matrix_real"] = cmatrix_to_json(trace.final_propagator_u, false);
    prop["matrix_imag"] = cmatrix_to_json(trace.final_propagator_u, true);
  }
  write_file(out / "final_propagator.json", prop.dump(2) + "\n");

  const IterationRecord& last = trace.records.back();
  const bool converged = last.j <= config.j_tolerance;
  json summary;
  summary["model"] = config.model;
  summary["gate"] = config.gate;
  summary["t_f"] = config.t_f;
  summary["steps"] = config.steps;
  summary["seed"] = config.seed;
  summary["algorithm"] = to_string(config.algorithm);
  summary["init"] = to_string(config.init);
  summary["amplitude"] = config.amplitude;
  summary["final_j"] = last.j;
  summary["gradient_norm"] = last.gradient_norm;
  summary["fluence"] = last.fluence;
  summary["iterations"] = last.iteration;
  summary["termination"] = to_string(trace.termination);
  summary["converged"] = converged;
  write_file(out / "summary.json", summary.dump(2) + "\n");

  log << "optimize " << config.model << " -> " << config.gate << ": J = " << fmt17(last.j)
      << " after " << last.iteration << " iterations (" << to_string(trace.termination)
      << "), outputs in " << out.string() << "\n";
  return converged ? 0 : 2;
}

int cmd_landscape(const std::string& gate, const std::string& domain_name,
                  const std::string& out_dir, std::ostream& log) {
  try {
    const GateTarget target = gate_from_name(gate);
    if (target.flavor != Flavor::Symplectic) {
      log << "error: landscape enumeration needs a symplectic gate; '" << gate << "' is unitary\n";
      return 1;
    }
    Domain domain = Domain::Sp;
    if (domain_name == "OSp" || domain_name == "osp") {
      domain = Domain::OSp;
    } else if (!(domain_name.empty() || domain_name == "Sp" || domain_name == "sp")) {
      log << "error: unknown domain '" << domain_name << "' (use Sp or OSp)\n";
      return 1;
    }
    const auto components = enumerate_critical(target, domain);

    json report;
    report["gate"] = gate;
    report["domain"] = to_string(domain);
    report["n_modes"] = target.n_modes();
    report["component_count"] = components.size();
    json comps = json::array();
    for (const auto& c : components) {
      json jc;
      jc["label"] = c.label;
      jc["value"] = c.value;
      jc["signature"] = {{"zero", c.signature[0]},
                         {"plus", c.signature[1]},
                         {"minus", c.signature[2]}};
      jc["dimension"] = c.dimension;
      jc["m0"] = c.m0;
      jc["characteristic"] = matrix_to_json(c.d);
      jc["representative"] = matrix_to_json(c.representative);
      comps.push_back(std::move(jc));
    }
    report["components"] = std::move(comps);

    const fs::path out = prepare_out_dir(out_dir);
    write_file(out / "landscape.json", report.dump(2) + "\n");
    log << report.dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_controllability(const std::string& model, const std::string& out_dir, std::ostream& log) {
  try {
    const ControlSystem system = model_from_name(model);
    const ControllabilityReport report = lie_closure(system);
    json j;
    j["model"] = model;
    j["lie_dimension"] = report.lie_dimension;
    j["ambient_dimension"] = report.ambient_dimension;
    j["rank_condition_met"] = report.rank_condition_met;
    j["drift_compact"] = report.drift_compact;
    j["controls_span_algebra"] = report.controls_span_algebra;
    j["classification"] = to_string(report.classification);
    const fs::path out = prepare_out_dir(out_dir);
    write_file(out / "controllability.json", j.dump(2) + "\n");
    log << j.dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_flow(const std::string& gate, std::uint64_t seed, double s_max,
             const std::string& out_dir, std::ostream& log) {
  try {
    const GateTarget target = gate_from_name(gate);
    FlowTrajectory traj;
    if (target.flavor == Flavor::Symplectic) {
      const int n = target.n_modes();
      Matrix s0 = target.w;
      if (seed != 0) {
        // Seeded symmetric perturbation along the algebra.
        const ControlField noise =
            initial_field(InitKind::Random, 2 * n, 2 * n, 1.0, 1.0, seed);
        Matrix k = noise.amplitudes;
        k = 0.5 * (k + k.transpose());
        k *= 0.05 / k.norm();
        s0 = expm_pade(form_matrix(n) * k) * target.w;
      }
      traj = gradient_flow(target, SymplecticMatrix(s0), s_max);
    } else {
      const int d = target.dim();
      ComplexMatrix u0 = target.wu;
      if (seed != 0) {
        const ControlField re = initial_field(InitKind::Random, d, d, 1.0, 1.0, seed);
        const ControlField im = initial_field(InitKind::Random, d, d, 1.0, 1.0, seed + 101);
        ComplexMatrix x = re.amplitudes.cast<std::complex<double>>() +
                          std::complex<double>(0, 1) * im.amplitudes.cast<std::complex<double>>();
        x = 0.5 * (x - x.adjoint());
        x *= 1.5 / x.norm();
        const ComplexMatrix hx = std::complex<double>(0, 1) * x;
        u0 = expm_hermitian_prop(HermitianMatrix(hx), 1.0).entries() * target.wu;
      }
      traj = gradient_flow_unitary(target, UnitaryMatrix(u0), s_max);
    }

    std::string csv = "s,J\n";
    for (const auto& p : traj.samples) {
      csv += fmt17(p.s) + "," + fmt17(p.j) + "\n";
    }
    const fs::path out = prepare_out_dir(out_dir);
    write_file(out / "flow.csv", csv);
    const char* reason = traj.termination == FlowTermination::Stiffness ? "stiffness abort"
                         : traj.termination == FlowTermination::Converged ? "converged"
                         : traj.termination == FlowTermination::Stationary ? "stationary"
                                                                           : "completed";
    log << "flow " << gate << ": " << traj.samples.size() << " samples, " << reason
        << " at s = " << fmt17(traj.samples.back().s) << ", final J = "
        << fmt17(traj.samples.back().j) << ", wrote " << (out / "flow.csv").string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_list_gates(std::ostream& log) {
  for (const auto& name : gate_names()) log << name << "\n";
  return 0;
}

int cmd_list_models(std::ostream& log) {
  for (const auto& name : model_names()) log << name << "\n";
  return 0;
}

int cmd_batch(const std::vector<std::string>& config_paths, int jobs, std::ostream& log) {
  if (config_paths.empty()) {
    log << "error: batch needs at least one config file\n";
    return 1;
  }
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(config_paths.size())));
  std::mutex log_mutex;
  std::vector<int> codes(config_paths.size(), 0);
  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const size_t idx = cursor.fetch_add(1);
      if (idx >= config_paths.size()) return;
      std::ostringstream local;
      int code = 1;
      try {
        const RunConfig config = parse_config_file(config_paths[idx]);
        code = cmd_optimize(config, local);
      } catch (const std::exception& e) {
        local << "error: " << e.what() << "\n";
      }
      codes[idx] = code;
      std::lock_guard<std::mutex> guard(log_mutex);
      log << "[" << config_paths[idx] << "] exit " << code << "\n" << local.str();
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return *std::max_element(codes.begin(), codes.end());
}

}  // namespace sympoc::cli
