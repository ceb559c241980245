// Command line front end: pulse design, resonance solving, transfer
// simulation, truth tables, and parameter sweeps, all driven by scenario
// files. Exit codes: 0 success, 1 runtime failure, 2 configuration error.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydsta/gate.hpp"
#include "rydsta/report_io.hpp"
#include "rydsta/scenario.hpp"

namespace fs = std::filesystem;

namespace {

using namespace rydsta;

struct CommonOptions {
  std::string scenario_path;
  std::string model;
  std::string out_dir;
  int threads = -1;
  // Reserved for stochastic unraveling; recorded so wrapper scripts can pass
  // it today without changing their interface later.
  unsigned long seed = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("-s,--scenario", opt.scenario_path, "scenario file (key = value lines)")
      ->required();
  cmd->add_option("-m,--model", opt.model, "override: effective | full-rw | full-cosine");
  cmd->add_option("-o,--out", opt.out_dir, "output directory (overrides the scenario's out_dir)");
  cmd->add_option("-t,--threads", opt.threads, "override worker thread count");
  cmd->add_option("--seed", opt.seed, "reserved for stochastic extensions");
}

// invalid_argument from the overrides or validate() maps to exit code 2.
void apply_overrides(Scenario& sc, const CommonOptions& opt) {
  if (!opt.model.empty()) sc.proto.model = model_from_name(opt.model);
  if (!opt.out_dir.empty()) sc.out_dir = opt.out_dir;
  if (opt.threads >= 0) sc.proto.threads = opt.threads;
  sc.proto.validate();
}

Scenario load_scenario(const CommonOptions& opt) {
  Scenario sc = parse_scenario_file(opt.scenario_path);
  apply_overrides(sc, opt);
  return sc;
}

fs::path ensure_out_dir(const Scenario& sc) {
  const fs::path dir(sc.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + sc.out_dir + "'");
  return dir;
}

void write_echo(std::ostream& out, const Scenario& sc) {
  const nlohmann::ordered_json j = scenario_json(sc);
  for (auto it = j.begin(); it != j.end(); ++it)
    out << "# " << it.key() << " = " << it.value().dump() << '\n';
}

void write_table(const fs::path& path, const Scenario& sc, const Table& table,
                 const std::vector<std::string>& extra_comments = {}) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_echo(out, sc);
  for (const std::string& line : extra_comments) out << "# " << line << '\n';
  write_csv(out, table.header, table.rows);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// ---------------------------------------------------------------------------
// design-pulse
// ---------------------------------------------------------------------------

int cmd_design_pulse(const CommonOptions& opt, int samples) {
  if (samples < 2) throw std::invalid_argument("design-pulse: --samples must be at least 2");
  const Scenario sc = load_scenario(opt);
  const DressedSchedule sched = sc.proto.schedule();
  const Table table = schedule_table(sched, samples);
  const fs::path dir = ensure_out_dir(sc);
  write_table(dir / "schedule.csv", sc, table);

  double omega_peak = 0.0;
  for (const auto& row : table.rows)
    omega_peak = std::max(omega_peak, std::hypot(row[1], row[2]));

  nlohmann::ordered_json j;
  j["scenario"] = scenario_json(sc);
  j["window_t_i_s"] = sched.base.t_i;
  j["window_t_f_s"] = sched.base.t_f;
  j["omega_eff_rad_s"] = sc.omega_eff;
  j["omega_peak_rad_s"] = omega_peak;
  j["omega_peak_over_eff"] = sc.omega_eff > 0.0 ? omega_peak / sc.omega_eff : 0.0;
  j["dressed"] = sched.dressed;
  write_json_file((dir / "design.json").string(), j);

  std::printf("design-pulse: wrote %s and %s\n", (dir / "schedule.csv").c_str(),
              (dir / "design.json").c_str());
  std::printf("design-pulse: peak drive %.6e rad/s (%.4f x omega_eff), window [%.6e, %.6e] s\n",
              omega_peak, sc.omega_eff > 0.0 ? omega_peak / sc.omega_eff : 0.0, sched.base.t_i,
              sched.base.t_f);
  return 0;
}

// ---------------------------------------------------------------------------
// rab-solve
// ---------------------------------------------------------------------------

int cmd_rab_solve(const CommonOptions& opt) {
  // Reports the anti-blockade resonance bookkeeping for the scenario's
  // interaction set; the detuning may be stated or solved by the parser.
  const Scenario sc = load_scenario(opt);
  const DriveParams& p = sc.proto.params;
  const EffectiveParams eff = sc.proto.effective();

  nlohmann::ordered_json j;
  j["name"] = sc.name;
  j["n"] = p.n;
  j["v_total_rad_s"] = p.v_total();
  j["omega_c_rad_s"] = p.omega_c;
  j["omega_p_rad_s"] = p.omega_p;
  j["omega_s_rad_s"] = p.omega_s;
  j["delta_rad_s"] = p.delta;
  j["delta_mhz_2pi"] = p.delta / (2.0e6 * M_PI);
  j["delta_solved"] = sc.delta_solved;
  j["residual_rad_s"] = eff.delta_eff;
  j["relative_residual"] = std::abs(eff.delta_eff) / p.delta;
  std::cout << j.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

int cmd_simulate(const CommonOptions& opt) {
  const Scenario sc = load_scenario(opt);
  const HilbertSpace space = sc.proto.space();
  const DressedSchedule sched = sc.proto.schedule();

  // The active branch: every control and the target start in |1>.
  const std::vector<std::string> in_labels(static_cast<std::size_t>(sc.proto.n), "1");
  const QuantumState input = QuantumState::basis_ket(space, in_labels);

  const auto t0 = std::chrono::steady_clock::now();
  const GateRun run = run_gate(sc.proto, input);
  const auto t1 = std::chrono::steady_clock::now();
  const double wall_s = std::chrono::duration<double>(t1 - t0).count();

  const fs::path dir = ensure_out_dir(sc);
  write_table(dir / "schedule.csv", sc, schedule_table(sched, sc.proto.integrator.samples));
  write_table(dir / "populations.csv", sc, population_table(run, space));
  for (const StepRun& sr : run.steps) {
    const std::string name = "transfer_step" + std::to_string(sr.step.index) + ".csv";
    write_table(dir / name, sc, transfer_table(sr, space, sched));
  }

  Table sphere;
  sphere.header = {"t", "a", "b", "c", "step"};
  for (const StepRun& sr : run.steps) {
    const double local_start = sr.trajectory.times.front();
    for (const SpherePoint& pt : sphere_path(sr, space))
      sphere.rows.push_back(
          {sr.t_offset + (pt.t - local_start), pt.a, pt.b, pt.c, double(sr.step.index)});
  }
  write_table(dir / "sphere.csv", sc, sphere);

  nlohmann::ordered_json j;
  j["scenario"] = scenario_json(sc);
  j["input"] = space.basis_label(space.index_of_labels(in_labels));
  nlohmann::ordered_json final_pops = nlohmann::ordered_json::object();
  for (int b = 0; b < space.dim(); ++b) {
    const double pop = population(run.final_state, b);
    if (pop > 1e-12) final_pops[space.basis_label(b)] = pop;
  }
  j["final_populations"] = std::move(final_pops);
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const StepRun& sr : run.steps) {
    nlohmann::ordered_json s;
    s["step"] = sr.step.index;
    s["accepted_steps"] = sr.trajectory.accepted_steps;
    s["rejected_steps"] = sr.trajectory.rejected_steps;
    s["max_drift"] = sr.trajectory.max_drift;
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  j["wall_s"] = wall_s;
  write_json_file((dir / "run.json").string(), j);

  const std::vector<std::string> out_labels = [&] {
    std::vector<std::string> l(static_cast<std::size_t>(sc.proto.n), "1");
    l.back() = "0";
    return l;
  }();
  std::printf("simulate: input |%s>, %.3f s wall\n",
              space.basis_label(space.index_of_labels(in_labels)).c_str(), wall_s);
  std::printf("simulate: final p_out = %.9f, p_in = %.9f\n",
              population(run.final_state, out_labels), population(run.final_state, in_labels));
  std::printf("simulate: wrote populations, transfer, sphere, schedule CSVs and run.json in %s\n",
              dir.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// truth-table
// ---------------------------------------------------------------------------

int cmd_truth_table(const CommonOptions& opt, bool with_fav) {
  const Scenario sc = load_scenario(opt);

  GateReport report;
  report.proto = sc.proto;
  report.table = truth_table(sc.proto);
  if (with_fav) report.fav = average_fidelity(sc.proto);

  const fs::path dir = ensure_out_dir(sc);
  write_json_file((dir / "report.json").string(), gate_report_json(report, sc));

  const TruthTable& tt = report.table;
  Table table;
  table.header = {"input_index", "ideal_index", "fidelity", "leakage"};
  for (const std::string& label : tt.inputs) table.header.push_back("p_" + label);
  for (std::size_t i = 0; i < tt.inputs.size(); ++i) {
    const auto ideal =
        std::find(tt.inputs.begin(), tt.inputs.end(), tt.ideal_outputs[i]) - tt.inputs.begin();
    std::vector<double> row{double(i), double(ideal), tt.fidelity[i], tt.leakage[i]};
    for (std::size_t o = 0; o < tt.inputs.size(); ++o)
      row.push_back(tt.composed(int(i), int(o)));
    table.rows.push_back(std::move(row));
  }
  std::vector<std::string> comments;
  {
    std::ostringstream os;
    os << "inputs =";
    for (const std::string& label : tt.inputs) os << ' ' << label;
    comments.push_back(os.str());
  }
  write_table(dir / "truth_table.csv", sc, table, comments);

  const double min_fid = *std::min_element(tt.fidelity.begin(), tt.fidelity.end());
  std::printf("truth-table: min input fidelity %.8f, max leakage %.3e\n", min_fid,
              *std::max_element(tt.leakage.begin(), tt.leakage.end()));
  if (report.fav) std::printf("truth-table: F_av = %.8f\n", report.fav->f_av);
  std::printf("truth-table: wrote %s and %s\n", (dir / "report.json").c_str(),
              (dir / "truth_table.csv").c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

SweepAxis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("sweep: axis must look like 'key=v1;v2;...'");
  SweepAxis axis;
  axis.key = trim(text.substr(0, eq));
  if (axis.key.empty()) throw std::invalid_argument("sweep: axis key is empty");
  std::string rest = text.substr(eq + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto semi = rest.find(';', start);
    const std::string value =
        trim(semi == std::string::npos ? rest.substr(start) : rest.substr(start, semi - start));
    if (value.empty())
      throw std::invalid_argument("sweep: empty value on axis '" + axis.key + "'");
    axis.values.push_back(value);
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return axis;
}

// Replaces (or appends) one key line so the full parser, units and all,
// validates every grid point exactly like a hand-written scenario.
std::string override_key(const std::string& text, const std::string& key,
                         const std::string& value) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::string probe = line;
    const auto hash = probe.find('#');
    if (hash != std::string::npos) probe.erase(hash);
    const auto eq = probe.find('=');
    if (eq != std::string::npos && trim(probe.substr(0, eq)) == key) continue;
    out << line << '\n';
  }
  out << key << " = " << value << '\n';
  return out.str();
}

std::string csv_quote(const std::string& s) {
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += "\"\"";
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

int cmd_sweep(const CommonOptions& opt, const std::vector<std::string>& axis_specs) {
  if (axis_specs.empty() || axis_specs.size() > 2)
    throw std::invalid_argument("sweep: give one or two --axis options");
  std::vector<SweepAxis> axes;
  for (const std::string& spec : axis_specs) axes.push_back(parse_axis(spec));

  // The base scenario must parse on its own; its echo heads the sweep file.
  const Scenario base = load_scenario(opt);
  std::string base_text;
  {
    std::ifstream in(opt.scenario_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    base_text = buf.str();
  }

  const fs::path dir = ensure_out_dir(base);
  std::ofstream out(dir / "sweep.csv");
  if (!out) throw std::runtime_error("cannot open sweep.csv for writing");
  write_echo(out, base);
  out << csv_quote(axes[0].key);
  if (axes.size() == 2) out << ',' << csv_quote(axes[1].key);
  out << ",f_av,status\n";

  const std::size_t n1 = axes[0].values.size();
  const std::size_t n2 = axes.size() == 2 ? axes[1].values.size() : 1;
  int failures = 0;
  char cell[64];
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t k = 0; k < n2; ++k) {
      std::string text = override_key(base_text, axes[0].key, axes[0].values[i]);
      if (axes.size() == 2) text = override_key(text, axes[1].key, axes[1].values[k]);
      std::string status = "ok";
      double f_av = std::numeric_limits<double>::quiet_NaN();
      try {
        Scenario sc = parse_scenario_text(text, base.name);
        apply_overrides(sc, opt);
        f_av = average_fidelity(sc.proto).f_av;
      } catch (const std::exception& ex) {
        status = std::string("error: ") + ex.what();
        ++failures;
      }
      out << csv_quote(axes[0].values[i]);
      if (axes.size() == 2) out << ',' << csv_quote(axes[1].values[k]);
      std::snprintf(cell, sizeof cell, "%.12e", f_av);
      out << ',' << cell << ',' << csv_quote(status) << '\n';

      std::ostringstream note;
      note << "sweep: " << axes[0].key << " = " << axes[0].values[i];
      if (axes.size() == 2) note << ", " << axes[1].key << " = " << axes[1].values[k];
      note << " -> " << (status == "ok" ? std::string("f_av = ") + cell : status);
      std::printf("%s\n", note.str().c_str());
    }
  }
  std::printf("sweep: wrote %s (%zu points, %d failed)\n", (dir / "sweep.csv").c_str(), n1 * n2,
              failures);
  return failures == 0 ? 0 : 1;
}

int guard(const std::function<int()>& run) {
  try {
    return run();
  } catch (const ScenarioError& ex) {
    std::cerr << "config error";
    if (ex.line > 0) std::cerr << " (line " << ex.line << ")";
    if (!ex.key.empty()) std::cerr << " [" << ex.key << "]";
    std::cerr << ": " << ex.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "config error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dressed shortcut pulse design and anti-blockade gate simulation"};
  app.require_subcommand(1);

  CommonOptions design_opt;
  int design_samples = 801;
  CLI::App* design = app.add_subcommand("design-pulse", "write the reshaped pulse schedule");
  add_common(design, design_opt);
  design->add_option("--samples", design_samples, "rows in schedule.csv (default 801)");

  CommonOptions rab_opt;
  CLI::App* rab = app.add_subcommand("rab-solve", "report the anti-blockade resonance detuning");
  add_common(rab, rab_opt);

  CommonOptions sim_opt;
  CLI::App* sim = app.add_subcommand("simulate", "propagate the active branch through all steps");
  add_common(sim, sim_opt);

  CommonOptions tt_opt;
  bool no_fav = false;
  CLI::App* tt = app.add_subcommand("truth-table", "truth table and average gate fidelity");
  add_common(tt, tt_opt);
  tt->add_flag("--no-fav", no_fav, "skip the average-fidelity quadrature");

  CommonOptions sweep_opt;
  std::vector<std::string> axis_specs;
  CLI::App* sweep = app.add_subcommand("sweep", "average fidelity over a parameter grid");
  add_common(sweep, sweep_opt);
  sweep->add_option("--axis", axis_specs, "axis as 'key=v1;v2;...' (repeat for a second axis)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (design->parsed()) return guard([&] { return cmd_design_pulse(design_opt, design_samples); });
  if (rab->parsed()) return guard([&] { return cmd_rab_solve(rab_opt); });
  if (sim->parsed()) return guard([&] { return cmd_simulate(sim_opt); });
  if (tt->parsed()) return guard([&] { return cmd_truth_table(tt_opt, !no_fav); });
  if (sweep->parsed()) return guard([&] { return cmd_sweep(sweep_opt, axis_specs); });
  return 2;
}
