#include "rydsta/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rydsta {

namespace {

std::string format_cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

std::string gate_name(int n) {
  if (n == 2) return "cnot";
  if (n == 3) return "toffoli";
  return "ck-not";
}

nlohmann::ordered_json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("write_csv: row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_cell(row[i]);
    }
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(out, header, rows);
}

Table schedule_table(const DressedSchedule& sched, int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("schedule_table: need at least 2 samples");
  Table table;
  table.header = {"t", "omega_p", "omega_s", "theta", "mu", "g_x", "g_z"};
  table.rows.reserve(n_samples);
  const double t_i = sched.base.t_i;
  const double t_f = sched.base.t_f;
  for (int k = 0; k < n_samples; ++k) {
    const double t = t_i + (t_f - t_i) * static_cast<double>(k) / (n_samples - 1);
    const DrivePair d = sched.drives(t);
    const double mu = sched.dressed ? sched.dressing.mu(t) : 0.0;
    const double g_x = sched.dressed ? sched.corrections.g_x(t) : 0.0;
    const double g_z = sched.dressed ? sched.corrections.g_z(t) : 0.0;
    table.rows.push_back({t, d.omega_p, d.omega_s, sched.angles.theta(t), mu, g_x, g_z});
  }
  return table;
}

Table transfer_table(const StepRun& run, const HilbertSpace& space,
                     const DressedSchedule& sched) {
  const LambdaIndices idx = lambda_indices(space, run.step);
  Table table;
  table.header = {"t", "p_in", "p_r", "p_out", "pred_in", "pred_r", "pred_out"};
  table.rows.reserve(run.trajectory.times.size());
  for (std::size_t i = 0; i < run.trajectory.times.size(); ++i) {
    const double t = run.trajectory.times[i];
    const QuantumState& st = run.trajectory.states[i];
    const PathPopulations pred = predicted_populations(sched, t);
    table.rows.push_back({t, population(st, idx.in), population(st, idx.r),
                          population(st, idx.out), pred.p_in, pred.p_r, pred.p_out});
  }
  return table;
}

Table population_table(const GateRun& run, const HilbertSpace& space) {
  Table table;
  table.header = {"t"};
  for (int b = 0; b < space.dim(); ++b) table.header.push_back("p_" + space.basis_label(b));
  for (std::size_t k = 0; k < run.steps.size(); ++k) {
    const StepRun& step = run.steps[k];
    const double local_start = step.trajectory.times.front();
    // The first sample of a later step duplicates the previous step's end.
    const std::size_t begin = k == 0 ? 0 : 1;
    for (std::size_t i = begin; i < step.trajectory.times.size(); ++i) {
      std::vector<double> row;
      row.reserve(space.dim() + 1);
      row.push_back(step.t_offset + (step.trajectory.times[i] - local_start));
      for (int b = 0; b < space.dim(); ++b)
        row.push_back(population(step.trajectory.states[i], b));
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

nlohmann::ordered_json scenario_json(const Scenario& scenario) {
  const GateProtocol& p = scenario.proto;
  nlohmann::ordered_json j;
  j["name"] = scenario.name;
  j["gate"] = gate_name(p.n);
  j["n"] = p.n;
  j["model"] = model_name(p.model);
  j["dissipation"] = p.dissipation;
  j["dressed"] = p.dressed;
  j["omega_c_rad_s"] = p.params.omega_c;
  j["omega_p_rad_s"] = p.params.omega_p;
  j["omega_s_rad_s"] = p.params.omega_s;
  j["delta_rad_s"] = p.params.delta;
  j["delta_solved"] = scenario.delta_solved;
  j["v_pairs_rad_s"] = p.params.v_pairs;
  j["v_total_rad_s"] = p.params.v_total();
  j["v_balanced"] = scenario.v_balanced;
  j["gamma_rad_s"] = p.params.gamma;
  j["omega_eff_rad_s"] = scenario.omega_eff;
  j["tau_s"] = p.tau;
  j["eps_edge"] = p.eps_edge;
  j["rel_tol"] = p.integrator.rel_tol;
  j["abs_tol"] = p.integrator.abs_tol;
  j["max_step_s"] = p.integrator.max_step;
  j["samples"] = p.integrator.samples;
  j["theta_grid"] = p.theta_grid;
  j["fav_propagation"] =
      p.fav_propagation == FavPropagation::linear ? "linear" : "per-theta";
  j["threads"] = p.threads;
  j["out_dir"] = scenario.out_dir;
  return j;
}

nlohmann::ordered_json gate_report_json(const GateReport& report, const Scenario& scenario) {
  nlohmann::ordered_json j;
  j["scenario"] = scenario_json(scenario);

  const TruthTable& tt = report.table;
  nlohmann::ordered_json table;
  table["inputs"] = tt.inputs;
  table["ideal_outputs"] = tt.ideal_outputs;
  table["composed"] = matrix_json(tt.composed);
  nlohmann::ordered_json per_step = nlohmann::ordered_json::array();
  for (const auto& m : tt.per_step) per_step.push_back(matrix_json(m));
  table["per_step"] = std::move(per_step);
  table["fidelity"] = tt.fidelity;
  table["leakage"] = tt.leakage;
  if (tt.phase.empty())
    table["phase"] = nullptr;
  else
    table["phase"] = tt.phase;
  j["truth_table"] = std::move(table);

  if (report.fav) {
    nlohmann::ordered_json fav;
    fav["f_av"] = report.fav->f_av;
    fav["theta_grid"] = report.fav->theta_grid;
    fav["theta"] = report.fav->theta;
    fav["fidelity"] = report.fav->fidelity;
    fav["branch_coherence_re"] = report.fav->branch_coherence.real();
    fav["branch_coherence_im"] = report.fav->branch_coherence.imag();
    fav["relative_phase"] = report.fav->relative_phase;
    j["f_av"] = std::move(fav);
  } else {
    j["f_av"] = nullptr;
  }
  return j;
}

void write_json_file(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
}

}  // namespace rydsta
