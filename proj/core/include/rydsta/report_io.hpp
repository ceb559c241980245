#pragma once

#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "rydsta/gate.hpp"
#include "rydsta/scenario.hpp"

namespace rydsta {

// All numeric CSV cells use %.12e so files are byte-stable across runs.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Pulse-design table, columns t, omega_p, omega_s, theta, mu, g_x, g_z:
// reshaped drive pair in effective units, base mixing angle, dressing angle,
// and the control corrections.
Table schedule_table(const DressedSchedule& sched, int n_samples);

// Populations of the step's lambda triple along a propagated trajectory plus
// the closed-form predictions for the same times.
Table transfer_table(const StepRun& run, const HilbertSpace& space, const DressedSchedule& sched);

// Per-sample populations of every register basis state, one column per label.
Table population_table(const GateRun& run, const HilbertSpace& space);

// Resolved scenario echo; every output file embeds it (JSON object, or one
// '# key = value' comment line per entry at the top of a CSV).
nlohmann::ordered_json scenario_json(const Scenario& scenario);

nlohmann::ordered_json gate_report_json(const GateReport& report, const Scenario& scenario);
void write_json_file(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace rydsta
