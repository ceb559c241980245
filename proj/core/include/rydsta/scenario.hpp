#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "rydsta/gate.hpp"

namespace rydsta {

// Parse failure with the offending line (1-based, 0 when not line-specific)
// and the key being processed (empty when not key-specific).
struct ScenarioError : std::runtime_error {
  ScenarioError(const std::string& what, int line_no = 0, std::string key_name = "")
      : std::runtime_error(what), line(line_no), key(std::move(key_name)) {}
  int line;
  std::string key;
};

// A fully resolved run description plus bookkeeping about how derived
// quantities were obtained.
struct Scenario {
  std::string name;
  GateProtocol proto;
  double omega_eff = 0.0;   // effective amplitude anchoring the pulse design
  bool delta_solved = false;  // detuning obtained from the resonance solve
  bool v_balanced = false;    // interactions obtained from the balance solve
  std::string out_dir = "out";
};

// Strict key = value format, one pair per line, '#' comments, blank lines
// allowed. Unknown keys, duplicate keys, malformed values, and missing
// required keys all throw ScenarioError.
//
// Keys (dimensioned values carry a unit tag):
//   gate = cnot | toffoli | ck-not      (ck-not requires n)
//   n = 4                               (register size, ck-not only)
//   model = effective | full-rw | full-cosine
//   dissipation = true | false
//   dressed = true | false
//   omega_c = 30 MHz_2pi
//   omega_p = 30 MHz_2pi
//   omega_s = 30 MHz_2pi
//   delta   = 450 MHz_2pi | rab-solve
//   v_total = 6 GHz_2pi | balance     (equal split across pairs)
//   v_01 = 2 GHz_2pi                  (per-pair alternative to v_total)
//   gamma = 1 kHz_2pi
//   omega_eff = 1 MHz_2pi             (optional; derived when absent)
//   tau = 0.2 /omega_eff              (or s | ms | us | ns)
//   eps_edge = 1e-4
//   rel_tol = 1e-8
//   abs_tol = 1e-10
//   max_step = 1 ns                   (optional)
//   samples = 201
//   theta_grid = 101
//   fav_propagation = linear | per-theta
//   threads = 1
//   out_dir = out                       (optional output directory)
//
// `delta = rab-solve` computes the detuning from the interactions and peak
// drives; `v_total = balance` computes the total interaction from the stated
// detuning. Asking for both at once is an error.
Scenario parse_scenario_file(const std::string& path);
Scenario parse_scenario_text(const std::string& text, const std::string& name = "<memory>");

// Value parsers, exposed for direct testing. Frequencies return rad/s; the
// `_2pi` tags mean the stated number times 2*pi*scale. Times return seconds;
// `/omega_eff` divides the stated number by the scenario's effective
// amplitude (absent -> error).
double parse_frequency(const std::string& value, int line_no = 0, const std::string& key = "");
double parse_time(const std::string& value, std::optional<double> omega_eff, int line_no = 0,
                  const std::string& key = "");
bool parse_bool(const std::string& value, int line_no = 0, const std::string& key = "");

std::string model_name(ModelKind kind);
ModelKind model_from_name(const std::string& name);

}  // namespace rydsta
