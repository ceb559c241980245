#include "rydsta/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace rydsta {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_number(const std::string& token, int line_no, const std::string& key) {
  if (token.empty()) throw ScenarioError("empty numeric value", line_no, key);
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + token.size())
    throw ScenarioError("malformed number '" + token + "'", line_no, key);
  if (!std::isfinite(v)) throw ScenarioError("non-finite number '" + token + "'", line_no, key);
  return v;
}

long parse_integer(const std::string& token, int line_no, const std::string& key) {
  if (token.empty()) throw ScenarioError("empty integer value", line_no, key);
  const char* begin = token.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end != begin + token.size())
    throw ScenarioError("malformed integer '" + token + "'", line_no, key);
  return v;
}

std::vector<std::string> split_tokens(const std::string& value) {
  std::vector<std::string> tokens;
  std::istringstream in(value);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

struct RawEntry {
  std::string value;
  int line = 0;
};

using RawMap = std::map<std::string, RawEntry>;

std::optional<RawEntry> take(RawMap& raw, const std::string& key) {
  auto it = raw.find(key);
  if (it == raw.end()) return std::nullopt;
  RawEntry entry = it->second;
  raw.erase(it);
  return entry;
}

RawEntry require(RawMap& raw, const std::string& key) {
  auto entry = take(raw, key);
  if (!entry) throw ScenarioError("missing required key", 0, key);
  return *entry;
}

}  // namespace

double parse_frequency(const std::string& value, int line_no, const std::string& key) {
  const auto tokens = split_tokens(value);
  if (tokens.size() != 2)
    throw ScenarioError("frequency needs '<number> <unit>' with unit one of "
                        "rad/s, Hz_2pi, kHz_2pi, MHz_2pi, GHz_2pi",
                        line_no, key);
  const double number = parse_number(tokens[0], line_no, key);
  const std::string& unit = tokens[1];
  if (unit == "rad/s") return number;
  if (unit == "Hz_2pi") return number * kTwoPi;
  if (unit == "kHz_2pi") return number * kTwoPi * 1e3;
  if (unit == "MHz_2pi") return number * kTwoPi * 1e6;
  if (unit == "GHz_2pi") return number * kTwoPi * 1e9;
  throw ScenarioError("unknown frequency unit '" + unit + "'", line_no, key);
}

double parse_time(const std::string& value, std::optional<double> omega_eff, int line_no,
                  const std::string& key) {
  const auto tokens = split_tokens(value);
  if (tokens.size() != 2)
    throw ScenarioError("time needs '<number> <unit>' with unit one of "
                        "s, ms, us, ns, /omega_eff",
                        line_no, key);
  const double number = parse_number(tokens[0], line_no, key);
  const std::string& unit = tokens[1];
  if (unit == "s") return number;
  if (unit == "ms") return number * 1e-3;
  if (unit == "us") return number * 1e-6;
  if (unit == "ns") return number * 1e-9;
  if (unit == "/omega_eff") {
    if (!omega_eff || !(*omega_eff > 0.0))
      throw ScenarioError("'/omega_eff' time unit needs a resolved effective amplitude",
                          line_no, key);
    return number / *omega_eff;
  }
  throw ScenarioError("unknown time unit '" + unit + "'", line_no, key);
}

bool parse_bool(const std::string& value, int line_no, const std::string& key) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ScenarioError("expected 'true' or 'false', got '" + value + "'", line_no, key);
}

std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::effective: return "effective";
    case ModelKind::full_rotating_wave: return "full-rw";
    case ModelKind::full_cosine: return "full-cosine";
  }
  throw std::logic_error("model_name: unknown model");
}

ModelKind model_from_name(const std::string& name) {
  if (name == "effective") return ModelKind::effective;
  if (name == "full-rw") return ModelKind::full_rotating_wave;
  if (name == "full-cosine") return ModelKind::full_cosine;
  throw std::invalid_argument("unknown model '" + name + "'");
}

Scenario parse_scenario_text(const std::string& text, const std::string& name) {
  RawMap raw;
  {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ScenarioError("expected 'key = value'", line_no);
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw ScenarioError("empty key", line_no);
      if (value.empty()) throw ScenarioError("empty value", line_no, key);
      if (raw.count(key))
        throw ScenarioError("duplicate key (first on line " +
                                std::to_string(raw[key].line) + ")",
                            line_no, key);
      raw[key] = {value, line_no};
    }
  }

  Scenario sc;
  sc.name = name;
  GateProtocol proto;

  // Register size from the gate name; ck-not needs an explicit n.
  const RawEntry gate = require(raw, "gate");
  int n = 0;
  const auto n_entry = take(raw, "n");
  if (gate.value == "cnot") n = 2;
  else if (gate.value == "toffoli") n = 3;
  else if (gate.value == "ck-not") {
    if (!n_entry) throw ScenarioError("gate 'ck-not' needs an explicit n", gate.line, "gate");
  } else {
    throw ScenarioError("unknown gate '" + gate.value + "'", gate.line, "gate");
  }
  if (n_entry) {
    const long parsed = parse_integer(n_entry->value, n_entry->line, "n");
    if (parsed < 2) throw ScenarioError("n must be at least 2", n_entry->line, "n");
    if (n != 0 && parsed != n)
      throw ScenarioError("n contradicts gate '" + gate.value + "'", n_entry->line, "n");
    n = static_cast<int>(parsed);
  }
  proto.n = n;
  proto.params.n = n;

  if (const auto e = take(raw, "model")) {
    try {
      proto.model = model_from_name(e->value);
    } catch (const std::invalid_argument& ex) {
      throw ScenarioError(ex.what(), e->line, "model");
    }
  }
  if (const auto e = take(raw, "dissipation"))
    proto.dissipation = parse_bool(e->value, e->line, "dissipation");
  if (const auto e = take(raw, "dressed"))
    proto.dressed = parse_bool(e->value, e->line, "dressed");

  const RawEntry omega_c = require(raw, "omega_c");
  proto.params.omega_c = parse_frequency(omega_c.value, omega_c.line, "omega_c");
  const RawEntry omega_p = require(raw, "omega_p");
  proto.params.omega_p = parse_frequency(omega_p.value, omega_p.line, "omega_p");
  const RawEntry omega_s = require(raw, "omega_s");
  proto.params.omega_s = parse_frequency(omega_s.value, omega_s.line, "omega_s");
  if (const auto e = take(raw, "gamma"))
    proto.params.gamma = parse_frequency(e->value, e->line, "gamma");

  // Interactions: v_total (number | balance) or the full per-pair set.
  const int n_pairs = n * (n - 1) / 2;
  std::vector<std::string> pair_keys;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      pair_keys.push_back("v_" + std::to_string(i) + std::to_string(j));

  const auto v_total_entry = take(raw, "v_total");
  bool have_pairs = false;
  for (const auto& k : pair_keys) have_pairs = have_pairs || raw.count(k) > 0;
  if (v_total_entry && have_pairs)
    throw ScenarioError("v_total and per-pair couplings are mutually exclusive",
                        v_total_entry->line, "v_total");
  if (!v_total_entry && !have_pairs)
    throw ScenarioError("missing interactions: provide v_total or all v_ij keys", 0, "v_total");

  const RawEntry delta_entry = require(raw, "delta");
  const bool solve_delta = delta_entry.value == "rab-solve";
  const bool balance_v = v_total_entry && v_total_entry->value == "balance";
  if (solve_delta && balance_v)
    throw ScenarioError("'delta = rab-solve' and 'v_total = balance' cannot be combined",
                        delta_entry.line, "delta");

  if (have_pairs) {
    proto.params.v_pairs.resize(n_pairs);
    for (int k = 0; k < n_pairs; ++k) {
      const auto e = take(raw, pair_keys[k]);
      if (!e)
        throw ScenarioError("per-pair couplings need every pair", 0, pair_keys[k]);
      proto.params.v_pairs[k] = parse_frequency(e->value, e->line, pair_keys[k]);
    }
  } else if (v_total_entry && !balance_v) {
    const double total =
        parse_frequency(v_total_entry->value, v_total_entry->line, "v_total");
    proto.params.v_pairs.assign(n_pairs, total / n_pairs);
  }

  if (solve_delta) {
    if (balance_v || proto.params.v_pairs.empty())
      throw ScenarioError("'delta = rab-solve' needs numeric interactions", delta_entry.line,
                          "delta");
    // Self-consistent root of the resonance quadratic with alpha = omega_c /
    // delta substituted: 3n d^2 - 3V d - ((n-1)oc^2 + op os) = 0. The drive
    // pair contributes its common amplitude squared (sin/cos pulse invariant).
    const double v = proto.params.v_total();
    const double w = (n - 1) * proto.params.omega_c * proto.params.omega_c +
                     proto.params.omega_p * proto.params.omega_s;
    const double disc = 9.0 * v * v + 12.0 * n * w;
    const double root = (3.0 * v + std::sqrt(disc)) / (6.0 * n);
    if (!(root > 0.0))
      throw ScenarioError("resonance solve produced no positive detuning", delta_entry.line,
                          "delta");
    proto.params.delta = root;
    sc.delta_solved = true;
  } else {
    proto.params.delta = parse_frequency(delta_entry.value, delta_entry.line, "delta");
  }

  if (balance_v) {
    try {
      balance_interaction(proto.params);
    } catch (const std::exception& ex) {
      throw ScenarioError(ex.what(), v_total_entry->line, "v_total");
    }
    sc.v_balanced = true;
  }

  double omega_eff = 0.0;
  try {
    omega_eff = effective_coupling_scale(n, proto.params.omega_c, proto.params.delta) *
                proto.params.omega_p;
  } catch (const std::exception& ex) {
    throw ScenarioError(ex.what(), 0, "omega_eff");
  }
  if (const auto e = take(raw, "omega_eff")) {
    const double stated = parse_frequency(e->value, e->line, "omega_eff");
    if (std::abs(stated - omega_eff) > 1e-9 * std::max(std::abs(omega_eff), 1.0))
      throw ScenarioError("stated omega_eff disagrees with the derived value", e->line,
                          "omega_eff");
  }
  sc.omega_eff = omega_eff;

  const RawEntry tau = require(raw, "tau");
  proto.tau = parse_time(tau.value, omega_eff, tau.line, "tau");
  if (const auto e = take(raw, "eps_edge"))
    proto.eps_edge = parse_number(e->value, e->line, "eps_edge");

  if (const auto e = take(raw, "rel_tol"))
    proto.integrator.rel_tol = parse_number(e->value, e->line, "rel_tol");
  if (const auto e = take(raw, "abs_tol"))
    proto.integrator.abs_tol = parse_number(e->value, e->line, "abs_tol");
  if (const auto e = take(raw, "max_step"))
    proto.integrator.max_step = parse_time(e->value, omega_eff, e->line, "max_step");
  if (const auto e = take(raw, "samples"))
    proto.integrator.samples = static_cast<int>(parse_integer(e->value, e->line, "samples"));
  if (const auto e = take(raw, "theta_grid"))
    proto.theta_grid = static_cast<int>(parse_integer(e->value, e->line, "theta_grid"));
  if (const auto e = take(raw, "fav_propagation")) {
    if (e->value == "linear") proto.fav_propagation = FavPropagation::linear;
    else if (e->value == "per-theta") proto.fav_propagation = FavPropagation::per_theta;
    else
      throw ScenarioError("expected 'linear' or 'per-theta'", e->line, "fav_propagation");
  }
  if (const auto e = take(raw, "threads"))
    proto.threads = static_cast<int>(parse_integer(e->value, e->line, "threads"));
  if (const auto e = take(raw, "out_dir")) sc.out_dir = e->value;

  if (!raw.empty()) {
    const auto& first = *raw.begin();
    throw ScenarioError("unknown key", first.second.line, first.first);
  }

  try {
    proto.validate();
  } catch (const std::exception& ex) {
    throw ScenarioError(ex.what(), 0, "");
  }

  sc.proto = std::move(proto);
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), std::filesystem::path(path).stem().string());
}

}  // namespace rydsta
