#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rydsta/hamiltonian.hpp"
#include "rydsta/scenario.hpp"

#ifdef RYDSTA_CLI_PATH
#include <sys/wait.h>
#include <unistd.h>
#endif

using namespace rydsta;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// Reference source text matching the standard two-atom working point:
// all drives at 2pi x 30 MHz, detuning 15x the drive, balanced interaction.
std::string fig2_text() {
  return "gate = cnot\n"
         "model = effective\n"
         "dissipation = true\n"
         "dressed = true\n"
         "omega_c = 30 MHz_2pi\n"
         "omega_p = 30 MHz_2pi\n"
         "omega_s = 30 MHz_2pi\n"
         "delta = 450 MHz_2pi\n"
         "v_total = balance\n"
         "gamma = 1 kHz_2pi\n"
         "tau = 0.2 /omega_eff\n"
         "samples = 61\n"
         "theta_grid = 21\n"
         "fav_propagation = per-theta\n"
         "threads = 2\n"
         "out_dir = custom_out\n";
}

std::string drop_line(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + " ", 0) != 0) out << line << '\n';
  return out.str();
}

int error_line(const std::string& text, const std::string& name) {
  try {
    parse_scenario_text(text, name);
  } catch (const ScenarioError& ex) {
    return ex.line;
  }
  return -1;
}

std::string error_key(const std::string& text) {
  try {
    parse_scenario_text(text);
  } catch (const ScenarioError& ex) {
    return ex.key;
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("frequency values resolve to angular units") {
  CHECK(parse_frequency("2.5 rad/s") == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(parse_frequency("10 Hz_2pi") == doctest::Approx(kTwoPi * 10.0).epsilon(1e-15));
  CHECK(parse_frequency("1 kHz_2pi") == doctest::Approx(kTwoPi * 1e3).epsilon(1e-15));
  CHECK(parse_frequency("30 MHz_2pi") == doctest::Approx(kTwoPi * 30e6).epsilon(1e-15));
  CHECK(parse_frequency("2 GHz_2pi") == doctest::Approx(kTwoPi * 2e9).epsilon(1e-15));
  CHECK(parse_frequency("-3 MHz_2pi") == doctest::Approx(-kTwoPi * 3e6).epsilon(1e-15));
}

TEST_CASE("frequency errors carry the line and key") {
  CHECK_THROWS_AS(parse_frequency("30"), ScenarioError);
  CHECK_THROWS_AS(parse_frequency("30 MHz"), ScenarioError);
  CHECK_THROWS_AS(parse_frequency("thirty MHz_2pi"), ScenarioError);
  CHECK_THROWS_AS(parse_frequency("inf MHz_2pi"), ScenarioError);
  CHECK_THROWS_AS(parse_frequency("1 2 MHz_2pi"), ScenarioError);
  try {
    parse_frequency("30 furlongs", 17, "omega_c");
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& ex) {
    CHECK(ex.line == 17);
    CHECK(ex.key == "omega_c");
  }
}

TEST_CASE("time values resolve to seconds") {
  CHECK(parse_time("2 s", std::nullopt) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(parse_time("3 ms", std::nullopt) == doctest::Approx(3e-3).epsilon(1e-15));
  CHECK(parse_time("4 us", std::nullopt) == doctest::Approx(4e-6).epsilon(1e-15));
  CHECK(parse_time("5 ns", std::nullopt) == doctest::Approx(5e-9).epsilon(1e-15));
  const double w = kTwoPi * 1e6;
  CHECK(parse_time("0.2 /omega_eff", w) == doctest::Approx(0.2 / w).epsilon(1e-15));
}

TEST_CASE("effective-unit times need a resolved amplitude") {
  CHECK_THROWS_AS(parse_time("0.2 /omega_eff", std::nullopt), ScenarioError);
  CHECK_THROWS_AS(parse_time("0.2 /omega_eff", 0.0), ScenarioError);
  CHECK_THROWS_AS(parse_time("0.2 /omega_eff", -1.0), ScenarioError);
  CHECK_THROWS_AS(parse_time("1 fortnight", std::nullopt), ScenarioError);
  CHECK_THROWS_AS(parse_time("1", std::nullopt), ScenarioError);
  try {
    parse_time("0.2 /omega_eff", std::nullopt, 9, "tau");
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& ex) {
    CHECK(ex.line == 9);
    CHECK(ex.key == "tau");
  }
}

TEST_CASE("boolean values accept only the two spellings") {
  CHECK(parse_bool("true"));
  CHECK_FALSE(parse_bool("false"));
  CHECK_THROWS_AS(parse_bool("1"), ScenarioError);
  CHECK_THROWS_AS(parse_bool("True"), ScenarioError);
  CHECK_THROWS_AS(parse_bool("yes"), ScenarioError);
}

TEST_CASE("model names round-trip") {
  for (ModelKind kind :
       {ModelKind::effective, ModelKind::full_rotating_wave, ModelKind::full_cosine})
    CHECK(model_from_name(model_name(kind)) == kind);
  CHECK(model_name(ModelKind::full_rotating_wave) == "full-rw");
  CHECK_THROWS_AS(model_from_name("fullrw"), std::invalid_argument);
}

TEST_CASE("scenario happy path resolves every field") {
  const Scenario sc = parse_scenario_text(fig2_text(), "fig2");

  CHECK(sc.name == "fig2");
  CHECK(sc.out_dir == "custom_out");
  CHECK(sc.proto.n == 2);
  CHECK(sc.proto.model == ModelKind::effective);
  CHECK(sc.proto.dissipation);
  CHECK(sc.proto.dressed);
  CHECK(sc.proto.params.omega_c == doctest::Approx(kTwoPi * 30e6).epsilon(1e-15));
  CHECK(sc.proto.params.omega_p == doctest::Approx(kTwoPi * 30e6).epsilon(1e-15));
  CHECK(sc.proto.params.delta == doctest::Approx(kTwoPi * 450e6).epsilon(1e-15));
  CHECK(sc.proto.params.gamma == doctest::Approx(kTwoPi * 1e3).epsilon(1e-15));
  CHECK(sc.proto.params.v_pairs.size() == 1);
  CHECK(sc.v_balanced);
  CHECK_FALSE(sc.delta_solved);

  // 30 MHz drives at 15x detuning give exactly a 1 MHz effective amplitude.
  CHECK(sc.omega_eff == doctest::Approx(kTwoPi * 1e6).epsilon(1e-12));
  CHECK(sc.proto.tau == doctest::Approx(0.2 / (kTwoPi * 1e6)).epsilon(1e-12));
  CHECK(sc.proto.integrator.samples == 61);
  CHECK(sc.proto.theta_grid == 21);
  CHECK(sc.proto.fav_propagation == FavPropagation::per_theta);
  CHECK(sc.proto.threads == 2);

  // Optional keys fall back to their defaults when dropped.
  const Scenario defaults = parse_scenario_text(
      drop_line(drop_line(drop_line(fig2_text(), "fav_propagation"), "threads"), "out_dir"));
  CHECK(defaults.name == "<memory>");
  CHECK(defaults.out_dir == "out");
  CHECK(defaults.proto.fav_propagation == FavPropagation::linear);
  CHECK(defaults.proto.threads == 1);
}

TEST_CASE("scenario structural errors name the offending line") {
  CHECK(error_line(fig2_text() + "bogus_key = 3\n", "x") == 17);
  CHECK(error_key(fig2_text() + "bogus_key = 3\n") == "bogus_key");

  // Duplicates report the second occurrence.
  CHECK(error_line(fig2_text() + "gamma = 2 kHz_2pi\n", "x") == 17);
  CHECK(error_key(fig2_text() + "gamma = 2 kHz_2pi\n") == "gamma");

  CHECK(error_key(drop_line(fig2_text(), "omega_c")) == "omega_c");
  CHECK(error_key(drop_line(fig2_text(), "delta")) == "delta");
  CHECK(error_key(drop_line(fig2_text(), "tau")) == "tau");
  CHECK(error_key(drop_line(fig2_text(), "v_total")) == "v_total");

  CHECK_THROWS_AS(parse_scenario_text("gate cnot\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario_text("= 3\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario_text("gate =\n"), ScenarioError);

  // Comments and blank lines are ignored wherever they appear.
  const Scenario sc =
      parse_scenario_text("# leading comment\n\n" + fig2_text() + "\n# trailing\n");
  CHECK(sc.proto.n == 2);
}

TEST_CASE("gate names fix the register size") {
  CHECK(parse_scenario_text(fig2_text()).proto.n == 2);

  std::string toffoli = fig2_text();
  toffoli.replace(toffoli.find("gate = cnot"), 11, "gate = toffoli");
  const Scenario t = parse_scenario_text(toffoli);
  CHECK(t.proto.n == 3);
  CHECK(t.proto.params.v_pairs.size() == 3);

  std::string ck = fig2_text();
  ck.replace(ck.find("gate = cnot"), 11, "gate = ck-not");
  CHECK(error_key(ck) == "gate");
  const Scenario c4 = parse_scenario_text(ck + "n = 4\n");
  CHECK(c4.proto.n == 4);
  CHECK(c4.proto.params.v_pairs.size() == 6);

  CHECK(error_key(fig2_text() + "n = 3\n") == "n");

  std::string unknown = fig2_text();
  unknown.replace(unknown.find("gate = cnot"), 11, "gate = cphase");
  CHECK(error_key(unknown) == "gate");
}

TEST_CASE("detuning solve and interaction balance") {
  // Numeric interactions with a solved detuning: the resolved parameters sit
  // exactly on the two-photon resonance.
  std::string solve = fig2_text();
  solve.replace(solve.find("delta = 450 MHz_2pi"), 19, "delta = rab-solve");
  solve.replace(solve.find("v_total = balance"), 17, "v_total = 900 MHz_2pi");
  const Scenario sc = parse_scenario_text(solve);
  CHECK(sc.delta_solved);
  CHECK_FALSE(sc.v_balanced);
  const EffectiveParams eff = sc.proto.effective();
  CHECK(std::abs(eff.delta_eff) < 1e-9 * sc.proto.params.delta);
  CHECK(sc.proto.params.delta > kTwoPi * 450e6);

  // Balance keeps the stated detuning and adjusts the interaction total.
  const Scenario bal = parse_scenario_text(fig2_text());
  CHECK(bal.v_balanced);
  CHECK(std::abs(bal.proto.effective().delta_eff) < 1e-9 * bal.proto.params.delta);
  const double v_total = bal.proto.params.v_total();
  CHECK(v_total == doctest::Approx(kTwoPi * (900.0 - 1800.0 / 1350.0) * 1e6).epsilon(1e-12));

  // Asking for both unknowns at once is contradictory.
  std::string both = fig2_text();
  both.replace(both.find("delta = 450 MHz_2pi"), 19, "delta = rab-solve");
  CHECK(error_key(both) == "delta");

  // The solve needs interactions stated somewhere.
  CHECK(error_key(drop_line(solve, "v_total")) == "v_total");
}

TEST_CASE("per-pair couplings replace the total") {
  std::string pairs = drop_line(fig2_text(), "v_total") + "v_01 = 898.666666666667 MHz_2pi\n";
  const Scenario sc = parse_scenario_text(pairs);
  CHECK(sc.proto.params.v_pairs.size() == 1);
  CHECK_FALSE(sc.v_balanced);
  CHECK(sc.proto.params.v_total() ==
        doctest::Approx(kTwoPi * 898.666666666667e6).epsilon(1e-12));

  // Mixing both spellings or leaving a pair out is rejected.
  CHECK(error_key(fig2_text() + "v_01 = 1 GHz_2pi\n") == "v_total");
  std::string toffoli = drop_line(fig2_text(), "v_total");
  toffoli.replace(toffoli.find("gate = cnot"), 11, "gate = toffoli");
  CHECK(error_key(toffoli + "v_01 = 1 GHz_2pi\nv_02 = 1 GHz_2pi\n") == "v_12");
}

TEST_CASE("stated derived values must agree") {
  CHECK(parse_scenario_text(fig2_text() + "omega_eff = 1 MHz_2pi\n").omega_eff ==
        doctest::Approx(kTwoPi * 1e6).epsilon(1e-12));
  CHECK(error_key(fig2_text() + "omega_eff = 1.5 MHz_2pi\n") == "omega_eff");

  // Validation failures surface as scenario errors too.
  std::string bad_grid = drop_line(fig2_text(), "theta_grid") + "theta_grid = 20\n";
  CHECK_THROWS_AS(parse_scenario_text(bad_grid), ScenarioError);

  // Effective-unit times require a nonzero resolved amplitude.
  std::string zero_drive = fig2_text();
  zero_drive.replace(zero_drive.find("omega_p = 30 MHz_2pi"), 20, "omega_p = 0 MHz_2pi");
  zero_drive.replace(zero_drive.find("omega_s = 30 MHz_2pi"), 20, "omega_s = 0 MHz_2pi");
  CHECK(error_key(zero_drive) == "tau");
}

#ifdef RYDSTA_CLI_PATH

namespace {

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("rydsta_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("stdout_" + std::to_string(counter));
  const fs::path err = scratch_dir() / ("stderr_" + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string(RYDSTA_CLI_PATH) + " " + args + " >" + out.string() +
                          " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  REQUIRE(raw != -1);
  CliResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }
};

Csv read_csv(const fs::path& path) {
  Csv csv;
  std::ifstream in(path);
  REQUIRE(bool(in));
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      csv.comments.push_back(line);
      continue;
    }
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (start <= line.size()) {
      const auto comma = line.find(',', start);
      cells.push_back(comma == std::string::npos ? line.substr(start)
                                                 : line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!have_header) {
      csv.header = std::move(cells);
      have_header = true;
    } else {
      csv.rows.push_back(std::move(cells));
    }
  }
  return csv;
}

// Fast-running fixture: effective model, short pulse, coarse sampling.
std::string fast_scenario(const std::string& out_dir, const std::string& extra = "") {
  return "gate = cnot\n"
         "model = effective\n"
         "dissipation = false\n"
         "dressed = true\n"
         "omega_c = 30 MHz_2pi\n"
         "omega_p = 30 MHz_2pi\n"
         "omega_s = 30 MHz_2pi\n"
         "delta = 450 MHz_2pi\n"
         "v_total = balance\n"
         "tau = 0.2 /omega_eff\n"
         "samples = 41\n"
         "theta_grid = 21\n"
         "out_dir = " +
         out_dir + "\n" + extra;
}

}  // namespace

TEST_CASE("cli reports the trivial resonance detuning") {
  const fs::path scn = scratch_dir() / "rab_trivial.scn";
  write_text(scn,
             "gate = cnot\n"
             "omega_c = 0 MHz_2pi\n"
             "omega_p = 0 MHz_2pi\n"
             "omega_s = 0 MHz_2pi\n"
             "delta = rab-solve\n"
             "v_total = 2 GHz_2pi\n"
             "tau = 1 us\n");
  const CliResult r = run_cli("rab-solve -s " + scn.string());
  REQUIRE(r.exit_code == 0);

  // Without drives the resonance sits at exactly half the total interaction.
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["delta_solved"].get<bool>());
  CHECK(j["delta_rad_s"].get<double>() == doctest::Approx(kTwoPi * 1e9).epsilon(1e-12));
  CHECK(j["delta_mhz_2pi"].get<double>() == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(j["relative_residual"].get<double>() < 1e-12);
  CHECK(j["n"].get<int>() == 2);
}

TEST_CASE("cli writes the reshaped schedule with the scenario echo") {
  const fs::path out_dir = scratch_dir() / "design_out";
  const fs::path scn = scratch_dir() / "design.scn";
  write_text(scn, fast_scenario(out_dir.string()));
  const CliResult r = run_cli("design-pulse -s " + scn.string() + " --samples 201");
  REQUIRE(r.exit_code == 0);

  const Csv csv = read_csv(out_dir / "schedule.csv");
  CHECK(csv.header ==
        std::vector<std::string>{"t", "omega_p", "omega_s", "theta", "mu", "g_x", "g_z"});
  CHECK(csv.rows.size() == 201);

  bool has_model = false;
  for (const std::string& c : csv.comments)
    has_model = has_model || c == "# model = \"effective\"";
  CHECK(has_model);

  // Dressing inflates the drive pair beyond the bare effective amplitude.
  const double omega_eff = kTwoPi * 1e6;
  double peak = 0.0;
  for (const auto& row : csv.rows)
    peak = std::max(peak, std::hypot(std::stod(row[1]), std::stod(row[2])));
  CHECK(peak > 2.0 * omega_eff);
  CHECK(peak < 3.0 * omega_eff);

  const auto design = nlohmann::json::parse(slurp(out_dir / "design.json"));
  CHECK(design["omega_peak_rad_s"].get<double>() == doctest::Approx(peak).epsilon(1e-12));
  CHECK(design["dressed"].get<bool>());
}

TEST_CASE("cli simulate transfers the active branch and is deterministic") {
  const fs::path out_dir = scratch_dir() / "sim_out";
  const fs::path scn = scratch_dir() / "sim.scn";
  write_text(scn, fast_scenario(out_dir.string()));

  REQUIRE(run_cli("simulate -s " + scn.string()).exit_code == 0);
  const auto run1 = nlohmann::json::parse(slurp(out_dir / "run.json"));
  CHECK(run1["final_populations"]["10"].get<double>() > 0.999);
  CHECK(run1["input"].get<std::string>() == "11");
  CHECK(run1["steps"].size() == 3);
  for (const auto& step : run1["steps"]) CHECK(step["max_drift"].get<double>() < 1e-6);

  const std::vector<std::string> files = {"populations.csv",    "sphere.csv",
                                          "schedule.csv",       "transfer_step1.csv",
                                          "transfer_step2.csv", "transfer_step3.csv"};
  std::vector<std::string> first;
  for (const auto& f : files) first.push_back(slurp(out_dir / f));
  REQUIRE(run_cli("simulate -s " + scn.string()).exit_code == 0);
  for (std::size_t i = 0; i < files.size(); ++i) CHECK(slurp(out_dir / files[i]) == first[i]);

  // The sphere projection covers all three steps in global time order.
  const Csv sphere = read_csv(out_dir / "sphere.csv");
  CHECK(sphere.header == std::vector<std::string>{"t", "a", "b", "c", "step"});
  double prev = -1e9;
  for (const auto& row : sphere.rows) {
    const double t = std::stod(row[0]);
    CHECK(t >= prev - 1e-15);
    prev = t;
  }
  CHECK(std::stod(sphere.rows.back()[4]) == 3.0);
}

TEST_CASE("cli model override changes only the integration model") {
  // At ten effective periods every model transfers nearly completely, so the
  // override is visible only through small residuals agreeing across models.
  const fs::path out_eff = scratch_dir() / "adiab_eff";
  const fs::path out_rw = scratch_dir() / "adiab_rw";
  const fs::path scn = scratch_dir() / "adiab.scn";
  write_text(scn, fast_scenario(out_eff.string(),
                                "rel_tol = 1e-9\nabs_tol = 1e-11\n"));
  std::string text = slurp(scn);
  text.replace(text.find("tau = 0.2 /omega_eff"), 20, "tau = 3 /omega_eff");
  text.replace(text.find("dressed = true"), 14, "dressed = false");
  write_text(scn, text);

  REQUIRE(run_cli("simulate -s " + scn.string()).exit_code == 0);
  REQUIRE(run_cli("simulate -s " + scn.string() + " -m full-rw -o " + out_rw.string())
              .exit_code == 0);

  const auto eff = nlohmann::json::parse(slurp(out_eff / "run.json"));
  const auto rw = nlohmann::json::parse(slurp(out_rw / "run.json"));
  const double p_eff = eff["final_populations"]["10"].get<double>();
  const double p_rw = rw["final_populations"]["10"].get<double>();
  CHECK(eff["scenario"]["model"].get<std::string>() == "effective");
  CHECK(rw["scenario"]["model"].get<std::string>() == "full-rw");
  CHECK(p_eff > 0.98);
  CHECK(p_rw > 0.98);
  CHECK(std::abs(p_eff - p_rw) < 0.05);
}

TEST_CASE("cli truth table reports fidelity and average gate fidelity") {
  const fs::path out_dir = scratch_dir() / "tt_out";
  const fs::path scn = scratch_dir() / "tt.scn";
  write_text(scn, fast_scenario(out_dir.string()));
  const CliResult r = run_cli("truth-table -s " + scn.string());
  REQUIRE(r.exit_code == 0);

  const auto report = nlohmann::json::parse(slurp(out_dir / "report.json"));
  CHECK(report["truth_table"]["inputs"].size() == 4);
  for (const auto& f : report["truth_table"]["fidelity"]) CHECK(f.get<double>() > 0.999);
  const double f_av = report["f_av"]["f_av"].get<double>();
  CHECK(f_av > 0.999);
  CHECK(f_av <= 1.0 + 1e-9);

  const Csv csv = read_csv(out_dir / "truth_table.csv");
  REQUIRE(csv.rows.size() == 4);
  const int fid = csv.column("fidelity");
  REQUIRE(fid >= 0);
  for (const auto& row : csv.rows) CHECK(std::stod(row[fid]) > 0.999);

  // Noiseless rows carry the dominant population on the ideal output.
  const int p11 = csv.column("p_11");
  const int p10 = csv.column("p_10");
  REQUIRE(p11 >= 0);
  CHECK(std::stod(csv.rows[3][p10]) > 0.999);
  CHECK(std::stod(csv.rows[2][p11]) > 0.999);
}

TEST_CASE("cli sweep records decay in place and failures inline") {
  const fs::path out_dir = scratch_dir() / "sweep_out";
  const fs::path scn = scratch_dir() / "sweep.scn";
  std::string text = fast_scenario(out_dir.string(), "gamma = 0 kHz_2pi\n");
  text.replace(text.find("dissipation = false"), 19, "dissipation = true");
  write_text(scn, text);
  const CliResult ok =
      run_cli("sweep -s " + scn.string() + " --axis \"gamma=0 kHz_2pi;1 kHz_2pi\"");
  REQUIRE(ok.exit_code == 0);

  const Csv sweep = read_csv(out_dir / "sweep.csv");
  REQUIRE(sweep.rows.size() == 2);
  const int fav_col = sweep.column("f_av");
  REQUIRE(fav_col >= 0);
  const double f0 = std::stod(sweep.rows[0][fav_col]);
  const double f1 = std::stod(sweep.rows[1][fav_col]);
  CHECK(f0 > f1);
  CHECK(f0 > 0.999);
  CHECK(f1 > 0.99);
  for (const auto& row : sweep.rows) CHECK(row.back() == "\"ok\"");

  // A contradictory grid point fails that point, not the whole sweep file.
  const CliResult bad =
      run_cli("sweep -s " + scn.string() + " --axis \"delta=rab-solve;450 MHz_2pi\"");
  CHECK(bad.exit_code == 1);
  const Csv mixed = read_csv(out_dir / "sweep.csv");
  REQUIRE(mixed.rows.size() == 2);
  CHECK(mixed.rows[0].back().find("error") != std::string::npos);
  CHECK(mixed.rows[1].back() == "\"ok\"");
}

TEST_CASE("cli exit codes distinguish config from runtime failures") {
  CHECK(run_cli("simulate -s /nonexistent/path.scn").exit_code == 2);

  const fs::path bad = scratch_dir() / "bad.scn";
  write_text(bad, fast_scenario("x") + "bogus = 1\n");
  const CliResult r = run_cli("simulate -s " + bad.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("bogus") != std::string::npos);

  const fs::path good = scratch_dir() / "good.scn";
  write_text(good, fast_scenario("x"));
  CHECK(run_cli("simulate -s " + good.string() + " -m nonsense").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("simulate").exit_code == 2);

  // Unwritable output locations are runtime failures, not config mistakes.
  CHECK(run_cli("truth-table -s " + good.string() + " -o /proc/nope/x").exit_code == 1);
}

#endif  // RYDSTA_CLI_PATH
