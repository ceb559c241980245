#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rydsta/hamiltonian.hpp"
#include "rydsta/propagate.hpp"
#include "rydsta/pulse.hpp"

namespace rydsta {

enum class ModelKind { effective, full_rotating_wave, full_cosine };

enum class FavPropagation {
  linear,     // propagate four generator states, assemble rho(theta) by linearity
  per_theta,  // one propagation per theta sample
};

// Complete description of one gate run: which register, which model, which
// pulse design, and how to integrate it.
struct GateProtocol {
  int n = 2;  // 2: C-NOT, 3: Toffoli, higher: C_k-NOT
  ModelKind model = ModelKind::full_rotating_wave;
  bool dissipation = true;
  bool dressed = true;
  DriveParams params;          // physical amplitudes, detuning, couplings, gamma
  double tau = 0.0;            // logistic time constant [s]
  double eps_edge = 1e-4;
  IntegratorConfig integrator;
  int theta_grid = 101;        // F_av quadrature points
  FavPropagation fav_propagation = FavPropagation::linear;
  int threads = 1;

  HilbertSpace space() const { return HilbertSpace::rydberg_register(n); }
  EffectiveParams effective() const { return effective_params(params); }
  double omega_eff() const;                   // effective base amplitude
  VitanovPulseSpec pulse_spec() const;        // effective-unit logistic spec
  DressedSchedule schedule() const;           // dressed or base, per `dressed`
  std::vector<StepSpec> steps() const;        // the three protocol steps

  void validate() const;
};

// Amplitude-magnitude coordinates of a state on the active lambda triple.
struct SpherePoint {
  double t;
  double a;  // |<In|psi>|
  double b;  // |<R|psi>|
  double c;  // |<Out|psi>|
};

struct StepRun {
  StepSpec step;
  Trajectory trajectory;
  double t_offset;  // global time of the step's local t_i
};

struct GateRun {
  QuantumState final_state;
  std::vector<StepRun> steps;
};

// Propagates one input through all three steps; the full state (all levels)
// is carried between steps with zero idle time.
GateRun run_gate(const GateProtocol& proto, const QuantumState& input);

// Truth table over the 2^n computational inputs plus per-step tables.
struct TruthTable {
  std::vector<std::string> inputs;             // computational labels, lex order
  std::vector<std::string> ideal_outputs;
  Eigen::MatrixXd composed;                    // [input][output] populations
  std::vector<Eigen::MatrixXd> per_step;       // populations after each step
  std::vector<double> fidelity;                // vs ideal output state
  std::vector<double> leakage;                 // 1 - row sum
  std::vector<double> phase;                   // arg<ideal|psi>, dissipation-free runs
};

TruthTable truth_table(const GateProtocol& proto);

// Ideal gate action: flip the target iff all controls are 1.
int ideal_output_index(const HilbertSpace& space, int input_index);

struct FavResult {
  double f_av = 0.0;
  int theta_grid = 0;
  std::vector<double> theta;
  std::vector<double> fidelity;                 // integrand samples
  std::complex<double> branch_coherence{0, 0};  // <Ua|E(|a><b|)|Ub> at t_f
  double relative_phase = 0.0;                  // arg of branch_coherence
};

// F_av = (1/2pi) Int_{-pi}^{pi} <psi(th)|U^† rho_f(th) U|psi(th)> dth with
// |psi(th)> = cos(th/2)|1..1,0> + sin(th/2)|1..1,1>, trapezoid rule on a
// uniform theta grid (the integrand is 2pi-periodic).
FavResult average_fidelity(const GateProtocol& proto);

// Projection of a step trajectory onto its lambda triple.
std::vector<SpherePoint> sphere_path(const StepRun& run, const HilbertSpace& space);

// Undressed (base-pulse) reference run of a single transfer step.
GateRun adiabatic_reference_run(GateProtocol proto, const QuantumState& input);

// JSON-ready run summary assembled by the front end.
struct GateReport {
  GateProtocol proto;
  TruthTable table;
  std::optional<FavResult> fav;
};

}  // namespace rydsta
