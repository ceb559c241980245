#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "rydsta/hilbert.hpp"
#include "rydsta/operators.hpp"
#include "rydsta/pulse.hpp"
#include "rydsta/spin1.hpp"

namespace rydsta {

// ---------------------------------------------------------------------------
// model parameters
// ---------------------------------------------------------------------------

// Physical drive parameters, all angular frequencies in rad/s.
struct DriveParams {
  int n = 2;                   // register size (n-1 controls + 1 target)
  double omega_c = 0.0;        // control-leg Rabi amplitude
  double omega_p = 0.0;        // target pump amplitude (base, before envelope)
  double omega_s = 0.0;        // target Stokes amplitude
  double delta = 0.0;          // single-photon detuning
  std::vector<double> v_pairs; // pair couplings, pairs (i<j) in lex order
  double gamma = 0.0;          // Rydberg decay rate per atom

  double v_total() const;
  double alpha() const;        // omega_c / delta
  void validate() const;
  // Non-fatal contract warnings (e.g. detuning below 5x the drive amplitudes).
  std::vector<std::string> diagnostics() const;

  // v_total needed for a vanishing effective two-photon detuning at the
  // base amplitudes; split equally over the pairs by balance_interaction().
  double balanced_v_total() const;
};

// Sets v_pairs to an equal split of balanced_v_total().
void balance_interaction(DriveParams& params);

// One leg of the three-step transfer protocol. Steps move the target through
// 1 -> m, then 0 -> 1, then m -> 0; the control legs stay on throughout.
struct StepSpec {
  int index = 1;              // 1-based step number
  std::string in_label;       // target level coupled by the pump leg
  std::string out_label;      // target level coupled by the Stokes leg

  static StepSpec of(int index);
};

// Second-order effective lambda system for the all-controls-at-1 sector.
// The pump/Stokes shift term uses the drive-pair invariant: the sin/cos pulse
// pair holds omega_p(t)^2 + omega_s(t)^2 at its common amplitude squared,
// which is omega_p*omega_s in terms of the stored per-leg peaks.
struct EffectiveParams {
  double omega_p_eff = 0.0;  // n! Omega_c^(n-1) Omega_p / (2^n Delta^(n-1))
  double omega_s_eff = 0.0;
  double delta_eff = 0.0;    // V_tot - n Delta + ((n-1)Oc^2 + Op Os)/(3 Delta)
  double alpha = 0.0;
  int n = 2;
};

EffectiveParams effective_params(const DriveParams& params);

// Scale factor between physical pump/Stokes amplitude and effective coupling.
double effective_coupling_scale(int n, double omega_c, double delta);

// Anti-blockade detuning: positive root of
//   (3n - (n-1) alpha^2) Delta^2 - 3 V_total Delta - Op Os = 0
// (drive pair entering via its common amplitude squared, as in delta_eff).
// Throws std::domain_error when no positive root exists.
double rab_solve(double v_total, double omega_p, double omega_s, double alpha, int n);

// ---------------------------------------------------------------------------
// time-dependent Hamiltonians
// ---------------------------------------------------------------------------

enum class DriveForm { rotating_wave, cosine };

// Integration frame for the full model. The detuning frame applies the exact
// gauge W = exp(i Delta t N_r): couplings lose their exp(-i Delta t) factor
// and -Delta N_r appears on the diagonal. Populations and computational-
// subspace coherences are identical in both frames; the dissipator is
// invariant. Integration there only has to resolve residual detunings.
enum class ModelFrame { lab, detuning };

// Relative drive envelopes (dimensionless multipliers on omega_p/omega_s).
struct Envelopes {
  std::function<double(double)> p = [](double) { return 1.0; };
  std::function<double(double)> s = [](double) { return 1.0; };

  static Envelopes from_schedule(const DressedSchedule& sched);
};

// H(t) = static + sum_k coeff_k(t) * mat_k on a fixed space.
class TimeDependentOperator {
public:
  struct Term {
    Eigen::MatrixXcd mat;
    std::function<std::complex<double>(double)> coeff;
  };

  TimeDependentOperator() = default;
  TimeDependentOperator(HilbertSpace space, Eigen::MatrixXcd static_part);

  void add_term(Eigen::MatrixXcd mat, std::function<std::complex<double>(double)> coeff);

  const HilbertSpace& space() const { return space_; }
  int dim() const { return static_cast<int>(static_.rows()); }
  double freq_scale() const { return freq_scale_; }
  void set_freq_scale(double w) { freq_scale_ = w; }

  void eval(double t, Eigen::MatrixXcd& out) const;
  Eigen::MatrixXcd at(double t) const;

private:
  HilbertSpace space_;
  Eigen::MatrixXcd static_;
  std::vector<Term> terms_;
  double freq_scale_ = 0.0;  // largest carrier angular frequency present
};

// Full register Hamiltonian for one protocol step: always-on control legs,
// pump/Stokes legs on the target per StepSpec, pairwise Rydberg couplings.
// Carrier phases evaluate at (t + carrier_time_offset) while envelopes see t,
// so a step integrated in local schedule time keeps the laser phase
// continuous across a chained multi-step run.
TimeDependentOperator build_full_hamiltonian(const DriveParams& params,
                                             const StepSpec& step,
                                             DriveForm form,
                                             const Envelopes& env = {},
                                             ModelFrame frame = ModelFrame::lab,
                                             double carrier_time_offset = 0.0);

// Effective lambda Hamiltonian embedded in the full register space:
//   H = op'(t) |In><R| + os'(t) |Out><R| + h.c. + delta_eff |R><R|
// with |In> = |1..1,in>, |R> = |r..r>, |Out> = |1..1,out>; op'/os' follow the
// schedule's effective-unit drives.
TimeDependentOperator build_effective_hamiltonian(const EffectiveParams& eff,
                                                  const StepSpec& step,
                                                  const HilbertSpace& space,
                                                  const DressedSchedule& sched);

// Static variant (tests, spectra).
Eigen::MatrixXcd effective_lambda_matrix(double omega_p_eff, double omega_s_eff,
                                         double delta_eff);

// Basis indices of the active lambda triple for a step.
struct LambdaIndices {
  int in;
  int r;
  int out;
};
LambdaIndices lambda_indices(const HilbertSpace& space, const StepSpec& step);

// Spontaneous-emission jump operators: for every control atom
// sqrt(gamma/2)|0><r|, sqrt(gamma/2)|1><r|; for the target
// sqrt(gamma/3)|k><r|, k in {0,1,m}. Empty when gamma == 0.
std::vector<Operator> lindblad_ops(const DriveParams& params, const HilbertSpace& space);

// ---------------------------------------------------------------------------
// dressed-frame algebra (3x3, lambda subspace)
// ---------------------------------------------------------------------------

// H_c = U_ad^†(theta) (g_x M_x + g_z M_z) U_ad(theta), original coordinates.
// Never couples In to Out directly.
Eigen::Matrix3cd control_hamiltonian(double theta, double g_x, double g_z);

// Dressed-frame Hamiltonian, exact construction
//   H_new = V (Omega M_z + theta_dot M_y + g_x M_x + g_z M_z) V^† + i V̇ V^†
// in dressed coordinates (phi_+, phi_0, phi_-). With the correction formulas
// applied, the off-diagonal blocks vanish and H_new = rate * M_z.
struct DressedFrameInputs {
  double omega = 0.0;
  double theta_dot = 0.0;
  double mu = 0.0, mu_dot = 0.0;
  double xi = 0.0, xi_dot = 0.0;
  double eta = 0.0, eta_dot = 0.0;
  double g_x = 0.0, g_z = 0.0;
};

Eigen::Matrix3cd dressed_frame_hamiltonian(const DressedFrameInputs& in);

// Closed form of the residual diagonal rate (mu_dot sin xi - theta_dot) /
// (sin mu cos xi); throws ScheduleSingularity when the denominator vanishes
// with a non-negligible numerator. Equals -theta_dot/sin(mu) at xi = 0.
double dressed_diagonal_rate(double theta_dot, double mu, double mu_dot,
                             double xi, double xi_dot);

// Evolution operator of the corrected schedule on the lambda subspace,
//   U = U_ad^†(t_f) V^†(t_f) diag(e^{-i Phi}, 1, e^{+i Phi}) V(t_i) U_ad(t_i),
// Phi = integral of the residual diagonal rate (composite Simpson rule).
Eigen::Matrix3cd dressed_evolution_operator(const DressedSchedule& sched,
                                            double t_i, double t_f,
                                            int quad_points = 2001);

}  // namespace rydsta
