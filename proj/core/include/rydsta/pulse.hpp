#pragma once

#include <functional>
#include <stdexcept>

namespace rydsta {

// Raised when a dressing schedule hits the tan(mu) singularity with a
// non-vanishing numerator (general-branch corrections undefined there).
struct ScheduleSingularity : std::domain_error {
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// base logistic schedule
// ---------------------------------------------------------------------------

// Mixing angle theta(t) = (pi/2) / (1 + exp(-t/tau)), monotonic 0 -> pi/2.
double vitanov_theta(double t, double tau);
double vitanov_theta_dot(double t, double tau);
double vitanov_theta_ddot(double t, double tau);

// Half-width of the window on which theta is within eps_edge of its limits:
// t_edge = tau * ln(pi/(2 eps) - 1); window is [-t_edge, +t_edge].
double vitanov_edge_time(double tau, double eps_edge);

// Constant-amplitude logistic pulse pair in effective (two-photon) units.
struct VitanovPulseSpec {
  double omega;     // effective amplitude Omega~ [rad/s], > 0
  double tau;       // logistic time constant [s], > 0
  double t_i;       // window start [s]
  double t_f;       // window end [s]
  double eps_edge;  // boundary tolerance [rad]

  // Symmetric window wide enough for the eps_edge boundary condition.
  static VitanovPulseSpec with_edge(double omega, double tau, double eps_edge = 1e-4);

  void validate() const;  // throws std::invalid_argument on a narrow window
  double duration() const { return t_f - t_i; }
};

struct DrivePair {
  double omega_p;  // pump leg, omega_p = -Omega~ sin(theta~)
  double omega_s;  // Stokes leg, omega_s = +Omega~ cos(theta~)
};

DrivePair base_pulses(double t, const VitanovPulseSpec& spec);

// ---------------------------------------------------------------------------
// angle schedules
// ---------------------------------------------------------------------------

// Polar decomposition of a drive pair: Omega(t) = sqrt(op^2 + os^2),
// theta(t) = -atan2-based continuous branch of -arctan(op/os).
// theta_ddot enables analytic dressing-angle derivatives; required by
// dressed_angles (amplitude is treated as constant when differentiating).
struct AdiabaticAngles {
  std::function<double(double)> theta;
  std::function<double(double)> theta_dot;
  std::function<double(double)> theta_ddot;
  std::function<double(double)> omega;

  static AdiabaticAngles from_vitanov(const VitanovPulseSpec& spec);
};

// Euler-angle dressing (eta is a pure off-diagonal phase; default 0).
struct DressedAngles {
  std::function<double(double)> mu;
  std::function<double(double)> mu_dot;
  std::function<double(double)> xi;
  std::function<double(double)> xi_dot;
  std::function<double(double)> eta;
  std::function<double(double)> eta_dot;
};

// Simplest dressing: xi = eta = 0, mu = -arctan(theta_dot/Omega).
// mu_dot is analytic when the angles carry closed forms.
DressedAngles dressed_angles(const AdiabaticAngles& angles);

// User-supplied smooth (mu, xi); derivatives by centered differences with
// step fd_step when analytic ones are not provided.
DressedAngles dressed_angles_custom(std::function<double(double)> mu,
                                    std::function<double(double)> xi,
                                    double fd_step);

// ---------------------------------------------------------------------------
// corrections and dressed schedule
// ---------------------------------------------------------------------------

struct ControlCorrections {
  std::function<double(double)> g_x;
  std::function<double(double)> g_z;
};

// General correction formulas
//   g_x = mu_dot/cos(xi) - theta_dot tan(xi)
//   g_z = -Omega + xi_dot + (mu_dot sin(xi) - theta_dot) / (tan(mu) cos(xi)).
// The g_z branch throws ScheduleSingularity when tan(mu)cos(xi) vanishes with
// a non-negligible numerator. For the simplest dressing the formulas reduce
// exactly to g_x = mu_dot, g_z = 0.
ControlCorrections control_corrections(const AdiabaticAngles& angles,
                                       const DressedAngles& dressing);

// Point evaluation used by oracles and tests.
double correction_g_x(double theta_dot, double mu_dot, double xi);
double correction_g_z(double omega, double theta_dot, double mu, double mu_dot,
                      double xi, double xi_dot);

// Physical realization of the corrections: reshaped pulse pair
//   theta_new = theta - arctan(g_x / (Omega + g_z)),
//   Omega_new = sqrt((Omega + g_z)^2 + g_x^2),
//   omega_p' = -Omega_new sin(theta_new), omega_s' = +Omega_new cos(theta_new).
struct DressedSchedule {
  VitanovPulseSpec base;
  AdiabaticAngles angles;
  DressedAngles dressing;
  ControlCorrections corrections;
  bool dressed = true;  // false: pass base pulses through unchanged

  double theta_new(double t) const;
  double omega_new(double t) const;
  DrivePair drives(double t) const;  // effective units [rad/s]
};

DressedSchedule dressed_schedule(const VitanovPulseSpec& spec, bool dressed = true);

// ---------------------------------------------------------------------------
// analytic transfer path
// ---------------------------------------------------------------------------

struct PathPopulations {
  double p_in;
  double p_r;
  double p_out;
};

// Populations of the dressed dark state in the original basis:
//   P_R   = sin^2(mu) cos^2(xi)
//   P_In  = [cos(theta)cos(mu) + sin(theta)sin(mu)sin(xi)]^2
//   P_Out = [sin(theta)cos(mu) - cos(theta)sin(mu)sin(xi)]^2.
PathPopulations predicted_populations(double theta, double mu, double xi);
PathPopulations predicted_populations(const DressedSchedule& sched, double t);

}  // namespace rydsta
