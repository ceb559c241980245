#include "rydsta/pulse.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace rydsta {

namespace {

constexpr double kPi = 3.14159265358979323846;

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void require_tau(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("vitanov pulse: tau must be > 0");
}

}  // namespace

double vitanov_theta(double t, double tau) {
  require_tau(tau);
  return (kPi / 2.0) * logistic(t / tau);
}

double vitanov_theta_dot(double t, double tau) {
  require_tau(tau);
  const double s = logistic(t / tau);
  return (kPi / (2.0 * tau)) * s * (1.0 - s);
}

double vitanov_theta_ddot(double t, double tau) {
  require_tau(tau);
  const double s = logistic(t / tau);
  return (kPi / (2.0 * tau * tau)) * s * (1.0 - s) * (1.0 - 2.0 * s);
}

double vitanov_edge_time(double tau, double eps_edge) {
  require_tau(tau);
  if (!(eps_edge > 0.0) || !(eps_edge < kPi / 4.0))
    throw std::invalid_argument("vitanov pulse: eps_edge must lie in (0, pi/4)");
  return tau * std::log(kPi / (2.0 * eps_edge) - 1.0);
}

VitanovPulseSpec VitanovPulseSpec::with_edge(double omega, double tau, double eps_edge) {
  const double t_edge = vitanov_edge_time(tau, eps_edge);
  VitanovPulseSpec spec{omega, tau, -t_edge, t_edge, eps_edge};
  spec.validate();
  return spec;
}

void VitanovPulseSpec::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("vitanov pulse: omega must be > 0");
  require_tau(tau);
  if (!(t_i < 0.0) || !(t_f > 0.0))
    throw std::invalid_argument("vitanov pulse: window must straddle t = 0");
  const double t_edge = vitanov_edge_time(tau, eps_edge);
  const double slack = 1.0 + 1e-12;
  if (-t_i * slack < t_edge || t_f * slack < t_edge)
    throw std::invalid_argument(
        "vitanov pulse: window narrower than the eps_edge boundary condition requires (need "
        "half-width >= " +
        std::to_string(t_edge) + " s)");
}

DrivePair base_pulses(double t, const VitanovPulseSpec& spec) {
  const double th = vitanov_theta(t, spec.tau);
  return {-spec.omega * std::sin(th), spec.omega * std::cos(th)};
}

AdiabaticAngles AdiabaticAngles::from_vitanov(const VitanovPulseSpec& spec) {
  spec.validate();
  AdiabaticAngles a;
  const double tau = spec.tau;
  const double omega = spec.omega;
  a.theta = [tau](double t) { return vitanov_theta(t, tau); };
  a.theta_dot = [tau](double t) { return vitanov_theta_dot(t, tau); };
  a.theta_ddot = [tau](double t) { return vitanov_theta_ddot(t, tau); };
  a.omega = [omega](double) { return omega; };
  return a;
}

DressedAngles dressed_angles(const AdiabaticAngles& angles) {
  if (!angles.theta_dot || !angles.omega || !angles.theta_ddot)
    throw std::invalid_argument("dressed_angles: angles must provide theta_dot/theta_ddot/omega");
  DressedAngles d;
  d.mu = [angles](double t) { return -std::atan2(angles.theta_dot(t), angles.omega(t)); };
  d.mu_dot = [angles](double t) {
    const double om = angles.omega(t);
    const double td = angles.theta_dot(t);
    return -angles.theta_ddot(t) * om / (om * om + td * td);
  };
  auto zero = [](double) { return 0.0; };
  d.xi = zero;
  d.xi_dot = zero;
  d.eta = zero;
  d.eta_dot = zero;
  return d;
}

DressedAngles dressed_angles_custom(std::function<double(double)> mu,
                                    std::function<double(double)> xi, double fd_step) {
  if (!mu || !xi) throw std::invalid_argument("dressed_angles_custom: mu and xi required");
  if (!(fd_step > 0.0)) throw std::invalid_argument("dressed_angles_custom: fd_step must be > 0");
  DressedAngles d;
  d.mu = mu;
  d.xi = xi;
  d.mu_dot = [mu, fd_step](double t) { return (mu(t + fd_step) - mu(t - fd_step)) / (2.0 * fd_step); };
  d.xi_dot = [xi, fd_step](double t) { return (xi(t + fd_step) - xi(t - fd_step)) / (2.0 * fd_step); };
  auto zero = [](double) { return 0.0; };
  d.eta = zero;
  d.eta_dot = zero;
  return d;
}

double correction_g_x(double theta_dot, double mu_dot, double xi) {
  const double c = std::cos(xi);
  if (std::abs(c) < 1e-12)
    throw ScheduleSingularity("correction_g_x: cos(xi) vanishes");
  return mu_dot / c - theta_dot * std::tan(xi);
}

double correction_g_z(double omega, double theta_dot, double mu, double mu_dot, double xi,
                      double xi_dot) {
  const double numer = mu_dot * std::sin(xi) - theta_dot;
  const double denom = std::tan(mu) * std::cos(xi);
  if (std::abs(denom) < 1e-14) {
    const double scale = std::abs(omega) + std::abs(theta_dot) + std::abs(mu_dot) +
                         std::abs(xi_dot) + 1e-300;
    // Vanishing numerator means the off-diagonal is already closed; no
    // correction is the limit shared by static and simplest-choice schedules.
    if (std::abs(numer) <= 1e-12 * scale) return 0.0;
    throw ScheduleSingularity("correction_g_z: tan(mu)cos(xi) vanishes with nonzero numerator");
  }
  return -omega + xi_dot + numer / denom;
}

ControlCorrections control_corrections(const AdiabaticAngles& angles,
                                       const DressedAngles& dressing) {
  ControlCorrections c;
  c.g_x = [angles, dressing](double t) {
    return correction_g_x(angles.theta_dot(t), dressing.mu_dot(t), dressing.xi(t));
  };
  c.g_z = [angles, dressing](double t) {
    return correction_g_z(angles.omega(t), angles.theta_dot(t), dressing.mu(t),
                          dressing.mu_dot(t), dressing.xi(t), dressing.xi_dot(t));
  };
  return c;
}

double DressedSchedule::theta_new(double t) const {
  const double th = angles.theta(t);
  if (!dressed) return th;
  return th - std::atan2(corrections.g_x(t), angles.omega(t) + corrections.g_z(t));
}

double DressedSchedule::omega_new(double t) const {
  if (!dressed) return angles.omega(t);
  return std::hypot(angles.omega(t) + corrections.g_z(t), corrections.g_x(t));
}

DrivePair DressedSchedule::drives(double t) const {
  if (!dressed) return base_pulses(t, base);
  const double th = theta_new(t);
  const double om = omega_new(t);
  return {-om * std::sin(th), om * std::cos(th)};
}

DressedSchedule dressed_schedule(const VitanovPulseSpec& spec, bool dressed) {
  spec.validate();
  DressedSchedule s;
  s.base = spec;
  s.angles = AdiabaticAngles::from_vitanov(spec);
  s.dressed = dressed;
  if (dressed) {
    s.dressing = dressed_angles(s.angles);
    s.corrections = control_corrections(s.angles, s.dressing);
  } else {
    auto zero = [](double) { return 0.0; };
    s.dressing = DressedAngles{zero, zero, zero, zero, zero, zero};
    s.corrections = ControlCorrections{zero, zero};
  }
  return s;
}

PathPopulations predicted_populations(double theta, double mu, double xi) {
  const double p_r = std::sin(mu) * std::sin(mu) * std::cos(xi) * std::cos(xi);
  const double a_in = std::cos(theta) * std::cos(mu) + std::sin(theta) * std::sin(mu) * std::sin(xi);
  const double a_out = std::sin(theta) * std::cos(mu) - std::cos(theta) * std::sin(mu) * std::sin(xi);
  return {a_in * a_in, p_r, a_out * a_out};
}

PathPopulations predicted_populations(const DressedSchedule& sched, double t) {
  return predicted_populations(sched.angles.theta(t), sched.dressing.mu(t), sched.dressing.xi(t));
}

}  // namespace rydsta
