#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rydsta/pulse.hpp"
#include "rydsta/spin1.hpp"

using namespace rydsta;

namespace {

constexpr double kPi = std::numbers::pi;

// Fig.-2-scale effective drive: Omega~/2pi = 1 MHz, tau = 0.2/Omega~.
VitanovPulseSpec reference_spec() {
  const double omega = 2.0 * kPi * 1.0e6;
  return VitanovPulseSpec::with_edge(omega, 0.2 / omega);
}

}  // namespace

TEST_CASE("logistic angle: fixed values, monotonicity, saturation") {
  const double tau = 3.7e-7;
  CHECK(vitanov_theta(0.0, tau) == doctest::Approx(kPi / 4.0).epsilon(1e-14));
  // (pi/2)/(1 + 1/e), frozen at high precision.
  CHECK(vitanov_theta(tau, tau) == doctest::Approx(1.14834412998390977).epsilon(1e-12));
  CHECK(vitanov_theta(40.0 * tau, tau) == doctest::Approx(kPi / 2.0).epsilon(1e-12));
  CHECK(vitanov_theta(-40.0 * tau, tau) == doctest::Approx(0.0).epsilon(1e-12));
  double prev = -1.0;
  for (int k = 0; k <= 200; ++k) {
    const double t = (-10.0 + 0.1 * k) * tau;
    const double th = vitanov_theta(t, tau);
    CHECK(th > prev);
    prev = th;
  }
  CHECK_THROWS_AS(vitanov_theta(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("logistic angle: analytic derivatives match centered differences") {
  const double tau = 2.0e-7;
  CHECK(vitanov_theta_dot(0.0, tau) == doctest::Approx(kPi / (8.0 * tau)).epsilon(1e-14));
  const double h = 1e-5 * tau;
  for (int k = -8; k <= 8; ++k) {
    const double t = 0.5 * k * tau;
    const double fd_dot = (vitanov_theta(t + h, tau) - vitanov_theta(t - h, tau)) / (2.0 * h);
    CHECK(vitanov_theta_dot(t, tau) == doctest::Approx(fd_dot).epsilon(1e-6));
    const double fd_ddot =
        (vitanov_theta_dot(t + h, tau) - vitanov_theta_dot(t - h, tau)) / (2.0 * h);
    // theta_ddot(0) = 0 by symmetry; compare absolutely there.
    if (k == 0)
      CHECK(std::abs(vitanov_theta_ddot(t, tau) - fd_ddot) < 1e-6 * kPi / (8.0 * tau * tau));
    else
      CHECK(vitanov_theta_ddot(t, tau) == doctest::Approx(fd_ddot).epsilon(1e-5));
  }
}

TEST_CASE("logistic angle: edge time hits the boundary tolerance") {
  const double tau = 2.0e-7;
  const double eps = 1e-4;
  const double t_edge = vitanov_edge_time(tau, eps);
  CHECK(t_edge / tau == doctest::Approx(9.6618594132618912).epsilon(1e-12));
  CHECK(vitanov_theta(-t_edge, tau) == doctest::Approx(eps).epsilon(1e-10));
  CHECK(kPi / 2.0 - vitanov_theta(t_edge, tau) == doctest::Approx(eps).epsilon(1e-10));
}

TEST_CASE("pulse spec: window validation") {
  const auto spec = reference_spec();
  CHECK_NOTHROW(spec.validate());
  CHECK(spec.t_i == doctest::Approx(-spec.t_f).epsilon(1e-14));
  CHECK(spec.duration() == doctest::Approx(2.0 * vitanov_edge_time(spec.tau, spec.eps_edge))
                               .epsilon(1e-12));

  VitanovPulseSpec narrow = spec;
  narrow.t_i = -0.5 * spec.tau;  // theta(t_i) far above eps_edge
  CHECK_THROWS_AS(narrow.validate(), std::invalid_argument);

  VitanovPulseSpec bad = spec;
  bad.eps_edge = 1.0;  // outside (0, pi/4)
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(VitanovPulseSpec::with_edge(-1.0, spec.tau), std::invalid_argument);
}

TEST_CASE("base pulses: counterintuitive ordering and constant total amplitude") {
  const auto spec = reference_spec();
  const auto mid = base_pulses(0.0, spec);
  CHECK(mid.omega_p == doctest::Approx(-spec.omega / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(mid.omega_s == doctest::Approx(spec.omega / std::sqrt(2.0)).epsilon(1e-12));

  // Stokes leads, pump trails.
  const auto early = base_pulses(spec.t_i, spec);
  CHECK(std::abs(early.omega_s) > std::abs(early.omega_p));
  const auto late = base_pulses(spec.t_f, spec);
  CHECK(std::abs(late.omega_p) > std::abs(late.omega_s));

  for (int k = 0; k <= 1000; ++k) {
    const double t = spec.t_i + (spec.t_f - spec.t_i) * k / 1000.0;
    const auto d = base_pulses(t, spec);
    const double total = d.omega_p * d.omega_p + d.omega_s * d.omega_s;
    CHECK(total == doctest::Approx(spec.omega * spec.omega).epsilon(1e-12));
  }
}

TEST_CASE("adiabatic angles: polar decomposition of the base pair") {
  const auto spec = reference_spec();
  const auto angles = AdiabaticAngles::from_vitanov(spec);
  for (int k = 0; k <= 50; ++k) {
    const double t = spec.t_i + (spec.t_f - spec.t_i) * k / 50.0;
    CHECK(angles.omega(t) == doctest::Approx(spec.omega).epsilon(1e-12));
    CHECK(angles.theta(t) == doctest::Approx(vitanov_theta(t, spec.tau)).epsilon(1e-12));
    CHECK(angles.theta_dot(t) ==
          doctest::Approx(vitanov_theta_dot(t, spec.tau)).epsilon(1e-12));
  }
}

TEST_CASE("simplest dressing: mu = -arctan(theta_dot/Omega), analytic derivative") {
  const auto spec = reference_spec();
  const auto angles = AdiabaticAngles::from_vitanov(spec);
  const auto dress = dressed_angles(angles);

  // At the pulse center theta_dot/Omega = pi/(8 tau) / Omega = pi/1.6.
  CHECK(angles.theta_dot(0.0) / spec.omega ==
        doctest::Approx(1.96349540849362077).epsilon(1e-12));
  CHECK(dress.mu(0.0) == doctest::Approx(-1.09973974852397307).epsilon(1e-12));
  CHECK(dress.xi(0.0) == 0.0);
  CHECK(dress.eta(0.0) == 0.0);
  CHECK(dress.xi_dot(0.5 * spec.tau) == 0.0);

  const double h = 1e-5 * spec.tau;
  for (int k = -6; k <= 6; ++k) {
    const double t = 0.8 * k * spec.tau;
    const double fd = (dress.mu(t + h) - dress.mu(t - h)) / (2.0 * h);
    CHECK(dress.mu_dot(t) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("custom dressing: finite-difference derivatives track smooth angles") {
  const double tau = 1.0e-7;
  auto mu_fn = [tau](double t) { return 0.7 * std::sin(t / tau); };
  auto xi_fn = [tau](double t) { return 0.3 * std::cos(t / tau); };
  const auto dress = dressed_angles_custom(mu_fn, xi_fn, 1e-4 * tau);
  for (int k = -5; k <= 5; ++k) {
    const double t = 0.4 * k * tau;
    CHECK(dress.mu(t) == doctest::Approx(mu_fn(t)).epsilon(1e-12));
    CHECK(dress.mu_dot(t) == doctest::Approx(0.7 * std::cos(t / tau) / tau).epsilon(1e-6));
    CHECK(dress.xi_dot(t) == doctest::Approx(-0.3 * std::sin(t / tau) / tau).epsilon(1e-6));
  }
  CHECK_THROWS_AS(dressed_angles_custom(nullptr, xi_fn, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(dressed_angles_custom(mu_fn, xi_fn, 0.0), std::invalid_argument);
}

TEST_CASE("corrections: point formulas and their exact special cases") {
  // xi = 0 collapses the general formulas to g_x = mu_dot, and to g_z = 0
  // when mu is the matching simplest dressing angle -arctan(theta_dot/Omega).
  CHECK(correction_g_x(0.37, 0.82, 0.0) == 0.82);
  const double omega = 1.3e6, theta_dot = 0.4e6;
  const double mu_simple = -std::atan(theta_dot / omega);
  CHECK(std::abs(correction_g_z(omega, theta_dot, mu_simple, 0.2e6, 0.0, 0.0)) < 1e-9 * omega);
  // General branch follows the written formula.
  CHECK(correction_g_z(omega, theta_dot, -0.9, 0.2e6, 0.1, 0.05e6) ==
        doctest::Approx(-omega + 0.05e6 +
                        (0.2e6 * std::sin(0.1) - theta_dot) /
                            (std::tan(-0.9) * std::cos(0.1)))
            .epsilon(1e-10));

  // Static schedule needs no correction.
  CHECK(correction_g_x(0.0, 0.0, 0.25) == 0.0);

  // General-branch spot value: g_x = mu_dot/cos(xi) - theta_dot tan(xi).
  const double gx = correction_g_x(0.5, 0.25, 0.3);
  CHECK(gx == doctest::Approx(0.25 / std::cos(0.3) - 0.5 * std::tan(0.3)).epsilon(1e-14));

  // tan(mu) singularity with a live numerator is a domain error.
  CHECK_THROWS_AS(correction_g_x(0.1, 0.1, kPi / 2.0), ScheduleSingularity);
  CHECK_THROWS_AS(correction_g_z(1.0e6, 0.5e6, 0.0, 0.0, 0.0, 0.0), ScheduleSingularity);
}

TEST_CASE("corrections: simplest dressing keeps g_z at zero through the general branch") {
  const auto spec = reference_spec();
  const auto angles = AdiabaticAngles::from_vitanov(spec);
  const auto corr = control_corrections(angles, dressed_angles(angles));
  const auto dress = dressed_angles(angles);
  for (int k = 0; k <= 400; ++k) {
    const double t = spec.t_i + (spec.t_f - spec.t_i) * k / 400.0;
    CHECK(std::abs(corr.g_z(t)) < 1e-10 * spec.omega);
    CHECK(corr.g_x(t) == doctest::Approx(dress.mu_dot(t)).epsilon(1e-10));
  }
}

TEST_CASE("dressed schedule: pass-through and reshaped pair") {
  const auto spec = reference_spec();
  const auto plain = dressed_schedule(spec, false);
  const auto dressed = dressed_schedule(spec, true);

  double max_omega_new = 0.0;
  for (int k = 0; k <= 500; ++k) {
    const double t = spec.t_i + (spec.t_f - spec.t_i) * k / 500.0;
    const auto base = base_pulses(t, spec);
    const auto d0 = plain.drives(t);
    CHECK(d0.omega_p == doctest::Approx(base.omega_p).epsilon(1e-12));
    CHECK(d0.omega_s == doctest::Approx(base.omega_s).epsilon(1e-12));

    const auto d1 = dressed.drives(t);
    const double om = std::sqrt(d1.omega_p * d1.omega_p + d1.omega_s * d1.omega_s);
    CHECK(om == doctest::Approx(dressed.omega_new(t)).epsilon(1e-12));
    max_omega_new = std::max(max_omega_new, om);
  }
  // The correction inflates the drive amplitude well past the base value.
  CHECK(max_omega_new > 2.0 * spec.omega);

  // theta_new stays on a continuous branch: no jumps between dense samples.
  double prev = dressed.theta_new(spec.t_i);
  for (int k = 1; k <= 2000; ++k) {
    const double t = spec.t_i + (spec.t_f - spec.t_i) * k / 2000.0;
    const double cur = dressed.theta_new(t);
    CHECK(std::abs(cur - prev) < 0.02);
    prev = cur;
  }
}

TEST_CASE("dressed schedule: boundary dressing frame is close to the identity") {
  const auto spec = reference_spec();
  const auto sched = dressed_schedule(spec);
  // theta_dot ~ eps_edge/tau at the window edges, so |mu| ~ 5e-4 there.
  const double mu_i = sched.dressing.mu(spec.t_i);
  const double mu_f = sched.dressing.mu(spec.t_f);
  CHECK(std::abs(mu_i) < 1e-3);
  CHECK(std::abs(mu_f) < 1e-3);
  const Eigen::Matrix3cd v = dressing_frame(mu_i, 0.0, 0.0);
  CHECK((v - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("predicted path populations: limits, frozen point, normalization") {
  const auto flat = predicted_populations(0.3, 0.0, 0.0);
  CHECK(flat.p_r == 0.0);
  CHECK(flat.p_in == doctest::Approx(std::cos(0.3) * std::cos(0.3)).epsilon(1e-14));
  CHECK(flat.p_out == doctest::Approx(std::sin(0.3) * std::sin(0.3)).epsilon(1e-14));

  const auto mixed = predicted_populations(kPi / 4.0, kPi / 6.0, 0.0);
  CHECK(mixed.p_in == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
  CHECK(mixed.p_r == doctest::Approx(1.0 / 4.0).epsilon(1e-12));
  CHECK(mixed.p_out == doctest::Approx(3.0 / 8.0).epsilon(1e-12));

  std::mt19937 rng(8101);
  std::uniform_real_distribution<double> angle(-1.5, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = predicted_populations(angle(rng), angle(rng), angle(rng));
    CHECK(p.p_in + p.p_r + p.p_out == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.p_in >= 0.0);
    CHECK(p.p_r >= 0.0);
    CHECK(p.p_out >= 0.0);
  }

  // Schedule overload evaluates the same formula on the schedule's angles.
  const auto spec = reference_spec();
  const auto sched = dressed_schedule(spec);
  const auto at_mid = predicted_populations(sched, 0.0);
  const auto direct = predicted_populations(sched.angles.theta(0.0), sched.dressing.mu(0.0),
                                            sched.dressing.xi(0.0));
  CHECK(at_mid.p_in == doctest::Approx(direct.p_in).epsilon(1e-12));
  CHECK(at_mid.p_r == doctest::Approx(direct.p_r).epsilon(1e-12));
  CHECK(at_mid.p_out == doctest::Approx(direct.p_out).epsilon(1e-12));

  // Transfer endpoints: In-dominated start, Out-dominated finish.
  CHECK(predicted_populations(sched, spec.t_i).p_in > 0.999);
  CHECK(predicted_populations(sched, spec.t_f).p_out > 0.999);
}
