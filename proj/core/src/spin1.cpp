#include "rydsta/spin1.hpp"

#include <cmath>
#include <complex>

namespace rydsta {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

Eigen::Matrix3cd spin1_mx() {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  m(0, 1) = -kInvSqrt2;
  m(1, 0) = -kInvSqrt2;
  m(1, 2) = kInvSqrt2;
  m(2, 1) = kInvSqrt2;
  return m;
}

Eigen::Matrix3cd spin1_my() {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  m(0, 1) = kI * kInvSqrt2;
  m(1, 0) = -kI * kInvSqrt2;
  m(1, 2) = -kI * kInvSqrt2;
  m(2, 1) = kI * kInvSqrt2;
  return m;
}

Eigen::Matrix3cd spin1_mz() {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return m;
}

Eigen::Matrix3cd spin1_rotation(double angle, const Eigen::Matrix3cd& m) {
  return Eigen::Matrix3cd::Identity() + kI * std::sin(angle) * m +
         (std::cos(angle) - 1.0) * (m * m);
}

Eigen::Matrix3cd adiabatic_frame(double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  Eigen::Matrix3cd u;
  u << s * kInvSqrt2, -kInvSqrt2, -c * kInvSqrt2,
       c,             0.0,         s,
       s * kInvSqrt2,  kInvSqrt2, -c * kInvSqrt2;
  return u;
}

Eigen::Matrix3cd adiabatic_frame_dtheta(double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  Eigen::Matrix3cd u;
  u << c * kInvSqrt2, 0.0, s * kInvSqrt2,
       -s,            0.0, c,
       c * kInvSqrt2, 0.0, s * kInvSqrt2;
  return u;
}

Eigen::Matrix3cd dressing_frame(double mu, double xi, double eta) {
  return spin1_rotation(eta, spin1_mz()) * spin1_rotation(mu, spin1_mx()) *
         spin1_rotation(xi, spin1_mz());
}

Eigen::Matrix3cd dressing_frame_drift(double mu, double mu_dot, double xi, double xi_dot,
                                      double eta, double eta_dot) {
  const Eigen::Matrix3cd mx = spin1_mx();
  const Eigen::Matrix3cd my = spin1_my();
  const Eigen::Matrix3cd mz = spin1_mz();
  const double ce = std::cos(eta);
  const double se = std::sin(eta);
  const double cm = std::cos(mu);
  const double sm = std::sin(mu);
  return -eta_dot * mz - mu_dot * (mx * ce - my * se) -
         xi_dot * (mz * cm + (my * ce + mx * se) * sm);
}

FrameSet spin1_frames(double theta, double mu, double xi, double eta) {
  FrameSet f;
  f.mx = spin1_mx();
  f.my = spin1_my();
  f.mz = spin1_mz();
  f.u_ad = adiabatic_frame(theta);
  f.dressing = dressing_frame(mu, xi, eta);
  return f;
}

}  // namespace rydsta
