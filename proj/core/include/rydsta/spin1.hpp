#pragma once

#include <Eigen/Dense>

namespace rydsta {

// Spin-1 algebra and frame transformations on the lambda subspace.
//
// Adiabatic-frame coordinates are ordered (phi_+, phi_0, phi_-); original
// lambda-space coordinates are ordered (In, R, Out). With that ordering the
// adiabatic map U_ad has rows = adiabatic states expressed in the original
// basis, so psi_ad = U_ad psi_orig and H_ad = U_ad H U_ad^† + i U̇_ad U_ad^†.

Eigen::Matrix3cd spin1_mx();
Eigen::Matrix3cd spin1_my();
Eigen::Matrix3cd spin1_mz();

// exp(i angle M) for a spin-1 component M (uses M^3 = M exactly).
Eigen::Matrix3cd spin1_rotation(double angle, const Eigen::Matrix3cd& m);

// Adiabatic frame map:
//        ( sin(th)/√2  -1/√2  -cos(th)/√2 )
// U_ad = (   cos(th)     0       sin(th)  )   columns: (In, R, Out)
//        ( sin(th)/√2  +1/√2  -cos(th)/√2 )
Eigen::Matrix3cd adiabatic_frame(double theta);
Eigen::Matrix3cd adiabatic_frame_dtheta(double theta);  // dU_ad/dtheta

// Euler-angle dressing V = exp(i eta M_z) exp(i mu M_x) exp(i xi M_z).
Eigen::Matrix3cd dressing_frame(double mu, double xi, double eta);

// i dV/dt V^† expanded analytically:
// -eta_dot M_z - mu_dot R_z(eta)[M_x] - xi_dot R_z(eta)R_x(mu)[M_z].
Eigen::Matrix3cd dressing_frame_drift(double mu, double mu_dot, double xi,
                                      double xi_dot, double eta, double eta_dot);

struct FrameSet {
  Eigen::Matrix3cd mx, my, mz;
  Eigen::Matrix3cd u_ad;       // at the evaluation angle
  Eigen::Matrix3cd dressing;   // V(mu, xi, eta)
};

FrameSet spin1_frames(double theta, double mu, double xi, double eta);

}  // namespace rydsta
