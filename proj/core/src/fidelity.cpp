#include "rydsta/fidelity.hpp"

#include <cmath>
#include <stdexcept>

namespace rydsta {

namespace {

constexpr double kClampFloor = -1e-8;

// Integration drift can leave tiny negative eigenvalues; anything below the
// floor means the state is genuinely invalid.
double clamp_eigenvalue(double ev) {
  if (ev >= 0.0) return ev;
  if (ev >= kClampFloor) return 0.0;
  throw std::domain_error("uhlmann_fidelity: eigenvalue " + std::to_string(ev) +
                          " below positivity floor");
}

}  // namespace

double uhlmann_fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols() || rho.rows() != rho.cols())
    throw std::invalid_argument("uhlmann_fidelity: shape mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es_rho(rho);
  Eigen::VectorXd sqrt_ev(es_rho.eigenvalues().size());
  for (int i = 0; i < sqrt_ev.size(); ++i)
    sqrt_ev(i) = std::sqrt(clamp_eigenvalue(es_rho.eigenvalues()(i)));
  const Eigen::MatrixXcd sqrt_rho =
      es_rho.eigenvectors() * sqrt_ev.asDiagonal() * es_rho.eigenvectors().adjoint();
  const Eigen::MatrixXcd inner = sqrt_rho * sigma * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es_inner(inner, Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (int i = 0; i < es_inner.eigenvalues().size(); ++i)
    sum += std::sqrt(clamp_eigenvalue(es_inner.eigenvalues()(i)));
  return sum * sum;
}

double uhlmann_fidelity(const QuantumState& a, const QuantumState& b) {
  if (a.space() != b.space())
    throw std::invalid_argument("uhlmann_fidelity: states live on different spaces");
  if (a.is_ket() && b.is_ket()) return std::norm(a.vector().dot(b.vector()));
  if (a.is_ket()) return fidelity_vs_pure(b, a.vector());
  if (b.is_ket()) return fidelity_vs_pure(a, b.vector());
  return uhlmann_fidelity(a.matrix(), b.matrix());
}

double fidelity_vs_pure(const QuantumState& state, const Eigen::VectorXcd& reference) {
  if (reference.size() != state.space().dim())
    throw std::invalid_argument("fidelity_vs_pure: reference length mismatch");
  if (state.is_ket()) return std::norm(reference.dot(state.vector()));
  return (reference.adjoint() * state.matrix() * reference)(0).real();
}

}  // namespace rydsta
