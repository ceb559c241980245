#include "rydsta/state.hpp"

#include <cmath>
#include <stdexcept>

namespace rydsta {

StateTolerances StateTolerances::relaxed(double scale) {
  if (scale < 1.0) throw std::invalid_argument("StateTolerances::relaxed: scale must be >= 1");
  StateTolerances t;
  t.norm *= scale;
  t.hermiticity *= scale;
  t.trace *= scale;
  t.negativity *= scale;
  return t;
}

QuantumState QuantumState::ket(HilbertSpace space, Eigen::VectorXcd psi,
                               const StateTolerances& tol) {
  if (psi.size() != space.dim())
    throw std::invalid_argument("QuantumState::ket: vector length does not match space");
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > tol.norm)
    throw std::invalid_argument("QuantumState::ket: norm deviates from 1 by " +
                                std::to_string(std::abs(norm - 1.0)));
  QuantumState s;
  s.space_ = std::move(space);
  s.is_ket_ = true;
  s.psi_ = std::move(psi);
  return s;
}

QuantumState QuantumState::density(HilbertSpace space, Eigen::MatrixXcd rho,
                                   const StateTolerances& tol) {
  if (rho.rows() != space.dim() || rho.cols() != space.dim())
    throw std::invalid_argument("QuantumState::density: matrix shape does not match space");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermiticity)
    throw std::invalid_argument("QuantumState::density: Hermiticity violated by " +
                                std::to_string(herm));
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > tol.trace)
    throw std::invalid_argument("QuantumState::density: trace deviates from 1 by " +
                                std::to_string(std::abs(tr - 1.0)));
  if (tol.check_spectrum) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    const double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < -tol.negativity)
      throw std::invalid_argument("QuantumState::density: negative eigenvalue " +
                                  std::to_string(min_ev));
  }
  QuantumState s;
  s.space_ = std::move(space);
  s.is_ket_ = false;
  s.rho_ = std::move(rho);
  return s;
}

QuantumState QuantumState::basis_ket(const HilbertSpace& space,
                                     const std::vector<std::string>& labels) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(space.dim());
  psi(space.index_of_labels(labels)) = 1.0;
  return ket(space, std::move(psi));
}

const Eigen::VectorXcd& QuantumState::vector() const {
  if (!is_ket_) throw std::logic_error("QuantumState::vector: state is a density matrix");
  return psi_;
}

const Eigen::MatrixXcd& QuantumState::matrix() const {
  if (is_ket_) throw std::logic_error("QuantumState::matrix: state is a ket");
  return rho_;
}

Eigen::MatrixXcd QuantumState::to_density() const {
  if (is_ket_) return psi_ * psi_.adjoint();
  return rho_;
}

double QuantumState::norm_or_trace() const {
  if (is_ket_) return psi_.norm();
  return rho_.trace().real();
}

double population(const QuantumState& state, const std::vector<std::string>& labels) {
  return population(state, state.space().index_of_labels(labels));
}

double population(const QuantumState& state, int basis_index) {
  if (basis_index < 0 || basis_index >= state.space().dim())
    throw std::out_of_range("population: basis index out of range");
  if (state.is_ket()) return std::norm(state.vector()(basis_index));
  return state.matrix()(basis_index, basis_index).real();
}

}  // namespace rydsta
