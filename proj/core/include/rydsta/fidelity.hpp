#pragma once

#include <Eigen/Dense>

#include "rydsta/state.hpp"

namespace rydsta {

// Uhlmann fidelity F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
// Hermitian eigendecompositions; eigenvalues in [-1e-8, 0) are clamped to 0,
// more negative ones raise std::domain_error. Kets are promoted to projectors.
double uhlmann_fidelity(const QuantumState& a, const QuantumState& b);
double uhlmann_fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma);

// Fast path used by reports: fidelity of a state against a pure reference.
double fidelity_vs_pure(const QuantumState& state, const Eigen::VectorXcd& reference);

}  // namespace rydsta
