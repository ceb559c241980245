#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rydsta/hilbert.hpp"

namespace rydsta {

struct StateTolerances {
  double norm = 1e-9;       // |norm - 1| for kets
  double hermiticity = 1e-9;
  double trace = 1e-8;      // |tr - 1| for density matrices
  double negativity = 1e-8; // eigenvalues >= -negativity
  bool check_spectrum = true;

  static StateTolerances relaxed(double scale);
};

// Pure ket or density matrix on a HilbertSpace. Validated on construction.
class QuantumState {
public:
  static QuantumState ket(HilbertSpace space, Eigen::VectorXcd psi,
                          const StateTolerances& tol = {});
  static QuantumState density(HilbertSpace space, Eigen::MatrixXcd rho,
                              const StateTolerances& tol = {});
  static QuantumState basis_ket(const HilbertSpace& space, const std::vector<std::string>& labels);

  bool is_ket() const { return is_ket_; }
  const HilbertSpace& space() const { return space_; }
  const Eigen::VectorXcd& vector() const;
  const Eigen::MatrixXcd& matrix() const;

  // density-matrix view regardless of representation
  Eigen::MatrixXcd to_density() const;

  double norm_or_trace() const;

private:
  QuantumState() = default;
  HilbertSpace space_;
  bool is_ket_ = true;
  Eigen::VectorXcd psi_;
  Eigen::MatrixXcd rho_;
};

// Probability of finding the register at the given basis configuration.
double population(const QuantumState& state, const std::vector<std::string>& labels);
double population(const QuantumState& state, int basis_index);

}  // namespace rydsta
