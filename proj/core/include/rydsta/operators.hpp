#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "rydsta/hilbert.hpp"

namespace rydsta {

// Dense operator tagged with its space. Hermiticity is tracked, not assumed.
struct Operator {
  HilbertSpace space;
  Eigen::MatrixXcd matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
  bool is_hermitian(double tol = 1e-10) const;
  Operator dagger() const;
};

// Single-atom matrix |a><b| on the atom's local space.
Eigen::MatrixXcd level_projector(const HilbertSpace& space, int atom,
                                 const std::string& ket_label, const std::string& bra_label);

// Embed a local operator acting on one atom into the full register space:
// identity on every other atom. local must be atom_dim x atom_dim.
Operator tensor_embed(const HilbertSpace& space, int atom, const Eigen::MatrixXcd& local);

// Convenience: embedded |a><b| on the full space.
Operator transition(const HilbertSpace& space, int atom,
                    const std::string& ket_label, const std::string& bra_label);

// Projector |index><index| on the full space.
Operator basis_projector(const HilbertSpace& space, int index);

}  // namespace rydsta
