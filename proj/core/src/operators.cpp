#include "rydsta/operators.hpp"

#include <stdexcept>

namespace rydsta {

bool Operator::is_hermitian(double tol) const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator Operator::dagger() const { return {space, matrix.adjoint()}; }

Eigen::MatrixXcd level_projector(const HilbertSpace& space, int atom,
                                 const std::string& ket_label, const std::string& bra_label) {
  const int d = space.atom_dim(atom);
  Eigen::MatrixXcd local = Eigen::MatrixXcd::Zero(d, d);
  local(space.level_index(atom, ket_label), space.level_index(atom, bra_label)) = 1.0;
  return local;
}

Operator tensor_embed(const HilbertSpace& space, int atom, const Eigen::MatrixXcd& local) {
  const int d = space.atom_dim(atom);
  if (local.rows() != d || local.cols() != d)
    throw std::invalid_argument("tensor_embed: local operator does not match atom dimension");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  for (int j = 0; j < space.dim(); ++j) {
    const int lj = space.level_of(j, atom);
    for (int a = 0; a < d; ++a) {
      const std::complex<double> v = local(a, lj);
      if (v != 0.0) out(space.with_level(j, atom, a), j) = v;
    }
  }
  return {space, std::move(out)};
}

Operator transition(const HilbertSpace& space, int atom, const std::string& ket_label,
                    const std::string& bra_label) {
  return tensor_embed(space, atom, level_projector(space, atom, ket_label, bra_label));
}

Operator basis_projector(const HilbertSpace& space, int index) {
  if (index < 0 || index >= space.dim())
    throw std::out_of_range("basis_projector: index out of range");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  m(index, index) = 1.0;
  return {space, std::move(m)};
}

}  // namespace rydsta
