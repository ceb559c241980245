#pragma once

#include <string>
#include <vector>

namespace rydsta {

// Tensor-product space of a register of multi-level atoms.
// Basis ordering is lexicographic with the first atom most significant:
// index = ((l0*d1 + l1)*d2 + l2)*... for per-atom level indices l_i.
class HilbertSpace {
public:
  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<std::vector<std::string>> atom_levels);

  // n-1 control atoms {0,1,r} followed by one target atom {0,1,m,r}.
  static HilbertSpace rydberg_register(int n_atoms);

  int atom_count() const { return static_cast<int>(levels_.size()); }
  int atom_dim(int atom) const;
  int dim() const { return dim_; }

  const std::vector<std::string>& levels(int atom) const;

  // level label <-> per-atom level index
  int level_index(int atom, const std::string& label) const;
  const std::string& level_label(int atom, int level) const;

  // basis index <-> per-atom level indices / labels
  int index_of(const std::vector<int>& levels) const;
  int index_of_labels(const std::vector<std::string>& labels) const;
  std::vector<int> levels_of(int index) const;
  std::vector<std::string> labels_of(int index) const;
  std::string basis_label(int index) const;  // e.g. "1m0"

  // index arithmetic helpers
  int stride(int atom) const { return strides_[atom]; }
  int level_of(int index, int atom) const;
  int with_level(int index, int atom, int level) const;

  bool operator==(const HilbertSpace& o) const { return levels_ == o.levels_; }
  bool operator!=(const HilbertSpace& o) const { return !(*this == o); }

private:
  std::vector<std::vector<std::string>> levels_;
  std::vector<int> strides_;
  int dim_ = 0;
};

}  // namespace rydsta
