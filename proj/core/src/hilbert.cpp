#include "rydsta/hilbert.hpp"

#include <set>
#include <stdexcept>

namespace rydsta {

namespace {

std::out_of_range bad_atom(int atom, int count) {
  return std::out_of_range("atom index " + std::to_string(atom) + " out of range [0, " +
                           std::to_string(count) + ")");
}

}  // namespace

HilbertSpace::HilbertSpace(std::vector<std::vector<std::string>> atom_levels)
    : levels_(std::move(atom_levels)) {
  if (levels_.empty()) throw std::invalid_argument("HilbertSpace: no atoms");
  for (const auto& lv : levels_) {
    if (lv.empty()) throw std::invalid_argument("HilbertSpace: atom with no levels");
    std::set<std::string> uniq(lv.begin(), lv.end());
    if (uniq.size() != lv.size())
      throw std::invalid_argument("HilbertSpace: duplicate level label on one atom");
  }
  strides_.assign(levels_.size(), 1);
  long long d = 1;
  for (int a = static_cast<int>(levels_.size()) - 1; a >= 0; --a) {
    strides_[a] = static_cast<int>(d);
    d *= static_cast<long long>(levels_[a].size());
    if (d > (1 << 26)) throw std::invalid_argument("HilbertSpace: dimension too large");
  }
  dim_ = static_cast<int>(d);
}

HilbertSpace HilbertSpace::rydberg_register(int n_atoms) {
  if (n_atoms < 2) throw std::invalid_argument("rydberg_register: need at least 2 atoms");
  std::vector<std::vector<std::string>> levels;
  levels.reserve(n_atoms);
  for (int i = 0; i < n_atoms - 1; ++i) levels.push_back({"0", "1", "r"});
  levels.push_back({"0", "1", "m", "r"});
  return HilbertSpace(std::move(levels));
}

int HilbertSpace::atom_dim(int atom) const {
  if (atom < 0 || atom >= atom_count()) throw bad_atom(atom, atom_count());
  return static_cast<int>(levels_[atom].size());
}

const std::vector<std::string>& HilbertSpace::levels(int atom) const {
  if (atom < 0 || atom >= atom_count()) throw bad_atom(atom, atom_count());
  return levels_[atom];
}

int HilbertSpace::level_index(int atom, const std::string& label) const {
  const auto& lv = levels(atom);
  for (int i = 0; i < static_cast<int>(lv.size()); ++i)
    if (lv[i] == label) return i;
  throw std::out_of_range("level label '" + label + "' not defined on atom " +
                          std::to_string(atom));
}

const std::string& HilbertSpace::level_label(int atom, int level) const {
  const auto& lv = levels(atom);
  if (level < 0 || level >= static_cast<int>(lv.size()))
    throw std::out_of_range("level index " + std::to_string(level) + " out of range on atom " +
                            std::to_string(atom));
  return lv[level];
}

int HilbertSpace::index_of(const std::vector<int>& levels) const {
  if (static_cast<int>(levels.size()) != atom_count())
    throw std::invalid_argument("index_of: need one level per atom");
  int idx = 0;
  for (int a = 0; a < atom_count(); ++a) {
    if (levels[a] < 0 || levels[a] >= atom_dim(a))
      throw std::out_of_range("index_of: level out of range on atom " + std::to_string(a));
    idx += levels[a] * strides_[a];
  }
  return idx;
}

int HilbertSpace::index_of_labels(const std::vector<std::string>& labels) const {
  if (static_cast<int>(labels.size()) != atom_count())
    throw std::invalid_argument("index_of_labels: need one label per atom");
  std::vector<int> lv(labels.size());
  for (int a = 0; a < atom_count(); ++a) lv[a] = level_index(a, labels[a]);
  return index_of(lv);
}

std::vector<int> HilbertSpace::levels_of(int index) const {
  if (index < 0 || index >= dim_) throw std::out_of_range("levels_of: basis index out of range");
  std::vector<int> lv(atom_count());
  for (int a = 0; a < atom_count(); ++a) lv[a] = (index / strides_[a]) % atom_dim(a);
  return lv;
}

std::vector<std::string> HilbertSpace::labels_of(int index) const {
  const auto lv = levels_of(index);
  std::vector<std::string> labels(lv.size());
  for (int a = 0; a < atom_count(); ++a) labels[a] = levels_[a][lv[a]];
  return labels;
}

std::string HilbertSpace::basis_label(int index) const {
  std::string out;
  for (const auto& lab : labels_of(index)) out += lab;
  return out;
}

int HilbertSpace::level_of(int index, int atom) const {
  if (index < 0 || index >= dim_) throw std::out_of_range("level_of: basis index out of range");
  if (atom < 0 || atom >= atom_count()) throw bad_atom(atom, atom_count());
  return (index / strides_[atom]) % atom_dim(atom);
}

int HilbertSpace::with_level(int index, int atom, int level) const {
  if (level < 0 || level >= atom_dim(atom))
    throw std::out_of_range("with_level: level out of range on atom " + std::to_string(atom));
  const int old = level_of(index, atom);
  return index + (level - old) * strides_[atom];
}

}  // namespace rydsta
