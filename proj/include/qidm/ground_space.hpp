#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "qidm/errors.hpp"

namespace qidm {

// Finite ground set with a localizing sequence T_1 ⊆ T_2 ⊆ ... ⊆ T_K whose
// union is the whole atom list. The delta-ring it generates is the family of
// subsets contained in some level.
class GroundSpace {
 public:
  GroundSpace(std::vector<std::string> atoms, std::vector<std::vector<int>> levels)
      : atoms_(std::move(atoms)), levels_(std::move(levels)) {
    validate();
  }

  std::size_t size() const { return atoms_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::string& atom_name(int i) const { return atoms_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::vector<int>>& levels() const { return levels_; }
  std::size_t level_count() const { return levels_.size(); }

  int atom_index(const std::string& name) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i] == name) return static_cast<int>(i);
    throw JsonSchemaError("unknown atom '" + name + "'");
  }

  bool level_contains(std::size_t level, int atom) const {
    const auto& l = levels_[level];
    return std::binary_search(l.begin(), l.end(), atom);
  }

 private:
  void validate() {
    if (atoms_.empty()) throw JsonSchemaError("ground space needs at least one atom");
    if (levels_.empty()) throw JsonSchemaError("ground space needs at least one level");
    const int n = static_cast<int>(atoms_.size());
    for (auto& level : levels_) {
      std::sort(level.begin(), level.end());
      level.erase(std::unique(level.begin(), level.end()), level.end());
      for (int a : level)
        if (a < 0 || a >= n) throw JsonSchemaError("level atom index out of range");
    }
    for (std::size_t k = 1; k < levels_.size(); ++k) {
      if (!std::includes(levels_[k].begin(), levels_[k].end(),
                         levels_[k - 1].begin(), levels_[k - 1].end()))
        throw JsonSchemaError("levels must be nondecreasing under inclusion");
    }
    if (static_cast<int>(levels_.back().size()) != n)
      throw JsonSchemaError("every atom must appear in some level");
  }

  std::vector<std::string> atoms_;
  std::vector<std::vector<int>> levels_;
};

using SpacePtr = std::shared_ptr<const GroundSpace>;

inline SpacePtr make_space(std::vector<std::string> atoms,
                           std::vector<std::vector<int>> levels) {
  return std::make_shared<const GroundSpace>(std::move(atoms), std::move(levels));
}

// Convenience: one level holding every atom.
inline SpacePtr make_space(std::vector<std::string> atoms) {
  std::vector<int> all(atoms.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return make_space(std::move(atoms), {all});
}

// A member of the localized ring: a subset of atoms together with the
// smallest level containing it.
struct RingMember {
  SpacePtr space;
  std::vector<int> atom_set;  // sorted, unique
  int level_bound = 0;

  bool contains(int atom) const {
    return std::binary_search(atom_set.begin(), atom_set.end(), atom);
  }
  std::size_t size() const { return atom_set.size(); }
  bool empty() const { return atom_set.empty(); }
};

inline RingMember make_member(SpacePtr space, std::vector<int> atom_set) {
  std::sort(atom_set.begin(), atom_set.end());
  atom_set.erase(std::unique(atom_set.begin(), atom_set.end()), atom_set.end());
  const int n = static_cast<int>(space->size());
  for (int a : atom_set)
    if (a < 0 || a >= n) throw JsonSchemaError("member atom index out of range");
  int bound = -1;
  for (std::size_t k = 0; k < space->level_count(); ++k) {
    const auto& level = space->levels()[k];
    if (std::includes(level.begin(), level.end(), atom_set.begin(), atom_set.end())) {
      bound = static_cast<int>(k);
      break;
    }
  }
  if (bound < 0) throw JsonSchemaError("set is not contained in any level");
  return RingMember{std::move(space), std::move(atom_set), bound};
}

inline RingMember level_member(SpacePtr space, std::size_t level) {
  return make_member(space, space->levels().at(level));
}

inline RingMember full_member(SpacePtr space) {
  return level_member(space, space->level_count() - 1);
}

inline RingMember empty_member(SpacePtr space) { return make_member(space, {}); }

inline bool is_subset(const RingMember& a, const RingMember& b) {
  return std::includes(b.atom_set.begin(), b.atom_set.end(),
                       a.atom_set.begin(), a.atom_set.end());
}

inline RingMember intersect(const RingMember& a, const RingMember& b) {
  std::vector<int> out;
  std::set_intersection(a.atom_set.begin(), a.atom_set.end(),
                        b.atom_set.begin(), b.atom_set.end(), std::back_inserter(out));
  return make_member(a.space, std::move(out));
}

inline RingMember member_union(const RingMember& a, const RingMember& b) {
  std::vector<int> out;
  std::set_union(a.atom_set.begin(), a.atom_set.end(),
                 b.atom_set.begin(), b.atom_set.end(), std::back_inserter(out));
  return make_member(a.space, std::move(out));
}

inline RingMember member_minus(const RingMember& a, const RingMember& b) {
  std::vector<int> out;
  std::set_difference(a.atom_set.begin(), a.atom_set.end(),
                      b.atom_set.begin(), b.atom_set.end(), std::back_inserter(out));
  return make_member(a.space, std::move(out));
}

inline std::string member_to_string(const RingMember& m) {
  std::string s = "{";
  for (std::size_t i = 0; i < m.atom_set.size(); ++i) {
    if (i) s += ",";
    s += m.space->atom_name(m.atom_set[i]);
  }
  s += "}";
  return s;
}

}  // namespace qidm
