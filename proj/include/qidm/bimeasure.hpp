#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qidm/signed_measure.hpp"

namespace qidm {

// Signed bimeasure Q0 on A x B determined by its atom matrix:
// Q0(A,B) = sum over (t,x) in A x B of entries[t][x]. Marginal additivity in
// each argument is automatic from the atomwise definition.
template <class T>
struct Bimeasure {
  SpacePtr t_space;
  std::vector<std::string> x_atoms;
  std::vector<std::vector<T>> entries;  // [t][x]

  std::size_t x_size() const { return x_atoms.size(); }

  T rect(const RingMember& A, const std::vector<int>& B) const {
    T sum(0);
    for (int t : A.atom_set)
      for (int x : B) sum += entries[static_cast<std::size_t>(t)][static_cast<std::size_t>(x)];
    return sum;
  }
};

template <class T>
Bimeasure<T> make_bimeasure(SpacePtr t_space, std::vector<std::string> x_atoms,
                            std::vector<std::vector<T>> entries) {
  if (entries.size() != t_space->size())
    throw JsonSchemaError("bimeasure matrix row count does not match t-atoms");
  for (const auto& row : entries)
    if (row.size() != x_atoms.size())
      throw JsonSchemaError("bimeasure matrix column count does not match x-atoms");
  return Bimeasure<T>{std::move(t_space), std::move(x_atoms), std::move(entries)};
}

// The variation set function: supremum of sum |Q0(A_i,B_i)| over finite
// families of pairwise-disjoint rectangles inside A x X. Singleton rectangles
// attain it, so it equals the atomwise absolute sum.
template <class T>
T variation(const Bimeasure<T>& bm, const RingMember& A) {
  T sum(0);
  for (int t : A.atom_set)
    for (const T& e : bm.entries[static_cast<std::size_t>(t)]) sum += nabs(e);
  return sum;
}

template <class T>
struct VariationMeasure {
  FiniteSignedMeasure<T> nu;       // nonnegative, per t-atom
  std::vector<T> per_level_totals; // nu(T_n) along the localizing sequence
};

template <class T>
VariationMeasure<T> variation_measure(const Bimeasure<T>& bm) {
  VariationMeasure<T> out{zero_measure<T>(bm.t_space), {}};
  for (std::size_t t = 0; t < bm.t_space->size(); ++t) {
    T row(0);
    for (const T& e : bm.entries[t]) row += nabs(e);
    out.nu.weights[t] = row;
  }
  out.per_level_totals.reserve(bm.t_space->level_count());
  for (std::size_t k = 0; k < bm.t_space->level_count(); ++k) {
    T total(0);
    for (int t : bm.t_space->levels()[k]) total += out.nu.at(t);
    out.per_level_totals.push_back(total);
  }
  return out;
}

// One rectangle of a disjoint family, by atom indices.
struct RectWitness {
  std::vector<int> t_set;
  std::vector<int> x_set;
};

template <class T>
struct BruteForceVariation {
  T value{0};
  std::vector<RectWitness> witness;  // lexicographically first optimal family
  std::uint64_t families_enumerated = 0;
};

namespace detail {

inline std::vector<int> bits_of(std::uint32_t mask, const std::vector<int>& universe) {
  std::vector<int> out;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (mask & (1u << i)) out.push_back(universe[i]);
  return out;
}

}  // namespace detail

// Independent oracle for the variation: enumerates every family of
// pairwise-disjoint rectangles inside A x X and maximizes sum |Q0(A_i,B_i)|.
// Rectangles are ordered lexicographically by (t-mask, x-mask) and the DFS
// explores them in that order, so the reported witness is the
// lexicographically first family attaining the maximum.
template <class T>
BruteForceVariation<T> variation_bruteforce(const Bimeasure<T>& bm, const RingMember& A,
                                            int max_cells = 12) {
  const std::size_t nt = A.atom_set.size();
  const std::size_t nx = bm.x_size();
  if (static_cast<int>(nt * nx) > max_cells)
    throw InstanceTooLarge("variation_bruteforce: " + std::to_string(nt * nx) +
                           " cells exceeds max_cells=" + std::to_string(max_cells));

  BruteForceVariation<T> result;
  if (nt == 0 || nx == 0) {
    result.families_enumerated = 1;  // the empty family
    return result;
  }

  struct Rect {
    std::uint32_t t_mask, x_mask;
    std::uint64_t cells;  // occupancy over the nt*nx grid
    T value;
  };
  std::vector<Rect> rects;
  rects.reserve(((1u << nt) - 1) * ((1u << nx) - 1));
  for (std::uint32_t tm = 1; tm < (1u << nt); ++tm) {
    for (std::uint32_t xm = 1; xm < (1u << nx); ++xm) {
      T v(0);
      std::uint64_t cells = 0;
      for (std::size_t i = 0; i < nt; ++i) {
        if (!(tm & (1u << i))) continue;
        const auto& row = bm.entries[static_cast<std::size_t>(A.atom_set[i])];
        for (std::size_t j = 0; j < nx; ++j) {
          if (!(xm & (1u << j))) continue;
          v += row[j];
          cells |= std::uint64_t(1) << (i * nx + j);
        }
      }
      rects.push_back(Rect{tm, xm, cells, nabs(v)});
    }
  }

  // Remaining-cell bound for pruning: from rectangle index k on, the family
  // total cannot exceed current + sum of |entry| over still-free cells.
  std::vector<T> cell_abs(nt * nx);
  for (std::size_t i = 0; i < nt; ++i)
    for (std::size_t j = 0; j < nx; ++j)
      cell_abs[i * nx + j] =
          nabs(bm.entries[static_cast<std::size_t>(A.atom_set[i])][j]);

  T best(0);
  std::vector<std::size_t> current, best_family;
  std::uint64_t count = 1;  // counts the empty family

  auto free_bound = [&](std::uint64_t used) {
    T bound(0);
    for (std::size_t c = 0; c < nt * nx; ++c)
      if (!(used & (std::uint64_t(1) << c))) bound += cell_abs[c];
    return bound;
  };

  // DFS over rectangles in lexicographic order; at each step either take the
  // next compatible rectangle or skip it. Strict pruning only, so the first
  // family reaching the maximum in visit order is never skipped.
  auto dfs = [&](auto&& self, std::size_t from, std::uint64_t used, const T& acc) -> void {
    if (acc > best) {
      best = acc;
      best_family = current;
    }
    if (acc + free_bound(used) < best) return;
    for (std::size_t k = from; k < rects.size(); ++k) {
      if (rects[k].cells & used) continue;
      current.push_back(k);
      ++count;
      self(self, k + 1, used | rects[k].cells, acc + rects[k].value);
      current.pop_back();
    }
  };
  dfs(dfs, 0, 0, T(0));

  result.value = best;
  result.families_enumerated = count;
  std::vector<int> x_universe(nx);
  for (std::size_t j = 0; j < nx; ++j) x_universe[j] = static_cast<int>(j);
  for (std::size_t k : best_family)
    result.witness.push_back(RectWitness{detail::bits_of(rects[k].t_mask, A.atom_set),
                                         detail::bits_of(rects[k].x_mask, x_universe)});
  return result;
}

// Sub-Markovian kernel table. Rows exist only where nu({t}) > 0; evaluation
// on omitted rows is 0, the canonical representative of the nu-a.e. class.
template <class T>
struct KernelTable {
  std::vector<char> has_row;            // per t-atom
  std::vector<std::vector<T>> q_plus;   // [t][x], nonnegative
  std::vector<std::vector<T>> q_minus;  // [t][x], nonnegative

  T q(int t, int x) const {
    const auto ti = static_cast<std::size_t>(t);
    if (!has_row[ti]) return T(0);
    return q_plus[ti][static_cast<std::size_t>(x)] - q_minus[ti][static_cast<std::size_t>(x)];
  }

  T q_set(int t, const std::vector<int>& B) const {
    T sum(0);
    for (int x : B) sum += q(t, x);
    return sum;
  }

  T row_mass(int t) const {  // sum_x (q+ + q-)(t,x)
    const auto ti = static_cast<std::size_t>(t);
    if (!has_row[ti]) return T(0);
    T sum(0);
    for (std::size_t j = 0; j < q_plus[ti].size(); ++j)
      sum += q_plus[ti][j] + q_minus[ti][j];
    return sum;
  }
};

template <class T>
struct DisintegrationResult {
  Bimeasure<T> source;
  VariationMeasure<T> nu;
  KernelTable<T> kernel;

  // Q(A x B) = sum_{t in A} q(t,B) nu({t})
  T reconstruct(const RingMember& A, const std::vector<int>& B) const {
    T sum(0);
    for (int t : A.atom_set) sum += kernel.q_set(t, B) * nu.nu.at(t);
    return sum;
  }

  // The extensions evaluated on an arbitrary subset C of the product space.
  T q_plus_mass(const std::vector<std::pair<int, int>>& C) const {
    T sum(0);
    for (const auto& [t, x] : C) {
      const auto ti = static_cast<std::size_t>(t);
      if (kernel.has_row[ti]) sum += kernel.q_plus[ti][static_cast<std::size_t>(x)] * nu.nu.at(t);
    }
    return sum;
  }
  T q_minus_mass(const std::vector<std::pair<int, int>>& C) const {
    T sum(0);
    for (const auto& [t, x] : C) {
      const auto ti = static_cast<std::size_t>(t);
      if (kernel.has_row[ti]) sum += kernel.q_minus[ti][static_cast<std::size_t>(x)] * nu.nu.at(t);
    }
    return sum;
  }
  T q_signed_mass(const std::vector<std::pair<int, int>>& C) const {
    return q_plus_mass(C) - q_minus_mass(C);
  }
};

// Extension-and-kernel construction: nu from the variation, kernel rows
// q(t,{x}) = entry(t,x)/nu({t}) on nu-positive rows, Jordan-split per row.
template <class T>
DisintegrationResult<T> disintegrate(const Bimeasure<T>& bm) {
  DisintegrationResult<T> out{bm, variation_measure(bm), {}};
  const std::size_t nt = bm.t_space->size();
  const std::size_t nx = bm.x_size();
  out.kernel.has_row.assign(nt, 0);
  out.kernel.q_plus.assign(nt, std::vector<T>(nx, T(0)));
  out.kernel.q_minus.assign(nt, std::vector<T>(nx, T(0)));
  for (std::size_t t = 0; t < nt; ++t) {
    const T& mass = out.nu.nu.weights[t];
    if (is_zero(mass)) continue;
    out.kernel.has_row[t] = 1;
    for (std::size_t x = 0; x < nx; ++x) {
      const T q = bm.entries[t][x] / mass;
      if (q > T(0))
        out.kernel.q_plus[t][x] = q;
      else if (q < T(0))
        out.kernel.q_minus[t][x] = -q;
    }
  }
  return out;
}

template <class T>
struct UniquenessReport {
  std::vector<int> differing_atoms;
  T nu_mass_of_difference{0};
  bool agrees_nu_ae = false;
};

// Checks an alternative kernel against the canonical one. The alternative
// must itself be a sub-Markovian kernel reproducing Q0; any admissible
// alternative can differ only on nu-null atoms.
template <class T>
UniquenessReport<T> kernel_uniqueness_check(const DisintegrationResult<T>& dis,
                                            const KernelTable<T>& alt, double tol = 1e-9) {
  const auto& bm = dis.source;
  const std::size_t nt = bm.t_space->size();
  const std::size_t nx = bm.x_size();
  if (alt.has_row.size() != nt || alt.q_plus.size() != nt || alt.q_minus.size() != nt)
    throw NotAKernelError("alternative kernel table has wrong shape");

  for (std::size_t t = 0; t < nt; ++t) {
    if (!alt.has_row[t]) continue;
    if (alt.q_plus[t].size() != nx || alt.q_minus[t].size() != nx)
      throw NotAKernelError("alternative kernel row has wrong width");
    T mass(0);
    for (std::size_t x = 0; x < nx; ++x) {
      const T& p = alt.q_plus[t][x];
      const T& m = alt.q_minus[t][x];
      if (p < T(0) || m < T(0))
        throw NotAKernelError("alternative kernel has a negative part entry at t='" +
                              bm.t_space->atom_name(static_cast<int>(t)) + "'");
      if (!is_zero(p) && !is_zero(m))
        throw NotAKernelError("alternative kernel row parts are not mutually singular at t='" +
                              bm.t_space->atom_name(static_cast<int>(t)) + "'");
      mass += p + m;
    }
    const bool over = backend<T>::exact ? mass > T(1) : to_double(mass) > 1.0 + tol;
    if (over)
      throw NotAKernelError("alternative kernel row mass exceeds 1 at t='" +
                            bm.t_space->atom_name(static_cast<int>(t)) + "'");
  }

  // Reconstruction on singleton rectangles pins the kernel on nu-positive
  // atoms; additivity extends the identity to every rectangle.
  for (std::size_t t = 0; t < nt; ++t) {
    const T scale = dis.nu.nu.weights[t];
    for (std::size_t x = 0; x < nx; ++x) {
      const T alt_q = alt.has_row[t]
                          ? alt.q_plus[t][x] - alt.q_minus[t][x]
                          : T(0);
      const T lhs = alt_q * scale;
      if (!scalar_eq(lhs, bm.entries[t][x], tol))
        throw NotAKernelError("alternative kernel fails rectangle reconstruction at (t='" +
                              bm.t_space->atom_name(static_cast<int>(t)) + "', x='" +
                              bm.x_atoms[x] + "')");
    }
  }

  UniquenessReport<T> report;
  for (std::size_t t = 0; t < nt; ++t) {
    bool differs = false;
    if (alt.has_row[t] != dis.kernel.has_row[t]) {
      // Presence mismatch counts as a difference only if some value differs.
      for (std::size_t x = 0; x < nx && !differs; ++x)
        differs = !scalar_eq(alt.has_row[t] ? alt.q_plus[t][x] - alt.q_minus[t][x] : T(0),
                             dis.kernel.q(static_cast<int>(t), static_cast<int>(x)), tol);
    } else if (alt.has_row[t]) {
      for (std::size_t x = 0; x < nx && !differs; ++x)
        differs = !scalar_eq(alt.q_plus[t][x] - alt.q_minus[t][x],
                             dis.kernel.q(static_cast<int>(t), static_cast<int>(x)), tol);
    }
    if (differs) {
      report.differing_atoms.push_back(static_cast<int>(t));
      report.nu_mass_of_difference += dis.nu.nu.weights[t];
    }
  }
  report.agrees_nu_ae = is_zero(report.nu_mass_of_difference);
  return report;
}

template <class T>
struct NecessityEntry {
  std::size_t index = 0;
  T variation_value{0};
  std::vector<RectWitness> witness;  // singleton family attaining the value
};

template <class T>
struct NecessityReport {
  std::vector<NecessityEntry<T>> entries;
  bool strictly_increasing = false;
  std::string statement;
};

// Diagnoses a parameterized family: if the variation on A grows strictly
// along the family, no finite signed measure on the product can dominate all
// rectangle sums. The witness family is the set of nonzero singleton
// rectangles, which attains the variation.
template <class T>
NecessityReport<T> necessity_witness(const std::vector<Bimeasure<T>>& family,
                                     const RingMember& A) {
  NecessityReport<T> report;
  for (std::size_t i = 0; i < family.size(); ++i) {
    NecessityEntry<T> e;
    e.index = i;
    e.variation_value = variation(family[i], A);
    for (int t : A.atom_set)
      for (std::size_t x = 0; x < family[i].x_size(); ++x)
        if (!is_zero(family[i].entries[static_cast<std::size_t>(t)][x]))
          e.witness.push_back(RectWitness{{t}, {static_cast<int>(x)}});
    report.entries.push_back(std::move(e));
  }
  report.strictly_increasing = family.size() >= 2;
  for (std::size_t i = 1; i < report.entries.size(); ++i)
    if (!(report.entries[i - 1].variation_value < report.entries[i].variation_value))
      report.strictly_increasing = false;
  report.statement =
      report.strictly_increasing
          ? "variation grows strictly along the family; the boundedness condition fails in the limit"
          : "variation stays bounded over the family; the boundedness condition holds";
  return report;
}

}  // namespace qidm
