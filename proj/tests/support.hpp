#pragma once

// Shared test fixtures: seeded generators for measures, bimeasures and
// models, plus the independent brute-force oracles the suites check against.

#include <string>
#include <vector>

#include "qidm/bimeasure.hpp"
#include "qidm/random_measure.hpp"
#include "qidm/rng.hpp"
#include "qidm/signed_measure.hpp"
#include "qidm/stochastic_integral.hpp"

namespace qidm::test {

inline Rational random_rational(SeededRng& rng, long long max_abs = 9) {
  const long long den = rng.uniform_int(1, 9);
  const long long num = rng.uniform_int(-max_abs * den, max_abs * den);
  return Rational(num, den);
}

template <class T>
T random_weight(SeededRng& rng, long long max_abs = 9);

template <>
inline Rational random_weight<Rational>(SeededRng& rng, long long max_abs) {
  return random_rational(rng, max_abs);
}
template <>
inline double random_weight<double>(SeededRng& rng, long long max_abs) {
  return (2.0 * rng.uniform() - 1.0) * static_cast<double>(max_abs);
}

inline std::vector<std::string> atom_names(std::size_t n, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

// Space with a two-step localizing sequence when it has more than one atom.
inline SpacePtr random_space(SeededRng& rng, std::size_t max_atoms,
                             const std::string& prefix = "t") {
  const auto n = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long long>(max_atoms)));
  std::vector<int> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
  if (n == 1) return make_space(atom_names(n, prefix), {all});
  const auto cut = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long long>(n) - 1));
  std::vector<int> first(all.begin(), all.begin() + static_cast<long>(cut));
  return make_space(atom_names(n, prefix), {first, all});
}

template <class T>
FiniteSignedMeasure<T> random_measure(const SpacePtr& space, SeededRng& rng,
                                      long long max_abs = 9) {
  auto mu = zero_measure<T>(space);
  for (auto& w : mu.weights) w = random_weight<T>(rng, max_abs);
  return mu;
}

template <class T>
Bimeasure<T> random_bimeasure(SeededRng& rng, std::size_t max_t, std::size_t max_x,
                              long long max_abs = 9) {
  const SpacePtr space = random_space(rng, max_t);
  const auto nx = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long long>(max_x)));
  std::vector<std::vector<T>> entries(space->size(), std::vector<T>(nx));
  for (auto& row : entries)
    for (auto& e : row) e = random_weight<T>(rng, max_abs);
  return make_bimeasure<T>(space, atom_names(nx, "x"), std::move(entries));
}

inline std::vector<std::vector<int>> all_subsets(const std::vector<int>& universe) {
  std::vector<std::vector<int>> out;
  const std::size_t n = universe.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(universe[i]);
    out.push_back(std::move(s));
  }
  return out;
}

// Oracle: total variation as the max over all set partitions of A of
// sum_j |mu(A_j)|, enumerated exhaustively.
template <class T>
T partition_supremum_oracle(const FiniteSignedMeasure<T>& mu, const RingMember& A) {
  const auto& atoms = A.atom_set;
  T best(0);
  std::vector<std::vector<int>> blocks;
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == atoms.size()) {
      T sum(0);
      for (const auto& block : blocks) {
        T value(0);
        for (int t : block) value += mu.at(t);
        sum += nabs(value);
      }
      if (sum > best) best = sum;
      return;
    }
    // Index loop: deeper calls push/pop on blocks and may reallocate it.
    const std::size_t open = blocks.size();
    for (std::size_t b = 0; b < open; ++b) {
      blocks[b].push_back(atoms[i]);
      self(self, i + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({atoms[i]});
    self(self, i + 1);
    blocks.pop_back();
  };
  recurse(recurse, 0);
  return best;
}

// Oracle: Hahn decomposition by exhaustive search over support splits.
// Minimizes the overlap mass; at the optimum the split induces the Jordan
// pair (positive part supported inside P, negative outside).
template <class T>
JordanPair<T> hahn_search_oracle(const FiniteSignedMeasure<T>& mu) {
  const std::size_t n = mu.weights.size();
  T best_overlap(0);
  std::uint32_t best_mask = 0;
  bool first = true;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    // Overlap = negative mass caught inside P plus positive mass outside.
    T overlap(0);
    for (std::size_t i = 0; i < n; ++i) {
      const T& w = mu.weights[i];
      if (mask & (1u << i)) {
        if (w < T(0)) overlap += -w;
      } else {
        if (w > T(0)) overlap += w;
      }
    }
    if (first || overlap < best_overlap) {
      best_overlap = overlap;
      best_mask = mask;
      first = false;
    }
  }
  JordanPair<T> out{zero_measure<T>(mu.space), zero_measure<T>(mu.space)};
  for (std::size_t i = 0; i < n; ++i) {
    if (best_mask & (1u << i))
      out.positive.weights[i] = mu.weights[i];
    else
      out.negative.weights[i] = -mu.weights[i];
  }
  return out;
}

// Random model whose signed mass stays mild so float-mode cf comparisons keep
// headroom; rational mode is exact regardless.
template <class T>
RandomMeasureModel<T> random_model(SeededRng& rng, std::size_t max_atoms = 4,
                                   std::size_t max_grid = 4) {
  const SpacePtr space = random_space(rng, max_atoms, "s");
  auto nu0 = zero_measure<T>(space);
  auto nu1 = zero_measure<T>(space);
  for (std::size_t t = 0; t < space->size(); ++t) {
    nu0.weights[t] = random_weight<T>(rng, 2);
    const T v = random_weight<T>(rng, 2);
    nu1.weights[t] = nabs(v);
  }
  const auto ng = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long long>(max_grid)));
  std::vector<T> grid;
  std::vector<long long> sites;
  while (grid.size() < ng) {
    long long x = rng.uniform_int(-3, 3);
    if (x == 0) continue;
    bool dup = false;
    for (long long s : sites) dup = dup || s == x;
    if (dup) continue;
    sites.push_back(x);
    grid.push_back(T(x));
  }
  std::sort(grid.begin(), grid.end());
  std::vector<std::vector<T>> masses(space->size(), std::vector<T>(grid.size(), T(0)));
  for (auto& row : masses)
    for (auto& m : row) {
      m = random_weight<T>(rng, 1);
      m = m / T(4);  // keep |mass| <= 1/4 per cell
    }
  return make_model<T>(space, std::move(nu0), std::move(nu1), std::move(grid),
                       std::move(masses));
}

template <class T>
StepFunction<T> random_step_function(const SpacePtr& space, SeededRng& rng,
                                     long long max_abs = 2) {
  std::vector<T> values(space->size(), T(0));
  for (auto& v : values)
    if (rng.coin()) v = random_weight<T>(rng, max_abs);
  return step_from_values(space, values);
}

}  // namespace qidm::test
