#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "qidm/numeric.hpp"

namespace qidm {

// Signed atom list on R \ {0} with finite (1 ∧ x²)-weighted total variation
// (automatic at finite support). Atoms are kept sorted by position with
// coincident positions merged and zero masses dropped.
template <class T>
struct QuasiLevyMeasure {
  std::vector<std::pair<T, T>> atoms;  // (position != 0, signed mass)

  bool empty() const { return atoms.empty(); }

  T mass_at(const T& x) const {
    for (const auto& [pos, m] : atoms)
      if (pos == x) return m;
    return T(0);
  }

  // Sum (1 ∧ x²) |mass|.
  T one_x2_variation() const {
    T sum(0);
    for (const auto& [x, m] : atoms) sum += min_one_x2(x) * nabs(m);
    return sum;
  }

  T total_abs_mass() const {
    T sum(0);
    for (const auto& [x, m] : atoms) sum += nabs(m);
    return sum;
  }
};

template <class T>
QuasiLevyMeasure<T> make_quasi_levy(std::vector<std::pair<T, T>> atoms) {
  for (const auto& [x, m] : atoms) {
    (void)m;
    if (is_zero(x)) throw JsonSchemaError("quasi-Levy atom at 0 is not allowed");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<T, T>> merged;
  for (auto& a : atoms) {
    if (!merged.empty() && merged.back().first == a.first)
      merged.back().second += a.second;
    else
      merged.push_back(std::move(a));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const auto& a) { return is_zero(a.second); }),
               merged.end());
  return QuasiLevyMeasure<T>{std::move(merged)};
}

// Positive and negative parts; mutually singular because the split is per atom.
template <class T>
std::pair<QuasiLevyMeasure<T>, QuasiLevyMeasure<T>> jordan_parts(
    const QuasiLevyMeasure<T>& nu) {
  QuasiLevyMeasure<T> pos, neg;
  for (const auto& [x, m] : nu.atoms) {
    if (m > T(0))
      pos.atoms.emplace_back(x, m);
    else if (m < T(0))
      neg.atoms.emplace_back(x, -m);
  }
  return {std::move(pos), std::move(neg)};
}

// Restriction to |x| >= r, a finite signed measure for every r > 0.
template <class T>
QuasiLevyMeasure<T> restrict_tail(const QuasiLevyMeasure<T>& nu, const T& r) {
  QuasiLevyMeasure<T> out;
  for (const auto& [x, m] : nu.atoms)
    if (nabs(x) >= r) out.atoms.emplace_back(x, m);
  return out;
}

// ∫ g dnu = ∫ g dnu⁺ − ∫ g dnu⁻, a finite sum here.
template <class T>
T quasi_levy_integrate(const QuasiLevyMeasure<T>& nu, const std::function<T(const T&)>& g) {
  T sum(0);
  for (const auto& [x, m] : nu.atoms) sum += g(x) * m;
  return sum;
}

template <class T>
QuasiLevyMeasure<T> scale_masses(const QuasiLevyMeasure<T>& nu, const T& c) {
  std::vector<std::pair<T, T>> atoms;
  atoms.reserve(nu.atoms.size());
  for (const auto& [x, m] : nu.atoms) atoms.emplace_back(x, m * c);
  return make_quasi_levy(std::move(atoms));
}

template <class T>
QuasiLevyMeasure<T> add_measures(const QuasiLevyMeasure<T>& a, const QuasiLevyMeasure<T>& b) {
  std::vector<std::pair<T, T>> atoms = a.atoms;
  atoms.insert(atoms.end(), b.atoms.begin(), b.atoms.end());
  return make_quasi_levy(std::move(atoms));
}

// Drift, Gaussian variance, quasi-Levy component; the single triplet
// convention in this codebase uses the clamp truncation throughout.
template <class T>
struct CharacteristicTriplet {
  T gamma{0};
  T a{0};  // >= 0
  QuasiLevyMeasure<T> levy;
};

template <class T>
CharacteristicTriplet<T> make_triplet(T gamma, T a, QuasiLevyMeasure<T> levy) {
  if (a < T(0)) throw JsonSchemaError("Gaussian variance must be nonnegative");
  return CharacteristicTriplet<T>{std::move(gamma), std::move(a), std::move(levy)};
}

// Levy-Khintchine exponent at theta:
//   i theta gamma - theta^2 a / 2 + sum (e^{i theta x} - 1 - i theta tau(x)) mass.
template <class T>
std::complex<double> lk_exponent(const CharacteristicTriplet<T>& trip, double theta) {
  std::complex<double> acc(0.0, theta * to_double(trip.gamma));
  acc -= std::complex<double>(0.5 * theta * theta * to_double(trip.a), 0.0);
  for (const auto& [x, m] : trip.levy.atoms) {
    const double xd = to_double(x);
    const double md = to_double(m);
    const std::complex<double> jump =
        std::polar(1.0, theta * xd) - 1.0 -
        std::complex<double>(0.0, theta * truncate_tau(xd));
    acc += jump * md;
  }
  return acc;
}

// exp of a finite exponent: never 0.
template <class T>
std::complex<double> cf_eval(const CharacteristicTriplet<T>& trip, double theta) {
  return std::exp(lk_exponent(trip, theta));
}

template <class T>
CharacteristicTriplet<T> add_triplets(const CharacteristicTriplet<T>& a,
                                      const CharacteristicTriplet<T>& b) {
  return CharacteristicTriplet<T>{a.gamma + b.gamma, a.a + b.a,
                                  add_measures(a.levy, b.levy)};
}

}  // namespace qidm
