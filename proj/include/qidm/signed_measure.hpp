#pragma once

#include <string>
#include <vector>

#include "qidm/ground_space.hpp"
#include "qidm/numeric.hpp"

namespace qidm {

enum class DomainTag { ring, sigma_algebra };

// Atom-indexed signed masses; sigma-additivity is automatic and mu(∅)=0 by
// the empty sum. Values are finite by construction.
template <class T>
struct FiniteSignedMeasure {
  SpacePtr space;
  std::vector<T> weights;  // one per atom
  DomainTag domain = DomainTag::ring;

  const T& at(int atom) const { return weights[static_cast<std::size_t>(atom)]; }

  T operator()(const RingMember& A) const {
    T sum(0);
    for (int t : A.atom_set) sum += at(t);
    return sum;
  }

  bool nonnegative() const {
    for (const auto& w : weights)
      if (w < T(0)) return false;
    return true;
  }

  bool is_zero_measure() const {
    for (const auto& w : weights)
      if (!is_zero(w)) return false;
    return true;
  }
};

template <class T>
FiniteSignedMeasure<T> zero_measure(SpacePtr space, DomainTag tag = DomainTag::ring) {
  return FiniteSignedMeasure<T>{space, std::vector<T>(space->size(), T(0)), tag};
}

template <class T>
FiniteSignedMeasure<T> measure_from_weights(SpacePtr space, std::vector<T> weights,
                                            DomainTag tag = DomainTag::ring) {
  if (weights.size() != space->size())
    throw JsonSchemaError("weight vector size does not match atom count");
  return FiniteSignedMeasure<T>{std::move(space), std::move(weights), tag};
}

template <class T>
struct JordanPair {
  FiniteSignedMeasure<T> positive;
  FiniteSignedMeasure<T> negative;
};

// Minimal decomposition mu = positive - negative with disjoint supports.
template <class T>
JordanPair<T> jordan_decompose(const FiniteSignedMeasure<T>& mu) {
  JordanPair<T> out{zero_measure<T>(mu.space, mu.domain), zero_measure<T>(mu.space, mu.domain)};
  for (std::size_t i = 0; i < mu.weights.size(); ++i) {
    const T& w = mu.weights[i];
    if (w > T(0))
      out.positive.weights[i] = w;
    else if (w < T(0))
      out.negative.weights[i] = -w;
  }
  return out;
}

// |mu|(A). The supremum over partitions of A is attained by the partition
// into singletons, so this is the atomwise absolute sum.
template <class T>
T total_variation(const FiniteSignedMeasure<T>& mu, const RingMember& A) {
  T sum(0);
  for (int t : A.atom_set) sum += nabs(mu.at(t));
  return sum;
}

// Extension from the localized ring to the full power set. On a finite space
// the extension is atomwise-identical; only the domain tag changes. Signed
// input is rejected: each Jordan part extends separately.
template <class T>
FiniteSignedMeasure<T> caratheodory_extend(const FiniteSignedMeasure<T>& mu) {
  for (std::size_t i = 0; i < mu.weights.size(); ++i)
    if (mu.weights[i] < T(0))
      throw SignedInputError("caratheodory_extend requires a nonnegative measure; "
                             "atom '" + mu.space->atom_name(static_cast<int>(i)) +
                             "' has negative weight (jordan_decompose first)");
  FiniteSignedMeasure<T> out = mu;
  out.domain = DomainTag::sigma_algebra;
  return out;
}

// d(mu)/d(lambda) as a per-atom ratio table; 0 on lambda-null atoms.
template <class T>
std::vector<T> radon_nikodym(const FiniteSignedMeasure<T>& mu,
                             const FiniteSignedMeasure<T>& lambda) {
  if (!lambda.nonnegative())
    throw SignedInputError("radon_nikodym: reference measure must be nonnegative");
  std::vector<T> ratio(mu.weights.size(), T(0));
  for (std::size_t i = 0; i < mu.weights.size(); ++i) {
    if (is_zero(lambda.weights[i])) {
      if (!is_zero(mu.weights[i]))
        throw AbsoluteContinuityError(
            "mu is not absolutely continuous w.r.t. lambda at atom '" +
                mu.space->atom_name(static_cast<int>(i)) + "'",
            mu.space->atom_name(static_cast<int>(i)));
    } else {
      ratio[i] = mu.weights[i] / lambda.weights[i];
    }
  }
  return ratio;
}

// ∫_A density dlambda; used to re-integrate Radon-Nikodym tables.
template <class T>
T integrate_density(const std::vector<T>& density, const FiniteSignedMeasure<T>& lambda,
                    const RingMember& A) {
  T sum(0);
  for (int t : A.atom_set) sum += density[static_cast<std::size_t>(t)] * lambda.at(t);
  return sum;
}

}  // namespace qidm
