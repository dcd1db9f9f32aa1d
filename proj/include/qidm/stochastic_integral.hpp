#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "qidm/random_measure.hpp"

namespace qidm {

// f(s) = sum_j value_j 1_{member_j}(s) with pairwise-disjoint members;
// implicitly 0 off the union. On a finite space every measurable function is
// of this form.
template <class T>
struct StepFunction {
  std::vector<std::pair<T, RingMember>> pieces;
};

template <class T>
StepFunction<T> make_step_function(std::vector<std::pair<T, RingMember>> pieces) {
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j)
      if (!intersect(pieces[i].second, pieces[j].second).empty())
        throw OverlapError("step function pieces " + std::to_string(i) + " and " +
                           std::to_string(j) + " overlap");
  return StepFunction<T>{std::move(pieces)};
}

template <class T>
std::vector<T> values_per_atom(const StepFunction<T>& f, const SpacePtr& space) {
  std::vector<T> values(space->size(), T(0));
  for (const auto& [value, member] : f.pieces)
    for (int t : member.atom_set) values[static_cast<std::size_t>(t)] = value;
  return values;
}

template <class T>
StepFunction<T> step_from_values(const SpacePtr& space, const std::vector<T>& values) {
  std::vector<std::pair<T, RingMember>> pieces;
  std::map<std::string, std::pair<T, std::vector<int>>> groups;
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (is_zero(values[t])) continue;
    auto& g = groups[format_scalar(values[t])];
    g.first = values[t];
    g.second.push_back(static_cast<int>(t));
  }
  for (auto& [key, g] : groups)
    pieces.emplace_back(g.first, make_member(space, std::move(g.second)));
  return make_step_function(std::move(pieces));
}

// U(u, s) = u a(s) + sum_j (tau(x_j u) - u tau(x_j)) rho(s, {x_j})
template <class T>
T integrand_u(const ModelAnalysis<T>& an, const T& u, int s) {
  T acc = u * an.control.a[static_cast<std::size_t>(s)];
  for (std::size_t j = 0; j < an.grid_size(); ++j) {
    const T r = an.chars.rho(s, j);
    if (is_zero(r)) continue;
    const T& x = an.model.x_grid[j];
    acc += (truncate_tau(T(x * u)) - u * truncate_tau(x)) * r;
  }
  return acc;
}

// V_0(u, s) = sum_j (1 ∧ |x_j u|²) |rho|(s, {x_j})
template <class T>
T integrand_v0(const ModelAnalysis<T>& an, const T& u, int s) {
  T acc(0);
  for (std::size_t j = 0; j < an.grid_size(); ++j) {
    const T ar = an.chars.abs_rho(s, j);
    if (is_zero(ar)) continue;
    acc += min_one_x2(T(an.model.x_grid[j] * u)) * ar;
  }
  return acc;
}

// V_p(u, s) = sum_j (|x u|^p 1_{|xu|>1} + |x u|² 1_{|xu|<=1}) |rho|(s, {x_j})
template <class T>
double integrand_vp(const ModelAnalysis<T>& an, double u, int s, double p) {
  double acc = 0.0;
  for (std::size_t j = 0; j < an.grid_size(); ++j) {
    const double ar = to_double(an.chars.abs_rho(s, j));
    if (ar == 0.0) continue;
    const double xu = std::fabs(to_double(an.model.x_grid[j]) * u);
    acc += (xu > 1.0 ? std::pow(xu, p) : xu * xu) * ar;
  }
  return acc;
}

template <class T>
struct IntegrabilityReport {
  T u_integral{0};      // (i)  sum |U(f(s),s)| lambda({s})
  T sigma_integral{0};  // (ii) sum |f(s)|² sigma²(s) lambda({s})
  T v0_integral{0};     // (iii) sum V_0(f(s),s) lambda({s})
  bool pass = false;
};

template <class T>
IntegrabilityReport<T> integrability_check(const ModelAnalysis<T>& an,
                                           const std::vector<T>& f) {
  IntegrabilityReport<T> out;
  for (std::size_t s = 0; s < an.space()->size(); ++s) {
    const T& lam = an.control.lambda.weights[s];
    if (is_zero(lam)) continue;
    const int si = static_cast<int>(s);
    out.u_integral += nabs(integrand_u(an, f[s], si)) * lam;
    out.sigma_integral += f[s] * f[s] * an.control.sigma2[s] * lam;
    out.v0_integral += integrand_v0(an, f[s], si) * lam;
  }
  out.pass = std::isfinite(to_double(out.u_integral)) &&
             std::isfinite(to_double(out.sigma_integral)) &&
             std::isfinite(to_double(out.v0_integral));
  return out;
}

// Law of ∫ f dLambda: drift a_f, Gaussian variance sigma_f², and the
// quasi-Levy measure F_f obtained by pushing every (s, x_j) with weight
// rho±(s,{x_j}) lambda({s}) to f(s) x_j, dropping images at 0. The raw
// pushforward parts satisfy >= against the minimal pair; the difference is
// what is unique, so both are kept.
template <class T>
struct IntegralLaw {
  T a_f{0};
  T sigma2_f{0};
  QuasiLevyMeasure<T> f_levy;       // Jordan-minimal signed measure
  QuasiLevyMeasure<T> f_plus_raw;   // pushforward of rho+ lambda
  QuasiLevyMeasure<T> f_minus_raw;  // pushforward of rho- lambda
  IntegrabilityReport<T> diagnostics;
};

template <class T>
IntegralLaw<T> transform_triplet(const ModelAnalysis<T>& an, const std::vector<T>& f) {
  IntegralLaw<T> law;
  law.diagnostics = integrability_check(an, f);

  std::vector<std::pair<T, T>> plus_atoms, minus_atoms;
  for (std::size_t s = 0; s < an.space()->size(); ++s) {
    const T& lam = an.control.lambda.weights[s];
    if (is_zero(lam) || is_zero(f[s])) continue;
    const int si = static_cast<int>(s);
    law.a_f += integrand_u(an, f[s], si) * lam;
    law.sigma2_f += f[s] * f[s] * an.control.sigma2[s] * lam;
    for (std::size_t j = 0; j < an.grid_size(); ++j) {
      const T image = f[s] * an.model.x_grid[j];
      if (is_zero(image)) continue;
      const T wp = an.chars.rho_plus[s][j] * lam;
      const T wm = an.chars.rho_minus[s][j] * lam;
      if (!is_zero(wp)) plus_atoms.emplace_back(image, wp);
      if (!is_zero(wm)) minus_atoms.emplace_back(image, wm);
    }
  }
  law.f_plus_raw = make_quasi_levy(std::move(plus_atoms));
  law.f_minus_raw = make_quasi_levy(std::move(minus_atoms));

  // Cancel common mass at coincident image points: the Jordan-minimal pair.
  std::vector<std::pair<T, T>> net = law.f_plus_raw.atoms;
  for (const auto& [x, m] : law.f_minus_raw.atoms) net.emplace_back(x, -m);
  law.f_levy = make_quasi_levy(std::move(net));
  return law;
}

template <class T>
CharacteristicTriplet<T> law_triplet(const IntegralLaw<T>& law) {
  return CharacteristicTriplet<T>{law.a_f, law.sigma2_f, law.f_levy};
}

// Product-formula characteristic function of ∫ f dLambda:
// prod_j cf_of_set(A_j, theta x_j) = exp(sum_s K(theta f(s), s) lambda({s})).
template <class T>
std::complex<double> cf_of_integral(const ModelAnalysis<T>& an, const StepFunction<T>& f,
                                    double theta) {
  std::complex<double> acc(1.0, 0.0);
  for (const auto& [value, member] : f.pieces)
    acc *= cf_of_set(an, member, theta * to_double(value));
  return acc;
}

template <class T>
IntegralLaw<T> integrate_step(const ModelAnalysis<T>& an, const StepFunction<T>& f) {
  return transform_triplet(an, values_per_atom(f, an.space()));
}

// U*(u, s) = sup_{|c|<=1} |U(cu, s)|. U(cu, s) is piecewise linear in c with
// kinks where |c u x_j| crosses 1, so the exact extremum is attained at a
// kink or endpoint; golden-section refinement between consecutive candidates
// guards the evaluation.
template <class T>
double integrand_u_star(const ModelAnalysis<T>& an, double u, int s) {
  if (u == 0.0) return 0.0;
  auto value = [&](double c) {
    return std::fabs(to_double(integrand_u(an, scalar_from_double<T>(c * u), s)));
  };
  std::vector<double> candidates = {-1.0, 0.0, 1.0};
  const double au = std::fabs(u);
  if (1.0 / au <= 1.0) {
    candidates.push_back(1.0 / au);
    candidates.push_back(-1.0 / au);
  }
  for (std::size_t j = 0; j < an.grid_size(); ++j) {
    const double ax = std::fabs(to_double(an.model.x_grid[j]));
    if (ax == 0.0) continue;
    const double kink = 1.0 / (au * ax);
    if (kink <= 1.0) {
      candidates.push_back(kink);
      candidates.push_back(-kink);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  double best = 0.0;
  for (double c : candidates) best = std::max(best, value(c));

  constexpr double kInvPhi = 0.6180339887498948482;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    double a = candidates[i - 1], b = candidates[i];
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = value(c), fd = value(d);
    while (b - a > 1e-10) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = value(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = value(d);
      }
    }
    best = std::max(best, std::max(fc, fd));
  }
  return best;
}

// Phi_p(u, s) = U*(u, s) + u² sigma²(s) + V_p(u, s)
template <class T>
double phi_p(const ModelAnalysis<T>& an, double u, int s, double p) {
  const double sigma2 = to_double(an.control.sigma2[static_cast<std::size_t>(s)]);
  return integrand_u_star(an, u, s) + u * u * sigma2 + integrand_vp(an, u, s, p);
}

template <class T>
double phi_p_integral(const ModelAnalysis<T>& an, const std::vector<T>& f, double p,
                      double inv_scale = 1.0) {
  double acc = 0.0;
  for (std::size_t s = 0; s < an.space()->size(); ++s) {
    const double lam = to_double(an.control.lambda.weights[s]);
    if (lam == 0.0) continue;
    const double u = std::fabs(to_double(f[s])) * inv_scale;
    if (u == 0.0) continue;
    acc += phi_p(an, u, static_cast<int>(s), p) * lam;
  }
  return acc;
}

struct OrliczEvaluation {
  double phi_integral = 0.0;  // ∫ Phi_p(|f(s)|, s) lambda(ds)
  double f_norm = 0.0;        // inf{c>0 : ∫ Phi_p(|f|/c) dlambda <= c}
  double p = 0.0;
};

// F-norm of the Musielak-Orlicz space: bisection over c with a doubling
// upper bracket; Phi_p(|f|/c) is nonincreasing in c so the feasible set is an
// interval. f = 0 lambda-a.e. returns norm 0.
template <class T>
OrliczEvaluation orlicz_norm(const ModelAnalysis<T>& an, const std::vector<T>& f,
                             double p) {
  if (p < 0.0) throw std::invalid_argument("orlicz_norm requires p >= 0");
  OrliczEvaluation out;
  out.p = p;
  out.phi_integral = phi_p_integral(an, f, p);

  bool zero_ae = true;
  for (std::size_t s = 0; s < an.space()->size() && zero_ae; ++s)
    if (!is_zero(an.control.lambda.weights[s]) && !is_zero(f[s])) zero_ae = false;
  if (zero_ae) {
    out.f_norm = 0.0;
    return out;
  }

  auto feasible = [&](double c) { return phi_p_integral(an, f, p, 1.0 / c) <= c; };
  double lo = 1e-12;
  double hi = lo;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (hi > 1e18)
      throw QidmError("orlicz_norm: no feasible scale below 1e18");
  }
  if (hi == lo) {
    out.f_norm = hi;
    return out;
  }
  lo = hi / 2.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  out.f_norm = hi;
  return out;
}

struct ProbeRow {
  double norm = 0.0;
  double phi_integral = 0.0;
  double cf_deviation = 0.0;  // sup over grid |cf(∫ f_n dLambda) - 1|
};

struct ProbeReport {
  std::vector<ProbeRow> rows;
  bool norm_vanishes = false;
  bool phi_vanishes = false;
  bool columns_covanish = false;   // norm -> 0 iff phi-integral -> 0
  bool cf_follows_norm = false;    // norm -> 0 implies cf deviation -> 0
};

// Tabulates ||f_n||, ∫Phi_p(|f_n|)dlambda and a weak-distance proxy between
// the law of ∫ f_n dLambda and 0. Verdicts compare the final entry against
// the first (factor-20 decay); constant sequences report no convergence.
template <class T>
ProbeReport continuity_probe(const ModelAnalysis<T>& an,
                             const std::vector<StepFunction<T>>& sequence, double p,
                             const std::vector<double>& thetas) {
  ProbeReport report;
  for (const auto& f : sequence) {
    ProbeRow row;
    const auto values = values_per_atom(f, an.space());
    row.norm = orlicz_norm(an, values, p).f_norm;
    row.phi_integral = phi_p_integral(an, values, p);
    for (double theta : thetas)
      row.cf_deviation =
          std::max(row.cf_deviation, std::abs(cf_of_integral(an, f, theta) - 1.0));
    report.rows.push_back(row);
  }
  if (report.rows.empty()) return report;
  const auto& first = report.rows.front();
  const auto& last = report.rows.back();
  auto vanished = [](double first_v, double last_v) {
    return last_v <= std::max(1e-10, first_v / 20.0);
  };
  report.norm_vanishes = vanished(first.norm, last.norm);
  report.phi_vanishes = vanished(first.phi_integral, last.phi_integral);
  report.columns_covanish = report.norm_vanishes == report.phi_vanishes;
  report.cf_follows_norm =
      !report.norm_vanishes || vanished(first.cf_deviation, last.cf_deviation);
  return report;
}

}  // namespace qidm
