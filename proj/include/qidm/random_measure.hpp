#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qidm/bimeasure.hpp"
#include "qidm/fourier.hpp"
#include "qidm/lattice_qid.hpp"
#include "qidm/quasi_levy.hpp"
#include "qidm/rng.hpp"
#include "qidm/signed_measure.hpp"

namespace qidm {

// Triplet-valued set function (nu0(A), nu1(A), F_A): drift measure, Gaussian
// measure, and a per-atom quasi-Levy family on a shared nonzero grid, so that
// F_A is the atomwise sum over t in A.
template <class T>
struct RandomMeasureModel {
  SpacePtr space;
  FiniteSignedMeasure<T> nu0;
  FiniteSignedMeasure<T> nu1;            // nonnegative
  std::vector<T> x_grid;                 // sorted, unique, nonzero
  std::vector<std::vector<T>> f_masses;  // [t][grid], signed

  QuasiLevyMeasure<T> levy_of(const RingMember& A) const {
    std::vector<std::pair<T, T>> atoms;
    for (std::size_t j = 0; j < x_grid.size(); ++j) {
      T m(0);
      for (int t : A.atom_set) m += f_masses[static_cast<std::size_t>(t)][j];
      if (!is_zero(m)) atoms.emplace_back(x_grid[j], m);
    }
    return make_quasi_levy(std::move(atoms));
  }
};

template <class T>
RandomMeasureModel<T> make_model(SpacePtr space, FiniteSignedMeasure<T> nu0,
                                 FiniteSignedMeasure<T> nu1, std::vector<T> x_grid,
                                 std::vector<std::vector<T>> f_masses) {
  if (!nu1.nonnegative()) throw JsonSchemaError("nu1 must be nonnegative");
  for (std::size_t j = 0; j < x_grid.size(); ++j) {
    if (is_zero(x_grid[j])) throw JsonSchemaError("F grid point at 0 is not allowed");
    if (j > 0 && !(x_grid[j - 1] < x_grid[j]))
      throw JsonSchemaError("F grid must be strictly increasing");
  }
  if (f_masses.size() != space->size())
    throw JsonSchemaError("F needs one mass row per atom");
  for (const auto& row : f_masses)
    if (row.size() != x_grid.size())
      throw JsonSchemaError("F mass row width does not match grid");
  return RandomMeasureModel<T>{std::move(space), std::move(nu0), std::move(nu1),
                               std::move(x_grid), std::move(f_masses)};
}

// J(A,B) = ∫_B (1 ∧ x²) F_A(dx) as a finite bimeasure on atoms x grid.
template <class T>
Bimeasure<T> j_bimeasure(const RandomMeasureModel<T>& m) {
  std::vector<std::string> labels;
  labels.reserve(m.x_grid.size());
  for (const auto& x : m.x_grid) labels.push_back(format_scalar(x));
  std::vector<std::vector<T>> entries(m.space->size(),
                                      std::vector<T>(m.x_grid.size(), T(0)));
  for (std::size_t t = 0; t < m.space->size(); ++t)
    for (std::size_t j = 0; j < m.x_grid.size(); ++j)
      entries[t][j] = min_one_x2(m.x_grid[j]) * m.f_masses[t][j];
  return make_bimeasure<T>(m.space, std::move(labels), std::move(entries));
}

// Aggregate characteristic triplet of Lambda(A).
template <class T>
CharacteristicTriplet<T> aggregate_triplet(const RandomMeasureModel<T>& m,
                                           const RingMember& A) {
  return CharacteristicTriplet<T>{m.nu0(A), m.nu1(A), m.levy_of(A)};
}

struct ValidateConfig {
  std::uint64_t seed = 0x51D5EEDull;
  std::size_t random_members = 100;
  double theta_min = -8.0;
  double theta_max = 8.0;
  std::size_t theta_points = 65;
  double level_variation_cap = 1e15;
  // A finite triplet's cf is exp(finite) and cannot vanish exactly; the
  // screen can only flag numerical vanishing. It is a necessary-condition
  // screen, not a QID certificate.
  double cf_vanish_threshold = 1e-300;
};

template <class T>
struct ValidationCertificate {
  std::vector<T> per_level_nu;
  std::size_t xi_samples = 0;
  bool xi_all_hold = false;
  T xi_min_slack{0};  // min over sampled A of nu(A) - ∫(1∧x²)|F_A|
  double cf_min_modulus = 0.0;
  double cf_max_modulus = 0.0;
  std::string cf_argmin_member;
  double cf_argmin_theta = 0.0;
  std::uint64_t seed = 0;
  std::string note;
};

namespace detail {

inline RingMember random_member(const SpacePtr& space, SeededRng& rng) {
  const std::size_t k =
      static_cast<std::size_t>(rng.uniform_int(0, static_cast<long long>(space->level_count()) - 1));
  std::vector<int> atoms;
  for (int t : space->levels()[k])
    if (rng.coin()) atoms.push_back(t);
  return make_member(space, std::move(atoms));
}

}  // namespace detail

// Builds J, computes the variation per level, checks the domination
// nu(A) >= ∫(1∧x²)|F_A| on sampled members, and screens every sampled
// aggregate triplet for a numerically vanishing cf.
template <class T>
ValidationCertificate<T> validate_model(const RandomMeasureModel<T>& m,
                                        const ValidateConfig& cfg = {}) {
  const Bimeasure<T> J = j_bimeasure(m);
  const VariationMeasure<T> nu = variation_measure(J);

  ValidationCertificate<T> cert;
  cert.seed = cfg.seed;
  cert.per_level_nu = nu.per_level_totals;
  for (const auto& total : cert.per_level_nu)
    if (to_double(total) > cfg.level_variation_cap)
      throw VariationUnboundedError("per-level variation " + format_scalar(total) +
                                    " exceeds the configured cap");

  SeededRng rng(cfg.seed);
  std::vector<RingMember> members;
  for (std::size_t k = 0; k < m.space->level_count(); ++k)
    members.push_back(level_member(m.space, k));
  for (std::size_t i = 0; i < cfg.random_members; ++i)
    members.push_back(detail::random_member(m.space, rng));

  cert.xi_samples = members.size();
  cert.xi_all_hold = true;
  bool first = true;
  for (const auto& A : members) {
    const T lhs = variation(J, A);
    const T rhs = m.levy_of(A).one_x2_variation();
    const T slack = lhs - rhs;
    if (slack < T(0)) cert.xi_all_hold = false;
    if (first || slack < cert.xi_min_slack) {
      cert.xi_min_slack = slack;
      first = false;
    }
  }

  cert.cf_min_modulus = std::numeric_limits<double>::infinity();
  cert.cf_max_modulus = 0.0;
  for (const auto& A : members) {
    const auto trip = aggregate_triplet(m, A);
    for (std::size_t i = 0; i < cfg.theta_points; ++i) {
      const double theta =
          cfg.theta_min + (cfg.theta_max - cfg.theta_min) * static_cast<double>(i) /
                              static_cast<double>(cfg.theta_points - 1);
      const double mod = std::abs(cf_eval(trip, theta));
      if (mod < cert.cf_min_modulus) {
        cert.cf_min_modulus = mod;
        cert.cf_argmin_member = member_to_string(A);
        cert.cf_argmin_theta = theta;
      }
      cert.cf_max_modulus = std::max(cert.cf_max_modulus, mod);
      if (mod < cfg.cf_vanish_threshold)
        throw NotQidCandidateError(
            "candidate cf vanishes numerically (|cf|=" + format_scalar(mod) +
                ") on A=" + member_to_string(A) + " at theta=" + format_scalar(theta),
            member_to_string(A), theta);
    }
  }
  cert.note =
      "cf grid screen is a necessary condition only; it cannot certify that "
      "every Lambda(A) is a genuine QID law";
  return cert;
}

// lambda(A) = |nu0|(A) + nu1(A) + nu(A) and the three densities against it.
template <class T>
struct ControlMeasure {
  FiniteSignedMeasure<T> lambda;
  FiniteSignedMeasure<T> abs_nu0;
  FiniteSignedMeasure<T> nu1;
  FiniteSignedMeasure<T> nu;
  std::vector<T> a;            // d nu0 / d lambda
  std::vector<T> sigma2;       // d nu1 / d lambda
  std::vector<T> dnu_dlambda;  // d nu / d lambda
};

template <class T>
ControlMeasure<T> control_measure(const RandomMeasureModel<T>& m) {
  const VariationMeasure<T> vm = variation_measure(j_bimeasure(m));
  ControlMeasure<T> out;
  out.abs_nu0 = zero_measure<T>(m.space);
  for (std::size_t t = 0; t < m.space->size(); ++t)
    out.abs_nu0.weights[t] = nabs(m.nu0.weights[t]);
  out.nu1 = m.nu1;
  out.nu = vm.nu;
  out.lambda = zero_measure<T>(m.space);
  for (std::size_t t = 0; t < m.space->size(); ++t)
    out.lambda.weights[t] =
        out.abs_nu0.weights[t] + out.nu1.weights[t] + out.nu.weights[t];
  out.a = radon_nikodym(m.nu0, out.lambda);
  out.sigma2 = radon_nikodym(m.nu1, out.lambda);
  out.dnu_dlambda = radon_nikodym(out.nu, out.lambda);
  // |a(s)| + sigma^2(s) + dnu/dlambda(s) = 1 on lambda-positive atoms.
  for (std::size_t t = 0; t < m.space->size(); ++t) {
    if (is_zero(out.lambda.weights[t])) continue;
    const T total = nabs(out.a[t]) + out.sigma2[t] + out.dnu_dlambda[t];
    if (!scalar_eq(total, T(1), 1e-12))
      throw QidmError("control-measure density identity failed at atom '" +
                      m.space->atom_name(static_cast<int>(t)) + "' (sum " +
                      format_scalar(total) + ")");
  }
  return out;
}

// Per-atom local characteristics: a(s), sigma^2(s) from the control measure
// and rho±(s,{x}) = (dnu/dlambda)(s) (1 ∧ x²)^{-1} q±(s,{x}) with q± the
// kernels of the disintegrated J.
template <class T>
struct LocalCharacteristics {
  std::vector<std::vector<T>> rho_plus;   // [t][grid]
  std::vector<std::vector<T>> rho_minus;  // [t][grid]

  T rho(int t, std::size_t j) const {
    return rho_plus[static_cast<std::size_t>(t)][j] -
           rho_minus[static_cast<std::size_t>(t)][j];
  }
  T abs_rho(int t, std::size_t j) const {
    return rho_plus[static_cast<std::size_t>(t)][j] +
           rho_minus[static_cast<std::size_t>(t)][j];
  }
};

template <class T>
struct ModelAnalysis {
  RandomMeasureModel<T> model;
  Bimeasure<T> j;
  DisintegrationResult<T> dis;  // of J
  ControlMeasure<T> control;
  LocalCharacteristics<T> chars;

  const SpacePtr& space() const { return model.space; }
  std::size_t grid_size() const { return model.x_grid.size(); }
};

template <class T>
ModelAnalysis<T> analyze(RandomMeasureModel<T> m) {
  Bimeasure<T> J = j_bimeasure(m);
  DisintegrationResult<T> dis = disintegrate(J);
  ControlMeasure<T> control = control_measure(m);
  LocalCharacteristics<T> chars;
  const std::size_t nt = m.space->size();
  const std::size_t nx = m.x_grid.size();
  chars.rho_plus.assign(nt, std::vector<T>(nx, T(0)));
  chars.rho_minus.assign(nt, std::vector<T>(nx, T(0)));
  for (std::size_t t = 0; t < nt; ++t) {
    if (!dis.kernel.has_row[t]) continue;
    const T& density = control.dnu_dlambda[t];
    for (std::size_t j = 0; j < nx; ++j) {
      const T inv = T(1) / min_one_x2(m.x_grid[j]);
      chars.rho_plus[t][j] = density * inv * dis.kernel.q_plus[t][j];
      chars.rho_minus[t][j] = density * inv * dis.kernel.q_minus[t][j];
    }
  }
  return ModelAnalysis<T>{std::move(m), std::move(J), std::move(dis),
                          std::move(control), std::move(chars)};
}

// F~±(A x B) = sum_{t in A, j in B} rho±(t,j) lambda({t}).
template <class T>
T f_tilde_plus(const ModelAnalysis<T>& an, const RingMember& A, const std::vector<int>& B) {
  T sum(0);
  for (int t : A.atom_set)
    for (int j : B)
      sum += an.chars.rho_plus[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] *
             an.control.lambda.at(t);
  return sum;
}
template <class T>
T f_tilde_minus(const ModelAnalysis<T>& an, const RingMember& A, const std::vector<int>& B) {
  T sum(0);
  for (int t : A.atom_set)
    for (int j : B)
      sum += an.chars.rho_minus[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] *
             an.control.lambda.at(t);
  return sum;
}

// K(theta, s) = i theta a(s) - theta^2 sigma^2(s)/2
//             + sum_j (e^{i theta x_j} - 1 - i theta tau(x_j)) rho(s, {x_j}).
template <class T>
std::complex<double> k_exponent(const ModelAnalysis<T>& an, double theta, int s) {
  const auto si = static_cast<std::size_t>(s);
  std::complex<double> acc(0.0, theta * to_double(an.control.a[si]));
  acc -= std::complex<double>(0.5 * theta * theta * to_double(an.control.sigma2[si]), 0.0);
  for (std::size_t j = 0; j < an.grid_size(); ++j) {
    const T r = an.chars.rho(s, j);
    if (is_zero(r)) continue;
    const double x = to_double(an.model.x_grid[j]);
    acc += (std::polar(1.0, theta * x) - 1.0 -
            std::complex<double>(0.0, theta * truncate_tau(x))) *
           to_double(r);
  }
  return acc;
}

template <class T>
std::complex<double> cf_of_set(const ModelAnalysis<T>& an, const RingMember& A,
                               double theta) {
  std::complex<double> exponent(0.0, 0.0);
  for (int s : A.atom_set)
    exponent += k_exponent(an, theta, s) * to_double(an.control.lambda.at(s));
  return std::exp(exponent);
}

struct ChainRow {
  std::string member;
  double lambda_value = 0.0;
  double f_one_x2_variation = 0.0;
  double cf_deviation = 0.0;    // sup over grid |cf(A_n, theta) - 1|
  double crude_bound = 0.0;     // 2 lambda(A_n) max(1 + |theta| + theta^2/2)
  bool within_crude_bound = false;
};

struct ChainReport {
  std::vector<ChainRow> rows;
  bool lambda_monotone = false;
  bool ends_at_zero = false;
};

// Along a decreasing chain ending at the empty set, lambda, the
// (1∧x²)-variation of F, and the cf deviation from 1 all shrink to 0.
// The crude bound column is reported, not asserted.
template <class T>
ChainReport countable_additivity_check(const ModelAnalysis<T>& an,
                                       const std::vector<RingMember>& chain,
                                       const std::vector<double>& thetas) {
  if (chain.empty()) throw ChainNotDecreasing("chain is empty");
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!is_subset(chain[i], chain[i - 1]))
      throw ChainNotDecreasing("chain element " + std::to_string(i) +
                               " is not contained in its predecessor");
  if (!chain.back().empty())
    throw ChainNotDecreasing("chain must terminate at the empty set");

  ChainReport report;
  double max_factor = 0.0;
  for (double theta : thetas)
    max_factor = std::max(max_factor, 1.0 + std::fabs(theta) + 0.5 * theta * theta);
  for (const auto& A : chain) {
    ChainRow row;
    row.member = member_to_string(A);
    row.lambda_value = to_double(an.control.lambda(A));
    row.f_one_x2_variation = to_double(an.model.levy_of(A).one_x2_variation());
    for (double theta : thetas)
      row.cf_deviation =
          std::max(row.cf_deviation, std::abs(cf_of_set(an, A, theta) - 1.0));
    row.crude_bound = 2.0 * row.lambda_value * max_factor;
    row.within_crude_bound = row.cf_deviation <= row.crude_bound + 1e-12;
    report.rows.push_back(std::move(row));
  }
  report.lambda_monotone = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    if (report.rows[i].lambda_value > report.rows[i - 1].lambda_value + 1e-15)
      report.lambda_monotone = false;
  const auto& last = report.rows.back();
  report.ends_at_zero = last.lambda_value == 0.0 && last.f_one_x2_variation == 0.0 &&
                        last.cf_deviation == 0.0;
  return report;
}

// Law of Lambda(A) for integer-supported F: pure-jump pmf recovered by
// Fourier inversion of exp(sum_k c_k (e^{i k theta} - 1)), plus a real shift
// nu0(A) - sum tau(k) c_k and an independent Gaussian of variance nu1(A).
struct LatticeLaw {
  std::vector<long long> offsets;
  std::vector<double> probs;
  double shift = 0.0;
  double gauss_var = 0.0;
  int grid_size = 0;
  double min_jump_cf_modulus = 0.0;
  double worst_clipped_mass = 0.0;  // most negative inverted mass (0 if none)
};

template <class T>
LatticeLaw lattice_law(const ModelAnalysis<T>& an, const RingMember& A) {
  const auto levy = an.model.levy_of(A);
  std::vector<std::pair<long long, double>> jumps;
  double total_abs = 0.0;
  long long max_abs_site = 1;
  for (const auto& [x, m] : levy.atoms) {
    const double xd = to_double(x);
    const double rounded = std::nearbyint(xd);
    if (std::fabs(xd - rounded) > 1e-9)
      throw QidmError("lattice sampling requires integer-supported F; found x=" +
                      format_scalar(x));
    jumps.emplace_back(static_cast<long long>(rounded), to_double(m));
    total_abs += std::fabs(to_double(m));
    max_abs_site = std::max(max_abs_site, std::llabs(static_cast<long long>(rounded)));
  }

  LatticeLaw law;
  law.shift = to_double(an.model.nu0(A));
  law.gauss_var = to_double(an.model.nu1(A));
  for (const auto& [k, c] : jumps)
    law.shift -= truncate_tau(static_cast<double>(k)) * c;

  if (jumps.empty()) {
    law.offsets = {0};
    law.probs = {1.0};
    law.grid_size = 0;
    law.min_jump_cf_modulus = 1.0;
    return law;
  }

  // Jump-count bound with Poissonian tail margin sets the support half-width.
  const long long jump_bound =
      static_cast<long long>(std::ceil(total_abs + 40.0 * std::sqrt(total_abs + 1.0) + 40.0));
  long long n = std::max<long long>(512, 4 * max_abs_site * jump_bound);
  long long pow2 = 1;
  while (pow2 < n) pow2 <<= 1;
  n = pow2;
  law.grid_size = static_cast<int>(n);

  std::vector<std::complex<double>> cf_grid(static_cast<std::size_t>(n));
  double min_mod = std::numeric_limits<double>::infinity();
  for (long long j = 0; j < n; ++j) {
    const double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
    std::complex<double> expo(0.0, 0.0);
    for (const auto& [k, c] : jumps)
      expo += (std::polar(1.0, theta * static_cast<double>(k)) - 1.0) * c;
    cf_grid[static_cast<std::size_t>(j)] = std::exp(expo);
    min_mod = std::min(min_mod, std::abs(cf_grid[static_cast<std::size_t>(j)]));
  }
  law.min_jump_cf_modulus = min_mod;
  if (min_mod < 1e-6)
    throw NotQidError("jump cf modulus " + format_scalar(min_mod) +
                      " is below the QID sampling regime (1e-6)");

  const auto coeff = fourier::dft_fftw(cf_grid);
  double worst = 0.0;
  std::vector<std::pair<long long, double>> masses;
  for (std::size_t idx = 0; idx < coeff.size(); ++idx) {
    long long k = static_cast<long long>(idx);
    if (k > n / 2) k -= n;
    double mass = coeff[idx].real();
    if (mass < worst) worst = mass;
    if (mass < -1e-9)
      throw NotAPmfError("Fourier inversion produced mass " + format_scalar(mass) +
                             " at offset " + std::to_string(k) +
                             "; the triplet does not define a distribution on this set",
                         mass);
    if (mass > 1e-15) masses.emplace_back(k, mass);
  }
  law.worst_clipped_mass = worst < 0.0 ? worst : 0.0;
  std::sort(masses.begin(), masses.end());
  double total = 0.0;
  for (const auto& [k, p] : masses) total += p;
  for (const auto& [k, p] : masses) {
    law.offsets.push_back(k);
    law.probs.push_back(p / total);
  }
  return law;
}

struct SampleResult {
  LatticeLaw law;
  std::vector<double> samples;
};

template <class T>
SampleResult sample_lattice(const ModelAnalysis<T>& an, const RingMember& A,
                            std::size_t n, std::uint64_t seed) {
  SampleResult out;
  out.law = lattice_law(an, A);
  std::vector<double> cdf(out.law.probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    acc += out.law.probs[i];
    cdf[i] = acc;
  }
  SeededRng rng(seed);
  const double sd = out.law.gauss_var > 0.0 ? std::sqrt(out.law.gauss_var) : 0.0;
  out.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx =
        it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
    double value = out.law.shift + static_cast<double>(out.law.offsets[idx]);
    if (sd > 0.0) value += sd * rng.gaussian();
    out.samples.push_back(value);
  }
  return out;
}

inline std::complex<double> empirical_cf(const std::vector<double>& samples, double theta) {
  std::complex<double> acc(0.0, 0.0);
  for (double x : samples) acc += std::polar(1.0, theta * x);
  return acc / static_cast<double>(samples.empty() ? 1 : samples.size());
}

template <class T>
struct DominationRow {
  std::size_t level = 0;
  T nu_value{0};
  T bound{0};
  bool holds = false;
  bool equal = false;
};

template <class T>
struct DominationReport {
  std::vector<DominationRow<T>> rows;
  bool all_hold = false;
};

// For F = G - M with G, M nonnegative per-atom Levy families, the variation
// of J is dominated by ∫(1∧x²)G_A + ∫(1∧x²)M_A; with M = 0 the two sides
// coincide. Checked on every level of the localizing sequence.
template <class T>
DominationReport<T> id_pair_domination_check(
    const SpacePtr& space, const std::vector<T>& x_grid,
    const std::vector<std::vector<T>>& g_masses,
    const std::vector<std::vector<T>>& m_masses) {
  for (const auto& row : g_masses)
    for (const auto& v : row)
      if (v < T(0)) throw JsonSchemaError("G must be nonnegative");
  for (const auto& row : m_masses)
    for (const auto& v : row)
      if (v < T(0)) throw JsonSchemaError("M must be nonnegative");

  std::vector<std::vector<T>> f(space->size(), std::vector<T>(x_grid.size(), T(0)));
  for (std::size_t t = 0; t < space->size(); ++t)
    for (std::size_t j = 0; j < x_grid.size(); ++j)
      f[t][j] = g_masses[t][j] - m_masses[t][j];
  const auto model = make_model<T>(space, zero_measure<T>(space), zero_measure<T>(space),
                                   x_grid, f);
  const auto vm = variation_measure(j_bimeasure(model));

  DominationReport<T> report;
  report.all_hold = true;
  for (std::size_t k = 0; k < space->level_count(); ++k) {
    DominationRow<T> row;
    row.level = k;
    row.nu_value = vm.per_level_totals[k];
    T bound(0);
    for (int t : space->levels()[k])
      for (std::size_t j = 0; j < x_grid.size(); ++j)
        bound += min_one_x2(x_grid[j]) *
                 (g_masses[static_cast<std::size_t>(t)][j] +
                  m_masses[static_cast<std::size_t>(t)][j]);
    row.bound = bound;
    row.holds = !(row.nu_value > row.bound);
    row.equal = row.nu_value == row.bound;
    if (!row.holds) report.all_hold = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace qidm
