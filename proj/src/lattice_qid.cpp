#include "qidm/lattice_qid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "qidm/errors.hpp"
#include "qidm/fourier.hpp"
#include "qidm/parallel.hpp"

namespace qidm {

namespace {

constexpr double kTwoPi = 6.283185307179586477;

double cf_modulus(const LatticePmf& pmf, double theta) {
  return std::abs(pmf.cf(theta));
}

// Golden-section minimization of |cf| on [lo, hi] to theta-tolerance 1e-12.
std::pair<double, double> refine_minimum(const LatticePmf& pmf, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = cf_modulus(pmf, c);
  double fd = cf_modulus(pmf, d);
  while (b - a > 1e-12) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = cf_modulus(pmf, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = cf_modulus(pmf, d);
    }
  }
  const double mid = 0.5 * (a + b);
  return {mid, cf_modulus(pmf, mid)};
}

}  // namespace

std::complex<double> LatticePmf::cf(double theta) const {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < offsets.size(); ++i)
    acc += probs[i] * std::polar(1.0, theta * static_cast<double>(offsets[i]));
  return acc;
}

LatticePmf make_lattice_pmf(std::vector<long long> offsets, std::vector<double> probs) {
  if (offsets.size() != probs.size())
    throw JsonSchemaError("pmf offsets and probs must have equal length");
  if (offsets.empty()) throw JsonSchemaError("pmf must have at least one site");
  std::vector<std::size_t> order(offsets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return offsets[a] < offsets[b]; });
  LatticePmf pmf;
  double total = 0.0;
  for (std::size_t i : order) {
    if (!(probs[i] >= 0.0))
      throw JsonSchemaError("pmf probabilities must be nonnegative");
    if (!pmf.offsets.empty() && pmf.offsets.back() == offsets[i])
      throw JsonSchemaError("duplicate pmf offset");
    if (probs[i] == 0.0) continue;
    pmf.offsets.push_back(offsets[i]);
    pmf.probs.push_back(probs[i]);
    total += probs[i];
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw JsonSchemaError("pmf probabilities must sum to 1 (got " +
                          format_scalar(total) + ")");
  if (pmf.offsets.empty()) throw JsonSchemaError("pmf has no positive mass");
  return pmf;
}

LatticePmf convolve(const LatticePmf& a, const LatticePmf& b) {
  std::map<long long, double> acc;
  for (std::size_t i = 0; i < a.offsets.size(); ++i)
    for (std::size_t j = 0; j < b.offsets.size(); ++j)
      acc[a.offsets[i] + b.offsets[j]] += a.probs[i] * b.probs[j];
  std::vector<long long> offsets;
  std::vector<double> probs;
  for (const auto& [k, p] : acc) {
    offsets.push_back(k);
    probs.push_back(p);
  }
  // Renormalize away roundoff so the result is again a valid pmf.
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= total;
  return make_lattice_pmf(std::move(offsets), std::move(probs));
}

int default_grid_size(long long span) {
  return static_cast<int>(std::max<long long>(256, 8 * span));
}

QidCheck qid_check_lattice(const LatticePmf& pmf, int grid_size) {
  const long long span = pmf.span();
  if (grid_size == 0) grid_size = default_grid_size(span);
  if (grid_size < std::max<long long>(4, 4 * span))
    throw std::invalid_argument("grid_size must be at least 4 * support span");

  std::vector<double> mods(static_cast<std::size_t>(grid_size));
  parallel_for(mods.size(), [&](std::size_t j) {
    mods[j] = cf_modulus(pmf, kTwoPi * static_cast<double>(j) / grid_size);
  });
  std::size_t jmin = 0;
  for (std::size_t j = 1; j < mods.size(); ++j)
    if (mods[j] < mods[jmin]) jmin = j;

  const double step = kTwoPi / grid_size;
  const double center = step * static_cast<double>(jmin);
  const auto [theta, modulus] = refine_minimum(pmf, center - step, center + step);

  QidCheck out;
  out.min_cf_modulus = modulus;
  out.witness_theta = theta < 0.0 ? theta + kTwoPi : theta;
  out.grid_size = grid_size;
  if (modulus > kZeroThreshold) {
    out.is_qid = true;
  } else if (modulus < kInconclusiveFloor) {
    out.is_qid = false;
  } else {
    throw InconclusiveError(
        "refined cf minimum " + format_scalar(modulus) + " at theta=" +
            format_scalar(out.witness_theta) +
            " lies in the inconclusive band [1e-12, 1e-8]; increase precision",
        modulus, out.witness_theta);
  }
  return out;
}

TripletExtraction extract_triplet_lattice(const LatticePmf& pmf, int grid_size) {
  const long long span = pmf.span();
  if (grid_size == 0) grid_size = default_grid_size(span);

  const QidCheck check = qid_check_lattice(pmf, grid_size);
  if (!check.is_qid)
    throw NotQidError("characteristic function vanishes (modulus " +
                      format_scalar(check.min_cf_modulus) + " at theta=" +
                      format_scalar(check.witness_theta) +
                      "); no quasi-Levy triplet exists");

  const std::size_t n = static_cast<std::size_t>(grid_size);
  std::vector<std::complex<double>> cf(n);
  parallel_for(n, [&](std::size_t j) {
    cf[j] = pmf.cf(kTwoPi * static_cast<double>(j) / grid_size);
  });

  // Continuous branch of log cf along the grid, anchored at log cf(0) = 0.
  std::vector<double> phase(n);
  phase[0] = std::arg(cf[0]);
  double max_step = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double delta = std::arg(cf[j] / cf[j - 1]);
    max_step = std::max(max_step, std::fabs(delta));
    if (std::fabs(delta) >= M_PI / 2.0)
      throw BranchTrackingError("phase step " + format_scalar(delta) +
                                " at grid index " + std::to_string(j) +
                                " exceeds pi/2; grid too coarse");
    phase[j] = phase[j - 1] + delta;
  }
  const double wrap = std::arg(cf[0] / cf[n - 1]);
  max_step = std::max(max_step, std::fabs(wrap));
  if (std::fabs(wrap) >= M_PI / 2.0)
    throw BranchTrackingError("phase step at the wrap-around exceeds pi/2; grid too coarse");
  const double total_phase = phase[n - 1] + wrap - phase[0];
  const long long winding = std::llround(total_phase / kTwoPi);

  // Periodic part of the distinguished logarithm.
  std::vector<std::complex<double>> g(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / grid_size;
    g[j] = std::complex<double>(std::log(std::abs(cf[j])),
                                phase[j] - static_cast<double>(winding) * theta);
  }

  const auto coeff = fourier::dft(g, span);

  // Frequencies form the full residue system n in (-N/2, N/2]; the DFT
  // coefficients then sum to g(0) = 0, which makes the reconstruction exact
  // at the grid points up to roundoff.
  std::vector<std::pair<long long, double>> masses;
  for (std::size_t k = 0; k < n; ++k) {
    long long freq = static_cast<long long>(k);
    if (freq > grid_size / 2) freq -= grid_size;
    if (freq == 0) continue;
    const double mass = coeff[k].real();
    if (std::fabs(mass) > kAtomDropThreshold)
      masses.emplace_back(freq, mass);
  }
  std::sort(masses.begin(), masses.end(), [](const auto& a, const auto& b) {
    const long long aa = std::llabs(a.first), bb = std::llabs(b.first);
    return aa != bb ? aa < bb : a.first < b.first;
  });

  double gamma = static_cast<double>(winding);
  std::vector<std::pair<double, double>> levy_atoms;
  for (const auto& [freq, mass] : masses) {
    gamma += truncate_tau(static_cast<double>(freq)) * mass;
    levy_atoms.emplace_back(static_cast<double>(freq), mass);
  }

  TripletExtraction out;
  out.triplet =
      CharacteristicTriplet<double>{gamma, 0.0, make_quasi_levy(std::move(levy_atoms))};
  out.ordered_masses = std::move(masses);
  out.winding = winding;
  out.grid_size = grid_size;
  out.max_phase_step = max_step;
  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / grid_size;
    residual = std::max(residual, std::abs(cf_eval(out.triplet, theta) - cf[j]));
  }
  out.roundtrip_residual = residual;
  return out;
}

}  // namespace qidm
