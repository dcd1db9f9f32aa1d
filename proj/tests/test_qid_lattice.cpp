#include <doctest.h>

#include <cmath>
#include <complex>

#include "qidm/fourier.hpp"
#include "qidm/lattice_qid.hpp"
#include "support.hpp"

using namespace qidm;

namespace {

LatticePmf bernoulli(double p) { return make_lattice_pmf({0, 1}, {1.0 - p, p}); }

LatticePmf truncated_poisson(double mean, long long cutoff) {
  std::vector<long long> offsets;
  std::vector<double> probs;
  double term = std::exp(-mean);
  double total = 0.0;
  for (long long k = 0; k <= cutoff; ++k) {
    offsets.push_back(k);
    probs.push_back(term);
    total += term;
    term *= mean / static_cast<double>(k + 1);
  }
  for (double& p : probs) p /= total;
  return make_lattice_pmf(std::move(offsets), std::move(probs));
}

// Random pmf with a point mass above 1/2 somewhere inside a span-limited
// window.
LatticePmf dominated_pmf(SeededRng& rng, long long max_span) {
  const long long lo = rng.uniform_int(-4, 4);
  const long long width = rng.uniform_int(1, max_span);
  const long long site = rng.uniform_int(lo, lo + width);
  const double p0 = 0.55 + 0.4 * rng.uniform();
  std::vector<long long> offsets;
  std::vector<double> raw;
  double rest = 0.0;
  for (long long k = lo; k <= lo + width; ++k) {
    if (k == site) continue;
    const double w = rng.uniform();
    offsets.push_back(k);
    raw.push_back(w);
    rest += w;
  }
  std::vector<double> probs;
  for (double w : raw) probs.push_back(rest > 0.0 ? (1.0 - p0) * w / rest : 0.0);
  offsets.push_back(site);
  probs.push_back(p0);
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  return make_lattice_pmf(std::move(offsets), std::move(probs));
}

}  // namespace

TEST_CASE("tau clamps to the unit ball") {
  CHECK(truncate_tau(0.5) == 0.5);
  CHECK(truncate_tau(-3.0) == -1.0);
  CHECK(truncate_tau(1.0) == 1.0);
  CHECK(truncate_tau(Rational(-7, 2)) == Rational(-1));
  CHECK(truncate_tau(Rational(1, 3)) == Rational(1, 3));
}

TEST_CASE("cf_eval closed forms") {
  SUBCASE("standard Gaussian at theta = 1") {
    const auto trip = make_triplet<double>(0.0, 1.0, {});
    CHECK(std::abs(cf_eval(trip, 1.0) - std::exp(-0.5)) < 1e-15);
  }
  SUBCASE("unit drift plus unit mass at 1 is Poisson(1)") {
    const auto trip = make_triplet<double>(1.0, 0.0, make_quasi_levy<double>({{1.0, 1.0}}));
    for (double theta : {-2.0, -0.5, 0.3, 1.7}) {
      const auto expected = std::exp(std::polar(1.0, theta) - 1.0);
      CHECK(std::abs(cf_eval(trip, theta) - expected) < 1e-14);
    }
  }
  SUBCASE("any triplet evaluates to 1 at theta = 0") {
    SeededRng rng(301);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::pair<double, double>> atoms;
      for (int i = 0; i < 3; ++i)
        atoms.emplace_back(rng.uniform() * 4.0 - 2.0 + 0.1, rng.uniform() - 0.5);
      const auto trip = make_triplet<double>(rng.uniform(), rng.uniform(),
                                             make_quasi_levy(std::move(atoms)));
      CHECK(std::abs(cf_eval(trip, 0.0) - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("cf_eval conjugate symmetry") {
  SeededRng rng(302);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<double, double>> atoms;
    for (int i = 0; i < 4; ++i)
      atoms.emplace_back(rng.uniform_int(1, 5) * (rng.coin() ? 1.0 : -1.0),
                         rng.uniform() - 0.5);
    const auto trip = make_triplet<double>(rng.uniform(), rng.uniform(),
                                           make_quasi_levy(std::move(atoms)));
    for (double theta : {0.3, 1.1, 2.9}) {
      const auto plus = cf_eval(trip, theta);
      const auto minus = cf_eval(trip, -theta);
      CHECK(std::abs(minus - std::conj(plus)) < 1e-14);
    }
  }
}

TEST_CASE("qid check on Bernoulli(0.3)") {
  const auto check = qid_check_lattice(bernoulli(0.3));
  CHECK(check.is_qid);
  CHECK(check.min_cf_modulus == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(check.witness_theta == doctest::Approx(M_PI).epsilon(1e-6));
}

TEST_CASE("qid check on Bernoulli(0.5) finds the zero at pi") {
  const auto check = qid_check_lattice(bernoulli(0.5));
  CHECK(!check.is_qid);
  CHECK(check.min_cf_modulus < 1e-12);
  CHECK(std::abs(bernoulli(0.5).cf(M_PI)) < 1e-12);
}

TEST_CASE("qid check on truncated Poisson(1)") {
  const auto check = qid_check_lattice(truncated_poisson(1.0, 30));
  CHECK(check.is_qid);
  CHECK(check.min_cf_modulus > std::exp(-2.0) - 1e-9);
}

TEST_CASE("qid check rejects undersized grids") {
  CHECK_THROWS_AS(qid_check_lattice(bernoulli(0.3), 2), std::invalid_argument);
}

TEST_CASE("point masses above 1/2 are always QID") {
  SeededRng rng(303);
  for (int trial = 0; trial < 500; ++trial) {
    const auto pmf = dominated_pmf(rng, 8);
    const auto check = qid_check_lattice(pmf);
    CHECK(check.is_qid);
  }
}

TEST_CASE("triplet extraction for Bernoulli(0.3) matches the power series") {
  const auto ext = extract_triplet_lattice(bernoulli(0.3));
  CHECK(ext.winding == 0);
  CHECK(ext.triplet.a == 0.0);
  // log(1 + (3/7) e^{i theta}) = sum (-1)^{n+1} (3/7)^n / n e^{i n theta}
  const double q = 3.0 / 7.0;
  CHECK(ext.triplet.levy.mass_at(1.0) == doctest::Approx(q).epsilon(1e-12));
  CHECK(ext.triplet.levy.mass_at(2.0) == doctest::Approx(-q * q / 2.0).epsilon(1e-10));
  CHECK(ext.triplet.levy.mass_at(3.0) == doctest::Approx(q * q * q / 3.0).epsilon(1e-10));
  CHECK(ext.triplet.levy.mass_at(-1.0) == 0.0);
  // Signs alternate down the positive axis.
  for (const auto& [n, mass] : ext.ordered_masses) {
    if (n < 1 || std::fabs(mass) < 1e-12) continue;
    CHECK(mass * ((n % 2 == 1) ? 1.0 : -1.0) > 0.0);
  }
  // gamma = sum tau(n) c_n = log(10/7) here.
  CHECK(ext.triplet.gamma == doctest::Approx(std::log(10.0 / 7.0)).epsilon(1e-10));
  CHECK(ext.roundtrip_residual < 1e-10);
}

TEST_CASE("triplet extraction for truncated Poisson(1)") {
  const auto ext = extract_triplet_lattice(truncated_poisson(1.0, 30));
  CHECK(ext.triplet.levy.mass_at(1.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(ext.triplet.gamma == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(ext.triplet.a == 0.0);
  double other = 0.0;
  for (const auto& [n, mass] : ext.ordered_masses)
    if (n != 1) other += std::fabs(mass);
  CHECK(other < 1e-8);
}

TEST_CASE("triplet extraction of a degenerate point mass") {
  SUBCASE("at zero") {
    const auto ext = extract_triplet_lattice(make_lattice_pmf({0}, {1.0}));
    CHECK(ext.triplet.levy.empty());
    CHECK(ext.triplet.gamma == 0.0);
    CHECK(ext.triplet.a == 0.0);
  }
  SUBCASE("at a nonzero site the drift is the site") {
    const auto ext = extract_triplet_lattice(make_lattice_pmf({3}, {1.0}));
    CHECK(ext.triplet.levy.empty());
    CHECK(ext.winding == 3);
    CHECK(ext.triplet.gamma == doctest::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("extraction round trip stays within 1e-8 on the grid") {
  SeededRng rng(304);
  for (int trial = 0; trial < 60; ++trial) {
    const auto pmf = dominated_pmf(rng, 16);
    const auto ext = extract_triplet_lattice(pmf);
    CHECK(ext.roundtrip_residual <= 1e-8);
  }
}

TEST_CASE("extraction stays exact on the grid at small cf modulus") {
  // min |cf| = 1e-3 here; well inside the QID verdict but close to the
  // round-trip scope boundary.
  const auto pmf = make_lattice_pmf({0, 1}, {0.5005, 0.4995});
  const auto check = qid_check_lattice(pmf);
  CHECK(check.is_qid);
  CHECK(check.min_cf_modulus == doctest::Approx(1e-3).epsilon(1e-6));
  const auto ext = extract_triplet_lattice(pmf);
  CHECK(ext.roundtrip_residual <= 1e-8);
}

TEST_CASE("refined minimum inside the band raises InconclusiveError") {
  const double p = 0.5 - 0.5e-10;  // cf(pi) = 1e-10
  CHECK_THROWS_AS(qid_check_lattice(make_lattice_pmf({0, 1}, {1.0 - p, p})),
                  InconclusiveError);
}

TEST_CASE("extraction refuses a vanishing cf") {
  CHECK_THROWS_AS(extract_triplet_lattice(make_lattice_pmf({0, 1}, {0.5, 0.5})),
                  NotQidError);
}

TEST_CASE("coarse grids fail branch tracking loudly") {
  // A point mass far from the origin winds too fast for the default grid.
  CHECK_THROWS_AS(extract_triplet_lattice(make_lattice_pmf({100}, {1.0})),
                  BranchTrackingError);
  // An explicit fine grid resolves it.
  const auto ext = extract_triplet_lattice(make_lattice_pmf({100}, {1.0}), 1024);
  CHECK(ext.winding == 100);
}

TEST_CASE("negative-offset supports extract cleanly") {
  const auto pmf = make_lattice_pmf({-2, -1, 0}, {0.2, 0.7, 0.1});
  const auto ext = extract_triplet_lattice(pmf);
  CHECK(ext.winding == -1);
  CHECK(ext.roundtrip_residual <= 1e-9);
}

TEST_CASE("convolution multiplies cfs and adds triplets") {
  const auto a = bernoulli(0.2);
  const auto b = truncated_poisson(0.5, 20);
  const auto conv = convolve(a, b);
  for (double theta : {0.4, 1.3, 2.2}) {
    CHECK(std::abs(conv.cf(theta) - a.cf(theta) * b.cf(theta)) < 1e-12);
  }
  const auto ea = extract_triplet_lattice(a);
  const auto eb = extract_triplet_lattice(b);
  const auto ec = extract_triplet_lattice(conv);
  CHECK(ec.triplet.gamma ==
        doctest::Approx(ea.triplet.gamma + eb.triplet.gamma).epsilon(1e-8));
  const auto sum = add_measures(ea.triplet.levy, eb.triplet.levy);
  for (const auto& [x, mass] : ec.triplet.levy.atoms)
    CHECK(mass == doctest::Approx(sum.mass_at(x)).epsilon(1e-8));
  for (const auto& [x, mass] : sum.atoms)
    CHECK(std::fabs(mass - ec.triplet.levy.mass_at(x)) <= 1e-8);
}

TEST_CASE("quasi levy integration") {
  SUBCASE("1 ∧ x² against a single unit atom") {
    const auto nu = make_quasi_levy<Rational>({{Rational(1), Rational(1)}});
    CHECK(quasi_levy_integrate<Rational>(nu, [](const Rational& x) {
      return min_one_x2(x);
    }) == Rational(1));
  }
  SUBCASE("cancellation across signed atoms") {
    const auto nu = make_quasi_levy<Rational>(
        {{Rational(2), Rational(1)}, {Rational(1, 2), Rational(-4)}});
    CHECK(quasi_levy_integrate<Rational>(nu, [](const Rational& x) {
      return min_one_x2(x);
    }) == Rational(0));
  }
  SUBCASE("polynomials agree with the two-pass jordan computation") {
    SeededRng rng(305);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<std::pair<Rational, Rational>> atoms;
      for (int i = 0; i < 4; ++i) {
        Rational x = test::random_rational(rng, 3);
        if (is_zero(x)) x = Rational(1, 7);
        atoms.emplace_back(x, test::random_rational(rng, 3));
      }
      const auto nu = make_quasi_levy(std::move(atoms));
      const auto g = [](const Rational& x) { return x * x * x - Rational(2) * x + Rational(1); };
      const auto [pos, neg] = jordan_parts(nu);
      const Rational direct = quasi_levy_integrate<Rational>(nu, g);
      const Rational split = quasi_levy_integrate<Rational>(pos, g) -
                             quasi_levy_integrate<Rational>(neg, g);
      CHECK(direct == split);
    }
  }
}

TEST_CASE("jordan parts of tail restrictions are finite and singular") {
  SeededRng rng(306);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<Rational, Rational>> atoms;
    for (int i = 0; i < 5; ++i) {
      Rational x = test::random_rational(rng, 3);
      if (is_zero(x)) x = Rational(-2, 3);
      atoms.emplace_back(x, test::random_rational(rng, 5));
    }
    const auto nu = make_quasi_levy(std::move(atoms));
    for (const Rational r : {Rational(1, 10), Rational(1), Rational(3)}) {
      const auto tail = restrict_tail(nu, r);
      const auto [pos, neg] = jordan_parts(tail);
      for (const auto& [x, m] : pos.atoms) {
        CHECK(nabs(x) >= r);
        CHECK(is_zero(neg.mass_at(x)));
      }
    }
  }
}

TEST_CASE("direct and FFT transforms agree") {
  SeededRng rng(307);
  std::vector<std::complex<double>> data(320);
  for (auto& v : data) v = std::complex<double>(rng.uniform() - 0.5, rng.uniform() - 0.5);
  const auto a = fourier::dft_direct(data);
  const auto b = fourier::dft_fftw(data);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
}
