#include <doctest.h>

#include "qidm/bimeasure.hpp"
#include "support.hpp"

using namespace qidm;

namespace {

// Q0 with atom matrix [[1,-1],[2,0]] over T = {t1,t2}, X = {x1,x2}.
Bimeasure<Rational> sample_2x2() {
  const SpacePtr space = make_space({"t1", "t2"});
  return make_bimeasure<Rational>(space, {"x1", "x2"},
                                  {{Rational(1), Rational(-1)},
                                   {Rational(2), Rational(0)}});
}

}  // namespace

TEST_CASE("variation on the 2x2 sample") {
  const auto bm = sample_2x2();
  CHECK(variation(bm, full_member(bm.t_space)) == Rational(4));
  CHECK(variation(bm, make_member(bm.t_space, {0})) == Rational(2));
}

TEST_CASE("variation of the zero bimeasure is zero") {
  const SpacePtr space = make_space({"t1"});
  const auto bm = make_bimeasure<Rational>(space, {"x1"}, {{Rational(0)}});
  CHECK(variation(bm, full_member(space)) == Rational(0));
}

TEST_CASE("brute force variation on small instances") {
  const auto bm = sample_2x2();
  SUBCASE("full space, attained by the four singleton rectangles") {
    const auto r = variation_bruteforce(bm, full_member(bm.t_space));
    CHECK(r.value == Rational(4));
    CHECK(r.witness.size() == 3);  // cell (t2,x2) carries 0 and is not needed
  }
  SUBCASE("restricted to {t1}") {
    const auto r = variation_bruteforce(bm, make_member(bm.t_space, {0}));
    CHECK(r.value == Rational(2));
  }
  SUBCASE("single negative cell") {
    const SpacePtr space = make_space({"t1"});
    const auto single =
        make_bimeasure<Rational>(space, {"x1"}, {{Rational(-5)}});
    const auto r = variation_bruteforce(single, full_member(space));
    CHECK(r.value == Rational(5));
    REQUIRE(r.witness.size() == 1);
    CHECK(r.witness[0].t_set == std::vector<int>{0});
    CHECK(r.witness[0].x_set == std::vector<int>{0});
  }
  SUBCASE("all-ones matrix ties with the full rectangle") {
    const SpacePtr space = make_space({"t1", "t2"});
    const auto ones = make_bimeasure<Rational>(
        space, {"x1", "x2"},
        {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}});
    const auto r = variation_bruteforce(ones, full_member(space));
    CHECK(r.value == Rational(4));
    // Lexicographically first optimum: singleton {t1}x{x1} first.
    REQUIRE(!r.witness.empty());
    CHECK(r.witness[0].t_set == std::vector<int>{0});
    CHECK(r.witness[0].x_set == std::vector<int>{0});
  }
}

TEST_CASE("brute force rejects oversized instances") {
  SeededRng rng(201);
  const auto bm = test::random_bimeasure<Rational>(rng, 4, 4);
  if (bm.t_space->size() * bm.x_size() > 2)
    CHECK_THROWS_AS(variation_bruteforce(bm, full_member(bm.t_space), 2),
                    InstanceTooLarge);
}

TEST_CASE("variation equals brute force on random instances") {
  SeededRng rng(202);
  for (int trial = 0; trial < 60; ++trial) {
    const auto bm = test::random_bimeasure<Rational>(rng, 3, 3);
    const auto A = full_member(bm.t_space);
    CHECK(variation(bm, A) == variation_bruteforce(bm, A).value);
  }
}

TEST_CASE("variation equals brute force at the 12-cell limit") {
  const SpacePtr space = make_space({"t1", "t2", "t3"});
  const auto bm = make_bimeasure<Rational>(
      space, {"x1", "x2", "x3", "x4"},
      {{Rational(1), Rational(-2), Rational(3), Rational(-1)},
       {Rational(4), Rational(0), Rational(-5), Rational(2)},
       {Rational(-3), Rational(6), Rational(1), Rational(-7)}});
  const auto A = full_member(space);
  const auto r = variation_bruteforce(bm, A, 12);
  CHECK(r.value == variation(bm, A));
  CHECK(r.value == Rational(35));
}

TEST_CASE("float-mode disintegration reconstructs within 1e-9") {
  SeededRng rng(206);
  for (int trial = 0; trial < 30; ++trial) {
    const auto bm = test::random_bimeasure<double>(rng, 5, 4);
    const auto dis = disintegrate(bm);
    std::vector<int> xu(bm.x_size());
    for (std::size_t i = 0; i < xu.size(); ++i) xu[i] = static_cast<int>(i);
    for (const auto& Bs : test::all_subsets(xu)) {
      const auto A = full_member(bm.t_space);
      CHECK(std::fabs(dis.reconstruct(A, Bs) - bm.rect(A, Bs)) <= 1e-9);
    }
  }
}

TEST_CASE("variation is monotone in the set argument") {
  SeededRng rng(203);
  for (int trial = 0; trial < 40; ++trial) {
    const auto bm = test::random_bimeasure<Rational>(rng, 5, 4);
    std::vector<int> universe(bm.t_space->size());
    for (std::size_t i = 0; i < universe.size(); ++i) universe[i] = static_cast<int>(i);
    const auto subsets = test::all_subsets(universe);
    for (const auto& small : subsets) {
      const auto A = make_member(bm.t_space, small);
      const auto B = full_member(bm.t_space);
      CHECK(variation(bm, A) <= variation(bm, B));
    }
  }
}

TEST_CASE("disintegration of the 2x2 sample") {
  const auto bm = sample_2x2();
  const auto dis = disintegrate(bm);
  CHECK(dis.nu.nu.weights[0] == Rational(2));
  CHECK(dis.nu.nu.weights[1] == Rational(2));
  CHECK(dis.kernel.q(0, 0) == Rational(1, 2));
  CHECK(dis.kernel.q(0, 1) == Rational(-1, 2));
  CHECK(dis.kernel.q(1, 0) == Rational(1));
  CHECK(dis.kernel.q(1, 1) == Rational(0));
  CHECK(dis.kernel.row_mass(0) == Rational(1));
  CHECK(dis.kernel.row_mass(1) == Rational(1));
  // Reconstruction over all 9 rectangle pairs (including empties).
  for (const auto& As : test::all_subsets({0, 1}))
    for (const auto& Bs : test::all_subsets({0, 1})) {
      const auto A = make_member(bm.t_space, As);
      CHECK(dis.reconstruct(A, Bs) == bm.rect(A, Bs));
    }
}

TEST_CASE("disintegration of the zero bimeasure omits all rows") {
  const SpacePtr space = make_space({"t1", "t2"});
  const auto bm = make_bimeasure<Rational>(
      space, {"x1"}, {{Rational(0)}, {Rational(0)}});
  const auto dis = disintegrate(bm);
  CHECK(dis.nu.nu.is_zero_measure());
  CHECK(!dis.kernel.has_row[0]);
  CHECK(!dis.kernel.has_row[1]);
  CHECK(dis.kernel.q(0, 0) == Rational(0));
}

TEST_CASE("product bimeasure has identical kernel rows") {
  // Q0(A,B) = mu(A) rho(B) with mu >= 0 and rho a probability.
  const SpacePtr space = make_space({"t1", "t2", "t3"});
  const std::vector<Rational> mu = {Rational(2), Rational(0), Rational(1, 2)};
  const std::vector<Rational> rho = {Rational(1, 4), Rational(3, 4)};
  std::vector<std::vector<Rational>> entries;
  for (const auto& m : mu) {
    std::vector<Rational> row;
    for (const auto& r : rho) row.push_back(m * r);
    entries.push_back(row);
  }
  const auto bm = make_bimeasure<Rational>(space, {"x1", "x2"}, std::move(entries));
  const auto dis = disintegrate(bm);
  for (std::size_t t = 0; t < 3; ++t) {
    if (is_zero(mu[t])) {
      CHECK(!dis.kernel.has_row[t]);
      continue;
    }
    for (std::size_t x = 0; x < 2; ++x)
      CHECK(dis.kernel.q(static_cast<int>(t), static_cast<int>(x)) == rho[x]);
  }
}

TEST_CASE("random disintegrations reconstruct and stay sub-Markovian") {
  SeededRng rng(204);
  for (int trial = 0; trial < 60; ++trial) {
    const auto bm = test::random_bimeasure<Rational>(rng, 5, 4);
    const auto dis = disintegrate(bm);
    std::vector<int> tu(bm.t_space->size());
    for (std::size_t i = 0; i < tu.size(); ++i) tu[i] = static_cast<int>(i);
    std::vector<int> xu(bm.x_size());
    for (std::size_t i = 0; i < xu.size(); ++i) xu[i] = static_cast<int>(i);
    for (const auto& As : test::all_subsets(tu))
      for (const auto& Bs : test::all_subsets(xu)) {
        const auto A = make_member(bm.t_space, As);
        CHECK(dis.reconstruct(A, Bs) == bm.rect(A, Bs));
      }
    for (int t : tu) {
      const auto mass = dis.kernel.row_mass(t);
      CHECK(mass <= Rational(1));
      if (!is_zero(dis.nu.nu.at(t))) CHECK(mass == Rational(1));
      // Jordan parts of the row have disjoint supports.
      for (int x : xu)
        CHECK((is_zero(dis.kernel.q_plus[static_cast<std::size_t>(t)][static_cast<std::size_t>(x)]) ||
               is_zero(dis.kernel.q_minus[static_cast<std::size_t>(t)][static_cast<std::size_t>(x)])));
    }
  }
}

TEST_CASE("signed extension equals the difference of the positive parts") {
  SeededRng rng(205);
  for (int trial = 0; trial < 30; ++trial) {
    const auto bm = test::random_bimeasure<Rational>(rng, 4, 3);
    const auto dis = disintegrate(bm);
    // Random subsets C of the product space.
    std::vector<std::pair<int, int>> all_cells;
    for (std::size_t t = 0; t < bm.t_space->size(); ++t)
      for (std::size_t x = 0; x < bm.x_size(); ++x)
        all_cells.emplace_back(static_cast<int>(t), static_cast<int>(x));
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<std::pair<int, int>> C;
      for (const auto& cell : all_cells)
        if (rng.coin()) C.push_back(cell);
      CHECK(dis.q_plus_mass(C) - dis.q_minus_mass(C) == dis.q_signed_mass(C));
    }
  }
}

TEST_CASE("kernel uniqueness accepts the canonical kernel") {
  const auto bm = sample_2x2();
  const auto dis = disintegrate(bm);
  const auto report = kernel_uniqueness_check(dis, dis.kernel);
  CHECK(report.agrees_nu_ae);
  CHECK(report.differing_atoms.empty());
}

TEST_CASE("kernel uniqueness tolerates nu-null modifications") {
  const SpacePtr space = make_space({"t1", "t2"});
  const auto bm = make_bimeasure<Rational>(
      space, {"x1", "x2"},
      {{Rational(1), Rational(-1)}, {Rational(0), Rational(0)}});
  const auto dis = disintegrate(bm);
  auto alt = dis.kernel;
  alt.has_row[1] = 1;  // invent a row on the nu-null atom t2
  alt.q_plus[1] = {Rational(1, 3), Rational(0)};
  alt.q_minus[1] = {Rational(0), Rational(1, 4)};
  const auto report = kernel_uniqueness_check(dis, alt);
  CHECK(report.agrees_nu_ae);
  CHECK(report.differing_atoms == std::vector<int>{1});
  CHECK(report.nu_mass_of_difference == Rational(0));
}

TEST_CASE("kernel uniqueness rejects nu-positive perturbations") {
  const auto bm = sample_2x2();
  const auto dis = disintegrate(bm);
  auto alt = dis.kernel;
  alt.q_plus[0][0] += Rational(1, 10);
  CHECK_THROWS_AS(kernel_uniqueness_check(dis, alt), NotAKernelError);
}

TEST_CASE("necessity witness flags unbounded families") {
  const SpacePtr space = make_space({"t1"});
  std::vector<Bimeasure<Rational>> family;
  for (int n = 1; n <= 5; ++n)
    family.push_back(make_bimeasure<Rational>(space, {"x1", "x2"},
                                              {{Rational(n), Rational(-n)}}));
  const auto report = necessity_witness(family, full_member(space));
  CHECK(report.strictly_increasing);
  for (std::size_t i = 0; i < family.size(); ++i) {
    CHECK(report.entries[i].variation_value == Rational(2 * (static_cast<long long>(i) + 1)));
    CHECK(report.entries[i].witness.size() == 2);
  }
}

TEST_CASE("necessity witness reports bounded constant families") {
  const SpacePtr space = make_space({"t1"});
  std::vector<Bimeasure<Rational>> family(
      3, make_bimeasure<Rational>(space, {"x1"}, {{Rational(7)}}));
  const auto report = necessity_witness(family, full_member(space));
  CHECK(!report.strictly_increasing);
  CHECK(report.statement.find("holds") != std::string::npos);
}

TEST_CASE("necessity witness on the scaled checkerboard") {
  const SpacePtr space = make_space({"t1", "t2"});
  std::vector<Bimeasure<Rational>> family;
  for (int n = 1; n <= 4; ++n)
    family.push_back(make_bimeasure<Rational>(
        space, {"x1", "x2"},
        {{Rational(n), Rational(-n)}, {Rational(-n), Rational(n)}}));
  const auto report = necessity_witness(family, full_member(space));
  CHECK(report.strictly_increasing);
  for (std::size_t i = 0; i < family.size(); ++i)
    CHECK(report.entries[i].variation_value == Rational(4 * (static_cast<long long>(i) + 1)));
}
