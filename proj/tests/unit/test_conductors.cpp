#include <doctest.h>

#include "epsfact/conductors.hpp"
#include "epsfact/errors.hpp"
#include "epsfact/heisenberg.hpp"
#include "gen.hpp"

using namespace epsfact;

TEST_CASE("induced conductor") {
  CHECK(induced_conductor(4, 0, 1, 1) == 4);
  CHECK(induced_conductor(1, 1, 1, 1) == 2);
  CHECK(induced_conductor(1, 0, 1, 3) == 3);
  CHECK_THROWS_AS(induced_conductor(1, -1, 1, 1), UsageError);
}

TEST_CASE("minimal Heisenberg conductors") {
  auto r = heis_minimal_conductors(4, 1);
  CHECK(r.artin == 4);
  CHECK(r.swan == 0);
  r = heis_minimal_conductors(3, 2);
  CHECK(r.artin == 6);
  CHECK(r.swan == 3);
  CHECK(r.jump == Rational(1));
  CHECK(heis_minimal_conductors(1, 5).artin == 5);
  for (int m = 1; m <= 8; ++m)
    for (int a = 1; a <= 6; ++a) {
      auto c = heis_minimal_conductors(m, a);
      CHECK(c.artin == c.swan + c.dim);
      CHECK(Rational(c.artin) == Rational(c.dim) * (c.jump + Rational(1)));
      CHECK(c.minimal);
    }
}

TEST_CASE("twist conductor") {
  auto r = twist_conductor(2, 0, 2);
  CHECK(r.artin == 6);
  CHECK(r.lemma_branch);
  CHECK_FALSE(r.minimal);
  r = twist_conductor(3, 2, 1);
  CHECK(r.artin == 9);
  CHECK_FALSE(r.lemma_branch);
  for (int m = 1; m <= 5; ++m)
    for (int jx = 0; jx <= 4; ++jx)
      for (int jc = 0; jc <= 4; ++jc) {
        auto c = twist_conductor(m, jx, jc);
        CHECK(c.swan == m * std::max(jx, jc));
        CHECK(c.artin == c.swan + m);
      }
}

TEST_CASE("twist conductor matches the ring-level scan") {
  auto r = gen::rng(40);
  int done = 0;
  for (int t = 0; t < 80 && done < 20; ++t) {
    // tame eta of order 2 over Q_5, or wild eta of order 3 over Q_3
    bool wild = t % 2;
    i64 p = wild ? 3 : 5;
    int m = wild ? 3 : 2;
    int a_eta = wild ? 2 : 1;
    int a_chi = static_cast<int>(gen::uniform(r, 1, 4));
    if (a_chi == a_eta) continue;
    int N = std::max(a_eta, a_chi) + 1;
    INFO("p=" << p << " a_chi=" << a_chi);
    RingPtr F = ring_make(p, 1, N);
    EtaChar eta = wild ? EtaChar(F, RootOfUnity(), {RootOfUnity(3, gen::uniform(r, 1, 2))})
                       : EtaChar(F, RootOfUnity(2, 1), {RootOfUnity()});
    HeisenbergDatum rho0 = heis_minimal(eta, 0, N);
    i64 cden = a_chi >= 2 ? ipow_checked(p, a_chi - 1) : 1;
    MulCharacter chi(F, RootOfUnity(), RootOfUnity(p - 1, gen::uniform(r, 1, p - 2)),
                     {RootOfUnity(cden, a_chi >= 2 ? gen::uniform(r, 1, p - 1) : 0)});
    if (chi.conductor() != a_chi) continue;
    HeisenbergDatum rho = heis_twist(rho0, chi);
    auto sym = twist_conductor(m, a_eta - 1, a_chi - 1);
    CHECK(sym.artin == induced_conductor(m, 0, 1, conductor_scan(rho.theta)));
    CHECK(sym.artin == rho.report.artin);
    ++done;
  }
  CHECK(done >= 10);
}

TEST_CASE("dimension theorem") {
  auto a = dim_theorem_check(6, 5, 25);
  CHECK(a.r == 0);
  CHECK(a.m == 6);
  CHECK(a.valid);
  a = dim_theorem_check(10, 5, 5);
  CHECK(a.r == 1);
  CHECK(a.m == 2);
  CHECK(a.valid);
  a = dim_theorem_check(3, 5, 5);
  CHECK(a.m == 3);
  CHECK_FALSE(a.valid);
  CHECK_THROWS_AS(dim_theorem_check(2, 5, 24), UsageError);
}

TEST_CASE("predicates") {
  CHECK(divisibility_predicate(4, 4, true, true));
  CHECK(divisibility_predicate(2, 6, false, false));
  CHECK_THROWS_AS(divisibility_predicate(2, 3, true, true), InvariantViolation);
  CHECK(tameness_predicate(4, 4, 5));
  CHECK_FALSE(tameness_predicate(4, 8, 5));
  CHECK(tameness_predicate(1, 1, 5));
  CHECK_THROWS_AS(tameness_predicate(5, 5, 5), UsageError);
}

TEST_CASE("tame towers") {
  CHECK_THROWS_AS(TameTower(3, {{"w", 3, 1}}), UsageError);
  auto r = gen::rng(41);
  for (int t = 0; t < 200; ++t) {
    std::vector<TameStep> lo, hi;
    for (int i = 0; i < gen::uniform(r, 1, 3); ++i) {
      int e = static_cast<int>(gen::uniform(r, 1, 6));
      if (e % 7 == 0) e = 1;
      lo.push_back({"l" + std::to_string(i), e, static_cast<int>(gen::uniform(r, 1, 3))});
    }
    for (int i = 0; i < gen::uniform(r, 1, 3); ++i)
      hi.push_back({"h" + std::to_string(i), static_cast<int>(gen::uniform(r, 1, 6)), 1});
    TameTower E(7, lo), K(7, hi);
    TameTower KF = E.compose(K);
    CHECK(KF.different() == K.different() + K.e() * E.different());
    CHECK(KF.e() == E.e() * K.e());
    CHECK(KF.f() == E.f() * K.f());
    CHECK(KF.different() == KF.e() - 1);
  }
  // conductor of a lifted character along an unramified step is unchanged
  CHECK(char_conductor_up(3, {"u", 1, 2}) == 3);
  CHECK(char_conductor_up(1, {"t", 2, 1}) == 1);
}

TEST_CASE("K-side conductor") {
  CHECK(k_side_conductor(2, 1, 1) == std::optional<int>(1));
  CHECK_FALSE(k_side_conductor(2, 2, 1).has_value());
}
