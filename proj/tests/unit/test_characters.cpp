#include <doctest.h>

#include "epsfact/characters.hpp"
#include "epsfact/errors.hpp"
#include "gen.hpp"

using namespace epsfact;

namespace {

std::vector<RootOfUnity> wild1(const RingPtr& R, RootOfUnity w) {
  std::vector<RootOfUnity> v(R->gens().wild.size());
  v[0] = w;
  return v;
}

FieldElem fe(const RingPtr& R, int val, i64 u) { return FieldElem::make(val, R->from_int(u)); }

}  // namespace

TEST_CASE("evaluation examples") {
  RingPtr F = ring_make(5, 1, 4);
  MulCharacter triv = MulCharacter::trivial(F);
  MulCharacter quad(F, {}, RootOfUnity(2, 1), wild1(F, {}));
  CHECK(triv.eval_root(fe(F, 3, 7)).is_one());
  CHECK(quad.eval_root(fe(F, 0, 2)) == RootOfUnity(2, 1));
  CHECK(quad.eval_root(fe(F, 0, 4)).is_one());
  CHECK(quad.eval(fe(F, 0, 2)) == CycNum(Integer(-1)));
}

TEST_CASE("conductor examples") {
  RingPtr F = ring_make(5, 1, 4);
  CHECK(conductor_scan(MulCharacter::trivial(F)) == 0);
  CHECK(conductor_scan(MulCharacter(F, {}, RootOfUnity(2, 1), wild1(F, {}))) == 1);
  MulCharacter w(F, {}, {}, wild1(F, RootOfUnity(5, 1)));
  CHECK(conductor_scan(w) == 2);
  CHECK(w.conductor() == 2);
  CHECK(w.jump() == 1);
  CHECK_THROWS_AS(MulCharacter(ring_make(5, 1, 2), {}, {}, wild1(ring_make(5, 1, 2), RootOfUnity(5, 1))), PrecisionError);
}

TEST_CASE("analytic conductor matches the scan") {
  auto r = gen::rng(20);
  for (auto [p, d, N] : {std::tuple{3, 1, 5}, {5, 1, 4}, {7, 1, 4}, {5, 2, 4}, {3, 3, 4}, {2, 1, 7}}) {
    RingPtr R = ring_make(p, d, N);
    for (int t = 0; t < 40; ++t) {
      MulCharacter chi = gen::character(r, R, N - 1);
      CHECK(conductor_scan(chi) == chi.conductor());
    }
  }
}

TEST_CASE("multiplicativity and twisting") {
  auto r = gen::rng(21);
  RingPtr E = ring_make(5, 2, 4);
  for (int t = 0; t < 500; ++t) {
    MulCharacter chi = gen::character(r, E, 3, 6);
    FieldElem x = gen::field_elem(r, E, -3, 3), y = gen::field_elem(r, E, -3, 3);
    CHECK(chi.eval_root(x * y) == chi.eval_root(x) * chi.eval_root(y));
  }
  for (int t = 0; t < 100; ++t) {
    MulCharacter a = gen::character(r, E, 3), b = gen::character(r, E, 3);
    if (a.conductor() != b.conductor()) CHECK((a * b).conductor() == std::max(a.conductor(), b.conductor()));
    FieldElem x = gen::field_elem(r, E, -2, 2);
    CHECK((a * b).eval_root(x) == a.eval_root(x) * b.eval_root(x));
    CHECK((a * a.inverse()).is_trivial());
    CHECK(a.pow(3).eval_root(x) == a.eval_root(x).pow(3));
  }
  MulCharacter u = MulCharacter::unramified(E, RootOfUnity(3, 1));
  for (int t = 0; t < 20; ++t) {
    FieldElem x = gen::field_elem(r, E, -4, 4);
    CHECK(u.eval_root(x) == RootOfUnity(3, x.val));
  }
}

TEST_CASE("additive characters") {
  RingPtr F = ring_make(5, 1, 4);
  AddCharacter psi = AddCharacter::standard(F);
  CHECK(psi.eval_root(fe(F, -1, 1)) == RootOfUnity(5, 1));
  CHECK(psi.conductor() == 0);
  CHECK(additive_conductor_scan(psi) == 0);
  auto r = gen::rng(22);
  for (int t = 0; t < 50; ++t) CHECK(psi.eval_root(gen::field_elem(r, F, 0, 3)).is_one());
  for (int t = 0; t < 100; ++t) {
    int k = static_cast<int>(gen::uniform(r, -3, 0));
    RingElem a = gen::element(r, F), b = gen::element(r, F);
    CHECK(psi.eval_scaled(k, a + b) == psi.eval_scaled(k, a) * psi.eval_scaled(k, b));
  }
  for (int n = -1; n <= 2; ++n) {
    AddCharacter s = AddCharacter::shifted(F, n, 3);
    CHECK(additive_conductor_scan(s) == n);
    for (int d : {2, 3}) {
      RingPtr E = ring_make(5, d, 4);
      CHECK(additive_conductor_scan(s.lift_to(E)) == n);
    }
  }
  CHECK_THROWS_AS(psi.eval_root(fe(F, -5, 1)), PrecisionError);
}

TEST_CASE("pullback along the norm") {
  RingPtr F = ring_make(5, 1, 4), E = ring_make(5, 2, 4);
  CHECK(pullback_norm(MulCharacter::trivial(F), E).is_trivial());
  MulCharacter chi(F, RootOfUnity(4, 1), RootOfUnity(4, 3), wild1(F, RootOfUnity(5, 2)));
  MulCharacter pb = pullback_norm(chi, E);
  CHECK(pb.conductor() == 2);
  CHECK(conductor_scan(pb) == 2);
  auto r = gen::rng(23);
  for (int t = 0; t < 100; ++t) {
    FieldElem x = gen::field_elem(r, F, -3, 3);
    FieldElem xe = FieldElem::make(x.val, E->from_int(x.unit[0]));
    CHECK(pb.eval_root(xe) == chi.eval_root(x).pow(2));
  }
  CHECK(restrict_to_subfield(pb, F) == chi.pow(2));
  // against the norm directly
  for (int t = 0; t < 50; ++t) {
    RingElem u = gen::unit(r, E);
    i64 n = E->trace_norm(u).second % F->modulus();
    CHECK(pb.eval_unit(u) == chi.eval_unit(F->from_int(n)));
  }
  // intermediate field: degree 2 inside degree 4
  RingPtr E4 = ring_make(5, 4, 3);
  RingPtr E2 = ring_make(5, 2, 3);
  MulCharacter th = gen::character(r, E2, 2);
  MulCharacter pb4 = pullback_norm(th, E4);
  CHECK(pb4.conductor() == th.conductor());
  CHECK(restrict_to_subfield(pb4, E2) == th.pow(2));
}

TEST_CASE("frobenius conjugates") {
  auto r = gen::rng(24);
  RingPtr E = ring_make(7, 3, 3);
  for (int t = 0; t < 20; ++t) {
    MulCharacter th = gen::character(r, E, 2);
    CHECK(frobenius_conjugate(th, 3) == th);
    RingElem u = gen::unit(r, E);
    CHECK(frobenius_conjugate(th, 1).eval_unit(u) == th.eval_unit(E->frobenius(u)));
  }
}

TEST_CASE("jumps of virtual sums") {
  RingPtr F = ring_make(5, 1, 6);
  auto ch = [&](int a) {
    if (a == 0) return MulCharacter::unramified(F, RootOfUnity(2, 1));
    return MulCharacter(F, {}, RootOfUnity(4, 1), wild1(F, a >= 2 ? RootOfUnity(ipow_checked(5, a - 1), 1) : RootOfUnity()));
  };
  std::vector<JumpComponent> one{jump_component(ch(3))};
  JumpRange j1 = jumps_virtual(one);
  CHECK(*j1.j == Rational(2));
  CHECK(*j1.beta == Rational(2));
  std::vector<JumpComponent> two{jump_component(ch(1)), jump_component(ch(4))};
  JumpRange j2 = jumps_virtual(two);
  CHECK(*j2.j == Rational(0));
  CHECK(*j2.beta == Rational(3));
  std::vector<JumpComponent> mixed{jump_component(ch(0), -2), jump_component(ch(3)), jump_component(ch(2))};
  JumpRange j3 = jumps_virtual(mixed);
  CHECK(*j3.beta == Rational(2));
  CHECK(j3.excluded == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(jumps_virtual(std::vector<JumpComponent>{}), UsageError);
}

TEST_CASE("enumeration") {
  RingPtr F = ring_make(5, 1, 4);
  CHECK(enumerate_characters(F, 1, 4).size() == 16);
  CHECK(enumerate_characters(F, 0, 4).size() == 4);
  auto c2 = enumerate_characters(F, 2, 1);
  CHECK(c2.size() == 20);
  for (const auto& c : c2) CHECK(c.conductor() <= 2);
}
