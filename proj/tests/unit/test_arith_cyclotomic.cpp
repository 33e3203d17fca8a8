#include <doctest.h>

#include <complex>

#include "epsfact/arith.hpp"
#include "epsfact/cyclotomic.hpp"
#include "epsfact/errors.hpp"
#include "gen.hpp"

using namespace epsfact;

namespace {

CycNum z(i64 n, i64 k) { return cyc_lift(Integer(1), n, k); }

std::complex<long double> zc(i64 n, i64 k) { return std::polar(1.0L, 2 * acosl(-1.0L) * k / n); }

CycNum random_cyc(std::mt19937_64& r, i64 level, int terms) {
  CycNum x;
  for (int i = 0; i < terms; ++i) x += cyc_lift(Integer(gen::uniform(r, -1000, 1000)), level, gen::uniform(r, 0, level - 1));
  return x;
}

}  // namespace

TEST_CASE("integer helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(7919));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(7917));
  CHECK(factorize(360) == std::vector<std::pair<i64, int>>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(euler_phi(100) == 40);
  CHECK(mobius(30) == -1);
  CHECK(mobius(12) == 0);
  CHECK(divisors(12) == std::vector<i64>{1, 2, 3, 4, 6, 12});
  CHECK(invmod(3, 7) == 5);
  CHECK_THROWS_AS(invmod(5, 10), UsageError);
  CHECK(vp(250, 5) == 3);
  CHECK_THROWS_AS(ipow_checked(10, 30, i64{1} << 40), ResourceError);
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK((Rational(1, 2) + Rational(1, 3)).str() == "5/6");
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<i64>{-1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<i64>{1, 0, -1, 0, 1});
  // first cyclotomic polynomial with a coefficient of absolute value 2
  const auto& p105 = cyclotomic_polynomial(105);
  CHECK(p105.size() == 49);
  CHECK(p105[7] == -2);
  CHECK(p105[41] == -2);
  for (i64 n : {1, 2, 6, 9, 25, 100, 210}) CHECK(static_cast<i64>(cyclotomic_polynomial(n).size()) - 1 == euler_phi(n));
}

TEST_CASE("cyc_lift examples") {
  CHECK(z(4, 2) == CycNum(Integer(-1)));
  CHECK((z(3, 0) + z(3, 1) + z(3, 2)).is_zero());
  CHECK(z(6, 1) == CycNum(Integer(1)) + z(3, 1));
  CHECK(z(6, 1) == -z(3, 2));
  CHECK(z(5, 1) * z(5, 4) == CycNum(Integer(1)));
  CHECK((CycNum(Integer(1)) + z(8, 1)) * (CycNum(Integer(1)) - z(8, 1)) == CycNum(Integer(1)) - z(4, 1));
  CHECK(z(2, 1) * z(3, 1) == z(6, 5));
  CHECK(z(12, 3).coeffs().size() == 4);
}

TEST_CASE("serialization round trip") {
  auto r = gen::rng(1);
  for (int t = 0; t < 50; ++t) {
    i64 level = gen::uniform(r, 1, 60);
    CycNum x = random_cyc(r, level, 5);
    CHECK(CycNum::parse(x.str()) == x);
    RootNumber w(x, 5, gen::uniform(r, -3, 3));
    RootNumber back = RootNumber::parse(w.str());
    CHECK(back.str() == w.str());
  }
  CHECK_THROWS_AS(CycNum::parse("cyc(4)[1,2"), UsageError);
}

TEST_CASE("level cap") {
  i64 old = max_cyclotomic_level();
  set_max_cyclotomic_level(1000);
  CHECK_THROWS_AS(z(997, 1) * z(991, 1), ResourceError);
  set_max_cyclotomic_level(old);
}

TEST_CASE("ring axioms and embedding homomorphism") {
  auto r = gen::rng(2);
  const i64 levels[] = {7, 12, 45, 125, 360, 1001, 5000};
  for (i64 n : levels) {
    for (int t = 0; t < 3; ++t) {
      CycNum a = random_cyc(r, n, 6), b = random_cyc(r, n, 6), c = random_cyc(r, n, 6);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      auto ea = a.embed(), eb = b.embed();
      auto prod = (a * b).embed();
      CHECK(std::abs(prod - ea * eb) < 1e-9L * (1 + std::abs(ea * eb)));
      CHECK(std::abs((a + b).embed() - ea - eb) < 1e-9L * (1 + std::abs(ea) + std::abs(eb)));
    }
  }
}

TEST_CASE("canonical form ignores multiples of Phi_N") {
  auto r = gen::rng(3);
  for (i64 n : {9, 20, 77}) {
    const auto& phi = cyclotomic_polynomial(n);
    CycNum x = random_cyc(r, n, 8);
    std::vector<i64> counts(n, 0);
    // x + k * x^s * Phi_N(x) for random k, s with s + deg < n
    for (std::size_t i = 0; i < x.coeffs().size(); ++i) counts[i] = x.coeffs()[i].get_si();
    i64 k = gen::uniform(r, -9, 9), s = gen::uniform(r, 0, n - static_cast<i64>(phi.size()));
    for (std::size_t i = 0; i < phi.size(); ++i) counts[s + i] += k * phi[i];
    CHECK(CycNum::from_counts(n, counts) == x);
    CHECK(CycNum::from_counts(n, counts).at_level(3).at_level(1) == x.at_level(3));
  }
}

TEST_CASE("embedding of lifts") {
  for (i64 n : {3, 8, 15, 49})
    for (i64 k = 0; k < n; ++k) CHECK(std::abs(z(n, k).embed() - zc(n, k)) < 1e-12L);
}

TEST_CASE("rootnum_eq") {
  CHECK(rootnum_eq(RootNumber(CycNum(Integer(5)), 5, 2), RootNumber(CycNum(Integer(1)), 5, 0)));
  CHECK_FALSE(rootnum_eq(RootNumber(z(4, 1), 5, 0), RootNumber(-z(4, 1), 5, 0)));
  CHECK_THROWS_AS(rootnum_eq(RootNumber(z(4, 1), 5, 0), RootNumber(z(4, 1), 7, 0)), UsageError);
  // quadratic Gauss sum mod 5 is sqrt 5
  CycNum g;
  for (i64 u = 1; u <= 4; ++u) g += cyc_lift(Integer((u == 1 || u == 4) ? 1 : -1), 5, u);
  CHECK(rootnum_eq(RootNumber(g, 5, 1), RootNumber(CycNum(Integer(1)), 5, 0)));
  CHECK_FALSE(rootnum_eq(RootNumber(-g, 5, 1), RootNumber(CycNum(Integer(1)), 5, 0)));
  // mixed parity with matching square but opposite sign
  CHECK_FALSE(rootnum_eq(RootNumber(g, 5, 1), RootNumber(CycNum(Integer(-1)), 5, 0)));
  // q = 25 viewed as 5^2
  CHECK(rootnum_eq(RootNumber(CycNum(Integer(25)), 25, 2).rebase(5), RootNumber(CycNum(Integer(1)), 5, 0)));
}
