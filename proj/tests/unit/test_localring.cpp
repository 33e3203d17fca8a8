#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "epsfact/dlog_cache.hpp"
#include "epsfact/errors.hpp"
#include "epsfact/localring.hpp"
#include "gen.hpp"

using namespace epsfact;

namespace {

std::vector<RingElem> all_units(const RingPtr& R) {
  std::vector<RingElem> out;
  std::vector<i64> c(R->d(), 0);
  while (true) {
    RingElem e = R->from_coeffs(c);
    if (e.is_unit()) out.push_back(e);
    int i = 0;
    while (i < R->d() && ++c[i] == R->modulus()) c[i++] = 0;
    if (i == R->d()) break;
  }
  return out;
}

RingElem rebuild(const RingPtr& R, const UnitLog& l) {
  const auto& g = R->gens();
  RingElem x = g.teich.pow(static_cast<u64>(mod(l.k, g.teich_order)));
  for (std::size_t i = 0; i < g.wild.size(); ++i) x = x * g.wild[i].pow(static_cast<u64>(mod(l.e[i], g.wild_order[i])));
  return x;
}

}  // namespace

TEST_CASE("ring construction") {
  RingPtr R = ring_make(5, 1, 3);
  CHECK(R->modulus() == 125);
  CHECK(R->q() == 5);
  CHECK(ring_make(5, 1, 3) == R);
  RingPtr E = ring_make(5, 2, 2);
  CHECK(E->q() == 25);
  CHECK(all_units(E).size() == 24 * 25);
  CHECK(E->unit_count() == 600);
  RingPtr B = ring_make(3, 6, 4);
  CHECK(B->q() == 729);
  CHECK_THROWS_AS(ring_make(9, 1, 3), UsageError);
  CHECK_THROWS_AS(ring_make(2, 2, 3), UsageError);
  CHECK_THROWS_AS(ring_make(7, 12, 12), ResourceError);
}

TEST_CASE("least irreducible polynomial") {
  CHECK(least_irreducible(5, 2) == std::vector<i64>{2, 0, 1});
  CHECK(least_irreducible(3, 2) == std::vector<i64>{1, 0, 1});
  CHECK(least_irreducible(2, 3) == std::vector<i64>{1, 1, 0, 1});
  // no roots over F_p for degree 3
  auto h = least_irreducible(7, 3);
  for (i64 x = 0; x < 7; ++x) {
    i64 v = 0;
    for (int i = 3; i >= 0; --i) v = (v * x + h[i]) % 7;
    CHECK(v != 0);
  }
}

TEST_CASE("generator orders multiply to the unit count") {
  for (auto [p, d, N] : {std::tuple{3, 1, 4}, {5, 2, 3}, {7, 3, 2}, {3, 6, 3}, {2, 1, 6}}) {
    RingPtr R = ring_make(p, d, N);
    const auto& g = R->gens();
    i64 prod = g.teich_order;
    for (i64 o : g.wild_order) prod *= o;
    CHECK(prod == R->unit_count());
    CHECK(R->unit_count() == ipow_checked(p, d * N) - ipow_checked(p, d * (N - 1)));
    CHECK(g.teich.pow(static_cast<u64>(g.teich_order)) == R->one());
    for (std::size_t i = 0; i < g.wild.size(); ++i) CHECK(g.wild[i].pow(static_cast<u64>(g.wild_order[i])) == R->one());
  }
}

TEST_CASE("teichmueller lifts") {
  RingPtr R = ring_make(5, 1, 3);
  CHECK(R->teichmuller(R->from_int(1)) == R->one());
  RingElem t2 = R->teichmuller(R->from_int(2));
  CHECK(t2 == R->from_int(57));
  CHECK(t2.pow(4) == R->one());
  auto r = gen::rng(10);
  RingPtr E = ring_make(7, 2, 3);
  for (int i = 0; i < 50; ++i) {
    RingElem a = gen::unit(r, E), b = gen::unit(r, E);
    RingElem ta = E->teichmuller(a), tb = E->teichmuller(b);
    CHECK(ta.pow(static_cast<u64>(E->q() - 1)) == E->one());
    CHECK(E->teichmuller(a * b) == ta * tb);
    CHECK((ta - a).valuation() >= 1);
  }
  CHECK_THROWS(R->teichmuller(R->from_int(5)));
}

TEST_CASE("trace and norm") {
  RingPtr E = ring_make(5, 2, 3);
  auto [tr1, n1] = E->trace_norm(E->one());
  CHECK(tr1 == 2);
  CHECK(n1 == 1);
  // residue of the norm of the Teichmueller generator is g^6, a generator of F_5^x
  auto [trg, ng] = E->trace_norm(E->gens().teich);
  (void)trg;
  const auto& rf = E->residue_field();
  CHECK(ng % 5 == rf.pow(rf.generator(), 6));
  std::set<i64> powers;
  for (i64 k = 1; k <= 4; ++k) powers.insert(powmod(ng % 5, k, 5));
  CHECK(powers.size() == 4);
  auto r = gen::rng(11);
  for (int i = 0; i < 100; ++i) {
    RingElem a = gen::unit(r, E), b = gen::unit(r, E);
    CHECK(E->trace_norm(a * b).second == mulmod(E->trace_norm(a).second, E->trace_norm(b).second, E->modulus()));
    CHECK(E->trace(a + b) == mod(E->trace(a) + E->trace(b), E->modulus()));
    CHECK(E->trace(a) == E->trace_norm(a).first);
    // residue of the norm is r^{(q-1)/(p-1)}
    CHECK(E->trace_norm(a).second % 5 == rf.pow(a.residue(), 6));
  }
}

TEST_CASE("unit discrete logs") {
  RingPtr E = ring_make(5, 2, 3);
  UnitLog l3 = E->unit_dlog(E->gens().teich.pow(3));
  CHECK(l3.k == 3);
  CHECK(l3.e == std::vector<i64>(E->gens().wild.size(), 0));
  auto r = gen::rng(12);
  for (int i = 0; i < 1000; ++i) {
    RingElem u = gen::unit(r, E);
    UnitLog l = E->unit_dlog(u);
    CHECK(rebuild(E, l) == u);
    CHECK(E->from_unit_log(l) == u);
  }
  // exhaustive agreement with brute force on Z/27
  RingPtr R = ring_make(3, 1, 3);
  std::map<std::vector<i64>, std::pair<i64, i64>> table;
  const auto& g = R->gens();
  for (i64 k = 0; k < g.teich_order; ++k)
    for (i64 e = 0; e < g.wild_order[0]; ++e)
      table[(g.teich.pow(static_cast<u64>(k)) * g.wild[0].pow(static_cast<u64>(e))).coeffs()] = {k, e};
  CHECK(table.size() == 18);
  for (const auto& u : all_units(R)) {
    UnitLog l = R->unit_dlog(u);
    CHECK(table.at(u.coeffs()) == std::make_pair(l.k, l.e[0]));
  }
  CHECK_THROWS(R->unit_dlog(R->from_int(3)));
}

TEST_CASE("p = 2 units") {
  RingPtr R = ring_make(2, 1, 6);
  for (const auto& u : all_units(R)) CHECK(rebuild(R, R->unit_dlog(u)) == u);
}

TEST_CASE("frobenius") {
  RingPtr E = ring_make(3, 3, 3);
  auto r = gen::rng(13);
  for (int i = 0; i < 30; ++i) {
    RingElem y = gen::element(r, E), z = gen::element(r, E);
    CHECK(E->frobenius(y, 3) == y);
    CHECK(E->frobenius(y * z) == E->frobenius(y) * E->frobenius(z));
    CHECK(E->frobenius(y + z) == E->frobenius(y) + E->frobenius(z));
    CHECK(E->frobenius(y).residue() == E->residue_field().pow(y.residue(), 3));
    CHECK(E->teich_digits(y).size() == 3);
    CHECK(E->from_teich_digits(E->teich_digits(y)) == y);
  }
  // relative norm to the base is the full norm
  RingElem u = gen::unit(r, E);
  RingElem n = E->relative_norm(u, 1);
  CHECK(n == E->from_int(E->trace_norm(u).second));
}

TEST_CASE("subfield maps") {
  RingPtr S = ring_make(5, 2, 3), B = ring_make(5, 4, 3);
  SubfieldMap m(S, B);
  auto r = gen::rng(14);
  for (int i = 0; i < 40; ++i) {
    RingElem x = gen::element(r, S), y = gen::element(r, S);
    CHECK(m.embed(x * y) == m.embed(x) * m.embed(y));
    CHECK(m.embed(x + y) == m.embed(x) + m.embed(y));
    CHECK(m.restrict(m.embed(x)) == x);
    CHECK(B->frobenius(m.embed(x), 2) == m.embed(x));
  }
  CHECK_THROWS_AS(m.restrict(B->gen()), InvariantViolation);
}

TEST_CASE("inverse") {
  auto r = gen::rng(15);
  RingPtr E = ring_make(7, 2, 4);
  for (int i = 0; i < 100; ++i) {
    RingElem u = gen::unit(r, E);
    CHECK(u * u.inverse() == E->one());
  }
}

TEST_CASE("dlog cache file") {
  auto dir = std::filesystem::temp_directory_path() / "epsfact_cache_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  CacheKey key{5, 2, 3, {2, 0, 1}};
  LogTable t;
  t.generator = 7;
  t.log.assign(25, -1);
  // F_25 logs are rebuilt from a real ring so the table is a genuine bijection
  RingPtr E = ring_make(5, 2, 3);
  const auto& rf = E->residue_field();
  t.generator = rf.generator();
  for (i64 a = 1; a < 25; ++a) t.log[a] = static_cast<std::int32_t>(rf.log(a));
  REQUIRE(store_log_table(dir, key, t));
  auto back = load_log_table(dir, key);
  REQUIRE(back);
  CHECK(back->log == t.log);
  CHECK(back->generator == t.generator);
  CHECK_FALSE(load_log_table(dir, CacheKey{5, 2, 3, {3, 0, 1}}));
  // flip one byte in the payload
  auto f = cache_file(dir, key);
  {
    std::fstream io(f, std::ios::in | std::ios::out | std::ios::binary);
    io.seekp(-3, std::ios::end);
    char c = 0x5a;
    io.write(&c, 1);
  }
  CHECK_FALSE(load_log_table(dir, key));
  std::filesystem::remove_all(dir);
}
