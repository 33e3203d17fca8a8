#pragma once

#include <cstdlib>
#include <random>
#include <vector>

#include "epsfact/characters.hpp"
#include "epsfact/localring.hpp"

namespace gen {

using epsfact::i64;

// Seed from EPSFACT_TEST_SEED, default fixed.
inline std::mt19937_64 rng(unsigned salt) {
  unsigned long long s = 0x9e3779b97f4a7c15ULL;
  if (const char* e = std::getenv("EPSFACT_TEST_SEED")) s = std::strtoull(e, nullptr, 10);
  return std::mt19937_64(s ^ (0x100000001b3ULL * salt));
}

inline i64 uniform(std::mt19937_64& r, i64 lo, i64 hi) {
  return lo + static_cast<i64>(r() % static_cast<unsigned long long>(hi - lo + 1));
}

inline epsfact::RingElem element(std::mt19937_64& r, const epsfact::RingPtr& R) {
  std::vector<i64> c(R->d());
  for (auto& x : c) x = uniform(r, 0, R->modulus() - 1);
  return R->from_coeffs(c);
}

inline epsfact::RingElem unit(std::mt19937_64& r, const epsfact::RingPtr& R) {
  while (true) {
    auto e = element(r, R);
    if (e.is_unit()) return e;
  }
}

inline epsfact::FieldElem field_elem(std::mt19937_64& r, const epsfact::RingPtr& R, int vlo, int vhi) {
  return epsfact::FieldElem::make(static_cast<int>(uniform(r, vlo, vhi)), unit(r, R));
}

// Random character with conductor <= max_a and arbitrary images of the allowed orders.
inline epsfact::MulCharacter character(std::mt19937_64& r, const epsfact::RingPtr& R, int max_a, i64 pi_den = 1) {
  const auto& g = R->gens();
  i64 p = R->p();
  epsfact::RootOfUnity pi(pi_den, uniform(r, 0, pi_den - 1));
  epsfact::RootOfUnity t = max_a >= 1 ? epsfact::RootOfUnity(g.teich_order, uniform(r, 0, g.teich_order - 1))
                                      : epsfact::RootOfUnity();
  std::vector<epsfact::RootOfUnity> w;
  for (std::size_t i = 0; i < g.wild.size(); ++i) {
    // over Q_2 the generator 5 of 1 + 4Z_2 carries characters of order 2^k at conductor k + 2
    int e = p == 2 && i == 1 ? max_a - 2 : max_a - 1;
    i64 den = max_a >= 2 && e >= 0 ? std::gcd(g.wild_order[i], epsfact::ipow_checked(p, e)) : 1;
    w.emplace_back(den, uniform(r, 0, den - 1));
  }
  return epsfact::MulCharacter(R, pi, t, w);
}

}  // namespace gen
