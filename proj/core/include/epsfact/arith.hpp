#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace epsfact {

using i64 = std::int64_t;
using u64 = std::uint64_t;

bool is_prime(i64 n);
// Prime factorisation as (prime, exponent) pairs, ascending.
std::vector<std::pair<i64, int>> factorize(i64 n);
std::vector<i64> divisors(i64 n);
int mobius(i64 n);
i64 euler_phi(i64 n);

inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>((static_cast<__int128>(a) * b) % m);
}

i64 powmod(i64 b, u64 e, i64 m);
// Inverse of a modulo m; throws UsageError when gcd(a, m) != 1.
i64 invmod(i64 a, i64 m);
// b^e, throwing ResourceError on overflow past `limit`.
i64 ipow_checked(i64 b, int e, i64 limit = INT64_MAX);
// p-adic valuation of a nonzero integer.
int vp(i64 n, i64 p);

struct Rational {
  i64 num = 0;
  i64 den = 1;

  Rational() = default;
  Rational(i64 n, i64 d = 1);
  Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
  Rational operator-(const Rational& o) const { return {num * o.den - o.num * den, den * o.den}; }
  Rational operator*(const Rational& o) const { return {num * o.num, den * o.den}; }
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  auto operator<=>(const Rational& o) const {
    return static_cast<__int128>(num) * o.den <=> static_cast<__int128>(o.num) * den;
  }
  std::string str() const;
};

}  // namespace epsfact
