#include "epsfact/arith.hpp"

#include "epsfact/errors.hpp"

#include <algorithm>
#include <tuple>

namespace epsfact {

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n < 1) throw UsageError("factorize: nonpositive argument");
  std::vector<std::pair<i64, int>> out;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) n /= d, ++e;
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t sz = out.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int mobius(i64 n) {
  int s = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

i64 euler_phi(i64 n) {
  i64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

i64 powmod(i64 b, u64 e, i64 m) {
  i64 r = 1 % m;
  b = mod(b, m);
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

i64 invmod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1) {
    i64 q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw UsageError("invmod: not invertible");
  return mod(x, m);
}

i64 ipow_checked(i64 b, int e, i64 limit) {
  i64 r = 1;
  for (int i = 0; i < e; ++i) {
    if (b != 0 && r > limit / (b < 0 ? -b : b)) throw ResourceError("integer power exceeds budget");
    r *= b;
  }
  return r;
}

int vp(i64 n, i64 p) {
  if (n == 0) throw UsageError("vp: zero");
  int v = 0;
  while (n % p == 0) n /= p, ++v;
  return v;
}

Rational::Rational(i64 n, i64 d) {
  if (d == 0) throw UsageError("Rational: zero denominator");
  if (d < 0) n = -n, d = -d;
  i64 g = std::gcd(n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw UsageError("Rational: division by zero");
  return {num * o.den, den * o.num};
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace epsfact
