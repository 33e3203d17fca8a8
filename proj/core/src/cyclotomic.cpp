#include "epsfact/cyclotomic.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "epsfact/errors.hpp"

namespace epsfact {

namespace {

std::atomic<i64> g_max_level{100000};

struct CycPoly {
  std::vector<i64> coeffs;
  // (index, coefficient) for nonzero coefficients below the leading one
  std::vector<std::pair<std::size_t, i64>> tail;
};

std::vector<i64> mul_xd_minus_1(const std::vector<i64>& a, i64 d) {
  std::vector<i64> out(a.size() + d, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i + d] += a[i];
    out[i] -= a[i];
  }
  return out;
}

std::vector<i64> div_xd_minus_1(const std::vector<i64>& a, i64 d) {
  // a = (x^d - 1) * q exactly
  std::size_t n = a.size() - d;
  std::vector<i64> q(n, 0), r(a);
  for (std::size_t i = a.size(); i-- > static_cast<std::size_t>(d);) {
    i64 c = r[i];
    q[i - d] = c;
    r[i] = 0;
    r[i - d] += c;
  }
  for (i64 i = 0; i < d; ++i)
    if (r[i] != 0) throw InvariantViolation("cyclotomic division not exact");
  return q;
}

const CycPoly& cyc_poly(i64 n) {
  static std::mutex mu;
  static std::map<i64, CycPoly> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  i64 rad = 1;
  for (auto [p, e] : factorize(n)) rad *= p;
  std::vector<i64> poly{1};
  std::vector<i64> den;
  for (i64 d : divisors(rad)) {
    int mu_ = mobius(rad / d);
    if (mu_ == 1) poly = mul_xd_minus_1(poly, d);
    else if (mu_ == -1) den.push_back(d);
  }
  for (i64 d : den) poly = div_xd_minus_1(poly, d);
  if (poly.back() < 0)
    for (auto& c : poly) c = -c;
  i64 s = n / rad;
  CycPoly cp;
  cp.coeffs.assign((poly.size() - 1) * s + 1, 0);
  for (std::size_t i = 0; i < poly.size(); ++i) cp.coeffs[i * s] = poly[i];
  for (std::size_t i = 0; i + 1 < cp.coeffs.size(); ++i)
    if (cp.coeffs[i] != 0) cp.tail.emplace_back(i, cp.coeffs[i]);
  return cache.emplace(n, std::move(cp)).first->second;
}

void check_level(i64 level) {
  if (level < 1) throw UsageError("cyclotomic level must be positive");
  if (level > g_max_level.load()) {
    throw ResourceError("cyclotomic level " + std::to_string(level) + " exceeds cap " +
                        std::to_string(g_max_level.load()));
  }
}

std::vector<Integer> reduce(i64 level, std::vector<Integer> raw) {
  const CycPoly& cp = cyc_poly(level);
  std::size_t deg = cp.coeffs.size() - 1;
  // fold modulo x^N - 1 first
  if (raw.size() > static_cast<std::size_t>(level)) {
    for (std::size_t i = level; i < raw.size(); ++i) raw[i % level] += raw[i];
    raw.resize(level);
  }
  for (std::size_t i = raw.size(); i-- > deg;) {
    if (raw[i] == 0) continue;
    Integer c = raw[i];
    std::size_t base = i - deg;
    for (auto [j, cj] : cp.tail) {
      if (cj == 1) raw[base + j] -= c;
      else if (cj == -1) raw[base + j] += c;
      else raw[base + j] -= c * cj;
    }
    raw[i] = 0;
  }
  raw.resize(deg);
  return raw;
}

i64 unify(i64 a, i64 b) {
  i64 l = std::lcm(a, b);
  check_level(l);
  return l;
}

}  // namespace

void set_max_cyclotomic_level(i64 level) {
  if (level < 1) throw UsageError("cyclotomic cap must be positive");
  g_max_level = level;
}

i64 max_cyclotomic_level() { return g_max_level.load(); }

const std::vector<i64>& cyclotomic_polynomial(i64 n) {
  if (n < 1) throw UsageError("cyclotomic_polynomial: n must be positive");
  return cyc_poly(n).coeffs;
}

CycNum::CycNum() : level_(1), coeffs_(1, Integer(0)) {}

CycNum::CycNum(const Integer& n, i64 level) : level_(level) {
  check_level(level);
  coeffs_ = reduce(level, {n});
}

CycNum::CycNum(i64 level, std::vector<Integer> raw) : level_(level) {
  check_level(level);
  coeffs_ = reduce(level, std::move(raw));
}

CycNum CycNum::lift(const Integer& n, i64 level, i64 k) {
  check_level(level);
  std::vector<Integer> raw(level);
  raw[mod(k, level)] = n;
  return CycNum(level, std::move(raw));
}

CycNum CycNum::from_counts(i64 level, std::span<const i64> counts) {
  check_level(level);
  std::vector<Integer> raw(level);
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] != 0) raw[i % level] += Integer(static_cast<long>(counts[i]));
  return CycNum(level, std::move(raw));
}

CycNum CycNum::from_counts(i64 level, std::span<const Integer> counts) {
  check_level(level);
  std::vector<Integer> raw(level);
  for (std::size_t i = 0; i < counts.size(); ++i) raw[i % level] += counts[i];
  return CycNum(level, std::move(raw));
}

bool CycNum::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

CycNum CycNum::at_level(i64 multiple) const {
  if (multiple < 1) throw UsageError("at_level: multiple must be positive");
  if (multiple == 1) return *this;
  i64 L = level_ * multiple;
  check_level(L);
  std::vector<Integer> raw((coeffs_.size() - 1) * multiple + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) raw[i * multiple] = coeffs_[i];
  return CycNum(L, std::move(raw));
}

CycNum CycNum::conj() const {
  std::vector<Integer> raw(level_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) raw[(level_ - static_cast<i64>(i)) % level_] = coeffs_[i];
  return CycNum(level_, std::move(raw));
}

CycNum CycNum::pow(u64 e) const {
  CycNum r(Integer(1), level_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

namespace {

CycNum add_sub(const CycNum& a, const CycNum& b, bool sub) {
  i64 L = unify(a.level(), b.level());
  CycNum x = a.at_level(L / a.level()), y = b.at_level(L / b.level());
  std::vector<Integer> raw(x.coeffs());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (sub) raw[i] -= y.coeffs()[i];
    else raw[i] += y.coeffs()[i];
  }
  return CycNum::from_counts(L, std::span<const Integer>(raw));
}

}  // namespace

CycNum operator+(const CycNum& a, const CycNum& b) { return add_sub(a, b, false); }
CycNum operator-(const CycNum& a, const CycNum& b) { return add_sub(a, b, true); }

CycNum operator*(const CycNum& a, const CycNum& b) {
  i64 L = unify(a.level_, b.level_);
  CycNum x = a.at_level(L / a.level_), y = b.at_level(L / b.level_);
  const auto& xc = x.coeffs_;
  const auto& yc = y.coeffs_;
  std::vector<Integer> raw(xc.size() + yc.size() - 1);
  for (std::size_t i = 0; i < xc.size(); ++i) {
    if (xc[i] == 0) continue;
    for (std::size_t j = 0; j < yc.size(); ++j)
      if (yc[j] != 0) raw[i + j] += xc[i] * yc[j];
  }
  return CycNum(L, std::move(raw));
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.level_ == b.level_) return a.coeffs_ == b.coeffs_;
  i64 L = unify(a.level_, b.level_);
  return a.at_level(L / a.level_).coeffs_ == b.at_level(L / b.level_).coeffs_;
}

std::complex<long double> CycNum::embed() const {
  std::complex<long double> s = 0;
  const long double tau = 2 * std::numbers::pi_v<long double>;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    long double ang = tau * static_cast<long double>(i) / static_cast<long double>(level_);
    s += static_cast<long double>(coeffs_[i].get_d()) * std::polar(1.0L, ang);
  }
  return s;
}

std::string CycNum::str() const {
  std::string s = "cyc(" + std::to_string(level_) + ")[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ",";
    s += coeffs_[i].get_str();
  }
  return s + "]";
}

namespace {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;
  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  void expect(std::string_view tok) {
    skip_ws();
    if (s.substr(i, tok.size()) != tok)
      throw UsageError("parse: expected '" + std::string(tok) + "' at offset " + std::to_string(i));
    i += tok.size();
  }
  bool peek(char c) {
    skip_ws();
    return i < s.size() && s[i] == c;
  }
  std::string number() {
    skip_ws();
    std::size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) throw UsageError("parse: expected integer at offset " + std::to_string(i));
    std::string out(s.substr(i, j - i));
    i = j;
    if (!out.empty() && out[0] == '+') out.erase(0, 1);
    return out;
  }
  i64 int64() { return std::stoll(number()); }
};

CycNum parse_cyc(Cursor& c) {
  c.expect("cyc(");
  i64 level = c.int64();
  c.expect(")[");
  std::vector<Integer> raw;
  if (!c.peek(']')) {
    raw.emplace_back(c.number());
    while (c.peek(',')) {
      c.expect(",");
      raw.emplace_back(c.number());
    }
  }
  c.expect("]");
  return CycNum::from_counts(level, std::span<const Integer>(raw));
}

}  // namespace

CycNum CycNum::parse(std::string_view text) {
  Cursor c{text};
  CycNum v = parse_cyc(c);
  c.skip_ws();
  if (c.i != text.size()) throw UsageError("parse: trailing characters in cyc literal");
  return v;
}

CycNum cyc_lift(const Integer& n, i64 level, i64 k) { return CycNum::lift(n, level, k); }

CycNum cyc_arith(const CycNum& a, const CycNum& b, CycOp op) {
  switch (op) {
    case CycOp::Add: return a + b;
    case CycOp::Sub: return a - b;
    case CycOp::Mul: return a * b;
  }
  throw UsageError("cyc_arith: unknown op");
}

RootNumber::RootNumber(CycNum value, i64 qbase, i64 qexp2)
    : value_(std::move(value)), qbase_(qbase), qexp2_(qexp2) {
  if (qbase < 1) throw UsageError("RootNumber: qbase must be positive");
  if (qbase == 1) qexp2_ = 0;
}

RootNumber RootNumber::rebase(i64 b) const {
  if (b == qbase_) return *this;
  if (qbase_ == 1 || qexp2_ == 0) return RootNumber(value_, b, 0);
  i64 k = 0, x = qbase_;
  while (x > 1 && x % b == 0) x /= b, ++k;
  if (x != 1) throw UsageError("rebase: " + std::to_string(qbase_) + " is not a power of " + std::to_string(b));
  return RootNumber(value_, b, qexp2_ * k);
}

namespace {

i64 common_base(i64 a, i64 b) {
  if (a == b) return a;
  if (a == 1) return b;
  if (b == 1) return a;
  auto fa = factorize(a), fb = factorize(b);
  if (fa.size() != 1 || fb.size() != 1 || fa[0].first != fb[0].first)
    throw UsageError("RootNumber: incompatible q bases " + std::to_string(a) + " and " + std::to_string(b));
  return fa[0].first;
}

Integer ipow(i64 q, i64 e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

RootNumber RootNumber::operator*(const RootNumber& o) const {
  if (qexp2_ == 0 && o.qexp2_ == 0) return RootNumber(value_ * o.value_, std::max(qbase_, o.qbase_), 0);
  i64 b = common_base(qexp2_ ? qbase_ : 1, o.qexp2_ ? o.qbase_ : 1);
  RootNumber x = rebase(b), y = o.rebase(b);
  return RootNumber(x.value_ * y.value_, b, x.qexp2_ + y.qexp2_);
}

RootNumber RootNumber::pow(u64 e) const { return RootNumber(value_.pow(e), qbase_, qexp2_ * static_cast<i64>(e)); }

std::complex<long double> RootNumber::embed() const {
  return value_.embed() * std::pow(static_cast<long double>(qbase_), -static_cast<long double>(qexp2_) / 2);
}

std::string RootNumber::str() const {
  return "rootnum(" + std::to_string(qbase_) + ", " + std::to_string(qexp2_) + ", " + value_.str() + ")";
}

RootNumber RootNumber::parse(std::string_view text) {
  Cursor c{text};
  c.expect("rootnum(");
  i64 q = c.int64();
  c.expect(",");
  i64 e = c.int64();
  c.expect(",");
  CycNum v = parse_cyc(c);
  c.expect(")");
  c.skip_ws();
  if (c.i != text.size()) throw UsageError("parse: trailing characters in rootnum literal");
  return RootNumber(std::move(v), q, e);
}

bool rootnum_eq(const RootNumber& a, const RootNumber& b) {
  if (a.qbase() != b.qbase()) throw UsageError("rootnum_eq: mismatched qbase");
  if (a.value().is_zero() || b.value().is_zero()) return a.value().is_zero() && b.value().is_zero();
  i64 q = a.qbase();
  i64 ea = a.qexp2(), eb = b.qexp2();
  if (mod(ea - eb, 2) == 0) {
    if (ea >= eb) return a.value() == b.value() * CycNum(ipow(q, (ea - eb) / 2));
    return b.value() == a.value() * CycNum(ipow(q, (eb - ea) / 2));
  }
  CycNum a2 = a.value() * a.value(), b2 = b.value() * b.value();
  bool sq = ea > eb ? a2 == b2 * CycNum(ipow(q, ea - eb)) : b2 == a2 * CycNum(ipow(q, eb - ea));
  if (!sq) return false;
  auto x = a.embed(), y = b.embed();
  return std::abs(x - y) < std::abs(x + y);
}

bool rootnum_close(const RootNumber& a, const RootNumber& b, double tol) {
  return std::abs(a.embed() - b.embed()) <= tol;
}

}  // namespace epsfact
