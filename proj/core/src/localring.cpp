#include "epsfact/localring.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "epsfact/dlog_cache.hpp"
#include "epsfact/errors.hpp"

namespace epsfact {

namespace {

std::mutex g_cfg_mu;
RingBudget g_budget;
std::optional<std::filesystem::path> g_cache_dir;

// ---- dense polynomials over F_p, constant term first ----
using Poly = std::vector<i64>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmod(Poly a, const Poly& m, i64 p) {
  trim(a);
  i64 lead_inv = invmod(m.back(), p);
  while (a.size() >= m.size()) {
    i64 c = mulmod(a.back(), lead_inv, p);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = mod(a[shift + i] - c * m[i], p);
    trim(a);
  }
  return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& m, i64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return pmod(std::move(r), m, p);
}

Poly pgcd(Poly a, Poly b, i64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool irreducible(const Poly& h, i64 p) {
  int d = static_cast<int>(h.size()) - 1;
  if (d == 1) return true;
  Poly xp{0, 1};
  for (int k = 1; k <= d / 2; ++k) {
    // xp <- xp^p mod h
    Poly r{1}, b = xp;
    for (i64 e = p; e; e >>= 1) {
      if (e & 1) r = pmulmod(r, b, h, p);
      b = pmulmod(b, b, h, p);
    }
    xp = r;
    Poly t = xp;
    t.resize(std::max<std::size_t>(t.size(), 2), 0);
    t[1] = mod(t[1] - 1, p);
    if (pgcd(h, t, p).size() > 1) return false;
  }
  return true;
}

}  // namespace

std::vector<i64> least_irreducible(i64 p, int d) {
  i64 count = ipow_checked(p, d);
  for (i64 enc = 0; enc < count; ++enc) {
    Poly h(d + 1, 0);
    i64 x = enc;
    for (int i = 0; i < d; ++i) h[i] = x % p, x /= p;
    h[d] = 1;
    if (irreducible(h, p)) return h;
  }
  throw InvariantViolation("no irreducible polynomial found");
}

void set_ring_budget(const RingBudget& b) {
  std::lock_guard lock(g_cfg_mu);
  g_budget = b;
}

RingBudget ring_budget() {
  std::lock_guard lock(g_cfg_mu);
  return g_budget;
}

void set_dlog_cache_dir(std::optional<std::filesystem::path> dir) {
  std::lock_guard lock(g_cfg_mu);
  g_cache_dir = std::move(dir);
}

std::optional<std::filesystem::path> dlog_cache_dir() {
  std::lock_guard lock(g_cfg_mu);
  return g_cache_dir;
}

// ---------------- ResidueField ----------------

ResidueField::ResidueField(i64 p, int d, std::vector<i64> h, int N) : p_(p), d_(d), q_(ipow_checked(p, d)), h_(std::move(h)) {
  auto dir = dlog_cache_dir();
  CacheKey key{p, d, N, h_};
  if (dir) {
    if (auto t = load_log_table(*dir, key)) {
      exp_.assign(q_ - 1, 0);
      for (i64 a = 1; a < q_; ++a) exp_[t->log[a]] = static_cast<std::int32_t>(a);
      // spot-check the exponential relation before trusting the file
      bool ok = true;
      i64 stride = std::max<i64>(1, (q_ - 1) / 64);
      for (i64 k = 0; k + 1 < q_ - 1 && ok; k += stride)
        ok = poly_mul(exp_[k], t->generator) == exp_[k + 1];
      if (ok && q_ > 2) ok = poly_mul(exp_[q_ - 2], t->generator) == 1;
      if (ok) {
        gen_ = t->generator;
        log_ = std::move(t->log);
        from_cache_ = true;
        return;
      }
      exp_.clear();
    }
  }
  // primitive element: smallest encoding of order q - 1
  auto primes = factorize(q_ - 1 > 1 ? q_ - 1 : 1);
  gen_ = 1;
  if (q_ > 2) {
    for (i64 c = 2; c < q_; ++c) {
      bool ok = true;
      for (auto [r, e] : primes)
        if (pow(c, (q_ - 1) / r) == 1) { ok = false; break; }
      if (ok) { gen_ = c; break; }
    }
  }
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, -1);
  i64 cur = 1;
  for (i64 k = 0; k < q_ - 1; ++k) {
    exp_[k] = static_cast<std::int32_t>(cur);
    if (log_[cur] != -1) throw InvariantViolation("residue field generator is not primitive");
    log_[cur] = static_cast<std::int32_t>(k);
    cur = poly_mul(cur, gen_);
  }
  if (cur != 1) throw InvariantViolation("residue field generator order mismatch");
  if (dir) store_log_table(*dir, key, LogTable{gen_, log_});
}

std::vector<i64> ResidueField::digits(i64 a) const {
  std::vector<i64> r(d_);
  for (int i = 0; i < d_; ++i) r[i] = a % p_, a /= p_;
  return r;
}

i64 ResidueField::encode(const std::vector<i64>& dg) const {
  i64 a = 0;
  for (int i = d_; i-- > 0;) a = a * p_ + mod(dg[i], p_);
  return a;
}

i64 ResidueField::poly_mul(i64 a, i64 b) const {
  auto x = digits(a), y = digits(b);
  std::vector<i64> r(2 * d_ - 1, 0);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p_;
  for (int k = 2 * d_ - 2; k >= d_; --k) {
    i64 c = r[k];
    if (!c) continue;
    for (int i = 0; i < d_; ++i) r[k - d_ + i] = mod(r[k - d_ + i] - c * h_[i], p_);
    r[k] = 0;
  }
  r.resize(d_);
  return encode(r);
}

i64 ResidueField::mul(i64 a, i64 b) const {
  if (a == 0 || b == 0) return 0;
  if (log_.empty()) return poly_mul(a, b);
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

i64 ResidueField::add(i64 a, i64 b) const {
  auto x = digits(a), y = digits(b);
  for (int i = 0; i < d_; ++i) x[i] = (x[i] + y[i]) % p_;
  return encode(x);
}

i64 ResidueField::pow(i64 a, u64 e) const {
  i64 r = 1;
  while (e) {
    if (e & 1) r = poly_mul(r, a);
    a = poly_mul(a, a);
    e >>= 1;
  }
  return r;
}

i64 ResidueField::inv(i64 a) const {
  if (a == 0) throw UsageError("residue field: inverse of zero");
  return exp_[mod(-static_cast<i64>(log_[a]), q_ - 1)];
}

i64 ResidueField::log(i64 a) const {
  if (a <= 0 || a >= q_) throw UsageError("residue field: log of zero");
  return log_[a];
}

// ---------------- RingElem ----------------

RingElem::RingElem(RingPtr ring, std::vector<i64> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != ring_->d()) throw UsageError("RingElem: wrong coefficient count");
  for (auto& c : c_) c = mod(c, ring_->modulus());
}

bool RingElem::is_zero() const {
  for (i64 c : c_)
    if (c) return false;
  return true;
}

bool RingElem::is_unit() const { return residue() != 0; }

int RingElem::valuation() const {
  int v = ring_->N();
  for (i64 c : c_)
    if (c) v = std::min(v, vp(c, ring_->p()));
  return v;
}

i64 RingElem::residue() const {
  i64 p = ring_->p(), a = 0;
  for (std::size_t i = c_.size(); i-- > 0;) a = a * p + c_[i] % p;
  return a;
}

RingElem RingElem::operator+(const RingElem& o) const {
  std::vector<i64> r(c_);
  i64 M = ring_->modulus();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (r[i] + o.c_[i]) % M;
  return RingElem(ring_, std::move(r));
}

RingElem RingElem::operator-(const RingElem& o) const {
  std::vector<i64> r(c_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o.c_[i];
  return RingElem(ring_, std::move(r));
}

RingElem RingElem::operator-() const {
  std::vector<i64> r(c_);
  for (auto& c : r) c = -c;
  return RingElem(ring_, std::move(r));
}

RingElem RingElem::operator*(const RingElem& o) const {
  std::vector<i64> r(c_.size());
  ring_->mul_raw(c_.data(), o.c_.data(), r.data());
  return RingElem(ring_, std::move(r));
}

RingElem RingElem::operator*(i64 k) const {
  std::vector<i64> r(c_);
  i64 M = ring_->modulus();
  for (auto& c : r) c = mulmod(c, mod(k, M), M);
  return RingElem(ring_, std::move(r));
}

RingElem RingElem::pow(u64 e) const {
  RingElem r = ring_->one(), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

RingElem RingElem::inverse() const {
  if (!is_unit()) throw UsageError("RingElem: inverse of a non-unit");
  const auto& rf = ring_->residue_field();
  RingElem x = ring_->from_coeffs(rf.digits(rf.inv(residue())));
  RingElem two = ring_->from_int(2);
  for (int prec = 1; prec < ring_->N(); prec *= 2) x = x * (two - *this * x);
  return x;
}

bool RingElem::operator==(const RingElem& o) const {
  if (ring_ != o.ring_) throw UsageError("RingElem: comparing elements of different rings");
  return c_ == o.c_;
}

std::string RingElem::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + std::to_string(c_[i]);
  return s + "]";
}

// ---------------- FieldElem ----------------

FieldElem FieldElem::make(int val, RingElem unit) {
  if (!unit.is_unit()) throw UsageError("FieldElem: unit part is not a unit");
  return FieldElem{val, std::move(unit)};
}

FieldElem FieldElem::from_ring(const RingElem& x) {
  int v = x.valuation();
  if (v >= x.ring().N()) throw PrecisionError("FieldElem: element is zero at this precision");
  std::vector<i64> c(x.coeffs());
  i64 pv = x.ring().ppow(v);
  for (auto& a : c) a /= pv;
  return make(v, RingElem(x.ring_ptr(), std::move(c)));
}

FieldElem FieldElem::operator*(const FieldElem& o) const { return {val + o.val, unit * o.unit}; }
FieldElem FieldElem::inverse() const { return {-val, unit.inverse()}; }

FieldElem FieldElem::pow(i64 e) const {
  if (e >= 0) return {static_cast<int>(val * e), unit.pow(static_cast<u64>(e))};
  return inverse().pow(-e);
}

std::string FieldElem::str() const { return "p^" + std::to_string(val) + "*" + unit.str(); }

// ---------------- LocalRing ----------------

LocalRing::LocalRing(i64 p, int d, int N) : p_(p), d_(d), N_(N) {}

RingPtr ring_make(i64 p, int d, int N) {
  if (!is_prime(p)) throw UsageError("ring_make: p = " + std::to_string(p) + " is not prime");
  if (d < 1) throw UsageError("ring_make: degree must be positive");
  if (N < 1) throw UsageError("ring_make: precision must be positive");
  if (p == 2 && d != 1) throw UsageError("ring_make: p = 2 supports only d = 1");
  RingBudget b = ring_budget();
  i64 pN = ipow_checked(p, N, b.max_modulus);
  i64 q = ipow_checked(p, d, b.max_q);
  ipow_checked(q, N, b.max_unit_group);
  (void)pN;

  static std::mutex mu;
  static std::map<std::tuple<i64, int, int>, RingPtr> registry;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(p, d, N);
  if (auto it = registry.find(key); it != registry.end()) return it->second;
  std::shared_ptr<LocalRing> r(new LocalRing(p, d, N));
  r->build();
  registry.emplace(key, r);
  return r;
}

void LocalRing::build() {
  q_ = ipow_checked(p_, d_);
  pN_ = ipow_checked(p_, N_);
  ppow_.resize(N_ + 1);
  ppow_[0] = 1;
  for (int k = 1; k <= N_; ++k) ppow_[k] = ppow_[k - 1] * p_;
  h_ = least_irreducible(p_, d_);

  // x^{d+k} mod h over Z/p^N
  red_.clear();
  std::vector<i64> cur(d_);
  for (int i = 0; i < d_; ++i) cur[i] = mod(-h_[i], pN_);
  for (int k = 0; k + 1 < d_; ++k) {
    red_.push_back(cur);
    // multiply by x
    i64 top = cur[d_ - 1];
    std::vector<i64> nxt(d_);
    nxt[0] = 0;
    for (int i = 1; i < d_; ++i) nxt[i] = cur[i - 1];
    for (int i = 0; i < d_; ++i) nxt[i] = mod(nxt[i] - mulmod(top, h_[i], pN_), pN_);
    cur = nxt;
  }

  rf_ = std::make_unique<ResidueField>(p_, d_, h_, N_);

  // trace of x^j for j < 2d - 1
  tr_basis_.assign(2 * d_ - 1, 0);
  {
    RingElem xj = one();
    RingElem x = gen();
    std::vector<RingElem> pw;
    for (int j = 0; j < 3 * d_; ++j) {
      pw.push_back(xj);
      xj = xj * x;
    }
    for (int j = 0; j < 2 * d_ - 1; ++j) {
      i64 t = 0;
      for (int i = 0; i < d_; ++i) t += pw[i + j][i];
      tr_basis_[j] = mod(t, pN_);
    }
  }

  if (p_ == 2) {
    gens_.teich = one();
    gens_.teich_order = 1;
    if (N_ >= 2) {
      gens_.wild.push_back(from_int(-1));
      gens_.wild_order.push_back(2);
    }
    if (N_ >= 3) {
      gens_.wild.push_back(from_int(5));
      gens_.wild_order.push_back(ppow_[N_ - 2]);
    }
  } else {
    gens_.teich = teichmuller(from_coeffs(rf_->digits(rf_->generator())));
    gens_.teich_order = q_ - 1;
    for (int i = 0; i < d_ && N_ >= 2; ++i) {
      std::vector<i64> c(d_, 0);
      c[i] = p_;
      c[0] += 1;
      gens_.wild.push_back(from_coeffs(c));
      gens_.wild_order.push_back(ppow_[N_ - 1]);
    }
    descent_.clear();
    for (int j = 1; j < N_; ++j) {
      for (int i = 0; i < d_; ++i) {
        RingElem base = gens_.wild[i].inverse().pow(static_cast<u64>(ppow_[j - 1]));
        RingElem acc = base;
        for (i64 c = 1; c < p_; ++c) {
          descent_.push_back(acc.coeffs());
          acc = acc * base;
        }
      }
    }
  }

  // Frobenius: phi(x) from Teichmueller digits of x, then powers
  frob_cols_.clear();
  {
    auto dg = teich_digits(gen());
    RingElem fx = zero();
    const auto& rf = *rf_;
    for (int k = 0; k < N_; ++k) {
      RingElem t = teich_of_residue(rf.pow(dg[k], static_cast<u64>(p_)));
      fx = fx + t * ppow_[k];
    }
    RingElem acc = one();
    for (int j = 0; j < d_; ++j) {
      frob_cols_.push_back(acc.coeffs());
      acc = acc * fx;
    }
  }
}

std::string LocalRing::describe() const {
  std::ostringstream os;
  os << "O/P^" << N_ << " over Q_" << p_ << " deg " << d_ << " h=[";
  for (std::size_t i = 0; i < h_.size(); ++i) os << (i ? "," : "") << h_[i];
  os << "]";
  return os.str();
}

RingElem LocalRing::zero() const { return RingElem(shared_from_this(), std::vector<i64>(d_, 0)); }

RingElem LocalRing::one() const { return from_int(1); }

RingElem LocalRing::from_int(i64 n) const {
  std::vector<i64> c(d_, 0);
  c[0] = n;
  return RingElem(shared_from_this(), std::move(c));
}

RingElem LocalRing::from_coeffs(std::vector<i64> c) const {
  c.resize(d_, 0);
  return RingElem(shared_from_this(), std::move(c));
}

RingElem LocalRing::gen() const {
  std::vector<i64> c(d_, 0);
  if (d_ > 1) c[1] = 1;
  else c[0] = mod(-h_[0], pN_);
  return RingElem(shared_from_this(), std::move(c));
}

i64 LocalRing::unit_count() const { return (q_ - 1) * ipow_checked(q_, N_ - 1); }

void LocalRing::mul_raw(const i64* a, const i64* b, i64* out) const {
  if (d_ == 1) {
    out[0] = (a[0] * b[0]) % pN_;
    return;
  }
  unsigned __int128 t[64];
  int n = 2 * d_ - 1;
  for (int i = 0; i < n; ++i) t[i] = 0;
  for (int i = 0; i < d_; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < d_; ++j) t[i + j] += static_cast<unsigned __int128>(a[i]) * static_cast<u64>(b[j]);
  }
  i64 hi[64];
  for (int k = d_; k < n; ++k) hi[k - d_] = static_cast<i64>(t[k] % static_cast<u64>(pN_));
  for (int i = 0; i < d_; ++i) {
    unsigned __int128 s = t[i] % static_cast<u64>(pN_);
    for (int k = 0; k + 1 < d_; ++k)
      if (hi[k]) s += static_cast<unsigned __int128>(hi[k]) * static_cast<u64>(red_[k][i]);
    out[i] = static_cast<i64>(s % static_cast<u64>(pN_));
  }
}

RingElem LocalRing::teichmuller(const RingElem& residue) const {
  if (!residue.is_unit()) throw UsageError("teichmuller: non-unit input");
  std::vector<i64> c(residue.coeffs());
  for (auto& a : c) a %= p_;
  RingElem x = from_coeffs(c);
  for (int i = 0; i < N_; ++i) x = x.pow(static_cast<u64>(q_));
  return x;
}

RingElem LocalRing::teich_of_residue(i64 r) const {
  if (r == 0) return zero();
  if (p_ == 2) return one();
  return gens_.teich.pow(static_cast<u64>(rf_->log(r)));
}

std::pair<i64, i64> LocalRing::trace_norm(const RingElem& e) const {
  // multiplication matrix, column j = e * x^j
  std::vector<std::vector<i64>> M(d_, std::vector<i64>(d_));
  RingElem col = e, x = gen();
  for (int j = 0; j < d_; ++j) {
    for (int i = 0; i < d_; ++i) M[i][j] = col[i];
    col = col * x;
  }
  i64 tr = 0;
  for (int i = 0; i < d_; ++i) tr = (tr + M[i][i]) % pN_;

  // determinant by full pivoting on minimal valuation
  i64 det = 1;
  int sign = 1;
  for (int k = 0; k < d_; ++k) {
    int br = -1, bc = -1, bv = N_;
    for (int r = k; r < d_; ++r)
      for (int c = k; c < d_; ++c)
        if (M[r][c] && vp(M[r][c], p_) < bv) bv = vp(M[r][c], p_), br = r, bc = c;
    if (br < 0) return {tr, 0};
    if (br != k) std::swap(M[br], M[k]), sign = -sign;
    if (bc != k) {
      for (int r = 0; r < d_; ++r) std::swap(M[r][bc], M[r][k]);
      sign = -sign;
    }
    i64 piv = M[k][k];
    i64 pv = ppow_[bv];
    i64 uinv = invmod(piv / pv, pN_);
    for (int r = k + 1; r < d_; ++r) {
      if (!M[r][k]) continue;
      i64 f = mulmod(M[r][k] / pv, uinv, pN_);
      for (int c = k; c < d_; ++c) M[r][c] = mod(M[r][c] - mulmod(f, M[k][c], pN_), pN_);
    }
    det = mulmod(det, piv, pN_);
  }
  return {tr, mod(sign * det, pN_)};
}

i64 LocalRing::trace(const RingElem& e) const {
  unsigned __int128 s = 0;
  for (int j = 0; j < d_; ++j) s += static_cast<unsigned __int128>(e[j]) * static_cast<u64>(tr_basis_[j]);
  return static_cast<i64>(s % static_cast<u64>(pN_));
}

UnitLog LocalRing::dlog_p2(const RingElem& u) const {
  UnitLog out;
  out.k = 0;
  out.e.assign(gens_.wild.size(), 0);
  i64 v = u[0];
  if (N_ >= 2 && v % 4 == 3) {
    out.e[0] = 1;
    v = mod(-v, pN_);
  }
  if (N_ >= 3) {
    // v = 5^e mod 2^N, descend on 1 + 2^j
    i64 e = 0;
    for (int j = 2; j < N_; ++j) {
      if ((v >> j) & 1) {
        i64 t = powmod(5, static_cast<u64>(ppow_[j - 2]), pN_);
        v = mulmod(v, invmod(t, pN_), pN_);
        e += ppow_[j - 2];
      }
    }
    out.e[1] = e;
  }
  if (v != 1 % pN_) throw InvariantViolation("unit_dlog: 2-adic descent failed");
  return out;
}

UnitLog LocalRing::unit_dlog(const RingElem& u) const {
  if (!u.is_unit()) throw UsageError("unit_dlog: non-unit input");
  if (p_ == 2) return dlog_p2(u);
  UnitLog out;
  out.k = rf_->log(u.residue());
  out.e.assign(d_, 0);
  RingElem v = u * gens_.teich.pow(static_cast<u64>(mod(-out.k, q_ - 1)));
  std::vector<i64> buf(d_);
  std::vector<i64> cur(v.coeffs());
  for (int j = 1; j < N_; ++j) {
    i64 pj = ppow_[j];
    for (int i = 0; i < d_; ++i) {
      i64 ci = i == 0 ? cur[0] - 1 : cur[i];
      if (ci % pj != 0) throw InvariantViolation("unit_dlog: remainder not in U^" + std::to_string(j));
      i64 c = (ci / pj) % p_;
      if (c == 0) continue;
      // cur *= w_i^{-c p^{j-1}}; this only changes digits at level >= j
      const auto& t = descent_[((j - 1) * d_ + i) * (p_ - 1) + (c - 1)];
      mul_raw(cur.data(), t.data(), buf.data());
      cur.swap(buf);
      out.e[i] += c * ppow_[j - 1];
    }
  }
  if (cur[0] != 1 % pN_) throw InvariantViolation("unit_dlog: descent did not terminate at 1");
  for (int i = 1; i < d_; ++i)
    if (cur[i] != 0) throw InvariantViolation("unit_dlog: descent did not terminate at 1");
  return out;
}

RingElem LocalRing::from_unit_log(const UnitLog& l) const {
  RingElem r = gens_.teich.pow(static_cast<u64>(mod(l.k, gens_.teich_order)));
  for (std::size_t i = 0; i < gens_.wild.size(); ++i)
    r = r * gens_.wild[i].pow(static_cast<u64>(mod(l.e.at(i), gens_.wild_order[i])));
  return r;
}

RingElem LocalRing::frobenius(const RingElem& y, int k) const {
  k = static_cast<int>(mod(k, d_));
  RingElem cur = y;
  for (int s = 0; s < k; ++s) {
    std::vector<i64> out(d_, 0);
    for (int j = 0; j < d_; ++j) {
      if (!cur[j]) continue;
      for (int i = 0; i < d_; ++i) out[i] = (out[i] + mulmod(cur[j], frob_cols_[j][i], pN_)) % pN_;
    }
    cur = RingElem(shared_from_this(), std::move(out));
  }
  return cur;
}

RingElem LocalRing::relative_norm(const RingElem& y, int sub_degree) const {
  if (sub_degree < 1 || d_ % sub_degree) throw UsageError("relative_norm: degree does not divide");
  RingElem r = y;
  for (int i = 1; i < d_ / sub_degree; ++i) r = r * frobenius(y, sub_degree * i);
  return r;
}

std::vector<i64> LocalRing::teich_digits(const RingElem& y) const {
  std::vector<i64> out(N_);
  std::vector<i64> cur(y.coeffs());
  for (int k = 0; k < N_; ++k) {
    RingElem c(shared_from_this(), cur);
    i64 a = c.residue();
    out[k] = a;
    RingElem t = teich_of_residue(a);
    for (int i = 0; i < d_; ++i) {
      i64 diff = mod(cur[i] - t[i], pN_);
      cur[i] = diff / p_;
    }
  }
  return out;
}

RingElem LocalRing::from_teich_digits(const std::vector<i64>& digits) const {
  RingElem r = zero();
  for (int k = 0; k < N_ && k < static_cast<int>(digits.size()); ++k)
    if (digits[k]) r = r + teich_of_residue(digits[k]) * ppow_[k];
  return r;
}

// ---------------- SubfieldMap ----------------

SubfieldMap::SubfieldMap(RingPtr small, RingPtr big) : small_(std::move(small)), big_(std::move(big)) {
  if (small_->p() != big_->p() || big_->d() % small_->d())
    throw UsageError("SubfieldMap: not a subfield");
  const auto& rs = small_->residue_field();
  const auto& rb = big_->residue_field();
  // root of h_small in F_{q_big}, brute force
  i64 root = -1;
  const auto& hs = small_->h();
  for (i64 b = 0; b < rb.q() && root < 0; ++b) {
    i64 acc = 0;
    for (std::size_t i = hs.size(); i-- > 0;) acc = rb.add(rb.mul(acc, b), mod(hs[i], small_->p()));
    if (acc == 0) root = b;
  }
  if (root < 0) throw InvariantViolation("SubfieldMap: no root of the small modulus");
  up_.assign(rs.q(), 0);
  down_.assign(rb.q(), -1);
  for (i64 a = 0; a < rs.q(); ++a) {
    auto dg = rs.digits(a);
    i64 acc = 0;
    for (std::size_t i = dg.size(); i-- > 0;) acc = rb.add(rb.mul(acc, root), dg[i]);
    up_[a] = acc;
    down_[acc] = a;
  }
}

RingElem SubfieldMap::embed(const RingElem& x) const {
  auto dg = small_->teich_digits(x);
  dg.resize(big_->N());
  for (auto& a : dg) a = up_[a];
  return big_->from_teich_digits(dg);
}

RingElem SubfieldMap::restrict(const RingElem& x) const {
  auto dg = big_->teich_digits(x);
  dg.resize(small_->N());
  for (auto& a : dg) {
    if (down_[a] < 0) throw InvariantViolation("SubfieldMap::restrict: element not in subfield");
    a = down_[a];
  }
  return small_->from_teich_digits(dg);
}

FieldElem SubfieldMap::embed(const FieldElem& x) const { return FieldElem::make(x.val, embed(x.unit)); }
FieldElem SubfieldMap::restrict(const FieldElem& x) const { return FieldElem::make(x.val, restrict(x.unit)); }

}  // namespace epsfact
