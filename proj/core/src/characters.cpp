#include "epsfact/characters.hpp"

#include "epsfact/errors.hpp"

namespace epsfact {

RootOfUnity::RootOfUnity(i64 d, i64 n) {
  if (d < 1) throw UsageError("root of unity: level must be positive");
  n = mod(n, d);
  i64 g = std::gcd(n, d);
  num = n / g;
  den = d / g;
  if (num == 0) den = 1;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  i64 L = std::lcm(den, o.den);
  return RootOfUnity(L, num * (L / den) + o.num * (L / o.den));
}

RootOfUnity RootOfUnity::pow(i64 e) const { return RootOfUnity(den, mulmod(num, mod(e, den), den)); }

std::string RootOfUnity::str() const { return "zeta(" + std::to_string(den) + "," + std::to_string(num) + ")"; }

namespace {

int analytic_conductor(const LocalRing& R, const RootOfUnity& teich, const std::vector<RootOfUnity>& wild) {
  if (R.p() == 2) {
    int a = 0;
    if (!wild.empty() && !wild[0].is_one()) a = 2;
    if (wild.size() > 1 && !wild[1].is_one()) a = std::max(a, vp(wild[1].den, 2) + 2);
    return a;
  }
  int t = -1;
  for (const auto& w : wild)
    if (!w.is_one()) t = std::max(t, vp(w.den, R.p()));
  if (t >= 0) return t + 1;
  return teich.is_one() ? 0 : 1;
}

}  // namespace

MulCharacter::MulCharacter(RingPtr ring, RootOfUnity pi, RootOfUnity teich, std::vector<RootOfUnity> wild)
    : ring_(std::move(ring)), pi_(pi), teich_(teich), wild_(std::move(wild)) {
  if (!ring_) throw UsageError("MulCharacter: null ring");
  const auto& g = ring_->gens();
  if (wild_.size() != g.wild.size())
    throw UsageError("MulCharacter: expected " + std::to_string(g.wild.size()) + " wild images, got " +
                     std::to_string(wild_.size()));
  if (g.teich_order % teich_.den)
    throw UsageError("MulCharacter: teich image order " + std::to_string(teich_.den) + " does not divide " +
                     std::to_string(g.teich_order));
  for (std::size_t i = 0; i < wild_.size(); ++i)
    if (g.wild_order[i] % wild_[i].den)
      throw UsageError("MulCharacter: wild image order " + std::to_string(wild_[i].den) + " does not divide " +
                       std::to_string(g.wild_order[i]));
  conductor_ = analytic_conductor(*ring_, teich_, wild_);
  if (conductor_ > ring_->N() - 1)
    throw PrecisionError("MulCharacter: conductor " + std::to_string(conductor_) + " needs precision N >= " +
                         std::to_string(conductor_ + 1));
}

MulCharacter MulCharacter::trivial(RingPtr ring) {
  std::size_t n = ring->gens().wild.size();
  return MulCharacter(std::move(ring), {}, {}, std::vector<RootOfUnity>(n));
}

MulCharacter MulCharacter::unramified(RingPtr ring, RootOfUnity pi) {
  std::size_t n = ring->gens().wild.size();
  return MulCharacter(std::move(ring), pi, {}, std::vector<RootOfUnity>(n));
}

bool MulCharacter::is_trivial() const { return pi_.is_one() && conductor_ == 0; }

i64 MulCharacter::order() const {
  i64 o = std::lcm(pi_.den, teich_.den);
  for (const auto& w : wild_) o = std::lcm(o, w.den);
  return o;
}

RootOfUnity MulCharacter::eval_log(const UnitLog& l) const {
  RootOfUnity r = teich_.pow(l.k);
  for (std::size_t i = 0; i < wild_.size(); ++i)
    if (!wild_[i].is_one()) r = r * wild_[i].pow(l.e[i]);
  return r;
}

RootOfUnity MulCharacter::eval_unit(const RingElem& u) const {
  if (u.ring_ptr() != ring_) throw UsageError("MulCharacter: element from a different ring");
  if (conductor_ == 0) {
    if (!u.is_unit()) throw UsageError("MulCharacter: non-unit");
    return {};
  }
  return eval_log(ring_->unit_dlog(u));
}

RootOfUnity MulCharacter::eval_root(const FieldElem& x) const { return pi_.pow(x.val) * eval_unit(x.unit); }

MulCharacter MulCharacter::operator*(const MulCharacter& o) const {
  if (ring_ != o.ring_) throw UsageError("MulCharacter: product over different rings");
  std::vector<RootOfUnity> w(wild_.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = wild_[i] * o.wild_[i];
  return MulCharacter(ring_, pi_ * o.pi_, teich_ * o.teich_, std::move(w));
}

MulCharacter MulCharacter::inverse() const { return pow(-1); }

MulCharacter MulCharacter::pow(i64 e) const {
  std::vector<RootOfUnity> w(wild_.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = wild_[i].pow(e);
  return MulCharacter(ring_, pi_.pow(e), teich_.pow(e), std::move(w));
}

bool MulCharacter::operator==(const MulCharacter& o) const {
  return ring_ == o.ring_ && pi_ == o.pi_ && teich_ == o.teich_ && wild_ == o.wild_;
}

std::string MulCharacter::str() const {
  std::string s = "char(p=" + std::to_string(ring_->p()) + ",d=" + std::to_string(ring_->d()) + "; pi=" + pi_.str() +
                  ", teich=" + teich_.str() + ", wild=[";
  for (std::size_t i = 0; i < wild_.size(); ++i) s += (i ? "," : "") + wild_[i].str();
  return s + "])";
}

AddCharacter::AddCharacter(RingPtr ring, FieldElem shift) : ring_(std::move(ring)), shift_(std::move(shift)) {
  if (!ring_) throw UsageError("AddCharacter: null ring");
  if (shift_.unit.ring_ptr() != ring_) throw UsageError("AddCharacter: shift from a different ring");
  if (!shift_.unit.is_unit()) throw UsageError("AddCharacter: shift unit part is not a unit");
}

AddCharacter AddCharacter::standard(RingPtr ring) {
  auto one = ring->one();
  return AddCharacter(std::move(ring), FieldElem::make(0, one));
}

AddCharacter AddCharacter::shifted(RingPtr ring, int k, i64 u) {
  auto unit = ring->from_int(u);
  return AddCharacter(std::move(ring), FieldElem::make(k, unit));
}

RootOfUnity AddCharacter::eval_root(const FieldElem& x) const {
  FieldElem y = shift_ * x;
  if (y.val >= 0) return {};
  int k = -y.val;
  if (k > ring_->N() - 1)
    throw PrecisionError("AddCharacter: argument valuation " + std::to_string(y.val) + " beyond precision");
  i64 pk = ring_->ppow(k);
  return RootOfUnity(pk, ring_->trace(y.unit) % pk);
}

RootOfUnity AddCharacter::eval_scaled(int k, const RingElem& z) const {
  int v = shift_.val + k;
  if (v >= 0) return {};
  if (-v > ring_->N())
    throw PrecisionError("AddCharacter: argument valuation " + std::to_string(v) + " beyond precision");
  i64 pk = ring_->ppow(-v);
  return RootOfUnity(pk, mod(ring_->trace(shift_.unit * z), pk));
}

AddCharacter AddCharacter::lift_to(const RingPtr& E) const {
  if (E == ring_) return *this;
  if (ring_->d() == 1) return AddCharacter(E, FieldElem::make(shift_.val, E->from_int(shift_.unit[0])));
  SubfieldMap m(ring_, E);
  return AddCharacter(E, m.embed(shift_));
}

std::string AddCharacter::str() const {
  return "psi(p=" + std::to_string(ring_->p()) + ",d=" + std::to_string(ring_->d()) + "; shift=" + shift_.str() + ")";
}

RootOfUnity mulchar_eval(const MulCharacter& chi, const FieldElem& x) { return chi.eval_root(x); }
RootOfUnity addchar_eval(const AddCharacter& psi, const FieldElem& x) { return psi.eval_root(x); }

int conductor_scan(const MulCharacter& chi) {
  const LocalRing& R = *chi.ring();
  for (int k = R.N() - 1; k >= 1; --k) {
    for (int j = 0; j < R.d(); ++j) {
      std::vector<i64> c(R.d(), 0);
      c[0] = 1;
      c[j] += R.ppow(k);
      RingElem u = R.from_coeffs(c);
      if (!chi.eval_log(R.unit_dlog(u)).is_one()) {
        if (k == R.N() - 1) throw PrecisionError("conductor_scan: character nontrivial on U^{N-1}");
        return k + 1;
      }
    }
  }
  if (R.p() != 2 && !chi.eval_log(R.unit_dlog(R.gens().teich)).is_one()) return 1;
  return 0;
}

int additive_conductor_scan(const AddCharacter& psi) {
  const LocalRing& R = *psi.ring();
  // unit Z_p-basis: 1 and x^j + c_j
  std::vector<RingElem> basis{R.one()};
  for (int j = 1; j < R.d(); ++j) {
    std::vector<i64> c(R.d(), 0);
    c[j] = 1;
    for (c[0] = 1; !R.from_coeffs(c).is_unit(); ++c[0]) {}
    basis.push_back(R.from_coeffs(c));
  }
  int v = psi.shift().val;
  for (int k = v; k <= v + R.N() - 1; ++k) {
    for (const auto& b : basis)
      if (!psi.eval_root(FieldElem::make(-k, b)).is_one()) return k - 1;
  }
  throw PrecisionError("additive_conductor_scan: no nontrivial level within precision");
}

namespace {

RingElem down_to(const RingPtr& S, const RingPtr& E, const RingElem& y) {
  if (S->d() == 1) {
    for (int i = 1; i < E->d(); ++i)
      if (y[i] != 0) throw InvariantViolation("norm does not lie in the base field");
    return S->from_int(y[0]);
  }
  return SubfieldMap(S, E).restrict(y);
}

RingElem up_to(const RingPtr& S, const RingPtr& E, const RingElem& y) {
  if (S->d() == 1) return E->from_int(y[0]);
  return SubfieldMap(S, E).embed(y);
}

}  // namespace

MulCharacter pullback_norm(const MulCharacter& chi, const RingPtr& E) {
  const RingPtr& S = chi.ring();
  if (S == E) return chi;
  if (S->p() != E->p() || E->d() % S->d()) throw UsageError("pullback_norm: not an unramified extension of the character's field");
  if (chi.conductor() > std::min(S->N(), E->N()) - 1) throw PrecisionError("pullback_norm: precision too small");
  int deg = E->d() / S->d();
  auto img = [&](const RingElem& y) { return chi.eval_unit(down_to(S, E, E->relative_norm(y, S->d()))); };
  const auto& g = E->gens();
  std::vector<RootOfUnity> w;
  for (const auto& wi : g.wild) w.push_back(img(wi));
  return MulCharacter(E, chi.pi().pow(deg), img(g.teich), std::move(w));
}

MulCharacter restrict_to_subfield(const MulCharacter& chi, const RingPtr& S) {
  const RingPtr& E = chi.ring();
  if (S == E) return chi;
  if (S->p() != E->p() || E->d() % S->d()) throw UsageError("restrict_to_subfield: not a subfield");
  if (chi.conductor() > S->N()) throw PrecisionError("restrict_to_subfield: subfield precision too small");
  const auto& g = S->gens();
  auto img = [&](const RingElem& y) { return chi.eval_unit(up_to(S, E, y)); };
  std::vector<RootOfUnity> w;
  for (const auto& wi : g.wild) w.push_back(img(wi));
  return MulCharacter(S, chi.pi(), img(g.teich), std::move(w));
}

MulCharacter frobenius_conjugate(const MulCharacter& theta, int i) {
  const RingPtr& E = theta.ring();
  i = static_cast<int>(mod(i, E->d()));
  if (i == 0) return theta;
  i64 pi_pow = ipow_checked(E->p(), i);
  std::vector<RootOfUnity> w;
  for (const auto& wi : E->gens().wild) w.push_back(theta.eval_log(E->unit_dlog(E->frobenius(wi, i))));
  return MulCharacter(E, theta.pi(), theta.teich().pow(pi_pow), std::move(w));
}

std::vector<MulCharacter> enumerate_characters(const RingPtr& F, int max_conductor, i64 pi_den, i64 teich_den) {
  const auto& g = F->gens();
  if (teich_den == 0) teich_den = g.teich_order;
  if (g.teich_order % teich_den) throw UsageError("enumerate_characters: teich order bound does not divide q - 1");
  i64 tden = max_conductor >= 1 ? teich_den : 1;
  std::vector<i64> wden(g.wild.size(), 1);
  if (max_conductor >= 2)
    for (std::size_t i = 0; i < wden.size(); ++i)
      wden[i] = std::gcd(g.wild_order[i], ipow_checked(F->p(), F->p() == 2 ? max_conductor : max_conductor - 1));
  std::vector<MulCharacter> out;
  for (i64 a = 0; a < pi_den; ++a) {
    for (i64 b = 0; b < tden; ++b) {
      std::vector<i64> e(wden.size(), 0);
      while (true) {
        std::vector<RootOfUnity> w;
        for (std::size_t i = 0; i < e.size(); ++i) w.emplace_back(wden[i], e[i]);
        MulCharacter chi(F, RootOfUnity(pi_den, a), RootOfUnity(tden, b), std::move(w));
        if (chi.conductor() <= max_conductor) out.push_back(std::move(chi));
        std::size_t i = 0;
        while (i < e.size() && ++e[i] == wden[i]) e[i++] = 0;
        if (i == e.size()) break;
      }
    }
  }
  return out;
}

JumpComponent jump_component(const MulCharacter& chi, i64 multiplicity) {
  JumpComponent c;
  c.multiplicity = multiplicity;
  c.label = chi.str();
  if (!chi.is_unramified()) c.jump = Rational(chi.jump());
  return c;
}

JumpRange jumps_virtual(std::span<const JumpComponent> components) {
  if (components.empty()) throw UsageError("jumps_virtual: empty component list");
  JumpRange r;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    if (c.multiplicity == 0) continue;
    if (!c.jump) {
      r.excluded.push_back(i);
      continue;
    }
    if (!r.j || *c.jump < *r.j) r.j = c.jump;
    if (!r.beta || *c.jump > *r.beta) r.beta = c.jump;
  }
  return r;
}

}  // namespace epsfact
