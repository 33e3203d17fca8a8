#include "epsfact/heisenberg.hpp"

#include "epsfact/errors.hpp"

namespace epsfact {

EtaChar::EtaChar(RingPtr base, RootOfUnity teich, std::vector<RootOfUnity> wild) {
  if (!base) throw UsageError("EtaChar: null ring");
  if (base->d() != 1) throw UsageError("EtaChar: base field must be Q_p");
  chi_ = MulCharacter(std::move(base), RootOfUnity(), teich, std::move(wild));
}

std::string EtaChar::str() const {
  std::string s = "eta(p=" + std::to_string(base()->p()) + "; teich=" + teich().str() + ", wild=[";
  for (std::size_t i = 0; i < wild().size(); ++i) s += (i ? "," : "") + wild()[i].str();
  return s + "])";
}

RootOfUnity x_eta_pair_root(const EtaChar& eta, const FieldElem& x, const FieldElem& y) {
  return eta.eval_unit(x.unit).pow(y.val) * eta.eval_unit(y.unit).pow(-static_cast<i64>(x.val));
}

CycNum x_eta_pair(const EtaChar& eta, const FieldElem& x, const FieldElem& y) {
  return x_eta_pair_root(eta, x, y).to_cyc();
}

RadDescription rad_x(const EtaChar& eta) {
  RadDescription r;
  r.dim = eta.order();
  r.index = r.dim * r.dim;
  r.generators = "<p^" + std::to_string(r.dim) + "> x Ker(eta)";
  return r;
}

bool rad_contains(const EtaChar& eta, const FieldElem& x) {
  return mod(x.val, eta.order()) == 0 && eta.eval_unit(x.unit).is_one();
}

bool rad_contains_by_pairing(const EtaChar& eta, const FieldElem& x) {
  const RingPtr& F = eta.base();
  std::vector<FieldElem> gens{FieldElem::make(1, F->one())};
  if (F->p() != 2) gens.push_back(FieldElem::make(0, F->gens().teich));
  for (const auto& w : F->gens().wild) gens.push_back(FieldElem::make(0, w));
  for (const auto& y : gens)
    if (!x_eta_pair_root(eta, x, y).is_one()) return false;
  return true;
}

std::string HeisenbergDatum::str() const {
  return "heis(dim=" + std::to_string(dim()) + ", " + eta.str() + ", selector=" + std::to_string(selector) +
         ", theta=" + theta.str() + ", twist=" + twist.str() + ")";
}

namespace {

std::vector<RootOfUnity> restriction_images(const MulCharacter& theta, const RingPtr& F) {
  const RingPtr& E = theta.ring();
  std::vector<RootOfUnity> out{theta.eval_unit(E->from_int(F->gens().teich[0]))};
  for (const auto& w : F->gens().wild) out.push_back(theta.eval_unit(E->from_int(w[0])));
  return out;
}

bool regular(const MulCharacter& theta) {
  for (int i = 1; i < theta.ring()->d(); ++i)
    if (frobenius_conjugate(theta, i) == theta) return false;
  return true;
}

}  // namespace

std::vector<MulCharacter> theta_candidates(const EtaChar& eta, const RingPtr& E) {
  const RingPtr& F = eta.base();
  i64 m = eta.order();
  if (E->d() != m || E->p() != F->p()) throw UsageError("theta_candidates: E must have degree #eta over Q_p");
  if (m == 1) return {MulCharacter::trivial(E)};
  const i64 p = E->p();
  const int a = eta.conductor();
  if (a > E->N() - 1) throw PrecisionError("theta_candidates: precision of E too small for a(eta)");
  const auto& g = E->gens();

  auto norm_to_F = [&](const RingElem& y) {
    RingElem n = E->relative_norm(y, 1);
    for (int i = 1; i < E->d(); ++i)
      if (n[i]) throw InvariantViolation("theta_candidates: norm not in Q_p");
    return F->from_int(n[0]);
  };

  // Teichmueller exponent: k (1 - p) = target mod q_E - 1
  const i64 M = g.teich_order;
  RootOfUnity rt = eta.eval_unit(norm_to_F(g.teich));
  std::vector<i64> ks;
  if (M % rt.den == 0) {
    i64 want = rt.num * (M / rt.den);
    for (i64 k = 0; k < M; ++k)
      if (mod(k * (1 - p), M) == want) ks.push_back(k);
  }

  // wild exponents in Z/P, P = p^{a-1}: e_i - sum_j Phi_ij e_j = rho_i
  const i64 P = a >= 2 ? ipow_checked(p, a - 1) : 1;
  const int d = E->d();
  std::vector<i64> Phi(d * d), rho(d);
  for (int i = 0; i < d; ++i) {
    UnitLog l = E->unit_dlog(E->frobenius(g.wild[i], 1));
    if (mod(l.k, M) != 0) throw InvariantViolation("theta_candidates: Frobenius moved a wild generator out of U^1");
    for (int j = 0; j < d; ++j) Phi[i * d + j] = mod(l.e[j], P);
    RootOfUnity r = eta.eval_unit(norm_to_F(g.wild[i]));
    if (P % r.den) {
      ks.clear();  // eta o N has wild values of order > p^{a-1}: no solution
      break;
    }
    rho[i] = r.num * (P / r.den);
  }
  i64 nwild = ipow_checked(P, d, i64{1} << 24);
  std::vector<std::vector<i64>> es;
  for (i64 idx = 0; idx < nwild && !ks.empty(); ++idx) {
    std::vector<i64> e(d);
    i64 rem = idx;
    for (int i = d; i-- > 0;) e[i] = rem % P, rem /= P;
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) {
      i64 s = e[i];
      for (int j = 0; j < d; ++j) s -= Phi[i * d + j] * e[j];
      ok = mod(s, P) == rho[i];
    }
    if (ok) es.push_back(std::move(e));
  }

  std::vector<MulCharacter> out;
  std::optional<std::vector<RootOfUnity>> cls;
  for (i64 k : ks) {
    for (const auto& e : es) {
      std::vector<RootOfUnity> w;
      for (int i = 0; i < d; ++i) w.emplace_back(P, e[i]);
      MulCharacter theta(E, RootOfUnity(), RootOfUnity(M, k), std::move(w));
      if (theta.conductor() != a || !regular(theta)) continue;
      auto res = restriction_images(theta, F);
      if (!cls) cls = res;
      if (res == *cls) out.push_back(std::move(theta));
    }
  }
  return out;
}

HeisenbergDatum heis_minimal(const EtaChar& eta, int selector, std::optional<int> precision) {
  const RingPtr& F = eta.base();
  if (F->p() == 2) throw UsageError("heis_minimal: p = 2 is not supported");
  i64 m = eta.order();
  int N = precision.value_or(F->N());
  if (N < eta.conductor() + 1) throw PrecisionError("heis_minimal: precision must be at least a(eta) + 1");
  if (m > 1 && eta.conductor() < 1) throw InvariantViolation("heis_minimal: nontrivial eta with conductor 0");
  RingPtr E = ring_make(F->p(), static_cast<int>(m), N);
  auto cands = theta_candidates(eta, E);
  if (cands.empty()) throw InvariantViolation("heis_minimal: no Frobenius-regular candidate");
  if (selector < 0 || selector >= static_cast<int>(cands.size()))
    throw UsageError("heis_minimal: selector " + std::to_string(selector) + " out of range [0," +
                     std::to_string(cands.size()) + ")");
  HeisenbergDatum r;
  r.eta = eta;
  r.E = E;
  r.theta0 = cands[selector];
  r.theta = r.theta0;
  r.twist = MulCharacter::trivial(F);
  r.selector = selector;
  if (m == 1) {
    r.report.dim = 1;
    r.report.artin = 0;
    r.report.swan = 0;
    r.report.jump = Rational(-1);
    r.report.houses = {{"artin", "trivial eta"}};
  } else {
    r.report = heis_minimal_conductors(static_cast<int>(m), eta.conductor());
  }
  return r;
}

HeisenbergDatum heis_twist(const HeisenbergDatum& rho0, const MulCharacter& chiF) {
  if (chiF.ring() != rho0.base()) throw UsageError("heis_twist: twist must live on the base field of the datum");
  if (chiF.is_trivial()) return rho0;
  HeisenbergDatum r = rho0;
  r.theta = rho0.theta * pullback_norm(chiF, rho0.E);
  r.twist = rho0.twist * chiF;
  int j_X = rho0.eta.conductor() - 1;
  r.report = twist_conductor(rho0.dim(), j_X, r.twist.conductor() - 1);
  return r;
}

RootOfUnity delta_unramified(int m) {
  RootOfUnity r;
  for (int j = 0; j < m; ++j) r = r * RootOfUnity(m, j);
  return r;
}

MulCharacter det_induced(const MulCharacter& theta, const RingPtr& F) {
  MulCharacter res = restrict_to_subfield(theta, F);
  int m = theta.ring()->d() / F->d();
  return MulCharacter::unramified(F, delta_unramified(m)) * res;
}

MulCharacter det_heis(const HeisenbergDatum& rho) { return det_induced(rho.theta, rho.base()); }
MulCharacter det_heis_minimal(const HeisenbergDatum& rho) { return det_induced(rho.theta0, rho.base()); }

MPrimary m_primary(i64 q, i64 m) {
  if (m < 1 || (q - 1) % m) throw UsageError("m_primary: m must divide q - 1");
  MPrimary r;
  for (auto [l, e] : factorize(m)) {
    (void)e;
    i64 t = q - 1;
    while (t % l == 0) t /= l, r.m_primary *= l;
  }
  r.group_order = m * m * r.m_primary;
  return r;
}

std::pair<RootOfUnity, RootOfUnity> split_root(const RootOfUnity& r, i64 p) {
  i64 P = 1, Mp = r.den;
  while (Mp % p == 0) Mp /= p, P *= p;
  i64 x = P > 1 ? mulmod(mod(r.num, P), invmod(Mp % P, P), P) : 0;
  i64 y = Mp > 1 ? mulmod(mod(r.num, Mp), invmod(P % Mp, Mp), Mp) : 0;
  return {RootOfUnity(P, x), RootOfUnity(Mp, y)};
}

std::pair<EtaChar, EtaChar> decompose(const EtaChar& eta) {
  i64 p = eta.base()->p();
  auto [tp, tq] = split_root(eta.teich(), p);
  std::vector<RootOfUnity> wp, wq;
  for (const auto& w : eta.wild()) {
    auto [a, b] = split_root(w, p);
    wp.push_back(a);
    wq.push_back(b);
  }
  return {EtaChar(eta.base(), tp, wp), EtaChar(eta.base(), tq, wq)};
}

}  // namespace epsfact
