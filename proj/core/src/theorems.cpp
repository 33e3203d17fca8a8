#include "epsfact/theorems.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

#include "epsfact/errors.hpp"

namespace epsfact {

namespace {

// Representatives of (O/P^m)^x as coefficient tuples in [0, p^m)^d; {1} for m = 0.
std::vector<RingElem> units_mod(const RingPtr& R, int m) {
  if (m <= 0) return {R->one()};
  i64 pm = R->ppow(m);
  int d = R->d();
  std::vector<RingElem> out;
  std::vector<i64> c(d, 0);
  while (true) {
    RingElem e = R->from_coeffs(c);
    if (e.is_unit()) out.push_back(std::move(e));
    int i = 0;
    while (i < d && ++c[i] == pm) c[i++] = 0;
    if (i == d) break;
  }
  return out;
}

// Elements z of O/P^m (all classes).
std::vector<RingElem> classes_mod(const RingPtr& R, int m) {
  if (m <= 0) return {R->zero()};
  i64 pm = R->ppow(m);
  int d = R->d();
  std::vector<RingElem> out;
  std::vector<i64> c(d, 0);
  while (true) {
    out.push_back(R->from_coeffs(c));
    int i = 0;
    while (i < d && ++c[i] == pm) c[i++] = 0;
    if (i == d) break;
  }
  return out;
}

RootNumber as_root(const RootOfUnity& r, i64 p) { return RootNumber(r.to_cyc(), p, 0); }

RootNumber one_root(i64 p) { return RootNumber(CycNum(Integer(1)), p, 0); }

void finalize(VerifyReport& r, const VerifyOptions& opt, i64 p) {
  r.lhs = r.lhs.rebase(p);
  r.rhs = r.rhs.rebase(p);
  if (opt.flip_convention) {
    r.rhs = r.rhs * RootNumber(CycNum(Integer(-1)), p, 0);
    r.notes.push_back("rhs negated (flip-convention control)");
  }
  bool close = rootnum_close(r.lhs, r.rhs, opt.float_only ? opt.tol : 1e-6);
  if (opt.float_only) {
    r.equal = close;
    r.float_agrees = true;
  } else {
    r.equal = rootnum_eq(r.lhs, r.rhs);
    r.float_agrees = close == r.equal;
    if (!r.float_agrees) r.notes.push_back("float embedding disagrees with the exact comparison");
  }
  r.digest = digest_of(r.theorem + "|" + r.inputs.dump());
}

void require_twisted(const HeisenbergDatum& rho, const char* who) {
  if (!rho.twisted()) throw UsageError(std::string(who) + ": rho must carry a ramified twist chi_F");
  if (rho.twist.conductor() < 2) throw UsageError(std::string(who) + ": requires a(chi_F) >= 2");
  if (std::gcd<i64>(rho.dim(), rho.base()->p()) != 1)
    throw UsageError(std::string(who) + ": dim rho must be prime to p");
}

bool jump_ok(const HeisenbergDatum& rho, int a_chi) {
  if (a_chi <= 1) return true;
  return Rational(2 * (a_chi - 1)) < rho.jump();
}

// W(chi_F)^k * det(rho0)(c)^e
RootNumber minimal_factor(const HeisenbergDatum& rho, const AddCharacter& psi, const GaussOptions& g, u64 k, i64 e,
                          const GaussPoint& gp) {
  i64 p = rho.base()->p();
  RootNumber wf = w_char(rho.twist, psi, g).pow(k);
  RootOfUnity d = det_heis_minimal(rho).eval_root(gp.c).pow(e);
  return wf * as_root(d, p);
}

std::vector<std::string> sorted_strs(const std::vector<MulCharacter>& v) {
  std::vector<std::string> s;
  for (const auto& c : v) s.push_back(c.str());
  std::sort(s.begin(), s.end());
  return s;
}

MulCharacter product(const std::vector<MulCharacter>& v, const RingPtr& F) {
  MulCharacter d = MulCharacter::trivial(F);
  for (const auto& c : v) d = d * c;
  return d;
}

}  // namespace

std::string digest_of(const std::string& text) {
  u64 h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string GaussPoint::str() const {
  return "c=" + c.str() + " mod U^" + std::to_string(modulus) + " (a=" + std::to_string(conductor) +
         ", n=" + std::to_string(n_psi) + ")";
}

std::vector<RingElem> gauss_point_classes(const MulCharacter& chi, const AddCharacter& psi, int modulus) {
  if (chi.ring() != psi.ring()) throw UsageError("gauss_point: characters live on different rings");
  const RingPtr& R = chi.ring();
  int a = chi.conductor(), n = psi.conductor();
  if (a == 0) return {R->one()};
  int lo = a - a / 2;  // test set P^{ceil(a/2)} / P^a
  auto zs = classes_mod(R, a - lo);
  std::vector<RootOfUnity> lhs;
  for (const auto& z : zs) {
    RingElem x = z * R->ppow(lo);
    lhs.push_back(chi.eval_unit(R->one() + x));
  }
  std::vector<RingElem> out;
  for (const auto& u : units_mod(R, modulus)) {
    RingElem ui = u.inverse();
    bool ok = true;
    for (std::size_t i = 0; ok && i < zs.size(); ++i) ok = psi.eval_scaled(lo - a - n, zs[i] * ui) == lhs[i];
    if (ok) out.push_back(u);
  }
  return out;
}

GaussPoint gauss_point(const MulCharacter& chi, const AddCharacter& psi) {
  const RingPtr& R = chi.ring();
  int a = chi.conductor(), n = psi.conductor();
  GaussPoint gp;
  gp.conductor = a;
  gp.n_psi = n;
  gp.modulus = a / 2;
  if (a == 0) {
    if (chi.ring() != psi.ring()) throw UsageError("gauss_point: characters live on different rings");
    gp.c = FieldElem::make(n, R->one());
    return gp;
  }
  auto sols = gauss_point_classes(chi, psi, gp.modulus);
  if (sols.empty()) throw InvariantViolation("gauss_point: no unit class satisfies the defining relation");
  if (sols.size() > 1) throw InvariantViolation("gauss_point: defining relation does not pin c mod U^floor(a/2)");
  gp.c = FieldElem::make(a + n, sols.front());
  return gp;
}

nlohmann::ordered_json VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["theorem"] = theorem;
  j["digest"] = digest;
  j["inputs"] = inputs;
  j["lhs"] = lhs.str();
  j["rhs"] = rhs.str();
  j["equal"] = equal;
  j["float_agrees"] = float_agrees;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [k, v] : checks) c[k] = v;
  j["checks"] = c;
  j["notes"] = notes;
  return j;
}

const FieldElem& GammaSolution::gamma() const {
  if (solutions.empty()) throw InvariantViolation("dh_gamma: inconsistent system, no gamma");
  return solutions.front();
}

TwistContext::TwistContext(HeisenbergDatum rho, AddCharacter psi, GaussOptions g)
    : rho_(std::move(rho)), psi_(std::move(psi)), g_(std::move(g)) {
  if (psi_.ring() != rho_.base()) throw UsageError("TwistContext: psi must live on the base field of rho");
}

RootNumber TwistContext::w_rho() { return w_twist(MulCharacter::trivial(rho_.base())); }

RootNumber TwistContext::w_twist(const MulCharacter& chi) {
  if (chi.ring() != rho_.base()) throw UsageError("w_twist: chi must live on the base field");
  std::string key = chi.str();
  {
    std::lock_guard lk(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  MulCharacter th = chi.is_trivial() ? rho_.theta : rho_.theta * pullback_norm(chi, rho_.E);
  RootNumber w = w_induced(rho_.E, th, psi_, g_);
  std::lock_guard lk(mu_);
  cache_.emplace(key, w);
  return w;
}

const GammaSolution& TwistContext::gamma(int depth) {
  {
    std::lock_guard lk(mu_);
    if (auto it = gammas_.find(depth); it != gammas_.end()) return it->second;
  }
  GammaSolution s = dh_gamma(*this, depth);
  std::lock_guard lk(mu_);
  return gammas_.emplace(depth, std::move(s)).first->second;
}

std::vector<MulCharacter> default_probes(const HeisenbergDatum& rho, int depth) {
  const RingPtr& F = rho.base();
  std::vector<MulCharacter> out;
  for (auto& c : enumerate_characters(F, depth, F->q() - 1))
    if (jump_ok(rho, c.conductor())) out.push_back(std::move(c));
  return out;
}

GammaSolution dh_gamma(TwistContext& ctx, int depth, const std::vector<MulCharacter>& probes) {
  const HeisenbergDatum& rho = ctx.rho();
  const RingPtr& F = rho.base();
  if (rho.report.artin == 0) throw UsageError("dh_gamma: rho must be ramified");
  if (depth < 0) throw UsageError("dh_gamma: negative depth");
  GammaSolution out;
  out.valuation = rho.report.artin + rho.dim() * ctx.psi().conductor();
  out.modulus = depth;
  RootNumber w0 = ctx.w_rho();
  // target chi(gamma) for every probe
  std::vector<RootOfUnity> target;
  for (const auto& chi : probes) {
    if (chi.conductor() > depth) throw UsageError("dh_gamma: probe conductor exceeds depth: " + chi.str());
    if (!jump_ok(rho, chi.conductor()))
      throw UsageError("dh_gamma: probe violates 2(a(chi) - 1) < j(rho): " + chi.str());
    out.probes.push_back(chi.str());
    RootNumber wc = ctx.w_twist(chi);
    i64 ord = chi.order();
    std::optional<RootOfUnity> hit;
    for (i64 k = 0; k < ord && !hit; ++k) {
      RootOfUnity z(ord, k);
      if (rootnum_eq(w0 * as_root(z, F->p()), wc)) hit = z;
    }
    if (!hit) {
      out.notes.push_back("no root of unity relates W(chi rho) to W(rho) for " + chi.str());
      return out;
    }
    target.push_back(*hit);
  }
  for (const auto& u : units_mod(F, depth)) {
    FieldElem g = FieldElem::make(out.valuation, u);
    bool ok = true;
    for (std::size_t i = 0; ok && i < probes.size(); ++i) ok = probes[i].eval_root(g) == target[i];
    if (ok) out.solutions.push_back(g);
  }
  if (out.solutions.empty()) out.notes.push_back("inconsistent system: no gamma mod U^" + std::to_string(depth));
  if (out.solutions.size() > 1)
    out.notes.push_back("ambiguous: " + std::to_string(out.solutions.size()) + " classes mod U^" +
                        std::to_string(depth));
  return out;
}

GammaSolution dh_gamma(TwistContext& ctx, int depth) { return dh_gamma(ctx, depth, default_probes(ctx.rho(), depth)); }

GammaSolution dh_gamma(const HeisenbergDatum& rho, const AddCharacter& psi, int depth) {
  TwistContext ctx(rho, psi);
  return dh_gamma(ctx, depth);
}

VerifyReport verify_deligne(const MulCharacter& chi1, const MulCharacter& chi2, const AddCharacter& psi,
                            const VerifyOptions& opt) {
  if (chi1.ring() != psi.ring() || chi2.ring() != psi.ring())
    throw UsageError("verify deligne: characters live on different rings");
  if (chi1.conductor() < 2 * chi2.conductor()) throw UsageError("verify deligne: requires a(chi1) >= 2 a(chi2)");
  i64 p = psi.ring()->p();
  VerifyReport r;
  r.theorem = "deligne";
  r.inputs["chi1"] = chi1.str();
  r.inputs["chi2"] = chi2.str();
  r.inputs["psi"] = psi.str();
  r.lhs = w_char(chi1 * chi2, psi, opt.gauss);
  GaussPoint gp = gauss_point(chi1, psi);
  FieldElem y = gp.c.inverse();
  r.rhs = as_root(chi2.inverse().eval_root(y), p) * w_char(chi1, psi, opt.gauss);
  r.notes.push_back("y = " + y.str() + ", " + gp.str());
  finalize(r, opt, p);
  return r;
}

VerifyReport verify_main(const HeisenbergDatum& rho, const AddCharacter& psi, const VerifyOptions& opt) {
  require_twisted(rho, "verify main");
  if (psi.ring() != rho.base()) throw UsageError("verify main: psi must live on the base field");
  i64 p = psi.ring()->p();
  int m = rho.dim();
  VerifyReport r;
  r.theorem = "main";
  r.inputs["rho"] = rho.str();
  r.inputs["psi"] = psi.str();
  r.lhs = w_induced(rho.E, rho.theta, psi, opt.gauss);
  GaussPoint gp = gauss_point(rho.twist, psi);
  RootNumber wf = w_char(rho.twist, psi, opt.gauss).pow(static_cast<u64>(m));
  MulCharacter det0 = det_heis_minimal(rho);
  RootNumber rc = wf * as_root(det0.eval_root(gp.c), p);
  RootNumber rci = wf * as_root(det0.eval_root(gp.c.inverse()), p);
  bool ec = rootnum_eq(r.lhs, rc), eci = rootnum_eq(r.lhs, rci);
  r.checks = {{"orientation_c", ec}, {"orientation_c_inverse", eci}};
  r.rhs = opt.orientation == Orientation::C ? rc : rci;
  r.notes.push_back(gp.str());
  r.notes.push_back("det rho0 = " + det0.str());
  finalize(r, opt, p);
  return r;
}

VerifyReport verify_sigma(const std::vector<MulCharacter>& sigma, TwistContext& ctx, const VerifyOptions& opt) {
  const HeisenbergDatum& rho = ctx.rho();
  require_twisted(rho, "verify sigma");
  if (sigma.empty()) throw UsageError("verify sigma: sigma must have at least one component");
  const RingPtr& F = rho.base();
  i64 p = F->p();
  const AddCharacter& psi = ctx.psi();
  VerifyReport r;
  r.theorem = "sigma";
  std::vector<JumpComponent> comps;
  nlohmann::ordered_json sj = nlohmann::ordered_json::array();
  for (const auto& c : sigma) {
    if (c.ring() != F) throw UsageError("verify sigma: components must live on the base field");
    comps.push_back(jump_component(c));
    sj.push_back(c.str());
  }
  r.inputs["sigma"] = sj;
  r.inputs["rho"] = rho.str();
  r.inputs["psi"] = psi.str();
  JumpRange jr = jumps_virtual(comps);
  for (auto i : jr.excluded) r.notes.push_back("component " + std::to_string(i) + " unramified, excluded from beta");
  if (jr.beta && !(Rational(2) * *jr.beta < rho.jump()))
    throw UsageError("verify sigma: requires j(rho) > 2 beta(sigma)");
  RootNumber lhs = one_root(p);
  for (const auto& c : sigma) lhs = lhs * ctx.w_twist(c);
  r.lhs = lhs;
  MulCharacter det = product(sigma, F);
  const GammaSolution& g = ctx.gamma(det.conductor());
  if (g.solutions.empty()) throw InvariantViolation("verify sigma: no Deligne-Henniart gamma found");
  if (!g.unique()) r.notes.push_back("gamma not unique mod U^" + std::to_string(g.modulus) + "; using the first");
  GaussPoint gp = gauss_point(rho.twist, psi);
  u64 k = sigma.size();
  r.rhs = as_root(det.eval_root(g.gamma()), p) *
          minimal_factor(rho, psi, ctx.gauss(), k * static_cast<u64>(rho.dim()), static_cast<i64>(k), gp);
  r.notes.push_back("gamma = " + g.gamma().str());
  finalize(r, opt, p);
  return r;
}

VerifyReport verify_sigma(const std::vector<MulCharacter>& sigma, const HeisenbergDatum& rho, const AddCharacter& psi,
                          const VerifyOptions& opt) {
  TwistContext ctx(rho, psi, opt.gauss);
  return verify_sigma(sigma, ctx, opt);
}

VerifyReport verify_invariant(const HeisenbergDatum& rho_p, const HeisenbergDatum& rho_m, const AddCharacter& psi,
                              const VerifyOptions& opt) {
  require_twisted(rho_m, "verify invariant");
  const RingPtr& F = rho_m.base();
  if (rho_p.base() != F || psi.ring() != F) throw UsageError("verify invariant: data on different base fields");
  i64 p = F->p();
  i64 dp = rho_p.dim();
  {
    i64 x = dp;
    while (x % p == 0) x /= p;
    if (x != 1) throw UsageError("verify invariant: dim rho_p must be a power of p");
  }
  int m = rho_m.dim();
  std::optional<Rational> jp;
  if (rho_p.report.artin > 0) jp = rho_p.jump();
  Rational jm = rho_m.jump();
  if (jp && !(Rational(2) * *jp < jm)) throw UsageError("verify invariant: requires j(rho_m) > 2 j(rho_p)");
  VerifyReport r;
  r.theorem = "invariant";
  r.inputs["rho_p"] = rho_p.str();
  r.inputs["rho_m"] = rho_m.str();
  r.inputs["psi"] = psi.str();
  int D = static_cast<int>(dp) * m;
  int N = std::max(rho_p.E->N(), rho_m.E->N());
  RingPtr E = ring_make(p, D, N);
  MulCharacter Theta = pullback_norm(rho_p.theta, E) * pullback_norm(rho_m.theta, E);
  Rational expect = (jp ? std::max(*jp, jm) : jm) + Rational(1);
  r.checks.push_back({"conductor_guard", Rational(Theta.conductor()) == expect});
  if (!(Rational(Theta.conductor()) == expect))
    throw InvariantViolation("verify invariant: a(Theta) = " + std::to_string(Theta.conductor()) +
                             " but the tensor product formula gives " + expect.str());
  r.lhs = w_induced(E, Theta, psi, opt.gauss);
  MulCharacter detp = det_heis(rho_p);
  TwistContext ctx(rho_m, psi, opt.gauss);
  RootOfUnity dg;
  if (!detp.is_trivial()) {
    const GammaSolution& g = ctx.gamma(detp.conductor());
    if (g.solutions.empty()) throw InvariantViolation("verify invariant: no Deligne-Henniart gamma found");
    if (!g.unique()) r.notes.push_back("gamma not unique mod U^" + std::to_string(g.modulus) + "; using the first");
    dg = detp.eval_root(g.gamma());
    r.notes.push_back("gamma = " + g.gamma().str());
  }
  GaussPoint gp = gauss_point(rho_m.twist, psi);
  r.rhs = as_root(dg, p) * minimal_factor(rho_m, psi, opt.gauss, static_cast<u64>(D), dp, gp);
  r.notes.push_back("compositum " + E->describe() + ", a(Theta) = " + std::to_string(Theta.conductor()));
  finalize(r, opt, p);
  return r;
}

std::size_t ConverseReport::counterexamples() const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [](const ConversePair& c) { return c.outcome == "counterexample"; }));
}

nlohmann::ordered_json ConverseReport::to_json() const {
  nlohmann::ordered_json j;
  j["family_size"] = family_size;
  j["pairs"] = pairs;
  j["equal_w"] = equal_w;
  j["identical"] = identical;
  j["twisted"] = twisted;
  j["counterexamples"] = counterexamples();
  nlohmann::ordered_json f = nlohmann::ordered_json::array();
  for (const auto& c : findings) f.push_back({{"i", c.i}, {"j", c.j}, {"outcome", c.outcome}, {"detail", c.detail}});
  j["findings"] = f;
  return j;
}

ConverseReport converse_check(const std::vector<std::vector<MulCharacter>>& family, TwistContext& ctx) {
  const HeisenbergDatum& rho = ctx.rho();
  const RingPtr& F = rho.base();
  ConverseReport out;
  out.family_size = family.size();
  if (family.empty()) return out;
  std::size_t dim = family.front().size();
  std::string det0 = product(family.front(), F).str();
  for (const auto& s : family) {
    if (s.size() != dim) throw UsageError("converse: family members must share a dimension");
    if (product(s, F).str() != det0) throw UsageError("converse: family members must share a determinant");
    for (const auto& c : s)
      if (!jump_ok(rho, c.conductor())) throw UsageError("converse: component violates the jump condition");
  }
  std::vector<RootNumber> w;
  for (const auto& s : family) {
    RootNumber x = one_root(F->p());
    for (const auto& c : s) x = x * ctx.w_twist(c);
    w.push_back(x);
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto si = sorted_strs(family[i]);
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      ++out.pairs;
      if (!rootnum_eq(w[i], w[j])) continue;
      ++out.equal_w;
      auto sj = sorted_strs(family[j]);
      if (si == sj) {
        ++out.identical;
        continue;
      }
      std::optional<MulCharacter> mu;
      for (i64 s = 1; s < static_cast<i64>(dim) && !mu; ++s) {
        MulCharacter cand = MulCharacter::unramified(F, RootOfUnity(static_cast<i64>(dim), s));
        std::vector<MulCharacter> tw;
        for (const auto& c : family[i]) tw.push_back(c * cand);
        if (sorted_strs(tw) == sj) mu = cand;
      }
      if (mu) {
        ++out.twisted;
        out.findings.push_back({i, j, "twist", "mu = " + mu->str()});
      } else {
        std::string d = "{";
        for (std::size_t k = 0; k < si.size(); ++k) d += (k ? ", " : "") + si[k];
        d += "} vs {";
        for (std::size_t k = 0; k < sj.size(); ++k) d += (k ? ", " : "") + sj[k];
        out.findings.push_back({i, j, "counterexample", d + "}"});
      }
    }
  }
  return out;
}

std::vector<std::vector<std::vector<MulCharacter>>> partition_by_determinant(
    const std::vector<std::vector<MulCharacter>>& family) {
  std::vector<std::vector<std::vector<MulCharacter>>> out;
  std::vector<std::string> keys;
  for (const auto& s : family) {
    if (s.empty()) throw UsageError("partition_by_determinant: empty member");
    std::string k = product(s, s.front().ring()).str();
    auto it = std::find(keys.begin(), keys.end(), k);
    if (it == keys.end()) {
      keys.push_back(k);
      out.push_back({s});
    } else {
      out[static_cast<std::size_t>(it - keys.begin())].push_back(s);
    }
  }
  return out;
}

std::vector<std::vector<MulCharacter>> multisets(const std::vector<MulCharacter>& chars, int k) {
  std::vector<std::vector<MulCharacter>> out;
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(idx.size()) == k) {
      std::vector<MulCharacter> s;
      for (auto i : idx) s.push_back(chars[i]);
      out.push_back(std::move(s));
      return;
    }
    for (std::size_t i = start; i < chars.size(); ++i) {
      idx.push_back(i);
      rec(i);
      idx.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace epsfact
