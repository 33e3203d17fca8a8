#include "epsfact/conductors.hpp"

#include "epsfact/errors.hpp"

namespace epsfact {

TameTower::TameTower(i64 p, std::vector<TameStep> steps) : p_(p), steps_(std::move(steps)) {
  if (!is_prime(p)) throw UsageError("TameTower: p not prime");
  for (const auto& s : steps_) {
    if (s.e < 1 || s.f < 1) throw UsageError("TameTower: e and f must be positive");
    if (s.e % p_ == 0) throw UsageError("TameTower: wild step '" + s.label + "' (p | e) is out of scope");
  }
}

int TameTower::e() const {
  int r = 1;
  for (const auto& s : steps_) r *= s.e;
  return r;
}

int TameTower::f() const {
  int r = 1;
  for (const auto& s : steps_) r *= s.f;
  return r;
}

int TameTower::different_above(std::size_t i) const {
  // d_{K/K_i} = d_{K/K_{i+1}} + e_{K/K_{i+1}} d_{K_{i+1}/K_i}
  int d = 0, e_above = 1;
  for (std::size_t k = steps_.size(); k-- > i;) {
    d = d + e_above * steps_[k].different();
    e_above *= steps_[k].e;
  }
  return d;
}

int TameTower::different() const { return different_above(0); }

TameTower TameTower::compose(const TameTower& above) const {
  if (above.p_ != p_) throw UsageError("TameTower: composing towers over different primes");
  auto s = steps_;
  s.insert(s.end(), above.steps_.begin(), above.steps_.end());
  return TameTower(p_, std::move(s));
}

nlohmann::ordered_json ConductorReport::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim;
  j["artin"] = artin;
  j["swan"] = swan;
  j["jump"] = jump.str();
  j["minimal"] = minimal;
  nlohmann::ordered_json h = nlohmann::ordered_json::object();
  for (const auto& [k, v] : houses) h[k] = v;
  j["houses"] = h;
  return j;
}

int induced_conductor(int f, int d, int dim, int a) {
  if (f < 0 || d < 0 || dim < 0 || a < 0) throw UsageError("induced_conductor: negative input");
  return f * (d * dim + a);
}

ConductorReport heis_minimal_conductors(int m, int a_eta) {
  if (m < 1 || a_eta < 1) throw UsageError("heis_minimal_conductors: need m >= 1 and a(eta) >= 1");
  ConductorReport r;
  r.dim = m;
  r.swan = m * (a_eta - 1);
  r.artin = m * a_eta;
  r.jump = Rational(a_eta - 1);
  r.minimal = true;
  r.houses = {{"swan", "dim * j(eta)"}, {"artin", "swan + dim"}, {"jump", "a(eta) - 1"}};
  return r;
}

ConductorReport twist_conductor(int m, int j_X, int j_chi) {
  if (m < 1) throw UsageError("twist_conductor: m must be positive");
  ConductorReport r;
  r.dim = m;
  int j = std::max(j_X, j_chi);
  r.swan = m * j;
  r.artin = r.swan + m;
  r.jump = Rational(j);
  r.minimal = j_chi <= j_X;
  r.lemma_branch = j_chi > j_X;
  r.houses = {{"swan", "dim * max(j(chi_F), j(X))"}, {"artin", "swan + dim"}};
  if (r.lemma_branch) {
    if (r.artin != m * (j_chi + 1)) throw InvariantViolation("twist_conductor: dominated branch mismatch");
    r.houses.emplace_back("artin_branch", "dim * a(chi_F)");
  }
  return r;
}

DimCheck dim_theorem_check(i64 dim, i64 p, i64 q) {
  if (dim < 1) throw UsageError("dim_theorem_check: dim must be positive");
  i64 t = q;
  while (t % p == 0) t /= p;
  if (t != 1) throw UsageError("dim_theorem_check: q is not a power of p");
  DimCheck c;
  c.m = dim;
  while (c.m % p == 0) c.m /= p, ++c.r;
  c.valid = (q - 1) % c.m == 0;
  return c;
}

bool divisibility_predicate(i64 m, i64 artin, bool isU, bool isMinimal) {
  bool divides = artin % m == 0;
  if (divides != (isU || !isMinimal))
    throw InvariantViolation("divisibility_predicate: m=" + std::to_string(m) + ", artin=" + std::to_string(artin) +
                             (isU ? " U-isotropic" : " not U-isotropic") + (isMinimal ? " minimal" : " non-minimal"));
  return divides;
}

bool tameness_predicate(i64 m, i64 artin, i64 p) {
  if (std::gcd(m, p) != 1) throw UsageError("tameness_predicate: m must be prime to p");
  return artin == m;
}

int char_conductor_up(int a_E, const TameStep& step) { return step.e * a_E - step.different(); }

std::optional<int> k_side_conductor(int m, int a_eta, int d_KF) {
  if (a_eta >= 2) return std::nullopt;
  return m * a_eta - d_KF;
}

}  // namespace epsfact
