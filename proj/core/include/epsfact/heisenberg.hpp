#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epsfact/characters.hpp"
#include "epsfact/conductors.hpp"
#include "epsfact/localring.hpp"

namespace epsfact {

// Character eta of U_F, F = Q_p, given by Teichmueller and wild images.
class EtaChar {
 public:
  EtaChar() = default;
  EtaChar(RingPtr base, RootOfUnity teich, std::vector<RootOfUnity> wild);

  const RingPtr& base() const { return chi_.ring(); }
  const RootOfUnity& teich() const { return chi_.teich(); }
  const std::vector<RootOfUnity>& wild() const { return chi_.wild(); }
  i64 order() const { return chi_.order(); }
  int conductor() const { return chi_.conductor(); }
  // eta extended to F^x by eta(p) = 1
  const MulCharacter& as_character() const { return chi_; }
  RootOfUnity eval_unit(const RingElem& u) const { return chi_.eval_unit(u); }
  bool operator==(const EtaChar& o) const { return chi_ == o.chi_; }
  std::string str() const;

 private:
  MulCharacter chi_;
};

RootOfUnity x_eta_pair_root(const EtaChar& eta, const FieldElem& x, const FieldElem& y);
CycNum x_eta_pair(const EtaChar& eta, const FieldElem& x, const FieldElem& y);

struct RadDescription {
  i64 index = 1;
  i64 dim = 1;
  std::string generators;
};
RadDescription rad_x(const EtaChar& eta);
// x in <p^#eta> x Ker(eta)
bool rad_contains(const EtaChar& eta, const FieldElem& x);
// X(x, y) = 1 for y in {p, teich, wild generators}
bool rad_contains_by_pairing(const EtaChar& eta, const FieldElem& x);

struct HeisenbergDatum {
  EtaChar eta;
  RingPtr E;
  MulCharacter theta0;  // minimal inducing character
  MulCharacter theta;   // theta0 * (twist o N)
  MulCharacter twist;   // chi_F, trivial for the minimal datum
  int selector = 0;
  ConductorReport report;

  int dim() const { return E->d(); }
  const RingPtr& base() const { return eta.base(); }
  bool twisted() const { return !twist.is_trivial(); }
  // a(rho) / dim - 1
  Rational jump() const { return Rational(report.artin, report.dim) - Rational(1); }
  std::string str() const;
};

// Frobenius-regular theta on E^x with theta(p) = 1, a(theta) = a(eta) and
// theta^{1 - phi} = eta o N_{E/F} on U_E, restricted to the convention class
// (same restriction to U_F as the first candidate). Deterministic order.
std::vector<MulCharacter> theta_candidates(const EtaChar& eta, const RingPtr& E);

HeisenbergDatum heis_minimal(const EtaChar& eta, int selector, std::optional<int> precision = std::nullopt);
HeisenbergDatum heis_twist(const HeisenbergDatum& rho0, const MulCharacter& chiF);

// det Ind_{E/F} theta = Delta_{E/F} * theta|_F
MulCharacter det_induced(const MulCharacter& theta, const RingPtr& F);
MulCharacter det_heis(const HeisenbergDatum& rho);
MulCharacter det_heis_minimal(const HeisenbergDatum& rho);
RootOfUnity delta_unramified(int m);

struct MPrimary {
  i64 m_primary = 1;
  i64 group_order = 1;
};
MPrimary m_primary(i64 q, i64 m);

std::pair<EtaChar, EtaChar> decompose(const EtaChar& eta);
// (p-part, prime-to-p part) of a root of unity
std::pair<RootOfUnity, RootOfUnity> split_root(const RootOfUnity& r, i64 p);

}  // namespace epsfact
