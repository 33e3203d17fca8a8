#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epsfact/arith.hpp"
#include "epsfact/cyclotomic.hpp"
#include "epsfact/localring.hpp"

namespace epsfact {

// exp(2 pi i num/den), kept reduced with 0 <= num < den.
struct RootOfUnity {
  i64 num = 0;
  i64 den = 1;

  RootOfUnity() = default;
  RootOfUnity(i64 den, i64 num);  // zeta(den, num)
  static RootOfUnity one() { return {}; }

  bool is_one() const { return num == 0; }
  i64 order() const { return den; }
  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity pow(i64 e) const;
  RootOfUnity inverse() const { return RootOfUnity(den, -num); }
  bool operator==(const RootOfUnity& o) const = default;
  CycNum to_cyc() const { return CycNum::lift(Integer(1), den, num); }
  std::string str() const;
};

class MulCharacter {
 public:
  MulCharacter() = default;
  MulCharacter(RingPtr ring, RootOfUnity pi, RootOfUnity teich, std::vector<RootOfUnity> wild);
  static MulCharacter trivial(RingPtr ring);
  // Unramified character with chi(p) = pi.
  static MulCharacter unramified(RingPtr ring, RootOfUnity pi);

  const RingPtr& ring() const { return ring_; }
  const RootOfUnity& pi() const { return pi_; }
  const RootOfUnity& teich() const { return teich_; }
  const std::vector<RootOfUnity>& wild() const { return wild_; }

  int conductor() const { return conductor_; }
  int jump() const { return conductor_ - 1; }
  bool is_trivial() const;
  bool is_unramified() const { return conductor_ == 0; }
  i64 order() const;

  RootOfUnity eval_log(const UnitLog& l) const;
  RootOfUnity eval_unit(const RingElem& u) const;
  RootOfUnity eval_root(const FieldElem& x) const;
  CycNum eval(const FieldElem& x) const { return eval_root(x).to_cyc(); }

  MulCharacter operator*(const MulCharacter& o) const;
  MulCharacter inverse() const;
  MulCharacter pow(i64 e) const;
  bool operator==(const MulCharacter& o) const;
  std::string str() const;

 private:
  RingPtr ring_;
  RootOfUnity pi_, teich_;
  std::vector<RootOfUnity> wild_;
  int conductor_ = 0;
};

// x -> psi_std(Tr_{E/Q_p}(c0 x)).
class AddCharacter {
 public:
  AddCharacter() = default;
  AddCharacter(RingPtr ring, FieldElem shift);
  static AddCharacter standard(RingPtr ring);
  // shift p^k * u for an integer unit u
  static AddCharacter shifted(RingPtr ring, int k, i64 u = 1);

  const RingPtr& ring() const { return ring_; }
  const FieldElem& shift() const { return shift_; }
  int conductor() const { return shift_.val; }

  RootOfUnity eval_root(const FieldElem& x) const;
  CycNum eval(const FieldElem& x) const { return eval_root(x).to_cyc(); }
  // psi(p^k z) for any z in O (not necessarily a unit)
  RootOfUnity eval_scaled(int k, const RingElem& z) const;
  // psi o Tr_{E/F} for E containing this ring as a subfield.
  AddCharacter lift_to(const RingPtr& E) const;
  std::string str() const;

 private:
  RingPtr ring_;
  FieldElem shift_;
};

RootOfUnity mulchar_eval(const MulCharacter& chi, const FieldElem& x);
RootOfUnity addchar_eval(const AddCharacter& psi, const FieldElem& x);

// Conductor by testing chi on generators of every layer U^k / U^{k+1}.
int conductor_scan(const MulCharacter& chi);
// n(psi) by testing psi on p^{-k} x^j.
int additive_conductor_scan(const AddCharacter& psi);

// chi o N_{E/S} where chi lives on the subfield S of E.
MulCharacter pullback_norm(const MulCharacter& chi, const RingPtr& E);
// chi restricted to the subfield S^x.
MulCharacter restrict_to_subfield(const MulCharacter& chi, const RingPtr& S);
// theta o phi^i.
MulCharacter frobenius_conjugate(const MulCharacter& theta, int i);

// All characters of F^x with conductor <= max_conductor, chi(p) of order dividing pi_den
// and teich image of order dividing teich_den (0 means q - 1). Deterministic order.
std::vector<MulCharacter> enumerate_characters(const RingPtr& F, int max_conductor, i64 pi_den, i64 teich_den = 0);

struct JumpComponent {
  i64 multiplicity = 1;
  std::optional<Rational> jump;  // nullopt for unramified (excluded)
  std::string label;
};

struct JumpRange {
  std::optional<Rational> j;
  std::optional<Rational> beta;
  std::vector<std::size_t> excluded;
};

JumpComponent jump_component(const MulCharacter& chi, i64 multiplicity = 1);
JumpRange jumps_virtual(std::span<const JumpComponent> components);

}  // namespace epsfact
