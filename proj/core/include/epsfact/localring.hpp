#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "epsfact/arith.hpp"

namespace epsfact {

class LocalRing;
using RingPtr = std::shared_ptr<const LocalRing>;

// Element of O_E / P_E^N as a coefficient vector over Z/p^N in the basis 1, x, ..., x^{d-1}.
class RingElem {
 public:
  RingElem() = default;
  RingElem(RingPtr ring, std::vector<i64> coeffs);

  const LocalRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const std::vector<i64>& coeffs() const { return c_; }
  i64 operator[](std::size_t i) const { return c_[i]; }

  bool is_zero() const;
  bool is_unit() const;
  // min p-adic valuation of the coefficients; N for zero
  int valuation() const;
  // residue class encoded as sum r_i p^i
  i64 residue() const;

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator-() const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator*(i64 k) const;
  RingElem pow(u64 e) const;
  RingElem inverse() const;
  bool operator==(const RingElem& o) const;

  std::string str() const;

 private:
  RingPtr ring_;
  std::vector<i64> c_;
};

// p^val * unit, an element of E^x known modulo U_E^N.
struct FieldElem {
  int val = 0;
  RingElem unit;

  static FieldElem make(int val, RingElem unit);
  // Splits off the valuation; the unit part is then known only modulo p^{N - val}.
  static FieldElem from_ring(const RingElem& x);

  FieldElem operator*(const FieldElem& o) const;
  FieldElem inverse() const;
  FieldElem pow(i64 e) const;
  bool operator==(const FieldElem& o) const { return val == o.val && unit == o.unit; }
  std::string str() const;
};

struct UnitLog {
  i64 k = 0;               // exponent of teich, mod teich order
  std::vector<i64> e;      // exponents of wild generators
  bool operator==(const UnitLog&) const = default;
};

struct UnitGens {
  RingElem teich;
  i64 teich_order = 1;
  std::vector<RingElem> wild;
  std::vector<i64> wild_order;
};

// F_q = F_p[x]/(h mod p) with discrete-log tables.
class ResidueField {
 public:
  ResidueField(i64 p, int d, std::vector<i64> h, int N);
  i64 p() const { return p_; }
  int d() const { return d_; }
  i64 q() const { return q_; }
  i64 generator() const { return gen_; }
  i64 mul(i64 a, i64 b) const;
  i64 add(i64 a, i64 b) const;
  i64 pow(i64 a, u64 e) const;
  i64 inv(i64 a) const;
  i64 log(i64 a) const;
  i64 exp(i64 k) const { return exp_[mod(k, q_ - 1)]; }
  std::vector<i64> digits(i64 a) const;
  i64 encode(const std::vector<i64>& digits) const;
  bool loaded_from_cache() const { return from_cache_; }

 private:
  i64 poly_mul(i64 a, i64 b) const;
  i64 p_;
  int d_;
  i64 q_;
  std::vector<i64> h_;
  i64 gen_ = 1;
  std::vector<std::int32_t> log_;
  std::vector<std::int32_t> exp_;
  bool from_cache_ = false;
};

class LocalRing : public std::enable_shared_from_this<LocalRing> {
 public:
  i64 p() const { return p_; }
  int d() const { return d_; }
  int N() const { return N_; }
  i64 q() const { return q_; }
  i64 modulus() const { return pN_; }
  i64 ppow(int k) const { return ppow_.at(k); }
  // monic, constant term first, length d + 1
  const std::vector<i64>& h() const { return h_; }
  std::string describe() const;

  RingElem zero() const;
  RingElem one() const;
  RingElem from_int(i64 n) const;
  RingElem from_coeffs(std::vector<i64> c) const;
  RingElem gen() const;  // the class of x

  const ResidueField& residue_field() const { return *rf_; }
  const UnitGens& gens() const { return gens_; }
  // order of the unit group of O/P^N
  i64 unit_count() const;

  RingElem teichmuller(const RingElem& residue) const;
  RingElem teich_of_residue(i64 r) const;
  std::pair<i64, i64> trace_norm(const RingElem& e) const;
  i64 trace(const RingElem& e) const;
  i64 trace_of_power(int j) const { return tr_basis_.at(j); }
  UnitLog unit_dlog(const RingElem& u) const;
  RingElem from_unit_log(const UnitLog& l) const;

  // Arithmetic Frobenius (lift of t -> t^p), applied k times.
  RingElem frobenius(const RingElem& y, int k = 1) const;
  // Norm to the subfield of degree sub_degree, as an element of this ring.
  RingElem relative_norm(const RingElem& y, int sub_degree) const;
  // Teichmueller digits: y = sum_k p^k T(a_k), residues a_k.
  std::vector<i64> teich_digits(const RingElem& y) const;
  RingElem from_teich_digits(const std::vector<i64>& digits) const;

  // Low-level kernels on raw coefficient arrays of length d.
  void mul_raw(const i64* a, const i64* b, i64* out) const;

 private:
  friend RingPtr ring_make(i64 p, int d, int N);
  LocalRing(i64 p, int d, int N);
  void build();
  UnitLog dlog_p2(const RingElem& u) const;

  i64 p_;
  int d_;
  int N_;
  i64 q_;
  i64 pN_;
  std::vector<i64> ppow_;
  std::vector<i64> h_;
  std::vector<std::vector<i64>> red_;  // x^{d+k} mod h
  std::vector<i64> tr_basis_;
  std::unique_ptr<ResidueField> rf_;
  UnitGens gens_;
  // w_i^{-c p^{j-1}} at index ((j-1)*d + i)*(p-1) + (c-1)
  std::vector<std::vector<i64>> descent_;
  std::vector<std::vector<i64>> frob_cols_;  // frob(x^j)
};

// Memoised per (p, d, N); throws UsageError/ResourceError.
RingPtr ring_make(i64 p, int d, int N);
std::vector<i64> least_irreducible(i64 p, int d);

struct RingBudget {
  i64 max_modulus = i64{1} << 31;
  i64 max_q = i64{1} << 22;
  i64 max_unit_group = i64{1} << 62;
};
void set_ring_budget(const RingBudget& b);
RingBudget ring_budget();

void set_dlog_cache_dir(std::optional<std::filesystem::path> dir);
std::optional<std::filesystem::path> dlog_cache_dir();

// Inclusion of the degree-ds subring into the degree-db ring (ds | db), via Teichmueller digits.
// Results are exact modulo p^min(N_small, N_big); missing digits are taken as zero.
class SubfieldMap {
 public:
  SubfieldMap(RingPtr small, RingPtr big);
  const RingPtr& small() const { return small_; }
  const RingPtr& big() const { return big_; }
  RingElem embed(const RingElem& x) const;
  // Inverse of embed; InvariantViolation if x does not lie in the subfield.
  RingElem restrict(const RingElem& x) const;
  FieldElem embed(const FieldElem& x) const;
  FieldElem restrict(const FieldElem& x) const;

 private:
  RingPtr small_, big_;
  std::vector<i64> up_;   // residue index small -> big
  std::vector<i64> down_; // residue index big -> small, -1 if outside
};

}  // namespace epsfact
