#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "epsfact/arith.hpp"

namespace epsfact {

using Integer = mpz_class;

// Hard cap on cyclotomic levels created by unification (default 100000).
void set_max_cyclotomic_level(i64 level);
i64 max_cyclotomic_level();

// Coefficients of Phi_n, constant term first. Cached; thread-safe.
const std::vector<i64>& cyclotomic_polynomial(i64 n);

// Element of Z[zeta_N] stored as its remainder modulo Phi_N.
class CycNum {
 public:
  CycNum();
  explicit CycNum(const Integer& n, i64 level = 1);

  // n * zeta_N^k.
  static CycNum lift(const Integer& n, i64 level, i64 k);
  // Sum of counts[i] * zeta_N^i over i < counts.size() (indices taken mod N).
  static CycNum from_counts(i64 level, std::span<const i64> counts);
  static CycNum from_counts(i64 level, std::span<const Integer> counts);
  static CycNum parse(std::string_view text);

  i64 level() const { return level_; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  // Same number viewed at a multiple of the current level.
  CycNum at_level(i64 multiple) const;
  CycNum conj() const;
  CycNum pow(u64 e) const;

  CycNum operator-() const;
  friend CycNum operator+(const CycNum& a, const CycNum& b);
  friend CycNum operator-(const CycNum& a, const CycNum& b);
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  CycNum& operator+=(const CycNum& b) { return *this = *this + b; }
  CycNum& operator*=(const CycNum& b) { return *this = *this * b; }
  friend bool operator==(const CycNum& a, const CycNum& b);

  std::complex<long double> embed() const;
  std::string str() const;

 private:
  CycNum(i64 level, std::vector<Integer> raw);  // reduces raw
  i64 level_;
  std::vector<Integer> coeffs_;
};

enum class CycOp { Add, Sub, Mul };

CycNum cyc_lift(const Integer& n, i64 level, i64 k);
CycNum cyc_arith(const CycNum& a, const CycNum& b, CycOp op);

// value * qbase^(-qexp2/2).
class RootNumber {
 public:
  RootNumber() : value_(Integer(1)), qbase_(1), qexp2_(0) {}
  RootNumber(CycNum value, i64 qbase, i64 qexp2);
  static RootNumber parse(std::string_view text);

  const CycNum& value() const { return value_; }
  i64 qbase() const { return qbase_; }
  i64 qexp2() const { return qexp2_; }

  // Rewrite with base b where qbase = b^k.
  RootNumber rebase(i64 b) const;
  RootNumber operator*(const RootNumber& o) const;
  RootNumber pow(u64 e) const;
  std::complex<long double> embed() const;
  std::string str() const;

 private:
  CycNum value_;
  i64 qbase_;
  i64 qexp2_;
};

bool rootnum_eq(const RootNumber& a, const RootNumber& b);
// Float comparison used in --float-only mode.
bool rootnum_close(const RootNumber& a, const RootNumber& b, double tol);

}  // namespace epsfact
