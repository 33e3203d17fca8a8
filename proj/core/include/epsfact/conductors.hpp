#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "epsfact/arith.hpp"

namespace epsfact {

struct TameStep {
  std::string label;
  int e = 1;
  int f = 1;
  int different() const { return e - 1; }
};

// Tower F = K_0 < K_1 < ... of tame extensions given by (e, f) per step.
class TameTower {
 public:
  TameTower(i64 p, std::vector<TameStep> steps);
  i64 p() const { return p_; }
  const std::vector<TameStep>& steps() const { return steps_; }
  int e() const;
  int f() const;
  // different exponent of the top over the base, by transitivity
  int different() const;
  // different exponent of the top field over K_i
  int different_above(std::size_t i) const;
  TameTower compose(const TameTower& above) const;

 private:
  i64 p_;
  std::vector<TameStep> steps_;
};

struct ConductorReport {
  int dim = 1;
  int artin = 0;
  int swan = 0;
  Rational jump;
  bool minimal = true;
  bool lemma_branch = false;  // twist conductor dominated by chi_F
  std::vector<std::pair<std::string, std::string>> houses;

  nlohmann::ordered_json to_json() const;
  bool operator==(const ConductorReport& o) const {
    return dim == o.dim && artin == o.artin && swan == o.swan && jump == o.jump && minimal == o.minimal;
  }
};

int induced_conductor(int f, int d, int dim, int a);
ConductorReport heis_minimal_conductors(int m, int a_eta);
ConductorReport twist_conductor(int m, int j_X, int j_chi);

struct DimCheck {
  int r = 0;
  i64 m = 1;
  bool valid = false;
};
DimCheck dim_theorem_check(i64 dim, i64 p, i64 q);

bool divisibility_predicate(i64 m, i64 artin, bool isU, bool isMinimal);
bool tameness_predicate(i64 m, i64 artin, i64 p);

// a(chi_K) = e_{K/E} a(chi_E) - d_{K/E}
int char_conductor_up(int a_E, const TameStep& step);
// K-side conductor m a(eta) - d_{K/F} for tame eta; nullopt (flagged) for wild eta.
std::optional<int> k_side_conductor(int m, int a_eta, int d_KF);

}  // namespace epsfact
