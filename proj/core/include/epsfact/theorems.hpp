#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "epsfact/characters.hpp"
#include "epsfact/cyclotomic.hpp"
#include "epsfact/epsilon.hpp"
#include "epsfact/heisenberg.hpp"

namespace epsfact {

struct GaussPoint {
  FieldElem c;       // chi(1 + x) = psi(x / c) on P^{a - floor(a/2)}
  int modulus = 0;   // c is determined modulo U^modulus, modulus = floor(a/2)
  int conductor = 0;
  int n_psi = 0;
  std::string str() const;
};

GaussPoint gauss_point(const MulCharacter& chi, const AddCharacter& psi);
// Every unit class u mod U^modulus with chi(1+x) = psi(x / (p^{a+n} u)) on P^{a - floor(a/2)}.
std::vector<RingElem> gauss_point_classes(const MulCharacter& chi, const AddCharacter& psi, int modulus);

enum class Orientation { C, CInverse };

struct VerifyOptions {
  bool flip_convention = false;  // negative control: corrupt the rhs
  bool float_only = false;
  double tol = 1e-9;
  Orientation orientation = Orientation::C;
  GaussOptions gauss;
};

struct VerifyReport {
  std::string theorem;
  std::string digest;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  RootNumber lhs, rhs;
  bool equal = false;
  bool float_agrees = true;
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::string> notes;

  nlohmann::ordered_json to_json() const;
};

struct GammaSolution {
  int valuation = 0;
  int modulus = 0;
  std::vector<FieldElem> solutions;
  std::vector<std::string> probes;
  std::vector<std::string> notes;
  bool unique() const { return solutions.size() == 1; }
  const FieldElem& gamma() const;
};

// Memoised W(chi (x) rho, psi) for characters chi of F, realised as w_induced(theta * (chi o N)).
class TwistContext {
 public:
  TwistContext(HeisenbergDatum rho, AddCharacter psi, GaussOptions g = {});
  const HeisenbergDatum& rho() const { return rho_; }
  const AddCharacter& psi() const { return psi_; }
  const GaussOptions& gauss() const { return g_; }
  RootNumber w_rho();
  RootNumber w_twist(const MulCharacter& chi);
  // dh_gamma with the default probes, memoised per depth
  const GammaSolution& gamma(int depth);

 private:
  HeisenbergDatum rho_;
  AddCharacter psi_;
  GaussOptions g_;
  std::mutex mu_;
  std::map<std::string, RootNumber> cache_;
  std::map<int, GammaSolution> gammas_;
};

// Probe characters: conductor <= depth, orders dividing q - 1, 2 (a(chi) - 1) < j(rho).
std::vector<MulCharacter> default_probes(const HeisenbergDatum& rho, int depth);
GammaSolution dh_gamma(TwistContext& ctx, int depth, const std::vector<MulCharacter>& probes);
GammaSolution dh_gamma(TwistContext& ctx, int depth);
GammaSolution dh_gamma(const HeisenbergDatum& rho, const AddCharacter& psi, int depth);

VerifyReport verify_deligne(const MulCharacter& chi1, const MulCharacter& chi2, const AddCharacter& psi,
                            const VerifyOptions& opt = {});
VerifyReport verify_main(const HeisenbergDatum& rho, const AddCharacter& psi, const VerifyOptions& opt = {});
VerifyReport verify_sigma(const std::vector<MulCharacter>& sigma, TwistContext& ctx, const VerifyOptions& opt = {});
VerifyReport verify_sigma(const std::vector<MulCharacter>& sigma, const HeisenbergDatum& rho, const AddCharacter& psi,
                          const VerifyOptions& opt = {});
VerifyReport verify_invariant(const HeisenbergDatum& rho_p, const HeisenbergDatum& rho_m, const AddCharacter& psi,
                              const VerifyOptions& opt = {});

struct ConversePair {
  std::size_t i = 0, j = 0;
  std::string outcome;  // "identical", "twist", "counterexample"
  std::string detail;
};

struct ConverseReport {
  std::size_t family_size = 0;
  std::size_t pairs = 0;
  std::size_t equal_w = 0;
  std::size_t identical = 0;
  std::size_t twisted = 0;
  std::vector<ConversePair> findings;  // twists and counterexamples
  std::size_t counterexamples() const;
  nlohmann::ordered_json to_json() const;
};

ConverseReport converse_check(const std::vector<std::vector<MulCharacter>>& family, TwistContext& ctx);
// Groups a family of character lists into classes of equal determinant.
std::vector<std::vector<std::vector<MulCharacter>>> partition_by_determinant(
    const std::vector<std::vector<MulCharacter>>& family);
// All multisets of size k drawn from chars (non-decreasing index tuples).
std::vector<std::vector<MulCharacter>> multisets(const std::vector<MulCharacter>& chars, int k);

std::string digest_of(const std::string& text);

}  // namespace epsfact
