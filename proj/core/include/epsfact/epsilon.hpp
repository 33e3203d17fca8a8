#pragma once

#include <optional>

#include "epsfact/characters.hpp"
#include "epsfact/cyclotomic.hpp"
#include "epsfact/localring.hpp"

namespace epsfact {

enum class GaussKernel {
  Naive,      // term-by-term cyclotomic sum
  Histogram,  // exponent histogram over all units mod P^a
  Reduced,    // histogram over U / U^{ceil(a/2)} with the additive layer summed in closed form
};

struct GaussOptions {
  GaussKernel kernel = GaussKernel::Reduced;
  int threads = 1;
  // unit part of gamma; default 1
  std::optional<RingElem> gamma_unit;
};

// sum over u in (O/P^a)^x of chi^{-1}(u/gamma) psi(u/gamma), val(gamma) = a(chi) + n(psi).
// Requires a(chi) >= 1.
CycNum gauss_sum(const MulCharacter& chi, const AddCharacter& psi, const GaussOptions& opt = {});

RootNumber w_char(const MulCharacter& chi, const AddCharacter& psi, const GaussOptions& opt = {});
RootNumber w_unramified_twist(const RootNumber& w, const MulCharacter& omega, int artin, int dim, int n_psi);
RootNumber lambda_unramified(int d, int n_psi, i64 p = 1);
RootNumber lambda_unramified(int d, const AddCharacter& psi);
// W(Ind_{E/F} theta, psi) for E/F unramified, psi on F.
RootNumber w_induced(const RingPtr& E, const MulCharacter& theta, const AddCharacter& psi, const GaussOptions& opt = {});

}  // namespace epsfact
