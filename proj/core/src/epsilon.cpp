#include "epsfact/epsilon.hpp"

#include <thread>

#include "epsfact/errors.hpp"

namespace epsfact {

namespace {

struct Setup {
  const LocalRing* R;
  int a;
  int n;
  RingElem g;        // unit part of gamma
  RingElem v;        // unit(c0) / g, so psi(u/gamma) = zeta_{p^a}^{Tr(v u)}
  RootOfUnity chi_gamma;
  i64 level;         // assembly level
  i64 pa;
};

Setup prepare(const MulCharacter& chi, const AddCharacter& psi, const GaussOptions& opt) {
  if (chi.ring() != psi.ring()) throw UsageError("gauss_sum: characters live on different rings");
  const LocalRing& R = *chi.ring();
  Setup s{&R, chi.conductor(), psi.conductor(), R.one(), R.one(), {}, 1, 1};
  if (s.a < 1) throw UsageError("gauss_sum: character is unramified");
  if (s.a > R.N() - 1) throw PrecisionError("gauss_sum: precision too small");
  if (opt.gamma_unit) {
    if (opt.gamma_unit->ring_ptr() != chi.ring() || !opt.gamma_unit->is_unit())
      throw UsageError("gauss_sum: gamma unit part must be a unit of the character's ring");
    s.g = *opt.gamma_unit;
  }
  s.v = psi.shift().unit * s.g.inverse();
  s.chi_gamma = chi.eval_root(FieldElem::make(s.a + s.n, s.g));
  s.pa = R.ppow(s.a);
  i64 L = std::lcm(s.pa, s.chi_gamma.den);
  L = std::lcm(L, chi.teich().den);
  for (const auto& w : chi.wild()) L = std::lcm(L, w.den);
  if (L > max_cyclotomic_level())
    throw ResourceError("gauss_sum: assembly level " + std::to_string(L) + " exceeds cap " +
                        std::to_string(max_cyclotomic_level()));
  s.level = L;
  return s;
}

// All units of O/P^a as coefficient vectors with entries in [0, p^a).
template <class F>
void for_each_unit(const LocalRing& R, int a, F&& f) {
  i64 pa = R.ppow(a);
  std::vector<i64> c(R.d(), 0);
  while (true) {
    RingElem u = R.from_coeffs(c);
    if (u.is_unit()) f(u);
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == pa) c[i++] = 0;
    if (i == c.size()) break;
  }
}

CycNum naive_sum(const MulCharacter& chi, const AddCharacter& psi, const Setup& s) {
  MulCharacter inv = chi.inverse();
  RingElem ginv = s.g.inverse();
  CycNum acc;
  for_each_unit(*s.R, s.a, [&](const RingElem& u) {
    FieldElem x = FieldElem::make(-(s.a + s.n), u * ginv);
    acc += inv.eval(x) * psi.eval(x);
  });
  return acc;
}

CycNum histogram_sum(const MulCharacter& chi, const AddCharacter& psi, const Setup& s) {
  MulCharacter inv = chi.inverse();
  RingElem ginv = s.g.inverse();
  std::vector<i64> counts(s.level, 0);
  for_each_unit(*s.R, s.a, [&](const RingElem& u) {
    FieldElem x = FieldElem::make(-(s.a + s.n), u * ginv);
    RootOfUnity r = inv.eval_root(x) * psi.eval_root(x);
    counts[r.num * (s.level / r.den)] += 1;
  });
  return CycNum::from_counts(s.level, std::span<const i64>(counts));
}

CycNum reduced_sum(const MulCharacter& chi, const Setup& s, int threads) {
  const LocalRing& R = *s.R;
  const int d = R.d();
  const int a = s.a;
  const int sh = (a + 1) / 2;  // H = U^sh
  const i64 pa = s.pa;
  const i64 pas = R.ppow(a - sh);
  const i64 L = s.level;
  const i64 hsize = ipow_checked(R.q(), a - sh);

  // psi exponent: Tr(v u) = sum_j u_j Tr(v x^j)
  std::vector<i64> trv(d);
  RingElem x = R.gen(), xj = R.one();
  std::vector<RingElem> xpow;
  for (int j = 0; j < 2 * d; ++j) {
    xpow.push_back(xj);
    xj = xj * x;
  }
  for (int j = 0; j < d; ++j) trv[j] = R.trace(s.v * xpow[j]) % pa;
  // additive layer: Tr(v u x^l) = sum_j u_j Tr(v x^{l+j}) mod p^{a-sh} must equal tau_l
  std::vector<i64> T(d * d);
  std::vector<i64> tau(d);
  for (int l = 0; l < d; ++l) {
    for (int j = 0; j < d; ++j) T[l * d + j] = R.trace(s.v * xpow[l + j]) % pas;
    std::vector<i64> c(d, 0);
    c[0] = 1;
    c[l] += R.ppow(sh);
    RootOfUnity r = chi.eval_unit(R.from_coeffs(c));
    if (pas % r.den) throw InvariantViolation("gauss_sum: additive layer value of unexpected order");
    tau[l] = r.num * (pas / r.den);
  }

  // chi^{-1} exponents at level L
  const i64 te = mod(-chi.teich().num * (L / chi.teich().den), L);
  std::vector<i64> we(d);
  for (int i = 0; i < d; ++i) we[i] = mod(-chi.wild()[i].num * (L / chi.wild()[i].den), L);
  const i64 base = s.chi_gamma.num * (L / s.chi_gamma.den);
  const i64 step_psi = L / pa;

  const i64 ew = R.ppow(sh - 1);  // wild exponents range
  i64 nwild = ipow_checked(ew, d);
  std::vector<std::vector<RingElem>> wpow(d);
  for (int i = 0; i < d; ++i) {
    RingElem acc = R.one();
    for (i64 c = 0; c < ew; ++c) {
      wpow[i].push_back(acc);
      acc = acc * R.gens().wild[i];
    }
  }
  const std::vector<i64> t = R.gens().teich.coeffs();
  const i64 tq = R.gens().teich_order;

  auto work = [&](i64 lo, i64 hi, std::vector<i64>& counts) {
    std::vector<i64> cur(d), nxt(d);
    for (i64 idx = lo; idx < hi; ++idx) {
      // decode wild exponent vector
      i64 rem = idx, wexp = 0;
      RingElem e = R.one();
      for (int i = 0; i < d; ++i) {
        i64 ei = rem % ew;
        rem /= ew;
        if (ei) e = e * wpow[i][ei];
        wexp += ei * we[i];
      }
      wexp %= L;
      cur = e.coeffs();
      i64 cexp = wexp;
      for (i64 k = 0; k < tq; ++k) {
        bool ok = true;
        for (int l = 0; l < d && ok; ++l) {
          unsigned __int128 acc = 0;
          for (int j = 0; j < d; ++j) acc += static_cast<unsigned __int128>(cur[j] % pas) * static_cast<u64>(T[l * d + j]);
          ok = static_cast<i64>(acc % static_cast<u64>(pas)) == tau[l];
        }
        if (ok) {
          unsigned __int128 acc = 0;
          for (int j = 0; j < d; ++j) acc += static_cast<unsigned __int128>(cur[j] % pa) * static_cast<u64>(trv[j]);
          i64 pe = static_cast<i64>(acc % static_cast<u64>(pa));
          counts[(cexp + pe * step_psi + base) % L] += hsize;
        }
        R.mul_raw(cur.data(), t.data(), nxt.data());
        cur.swap(nxt);
        cexp += te;
        if (cexp >= L) cexp -= L;
      }
    }
  };

  threads = std::max(1, std::min<int>(threads, static_cast<int>(nwild)));
  std::vector<std::vector<i64>> parts(threads, std::vector<i64>(L, 0));
  if (threads == 1) {
    work(0, nwild, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (int ti = 0; ti < threads; ++ti) {
      i64 lo = nwild * ti / threads, hi = nwild * (ti + 1) / threads;
      pool.emplace_back([&, lo, hi, ti] { work(lo, hi, parts[ti]); });
    }
    for (auto& th : pool) th.join();
  }
  for (int ti = 1; ti < threads; ++ti)
    for (i64 i = 0; i < L; ++i) parts[0][i] += parts[ti][i];
  return CycNum::from_counts(L, std::span<const i64>(parts[0]));
}

}  // namespace

CycNum gauss_sum(const MulCharacter& chi, const AddCharacter& psi, const GaussOptions& opt) {
  Setup s = prepare(chi, psi, opt);
  GaussKernel k = opt.kernel;
  if (k == GaussKernel::Reduced && s.R->p() == 2) k = GaussKernel::Histogram;
  switch (k) {
    case GaussKernel::Naive: return naive_sum(chi, psi, s);
    case GaussKernel::Histogram: return histogram_sum(chi, psi, s);
    case GaussKernel::Reduced: return reduced_sum(chi, s, opt.threads);
  }
  throw UsageError("gauss_sum: unknown kernel");
}

RootNumber w_char(const MulCharacter& chi, const AddCharacter& psi, const GaussOptions& opt) {
  if (chi.ring() != psi.ring()) throw UsageError("w_char: characters live on different rings");
  const LocalRing& R = *chi.ring();
  if (chi.conductor() == 0) return RootNumber(chi.pi().pow(psi.conductor()).to_cyc(), R.p(), 0);
  return RootNumber(gauss_sum(chi, psi, opt), R.p(), static_cast<i64>(chi.conductor()) * R.d());
}

RootNumber w_unramified_twist(const RootNumber& w, const MulCharacter& omega, int artin, int dim, int n_psi) {
  if (!omega.is_unramified()) throw UsageError("w_unramified_twist: omega is ramified");
  return w * RootNumber(omega.pi().pow(static_cast<i64>(artin) + static_cast<i64>(n_psi) * dim).to_cyc(), w.qbase(), 0);
}

RootNumber lambda_unramified(int d, int n_psi, i64 p) {
  if (d < 1) throw UsageError("lambda_unramified: degree must be positive");
  // product of W(omega, psi) = omega(p)^{n(psi)} over unramified omega of order dividing d
  RootOfUnity r;
  for (int j = 0; j < d; ++j) r = r * RootOfUnity(d, j).pow(n_psi);
  return RootNumber(r.to_cyc(), p, 0);
}

RootNumber lambda_unramified(int d, const AddCharacter& psi) {
  return lambda_unramified(d, psi.conductor(), psi.ring()->p());
}

RootNumber w_induced(const RingPtr& E, const MulCharacter& theta, const AddCharacter& psi, const GaussOptions& opt) {
  if (theta.ring() != E) throw UsageError("w_induced: theta must live on E");
  const RingPtr& F = psi.ring();
  if (F->p() != E->p() || E->d() % F->d()) throw UsageError("w_induced: E is not an unramified extension of psi's field");
  int deg = E->d() / F->d();
  return lambda_unramified(deg, psi) * w_char(theta, psi.lift_to(E), opt);
}

}  // namespace epsfact
