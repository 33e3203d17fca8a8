#include <benchmark/benchmark.h>

#include "epsfact/characters.hpp"
#include "epsfact/epsilon.hpp"
#include "epsfact/localring.hpp"

using namespace epsfact;

namespace {

// Q_5 character of conductor a with a primitive wild image.
MulCharacter q5_char(int a) {
  RingPtr R = ring_make(5, 1, a + 1);
  i64 w = a >= 2 ? R->ppow(a - 1) : 1;
  return MulCharacter(R, {}, RootOfUnity(4, 1), {RootOfUnity(w, w > 1 ? 1 : 0)});
}

void gauss_kernel(benchmark::State& st, GaussKernel k) {
  MulCharacter chi = q5_char(static_cast<int>(st.range(0)));
  AddCharacter psi = AddCharacter::standard(chi.ring());
  GaussOptions o;
  o.kernel = k;
  for (auto _ : st) benchmark::DoNotOptimize(gauss_sum(chi, psi, o));
}

void BM_GaussNaive(benchmark::State& st) { gauss_kernel(st, GaussKernel::Naive); }
void BM_GaussHistogram(benchmark::State& st) { gauss_kernel(st, GaussKernel::Histogram); }
void BM_GaussReduced(benchmark::State& st) { gauss_kernel(st, GaussKernel::Reduced); }
BENCHMARK(BM_GaussNaive)->Arg(2)->Arg(3);
BENCHMARK(BM_GaussHistogram)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_GaussReduced)->Arg(2)->Arg(3)->Arg(4)->Arg(5);

void BM_GaussDegree2(benchmark::State& st) {
  RingPtr E = ring_make(5, 2, 5);
  std::vector<RootOfUnity> w(E->gens().wild.size());
  w[0] = RootOfUnity(25, 1);
  MulCharacter chi(E, {}, RootOfUnity(24, 1), w);
  AddCharacter psi = AddCharacter::standard(E);
  GaussOptions o;
  o.kernel = st.range(0) ? GaussKernel::Reduced : GaussKernel::Histogram;
  for (auto _ : st) benchmark::DoNotOptimize(gauss_sum(chi, psi, o));
}
BENCHMARK(BM_GaussDegree2)->Arg(0)->Arg(1);

void BM_CycMul(benchmark::State& st) {
  i64 n = st.range(0);
  std::vector<i64> a(n), b(n);
  for (i64 i = 0; i < n; ++i) a[i] = (i * 7) % 13 - 6, b[i] = (i * 5) % 11 - 5;
  CycNum x = CycNum::from_counts(n, a), y = CycNum::from_counts(n, b);
  for (auto _ : st) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_CycMul)->Arg(25)->Arg(100)->Arg(625);

void BM_UnitDlog(benchmark::State& st) {
  RingPtr R = ring_make(7, static_cast<int>(st.range(0)), 4);
  std::vector<i64> c(R->d(), 0);
  c[0] = 3;
  if (R->d() > 1) c[1] = 2;
  RingElem u = R->from_coeffs(c);
  for (auto _ : st) {
    benchmark::DoNotOptimize(R->unit_dlog(u));
    u = u * R->gen() + R->one();
    if (!u.is_unit()) u = u + R->one();
  }
}
BENCHMARK(BM_UnitDlog)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
