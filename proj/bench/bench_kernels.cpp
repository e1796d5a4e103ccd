// Serial reference vs OpenMP for each kernel.  Arg 0 = serial, 1 = OpenMP.
#include <random>

#include <benchmark/benchmark.h>

#include "psolv/cosets.hpp"
#include "psolv/finquot.hpp"
#include "psolv/fp_matrix.hpp"
#include "psolv/kernels.hpp"
#include "psolv/series.hpp"
#include "support.hpp"

using namespace psolv;

namespace {

Exec exec_of(benchmark::State const& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& s) { s.SetLabel(s.range(0) ? "omp" : "serial"); }

FpMatrix random_matrix(std::uint32_t p, std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Residue> d(0, p - 1);
  FpMatrix m(p, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, d(rng));
  return m;
}

void BM_rref_f2(benchmark::State& s) {
  auto m = random_matrix(2, 1024, 1024, 1);
  for (auto _ : s) benchmark::DoNotOptimize(rref(m, exec_of(s)).rank);
  label(s);
}

void BM_rref_f3(benchmark::State& s) {
  auto m = random_matrix(3, 384, 384, 2);
  for (auto _ : s) benchmark::DoNotOptimize(rref(m, exec_of(s)).rank);
  label(s);
}

void BM_extend_action(benchmark::State& s) {
  auto q = derived_stage(fixture("free2"), 2, 2).quotient;
  std::vector<kernels::Perm> old = q.generators();
  std::size_t const d = 9;
  std::mt19937_64 rng(3);
  std::vector<std::vector<Residue>> shift(old.front().size() * old.size(), std::vector<Residue>(d));
  for (auto& v : shift)
    for (auto& x : v) x = rng() & 1;
  kernels::ExtensionInput in{2, d, &old, &shift};
  for (auto _ : s) benchmark::DoNotOptimize(kernels::extend_action(in, exec_of(s)));
  label(s);
}

void BM_reidemeister_schreier(benchmark::State& s) {
  // Klein bottle group, 4096 cosets.
  auto g = fixture("klein");
  CosetTable t(g, derived_stage(g, 2, 6).quotient.generators());
  auto tr = schreier_transversal(t);
  for (auto _ : s) benchmark::DoNotOptimize(reidemeister_schreier(g, t, tr, exec_of(s)));
  label(s);
}

void BM_bar_boundary(benchmark::State& s) {
  // order 64, so 63^3 columns in d_3
  auto g = FiniteGroup::from_quotient(derived_stage(fixture("klein"), 2, 3).quotient);
  PrimeField f(2);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::bar_boundary(g.table(), g.order(), 3, f, exec_of(s)));
  label(s);
}

void BM_verbal_values(benchmark::State& s) {
  auto g = FiniteGroup::from_quotient(derived_stage(fixture("klein"), 2, 4).quotient);
  std::vector<std::uint32_t> all(g.order());
  for (std::uint32_t i = 0; i < g.order(); ++i) all[i] = i;
  for (auto _ : s)
    benchmark::DoNotOptimize(kernels::verbal_values(g.table(), g.inverses(), g.order(), all, all, 2, exec_of(s)));
  label(s);
}

}  // namespace

BENCHMARK(BM_rref_f2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_f3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_extend_action)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_reidemeister_schreier)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bar_boundary)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verbal_values)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
