#include <benchmark/benchmark.h>

#include "gosc/families.hpp"
#include "gosc/fock.hpp"
#include "gosc/kernel.hpp"
#include "gosc/moments.hpp"

using namespace gosc;

static void BM_SymmetricSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    MomentOptions opt;
    opt.method = MomentMethod::Quadrature;
    const MomentSequence ms = compute_moments(measure_for(FamilySpec::hermite()), 2 * n + 2, 256, opt);
    for (auto _ : state) benchmark::DoNotOptimize(solve_symmetric_recurrence(ms, n));
}
BENCHMARK(BM_SymmetricSolve)->Arg(12)->Arg(30);

static void BM_QuadratureMoments(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    MomentOptions opt;
    opt.method = MomentMethod::Quadrature;
    const MeasureSpec m = measure_for(FamilySpec::jacobi(0.5, 1.5));
    for (auto _ : state) benchmark::DoNotOptimize(compute_moments(m, k, 256, opt));
}
BENCHMARK(BM_QuadratureMoments)->Arg(26);

static void BM_Hamiltonian(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const RecurrenceCoefficients c = family_coefficients(FamilySpec::legendre(), N);
    for (auto _ : state) benchmark::DoNotOptimize(hamiltonian(c, N, kDistinguishedT));
}
BENCHMARK(BM_Hamiltonian)->Arg(64)->Arg(256);

static void BM_OscillatorAlgebra(benchmark::State& state) {
    const RecurrenceCoefficients c = family_coefficients(FamilySpec::gegenbauer(0.7), 64);
    for (auto _ : state) benchmark::DoNotOptimize(verify_oscillator_algebra(c, 64));
}
BENCHMARK(BM_OscillatorAlgebra);

static void BM_MehlerSum(benchmark::State& state) {
    KernelSpec ks{family_coefficients(FamilySpec::hermite(), 200), {}, 0.6, 200};
    for (auto _ : state) benchmark::DoNotOptimize(poisson_kernel(ks, 1.3, -0.7));
}
BENCHMARK(BM_MehlerSum);

BENCHMARK_MAIN();
