#include <benchmark/benchmark.h>

#include "ivpfactor/parse.hpp"
#include "ivpfactor/realization.hpp"

using namespace ivp;

namespace {

const FactoredPolynomial& running_example() {
    static FactoredPolynomial fp = [] {
        PadicContext p3{Int(3)};
        return parse_factored_poly("(x^2+9)*(x-5)^3*(x-1)*(x-7)", p3).fp;
    }();
    return fp;
}

void FixedDivisorValuation(benchmark::State& state) {
    Polynomial f = running_example().expand();
    PadicContext p3{Int(3)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(fixed_divisor_valuation(f, p3));
    }
}
BENCHMARK(FixedDivisorValuation);

void WitnessClasses(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(witness_classes(running_example()).classes.size());
    }
}
BENCHMARK(WitnessClasses);

void FullAnalysis(benchmark::State& state) {
    for (auto _ : state) {
        Analysis a = analyze(running_example());
        benchmark::DoNotOptimize(a.verdict.fdk_trivial);
    }
}
BENCHMARK(FullAnalysis);

void GenerateFamily(benchmark::State& state) {
    long r = state.range(0);
    long n = state.range(1);
    for (auto _ : state) {
        GeneratedFamily fam = generate_and_verify(r, n, {});
        benchmark::DoNotOptimize(fam.analysis.n);
    }
}
BENCHMARK(GenerateFamily)->Args({2, 2})->Args({3, 2})->Args({2, 3});

void OracleTightness22(benchmark::State& state) {
    GeneratedFamily fam = generate_and_verify(2, 2, {});
    OracleOptions opts;
    opts.mode = state.range(0) == 0 ? OracleMode::kernel_pruned : OracleMode::full;
    opts.j_max = 8;
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_nonunique_power(fam.fp, opts)->s);
    }
}
BENCHMARK(OracleTightness22)->Arg(0)->Arg(1);

void KernelEnumeration(benchmark::State& state) {
    FdpMatrix a;
    a.num_cols = 4;
    a.rows = {{1, 2, 0, 0}, {0, 0, 3, 1}};
    a.row_labels = {Int(0), Int(1)};
    FdpMatrix reduced = reduce_fdp_matrix(a);
    Int radius(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_integer_kernel(reduced, radius).size());
    }
}
BENCHMARK(KernelEnumeration)->Arg(3)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
