// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "ntv/arith.hpp"
#include "ntv/sums.hpp"

using namespace ntv;

namespace {

const CoefficientSource& d3_source() {
    static auto src = CoefficientSource::triple_divisor(1 << 23);
    return *src;
}

WindowConfig cubic(double X) {
    WindowConfig c;
    c.X = X;
    c.k = 3;
    c.mode = WindowMode::smooth;
    return c;
}

void BM_Sk_serial(benchmark::State& st) {
    auto c = cubic(double(st.range(0)));
    const auto& src = d3_source();
    for (auto _ : st) benchmark::DoNotOptimize(eval_Sk_serial(c, src, Weight::von_mangoldt));
}
void BM_Sk_parallel(benchmark::State& st) {
    auto c = cubic(double(st.range(0)));
    omp_set_num_threads(int(st.range(1)));
    const auto& src = d3_source();
    for (auto _ : st) benchmark::DoNotOptimize(eval_Sk(c, src, Weight::von_mangoldt));
}

void BM_quad_serial(benchmark::State& st) {
    WindowConfig c;
    c.X = double(st.range(0));
    c.theta = 1;
    QuadraticForm Q(1, 1, 0);
    const auto& src = d3_source();
    for (auto _ : st) benchmark::DoNotOptimize(eval_S_quad_serial(c, Q, src));
}
void BM_quad_parallel(benchmark::State& st) {
    WindowConfig c;
    c.X = double(st.range(0));
    c.theta = 1;
    QuadraticForm Q(1, 1, 0);
    omp_set_num_threads(int(st.range(1)));
    const auto& src = d3_source();
    for (auto _ : st) benchmark::DoNotOptimize(eval_S_quad(c, Q, src));
}

void BM_d3_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(d3_table(u64(st.range(0))));
}
void BM_d3_parallel(benchmark::State& st) {
    omp_set_num_threads(int(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(d3_table_parallel(u64(st.range(0))));
}

const int kMaxThreads = omp_get_num_procs();

void thread_args(benchmark::internal::Benchmark* b, std::vector<long> sizes) {
    for (long n : sizes)
        for (int t = 1; t <= kMaxThreads; t *= 2) b->Args({n, t});
}

}  // namespace

BENCHMARK(BM_Sk_serial)->Arg(1 << 16)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sk_parallel)->Apply([](auto* b) { thread_args(b, {1 << 16, 1 << 18}); })->Unit(benchmark::kMillisecond);
BENCHMARK(BM_quad_serial)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_quad_parallel)->Apply([](auto* b) { thread_args(b, {512, 1024}); })->Unit(benchmark::kMillisecond);
BENCHMARK(BM_d3_serial)->Arg(1 << 20)->Arg(1 << 22)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_d3_parallel)->Apply([](auto* b) { thread_args(b, {1 << 20, 1 << 22}); })->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
