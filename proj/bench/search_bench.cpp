#include <benchmark/benchmark.h>

#include <omp.h>

#include "expfield/document.hpp"
#include "expfield/schanuel.hpp"
#include "expfield/search.hpp"

using namespace expfield;

namespace {

// A fresh presentation each time, so td caches start empty.
PresentationPtr load(const std::string& file, const std::string& field) {
  return Document::load(std::string(EXPFIELD_CORPUS_DIR) + "/" + file).presentation(field);
}

void strength(benchmark::State& state, const char* file, const char* field, bool parallel) {
  const long bound = state.range(0);
  for (auto _ : state) {
    state.PauseTiming();
    const auto p = load(file, field);
    state.ResumeTiming();
    const auto r = is_strong(p, p->base_subfield(), full_subfield(*p), {bound, parallel});
    benchmark::DoNotOptimize(r.strong);
    state.counters["candidates"] = static_cast<double>(r.candidates);
  }
  state.counters["threads"] = parallel ? omp_get_max_threads() : 1;
}

void min_delta(benchmark::State& state, const char* file, const char* field, bool parallel) {
  const long bound = state.range(0);
  for (auto _ : state) {
    state.PauseTiming();
    const auto p = load(file, field);
    state.ResumeTiming();
    const auto r = dim_via_min_delta(p, {}, {bound, parallel});
    benchmark::DoNotOptimize(r.min_delta);
  }
}

void subspaces(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bounded_subspaces(n, 2, 0, n).size());
}

// Pure scheduling overhead: a cheap predicate that first holds near the end.
void matching(benchmark::State& state, bool parallel) {
  const auto count = static_cast<std::size_t>(state.range(0));
  auto pred = [count](std::size_t i) { return i * 10 >= count * 9; };
  for (auto _ : state) benchmark::DoNotOptimize(expfield::first_match(count, parallel, pred));
}

}  // namespace

BENCHMARK_CAPTURE(strength, two_step_serial, "two_step.efd", "ts1", false)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(strength, two_step_parallel, "two_step.efd", "ts1", true)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(strength, tower_serial, "tower.efd", "tw2", false)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(strength, tower_parallel, "tower.efd", "tw2", true)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(min_delta, tower_serial, "tower.efd", "tw2", false)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(min_delta, tower_parallel, "tower.efd", "tw2", true)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(subspaces)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(matching, serial, false)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK_CAPTURE(matching, parallel, true)->Arg(1 << 12)->Arg(1 << 16);

BENCHMARK_MAIN();
