#include <benchmark/benchmark.h>

#include "lamp/reduction.hpp"
#include "lamp/testlab.hpp"
#include "lamp/typing.hpp"

using namespace lamp;

namespace {

const char* kDialogue =
    "cost : String -o N, pay : N -o String, prod : String\n"
    "|- (out x. y (out z. *) pay) (lam a. lam b. a (b prod))"
    " | x (out y. z) (lam c. lam a'. lam b'. a' (b' (cost c))) : bot par String";

Sequent sized(std::size_t nodes) { return gen_derivation({17, nodes, {"A", "B", "C"}}).conclusion; }

void BM_NormalizeDialogue(benchmark::State& state) {
  Term t = joined_terms(parse_program(kDialogue));
  for (auto _ : state) benchmark::DoNotOptimize(normalize(t));
}
BENCHMARK(BM_NormalizeDialogue);

void BM_EnumerateDialogue(benchmark::State& state) {
  Term t = joined_terms(parse_program(kDialogue));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_normal_forms(t, 100'000));
}
BENCHMARK(BM_EnumerateDialogue);

void BM_ReconstructDialogue(benchmark::State& state) {
  Sequent s = parse_program(kDialogue);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(s));
}
BENCHMARK(BM_ReconstructDialogue);

void BM_ReconstructGenerated(benchmark::State& state) {
  Sequent s = sized(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(s));
}
BENCHMARK(BM_ReconstructGenerated)->Arg(8)->Arg(16)->Arg(32);

void BM_NormalizeGenerated(benchmark::State& state) {
  Term t = joined_terms(sized(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(normalize(t));
}
BENCHMARK(BM_NormalizeGenerated)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
