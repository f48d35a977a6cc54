// Serial reference vs OpenMP kernels on the default corpus.

#include <benchmark/benchmark.h>

#include "psi/archetype.hpp"
#include "psi/kernels.hpp"
#include "psi/sensitivity.hpp"

namespace {

const std::vector<psi::CorpusItem>& corpus() {
  static const std::vector<psi::CorpusItem> items = psi::generate_corpus(psi::CorpusSpec::defaults());
  return items;
}

const std::vector<psi::TraversalPolicy> kPolicies{psi::TraversalPolicy::Pointer, psi::TraversalPolicy::Keyboard};

const std::vector<psi::AuditRecord>& records() {
  static const std::vector<psi::AuditRecord> r =
      psi::batch_audit_serial(corpus(), kPolicies, psi::LabelLexicon::builtin());
  return r;
}

void BM_BatchAuditSerial(benchmark::State& state) {
  const auto lexicon = psi::LabelLexicon::builtin();
  for (auto _ : state) benchmark::DoNotOptimize(psi::batch_audit_serial(corpus(), kPolicies, lexicon));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size() * kPolicies.size()));
}

void BM_BatchAuditParallel(benchmark::State& state) {
  const auto lexicon = psi::LabelLexicon::builtin();
  for (auto _ : state) benchmark::DoNotOptimize(psi::batch_audit_parallel(corpus(), kPolicies, lexicon));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size() * kPolicies.size()));
  state.counters["threads"] = psi::kernel_threads();
}

void BM_RankStabilitySerial(benchmark::State& state) {
  const auto sample = psi::sample_weight_profiles(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(psi::rank_stability_serial(records(), sample));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RankStabilityParallel(benchmark::State& state) {
  const auto sample = psi::sample_weight_profiles(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(psi::rank_stability_parallel(records(), sample));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = psi::kernel_threads();
}

}  // namespace

BENCHMARK(BM_BatchAuditSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchAuditParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankStabilitySerial)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankStabilityParallel)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
