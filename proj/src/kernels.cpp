#include "psi/kernels.hpp"

#include <exception>

#include "psi/scoring.hpp"

#if defined(PSI_HAVE_OPENMP)
#include <omp.h>
#endif

namespace psi {

namespace {

AuditRecord audit_one(const CorpusItem& item, TraversalPolicy policy, const LabelLexicon& lexicon,
                      const Budget& budget, const Timing& timing) {
  AuditRecord r;
  r.id = item.id;
  r.kind = item.kind;
  r.breakpoint = item.params.breakpoint;
  r.policy = policy;
  const EventTrace trace = least_effort_traverse(item.snapshot, policy, lexicon, budget, timing);
  r.components = compute_components(trace, item.snapshot, lexicon);
  return r;
}

RobustnessReport empty_report(const ProfileSample& sample) {
  RobustnessReport report;
  report.sampleCount = static_cast<int>(sample.profiles.size());
  report.seed = sample.seed;
  report.constrained = sample.constrained;
  report.concentration = sample.concentration;
  for (Claim c : all_claims()) report.claims.push_back({c, false, 0, 0});
  return report;
}

// Folds per-profile outcomes in profile order, so the result is the same
// however the outcomes were computed.
RobustnessReport fold(const ProfileSample& sample, const std::vector<std::vector<std::optional<bool>>>& outcomes) {
  RobustnessReport report = empty_report(sample);
  for (const auto& perProfile : outcomes) {
    for (std::size_t c = 0; c < perProfile.size(); ++c) {
      if (!perProfile[c]) continue;
      auto& s = report.claims[c];
      ++s.evaluated;
      if (*perProfile[c]) ++s.supporting;
    }
  }
  for (auto& s : report.claims) s.evaluable = s.evaluated > 0;
  return report;
}

void rethrow_first(const std::vector<std::exception_ptr>& failures) {
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

}  // namespace

int kernel_threads() {
#if defined(PSI_HAVE_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<AuditRecord> batch_audit_serial(const std::vector<CorpusItem>& items,
                                            const std::vector<TraversalPolicy>& policies,
                                            const LabelLexicon& lexicon, const Budget& budget, const Timing& timing) {
  std::vector<AuditRecord> out;
  out.reserve(items.size() * policies.size());
  for (const auto& item : items) {
    for (TraversalPolicy p : policies) out.push_back(audit_one(item, p, lexicon, budget, timing));
  }
  return out;
}

std::vector<AuditRecord> batch_audit_parallel(const std::vector<CorpusItem>& items,
                                              const std::vector<TraversalPolicy>& policies,
                                              const LabelLexicon& lexicon, const Budget& budget,
                                              const Timing& timing) {
  const auto total = static_cast<std::int64_t>(items.size() * policies.size());
  std::vector<AuditRecord> out(static_cast<std::size_t>(total));
#if defined(PSI_HAVE_OPENMP)
  // Exceptions cannot cross the parallel region; keep one slot per task and
  // rethrow the lowest-index failure, as the serial loop would.
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < total; ++i) {
    try {
      const auto& item = items[static_cast<std::size_t>(i) / policies.size()];
      out[static_cast<std::size_t>(i)] =
          audit_one(item, policies[static_cast<std::size_t>(i) % policies.size()], lexicon, budget, timing);
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  rethrow_first(failures);
  return out;
#else
  return batch_audit_serial(items, policies, lexicon, budget, timing);
#endif
}

std::vector<AuditReport> batch_reports_serial(const std::vector<ReportInput>& inputs, const AuditConfig& config,
                                             const LabelLexicon& lexicon) {
  std::vector<AuditReport> out;
  out.reserve(inputs.size());
  for (const auto& in : inputs) out.push_back(run_audit(*in.snapshot, in.id, config, lexicon));
  return out;
}

std::vector<AuditReport> batch_reports_parallel(const std::vector<ReportInput>& inputs, const AuditConfig& config,
                                               const LabelLexicon& lexicon) {
#if defined(PSI_HAVE_OPENMP)
  const auto n = static_cast<std::int64_t>(inputs.size());
  std::vector<AuditReport> out(inputs.size());
  std::vector<std::exception_ptr> failures(inputs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& in = inputs[static_cast<std::size_t>(i)];
    try {
      out[static_cast<std::size_t>(i)] = run_audit(*in.snapshot, in.id, config, lexicon);
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  rethrow_first(failures);
  return out;
#else
  return batch_reports_serial(inputs, config, lexicon);
#endif
}

RobustnessReport rank_stability_serial(const std::vector<AuditRecord>& records, const ProfileSample& sample) {
  std::vector<std::vector<std::optional<bool>>> outcomes;
  outcomes.reserve(sample.profiles.size());
  for (const auto& p : sample.profiles) outcomes.push_back(evaluate_claims(records, p));
  return fold(sample, outcomes);
}

RobustnessReport rank_stability_parallel(const std::vector<AuditRecord>& records, const ProfileSample& sample) {
#if defined(PSI_HAVE_OPENMP)
  const auto n = static_cast<std::int64_t>(sample.profiles.size());
  std::vector<std::vector<std::optional<bool>>> outcomes(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    outcomes[static_cast<std::size_t>(i)] = evaluate_claims(records, sample.profiles[static_cast<std::size_t>(i)]);
  }
  return fold(sample, outcomes);
#else
  return rank_stability_serial(records, sample);
#endif
}

}  // namespace psi
