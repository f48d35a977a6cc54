#pragma once

// Batch kernels. Each has a serial reference and an OpenMP version that
// must produce identical output; the parallel one falls back to the serial
// loop when OpenMP is unavailable.

#include <vector>

#include "psi/archetype.hpp"
#include "psi/lexicon.hpp"
#include "psi/report.hpp"
#include "psi/sensitivity.hpp"
#include "psi/traversal.hpp"

namespace psi {

// One record per (item, policy), item-major.
std::vector<AuditRecord> batch_audit_serial(const std::vector<CorpusItem>& items,
                                            const std::vector<TraversalPolicy>& policies,
                                            const LabelLexicon& lexicon, const Budget& budget = {},
                                            const Timing& timing = {});
std::vector<AuditRecord> batch_audit_parallel(const std::vector<CorpusItem>& items,
                                              const std::vector<TraversalPolicy>& policies,
                                              const LabelLexicon& lexicon, const Budget& budget = {},
                                              const Timing& timing = {});

// Full audit reports for many snapshots, in input order. The first failing
// input (by index) has its exception rethrown.
struct ReportInput {
  std::string id;
  const Snapshot* snapshot = nullptr;
};
std::vector<AuditReport> batch_reports_serial(const std::vector<ReportInput>& inputs, const AuditConfig& config,
                                             const LabelLexicon& lexicon);
std::vector<AuditReport> batch_reports_parallel(const std::vector<ReportInput>& inputs, const AuditConfig& config,
                                               const LabelLexicon& lexicon);

RobustnessReport rank_stability_serial(const std::vector<AuditRecord>& records, const ProfileSample& sample);
RobustnessReport rank_stability_parallel(const std::vector<AuditRecord>& records, const ProfileSample& sample);

// Number of threads the parallel kernels will use (1 without OpenMP).
int kernel_threads();

}  // namespace psi
