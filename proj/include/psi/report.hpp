#pragma once

// Audit configuration, per-snapshot audit reports with evidence frames, and
// the corpus summary table. Canonical JSON output is byte-stable: keys are
// sorted, numbers are printed in shortest round-trip form, and nothing
// time-dependent is recorded.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "psi/detector.hpp"
#include "psi/lexicon.hpp"
#include "psi/scoring.hpp"
#include "psi/sensitivity.hpp"
#include "psi/snapshot.hpp"
#include "psi/stats.hpp"
#include "psi/traversal.hpp"

namespace psi {

inline constexpr int kReportSchemaVersion = 1;

struct AuditConfig {
  std::vector<TraversalPolicy> policies{TraversalPolicy::Pointer};
  std::vector<WeightProfile> profiles{WeightProfile{}};
  // Expected capture breakpoint; a snapshot captured elsewhere is rejected.
  std::optional<std::string> breakpoint;
  Budget budget;
  Timing timing;
  std::string lexiconSource = "builtin";
  std::optional<std::uint64_t> seed;
};

// Throws std::invalid_argument for empty policy/profile lists, duplicate
// profile names, negative weights, non-positive budgets or timings, or an
// unknown breakpoint name.
void validate_config(const AuditConfig& config);

// "pointer", "keyboard" or "both".
std::vector<TraversalPolicy> parse_policy_list(const std::string& text);
// Comma-separated named profiles.
std::vector<WeightProfile> parse_profile_list(const std::string& text);

struct EvidenceFrame {
  std::string nodeId;
  std::string paneId;
  Rect bounds;
  int scrollOffset = 0;
  int stepIndex = 0;
  std::vector<std::string> reasons;
};

// State just before the trace's terminal activation.
TraversalState state_before_terminal(const EventTrace& trace, const Snapshot& snapshot);

// The frame at which the terminal alternative is visible and actionable.
// Empty for censored traces. Throws std::logic_error if the detector does not
// confirm the terminal node at the replayed state.
std::optional<EvidenceFrame> build_evidence(const EventTrace& trace, const Snapshot& snapshot,
                                            const LabelLexicon& lexicon);

struct PolicyResult {
  TraversalPolicy policy = TraversalPolicy::Pointer;
  EventTrace trace;
  PsiComponents components;
  std::vector<std::pair<std::string, double>> psiByProfile;  // config order
  std::optional<CompanionSignals> signals;
  std::string signalError;  // set when signals are empty
  std::optional<EvidenceFrame> evidence;
  std::string error;  // e.g. "state-space exceeded"; the trace is then censored
};

struct AuditReport {
  std::string snapshotId;
  std::string source;      // snapshot meta.source
  std::string breakpoint;  // capture breakpoint or viewport name
  Viewport viewport;
  AuditConfig config;
  std::vector<std::string> snapshotFlags;
  std::vector<PolicyResult> results;

  bool any_censored() const;
};

// Steps 1-5 for every configured policy. Graph-size overruns are recorded as
// censored results rather than thrown.
AuditReport run_audit(const Snapshot& snapshot, const std::string& snapshotId, const AuditConfig& config,
                      const LabelLexicon& lexicon);

nlohmann::json components_to_json(const PsiComponents& c);
PsiComponents components_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const AuditConfig& c);
nlohmann::json report_to_json(const AuditReport& r);
// Canonical text: two-space indented JSON plus a trailing newline.
std::string canonical_json(const nlohmann::json& j);

// Human-readable: one event strip per policy, components, PSI per profile
// and the evidence frame.
std::string render_report_text(const AuditReport& r);

// Vector overlay for reviewers: the evidence pane's nodes, the viewport at
// the qualifying scroll offset, and the terminal control highlighted.
std::string render_evidence_svg(const Snapshot& snapshot, const PolicyResult& result);

// Records (one per policy) from a report document. The archetype comes from
// a snapshot source of the form "archetype:<KIND>".
std::vector<AuditRecord> records_from_report(const nlohmann::json& report);

struct ComponentSummary {
  MedianIqr distanceVh;
  MedianIqr timeS;
  MedianIqr focusLoops;
  MedianIqr hiddenReveals;
  std::vector<std::pair<std::string, MedianIqr>> psi;  // per profile
};

struct SummaryRow {
  std::string group;  // "desktop/pointer" or an archetype name
  int n = 0;
  int censored = 0;
  ComponentSummary summary;
};

struct CorpusSummary {
  std::vector<std::string> profiles;
  std::vector<SummaryRow> conditions;  // breakpoint x policy, sorted
  std::vector<SummaryRow> archetypes;  // records with known archetype, sorted
  int recordCount = 0;
};

// Order-independent. Throws std::invalid_argument on no records.
CorpusSummary summarize_records(const std::vector<AuditRecord>& records, const std::vector<WeightProfile>& profiles);
nlohmann::json summary_to_json(const CorpusSummary& s);
std::string render_summary_text(const CorpusSummary& s);

nlohmann::json robustness_to_json(const RobustnessReport& r);

}  // namespace psi
