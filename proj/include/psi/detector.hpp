#pragma once

// Rule-based detection of meaningful non-accepting alternatives.

#include <optional>
#include <string>
#include <vector>

#include "psi/interaction.hpp"
#include "psi/lexicon.hpp"
#include "psi/snapshot.hpp"

namespace psi {

// Optional second stage consulted only for controls the rules leave as
// UNKNOWN. Nothing ships behind it.
class SecondStageClassifier {
 public:
  virtual ~SecondStageClassifier() = default;
  virtual std::optional<ControlClass> classify(const UINode& node, const Snapshot& snapshot) const = 0;
};

struct DetectionResult {
  std::string nodeId;
  ControlClass controlClass = ControlClass::Unknown;
  bool meaningful = false;
  // Rule identifiers: every failed rule when not meaningful, otherwise the
  // satisfied criteria.
  std::vector<std::string> reasons;
};

// Throws std::domain_error for non-interactive nodes.
ControlClass classify_control(const UINode& node, const LabelLexicon& lexicon,
                              const Snapshot* snapshot = nullptr,
                              const SecondStageClassifier* second = nullptr);

// Activating `node` advances refusal or revision: its reveal or navigate
// effects expose at least one REJECT/SAVE control or a toggle.
bool has_substantive_advance(const UINode& node, const Snapshot& snapshot, const LabelLexicon& lexicon);

DetectionResult is_meaningful_alternative(const UINode& node, const TraversalState& state,
                                          const Snapshot& snapshot, const LabelLexicon& lexicon);

bool granularity_exposed(const Snapshot& snapshot, TraversalPolicy policy, const LabelLexicon& lexicon);

// Persistent (outside the dismissible surface), rendered, enabled control
// classified REVERSIBILITY.
bool detect_reversibility(const Snapshot& snapshot, const LabelLexicon& lexicon);

// Nodes made newly reachable by one effect list: revealed subtrees and the
// contents of navigated panes.
std::vector<const UINode*> exposed_by(const UINode& node, const Snapshot& snapshot);

}  // namespace psi
