#pragma once

// PSI components, weighting profiles and companion signals.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "psi/lexicon.hpp"
#include "psi/snapshot.hpp"
#include "psi/traversal.hpp"

namespace psi {

struct PsiComponents {
  double distanceVh = 0.0;  // D / effective viewport height
  double timeS = 0.0;       // T
  int focusLoops = 0;       // F
  int hiddenReveals = 0;    // H
  bool censored = false;    // budget exhausted; values are lower bounds

  bool operator==(const PsiComponents&) const = default;
};

struct WeightProfile {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double delta = 1.0;
  std::string name = "default";
};

// default (1,1,1,1), accessibility (1,1,2,1), delay (1,2,1,1),
// disclosure (1,1,1,2). Throws std::invalid_argument listing valid names.
WeightProfile named_profile(std::string_view name);
const std::vector<std::string>& profile_names();

PsiComponents compute_components(const EventTrace& trace, const Snapshot& snapshot, const LabelLexicon& lexicon);
double compute_psi(const PsiComponents& c, const WeightProfile& profile);

// Raised when a companion signal cannot be computed, e.g. "no-accept-control".
class SignalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The highest-salience rendered ACCEPT control on the initial pane.
const UINode* find_accept_control(const Snapshot& snapshot, const LabelLexicon& lexicon);

// Assurance cues, 0-3. Throws SignalError("no-accept-control").
int compute_aai(const Snapshot& snapshot, const LabelLexicon& lexicon);
// Comprehension affordances, 0-3.
int compute_csi(const Snapshot& snapshot, const LabelLexicon& lexicon);

// Rationale text counts as one sentence when it has at most one terminal
// punctuation mark.
bool is_one_sentence(std::string_view text);
constexpr double kRationaleMaxDistancePx = 120.0;
constexpr double kSalienceDominanceRatio = 1.5;

struct CompanionSignals {
  double timeToPrimaryS = 0.0;
  double distanceToChoiceVh = 0.0;
  bool granularityExposed = false;
  bool reversibility = false;
  int aai = 0;
  int csi = 0;
  int div = 0;  // aai - csi
};

CompanionSignals companion_signals(const Snapshot& snapshot, const EventTrace& trace,
                                   const PsiComponents& components, const LabelLexicon& lexicon);

}  // namespace psi
