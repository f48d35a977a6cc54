#include "psi/scoring.hpp"

#include <algorithm>

#include "psi/detector.hpp"

namespace psi {

const std::vector<std::string>& profile_names() {
  static const std::vector<std::string> names{"default", "accessibility", "delay", "disclosure"};
  return names;
}

WeightProfile named_profile(std::string_view name) {
  if (name == "default") return {1, 1, 1, 1, "default"};
  if (name == "accessibility") return {1, 1, 2, 1, "accessibility"};
  if (name == "delay") return {1, 2, 1, 1, "delay"};
  if (name == "disclosure") return {1, 1, 1, 2, "disclosure"};
  throw std::invalid_argument("unknown weighting profile '" + std::string(name) +
                              "' (valid: default, accessibility, delay, disclosure)");
}

PsiComponents compute_components(const EventTrace& trace, const Snapshot& snapshot, const LabelLexicon& lexicon) {
  PsiComponents c;
  long scrolled = 0;
  for (const auto& e : trace.events) {
    if (e.nodeId && !snapshot.find(*e.nodeId)) {
      throw std::domain_error("trace references node '" + *e.nodeId + "' absent from the snapshot");
    }
    if (e.kind == EventKind::Scroll) scrolled += e.scrollPx;
    if (e.kind == EventKind::FocusLoop) ++c.focusLoops;
    c.timeS += e.cost;
  }
  c.distanceVh = static_cast<double>(scrolled) / effective_viewport_height(snapshot);
  c.hiddenReveals = count_hidden_reveals(trace, snapshot, lexicon);
  c.censored = trace.censored();
  return c;
}

double compute_psi(const PsiComponents& c, const WeightProfile& p) {
  return p.alpha * c.distanceVh + p.beta * c.timeS + p.gamma * c.focusLoops + p.delta * c.hiddenReveals;
}

namespace {

// Interactive, rendered controls on the initial pane at first encounter.
std::vector<const UINode*> initial_controls(const Snapshot& snapshot, const TraversalState& state) {
  std::vector<const UINode*> out;
  for (const auto& n : snapshot.nodes) {
    if (n.paneId == state.activePane && is_interactive(n.role) && is_rendered(n, state, snapshot)) {
      out.push_back(&n);
    }
  }
  return out;
}

}  // namespace

const UINode* find_accept_control(const Snapshot& snapshot, const LabelLexicon& lexicon) {
  const TraversalState state = TraversalState::initial(snapshot, TraversalPolicy::Pointer);
  const UINode* best = nullptr;
  for (const UINode* n : initial_controls(snapshot, state)) {
    if (lexicon.match(n->name()) != ControlClass::Accept) continue;
    if (!best || salience(*n) > salience(*best)) best = n;
  }
  return best;
}

int compute_aai(const Snapshot& snapshot, const LabelLexicon& lexicon) {
  const UINode* accept = find_accept_control(snapshot, lexicon);
  if (!accept) throw SignalError("no-accept-control");
  const TraversalState state = TraversalState::initial(snapshot, TraversalPolicy::Pointer);
  const auto controls = initial_controls(snapshot, state);
  const double acceptSalience = salience(*accept);

  // (i) salience dominance over the strongest meaningful alternative.
  double bestAlternative = 0.0;
  for (const UINode* n : controls) {
    if (is_meaningful_alternative(*n, state, snapshot, lexicon).meaningful) {
      bestAlternative = std::max(bestAlternative, salience(*n));
    }
  }
  int score = 0;
  if (bestAlternative == 0.0 || acceptSalience / bestAlternative > kSalienceDominanceRatio) ++score;

  // (ii) celebratory or progress microcopy.
  const std::string& initial = state.activePane;
  if (std::any_of(snapshot.nodes.begin(), snapshot.nodes.end(),
                  [&](const UINode& n) { return n.paneId == initial && n.celebratory; })) {
    ++score;
  }

  // (iii) accept strictly dominates every other control in the first viewport.
  bool dominant = fits_viewport(accept->bounds, 0, snapshot);
  for (const UINode* n : controls) {
    if (n == accept || !fits_viewport(n->bounds, 0, snapshot)) continue;
    if (salience(*n) >= acceptSalience) dominant = false;
  }
  if (dominant) ++score;
  return score;
}

bool is_one_sentence(std::string_view text) {
  return std::count_if(text.begin(), text.end(), [](char c) { return c == '.' || c == '!' || c == '?'; }) <= 1;
}

int compute_csi(const Snapshot& snapshot, const LabelLexicon& lexicon) {
  int score = 0;
  if (granularity_exposed(snapshot, TraversalPolicy::Pointer, lexicon)) ++score;

  // (ii) local one-sentence rationale next to every visible material toggle.
  const TraversalState state = TraversalState::initial(snapshot, TraversalPolicy::Pointer);
  bool anyToggle = false;
  bool anyRationale = false;
  bool allLocal = true;
  for (const auto& t : snapshot.nodes) {
    if (t.paneId != state.activePane || !is_toggle_role(t.role) || !is_rendered(t, state, snapshot) ||
        !fits_viewport(t.bounds, 0, snapshot)) {
      continue;
    }
    anyToggle = true;
    bool local = false;
    for (const auto& r : snapshot.nodes) {
      if (r.rationaleFor != t.id) continue;
      anyRationale = true;
      if (edge_distance(r.bounds, t.bounds) <= kRationaleMaxDistancePx && is_one_sentence(r.name())) local = true;
    }
    allLocal = allLocal && local;
  }
  if (anyToggle && anyRationale && allLocal) ++score;

  if (detect_reversibility(snapshot, lexicon)) ++score;
  return score;
}

CompanionSignals companion_signals(const Snapshot& snapshot, const EventTrace& trace,
                                   const PsiComponents& components, const LabelLexicon& lexicon) {
  CompanionSignals s;
  s.timeToPrimaryS = components.timeS;
  s.distanceToChoiceVh = components.distanceVh;
  s.granularityExposed = granularity_exposed(snapshot, trace.policy, lexicon);
  s.reversibility = detect_reversibility(snapshot, lexicon);
  s.aai = compute_aai(snapshot, lexicon);
  s.csi = compute_csi(snapshot, lexicon);
  s.div = s.aai - s.csi;
  return s;
}

}  // namespace psi
