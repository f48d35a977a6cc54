#include "psi/detector.hpp"

#include <algorithm>
#include <stdexcept>

namespace psi {

ControlClass classify_control(const UINode& node, const LabelLexicon& lexicon, const Snapshot* snapshot,
                              const SecondStageClassifier* second) {
  if (!is_interactive(node.role)) {
    throw std::domain_error("cannot classify non-interactive node '" + node.id + "'");
  }
  ControlClass c = lexicon.match(node.name());
  if (c == ControlClass::Unknown && second && snapshot) {
    if (auto refined = second->classify(node, *snapshot)) c = *refined;
  }
  return c;
}

std::vector<const UINode*> exposed_by(const UINode& node, const Snapshot& snapshot) {
  std::vector<const UINode*> out;
  for (const auto& e : node.effects) {
    if (e.kind == EffectKind::Reveal) {
      for (const auto& n : snapshot.nodes) {
        if (snapshot.in_subtree(n.id, e.target)) out.push_back(&n);
      }
    } else if (e.kind == EffectKind::Navigate) {
      TraversalState landing;
      landing.activePane = e.target;
      for (const auto& n : snapshot.nodes) {
        if (n.paneId == e.target && is_rendered(n, landing, snapshot)) out.push_back(&n);
      }
    }
  }
  return out;
}

bool has_substantive_advance(const UINode& node, const Snapshot& snapshot, const LabelLexicon& lexicon) {
  for (const UINode* n : exposed_by(node, snapshot)) {
    if (n == &node || !is_interactive(n->role)) continue;
    if (is_toggle_role(n->role)) return true;
    const ControlClass c = lexicon.match(n->name());
    if (c == ControlClass::Reject || c == ControlClass::Save) return true;
  }
  return false;
}

DetectionResult is_meaningful_alternative(const UINode& node, const TraversalState& state,
                                          const Snapshot& snapshot, const LabelLexicon& lexicon) {
  DetectionResult r;
  r.nodeId = node.id;
  if (!is_interactive(node.role)) {
    r.reasons = {"non-interactive"};
    return r;
  }
  r.controlClass = classify_control(node, lexicon);
  if (node.paneId != state.activePane) {
    r.reasons = {"inactive-pane"};
    return r;
  }

  std::vector<std::string> failed;
  if (node.name().empty()) failed.push_back("unnamed");
  if (lexicon.is_euphemism(node.name())) failed.push_back("euphemism");
  if (!is_non_accept_class(r.controlClass)) failed.push_back("not-non-accept");
  // A disclosure only reveals; whatever it reveals is the alternative.
  if (node.role == Role::Expander) failed.push_back("disclosure-only");

  const bool rendered = is_rendered(node, state, snapshot);
  if (!rendered) failed.push_back("occluded");
  if (!is_enabled(node, state)) failed.push_back("disabled");
  if (rendered && !fits_viewport(node.bounds, state.scrollOffset, snapshot)) failed.push_back("offscreen");

  if (state.policy == TraversalPolicy::Keyboard && rendered) {
    const auto ring = focus_ring(snapshot, state);
    if (!travel_focus(ring, state.focusNode, node.id).reachable) failed.push_back("not-focusable");
  }

  const bool advances = r.controlClass == ControlClass::Reject || r.controlClass == ControlClass::Save ||
                        has_substantive_advance(node, snapshot, lexicon);
  if (!advances) failed.push_back("no-substantive-advance");

  if (!failed.empty()) {
    r.reasons = std::move(failed);
    return r;
  }
  r.meaningful = true;
  r.reasons = {"class:" + std::string(to_string(r.controlClass)), "visible", "actionable", "advances"};
  return r;
}

bool granularity_exposed(const Snapshot& snapshot, TraversalPolicy policy, const LabelLexicon& lexicon) {
  const TraversalState state = TraversalState::initial(snapshot, policy);
  return std::any_of(snapshot.nodes.begin(), snapshot.nodes.end(), [&](const UINode& n) {
    return n.paneId == state.activePane && is_interactive(n.role) &&
           is_meaningful_alternative(n, state, snapshot, lexicon).meaningful;
  });
}

bool detect_reversibility(const Snapshot& snapshot, const LabelLexicon& lexicon) {
  for (const auto& n : snapshot.nodes) {
    if (!is_interactive(n.role) || snapshot.in_subtree(n.id, snapshot.surface.rootNodeId)) continue;
    TraversalState state;
    state.activePane = n.paneId;
    if (!is_rendered(n, state, snapshot) || !n.enabled) continue;
    if (classify_control(n, lexicon) == ControlClass::Reversibility) return true;
  }
  return false;
}

}  // namespace psi
