#include "psi/traversal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <queue>
#include <stdexcept>

namespace psi {

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Scroll: return "SCROLL";
    case EventKind::Expand: return "EXPAND";
    case EventKind::Toggle: return "TOGGLE";
    case EventKind::FocusLoop: return "FOCUS_LOOP";
    case EventKind::Action: return "ACTION";
  }
  return "ACTION";
}

std::string_view to_string(Terminal t) {
  return t == Terminal::AlternativeReached ? "ALTERNATIVE_REACHED" : "BUDGET_EXHAUSTED";
}

std::string render_event_strip(const EventTrace& trace) {
  std::string out;
  for (const auto& e : trace.events) {
    if (!out.empty()) out += " -> ";
    out += "EV_";
    out += to_string(e.kind);
  }
  if (trace.censored()) out += out.empty() ? "[BUDGET_EXHAUSTED]" : " [BUDGET_EXHAUSTED]";
  return out;
}

std::vector<const GraphEdge*> InteractionGraph::out_edges(std::size_t state) const {
  std::vector<const GraphEdge*> out;
  for (const auto& e : edges) {
    if (e.from == state) out.push_back(&e);
  }
  return out;
}

double transition_cost(const UINode& node, const Budget& budget, const Timing& timing) {
  double gate = 0.0;
  if (node.animationMs > 0) {
    gate = node.animationMs / 1000.0;
  } else if (node.gated && (node.has_effect(EffectKind::Reveal) || node.has_effect(EffectKind::Navigate))) {
    gate = budget.waitBudgetMs / 1000.0;
  }
  return gate + timing.handlingS;
}

double scroll_cost(int scrollPx, const Snapshot& snapshot, const Timing& timing) {
  return std::abs(scrollPx) * timing.scrollSecondsPerViewport / effective_viewport_height(snapshot);
}

std::optional<int> scroll_into_view(const Rect& bounds, int currentOffset, const Snapshot& snapshot) {
  const int evh = effective_viewport_height(snapshot);
  int offset = currentOffset;
  if (bounds.y < offset) {
    offset = bounds.y;
  } else if (bounds.bottom() > offset + evh) {
    offset = bounds.bottom() - evh;
  }
  offset = std::clamp(offset, 0, max_scroll_offset(snapshot));
  if (!fits_viewport(bounds, offset, snapshot)) return std::nullopt;
  return offset;
}

TraversalState apply_effects(const TraversalState& state, const UINode& node) {
  TraversalState next = state;
  bool navigated = false;
  for (const auto& e : node.effects) {
    switch (e.kind) {
      case EffectKind::Reveal: next.revealedNodes.insert(e.target); break;
      case EffectKind::Navigate:
        next.activePane = e.target;
        navigated = true;
        break;
      case EffectKind::ToggleState: next.enabledNodes.insert(e.target); break;
      case EffectKind::Dismiss: break;
    }
  }
  if (navigated) {
    next.scrollOffset = 0;
    next.focusNode.reset();
  } else if (state.policy == TraversalPolicy::Keyboard) {
    next.focusNode = node.id;
  }
  ++next.interactionsUsed;
  return next;
}

namespace {

bool is_material(const UINode& n, const LabelLexicon& lexicon) {
  if (!is_interactive(n.role)) return false;
  return is_toggle_role(n.role) || is_non_accept_class(lexicon.match(n.name()));
}

EventKind kind_for(const UINode& n) {
  if (n.role == Role::Expander) return EventKind::Expand;
  if (is_toggle_role(n.role)) return EventKind::Toggle;
  return EventKind::Action;
}

std::int64_t to_us(double seconds) { return std::llround(seconds * 1e6); }

std::string state_key(const TraversalState& s) {
  std::string key = s.activePane;
  key += '|';
  key += std::to_string(s.scrollOffset);
  key += '|';
  key += s.focusNode.value_or("");
  key += "|r";
  for (const auto& r : s.revealedNodes) (key += ',') += r;
  key += "|e";
  for (const auto& e : s.enabledNodes) (key += ',') += e;
  return key;
}

bool same_effective_state(const TraversalState& a, const TraversalState& b) {
  return a.activePane == b.activePane && a.revealedNodes == b.revealedNodes && a.enabledNodes == b.enabledNodes;
}

struct Move {
  GraphEdge edge;
  TraversalState next;  // meaningless for terminal moves
};

// All macro moves out of `s`, in reading order of their target control.
std::vector<Move> moves_from(const TraversalState& s, const Snapshot& snapshot, const LabelLexicon& lexicon,
                             const Budget& budget, const Timing& timing) {
  std::vector<Move> out;
  std::vector<FocusStop> ring;
  if (s.policy == TraversalPolicy::Keyboard) ring = focus_ring(snapshot, s);

  for (const UINode* n : snapshot.document_order(s.activePane)) {
    if (!is_interactive(n->role) || !is_rendered(*n, s, snapshot) || !is_enabled(*n, s)) continue;
    const ControlClass cls = lexicon.match(n->name());
    if (cls == ControlClass::Accept) continue;  // the agent never accepts

    Move m;
    m.edge.nodeId = n->id;
    std::int64_t loopUs = 0;
    if (s.policy == TraversalPolicy::Keyboard) {
      FocusTravel travel = travel_focus(ring, s.focusNode, n->id);
      if (!travel.reachable) continue;
      m.edge.loops = std::move(travel.loops);
      loopUs = to_us(timing.focusEscapeS) * static_cast<std::int64_t>(m.edge.loops.size());
    }
    const auto offset = scroll_into_view(n->bounds, s.scrollOffset, snapshot);
    if (!offset) continue;
    TraversalState at = s;
    at.scrollOffset = *offset;
    m.edge.scrollPx = std::abs(*offset - s.scrollOffset);
    m.edge.scrollOffsetAt = *offset;
    m.edge.scrollS = scroll_cost(m.edge.scrollPx, snapshot, timing);
    m.edge.primaryS = transition_cost(*n, budget, timing);
    m.edge.timeUs = loopUs + to_us(m.edge.scrollS) + to_us(m.edge.primaryS);

    if (is_meaningful_alternative(*n, at, snapshot, lexicon).meaningful) {
      m.edge.kind = EventKind::Action;
      m.edge.terminal = true;
      out.push_back(std::move(m));
      continue;
    }
    m.next = apply_effects(at, *n);
    if (same_effective_state(m.next, at)) continue;  // activation changes nothing
    m.edge.kind = kind_for(*n);
    m.edge.navigates = m.next.activePane != s.activePane;
    out.push_back(std::move(m));
  }
  return out;
}

struct Label {
  int interactions = 0;
  int scrollPx = 0;
  std::int64_t timeUs = 0;
  std::vector<std::string> ids;
  int paneDepth = 0;
  std::size_t state = 0;
  bool goal = false;
  std::vector<GraphEdge> path;
};

// Orders labels so that the priority queue pops the cheapest first.
struct WorseLabel {
  bool operator()(const Label& a, const Label& b) const {
    if (a.interactions != b.interactions) return a.interactions > b.interactions;
    if (a.scrollPx != b.scrollPx) return a.scrollPx > b.scrollPx;
    if (a.timeUs != b.timeUs) return a.timeUs > b.timeUs;
    if (a.ids != b.ids) return a.ids > b.ids;
    return a.goal < b.goal;  // finish on ties
  }
};

EventTrace to_trace(const std::vector<GraphEdge>& path, TraversalPolicy policy, const Timing& timing) {
  EventTrace trace;
  trace.policy = policy;
  trace.terminal = Terminal::AlternativeReached;
  int offset = 0;
  for (const auto& e : path) {
    for (const auto& [start, size] : e.loops) {
      AuditEvent loop;
      loop.kind = EventKind::FocusLoop;
      loop.nodeId = start;
      loop.cost = timing.focusEscapeS;
      loop.scrollOffset = offset;
      loop.cycleSize = size;
      trace.events.push_back(loop);
    }
    if (e.scrollPx > 0) {
      AuditEvent scroll;
      scroll.kind = EventKind::Scroll;
      scroll.nodeId = e.nodeId;
      scroll.scrollPx = e.scrollPx;
      scroll.cost = e.scrollS;
      scroll.scrollOffset = e.scrollOffsetAt;
      trace.events.push_back(scroll);
    }
    AuditEvent primary;
    primary.kind = e.kind;
    primary.nodeId = e.nodeId;
    primary.cost = e.primaryS;
    offset = e.navigates ? 0 : e.scrollOffsetAt;
    primary.scrollOffset = offset;
    trace.events.push_back(primary);
    if (e.terminal) trace.terminalNodeId = e.nodeId;
  }
  return trace;
}

}  // namespace

InteractionGraph build_interaction_graph(const Snapshot& snapshot, TraversalPolicy policy,
                                         const LabelLexicon& lexicon, const Budget& budget, const Timing& timing) {
  InteractionGraph g;
  std::map<std::string, std::size_t> index;
  g.states.push_back(TraversalState::initial(snapshot, policy));
  index.emplace(state_key(g.states[0]), 0);
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    if (g.states[cur].interactionsUsed >= budget.maxInteractions) continue;
    for (auto& m : moves_from(g.states[cur], snapshot, lexicon, budget, timing)) {
      m.edge.from = cur;
      if (!m.edge.terminal) {
        const std::string key = state_key(m.next);
        auto it = index.find(key);
        if (it == index.end()) {
          if (static_cast<int>(g.states.size()) >= budget.maxStates) {
            throw AuditError("state-space exceeded");
          }
          it = index.emplace(key, g.states.size()).first;
          g.states.push_back(m.next);
          frontier.push_back(it->second);
        }
        m.edge.to = it->second;
      }
      g.edges.push_back(std::move(m.edge));
    }
  }
  return g;
}

EventTrace least_effort_traverse(const Snapshot& snapshot, TraversalPolicy policy, const LabelLexicon& lexicon,
                                 const Budget& budget, const Timing& timing) {
  if (budget.maxInteractions <= 0 || budget.maxPaneDepth <= 0 || budget.waitBudgetMs <= 0 ||
      budget.maxStates <= 0) {
    throw std::invalid_argument("budget values must be positive");
  }
  std::vector<TraversalState> states{TraversalState::initial(snapshot, policy)};
  std::map<std::string, std::size_t> index{{state_key(states[0]), 0}};
  std::vector<bool> settled(1, false);

  std::priority_queue<Label, std::vector<Label>, WorseLabel> queue;
  queue.push(Label{});
  while (!queue.empty()) {
    Label cur = queue.top();
    queue.pop();
    if (cur.goal) return to_trace(cur.path, policy, timing);
    if (settled[cur.state]) continue;
    settled[cur.state] = true;
    if (cur.interactions >= budget.maxInteractions) continue;

    for (auto& m : moves_from(states[cur.state], snapshot, lexicon, budget, timing)) {
      Label next;
      next.interactions = cur.interactions + 1;
      next.scrollPx = cur.scrollPx + m.edge.scrollPx;
      next.timeUs = cur.timeUs + m.edge.timeUs;
      next.ids = cur.ids;
      next.ids.push_back(m.edge.nodeId);
      next.paneDepth = cur.paneDepth + (m.edge.navigates ? 1 : 0);
      if (next.paneDepth > budget.maxPaneDepth) continue;
      if (m.edge.terminal) {
        next.goal = true;
      } else {
        m.next.interactionsUsed = next.interactions;
        const std::string key = state_key(m.next);
        auto it = index.find(key);
        if (it == index.end()) {
          if (static_cast<int>(states.size()) >= budget.maxStates) throw AuditError("state-space exceeded");
          it = index.emplace(key, states.size()).first;
          states.push_back(m.next);
          settled.push_back(false);
        }
        if (settled[it->second]) continue;
        next.state = it->second;
      }
      m.edge.from = cur.state;
      next.path = cur.path;
      next.path.push_back(std::move(m.edge));
      queue.push(std::move(next));
    }
  }
  EventTrace censored;
  censored.policy = policy;
  censored.terminal = Terminal::BudgetExhausted;
  return censored;
}

std::vector<std::string> newly_exposed_material(const TraversalState& state, const UINode& node,
                                                const Snapshot& snapshot, const LabelLexicon& lexicon) {
  const TraversalState after = apply_effects(state, node);
  std::vector<std::string> out;
  for (const auto& n : snapshot.nodes) {
    if (n.paneId != after.activePane || !is_material(n, lexicon)) continue;
    const bool before = n.paneId == state.activePane && is_rendered(n, state, snapshot);
    if (!before && is_rendered(n, after, snapshot)) out.push_back(n.id);
  }
  return out;
}

int count_hidden_reveals(const EventTrace& trace, const Snapshot& snapshot, const LabelLexicon& lexicon) {
  TraversalState state = TraversalState::initial(snapshot, trace.policy);
  int hidden = 0;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const AuditEvent& e = trace.events[i];
    if (e.nodeId && !snapshot.find(*e.nodeId)) {
      throw std::domain_error("trace references node '" + *e.nodeId + "' absent from the snapshot");
    }
    if (e.kind == EventKind::Scroll || e.kind == EventKind::FocusLoop) {
      state.scrollOffset = e.scrollOffset;
      continue;
    }
    const bool terminal = i + 1 == trace.events.size() && !trace.censored();
    const UINode& node = snapshot.node(*e.nodeId);
    if (node.paneId != state.activePane) {
      throw std::domain_error("trace activates '" + node.id + "' outside the active pane");
    }
    if (terminal) break;
    if ((e.kind == EventKind::Expand || e.kind == EventKind::Action) &&
        !newly_exposed_material(state, node, snapshot, lexicon).empty()) {
      ++hidden;
    }
    state = apply_effects(state, node);
  }
  return hidden;
}

}  // namespace psi
