#pragma once

// Least-effort traversal: interaction graph, route search and the event
// trace it produces.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "psi/detector.hpp"
#include "psi/interaction.hpp"
#include "psi/lexicon.hpp"
#include "psi/snapshot.hpp"

namespace psi {

enum class EventKind { Scroll, Expand, Toggle, FocusLoop, Action };
enum class Terminal { AlternativeReached, BudgetExhausted };

std::string_view to_string(EventKind k);  // SCROLL, EXPAND, TOGGLE, FOCUS_LOOP, ACTION
std::string_view to_string(Terminal t);   // ALTERNATIVE_REACHED, BUDGET_EXHAUSTED

struct Budget {
  int maxInteractions = 25;
  int maxPaneDepth = 6;
  int waitBudgetMs = 300;  // cost of a gating transition with no captured duration
  int maxStates = 10000;   // graph-size guard
};

struct Timing {
  double handlingS = 0.100;                // per primary interaction
  double scrollSecondsPerViewport = 0.05;  // per effective viewport height scrolled
  double focusEscapeS = 0.100;             // keypress that leaves a focus trap
};

struct AuditEvent {
  EventKind kind = EventKind::Action;
  std::optional<std::string> nodeId;
  int scrollPx = 0;  // SCROLL only, always > 0
  double cost = 0.0;
  // Scroll offset once the event has happened; used for evidence frames.
  int scrollOffset = 0;
  // FOCUS_LOOP only: number of stops in the completed cycle.
  int cycleSize = 0;

  bool operator==(const AuditEvent&) const = default;
};

struct EventTrace {
  std::vector<AuditEvent> events;
  Terminal terminal = Terminal::BudgetExhausted;
  std::optional<std::string> terminalNodeId;
  TraversalPolicy policy = TraversalPolicy::Pointer;

  bool censored() const { return terminal == Terminal::BudgetExhausted; }
  bool operator==(const EventTrace&) const = default;
};

// "EV_SCROLL -> EV_EXPAND -> EV_TOGGLE -> EV_ACTION"; censored traces end
// with " [BUDGET_EXHAUSTED]".
std::string render_event_strip(const EventTrace& trace);

// Raised when graph construction exceeds Budget::maxStates.
class AuditError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One macro move: optional focus travel (keyboard), optional scroll, then a
// single primary interaction on `nodeId`.
struct GraphEdge {
  std::size_t from = 0;
  std::optional<std::size_t> to;  // empty for terminal edges
  std::string nodeId;
  EventKind kind = EventKind::Action;
  bool terminal = false;  // activates a meaningful alternative
  int scrollPx = 0;
  int scrollOffsetAt = 0;   // offset at which the control is activated
  double scrollS = 0.0;
  double primaryS = 0.0;    // gate plus handling
  std::int64_t timeUs = 0;  // total: loops, scroll, gate and handling
  std::vector<std::pair<std::string, int>> loops;
  bool navigates = false;
};

struct InteractionGraph {
  std::vector<TraversalState> states;  // states[0] is the initial state
  std::vector<GraphEdge> edges;

  std::vector<const GraphEdge*> out_edges(std::size_t state) const;
};

// Every state reachable within the budget. Throws AuditError past
// budget.maxStates.
InteractionGraph build_interaction_graph(const Snapshot& snapshot, TraversalPolicy policy,
                                         const LabelLexicon& lexicon, const Budget& budget = {},
                                         const Timing& timing = {});

// Minimum-cost route to the first actionable meaningful alternative, in the
// order: fewest primary interactions, least scroll, least time, lowest node
// id sequence. Unreachable alternatives yield a BUDGET_EXHAUSTED trace with
// no events.
EventTrace least_effort_traverse(const Snapshot& snapshot, TraversalPolicy policy, const LabelLexicon& lexicon,
                                 const Budget& budget = {}, const Timing& timing = {});

// Seconds for one primary interaction on `node`: animation (or the wait
// budget for gated transitions without a duration) plus handling.
double transition_cost(const UINode& node, const Budget& budget, const Timing& timing = {});
double scroll_cost(int scrollPx, const Snapshot& snapshot, const Timing& timing = {});

// Offset nearest to `currentOffset` at which `bounds` is fully visible, or
// empty when no offset can show it.
std::optional<int> scroll_into_view(const Rect& bounds, int currentOffset, const Snapshot& snapshot);

// State after activating `node`: reveals, navigation and enabling applied.
TraversalState apply_effects(const TraversalState& state, const UINode& node);

// Controls of class REJECT/SETTINGS/SAVE, and toggles, that render after
// `node` is activated from `state` but did not render before.
std::vector<std::string> newly_exposed_material(const TraversalState& state, const UINode& node,
                                                const Snapshot& snapshot, const LabelLexicon& lexicon);

// Replays the trace: non-terminal EXPAND/ACTION events that exposed at
// least one material control. Throws std::domain_error on a trace that does
// not belong to the snapshot.
int count_hidden_reveals(const EventTrace& trace, const Snapshot& snapshot, const LabelLexicon& lexicon);

}  // namespace psi
