#pragma once

// Traversal state shared by the detector and the traversal engine:
// what is rendered, what is enabled, and the keyboard focus ring.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "psi/snapshot.hpp"

namespace psi {

enum class TraversalPolicy { Pointer, Keyboard };

std::string_view to_string(TraversalPolicy p);
TraversalPolicy policy_from_string(std::string_view s);  // throws std::invalid_argument

struct TraversalState {
  std::string activePane;
  int scrollOffset = 0;
  std::set<std::string> revealedNodes;  // reveal targets; their subtrees render too
  std::set<std::string> enabledNodes;   // disabled controls switched on by toggleState
  std::optional<std::string> focusNode;  // keyboard only
  std::vector<std::string> visitedFocusSequence;
  int interactionsUsed = 0;
  double elapsed = 0.0;
  TraversalPolicy policy = TraversalPolicy::Pointer;

  static TraversalState initial(const Snapshot& snapshot, TraversalPolicy policy);
};

// A node renders when its parent renders and it is visible, revealed, or
// inside a revealed subtree without being a reveal target of its own.
bool is_rendered(const UINode& node, const TraversalState& state, const Snapshot& snapshot);
bool is_enabled(const UINode& node, const TraversalState& state);

// One Tab stop. Roving groups collapse into a single stop whose members are
// reached with arrow keys once the stop has focus.
struct FocusStop {
  std::string nodeId;
  std::vector<std::string> members;
  std::optional<std::string> trapId;  // enclosing focus-trap container, if any
};

// Tab ring of the active pane: positive tabIndex ascending first, then
// tabIndex 0 / unset in reading order. Negative tabIndex, disabled and
// unrendered controls are skipped.
std::vector<FocusStop> focus_ring(const Snapshot& snapshot, const TraversalState& state);

// Index of the stop that reaches `nodeId`, or -1.
int ring_position(const std::vector<FocusStop>& ring, std::string_view nodeId);

// Result of tabbing forward from the current focus to a target stop.
struct FocusTravel {
  bool reachable = false;
  int tabPresses = 0;
  int arrowPresses = 0;
  // Focus-trap cycles completed on the way, each as the node where the
  // cycle started and the number of stops in it.
  std::vector<std::pair<std::string, int>> loops;
};

FocusTravel travel_focus(const std::vector<FocusStop>& ring, const std::optional<std::string>& from,
                         std::string_view target);

}  // namespace psi
