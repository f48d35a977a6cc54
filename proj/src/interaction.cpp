#include "psi/interaction.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace psi {

std::string_view to_string(TraversalPolicy p) {
  return p == TraversalPolicy::Pointer ? "pointer" : "keyboard";
}

TraversalPolicy policy_from_string(std::string_view s) {
  if (s == "pointer") return TraversalPolicy::Pointer;
  if (s == "keyboard") return TraversalPolicy::Keyboard;
  throw std::invalid_argument("unknown traversal policy '" + std::string(s) +
                              "' (valid: pointer, keyboard)");
}

TraversalState TraversalState::initial(const Snapshot& snapshot, TraversalPolicy policy) {
  TraversalState s;
  s.activePane = snapshot.initial_pane().id;
  s.policy = policy;
  return s;
}

bool is_rendered(const UINode& node, const TraversalState& state, const Snapshot& snapshot) {
  std::vector<const UINode*> chain;
  for (const UINode* cur = &node; cur; cur = cur->parentId ? snapshot.find(*cur->parentId) : nullptr) {
    chain.push_back(cur);
  }
  // Walk from the root down. Inside a revealed subtree, hidden nodes render
  // too, except nested disclosures that wait for their own reveal.
  bool insideReveal = false;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const UINode* n = *it;
    if (state.revealedNodes.count(n->id)) {
      insideReveal = true;
      continue;
    }
    if (n->visible) continue;
    if (!insideReveal || snapshot.is_reveal_target(n->id)) return false;
  }
  return true;
}

bool is_enabled(const UINode& node, const TraversalState& state) {
  return node.enabled || state.enabledNodes.count(node.id) > 0;
}

namespace {

std::optional<std::string> enclosing_trap(const UINode& node, const Snapshot& snapshot) {
  for (const UINode* cur = node.parentId ? snapshot.find(*node.parentId) : nullptr; cur;
       cur = cur->parentId ? snapshot.find(*cur->parentId) : nullptr) {
    if (cur->focusTrap) return cur->id;
  }
  return std::nullopt;
}

}  // namespace

std::vector<FocusStop> focus_ring(const Snapshot& snapshot, const TraversalState& state) {
  struct Candidate {
    const UINode* node;
    std::size_t order;
  };
  std::vector<Candidate> positive;
  std::vector<Candidate> natural;
  std::map<std::string, std::size_t> rovingStop;  // parent id -> index into `stops`

  const auto ordered = snapshot.document_order(state.activePane);
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const UINode* n = ordered[i];
    if (!is_interactive(n->role) || !is_rendered(*n, state, snapshot) || !is_enabled(*n, state)) continue;
    if (n->rovingTabIndex) {
      natural.push_back({n, i});  // grouped below
      continue;
    }
    if (n->tabIndex && *n->tabIndex < 0) continue;
    if (n->tabIndex && *n->tabIndex > 0) {
      positive.push_back({n, i});
    } else {
      natural.push_back({n, i});
    }
  }
  std::stable_sort(positive.begin(), positive.end(), [](const Candidate& a, const Candidate& b) {
    return *a.node->tabIndex < *b.node->tabIndex;
  });

  std::vector<FocusStop> stops;
  auto add = [&](const UINode* n) {
    if (n->rovingTabIndex) {
      const std::string key = n->parentId.value_or("");
      if (auto it = rovingStop.find(key); it != rovingStop.end()) {
        stops[it->second].members.push_back(n->id);
        return;
      }
      rovingStop.emplace(key, stops.size());
    }
    stops.push_back({n->id, {n->id}, enclosing_trap(*n, snapshot)});
  };
  for (const auto& c : positive) add(c.node);
  for (const auto& c : natural) add(c.node);
  return stops;
}

int ring_position(const std::vector<FocusStop>& ring, std::string_view nodeId) {
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto& m = ring[i].members;
    if (std::find(m.begin(), m.end(), nodeId) != m.end()) return static_cast<int>(i);
  }
  return -1;
}

FocusTravel travel_focus(const std::vector<FocusStop>& ring, const std::optional<std::string>& from,
                         std::string_view target) {
  FocusTravel out;
  const int n = static_cast<int>(ring.size());
  const int tpos = ring_position(ring, target);
  if (tpos < 0) return out;

  const auto memberIndex = [&](int stop, std::string_view id) {
    const auto& m = ring[stop].members;
    return static_cast<int>(std::find(m.begin(), m.end(), id) - m.begin());
  };
  const std::optional<std::string>& targetTrap = ring[tpos].trapId;

  int pos = from ? ring_position(ring, *from) : -1;
  if (pos == tpos) {
    out.reachable = true;
    out.arrowPresses = std::abs(memberIndex(tpos, target) - memberIndex(tpos, *from));
    return out;
  }

  // Leaves the trap that contains `pos`, recording one completed cycle.
  const auto escape_trap = [&](int at) {
    const std::string& trap = *ring[at].trapId;
    int size = 0;
    int last = at;
    for (int i = 0; i < n; ++i) {
      if (ring[i].trapId == trap) {
        ++size;
        last = i;
      }
    }
    out.loops.emplace_back(ring[at].nodeId, size);
    out.tabPresses += size;
    return last;
  };

  if (pos >= 0 && ring[pos].trapId && ring[pos].trapId != targetTrap) pos = escape_trap(pos);

  const int guard = 4 * n + 4;
  while (out.tabPresses <= guard) {
    pos = (pos + 1) % n;
    ++out.tabPresses;
    if (pos == tpos) {
      out.reachable = true;
      out.arrowPresses = memberIndex(tpos, target);
      return out;
    }
    if (ring[pos].trapId && ring[pos].trapId != targetTrap) pos = escape_trap(pos);
  }
  return out;
}

}  // namespace psi
