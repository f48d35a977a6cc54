#include "psi/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace psi {

std::string_view to_string(Role r) {
  switch (r) {
    case Role::Button: return "button";
    case Role::Link: return "link";
    case Role::Toggle: return "toggle";
    case Role::Checkbox: return "checkbox";
    case Role::Expander: return "expander";
    case Role::Text: return "text";
    case Role::Container: return "container";
  }
  return "text";
}

std::string_view to_string(Emphasis e) {
  switch (e) {
    case Emphasis::Primary: return "primary";
    case Emphasis::Secondary: return "secondary";
    case Emphasis::Plain: return "plain";
  }
  return "plain";
}

std::string_view to_string(EffectKind k) {
  switch (k) {
    case EffectKind::Reveal: return "reveal";
    case EffectKind::Navigate: return "navigate";
    case EffectKind::ToggleState: return "toggleState";
    case EffectKind::Dismiss: return "dismiss";
  }
  return "reveal";
}

bool is_interactive(Role r) {
  return r != Role::Text && r != Role::Container;
}

bool is_toggle_role(Role r) {
  return r == Role::Toggle || r == Role::Checkbox;
}

double edge_distance(const Rect& a, const Rect& b) {
  const int dx = std::max({0, a.x - b.right(), b.x - a.right()});
  const int dy = std::max({0, a.y - b.bottom(), b.y - a.bottom()});
  return std::hypot(static_cast<double>(dx), static_cast<double>(dy));
}

bool UINode::has_effect(EffectKind k) const {
  return std::any_of(effects.begin(), effects.end(),
                     [k](const Effect& e) { return e.kind == k; });
}

Viewport named_viewport(std::string_view name) {
  if (name == "desktop") return {1440, 900, std::string(name)};
  if (name == "mobile") return {390, 844, std::string(name)};
  throw std::invalid_argument("unknown breakpoint '" + std::string(name) +
                              "' (valid: desktop, mobile)");
}

SnapshotError::SnapshotError(Kind kind, std::string message, std::vector<std::string> offending)
    : std::runtime_error(std::move(message)), kind_(kind), offending_(std::move(offending)) {}

namespace {

[[noreturn]] void invalid(std::string message, std::vector<std::string> ids = {}) {
  if (!ids.empty()) {
    message += ":";
    for (const auto& id : ids) message += " " + id;
  }
  throw SnapshotError(SnapshotError::Kind::Validation, std::move(message), std::move(ids));
}

}  // namespace

void Snapshot::finalize() {
  if (version != 1) invalid("unsupported snapshot version " + std::to_string(version));
  if (viewport.width <= 0 || viewport.height <= 0) invalid("viewport dimensions must be positive");
  if (viewport.name && (*viewport.name == "desktop" || *viewport.name == "mobile")) {
    const Viewport named = named_viewport(*viewport.name);
    if (named.width != viewport.width || named.height != viewport.height) {
      invalid("viewport name '" + *viewport.name + "' does not match its dimensions");
    }
  }

  std::sort(nodes.begin(), nodes.end(),
            [](const UINode& a, const UINode& b) { return a.id < b.id; });
  std::sort(panes.begin(), panes.end(),
            [](const Pane& a, const Pane& b) { return a.id < b.id; });

  index_.clear();
  revealTargets_.clear();
  for (const auto& n : nodes) {
    for (const auto& e : n.effects) {
      if (e.kind == EffectKind::Reveal) revealTargets_.insert(e.target);
    }
  }
  std::vector<std::string> dupes;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id.empty()) invalid("node with empty id");
    if (!index_.emplace(nodes[i].id, i).second) dupes.push_back(nodes[i].id);
  }
  std::set<std::string> paneIds;
  for (const auto& p : panes) {
    if (!paneIds.insert(p.id).second) dupes.push_back(p.id);
  }
  if (!dupes.empty()) invalid("duplicate id", dupes);

  const auto initialCount = std::count_if(panes.begin(), panes.end(),
                                          [](const Pane& p) { return p.initial; });
  if (initialCount != 1) invalid("exactly one pane must be initial");

  if (surface.rootNodeId.empty() || !find(surface.rootNodeId)) {
    throw SnapshotError(SnapshotError::Kind::NoSurfaceRoot,
                        "no consent-surface root '" + surface.rootNodeId + "'",
                        {surface.rootNodeId});
  }
  const int evh = surface.effectiveViewportHeight.value_or(viewport.height);
  if (surface.effectiveViewportHeight && *surface.effectiveViewportHeight <= 0) {
    invalid("effectiveViewportHeight must be positive");
  }
  if (surface.scrollable && surface.scrollHeight < evh) {
    invalid("scrollHeight must be at least the effective viewport height");
  }

  std::vector<std::string> dangling;
  std::vector<std::string> badReveal;
  std::vector<std::string> badGeometry;
  flags.clear();
  for (const auto& n : nodes) {
    if (!paneIds.count(n.paneId)) dangling.push_back(n.id + ".paneId");
    if (n.parentId && !find(*n.parentId)) dangling.push_back(n.id + ".parentId");
    if (n.rationaleFor && !find(*n.rationaleFor)) dangling.push_back(n.id + ".rationaleFor");
    for (const auto& e : n.effects) {
      if (e.kind == EffectKind::Navigate) {
        if (!paneIds.count(e.target)) {
          (find(e.target) ? badReveal : dangling).push_back(n.id + ".effects");
        }
      } else if (!find(e.target)) {
        (paneIds.count(e.target) ? badReveal : dangling).push_back(n.id + ".effects");
      }
    }
    if (n.bounds.w < 0 || n.bounds.h < 0 || n.animationMs < 0) badGeometry.push_back(n.id);
    if (n.bounds.x < 0 || n.bounds.right() > viewport.width) badGeometry.push_back(n.id);
    if (is_interactive(n.role) && n.name().empty()) flags.push_back("unnamed-interactive:" + n.id);
  }
  if (!badReveal.empty()) invalid("effect target has the wrong kind (reveal/toggleState/dismiss need a node, navigate needs a pane)", badReveal);
  if (!dangling.empty()) invalid("dangling reference", dangling);
  if (!badGeometry.empty()) invalid("invalid geometry (negative size or wider than viewport)", badGeometry);

  // Parent cycles would make subtree checks loop.
  for (const auto& n : nodes) {
    std::size_t steps = 0;
    for (const UINode* cur = &n; cur->parentId; cur = find(*cur->parentId)) {
      if (++steps > nodes.size()) invalid("parent cycle", {n.id});
    }
  }

  const std::string& initialId = initial_pane().id;
  const bool anyVisible = std::any_of(nodes.begin(), nodes.end(), [&](const UINode& n) {
    return n.paneId == initialId && n.visible;
  });
  if (!anyVisible) invalid("no visible node on the initial pane");
}

const UINode* Snapshot::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &nodes[it->second];
}

const UINode& Snapshot::node(std::string_view id) const {
  if (const UINode* n = find(id)) return *n;
  throw std::out_of_range("unknown node '" + std::string(id) + "'");
}

const Pane* Snapshot::find_pane(std::string_view id) const {
  for (const auto& p : panes) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

const Pane& Snapshot::initial_pane() const {
  for (const auto& p : panes) {
    if (p.initial) return p;
  }
  throw std::logic_error("snapshot has no initial pane");
}

bool Snapshot::is_reveal_target(std::string_view id) const {
  return revealTargets_.count(std::string(id)) > 0;
}

bool Snapshot::in_subtree(std::string_view id, std::string_view ancestor) const {
  for (const UINode* cur = find(id); cur; cur = cur->parentId ? find(*cur->parentId) : nullptr) {
    if (cur->id == ancestor) return true;
  }
  return false;
}

std::vector<const UINode*> Snapshot::document_order(std::string_view paneId) const {
  std::vector<const UINode*> out;
  for (const auto& n : nodes) {
    if (n.paneId == paneId) out.push_back(&n);
  }
  std::sort(out.begin(), out.end(), [](const UINode* a, const UINode* b) {
    if (a->bounds.y != b->bounds.y) return a->bounds.y < b->bounds.y;
    if (a->bounds.x != b->bounds.x) return a->bounds.x < b->bounds.x;
    return a->id < b->id;
  });
  return out;
}

bool Snapshot::operator==(const Snapshot& other) const {
  return version == other.version && meta == other.meta && viewport == other.viewport &&
         surface == other.surface && panes == other.panes && nodes == other.nodes;
}

int effective_viewport_height(const Snapshot& snapshot) {
  if (snapshot.surface.scrollable && snapshot.surface.effectiveViewportHeight) {
    return *snapshot.surface.effectiveViewportHeight;
  }
  return snapshot.viewport.height;
}

int max_scroll_offset(const Snapshot& snapshot) {
  if (!snapshot.surface.scrollable) return 0;
  return std::max(0, snapshot.surface.scrollHeight - effective_viewport_height(snapshot));
}

bool fits_viewport(const Rect& b, int scrollOffset, const Snapshot& snapshot) {
  const int vh = effective_viewport_height(snapshot);
  return b.y >= scrollOffset && b.bottom() <= scrollOffset + vh && b.x >= 0 &&
         b.right() <= snapshot.viewport.width;
}

bool visible_in_viewport(const UINode& node, int scrollOffset, const Snapshot& snapshot) {
  return node.visible && fits_viewport(node.bounds, scrollOffset, snapshot);
}

double salience(const UINode& node, const SalienceWeights& weights) {
  if (!is_interactive(node.role)) {
    throw std::domain_error("salience is only defined for interactive controls ('" + node.id + "')");
  }
  double m = weights.plain;
  if (node.emphasisClass == Emphasis::Primary) m = weights.primary;
  if (node.emphasisClass == Emphasis::Secondary) m = weights.secondary;
  return static_cast<double>(node.bounds.w) * static_cast<double>(node.bounds.h) * m;
}

}  // namespace psi
