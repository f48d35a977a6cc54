#pragma once

// Snapshot model: a serialized first-encounter consent surface plus the
// geometry, visibility and salience primitives the rest of the engine uses.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace psi {

enum class Role { Button, Link, Toggle, Checkbox, Expander, Text, Container };
enum class Emphasis { Primary, Secondary, Plain };
enum class EffectKind { Reveal, Navigate, ToggleState, Dismiss };

std::string_view to_string(Role r);
std::string_view to_string(Emphasis e);
std::string_view to_string(EffectKind k);

// Buttons, links, toggles, checkboxes and expanders; text and containers are not.
bool is_interactive(Role r);
// Toggles and checkboxes: the category-level controls that narrow consent.
bool is_toggle_role(Role r);

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  bool operator==(const Rect&) const = default;
};

// Gap between two rectangles; 0 when they touch or overlap.
double edge_distance(const Rect& a, const Rect& b);

struct Effect {
  EffectKind kind = EffectKind::Reveal;
  std::string target;  // node id, or pane id for Navigate

  bool operator==(const Effect&) const = default;
};

struct UINode {
  std::string id;
  std::string paneId;
  std::optional<std::string> parentId;
  Role role = Role::Text;
  std::string label;
  std::string accessibleName;
  Rect bounds;
  bool visible = true;  // rendered and not occluded at first encounter
  bool enabled = true;
  std::optional<int> tabIndex;
  bool rovingTabIndex = false;
  Emphasis emphasisClass = Emphasis::Plain;
  bool celebratory = false;
  std::optional<std::string> rationaleFor;
  int animationMs = 0;
  std::vector<Effect> effects;
  // Container whose focusable descendants form a closed Tab cycle.
  bool focusTrap = false;
  // Activation visibly gates the next state but no duration was captured.
  bool gated = false;

  // accessibleName, falling back to the visible label.
  const std::string& name() const { return accessibleName.empty() ? label : accessibleName; }
  bool has_effect(EffectKind k) const;
  bool operator==(const UINode&) const = default;
};

struct Viewport {
  int width = 0;
  int height = 0;
  std::optional<std::string> name;

  bool operator==(const Viewport&) const = default;
};

// desktop -> 1440x900, mobile -> 390x844. Throws std::invalid_argument otherwise.
Viewport named_viewport(std::string_view name);

struct Surface {
  std::string rootNodeId;
  bool scrollable = false;
  int scrollHeight = 0;
  std::optional<int> effectiveViewportHeight;

  bool operator==(const Surface&) const = default;
};

struct Pane {
  std::string id;
  bool initial = false;

  bool operator==(const Pane&) const = default;
};

struct SnapshotMeta {
  std::string source;
  std::string note;
  std::string breakpoint;

  bool operator==(const SnapshotMeta&) const = default;
};

class SnapshotError : public std::runtime_error {
 public:
  enum class Kind { Parse, Validation, NoSurfaceRoot };

  SnapshotError(Kind kind, std::string message, std::vector<std::string> offending = {});

  Kind kind() const { return kind_; }
  // Offending ids (validation) or the field path (parse).
  const std::vector<std::string>& offending() const { return offending_; }

 private:
  Kind kind_;
  std::vector<std::string> offending_;
};

struct Snapshot {
  int version = 1;
  SnapshotMeta meta;
  Viewport viewport;
  Surface surface;
  std::vector<Pane> panes;
  std::vector<UINode> nodes;  // sorted by id once finalized

  // Diagnostics raised during validation, e.g. "unnamed-interactive:<id>".
  std::vector<std::string> flags;

  // Sorts nodes and panes, rebuilds the id index and validates every
  // invariant. Throws SnapshotError.
  void finalize();

  const UINode* find(std::string_view id) const;
  const UINode& node(std::string_view id) const;  // throws std::out_of_range
  const Pane* find_pane(std::string_view id) const;
  const Pane& initial_pane() const;

  // True when `id` equals `ancestor` or lies in its subtree.
  bool in_subtree(std::string_view id, std::string_view ancestor) const;
  // Nodes on a pane in reading order: top edge, then left edge, then id.
  std::vector<const UINode*> document_order(std::string_view paneId) const;

  // True when some control's reveal effect targets `id`.
  bool is_reveal_target(std::string_view id) const;

  // Structural equality; ignores the lookup index.
  bool operator==(const Snapshot& other) const;

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_set<std::string> revealTargets_;
};

Snapshot parse_snapshot(std::string_view document);
Snapshot load_snapshot(const std::filesystem::path& path);
// Canonical form: keys sorted alphabetically, nodes and panes sorted by id.
std::string serialize_snapshot(const Snapshot& snapshot);

int effective_viewport_height(const Snapshot& snapshot);

// Vertical range is [offset, offset + effective height), horizontal range
// is [0, viewport width). Partially visible bounds do not count.
bool fits_viewport(const Rect& bounds, int scrollOffset, const Snapshot& snapshot);
bool visible_in_viewport(const UINode& node, int scrollOffset, const Snapshot& snapshot);

// Largest scroll offset the surface allows (0 when it does not scroll).
int max_scroll_offset(const Snapshot& snapshot);

struct SalienceWeights {
  double primary = 2.0;
  double secondary = 1.25;
  double plain = 1.0;
};

// Area times the emphasis multiplier. Throws std::domain_error for
// non-interactive nodes.
double salience(const UINode& node, const SalienceWeights& weights = {});

}  // namespace psi
