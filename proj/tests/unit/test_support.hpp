#pragma once

// Small builders for hand-authored snapshots used across the unit tests.

#include <string>
#include <utility>

#include "psi/fixtures.hpp"
#include "psi/lexicon.hpp"
#include "psi/snapshot.hpp"

namespace psi::test {

class SnapshotBuilder {
 public:
  explicit SnapshotBuilder(std::string breakpoint = "desktop") {
    s_.viewport = named_viewport(breakpoint);
    s_.meta.breakpoint = breakpoint;
    s_.meta.source = "test";
    s_.surface.rootNodeId = "surface";
    s_.panes.push_back({"p1", true});
    UINode root;
    root.id = "surface";
    root.paneId = "p1";
    root.role = Role::Container;
    root.bounds = {0, 0, s_.viewport.width, s_.viewport.height};
    s_.nodes.push_back(root);
  }

  SnapshotBuilder& pane(std::string id) {
    s_.panes.push_back({std::move(id), false});
    return *this;
  }

  SnapshotBuilder& scrollable(int scrollHeight, std::optional<int> effective = std::nullopt) {
    s_.surface.scrollable = true;
    s_.surface.scrollHeight = scrollHeight;
    s_.surface.effectiveViewportHeight = effective;
    return *this;
  }

  // Adds a node and returns it for further adjustment; the reference stays
  // valid until the next add.
  UINode& add(std::string id, Role role, std::string label, Rect bounds, std::string pane = "p1") {
    UINode n;
    n.id = std::move(id);
    n.paneId = std::move(pane);
    n.parentId = "surface";
    n.role = role;
    n.label = std::move(label);
    n.bounds = bounds;
    s_.nodes.push_back(std::move(n));
    return s_.nodes.back();
  }

  UINode& button(std::string id, std::string label, Rect bounds, std::string pane = "p1") {
    return add(std::move(id), Role::Button, std::move(label), bounds, std::move(pane));
  }

  Snapshot build() {
    Snapshot out = s_;
    out.finalize();
    return out;
  }

  Snapshot& raw() { return s_; }

 private:
  Snapshot s_;
};

inline Effect reveal(std::string target) { return {EffectKind::Reveal, std::move(target)}; }
inline Effect navigate(std::string pane) { return {EffectKind::Navigate, std::move(pane)}; }
inline Effect dismiss() { return {EffectKind::Dismiss, "surface"}; }

// Accept and reject side by side in the first viewport.
inline Snapshot co_present_pair() {
  SnapshotBuilder b;
  b.button("accept", "Accept all", {400, 600, 150, 44}).effects = {dismiss()};
  b.button("reject", "Reject all", {570, 600, 150, 44}).effects = {dismiss()};
  return b.build();
}

inline const LabeledFixture& bundled_fixture(const std::string& id) {
  static const std::vector<LabeledFixture> corpus = load_fixture_corpus();
  for (const auto& f : corpus) {
    if (f.id == id) return f;
  }
  throw std::out_of_range("no bundled fixture " + id);
}

}  // namespace psi::test
