#include <doctest.h>

#include <algorithm>

#include "psi/archetype.hpp"
#include "psi/detector.hpp"
#include "psi/lexicon.hpp"
#include "test_support.hpp"

using namespace psi;
using psi::test::SnapshotBuilder;

namespace {

const LabelLexicon& lex() {
  static const LabelLexicon l = LabelLexicon::builtin();
  return l;
}

bool has_reason(const DetectionResult& r, const std::string& reason) {
  return std::find(r.reasons.begin(), r.reasons.end(), reason) != r.reasons.end();
}

DetectionResult detect(const Snapshot& s, const std::string& id, TraversalPolicy p = TraversalPolicy::Pointer) {
  return is_meaningful_alternative(s.node(id), TraversalState::initial(s, p), s, lex());
}

}  // namespace

TEST_CASE("label normalization") {
  CHECK(normalize_label("  Reject   ALL! ") == "reject all");
  CHECK(normalize_label("Save & exit") == "save exit");
  CHECK(normalize_label("") == "");
}

TEST_CASE("lexicon classification") {
  CHECK(lex().match("Reject all") == ControlClass::Reject);
  CHECK(lex().match("REJECT ALL COOKIES") == ControlClass::Reject);
  CHECK(lex().match("Customize") == ControlClass::Settings);
  CHECK(lex().match("Save choices") == ControlClass::Save);
  CHECK(lex().match("Accept all") == ControlClass::Accept);
  CHECK(lex().match("Change consent") == ControlClass::Reversibility);
  CHECK(lex().match("Privacy policy") == ControlClass::Informational);
  CHECK(lex().match("Manage experience") == ControlClass::Unknown);
  CHECK(lex().is_euphemism("Manage experience"));
  CHECK(lex().match("") == ControlClass::Unknown);
  CHECK(lex().match("Zebra") == ControlClass::Unknown);
  // Whole-word matching: "ok" must not fire inside "cookies".
  CHECK(lex().match("cookies") == ControlClass::Unknown);
}

TEST_CASE("accept and non-accept phrase lists are disjoint") {
  const auto& phrases = lex().phrases();
  for (const auto& a : phrases.at(ControlClass::Accept)) {
    for (ControlClass c : {ControlClass::Reject, ControlClass::Settings, ControlClass::Save}) {
      const auto& other = phrases.at(c);
      CHECK(std::find(other.begin(), other.end(), a) == other.end());
    }
  }
}

TEST_CASE("lexicon JSON round-trip and validation") {
  const LabelLexicon again = LabelLexicon::from_json(lex().to_json());
  CHECK(again.phrases() == lex().phrases());
  CHECK(again.euphemisms() == lex().euphemisms());
  CHECK(again.version() == lex().version());
  CHECK_THROWS(LabelLexicon::from_json("{\"classes\": {\"NOPE\": [\"x\"]}, \"euphemisms\": []}"));
  CHECK_THROWS(LabelLexicon::from_json(
      "{\"classes\": {\"ACCEPT\": [\"reject\"], \"REJECT\": [\"reject\"]}, \"euphemisms\": []}"));
}

TEST_CASE("bundled lexicon file mirrors the built-in lexicon") {
  const LabelLexicon onDisk = LabelLexicon::load(default_data_dir() / "lexicon.json");
  CHECK(onDisk.to_json() == lex().to_json());
}

TEST_CASE("classify_control") {
  SnapshotBuilder b;
  b.button("reject", "Reject all", {10, 10, 100, 40});
  b.button("euph", "Manage experience", {10, 60, 100, 40});
  b.add("icon", Role::Toggle, "", {10, 110, 40, 20});
  b.add("named_icon", Role::Button, "", {10, 160, 40, 40}).accessibleName = "Reject all";
  b.add("text", Role::Text, "Reject all", {10, 210, 100, 20});
  const Snapshot s = b.build();
  CHECK(classify_control(s.node("reject"), lex()) == ControlClass::Reject);
  CHECK(classify_control(s.node("euph"), lex()) == ControlClass::Unknown);
  CHECK(classify_control(s.node("icon"), lex()) == ControlClass::Unknown);
  CHECK(classify_control(s.node("named_icon"), lex()) == ControlClass::Reject);
  CHECK_THROWS_AS(classify_control(s.node("text"), lex()), std::domain_error);
}

TEST_CASE("classification ignores geometry and emphasis") {
  SnapshotBuilder b;
  b.button("r", "Decline", {10, 10, 100, 40});
  const Snapshot s = b.build();
  UINode moved = s.node("r");
  moved.bounds = {900, 800, 12, 12};
  moved.emphasisClass = Emphasis::Primary;
  moved.visible = false;
  CHECK(classify_control(moved, lex()) == classify_control(s.node("r"), lex()));
}

TEST_CASE("second stage only refines unknowns") {
  struct AlwaysSettings : SecondStageClassifier {
    std::optional<ControlClass> classify(const UINode&, const Snapshot&) const override {
      return ControlClass::Settings;
    }
  } second;
  SnapshotBuilder b;
  b.button("euph", "Manage experience", {10, 10, 100, 40});
  b.button("accept", "Accept all", {10, 60, 100, 40});
  const Snapshot s = b.build();
  CHECK(classify_control(s.node("euph"), lex(), &s, &second) == ControlClass::Settings);
  CHECK(classify_control(s.node("accept"), lex(), &s, &second) == ControlClass::Accept);
}

TEST_CASE("meaningful alternative rules") {
  SnapshotBuilder b;
  b.button("accept", "Accept all", {10, 10, 150, 44}).effects = {psi::test::dismiss()};
  b.button("reject", "Reject all", {200, 10, 150, 44});
  b.button("disabled", "Reject", {400, 10, 150, 44}).enabled = false;
  b.button("below", "Decline", {10, 1200, 150, 44});
  b.add("learn", Role::Expander, "Learn more", {10, 100, 150, 44}).effects = {psi::test::reveal("info")};
  b.add("info", Role::Text, "We use cookies.", {10, 160, 400, 20}).visible = false;
  b.button("empty_settings", "Settings", {600, 10, 150, 44}).effects = {psi::test::reveal("info")};
  b.button("settings", "Customize", {800, 10, 150, 44}).effects = {psi::test::navigate("p2")};
  b.pane("p2");
  b.add("t1", Role::Toggle, "Analytics", {10, 10, 60, 30}, "p2");
  b.scrollable(2000);
  const Snapshot s = b.build();

  const DetectionResult reject = detect(s, "reject");
  CHECK(reject.meaningful);
  CHECK(reject.controlClass == ControlClass::Reject);

  const DetectionResult disabled = detect(s, "disabled");
  CHECK_FALSE(disabled.meaningful);
  CHECK(has_reason(disabled, "disabled"));

  const DetectionResult below = detect(s, "below");
  CHECK_FALSE(below.meaningful);
  CHECK(has_reason(below, "offscreen"));

  const DetectionResult learn = detect(s, "learn");
  CHECK_FALSE(learn.meaningful);
  CHECK(has_reason(learn, "no-substantive-advance"));

  const DetectionResult emptySettings = detect(s, "empty_settings");
  CHECK_FALSE(emptySettings.meaningful);
  CHECK(has_reason(emptySettings, "no-substantive-advance"));

  CHECK(detect(s, "settings").meaningful);
  CHECK_FALSE(detect(s, "accept").meaningful);
  CHECK(has_reason(detect(s, "accept"), "not-non-accept"));

  const DetectionResult otherPane = detect(s, "t1");
  CHECK_FALSE(otherPane.meaningful);
  CHECK(otherPane.reasons == std::vector<std::string>{"inactive-pane"});
}

TEST_CASE("meaningful implies a non-accept class, for every control of every fixture") {
  for (const auto& f : load_fixture_corpus()) {
    for (TraversalPolicy p : {TraversalPolicy::Pointer, TraversalPolicy::Keyboard}) {
      const TraversalState state = TraversalState::initial(f.snapshot, p);
      for (const auto& n : f.snapshot.nodes) {
        if (!is_interactive(n.role)) continue;
        const DetectionResult r = is_meaningful_alternative(n, state, f.snapshot, lex());
        if (r.meaningful) {
          CAPTURE(f.id);
          CAPTURE(n.id);
          CHECK(is_non_accept_class(r.controlClass));
        }
      }
    }
  }
}

TEST_CASE("revealing more never un-qualifies a control") {
  for (const auto& f : load_fixture_corpus()) {
    const Snapshot& s = f.snapshot;
    const TraversalState base = TraversalState::initial(s, TraversalPolicy::Pointer);
    TraversalState extended = base;
    for (const auto& n : s.nodes) {
      for (const auto& e : n.effects) {
        if (e.kind == EffectKind::Reveal) extended.revealedNodes.insert(e.target);
      }
    }
    for (const auto& n : s.nodes) {
      if (!is_interactive(n.role)) continue;
      if (is_meaningful_alternative(n, base, s, lex()).meaningful) {
        CAPTURE(f.id);
        CAPTURE(n.id);
        CHECK(is_meaningful_alternative(n, extended, s, lex()).meaningful);
      }
    }
  }
}

TEST_CASE("keyboard reachability") {
  SnapshotBuilder b;
  b.button("accept", "Accept all", {10, 10, 150, 44});
  b.button("reject", "Reject all", {200, 10, 150, 44}).tabIndex = -1;
  const Snapshot s = b.build();
  CHECK(detect(s, "reject", TraversalPolicy::Pointer).meaningful);
  const DetectionResult kb = detect(s, "reject", TraversalPolicy::Keyboard);
  CHECK_FALSE(kb.meaningful);
  CHECK(has_reason(kb, "not-focusable"));
}

TEST_CASE("granularity exposure by archetype") {
  const auto cal = canonical_calibration();
  CHECK(granularity_exposed(generate_archetype(ArchetypeKind::CoPresent, cal.at(ArchetypeKind::CoPresent)),
                            TraversalPolicy::Pointer, lex()));
  CHECK_FALSE(granularity_exposed(generate_archetype(ArchetypeKind::ScrollWall, cal.at(ArchetypeKind::ScrollWall)),
                                  TraversalPolicy::Pointer, lex()));
  CHECK_FALSE(granularity_exposed(generate_archetype(ArchetypeKind::Accordion, cal.at(ArchetypeKind::Accordion)),
                                  TraversalPolicy::Pointer, lex()));
}

TEST_CASE("reversibility requires a persistent, enabled control") {
  auto build = [](bool present, bool enabled, bool insideSurface) {
    SnapshotBuilder b;
    b.button("accept", "Accept all", {10, 10, 150, 44});
    if (present) {
      UINode& link = b.add("change", Role::Link, "Change consent", {10, 850, 150, 28});
      link.enabled = enabled;
      if (!insideSurface) link.parentId.reset();
    }
    return b.build();
  };
  CHECK(detect_reversibility(build(true, true, false), lex()));
  CHECK_FALSE(detect_reversibility(build(false, true, false), lex()));
  CHECK_FALSE(detect_reversibility(build(true, false, false), lex()));
  CHECK_FALSE(detect_reversibility(build(true, true, true), lex()));
}

TEST_CASE("detector evaluation on the bundled corpus") {
  const auto corpus = load_fixture_corpus();
  const DetectorEvaluation ev = evaluate_detector(corpus, lex());
  CHECK(ev.fixtures == 60);
  const PrecisionRecall vis = precision_recall(ev.visibility);
  const PrecisionRecall act = precision_recall(ev.actionability);
  CHECK(*vis.precision >= 0.85);
  CHECK(*vis.recall >= 0.80);
  CHECK(*act.precision >= 0.80);
  CHECK(*act.recall >= 0.75);
  // The corpus is meant to contain detector failures, not only easy cases.
  CHECK(!ev.visibilityErrors.empty());
  CHECK(!ev.actionabilityErrors.empty());
}
