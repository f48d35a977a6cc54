#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "psi/fixtures.hpp"
#include "psi/report.hpp"
#include "test_support.hpp"

using namespace psi;
using psi::test::bundled_fixture;

namespace {

const LabelLexicon& lex() {
  static const LabelLexicon l = LabelLexicon::builtin();
  return l;
}

const std::vector<LabeledFixture>& corpus() {
  static const std::vector<LabeledFixture> fixtures = load_fixture_corpus();
  return fixtures;
}

std::string strip_of(const std::string& id, TraversalPolicy p) {
  const auto& f = bundled_fixture(id);
  return render_event_strip(least_effort_traverse(f.snapshot, p, lex()));
}

PsiComponents components_of(const std::string& id, TraversalPolicy p) {
  const auto& f = bundled_fixture(id);
  return compute_components(least_effort_traverse(f.snapshot, p, lex()), f.snapshot, lex());
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("psi_fixture_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("the bundled corpus loads completely") {
  CHECK(corpus().size() == 60);
  std::set<std::string> ids;
  int labeled = 0;
  for (const auto& f : corpus()) {
    CAPTURE(f.id);
    CHECK(ids.insert(f.id).second);
    CHECK_FALSE(f.tags.empty());
    CHECK(f.golden.count(TraversalPolicy::Pointer) == 1);
    CHECK(f.golden.count(TraversalPolicy::Keyboard) == 1);
    for (const auto& [nodeId, label] : f.labels) {
      CHECK(f.snapshot.find(nodeId) != nullptr);
      CHECK(label.controlClass != ControlClass::Unknown);
      ++labeled;
    }
  }
  CHECK(labeled >= 200);
  CHECK(bundled_fixture("censored").has_tag("censoring"));
}

TEST_CASE("golden outputs match the current engine") {
  const nlohmann::json fresh = bless_golden(corpus(), lex());
  std::ifstream in(default_fixture_dir() / "golden.json");
  REQUIRE(in);
  const nlohmann::json stored = nlohmann::json::parse(in);
  CHECK(canonical_json(fresh) == canonical_json(stored));

  for (const auto& f : corpus()) {
    CAPTURE(f.id);
    for (const auto& [policy, run] : f.golden) {
      const EventTrace t = least_effort_traverse(f.snapshot, policy, lex());
      CHECK(render_event_strip(t) == run.strip);
      CHECK(compute_components(t, f.snapshot, lex()) == run.components);
    }
  }
}

TEST_CASE("hand-written strips match engine output") {
  int checked = 0;
  for (const auto& f : corpus()) {
    for (const auto& [policy, expected] : f.expectedStrips) {
      CAPTURE(f.id);
      CAPTURE(to_string(policy));
      CHECK(render_event_strip(least_effort_traverse(f.snapshot, policy, lex())) == expected);
      ++checked;
    }
  }
  CHECK(checked >= 12);
}

TEST_CASE("reference strips and components") {
  CHECK(strip_of("vignette", TraversalPolicy::Pointer) == "EV_SCROLL -> EV_EXPAND -> EV_TOGGLE -> EV_ACTION");
  const PsiComponents v = components_of("vignette", TraversalPolicy::Pointer);
  CHECK(v.distanceVh == doctest::Approx(0.16));
  CHECK(v.timeS == doctest::Approx(0.308));
  CHECK(v.hiddenReveals == 1);

  CHECK(strip_of("accordion", TraversalPolicy::Pointer) == "EV_EXPAND -> EV_TOGGLE -> EV_ACTION");
  const PsiComponents a = components_of("accordion", TraversalPolicy::Pointer);
  CHECK(a.timeS == doctest::Approx(0.3));
  CHECK(a.hiddenReveals == 1);

  CHECK(strip_of("multistep", TraversalPolicy::Pointer) == "EV_ACTION -> EV_ACTION -> EV_TOGGLE -> EV_ACTION");
  const PsiComponents m = components_of("multistep", TraversalPolicy::Pointer);
  CHECK(m.timeS == doctest::Approx(0.4));
  CHECK(m.hiddenReveals == 2);

  const PsiComponents trap = components_of("multistep_trap", TraversalPolicy::Keyboard);
  CHECK(trap.focusLoops == 3);
  CHECK(trap.timeS == doctest::Approx(0.7));
  CHECK(least_effort_traverse(bundled_fixture("multistep_trap").snapshot, TraversalPolicy::Keyboard, lex())
            .events.size() == 7);

  CHECK(strip_of("co_trap", TraversalPolicy::Keyboard) == "EV_FOCUS_LOOP -> EV_ACTION");
  CHECK(strip_of("co_trap", TraversalPolicy::Pointer) == "EV_ACTION");
  CHECK(strip_of("copresent", TraversalPolicy::Pointer) == "EV_ACTION");
  CHECK(components_of("copresent", TraversalPolicy::Pointer).timeS == doctest::Approx(0.1));
  CHECK(strip_of("censored", TraversalPolicy::Pointer) == "[BUDGET_EXHAUSTED]");
}

TEST_CASE("detector agreement on the labeled corpus") {
  const DetectorEvaluation e = evaluate_detector(corpus(), lex());
  CHECK(e.fixtures == 60);
  CHECK(e.controls >= 200);
  const PrecisionRecall vis = precision_recall(e.visibility);
  const PrecisionRecall act = precision_recall(e.actionability);
  CHECK(*vis.precision >= 0.85);
  CHECK(*vis.recall >= 0.80);
  CHECK(*act.precision >= 0.80);
  CHECK(*act.recall >= 0.75);

  // The known misses come from wording outside the lexicon.
  CHECK_FALSE(e.visibilityErrors.empty());
  bool euphemismMiss = false;
  for (const auto& err : e.visibilityErrors) {
    const std::string fixture = err.substr(0, err.find(':'));
    euphemismMiss = euphemismMiss || bundled_fixture(fixture).has_tag("euphemism");
  }
  CHECK(euphemismMiss);

  // Predictions for controls the lexicon recognizes follow the detector.
  const auto& co = bundled_fixture("copresent");
  CHECK(predict_visible(co.snapshot.node("reject"), co.snapshot, lex()));
  CHECK(predict_actionable(co.snapshot.node("reject"), co.snapshot, lex()));
  CHECK_FALSE(predict_visible(co.snapshot.node("accept"), co.snapshot, lex()));
  CHECK_FALSE(predict_actionable(co.snapshot.node("accept"), co.snapshot, lex()));
}

TEST_CASE("label document comparison") {
  const nlohmann::json labels = {{"items",
                                  {{"a", {{"visible", true}, {"actionable", true}}},
                                   {"b", {{"visible", false}, {"actionable", true}}},
                                   {"c", {{"visible", true}, {"actionable", false}}}}}};
  const nlohmann::json predictions = {{"items",
                                       {{"a", {{"visible", true}, {"actionable", false}}},
                                        {"b", {{"visible", true}, {"actionable", true}}},
                                        {"c", {{"visible", true}, {"actionable", false}}}}}};
  const LabelComparison c = compare_label_documents(labels, predictions);
  CHECK(c.visibility.truePos == 2);
  CHECK(c.visibility.falsePos == 1);
  CHECK(c.visibility.falseNeg == 0);
  CHECK(c.visibility.trueNeg == 0);
  CHECK(c.actionability.truePos == 1);
  CHECK(c.actionability.falseNeg == 1);
  CHECK(c.actionability.trueNeg == 1);
  CHECK(c.actionability.falsePos == 0);

  nlohmann::json missing = predictions;
  missing["items"].erase("c");
  CHECK_THROWS_AS(compare_label_documents(labels, missing), std::invalid_argument);
  nlohmann::json extra = predictions;
  extra["items"]["d"] = {{"visible", true}, {"actionable", true}};
  CHECK_THROWS_AS(compare_label_documents(labels, extra), std::invalid_argument);
}

TEST_CASE("broken corpora fail the whole load") {
  CHECK_THROWS_AS(load_fixture_corpus(scratch_dir("empty")), FixtureError);

  const auto bad = scratch_dir("bad_manifest");
  write(bad / "manifest.json", "{\"fixtures\": 3}");
  CHECK_THROWS_AS(load_fixture_corpus(bad), FixtureError);

  // A label naming a node the snapshot does not contain.
  const auto dangling = scratch_dir("dangling");
  std::filesystem::create_directories(dangling / "snapshots");
  std::filesystem::copy_file(default_fixture_dir() / "snapshots" / "copresent.snapshot.json",
                             dangling / "snapshots" / "copresent.snapshot.json");
  std::ifstream in(default_fixture_dir() / "manifest.json");
  nlohmann::json manifest = nlohmann::json::parse(in);
  nlohmann::json entry;
  for (const auto& f : manifest.at("fixtures")) {
    if (f.at("id") == "copresent") entry = f;
  }
  entry["labels"]["ghost"] = entry["labels"]["reject"];
  write(dangling / "manifest.json", nlohmann::json{{"version", manifest.value("version", 1)},
                                                   {"fixtures", nlohmann::json::array({entry})}}
                                        .dump());
  try {
    load_fixture_corpus(dangling);
    FAIL("dangling label accepted");
  } catch (const FixtureError& e) {
    CHECK(std::string(e.what()).find("ghost") != std::string::npos);
  }

  // The same directory without the bad label loads, with no golden runs.
  entry["labels"].erase("ghost");
  write(dangling / "manifest.json", nlohmann::json{{"version", manifest.value("version", 1)},
                                                   {"fixtures", nlohmann::json::array({entry})}}
                                        .dump());
  const auto one = load_fixture_corpus(dangling);
  REQUIRE(one.size() == 1);
  CHECK(one[0].golden.empty());
}
