#include "psi/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "psi/detector.hpp"
#include "psi/report.hpp"

#ifndef PSI_FIXTURE_DIR
#define PSI_FIXTURE_DIR "fixtures/v1"
#endif
#ifndef PSI_DATA_DIR
#define PSI_DATA_DIR "data"
#endif

namespace psi {

using nlohmann::json;

bool LabeledFixture::has_tag(const std::string& tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

std::filesystem::path default_data_dir() { return PSI_DATA_DIR; }

std::filesystem::path default_fixture_dir() { return PSI_FIXTURE_DIR; }

namespace {

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FixtureError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::vector<LabeledFixture> load_fixture_corpus(const std::filesystem::path& dir) {
  const json manifest = read_json(dir / "manifest.json");
  json golden = json::object();
  if (std::filesystem::exists(dir / "golden.json")) golden = read_json(dir / "golden.json").at("fixtures");

  std::vector<LabeledFixture> out;
  try {
    for (const auto& e : manifest.at("fixtures")) {
      LabeledFixture f;
      f.id = e.at("id").get<std::string>();
      f.snapshotPath = dir / e.at("snapshot").get<std::string>();
      try {
        f.snapshot = load_snapshot(f.snapshotPath);
      } catch (const SnapshotError& err) {
        throw FixtureError("fixture '" + f.id + "': " + err.what());
      }
      f.note = e.value("note", "");
      f.tags = e.value("tags", std::vector<std::string>{});
      if (e.contains("archetype") && !e["archetype"].is_null()) {
        f.archetype = archetype_from_string(e["archetype"].get<std::string>());
      }
      for (const auto& [nodeId, l] : e.at("labels").items()) {
        if (!f.snapshot.find(nodeId)) {
          throw FixtureError("fixture '" + f.id + "' labels missing node '" + nodeId + "'");
        }
        ControlLabel label;
        label.visibleAtFirstViewport = l.at("visibleAtFirstViewport").get<bool>();
        label.actionableOneInteraction = l.at("actionableOneInteraction").get<bool>();
        label.controlClass = control_class_from_string(l.at("controlClass").get<std::string>());
        f.labels.emplace(nodeId, label);
      }
      const json strips = e.value("expectedStrips", json::object());
      for (const auto& [policy, strip] : strips.items()) {
        f.expectedStrips[policy_from_string(policy)] = strip.get<std::string>();
      }
      if (golden.contains(f.id)) {
        for (const auto& [policy, run] : golden[f.id].items()) {
          f.golden[policy_from_string(policy)] = {run.at("strip").get<std::string>(),
                                                  components_from_json(run.at("components"))};
        }
      }
      out.push_back(std::move(f));
    }
  } catch (const json::exception& err) {
    throw FixtureError(std::string("malformed fixture manifest: ") + err.what());
  } catch (const std::invalid_argument& err) {
    throw FixtureError(std::string("malformed fixture manifest: ") + err.what());
  }
  return out;
}

json bless_golden(const std::vector<LabeledFixture>& fixtures, const LabelLexicon& lexicon) {
  json all = json::object();
  for (const auto& f : fixtures) {
    for (TraversalPolicy p : {TraversalPolicy::Pointer, TraversalPolicy::Keyboard}) {
      const EventTrace t = least_effort_traverse(f.snapshot, p, lexicon);
      all[f.id][std::string(to_string(p))] = {{"strip", render_event_strip(t)},
                                              {"components", components_to_json(compute_components(t, f.snapshot, lexicon))}};
    }
  }
  return {{"version", 1}, {"fixtures", std::move(all)}};
}

bool predict_visible(const UINode& node, const Snapshot& snapshot, const LabelLexicon& lexicon) {
  const TraversalState state = TraversalState::initial(snapshot, TraversalPolicy::Pointer);
  return node.paneId == state.activePane && is_non_accept_class(classify_control(node, lexicon)) &&
         is_rendered(node, state, snapshot) && fits_viewport(node.bounds, 0, snapshot);
}

bool predict_actionable(const UINode& node, const Snapshot& snapshot, const LabelLexicon& lexicon) {
  const TraversalState state = TraversalState::initial(snapshot, TraversalPolicy::Pointer);
  return is_meaningful_alternative(node, state, snapshot, lexicon).meaningful;
}

namespace {

void tally(Confusion2x2& c, bool truth, bool predicted) {
  if (truth && predicted) ++c.truePos;
  else if (!truth && predicted) ++c.falsePos;
  else if (truth && !predicted) ++c.falseNeg;
  else ++c.trueNeg;
}

}  // namespace

DetectorEvaluation evaluate_detector(const std::vector<LabeledFixture>& fixtures, const LabelLexicon& lexicon) {
  DetectorEvaluation ev;
  for (const auto& f : fixtures) {
    ++ev.fixtures;
    for (const auto& [nodeId, label] : f.labels) {
      const UINode& node = f.snapshot.node(nodeId);
      const bool vis = predict_visible(node, f.snapshot, lexicon);
      const bool act = predict_actionable(node, f.snapshot, lexicon);
      tally(ev.visibility, label.visibleAtFirstViewport, vis);
      tally(ev.actionability, label.actionableOneInteraction, act);
      if (vis != label.visibleAtFirstViewport) ev.visibilityErrors.push_back(f.id + ":" + nodeId);
      if (act != label.actionableOneInteraction) ev.actionabilityErrors.push_back(f.id + ":" + nodeId);
      ++ev.controls;
    }
  }
  return ev;
}

LabelComparison compare_label_documents(const json& labels, const json& predictions) {
  LabelComparison out;
  const json& truth = labels.at("items");
  const json& pred = predictions.at("items");
  for (const auto& [id, t] : truth.items()) {
    if (!pred.contains(id)) throw std::invalid_argument("predictions lack item '" + id + "'");
    const json& p = pred.at(id);
    tally(out.visibility, t.at("visible").get<bool>(), p.at("visible").get<bool>());
    tally(out.actionability, t.at("actionable").get<bool>(), p.at("actionable").get<bool>());
  }
  for (const auto& [id, p] : pred.items()) {
    if (!truth.contains(id)) throw std::invalid_argument("labels lack item '" + id + "'");
  }
  return out;
}

}  // namespace psi
