#pragma once

// The bundled labeled fixture corpus: authored snapshots with per-control
// ground truth, hand-written expected strips, and golden engine outputs.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "psi/archetype.hpp"
#include "psi/lexicon.hpp"
#include "psi/scoring.hpp"
#include "psi/snapshot.hpp"
#include "psi/stats.hpp"
#include "psi/traversal.hpp"

namespace psi {

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ControlLabel {
  bool visibleAtFirstViewport = false;
  bool actionableOneInteraction = false;
  ControlClass controlClass = ControlClass::Unknown;
};

struct GoldenRun {
  std::string strip;
  PsiComponents components;
};

struct LabeledFixture {
  std::string id;
  std::filesystem::path snapshotPath;
  Snapshot snapshot;
  std::string note;
  std::vector<std::string> tags;
  std::optional<ArchetypeKind> archetype;
  std::map<std::string, ControlLabel> labels;                 // by node id
  std::map<TraversalPolicy, std::string> expectedStrips;      // hand-written
  std::map<TraversalPolicy, GoldenRun> golden;                 // recorded engine output

  bool has_tag(const std::string& tag) const;
};

// Directory of the bundled data files (lexicon.json, calibration.json).
std::filesystem::path default_data_dir();

// Directory of the bundled corpus (manifest.json, golden.json, snapshots/).
std::filesystem::path default_fixture_dir();

// Loads every fixture in the manifest plus golden.json when present. Any
// unreadable or invalid fixture, or a label naming a missing node, fails
// the whole load with FixtureError.
std::vector<LabeledFixture> load_fixture_corpus(const std::filesystem::path& dir = default_fixture_dir());

// Engine output for every fixture and both policies, in golden.json form.
nlohmann::json bless_golden(const std::vector<LabeledFixture>& fixtures, const LabelLexicon& lexicon);

// Detector predictions for one labeled control at first encounter.
// Visibility: a REJECT/SETTINGS/SAVE control that renders and fits the first
// viewport. Actionability: a meaningful alternative at the initial state.
bool predict_visible(const UINode& node, const Snapshot& snapshot, const LabelLexicon& lexicon);
bool predict_actionable(const UINode& node, const Snapshot& snapshot, const LabelLexicon& lexicon);

struct DetectorEvaluation {
  Confusion2x2 visibility;
  Confusion2x2 actionability;
  int fixtures = 0;
  int controls = 0;
  // Fixture/node ids the detector got wrong, as "fixture:node".
  std::vector<std::string> visibilityErrors;
  std::vector<std::string> actionabilityErrors;
};

DetectorEvaluation evaluate_detector(const std::vector<LabeledFixture>& fixtures, const LabelLexicon& lexicon);

// Confusion table from item-level label/prediction documents of the form
// {"items": {"<id>": {"visible": bool, "actionable": bool}}}. Items missing
// from either side are an error.
struct LabelComparison {
  Confusion2x2 visibility;
  Confusion2x2 actionability;
};
LabelComparison compare_label_documents(const nlohmann::json& labels, const nlohmann::json& predictions);

}  // namespace psi
