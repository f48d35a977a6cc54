#pragma once

// Parameterized snapshots of the four canonical consent-surface archetypes
// and seeded synthetic corpora built from them.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "psi/interaction.hpp"
#include "psi/snapshot.hpp"

namespace psi {

enum class ArchetypeKind { ScrollWall, Accordion, MultiStep, CoPresent };

std::string_view to_string(ArchetypeKind k);  // SCROLL_WALL, ACCORDION, MULTI_STEP, CO_PRESENT
ArchetypeKind archetype_from_string(std::string_view s);  // throws std::invalid_argument
const std::vector<ArchetypeKind>& all_archetypes();

struct ArchetypeParams {
  double scrollDepthVh = 0.0;  // SCROLL_WALL: reject's bottom edge, in desktop viewports;
                               // MULTI_STEP: purpose text on the final pane
  int revealCount = 1;         // ACCORDION: nested disclosure levels
  int paneCount = 3;           // MULTI_STEP
  int animationMsPerGate = 0;  // expanders, pane transitions and commit controls
  bool focusTrap = false;      // cyclic tab group ahead of the route
  std::string breakpoint = "desktop";

  bool operator==(const ArchetypeParams&) const = default;
};

// Throws std::domain_error when params do not fit the kind.
void validate_params(ArchetypeKind kind, const ArchetypeParams& params);

// Deterministic snapshot. Every kind carries the same inventory: title,
// intro, accept, reject, settings, three toggles with one-sentence
// rationales, save, and a persistent change-consent link outside the
// surface; only placement, disclosure and pane structure differ.
Snapshot generate_archetype(ArchetypeKind kind, const ArchetypeParams& params, std::uint64_t seed = 0);

// Desktop parameters whose pointer-policy, equal-weight PSI sits at
// 2.33 / 1.72 / 1.58 / 0.87 (within 0.15) for Scroll Wall / Accordion /
// Multi-step / Co-present.
std::map<ArchetypeKind, ArchetypeParams> canonical_calibration();

// Calibration documents (data/calibration.json):
// {"version": 1, "archetypes": {"SCROLL_WALL": {params...}, ...}}.
// Throws std::invalid_argument on malformed input or invalid params.
std::map<ArchetypeKind, ArchetypeParams> parse_calibration(std::string_view document);
std::string calibration_to_json(const std::map<ArchetypeKind, ArchetypeParams>& calibration);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct KindDistribution {
  Range scrollDepthVh;            // SCROLL_WALL, MULTI_STEP
  std::vector<double> revealCountWeights;  // ACCORDION: P(revealCount = 1, 2, ...)
  Range paneCount;                // MULTI_STEP, integer bounds inclusive
  Range animationMs;
  double focusTrapProbability = 0.0;
};

struct CorpusSpec {
  int countPerArchetype = 50;
  std::uint64_t seed = 42;
  std::vector<std::string> breakpoints{"desktop", "mobile"};
  std::vector<TraversalPolicy> policies{TraversalPolicy::Pointer, TraversalPolicy::Keyboard};
  std::map<ArchetypeKind, KindDistribution> distributions;

  // The bundled, tuned distributions.
  static CorpusSpec defaults();
};

void validate_corpus_spec(const CorpusSpec& spec);  // throws std::invalid_argument

struct CorpusItem {
  std::string id;  // e.g. "accordion-007-mobile"
  ArchetypeKind kind = ArchetypeKind::CoPresent;
  int site = 0;  // items from one site share parameters across breakpoints
  std::uint64_t seed = 0;
  ArchetypeParams params;
  Snapshot snapshot;
};

// Sites are drawn per archetype from independent derived streams, then
// rendered at every breakpoint. Items are ordered by archetype, site,
// breakpoint.
std::vector<CorpusItem> generate_corpus(const CorpusSpec& spec);

}  // namespace psi
