#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "psi/archetype.hpp"
#include "psi/fixtures.hpp"
#include "psi/rng.hpp"
#include "psi/scoring.hpp"
#include "psi/stats.hpp"

using namespace psi;

namespace {

const LabelLexicon& lex() {
  static const LabelLexicon l = LabelLexicon::builtin();
  return l;
}

PsiComponents audit(const Snapshot& s, TraversalPolicy p = TraversalPolicy::Pointer) {
  return compute_components(least_effort_traverse(s, p, lex()), s, lex());
}

double psi_of(const Snapshot& s, TraversalPolicy p = TraversalPolicy::Pointer) {
  return compute_psi(audit(s, p), WeightProfile{});
}

}  // namespace

TEST_CASE("SplitMix64 reference outputs") {
  // Published test vector for seed 1234567.
  SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  CHECK(rng.next() == 9817491932198370423ULL);
  CHECK(rng.next() == 4593380528125082431ULL);
  CHECK(rng.next() == 16408922859458223821ULL);
}

TEST_CASE("SplitMix64 sampling routines") {
  SplitMix64 rng(7);
  double sum = 0.0, sumsq = 0.0, gsum = 0.0;
  std::set<std::int64_t> seen;
  constexpr int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const std::int64_t k = rng.uniform_int(-2, 2);
    CHECK(k >= -2);
    CHECK(k <= 2);
    seen.insert(k);
    const double z = rng.normal();
    sum += z;
    sumsq += z * z;
    gsum += rng.gamma(0.5);
  }
  CHECK(seen.size() == 5);
  CHECK(sum / n == doctest::Approx(0.0).epsilon(0.05).scale(1.0));
  CHECK(sumsq / n == doctest::Approx(1.0).epsilon(0.05));
  CHECK(gsum / n == doctest::Approx(0.5).epsilon(0.05));
  CHECK_THROWS_AS(rng.uniform_int(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(rng.gamma(0.0), std::invalid_argument);

  CHECK(SplitMix64::derive(42, 1) != SplitMix64::derive(42, 2));
  CHECK(SplitMix64::derive(42, 1) == SplitMix64::derive(42, 1));
}

TEST_CASE("canonical calibration reproduces the reference ranking") {
  const auto cal = canonical_calibration();
  const double sw = psi_of(generate_archetype(ArchetypeKind::ScrollWall, cal.at(ArchetypeKind::ScrollWall)));
  const double acc = psi_of(generate_archetype(ArchetypeKind::Accordion, cal.at(ArchetypeKind::Accordion)));
  const double ms = psi_of(generate_archetype(ArchetypeKind::MultiStep, cal.at(ArchetypeKind::MultiStep)));
  const double co = psi_of(generate_archetype(ArchetypeKind::CoPresent, cal.at(ArchetypeKind::CoPresent)));
  CHECK(std::abs(sw - 2.33) <= 0.15);
  CHECK(std::abs(acc - 1.72) <= 0.15);
  CHECK(std::abs(ms - 1.58) <= 0.15);
  CHECK(std::abs(co - 0.87) <= 0.15);
  CHECK(sw > acc);
  CHECK(acc > ms);
  CHECK(ms > co);
}

TEST_CASE("bundled calibration file mirrors the built-in calibration") {
  std::ifstream in(default_data_dir() / "calibration.json");
  REQUIRE(in);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(parse_calibration(text.str()) == canonical_calibration());
  CHECK(calibration_to_json(canonical_calibration()) == text.str());
  CHECK_THROWS_AS(parse_calibration("{\"version\": 1, \"archetypes\": {\"NOPE\": {}}}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_calibration("[]"), std::invalid_argument);
}

TEST_CASE("archetype examples") {
  const ArchetypeParams defaults;
  const Snapshot co = generate_archetype(ArchetypeKind::CoPresent, defaults);
  CHECK(granularity_exposed(co, TraversalPolicy::Pointer, lex()));
  const PsiComponents coc = audit(co);
  CHECK(coc.distanceVh == 0.0);
  CHECK(coc.hiddenReveals == 0);

  const Snapshot acc = generate_archetype(ArchetypeKind::Accordion, defaults);
  CHECK(render_event_strip(least_effort_traverse(acc, TraversalPolicy::Pointer, lex())) ==
        "EV_EXPAND -> EV_TOGGLE -> EV_ACTION");

  ArchetypeParams trap;
  trap.paneCount = 2;
  trap.focusTrap = true;
  const Snapshot ms = generate_archetype(ArchetypeKind::MultiStep, trap);
  CHECK(psi_of(ms, TraversalPolicy::Keyboard) > psi_of(ms, TraversalPolicy::Pointer));
}

TEST_CASE("invalid parameters are rejected") {
  ArchetypeParams p;
  p.scrollDepthVh = 0.5;
  CHECK_THROWS_AS(generate_archetype(ArchetypeKind::ScrollWall, p), std::domain_error);
  ArchetypeParams panes;
  panes.paneCount = 1;
  CHECK_THROWS_AS(generate_archetype(ArchetypeKind::MultiStep, panes), std::domain_error);
  ArchetypeParams reveals;
  reveals.revealCount = 0;
  CHECK_THROWS_AS(generate_archetype(ArchetypeKind::Accordion, reveals), std::domain_error);
  ArchetypeParams bp;
  bp.breakpoint = "tablet";
  CHECK_THROWS_AS(generate_archetype(ArchetypeKind::CoPresent, bp), std::domain_error);
  CHECK_THROWS_AS(archetype_from_string("POPUP"), std::invalid_argument);
  CHECK(archetype_from_string("MULTI_STEP") == ArchetypeKind::MultiStep);
}

TEST_CASE("every generated snapshot carries the same control inventory") {
  CorpusSpec spec = CorpusSpec::defaults();
  spec.countPerArchetype = 10;
  for (const auto& item : generate_corpus(spec)) {
    CAPTURE(item.id);
    std::map<ControlClass, int> classes;
    int toggles = 0;
    for (const auto& n : item.snapshot.nodes) {
      if (!is_interactive(n.role)) continue;
      if (is_toggle_role(n.role)) {
        ++toggles;
        continue;
      }
      ++classes[lex().match(n.name())];
    }
    CHECK(classes[ControlClass::Accept] == 1);
    CHECK(classes[ControlClass::Reject] == 1);
    CHECK(classes[ControlClass::Settings] >= 1);
    CHECK(classes[ControlClass::Save] == 1);
    CHECK(classes[ControlClass::Reversibility] == 1);
    CHECK(toggles == 3);
  }
}

TEST_CASE("corpus generation is seeded and reproducible") {
  CorpusSpec spec = CorpusSpec::defaults();
  spec.countPerArchetype = 5;
  const auto a = generate_corpus(spec);
  const auto b = generate_corpus(spec);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() == 5 * 4 * 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].params == b[i].params);
    CHECK(serialize_snapshot(a[i].snapshot) == serialize_snapshot(b[i].snapshot));
  }
  spec.seed = 43;
  const auto c = generate_corpus(spec);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs = differs || !(a[i].params == c[i].params);
  CHECK(differs);

  // One site shares its parameters across breakpoints.
  CHECK(a[0].site == a[1].site);
  CHECK(a[0].params.breakpoint != a[1].params.breakpoint);
  CHECK(a[0].params.scrollDepthVh == a[1].params.scrollDepthVh);
}

TEST_CASE("corpus spec validation") {
  CorpusSpec spec = CorpusSpec::defaults();
  CHECK_NOTHROW(validate_corpus_spec(spec));
  spec.countPerArchetype = 0;
  CHECK_THROWS_AS(validate_corpus_spec(spec), std::invalid_argument);
  spec = CorpusSpec::defaults();
  spec.breakpoints = {};
  CHECK_THROWS_AS(validate_corpus_spec(spec), std::invalid_argument);
  spec = CorpusSpec::defaults();
  spec.distributions[ArchetypeKind::ScrollWall].scrollDepthVh = {3.0, 2.0};
  CHECK_THROWS_AS(validate_corpus_spec(spec), std::invalid_argument);
}

TEST_CASE("structural properties of generated corpora") {
  const auto items = generate_corpus(CorpusSpec::defaults());
  std::map<std::string, std::vector<double>> byGroup;
  for (const auto& item : items) {
    CAPTURE(item.id);
    const bool exposed = granularity_exposed(item.snapshot, TraversalPolicy::Pointer, lex());
    if (item.kind == ArchetypeKind::CoPresent) CHECK(exposed);
    if (item.kind == ArchetypeKind::ScrollWall) CHECK_FALSE(exposed);
    const PsiComponents pointer = audit(item.snapshot, TraversalPolicy::Pointer);
    const PsiComponents keyboard = audit(item.snapshot, TraversalPolicy::Keyboard);
    if (!item.params.focusTrap) {
      CHECK(pointer.focusLoops == 0);
      CHECK(keyboard.focusLoops == 0);
    }
    const std::string kind(to_string(item.kind));
    const double pp = compute_psi(pointer, WeightProfile{});
    const double kp = compute_psi(keyboard, WeightProfile{});
    byGroup[kind].push_back(pp);
    byGroup[kind].push_back(kp);
    byGroup[kind + "/" + item.params.breakpoint].push_back(pp);
    byGroup[kind + "/" + item.params.breakpoint].push_back(kp);
    byGroup["pointer"].push_back(pp);
    byGroup["keyboard"].push_back(kp);
  }
  CHECK(median(byGroup["CO_PRESENT"]) < median(byGroup["SCROLL_WALL"]));
  CHECK(median(byGroup["SCROLL_WALL"]) < median(byGroup["ACCORDION"]));
  CHECK(median(byGroup["ACCORDION"]) < median(byGroup["MULTI_STEP"]));
  CHECK(median(byGroup["keyboard"]) > median(byGroup["pointer"]));
  // Breakpoints differ only in how far the route scrolls, so kinds that never
  // scroll tie; the others must be strictly heavier on mobile.
  for (const std::string kind : {"SCROLL_WALL", "ACCORDION", "MULTI_STEP", "CO_PRESENT"}) {
    CAPTURE(kind);
    CHECK(median(byGroup[kind + "/mobile"]) >= median(byGroup[kind + "/desktop"]));
  }
  for (const std::string kind : {"SCROLL_WALL", "MULTI_STEP"}) {
    CAPTURE(kind);
    CHECK(median(byGroup[kind + "/mobile"]) > median(byGroup[kind + "/desktop"]));
  }
  std::vector<double> mobile, desktop;
  for (const std::string kind : {"SCROLL_WALL", "ACCORDION", "MULTI_STEP", "CO_PRESENT"}) {
    for (double v : byGroup[kind + "/mobile"]) mobile.push_back(v);
    for (double v : byGroup[kind + "/desktop"]) desktop.push_back(v);
  }
  CHECK(median(mobile) > median(desktop));
}
