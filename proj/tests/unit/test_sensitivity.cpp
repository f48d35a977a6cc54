#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "psi/archetype.hpp"
#include "psi/kernels.hpp"
#include "psi/report.hpp"
#include "psi/rng.hpp"
#include "psi/sensitivity.hpp"
#include "test_support.hpp"

using namespace psi;

namespace {

const LabelLexicon& lex() {
  static const LabelLexicon l = LabelLexicon::builtin();
  return l;
}

PsiComponents audit(const Snapshot& s, TraversalPolicy p = TraversalPolicy::Pointer) {
  return compute_components(least_effort_traverse(s, p, lex()), s, lex());
}

double psi_of(const Snapshot& s) { return compute_psi(audit(s), WeightProfile{}); }

Snapshot canonical(ArchetypeKind k) { return generate_archetype(k, canonical_calibration().at(k)); }

const std::vector<AuditRecord>& default_records() {
  static const std::vector<AuditRecord> records = batch_audit_parallel(
      generate_corpus(CorpusSpec::defaults()), {TraversalPolicy::Pointer, TraversalPolicy::Keyboard}, lex());
  return records;
}

AuditRecord record(std::string id, ArchetypeKind kind, std::string bp, TraversalPolicy p, PsiComponents c) {
  AuditRecord r;
  r.id = std::move(id);
  r.kind = kind;
  r.breakpoint = std::move(bp);
  r.policy = p;
  r.components = c;
  return r;
}

}  // namespace

TEST_CASE("viewport perturbation") {
  const Snapshot sw = canonical(ArchetypeKind::ScrollWall);
  const Snapshot taller = perturb_viewport(sw, 1.2);
  CHECK(taller.viewport.height == 1080);
  CHECK(taller.viewport.width == sw.viewport.width);
  CHECK(taller.nodes == sw.nodes);
  CHECK(perturb_viewport(sw, 1.0) == sw);
  CHECK_THROWS_AS(perturb_viewport(sw, 0.0), std::domain_error);
  CHECK(psi_of(taller) <= psi_of(sw));

  const Snapshot shorter = perturb_viewport(canonical(ArchetypeKind::CoPresent), 0.5);
  CHECK(shorter.viewport.height == 450);

  psi::test::SnapshotBuilder b;
  b.button("accept", "Accept all", {10, 10, 100, 40});
  b.scrollable(2000, 600);
  const Snapshot overridden = perturb_viewport(b.build(), 1.2);
  CHECK(overridden.surface.effectiveViewportHeight == 720);
}

TEST_CASE("animation perturbation") {
  const Snapshot sw = canonical(ArchetypeKind::ScrollWall);
  CHECK(perturb_animation(sw, 0) == sw);
  CHECK_THROWS_AS(perturb_animation(sw, -1), std::domain_error);
  CHECK(psi_of(perturb_animation(sw, 200)) > psi_of(sw));

  // A co-present surface whose route has no gate is unaffected.
  const Snapshot plain = psi::test::co_present_pair();
  CHECK(psi_of(perturb_animation(plain, 200)) == psi_of(plain));
}

TEST_CASE("perturbation monotonicity on generated archetypes") {
  SplitMix64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const ArchetypeKind kind = all_archetypes()[static_cast<std::size_t>(rng.uniform_int(0, 3))];
    ArchetypeParams p;
    p.animationMsPerGate = static_cast<int>(rng.uniform_int(0, 500));
    p.scrollDepthVh = kind == ArchetypeKind::ScrollWall ? rng.uniform(1.1, 4.0) : 0.0;
    p.paneCount = static_cast<int>(rng.uniform_int(2, 4));
    p.revealCount = static_cast<int>(rng.uniform_int(1, 3));
    const Snapshot s = generate_archetype(kind, p);
    const PsiComponents base = audit(s);
    const PsiComponents up = audit(perturb_viewport(s, 1.2));
    CHECK(up.distanceVh <= base.distanceVh + 1e-12);
    CHECK(up.focusLoops == base.focusLoops);
    CHECK(up.hiddenReveals == base.hiddenReveals);
    CHECK(audit(perturb_animation(s, static_cast<int>(rng.uniform_int(0, 300)))).timeS >= base.timeS);
  }
}

TEST_CASE("perturbation study layout") {
  std::map<ArchetypeKind, Snapshot> snaps;
  for (ArchetypeKind k : all_archetypes()) snaps.emplace(k, canonical(k));
  const auto cells = perturbation_study(snaps, PerturbationSpec{}, lex());
  CHECK(cells.size() == 4 * 5);
  for (ArchetypeKind k : all_archetypes()) {
    std::vector<const PerturbationCell*> mine;
    for (const auto& c : cells) {
      if (c.kind == k) mine.push_back(&c);
    }
    REQUIRE(mine.size() == 5);
    CHECK(mine[0]->viewportFactor == 1.0);
    CHECK(mine[0]->animationDeltaMs == 0);
    CHECK(mine[0]->psi == doctest::Approx(psi_of(snaps.at(k))));
    for (const auto* c : mine) {
      if (c->viewportFactor > 1.0) CHECK(c->psi <= mine[0]->psi);
      if (c->animationDeltaMs > 0) CHECK(c->psi >= mine[0]->psi);
    }
  }
}

TEST_CASE("Dirichlet weight profiles") {
  const ProfileSample free = sample_weight_profiles(500, 11);
  const ProfileSample bounded = sample_weight_profiles(500, 11, true);
  CHECK(free.profiles.size() == 500);
  bool anyAboveTwo = false;
  for (const auto& p : free.profiles) {
    CHECK(p.alpha + p.beta + p.gamma + p.delta == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::min({p.alpha, p.beta, p.gamma, p.delta}) >= 0.0);
    anyAboveTwo = anyAboveTwo || std::max({p.alpha, p.beta, p.gamma, p.delta}) > 2.0;
  }
  CHECK(anyAboveTwo);
  for (const auto& p : bounded.profiles) {
    CHECK(std::max({p.alpha, p.beta, p.gamma, p.delta}) <= 2.0);
    CHECK(std::abs(p.alpha + p.beta + p.gamma + p.delta - 4.0) < 1e-9);
  }
  const ProfileSample again = sample_weight_profiles(500, 11);
  for (std::size_t i = 0; i < free.profiles.size(); ++i) {
    CHECK(free.profiles[i].alpha == again.profiles[i].alpha);
    CHECK(free.profiles[i].delta == again.profiles[i].delta);
  }
  CHECK_THROWS_AS(sample_weight_profiles(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_weight_profiles(5, 1, false, 0.0), std::invalid_argument);
}

TEST_CASE("rank stability on the default corpus") {
  const RobustnessReport r = rank_stability(default_records(), sample_weight_profiles(1000, 7));
  CHECK(r.sampleCount == 1000);
  CHECK(r.at(Claim::CoPresentLowest).support() >= 0.95);
  CHECK(r.at(Claim::MultiStepHighest).support() >= 0.90);
  CHECK(r.at(Claim::KeyboardOverPointer).support() >= 0.90);
  for (const auto& c : r.claims) {
    CHECK(c.evaluable);
    CHECK(c.support() >= 0.0);
    CHECK(c.support() <= 1.0);
  }
}

TEST_CASE("support does not depend on record or profile order") {
  std::vector<AuditRecord> records = default_records();
  ProfileSample sample = sample_weight_profiles(200, 3);
  const RobustnessReport a = rank_stability(records, sample);
  SplitMix64 rng(1);
  for (std::size_t i = records.size() - 1; i > 0; --i) {
    std::swap(records[i], records[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)))]);
  }
  std::reverse(sample.profiles.begin(), sample.profiles.end());
  const RobustnessReport b = rank_stability(records, sample);
  for (Claim c : all_claims()) {
    CHECK(a.at(c).supporting == b.at(c).supporting);
    CHECK(a.at(c).evaluated == b.at(c).evaluated);
  }
}

TEST_CASE("degenerate and incomplete corpora") {
  PsiComponents same;
  same.distanceVh = 1.0;
  same.timeS = 1.0;
  std::vector<AuditRecord> flat;
  for (ArchetypeKind k : all_archetypes()) {
    for (const char* bp : {"desktop", "mobile"}) {
      for (TraversalPolicy p : {TraversalPolicy::Pointer, TraversalPolicy::Keyboard}) {
        flat.push_back(record("x", k, bp, p, same));
      }
    }
  }
  const RobustnessReport r = rank_stability(flat, sample_weight_profiles(50, 2));
  for (Claim c : all_claims()) {
    CHECK(r.at(c).evaluable);
    CHECK(r.at(c).supporting == 0);
  }

  std::vector<AuditRecord> pointerOnly;
  for (const auto& rec : flat) {
    if (rec.policy == TraversalPolicy::Pointer) pointerOnly.push_back(rec);
  }
  const RobustnessReport partial = rank_stability(pointerOnly, sample_weight_profiles(10, 2));
  CHECK_FALSE(partial.at(Claim::KeyboardOverPointer).evaluable);
  CHECK(partial.at(Claim::CoPresentLowest).evaluable);
}

TEST_CASE("component shares") {
  const ShareTable shares = component_shares(default_records(), WeightProfile{});
  for (const auto& [kind, row] : shares) {
    REQUIRE(row.has_value());
    CHECK(std::accumulate(row->begin(), row->end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
  }
  const auto& acc = *shares.at(ArchetypeKind::Accordion);
  CHECK(acc[3] == *std::max_element(acc.begin(), acc.end()));
  const auto& sw = *shares.at(ArchetypeKind::ScrollWall);
  CHECK(sw[0] == *std::max_element(sw.begin(), sw.end()));

  PsiComponents unit;
  unit.distanceVh = 1.0;
  const ShareTable single =
      component_shares({record("a", ArchetypeKind::CoPresent, "desktop", TraversalPolicy::Pointer, unit)}, WeightProfile{});
  CHECK(*single.at(ArchetypeKind::CoPresent) == std::array<double, 4>{1.0, 0.0, 0.0, 0.0});
  const ShareTable zero =
      component_shares({record("z", ArchetypeKind::CoPresent, "desktop", TraversalPolicy::Pointer, {})}, WeightProfile{});
  CHECK_FALSE(zero.at(ArchetypeKind::CoPresent).has_value());
}

TEST_CASE("re-weighting stored components equals re-auditing") {
  SplitMix64 rng(8);
  const auto items = generate_corpus([] {
    CorpusSpec s = CorpusSpec::defaults();
    s.countPerArchetype = 3;
    return s;
  }());
  for (const auto& item : items) {
    AuditConfig config;
    WeightProfile w;
    w.alpha = rng.uniform(0, 2);
    w.beta = rng.uniform(0, 2);
    w.gamma = rng.uniform(0, 2);
    w.delta = rng.uniform(0, 2);
    w.name = "w";
    config.profiles = {w};
    const AuditReport report = run_audit(item.snapshot, item.id, config, lex());
    const double stored = compute_psi(audit(item.snapshot), w);
    CHECK(report.results[0].psiByProfile[0].second == stored);
  }
}
