#pragma once

// Viewport and animation perturbations, Dirichlet weighting profiles and the
// rank-stability study over stored audit components.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psi/archetype.hpp"
#include "psi/interaction.hpp"
#include "psi/scoring.hpp"
#include "psi/snapshot.hpp"

namespace psi {

struct PerturbationSpec {
  std::vector<double> viewportFactors{0.8, 1.0, 1.2};
  std::vector<int> animationDeltasMs{0, 100, 200};
};

// Scales the viewport height (and effectiveViewportHeight when present),
// rounding to whole pixels; node geometry is untouched. A surface whose
// content no longer fits becomes scrollable. Factor 1 returns the input.
// Throws std::domain_error for factor <= 0.
Snapshot perturb_viewport(const Snapshot& snapshot, double factor);

// Adds deltaMs to every gating control: one with a captured animation or
// one whose activation reveals content or changes pane. Throws
// std::domain_error for negative deltas.
Snapshot perturb_animation(const Snapshot& snapshot, int deltaMs);

// One cell of the perturbation table: an archetype's PSI with the viewport
// scaled by `viewportFactor` and `animationDeltaMs` added to every gate.
struct PerturbationCell {
  ArchetypeKind kind = ArchetypeKind::CoPresent;
  double viewportFactor = 1.0;
  int animationDeltaMs = 0;
  PsiComponents components;
  double psi = 0.0;
};

// Every (archetype, viewport factor) and (archetype, animation delta)
// combination for the given archetype snapshots, one axis varied at a time;
// the unperturbed baseline appears once per archetype, first.
std::vector<PerturbationCell> perturbation_study(const std::map<ArchetypeKind, Snapshot>& snapshots,
                                                 const PerturbationSpec& spec, const LabelLexicon& lexicon,
                                                 TraversalPolicy policy = TraversalPolicy::Pointer,
                                                 const WeightProfile& profile = {});

struct ProfileSample {
  std::vector<WeightProfile> profiles;
  bool constrained = false;
  std::uint64_t seed = 0;
  double concentration = 1.0;
};

// Symmetric Dirichlet(concentration) draws scaled to sum to 4. Constrained
// mode rejects and redraws any draw with a weight above 2.
ProfileSample sample_weight_profiles(int n, std::uint64_t seed, bool constrained = false,
                                     double concentration = 1.0);

// One audited snapshot, reduced to what re-weighting needs.
struct AuditRecord {
  std::string id;
  std::optional<ArchetypeKind> kind;
  std::string breakpoint;
  TraversalPolicy policy = TraversalPolicy::Pointer;
  PsiComponents components;
};

enum class Claim { CoPresentLowest, MultiStepHighest, KeyboardOverPointer, MobileOverDesktop, ScrollWallOverAccordion };
const std::vector<Claim>& all_claims();
std::string_view to_string(Claim c);  // "co-present lowest", ...

// Outcome of every claim under one profile: true/false, or empty when the
// records do not cover the conditions the claim compares. Claims compare
// medians of pooled PSI values.
std::vector<std::optional<bool>> evaluate_claims(const std::vector<AuditRecord>& records,
                                                 const WeightProfile& profile);

struct ClaimSupport {
  Claim claim = Claim::CoPresentLowest;
  bool evaluable = false;
  int supporting = 0;
  int evaluated = 0;
  double support() const { return evaluated ? static_cast<double>(supporting) / evaluated : 0.0; }
};

struct RobustnessReport {
  std::vector<ClaimSupport> claims;
  int sampleCount = 0;
  std::uint64_t seed = 0;
  bool constrained = false;
  double concentration = 1.0;

  const ClaimSupport& at(Claim c) const;
};

// Parallel over profiles when built with OpenMP; the result does not depend
// on thread count or on the order of records and profiles.
RobustnessReport rank_stability(const std::vector<AuditRecord>& records, const ProfileSample& sample);

// Per archetype: mean weighted component / mean PSI, in (D, T, F, H) order.
// Empty when the group's mean PSI is zero.
using ShareTable = std::map<ArchetypeKind, std::optional<std::array<double, 4>>>;
ShareTable component_shares(const std::vector<AuditRecord>& records, const WeightProfile& profile);

}  // namespace psi
