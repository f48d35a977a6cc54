#include "psi/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psi/kernels.hpp"
#include "psi/rng.hpp"
#include "psi/stats.hpp"
#include "psi/traversal.hpp"

namespace psi {

Snapshot perturb_viewport(const Snapshot& snapshot, double factor) {
  if (!(factor > 0.0)) throw std::domain_error("viewport factor must be positive");
  Snapshot out = snapshot;
  if (factor == 1.0) return out;
  out.viewport.height = static_cast<int>(std::lround(snapshot.viewport.height * factor));
  out.viewport.name.reset();  // the scaled viewport is no longer a named breakpoint
  if (out.surface.effectiveViewportHeight) {
    out.surface.effectiveViewportHeight =
        static_cast<int>(std::lround(*snapshot.surface.effectiveViewportHeight * factor));
  }
  const int evh = effective_viewport_height(out);
  if (out.surface.scrollable) {
    out.surface.scrollHeight = std::max(out.surface.scrollHeight, evh);
  } else {
    int bottom = 0;
    for (const auto& n : out.nodes) {
      if (out.in_subtree(n.id, out.surface.rootNodeId) || n.paneId != out.initial_pane().id) {
        bottom = std::max(bottom, n.bounds.bottom());
      }
    }
    if (bottom > evh) {
      out.surface.scrollable = true;
      out.surface.scrollHeight = bottom;
    }
  }
  out.finalize();
  return out;
}

Snapshot perturb_animation(const Snapshot& snapshot, int deltaMs) {
  if (deltaMs < 0) throw std::domain_error("animation delta must be >= 0");
  Snapshot out = snapshot;
  if (deltaMs == 0) return out;
  for (auto& n : out.nodes) {
    if (!is_interactive(n.role)) continue;
    if (n.animationMs > 0 || n.has_effect(EffectKind::Reveal) || n.has_effect(EffectKind::Navigate)) {
      n.animationMs += deltaMs;
    }
  }
  out.finalize();
  return out;
}

std::vector<PerturbationCell> perturbation_study(const std::map<ArchetypeKind, Snapshot>& snapshots,
                                                 const PerturbationSpec& spec, const LabelLexicon& lexicon,
                                                 TraversalPolicy policy, const WeightProfile& profile) {
  std::vector<PerturbationCell> out;
  const auto run = [&](ArchetypeKind kind, const Snapshot& s, double factor, int delta) {
    const EventTrace t = least_effort_traverse(s, policy, lexicon);
    PerturbationCell c;
    c.kind = kind;
    c.viewportFactor = factor;
    c.animationDeltaMs = delta;
    c.components = compute_components(t, s, lexicon);
    c.psi = compute_psi(c.components, profile);
    out.push_back(c);
  };
  for (const auto& [kind, snapshot] : snapshots) {
    run(kind, snapshot, 1.0, 0);
    for (double f : spec.viewportFactors) {
      if (f != 1.0) run(kind, perturb_viewport(snapshot, f), f, 0);
    }
    for (int d : spec.animationDeltasMs) {
      if (d != 0) run(kind, perturb_animation(snapshot, d), 1.0, d);
    }
  }
  return out;
}

ProfileSample sample_weight_profiles(int n, std::uint64_t seed, bool constrained, double concentration) {
  if (n <= 0) throw std::invalid_argument("profile count must be positive");
  if (!(concentration > 0.0)) throw std::invalid_argument("Dirichlet concentration must be positive");
  ProfileSample sample;
  sample.constrained = constrained;
  sample.seed = seed;
  sample.concentration = concentration;
  SplitMix64 rng(seed);
  while (static_cast<int>(sample.profiles.size()) < n) {
    std::array<double, 4> g{};
    double total = 0.0;
    for (double& x : g) {
      x = rng.gamma(concentration);
      total += x;
    }
    if (total <= 0.0) continue;
    for (double& x : g) x = 4.0 * x / total;
    if (constrained && *std::max_element(g.begin(), g.end()) > 2.0) continue;
    WeightProfile p{g[0], g[1], g[2], g[3], "dirichlet-" + std::to_string(sample.profiles.size())};
    sample.profiles.push_back(std::move(p));
  }
  return sample;
}

const std::vector<Claim>& all_claims() {
  static const std::vector<Claim> claims{Claim::CoPresentLowest, Claim::MultiStepHighest,
                                         Claim::KeyboardOverPointer, Claim::MobileOverDesktop,
                                         Claim::ScrollWallOverAccordion};
  return claims;
}

std::string_view to_string(Claim c) {
  switch (c) {
    case Claim::CoPresentLowest: return "co-present lowest";
    case Claim::MultiStepHighest: return "multi-step highest";
    case Claim::KeyboardOverPointer: return "keyboard > pointer";
    case Claim::MobileOverDesktop: return "mobile > desktop";
    case Claim::ScrollWallOverAccordion: return "scrollwall > accordion";
  }
  return "";
}

const ClaimSupport& RobustnessReport::at(Claim c) const {
  for (const auto& s : claims) {
    if (s.claim == c) return s;
  }
  throw std::out_of_range("claim not in report");
}

std::vector<std::optional<bool>> evaluate_claims(const std::vector<AuditRecord>& records,
                                                 const WeightProfile& profile) {
  std::map<ArchetypeKind, std::vector<double>> byKind;
  std::map<TraversalPolicy, std::vector<double>> byPolicy;
  std::map<std::string, std::vector<double>> byBreakpoint;
  for (const auto& r : records) {
    const double psi = compute_psi(r.components, profile);
    if (r.kind) byKind[*r.kind].push_back(psi);
    byPolicy[r.policy].push_back(psi);
    byBreakpoint[r.breakpoint].push_back(psi);
  }
  std::map<ArchetypeKind, double> kindMedian;
  for (auto& [k, v] : byKind) kindMedian[k] = median(v);

  const auto extreme = [&](ArchetypeKind target, bool lowest) -> std::optional<bool> {
    if (!kindMedian.count(target) || kindMedian.size() < 2) return std::nullopt;
    const double m = kindMedian.at(target);
    for (const auto& [k, v] : kindMedian) {
      if (k == target) continue;
      if (lowest ? !(m < v) : !(m > v)) return false;
    }
    return true;
  };
  const auto greater = [](auto& groups, const auto& hi, const auto& lo) -> std::optional<bool> {
    auto a = groups.find(hi);
    auto b = groups.find(lo);
    if (a == groups.end() || b == groups.end()) return std::nullopt;
    return median(a->second) > median(b->second);
  };

  std::vector<std::optional<bool>> out;
  for (Claim c : all_claims()) {
    switch (c) {
      case Claim::CoPresentLowest: out.push_back(extreme(ArchetypeKind::CoPresent, true)); break;
      case Claim::MultiStepHighest: out.push_back(extreme(ArchetypeKind::MultiStep, false)); break;
      case Claim::KeyboardOverPointer:
        out.push_back(greater(byPolicy, TraversalPolicy::Keyboard, TraversalPolicy::Pointer));
        break;
      case Claim::MobileOverDesktop:
        out.push_back(greater(byBreakpoint, std::string("mobile"), std::string("desktop")));
        break;
      case Claim::ScrollWallOverAccordion: {
        if (!kindMedian.count(ArchetypeKind::ScrollWall) || !kindMedian.count(ArchetypeKind::Accordion)) {
          out.push_back(std::nullopt);
        } else {
          out.push_back(kindMedian.at(ArchetypeKind::ScrollWall) > kindMedian.at(ArchetypeKind::Accordion));
        }
        break;
      }
    }
  }
  return out;
}

RobustnessReport rank_stability(const std::vector<AuditRecord>& records, const ProfileSample& sample) {
  return rank_stability_parallel(records, sample);
}

ShareTable component_shares(const std::vector<AuditRecord>& records, const WeightProfile& p) {
  std::map<ArchetypeKind, std::vector<const AuditRecord*>> groups;
  for (const auto& r : records) {
    if (r.kind) groups[*r.kind].push_back(&r);
  }
  ShareTable table;
  for (const auto& [kind, group] : groups) {
    std::array<double, 4> sums{};
    for (const AuditRecord* r : group) {
      sums[0] += p.alpha * r->components.distanceVh;
      sums[1] += p.beta * r->components.timeS;
      sums[2] += p.gamma * r->components.focusLoops;
      sums[3] += p.delta * r->components.hiddenReveals;
    }
    const double total = sums[0] + sums[1] + sums[2] + sums[3];
    if (total <= 0.0) {
      table[kind] = std::nullopt;
      continue;
    }
    // mean(component) / mean(PSI) == sum(component) / sum(PSI).
    std::array<double, 4> shares{};
    for (int i = 0; i < 4; ++i) shares[i] = sums[i] / total;
    table[kind] = shares;
  }
  return table;
}

}  // namespace psi
