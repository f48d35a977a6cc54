#include "psi/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "psi/archetype.hpp"

namespace psi {

using nlohmann::json;

namespace {

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string fmt(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

json rect_json(const Rect& r) { return {{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}}; }

json opt_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

}  // namespace

void validate_config(const AuditConfig& c) {
  if (c.policies.empty()) throw std::invalid_argument("at least one traversal policy is required");
  if (c.profiles.empty()) throw std::invalid_argument("at least one weight profile is required");
  std::set<std::string> names;
  for (const auto& p : c.profiles) {
    if (!names.insert(p.name).second) throw std::invalid_argument("duplicate profile '" + p.name + "'");
    for (double w : {p.alpha, p.beta, p.gamma, p.delta}) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw std::invalid_argument("profile '" + p.name + "' has a negative or non-finite weight");
      }
    }
  }
  if (c.breakpoint) named_viewport(*c.breakpoint);
  if (c.budget.maxInteractions <= 0 || c.budget.maxPaneDepth <= 0 || c.budget.maxStates <= 0 ||
      c.budget.waitBudgetMs < 0) {
    throw std::invalid_argument("budget limits must be positive");
  }
  if (!(c.timing.handlingS > 0) || !(c.timing.scrollSecondsPerViewport > 0) || !(c.timing.focusEscapeS > 0)) {
    throw std::invalid_argument("timing constants must be positive");
  }
}

std::vector<TraversalPolicy> parse_policy_list(const std::string& text) {
  if (text == "both") return {TraversalPolicy::Pointer, TraversalPolicy::Keyboard};
  return {policy_from_string(text)};
}

std::vector<WeightProfile> parse_profile_list(const std::string& text) {
  std::vector<WeightProfile> out;
  for (const auto& name : split_csv(text)) out.push_back(named_profile(name));
  return out;
}

TraversalState state_before_terminal(const EventTrace& trace, const Snapshot& snapshot) {
  TraversalState state = TraversalState::initial(snapshot, trace.policy);
  const std::size_t n = trace.events.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const AuditEvent& e = trace.events[i];
    if (e.kind == EventKind::Scroll || e.kind == EventKind::FocusLoop) {
      state.scrollOffset = e.scrollOffset;
      continue;
    }
    state = apply_effects(state, snapshot.node(*e.nodeId));
  }
  if (n > 0) state.scrollOffset = trace.events.back().scrollOffset;
  return state;
}

std::optional<EvidenceFrame> build_evidence(const EventTrace& trace, const Snapshot& snapshot,
                                            const LabelLexicon& lexicon) {
  if (trace.censored() || trace.events.empty() || !trace.terminalNodeId) return std::nullopt;
  const TraversalState state = state_before_terminal(trace, snapshot);
  const UINode& node = snapshot.node(*trace.terminalNodeId);
  DetectionResult d = is_meaningful_alternative(node, state, snapshot, lexicon);
  if (!d.meaningful) {
    throw std::logic_error("terminal control '" + node.id + "' is not a meaningful alternative on replay");
  }
  EvidenceFrame f;
  f.nodeId = node.id;
  f.paneId = node.paneId;
  f.bounds = node.bounds;
  f.scrollOffset = state.scrollOffset;
  f.stepIndex = static_cast<int>(trace.events.size()) - 1;
  f.reasons = std::move(d.reasons);
  return f;
}

bool AuditReport::any_censored() const {
  return std::any_of(results.begin(), results.end(), [](const PolicyResult& r) { return r.trace.censored(); });
}

AuditReport run_audit(const Snapshot& snapshot, const std::string& snapshotId, const AuditConfig& config,
                      const LabelLexicon& lexicon) {
  validate_config(config);
  AuditReport r;
  r.snapshotId = snapshotId;
  r.source = snapshot.meta.source;
  r.breakpoint = !snapshot.meta.breakpoint.empty() ? snapshot.meta.breakpoint : snapshot.viewport.name.value_or("");
  r.viewport = snapshot.viewport;
  r.config = config;
  r.snapshotFlags = snapshot.flags;
  if (config.breakpoint && !r.breakpoint.empty() && *config.breakpoint != r.breakpoint) {
    throw std::invalid_argument("snapshot '" + snapshotId + "' was captured at breakpoint '" + r.breakpoint +
                                "', not '" + *config.breakpoint + "'");
  }
  for (TraversalPolicy policy : config.policies) {
    PolicyResult res;
    res.policy = policy;
    try {
      res.trace = least_effort_traverse(snapshot, policy, lexicon, config.budget, config.timing);
    } catch (const AuditError& e) {
      res.trace = EventTrace{};
      res.trace.policy = policy;
      res.error = e.what();
    }
    res.components = compute_components(res.trace, snapshot, lexicon);
    for (const auto& p : config.profiles) res.psiByProfile.emplace_back(p.name, compute_psi(res.components, p));
    try {
      res.signals = companion_signals(snapshot, res.trace, res.components, lexicon);
    } catch (const SignalError& e) {
      res.signalError = e.what();
    }
    res.evidence = build_evidence(res.trace, snapshot, lexicon);
    r.results.push_back(std::move(res));
  }
  return r;
}

json components_to_json(const PsiComponents& c) {
  return {{"distanceVh", c.distanceVh},
          {"timeS", c.timeS},
          {"focusLoops", c.focusLoops},
          {"hiddenReveals", c.hiddenReveals},
          {"censored", c.censored}};
}

PsiComponents components_from_json(const json& j) {
  PsiComponents c;
  c.distanceVh = j.at("distanceVh").get<double>();
  c.timeS = j.at("timeS").get<double>();
  c.focusLoops = j.at("focusLoops").get<int>();
  c.hiddenReveals = j.at("hiddenReveals").get<int>();
  c.censored = j.value("censored", false);
  return c;
}

json config_to_json(const AuditConfig& c) {
  json j;
  j["policies"] = json::array();
  for (auto p : c.policies) j["policies"].push_back(std::string(to_string(p)));
  j["profiles"] = json::array();
  for (const auto& p : c.profiles) {
    j["profiles"].push_back({{"name", p.name}, {"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma},
                             {"delta", p.delta}});
  }
  j["breakpoint"] = opt_string(c.breakpoint);
  j["budget"] = {{"maxInteractions", c.budget.maxInteractions},
                 {"maxPaneDepth", c.budget.maxPaneDepth},
                 {"waitBudgetMs", c.budget.waitBudgetMs},
                 {"maxStates", c.budget.maxStates}};
  j["timing"] = {{"handlingS", c.timing.handlingS},
                 {"scrollSecondsPerViewport", c.timing.scrollSecondsPerViewport},
                 {"focusEscapeS", c.timing.focusEscapeS}};
  j["lexicon"] = c.lexiconSource;
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  return j;
}

namespace {

json trace_json(const EventTrace& t) {
  json events = json::array();
  for (const auto& e : t.events) {
    json ev{{"kind", std::string(to_string(e.kind))}, {"nodeId", opt_string(e.nodeId)}, {"cost", e.cost},
            {"scrollOffset", e.scrollOffset}};
    if (e.kind == EventKind::Scroll) ev["scrollPx"] = e.scrollPx;
    if (e.kind == EventKind::FocusLoop) ev["cycleSize"] = e.cycleSize;
    events.push_back(std::move(ev));
  }
  return {{"events", std::move(events)},
          {"terminal", std::string(to_string(t.terminal))},
          {"terminalNodeId", opt_string(t.terminalNodeId)},
          {"strip", render_event_strip(t)}};
}

json signals_json(const CompanionSignals& s) {
  return {{"timeToPrimaryS", s.timeToPrimaryS}, {"distanceToChoiceVh", s.distanceToChoiceVh},
          {"granularityExposed", s.granularityExposed}, {"reversibility", s.reversibility},
          {"aai", s.aai}, {"csi", s.csi}, {"div", s.div}};
}

}  // namespace

json report_to_json(const AuditReport& r) {
  json j;
  j["schemaVersion"] = kReportSchemaVersion;
  j["snapshot"] = {{"id", r.snapshotId},
                   {"source", r.source},
                   {"breakpoint", r.breakpoint},
                   {"viewport", {{"width", r.viewport.width}, {"height", r.viewport.height}}},
                   {"flags", r.snapshotFlags}};
  j["config"] = config_to_json(r.config);
  j["results"] = json::array();
  for (const auto& res : r.results) {
    json b;
    b["policy"] = std::string(to_string(res.policy));
    b["trace"] = trace_json(res.trace);
    b["components"] = components_to_json(res.components);
    json psi = json::object();
    for (const auto& [name, v] : res.psiByProfile) psi[name] = v;
    b["psiByProfile"] = std::move(psi);
    b["signals"] = res.signals ? signals_json(*res.signals) : json(nullptr);
    if (!res.signalError.empty()) b["signalError"] = res.signalError;
    if (!res.error.empty()) b["error"] = res.error;
    if (res.evidence) {
      const auto& e = *res.evidence;
      b["evidence"] = {{"nodeId", e.nodeId}, {"paneId", e.paneId}, {"bounds", rect_json(e.bounds)},
                       {"scrollOffset", e.scrollOffset}, {"stepIndex", e.stepIndex}, {"reasons", e.reasons}};
    } else {
      b["evidence"] = nullptr;
    }
    j["results"].push_back(std::move(b));
  }
  return j;
}

std::string canonical_json(const json& j) { return j.dump(2) + "\n"; }

std::string render_report_text(const AuditReport& r) {
  std::ostringstream out;
  out << r.snapshotId << " (" << (r.breakpoint.empty() ? "unnamed viewport" : r.breakpoint) << ", "
      << r.viewport.width << "x" << r.viewport.height << ")\n";
  for (const auto& res : r.results) {
    const auto& c = res.components;
    out << "  [" << to_string(res.policy) << "] " << render_event_strip(res.trace) << "\n";
    out << "    D/vh " << fmt(c.distanceVh) << "  T " << fmt(c.timeS, 3) << " s  F " << c.focusLoops << "  H "
        << c.hiddenReveals << (c.censored ? "  (censored: lower bounds)" : "") << "\n";
    out << "    PSI";
    for (const auto& [name, v] : res.psiByProfile) out << "  " << name << "=" << fmt(v, 3);
    out << "\n";
    if (res.signals) {
      const auto& s = *res.signals;
      out << "    AAI " << s.aai << "  CSI " << s.csi << "  DIV " << s.div << "  granularity "
          << (s.granularityExposed ? "yes" : "no") << "  reversibility " << (s.reversibility ? "yes" : "no")
          << "\n";
    } else {
      out << "    signals unavailable: " << res.signalError << "\n";
    }
    if (res.evidence) {
      const auto& e = *res.evidence;
      out << "    evidence: " << e.nodeId << " on " << e.paneId << " at (" << e.bounds.x << "," << e.bounds.y
          << " " << e.bounds.w << "x" << e.bounds.h << "), scroll " << e.scrollOffset << ", step "
          << e.stepIndex << "\n";
    }
    if (!res.error.empty()) out << "    error: " << res.error << "\n";
  }
  return out.str();
}

std::string render_evidence_svg(const Snapshot& snapshot, const PolicyResult& result) {
  const int width = snapshot.viewport.width;
  const int evh = effective_viewport_height(snapshot);
  const std::string pane = result.evidence ? result.evidence->paneId : snapshot.initial_pane().id;
  const int offset = result.evidence ? result.evidence->scrollOffset : 0;
  int height = std::max(evh, snapshot.surface.scrollHeight);
  for (const auto& n : snapshot.nodes) {
    if (n.paneId == pane) height = std::max(height, n.bounds.bottom());
  }
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#fafafa\"/>\n";
  for (const UINode* n : snapshot.document_order(pane)) {
    if (n->role == Role::Container) continue;
    const Rect& b = n->bounds;
    const bool interactive = is_interactive(n->role);
    out << "  <rect x=\"" << b.x << "\" y=\"" << b.y << "\" width=\"" << b.w << "\" height=\"" << b.h
        << "\" fill=\"none\" stroke=\"" << (interactive ? "#555" : "#bbb") << "\" stroke-width=\"1\""
        << (n->visible ? "" : " stroke-dasharray=\"4 2\"") << "><title>" << n->id << "</title></rect>\n";
  }
  out << "  <rect x=\"0\" y=\"" << offset << "\" width=\"" << width << "\" height=\"" << evh
      << "\" fill=\"none\" stroke=\"#1f6feb\" stroke-width=\"3\" stroke-dasharray=\"12 6\"/>\n";
  if (result.evidence) {
    const Rect& b = result.evidence->bounds;
    out << "  <rect x=\"" << b.x - 3 << "\" y=\"" << b.y - 3 << "\" width=\"" << b.w + 6 << "\" height=\""
        << b.h + 6 << "\" fill=\"none\" stroke=\"#d1242f\" stroke-width=\"4\"><title>" << result.evidence->nodeId
        << " (step " << result.evidence->stepIndex << ")</title></rect>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<AuditRecord> records_from_report(const json& report) {
  if (!report.contains("schemaVersion") || report.at("schemaVersion").get<int>() != kReportSchemaVersion) {
    throw std::invalid_argument("not an audit report (schemaVersion " + std::to_string(kReportSchemaVersion) +
                                " expected)");
  }
  const json& snap = report.at("snapshot");
  std::optional<ArchetypeKind> kind;
  const std::string source = snap.at("source").get<std::string>();
  const std::string prefix = "archetype:";
  if (source.rfind(prefix, 0) == 0) kind = archetype_from_string(source.substr(prefix.size()));
  std::vector<AuditRecord> out;
  for (const auto& res : report.at("results")) {
    AuditRecord r;
    r.id = snap.at("id").get<std::string>();
    r.kind = kind;
    r.breakpoint = snap.at("breakpoint").get<std::string>();
    r.policy = policy_from_string(res.at("policy").get<std::string>());
    r.components = components_from_json(res.at("components"));
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

ComponentSummary summarize_group(const std::vector<const AuditRecord*>& group,
                                 const std::vector<WeightProfile>& profiles) {
  std::vector<double> d, t, f, h;
  for (const auto* r : group) {
    d.push_back(r->components.distanceVh);
    t.push_back(r->components.timeS);
    f.push_back(r->components.focusLoops);
    h.push_back(r->components.hiddenReveals);
  }
  ComponentSummary s;
  s.distanceVh = median_iqr(d);
  s.timeS = median_iqr(t);
  s.focusLoops = median_iqr(f);
  s.hiddenReveals = median_iqr(h);
  for (const auto& p : profiles) {
    std::vector<double> v;
    for (const auto* r : group) v.push_back(compute_psi(r->components, p));
    s.psi.emplace_back(p.name, median_iqr(v));
  }
  return s;
}

SummaryRow make_row(const std::string& name, const std::vector<const AuditRecord*>& group,
                    const std::vector<WeightProfile>& profiles) {
  SummaryRow row;
  row.group = name;
  row.n = static_cast<int>(group.size());
  row.censored = static_cast<int>(
      std::count_if(group.begin(), group.end(), [](const AuditRecord* r) { return r->components.censored; }));
  row.summary = summarize_group(group, profiles);
  return row;
}

json miqr_json(const MedianIqr& m) { return {{"median", m.median}, {"q1", m.q1}, {"q3", m.q3}}; }

json row_json(const SummaryRow& r) {
  json psi = json::object();
  for (const auto& [name, m] : r.summary.psi) psi[name] = miqr_json(m);
  return {{"group", r.group},
          {"n", r.n},
          {"censored", r.censored},
          {"distanceVh", miqr_json(r.summary.distanceVh)},
          {"timeS", miqr_json(r.summary.timeS)},
          {"focusLoops", miqr_json(r.summary.focusLoops)},
          {"hiddenReveals", miqr_json(r.summary.hiddenReveals)},
          {"psi", std::move(psi)}};
}

std::string cell(const MedianIqr& m, int decimals) {
  return fmt(m.median, decimals) + " [" + fmt(m.q1, decimals) + ", " + fmt(m.q3, decimals) + "]";
}

void table(std::ostringstream& out, const std::string& title, const std::vector<SummaryRow>& rows,
           const std::vector<std::string>& profiles) {
  out << title << "\n";
  char line[512];
  std::snprintf(line, sizeof line, "  %-18s %5s  %-22s %-22s %-18s %-18s", "group", "n", "D/vh", "T (s)", "F",
                "H");
  out << line;
  for (const auto& p : profiles) out << "  PSI " << p;
  out << "\n";
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "  %-18s %5d  %-22s %-22s %-18s %-18s", r.group.c_str(), r.n,
                  cell(r.summary.distanceVh, 2).c_str(), cell(r.summary.timeS, 2).c_str(),
                  cell(r.summary.focusLoops, 1).c_str(), cell(r.summary.hiddenReveals, 1).c_str());
    out << line;
    for (const auto& [name, m] : r.summary.psi) out << "  " << cell(m, 2);
    if (r.censored) out << "  (" << r.censored << " censored)";
    out << "\n";
  }
}

}  // namespace

CorpusSummary summarize_records(const std::vector<AuditRecord>& records, const std::vector<WeightProfile>& profiles) {
  if (records.empty()) throw std::invalid_argument("no audit records to summarize");
  if (profiles.empty()) throw std::invalid_argument("at least one profile is required");
  CorpusSummary s;
  s.recordCount = static_cast<int>(records.size());
  for (const auto& p : profiles) s.profiles.push_back(p.name);

  std::map<std::pair<std::string, int>, std::vector<const AuditRecord*>> byCondition;
  std::map<ArchetypeKind, std::vector<const AuditRecord*>> byKind;
  for (const auto& r : records) {
    byCondition[{r.breakpoint, static_cast<int>(r.policy)}].push_back(&r);
    if (r.kind) byKind[*r.kind].push_back(&r);
  }
  for (const auto& [key, group] : byCondition) {
    const std::string name = key.first + "/" + std::string(to_string(static_cast<TraversalPolicy>(key.second)));
    s.conditions.push_back(make_row(name, group, profiles));
  }
  for (ArchetypeKind k : all_archetypes()) {
    auto it = byKind.find(k);
    if (it != byKind.end()) s.archetypes.push_back(make_row(std::string(to_string(k)), it->second, profiles));
  }
  return s;
}

json summary_to_json(const CorpusSummary& s) {
  json j;
  j["profiles"] = s.profiles;
  j["recordCount"] = s.recordCount;
  j["conditions"] = json::array();
  for (const auto& r : s.conditions) j["conditions"].push_back(row_json(r));
  j["archetypes"] = json::array();
  for (const auto& r : s.archetypes) j["archetypes"].push_back(row_json(r));
  return j;
}

std::string render_summary_text(const CorpusSummary& s) {
  std::ostringstream out;
  out << s.recordCount << " audit records; cells are median [Q1, Q3]\n\n";
  table(out, "By condition (breakpoint/policy)", s.conditions, s.profiles);
  if (!s.archetypes.empty()) {
    out << "\n";
    table(out, "By archetype", s.archetypes, s.profiles);
  }
  return out.str();
}

json robustness_to_json(const RobustnessReport& r) {
  json j;
  j["sampleCount"] = r.sampleCount;
  j["seed"] = r.seed;
  j["constrained"] = r.constrained;
  j["concentration"] = r.concentration;
  j["claims"] = json::array();
  for (const auto& c : r.claims) {
    j["claims"].push_back({{"claim", std::string(to_string(c.claim))},
                           {"evaluable", c.evaluable},
                           {"supporting", c.supporting},
                           {"evaluated", c.evaluated},
                           {"support", c.evaluable ? json(c.support()) : json(nullptr)}});
  }
  return j;
}

}  // namespace psi
