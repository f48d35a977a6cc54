// psi: command-line front end for the consent-burden audit engine.
//
// Exit codes: 0 success; 2 invalid input (snapshot, manifest, report set);
// 3 snapshot without a consent-surface root; 4 at least one censored audit
// (reports are still written); 64 usage error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "psi/archetype.hpp"
#include "psi/fixtures.hpp"
#include "psi/kernels.hpp"
#include "psi/report.hpp"
#include "psi/sensitivity.hpp"
#include "psi/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace psi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNoRoot = 3;
constexpr int kExitCensored = 4;
constexpr int kExitUsage = 64;

// Invalid input that is not a snapshot problem (manifests, report sets).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad option values discovered after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string policy;
  std::string profile;
  std::string breakpoint;
  std::string lexicon;
  std::string out;
  std::string format = "report";
  std::string config;
  std::uint64_t seed = 0;
  CLI::Option* policyOpt = nullptr;
  CLI::Option* profileOpt = nullptr;
  CLI::Option* breakpointOpt = nullptr;
  CLI::Option* lexiconOpt = nullptr;
  CLI::Option* seedOpt = nullptr;

  bool text() const { return format == "text"; }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json_file(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// Writes to --out when given, stdout otherwise.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_file(g.out, text);
  }
}

std::string snapshot_id(const fs::path& path) {
  std::string name = path.filename().string();
  for (const char* suffix : {".snapshot.json", ".json"}) {
    const std::string s = suffix;
    if (name.size() > s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0) {
      return name.substr(0, name.size() - s.size());
    }
  }
  return name;
}

std::string lower_slug(std::string_view s) {
  std::string out;
  for (char c : s) out += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// ------------------------------------------------------------ configuration

WeightProfile profile_from_json(const json& j) {
  if (j.is_string()) return named_profile(j.get<std::string>());
  WeightProfile p;
  p.name = j.at("name").get<std::string>();
  p.alpha = j.value("alpha", 1.0);
  p.beta = j.value("beta", 1.0);
  p.gamma = j.value("gamma", 1.0);
  p.delta = j.value("delta", 1.0);
  return p;
}

// Precedence: command-line flags > config file > built-in defaults.
AuditConfig resolve_config(const Globals& g, const std::string& defaultPolicy) {
  AuditConfig c;
  c.policies = parse_policy_list(defaultPolicy);
  if (!g.config.empty()) {
    const json j = read_json_file(g.config);
    try {
      if (j.contains("policy")) c.policies = parse_policy_list(j["policy"].get<std::string>());
      if (j.contains("profile")) {
        c.profiles.clear();
        const json& p = j["profile"];
        if (p.is_string()) {
          c.profiles = parse_profile_list(p.get<std::string>());
        } else {
          for (const auto& e : p) c.profiles.push_back(profile_from_json(e));
        }
      }
      if (j.contains("breakpoint")) c.breakpoint = j["breakpoint"].get<std::string>();
      if (j.contains("lexicon")) c.lexiconSource = j["lexicon"].get<std::string>();
      if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("budget")) {
        const json& b = j["budget"];
        c.budget.maxInteractions = b.value("maxInteractions", c.budget.maxInteractions);
        c.budget.maxPaneDepth = b.value("maxPaneDepth", c.budget.maxPaneDepth);
        c.budget.waitBudgetMs = b.value("waitBudgetMs", c.budget.waitBudgetMs);
        c.budget.maxStates = b.value("maxStates", c.budget.maxStates);
      }
      if (j.contains("timing")) {
        const json& t = j["timing"];
        c.timing.handlingS = t.value("handlingS", c.timing.handlingS);
        c.timing.scrollSecondsPerViewport = t.value("scrollSecondsPerViewport", c.timing.scrollSecondsPerViewport);
        c.timing.focusEscapeS = t.value("focusEscapeS", c.timing.focusEscapeS);
      }
    } catch (const json::exception& e) {
      throw UsageError("config " + g.config + ": " + e.what());
    }
  }
  if (g.policyOpt->count()) c.policies = parse_policy_list(g.policy);
  if (g.profileOpt->count()) c.profiles = parse_profile_list(g.profile);
  if (g.breakpointOpt->count()) c.breakpoint = g.breakpoint;
  if (g.lexiconOpt->count()) c.lexiconSource = g.lexicon;
  if (g.seedOpt->count()) c.seed = g.seed;
  validate_config(c);
  return c;
}

LabelLexicon load_lexicon(const AuditConfig& c) {
  if (c.lexiconSource == "builtin") return LabelLexicon::builtin();
  return LabelLexicon::load(c.lexiconSource);
}

// ------------------------------------------------------------------ corpora

json params_json(const ArchetypeParams& p) {
  return {{"scrollDepthVh", p.scrollDepthVh}, {"revealCount", p.revealCount}, {"paneCount", p.paneCount},
          {"animationMsPerGate", p.animationMsPerGate}, {"focusTrap", p.focusTrap}, {"breakpoint", p.breakpoint}};
}

ArchetypeParams params_from_json(const json& j) {
  ArchetypeParams p;
  p.scrollDepthVh = j.at("scrollDepthVh").get<double>();
  p.revealCount = j.at("revealCount").get<int>();
  p.paneCount = j.at("paneCount").get<int>();
  p.animationMsPerGate = j.at("animationMsPerGate").get<int>();
  p.focusTrap = j.at("focusTrap").get<bool>();
  p.breakpoint = j.at("breakpoint").get<std::string>();
  return p;
}

json spec_json(const CorpusSpec& s) {
  json d = json::object();
  for (const auto& [kind, dist] : s.distributions) {
    d[std::string(to_string(kind))] = {{"scrollDepthVh", {dist.scrollDepthVh.lo, dist.scrollDepthVh.hi}},
                                       {"revealCountWeights", dist.revealCountWeights},
                                       {"paneCount", {dist.paneCount.lo, dist.paneCount.hi}},
                                       {"animationMs", {dist.animationMs.lo, dist.animationMs.hi}},
                                       {"focusTrapProbability", dist.focusTrapProbability}};
  }
  json policies = json::array();
  for (auto p : s.policies) policies.push_back(std::string(to_string(p)));
  return {{"countPerArchetype", s.countPerArchetype},
          {"seed", s.seed},
          {"breakpoints", s.breakpoints},
          {"policies", policies},
          {"distributions", d}};
}

struct LoadedCorpus {
  std::vector<CorpusItem> items;
  std::uint64_t seed = 0;
  std::string origin;  // manifest path or "generated"
};

LoadedCorpus load_manifest(const fs::path& path) {
  const json m = read_json_file(path);
  LoadedCorpus c;
  c.origin = path.string();
  try {
    c.seed = m.at("seed").get<std::uint64_t>();
    for (const auto& e : m.at("items")) {
      CorpusItem item;
      item.id = e.at("id").get<std::string>();
      item.kind = archetype_from_string(e.at("archetype").get<std::string>());
      item.site = e.at("site").get<int>();
      item.seed = e.at("seed").get<std::uint64_t>();
      item.params = params_from_json(e.at("params"));
      item.snapshot = load_snapshot(path.parent_path() / e.at("snapshot").get<std::string>());
      c.items.push_back(std::move(item));
    }
  } catch (const json::exception& e) {
    throw InputError("manifest " + path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError("manifest " + path.string() + ": " + e.what());
  }
  if (c.items.empty()) throw InputError("manifest " + path.string() + " lists no items");
  return c;
}

CorpusSpec spec_from_options(const Globals& g, int count, std::uint64_t defaultSeed) {
  CorpusSpec spec = CorpusSpec::defaults();
  spec.countPerArchetype = count;
  spec.seed = g.seedOpt->count() ? g.seed : defaultSeed;
  if (g.breakpointOpt->count()) spec.breakpoints = {g.breakpoint};
  validate_corpus_spec(spec);
  return spec;
}

LoadedCorpus corpus_from(const Globals& g, const std::string& manifest, int count, std::uint64_t seed) {
  if (!manifest.empty()) return load_manifest(manifest);
  CorpusSpec spec = CorpusSpec::defaults();
  spec.countPerArchetype = count;
  spec.seed = seed;
  if (g.breakpointOpt->count()) spec.breakpoints = {g.breakpoint};
  validate_corpus_spec(spec);
  LoadedCorpus c;
  c.items = generate_corpus(spec);
  c.seed = spec.seed;
  c.origin = "generated";
  return c;
}

// --------------------------------------------------------------- commands

int cmd_audit(const Globals& g, const std::vector<std::string>& paths, const std::string& overlayDir) {
  const AuditConfig config = resolve_config(g, "pointer");
  const LabelLexicon lexicon = load_lexicon(config);

  std::vector<Snapshot> snapshots;
  std::vector<ReportInput> inputs;
  snapshots.reserve(paths.size());
  for (const auto& p : paths) snapshots.push_back(load_snapshot(p));
  for (std::size_t i = 0; i < paths.size(); ++i) inputs.push_back({snapshot_id(paths[i]), &snapshots[i]});

  std::vector<AuditReport> reports;
  try {
    reports = batch_reports_parallel(inputs, config, lexicon);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const bool dirMode = !g.out.empty() && (paths.size() > 1 || fs::is_directory(g.out));
  if (dirMode) {
    for (const auto& r : reports) {
      const fs::path file = fs::path(g.out) / (r.snapshotId + (g.text() ? ".report.txt" : ".report.json"));
      write_file(file, g.text() ? render_report_text(r) : canonical_json(report_to_json(r)));
    }
  } else {
    std::string text;
    if (g.text()) {
      for (const auto& r : reports) text += render_report_text(r);
    } else if (reports.size() == 1) {
      text = canonical_json(report_to_json(reports[0]));
    } else {
      json all = json::array();
      for (const auto& r : reports) all.push_back(report_to_json(r));
      text = canonical_json(all);
    }
    emit(g, text);
  }

  if (!overlayDir.empty()) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      for (const auto& res : reports[i].results) {
        write_file(fs::path(overlayDir) / (reports[i].snapshotId + "." + std::string(to_string(res.policy)) + ".svg"),
                   render_evidence_svg(snapshots[i], res));
      }
    }
  }

  const bool censored = std::any_of(reports.begin(), reports.end(), [](const AuditReport& r) { return r.any_censored(); });
  return censored ? kExitCensored : kExitOk;
}

int cmd_generate(const Globals& g, int count, bool canonical) {
  if (g.out.empty()) throw UsageError("generate needs --out DIR");
  const fs::path dir = g.out;
  json manifest;
  manifest["version"] = 1;
  json items = json::array();
  std::vector<CorpusItem> corpus;
  if (canonical) {
    manifest["seed"] = 0;
    manifest["spec"] = {{"calibration", json::parse(calibration_to_json(canonical_calibration()))}};
    for (const auto& [kind, params] : canonical_calibration()) {
      CorpusItem item;
      item.id = "canonical-" + lower_slug(to_string(kind));
      item.kind = kind;
      item.params = params;
      item.snapshot = generate_archetype(kind, params, 0);
      corpus.push_back(std::move(item));
    }
  } else {
    const CorpusSpec spec = spec_from_options(g, count, 42);
    manifest["seed"] = spec.seed;
    manifest["spec"] = spec_json(spec);
    corpus = generate_corpus(spec);
  }
  for (const auto& item : corpus) {
    const std::string rel = "snapshots/" + item.id + ".snapshot.json";
    write_file(dir / rel, serialize_snapshot(item.snapshot));
    items.push_back({{"id", item.id},
                     {"archetype", std::string(to_string(item.kind))},
                     {"site", item.site},
                     {"seed", item.seed},
                     {"breakpoint", item.params.breakpoint},
                     {"params", params_json(item.params)},
                     {"snapshot", rel}});
  }
  manifest["items"] = std::move(items);
  write_file(dir / "manifest.json", canonical_json(manifest));
  std::cerr << "wrote " << corpus.size() << " snapshots to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_corpus(const Globals& g, const std::string& manifest, int count) {
  const AuditConfig config = resolve_config(g, "both");
  const LabelLexicon lexicon = load_lexicon(config);
  const LoadedCorpus corpus = corpus_from(g, manifest, count, config.seed.value_or(42));

  std::vector<ReportInput> inputs;
  for (const auto& item : corpus.items) inputs.push_back({item.id, &item.snapshot});
  std::vector<AuditReport> reports;
  try {
    reports = batch_reports_parallel(inputs, config, lexicon);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::vector<AuditRecord> records;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (const auto& res : reports[i].results) {
      records.push_back({corpus.items[i].id, corpus.items[i].kind, reports[i].breakpoint, res.policy, res.components});
    }
  }
  const CorpusSummary summary = summarize_records(records, config.profiles);
  const std::string summaryJson = canonical_json(summary_to_json(summary));

  if (!g.out.empty()) {
    const fs::path dir = g.out;
    for (const auto& r : reports) {
      write_file(dir / "reports" / (r.snapshotId + ".report.json"), canonical_json(report_to_json(r)));
    }
    write_file(dir / "summary.json", summaryJson);
    std::cerr << "wrote " << reports.size() << " reports to " << (dir / "reports").string() << "\n";
  }
  std::cout << (g.text() ? render_summary_text(summary) : summaryJson);
  const bool censored = std::any_of(reports.begin(), reports.end(), [](const AuditReport& r) { return r.any_censored(); });
  return censored ? kExitCensored : kExitOk;
}

std::string render_robustness_text(const json& doc) {
  std::ostringstream out;
  out << "Corpus: " << doc["corpus"]["items"] << " snapshots, " << doc["corpus"]["records"] << " audit records\n";
  for (const char* key : {"unconstrained", "constrained"}) {
    const json& r = doc[key];
    out << "\n" << key << " Dirichlet profiles (n = " << r["sampleCount"] << ", seed " << r["seed"] << ")\n";
    for (const auto& c : r["claims"]) {
      char line[160];
      if (c["evaluable"].get<bool>()) {
        std::snprintf(line, sizeof line, "  %-26s %.3f  (%d/%d)\n", c["claim"].get<std::string>().c_str(),
                      c["support"].get<double>(), c["supporting"].get<int>(), c["evaluated"].get<int>());
      } else {
        std::snprintf(line, sizeof line, "  %-26s not evaluable\n", c["claim"].get<std::string>().c_str());
      }
      out << line;
    }
  }
  out << "\nPerturbation (canonical calibration, pointer, default profile)\n";
  for (const auto& row : doc["perturbation"]) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-12s vh x%.1f  +%3d ms  PSI %.3f\n", row["archetype"].get<std::string>().c_str(),
                  row["viewportFactor"].get<double>(), row["animationDeltaMs"].get<int>(), row["psi"].get<double>());
    out << line;
  }
  return out.str();
}

int cmd_sensitivity(const Globals& g, const std::string& manifest, int count, std::uint64_t corpusSeed, int samples,
                    double concentration) {
  const AuditConfig config = resolve_config(g, "both");
  const LabelLexicon lexicon = load_lexicon(config);
  const LoadedCorpus corpus = corpus_from(g, manifest, count, corpusSeed);
  const std::uint64_t seed = config.seed.value_or(7);
  if (samples <= 0) throw UsageError("--samples must be positive");

  const auto records = batch_audit_parallel(corpus.items, config.policies, lexicon, config.budget, config.timing);
  json doc;
  doc["corpus"] = {{"origin", corpus.origin}, {"seed", corpus.seed}, {"items", corpus.items.size()},
                   {"records", records.size()}};
  doc["unconstrained"] = robustness_to_json(rank_stability(records, sample_weight_profiles(samples, seed, false, concentration)));
  doc["constrained"] = robustness_to_json(rank_stability(records, sample_weight_profiles(samples, seed, true, concentration)));

  json shares = json::object();
  for (const auto& [kind, s] : component_shares(records, WeightProfile{})) {
    shares[std::string(to_string(kind))] =
        s ? json{{"distance", (*s)[0]}, {"time", (*s)[1]}, {"focusLoops", (*s)[2]}, {"hiddenReveals", (*s)[3]}}
          : json(nullptr);
  }
  doc["componentShares"] = std::move(shares);

  std::map<ArchetypeKind, Snapshot> canonical;
  for (const auto& [kind, params] : canonical_calibration()) canonical[kind] = generate_archetype(kind, params, 0);
  json table = json::array();
  for (const auto& cell : perturbation_study(canonical, PerturbationSpec{}, lexicon)) {
    table.push_back({{"archetype", std::string(to_string(cell.kind))},
                     {"viewportFactor", cell.viewportFactor},
                     {"animationDeltaMs", cell.animationDeltaMs},
                     {"components", components_to_json(cell.components)},
                     {"psi", cell.psi}});
  }
  doc["perturbation"] = std::move(table);
  emit(g, g.text() ? render_robustness_text(doc) : canonical_json(doc));
  return kExitOk;
}

int cmd_summarize(const Globals& g, const std::string& dir) {
  AuditConfig config = resolve_config(g, "pointer");
  if (!fs::is_directory(dir)) throw InputError("no report directory " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && name.size() > 12 && name.compare(name.size() - 12, 12, ".report.json") == 0) {
      files.push_back(e.path());
    }
  }
  if (files.empty()) throw InputError("no *.report.json files under " + dir);
  std::sort(files.begin(), files.end());
  std::vector<AuditRecord> records;
  for (const auto& f : files) {
    try {
      for (auto& r : records_from_report(read_json_file(f))) records.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw InputError(f.string() + ": " + e.what());
    }
  }
  const CorpusSummary s = summarize_records(records, config.profiles);
  emit(g, g.text() ? render_summary_text(s) : canonical_json(summary_to_json(s)));
  return kExitOk;
}

json confusion_json(const Confusion2x2& c) {
  const PrecisionRecall pr = precision_recall(c);
  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"tp", c.truePos}, {"fp", c.falsePos}, {"fn", c.falseNeg}, {"tn", c.trueNeg},
          {"precision", opt(pr.precision)}, {"recall", opt(pr.recall)}, {"kappa", opt(cohen_kappa(c))}};
}

int cmd_eval(const Globals& g, const std::string& fixtures, const std::string& labels, const std::string& predictions) {
  json doc;
  if (!labels.empty() || !predictions.empty()) {
    if (labels.empty() || predictions.empty()) throw UsageError("--labels and --predictions go together");
    LabelComparison c;
    try {
      c = compare_label_documents(read_json_file(labels), read_json_file(predictions));
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    doc = {{"visibility", confusion_json(c.visibility)}, {"actionability", confusion_json(c.actionability)}};
  } else {
    const AuditConfig config = resolve_config(g, "pointer");
    const LabelLexicon lexicon = load_lexicon(config);
    std::vector<LabeledFixture> corpus;
    try {
      corpus = load_fixture_corpus(fixtures.empty() ? default_fixture_dir() : fs::path(fixtures));
    } catch (const FixtureError& e) {
      throw InputError(e.what());
    }
    const DetectorEvaluation ev = evaluate_detector(corpus, lexicon);
    doc = {{"fixtures", ev.fixtures},
           {"controls", ev.controls},
           {"visibility", confusion_json(ev.visibility)},
           {"actionability", confusion_json(ev.actionability)},
           {"errors", {{"visibility", ev.visibilityErrors}, {"actionability", ev.actionabilityErrors}}}};
  }
  if (g.text()) {
    std::ostringstream out;
    for (const char* task : {"visibility", "actionability"}) {
      const json& t = doc[task];
      const auto num = [](const json& v) { return v.is_null() ? std::string("n/a") : std::to_string(v.get<double>()); };
      out << task << ": TP " << t["tp"] << " FP " << t["fp"] << " FN " << t["fn"] << " TN " << t["tn"]
          << "  precision " << num(t["precision"]) << "  recall " << num(t["recall"]) << "  kappa "
          << num(t["kappa"]) << "\n";
    }
    emit(g, out.str());
  } else {
    emit(g, canonical_json(doc));
  }
  return kExitOk;
}

int cmd_power(const Globals& g, double r, double alpha, double power) {
  int n = 0;
  try {
    n = power_sample_size(r, alpha, power);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  if (g.text()) {
    char line[160];
    std::snprintf(line, sizeof line, "n = %d participants (r = %.2f, alpha = %.3f, power = %.2f)\n", n, r, alpha, power);
    emit(g, line);
  } else {
    emit(g, canonical_json({{"r", r}, {"alpha", alpha}, {"power", power}, {"n", n}}));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Audit consent surfaces for the effort a refusal costs"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  g.policyOpt = app.add_option("--policy", g.policy, "Traversal policy: pointer, keyboard or both")
                    ->check(CLI::IsMember({"pointer", "keyboard", "both"}));
  g.profileOpt = app.add_option("--profile", g.profile, "Comma-separated weighting profiles (default, accessibility, delay, disclosure)");
  g.breakpointOpt = app.add_option("--breakpoint", g.breakpoint, "Breakpoint: desktop or mobile")
                        ->check(CLI::IsMember({"desktop", "mobile"}));
  g.lexiconOpt = app.add_option("--lexicon", g.lexicon, "Label lexicon JSON (default: built-in)");
  g.seedOpt = app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Output file or directory (default: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"report", "text"}));
  app.add_option("--config", g.config, "JSON config file; command-line flags take precedence");

  std::vector<std::string> snapshotPaths;
  std::string overlayDir;
  auto* audit = app.add_subcommand("audit", "Audit one or more snapshots");
  audit->add_option("--snapshot,snapshots", snapshotPaths, "Snapshot document(s)")->required()->check(CLI::ExistingFile);
  audit->add_option("--overlay", overlayDir, "Write an SVG evidence overlay per result into this directory");

  int count = 50;
  bool canonical = false;
  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic corpus with a manifest");
  generate->add_option("--count", count, "Sites per archetype")->check(CLI::PositiveNumber);
  generate->add_flag("--canonical", canonical, "Write the four calibrated archetype snapshots instead");

  std::string manifest;
  auto* corpus = app.add_subcommand("corpus", "Audit a corpus and write one report per snapshot plus a summary");
  corpus->add_option("--manifest", manifest, "Corpus manifest from `generate` (default: generate in memory)")
      ->check(CLI::ExistingFile);
  corpus->add_option("--count", count, "Sites per archetype when generating")->check(CLI::PositiveNumber);

  int samples = 1000;
  double concentration = 1.0;
  std::uint64_t corpusSeed = 42;
  auto* sensitivity = app.add_subcommand("sensitivity", "Weight-robustness and perturbation study");
  sensitivity->add_option("--manifest", manifest, "Corpus manifest (default: generate in memory)")->check(CLI::ExistingFile);
  sensitivity->add_option("--count", count, "Sites per archetype when generating")->check(CLI::PositiveNumber);
  sensitivity->add_option("--corpus-seed", corpusSeed, "Seed for the generated corpus");
  sensitivity->add_option("--samples", samples, "Dirichlet weight profiles to draw")->check(CLI::PositiveNumber);
  sensitivity->add_option("--concentration", concentration, "Symmetric Dirichlet concentration")
      ->check(CLI::PositiveNumber);

  std::string reportDir;
  auto* summarize = app.add_subcommand("summarize", "Summarize a directory of audit reports");
  summarize->add_option("--reports,reports", reportDir, "Directory containing *.report.json files")->required();

  std::string fixtureDir, labels, predictions;
  auto* eval = app.add_subcommand("eval", "Evaluate the detector against labeled fixtures or a labels file");
  eval->add_option("--fixtures", fixtureDir, "Labeled fixture corpus (default: bundled)");
  eval->add_option("--labels", labels, "Ground-truth item labels")->check(CLI::ExistingFile);
  eval->add_option("--predictions", predictions, "Predicted item labels")->check(CLI::ExistingFile);

  double r = 0.30, alpha = 0.05, power = 0.80;
  auto* powerCmd = app.add_subcommand("power", "Participants needed to detect a correlation");
  powerCmd->add_option("--r", r, "Target correlation");
  powerCmd->add_option("--alpha", alpha, "Two-tailed significance level");
  powerCmd->add_option("--power", power, "Desired power");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*audit) return cmd_audit(g, snapshotPaths, overlayDir);
    if (*generate) return cmd_generate(g, count, canonical);
    if (*corpus) return cmd_corpus(g, manifest, count);
    if (*sensitivity) return cmd_sensitivity(g, manifest, count, corpusSeed, samples, concentration);
    if (*summarize) return cmd_summarize(g, reportDir);
    if (*eval) return cmd_eval(g, fixtureDir, labels, predictions);
    if (*powerCmd) return cmd_power(g, r, alpha, power);
  } catch (const psi::SnapshotError& e) {
    std::cerr << "psi: " << e.what() << "\n";
    return e.kind() == psi::SnapshotError::Kind::NoSurfaceRoot ? kExitNoRoot : kExitInvalid;
  } catch (const InputError& e) {
    std::cerr << "psi: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const UsageError& e) {
    std::cerr << "psi: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "psi: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "psi: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}
