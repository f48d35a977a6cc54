#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "psi/fixtures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "psi_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

Run psi_cli(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string("\"") + PSI_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string fixture(const std::string& id) {
  return (psi::default_fixture_dir() / "snapshots" / (id + ".snapshot.json")).string();
}

}  // namespace

TEST_CASE("power subcommand") {
  const Run def = psi_cli("power");
  CHECK(def.code == 0);
  CHECK(json::parse(def.out).at("n") == 85);
  const Run quarter = psi_cli("power --r 0.25 --format text");
  CHECK(quarter.code == 0);
  CHECK(quarter.out.find("n = 124 participants") != std::string::npos);
  CHECK(psi_cli("power --r 1.5").code == 64);
}

TEST_CASE("usage errors") {
  CHECK(psi_cli("").code == 64);
  CHECK(psi_cli("frobnicate").code == 64);
  CHECK(psi_cli("audit").code == 64);
  CHECK(psi_cli("audit /nonexistent.json").code == 64);
  CHECK(psi_cli("audit --policy sideways " + fixture("copresent")).code == 64);
  CHECK(psi_cli("audit --format xml " + fixture("copresent")).code == 64);
  CHECK(psi_cli("audit --breakpoint mobile " + fixture("copresent")).code == 64);
}

TEST_CASE("invalid snapshot documents") {
  const fs::path bad = scratch() / "bad.snapshot.json";
  write(bad, "{ not json");
  CHECK(psi_cli("audit " + bad.string()).code == 2);

  json doc = json::parse(slurp(fixture("copresent")));
  doc["surface"]["rootNodeId"] = "nowhere";
  const fs::path noRoot = scratch() / "noroot.snapshot.json";
  write(noRoot, doc.dump());
  const Run r = psi_cli("audit " + noRoot.string());
  CHECK(r.code == 3);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("audit output and exit status") {
  const Run ok = psi_cli("audit --policy both --profile default,accessibility " + fixture("vignette"));
  CHECK(ok.code == 0);
  const json report = json::parse(ok.out);
  CHECK(report.at("results").size() == 2);
  CHECK(report.at("results")[0].at("trace").at("strip") == "EV_SCROLL -> EV_EXPAND -> EV_TOGGLE -> EV_ACTION");

  const Run text = psi_cli("audit --format text " + fixture("accordion"));
  CHECK(text.code == 0);
  CHECK(text.out.find("EV_EXPAND -> EV_TOGGLE -> EV_ACTION") != std::string::npos);

  const Run censored = psi_cli("audit " + fixture("censored"));
  CHECK(censored.code == 4);
  CHECK(censored.out.find("[BUDGET_EXHAUSTED]") != std::string::npos);

  const fs::path overlays = scratch() / "overlays";
  fs::create_directories(overlays);
  CHECK(psi_cli("audit --overlay " + overlays.string() + " " + fixture("copresent")).code == 0);
  CHECK(fs::exists(overlays / "copresent.pointer.svg"));
}

TEST_CASE("audit output is byte-identical across runs") {
  const fs::path a = scratch() / "a.json";
  const fs::path b = scratch() / "b.json";
  const std::string args = "audit --policy both --profile default,accessibility,delay,disclosure " +
                           fixture("multistep_trap") + " --out ";
  REQUIRE(psi_cli(args + a.string()).code == 0);
  REQUIRE(psi_cli(args + b.string()).code == 0);
  CHECK_FALSE(slurp(a).empty());
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("generate, corpus and summarize") {
  const fs::path gen = scratch() / "gen";
  const Run g = psi_cli("generate --count 2 --seed 42 --out " + gen.string());
  REQUIRE(g.code == 0);
  const json manifest = json::parse(slurp(gen / "manifest.json"));
  CHECK(manifest.at("items").size() == 2 * 4 * 2);
  CHECK(manifest.at("seed") == 42);

  const fs::path again = scratch() / "gen_again";
  REQUIRE(psi_cli("generate --count 2 --seed 42 --out " + again.string()).code == 0);
  CHECK(slurp(gen / "manifest.json") == slurp(again / "manifest.json"));
  const std::string first = manifest.at("items")[0].at("snapshot");
  CHECK(slurp(gen / first) == slurp(again / first));

  const fs::path out = scratch() / "corpus_out";
  const Run c = psi_cli("corpus --manifest " + (gen / "manifest.json").string() + " --out " + out.string());
  REQUIRE(c.code == 0);
  CHECK(fs::exists(out / "summary.json"));
  int reports = 0;
  for (const auto& e : fs::directory_iterator(out / "reports")) reports += e.is_regular_file() ? 1 : 0;
  CHECK(reports == 16);

  const Run s = psi_cli("summarize " + (out / "reports").string());
  REQUIRE(s.code == 0);
  const json summary = json::parse(s.out);
  CHECK(summary.at("recordCount") == 32);
  CHECK(psi_cli("summarize " + (scratch() / "missing").string()).code == 2);

  const fs::path canonical = scratch() / "canonical";
  REQUIRE(psi_cli("generate --canonical --out " + canonical.string()).code == 0);
  CHECK(json::parse(slurp(canonical / "manifest.json")).at("items").size() == 4);
}

TEST_CASE("eval subcommand") {
  const Run r = psi_cli("eval");
  CHECK(r.code == 0);
  CHECK_FALSE(r.out.empty());

  const fs::path labels = scratch() / "labels.json";
  const fs::path preds = scratch() / "preds.json";
  write(labels, R"({"items": {"a": {"visible": true, "actionable": true}, "b": {"visible": false, "actionable": false}}})");
  write(preds, R"({"items": {"a": {"visible": true, "actionable": false}, "b": {"visible": false, "actionable": false}}})");
  CHECK(psi_cli("eval --labels " + labels.string() + " --predictions " + preds.string()).code == 0);
  write(preds, R"({"items": {"a": {"visible": true, "actionable": false}}})");
  CHECK(psi_cli("eval --labels " + labels.string() + " --predictions " + preds.string()).code != 0);
}
