// Regenerates the recorded engine outputs: fixtures/v1/golden.json, and with
// --data, the bundled data/lexicon.json and data/calibration.json mirrors of
// the built-in defaults. Run after an intentional engine change, then review
// the diff.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "psi/archetype.hpp"
#include "psi/fixtures.hpp"
#include "psi/report.hpp"

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  std::cout << "wrote " << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Record golden fixture outputs"};
  std::string fixtureDir = psi::default_fixture_dir().string();
  std::string dataDir = psi::default_data_dir().string();
  bool data = false;
  app.add_option("--fixtures", fixtureDir, "Fixture corpus directory");
  app.add_option("--data-dir", dataDir, "Data directory");
  app.add_flag("--data", data, "Also rewrite the bundled lexicon and calibration files");
  CLI11_PARSE(app, argc, argv);

  try {
    const psi::LabelLexicon lexicon = psi::LabelLexicon::builtin();
    const auto fixtures = psi::load_fixture_corpus(fixtureDir);
    write_file(std::filesystem::path(fixtureDir) / "golden.json",
               psi::canonical_json(psi::bless_golden(fixtures, lexicon)));
    if (data) {
      write_file(std::filesystem::path(dataDir) / "lexicon.json", lexicon.to_json());
      write_file(std::filesystem::path(dataDir) / "calibration.json",
                 psi::calibration_to_json(psi::canonical_calibration()));
    }
  } catch (const std::exception& e) {
    std::cerr << "psi_bless: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
