#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace psi {

enum class ControlClass { Accept, Reject, Settings, Save, Reversibility, Informational, Unknown };

std::string_view to_string(ControlClass c);
ControlClass control_class_from_string(std::string_view s);  // throws std::invalid_argument

// REJECT, SETTINGS or SAVE: the classes that can establish a non-accept path.
bool is_non_accept_class(ControlClass c);

// Lowercase, punctuation to spaces, whitespace collapsed and trimmed.
std::string normalize_label(std::string_view text);

// Per-class phrase lists plus a euphemism list. Phrases are stored
// normalized; a label matches a phrase when the phrase occurs in it as a
// whole-word sequence.
class LabelLexicon {
 public:
  LabelLexicon() = default;
  LabelLexicon(std::map<ControlClass, std::vector<std::string>> phrases,
               std::vector<std::string> euphemisms, std::string version = "custom");

  // The bundled default lexicon (mirrored by data/lexicon.json).
  static LabelLexicon builtin();
  static LabelLexicon from_json(std::string_view text);
  static LabelLexicon load(const std::filesystem::path& path);
  std::string to_json() const;

  // Longest matching phrase wins; euphemisms are checked first and yield
  // Unknown. No match yields Unknown.
  ControlClass match(std::string_view name) const;
  bool is_euphemism(std::string_view name) const;

  const std::map<ControlClass, std::vector<std::string>>& phrases() const { return phrases_; }
  const std::vector<std::string>& euphemisms() const { return euphemisms_; }
  const std::string& version() const { return version_; }

 private:
  void validate() const;

  std::map<ControlClass, std::vector<std::string>> phrases_;
  std::vector<std::string> euphemisms_;
  std::string version_;
};

}  // namespace psi
