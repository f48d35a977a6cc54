#include "psi/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace psi {

namespace {

constexpr ControlClass kAllClasses[] = {ControlClass::Accept,        ControlClass::Reject,
                                        ControlClass::Settings,      ControlClass::Save,
                                        ControlClass::Reversibility, ControlClass::Informational,
                                        ControlClass::Unknown};

bool contains_words(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return false;
  std::size_t pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string_view::npos) {
    const bool startOk = pos == 0 || haystack[pos - 1] == ' ';
    const std::size_t end = pos + needle.size();
    const bool endOk = end == haystack.size() || haystack[end] == ' ';
    if (startOk && endOk) return true;
    ++pos;
  }
  return false;
}

}  // namespace

std::string_view to_string(ControlClass c) {
  switch (c) {
    case ControlClass::Accept: return "ACCEPT";
    case ControlClass::Reject: return "REJECT";
    case ControlClass::Settings: return "SETTINGS";
    case ControlClass::Save: return "SAVE";
    case ControlClass::Reversibility: return "REVERSIBILITY";
    case ControlClass::Informational: return "INFORMATIONAL";
    case ControlClass::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

ControlClass control_class_from_string(std::string_view s) {
  for (ControlClass c : kAllClasses) {
    if (to_string(c) == s) return c;
  }
  throw std::invalid_argument("unknown control class '" + std::string(s) + "'");
}

bool is_non_accept_class(ControlClass c) {
  return c == ControlClass::Reject || c == ControlClass::Settings || c == ControlClass::Save;
}

std::string normalize_label(std::string_view text) {
  std::string out;
  bool pendingSpace = false;
  for (unsigned char ch : text) {
    if (std::isalnum(ch) || ch >= 0x80 || ch == '\'') {
      if (pendingSpace && !out.empty()) out.push_back(' ');
      pendingSpace = false;
      out.push_back(static_cast<char>(std::tolower(ch)));
    } else {
      pendingSpace = true;
    }
  }
  return out;
}

LabelLexicon::LabelLexicon(std::map<ControlClass, std::vector<std::string>> phrases,
                           std::vector<std::string> euphemisms, std::string version)
    : version_(std::move(version)) {
  for (auto& [cls, list] : phrases) {
    auto& dst = phrases_[cls];
    for (const auto& p : list) dst.push_back(normalize_label(p));
  }
  for (const auto& e : euphemisms) euphemisms_.push_back(normalize_label(e));
  validate();
}

void LabelLexicon::validate() const {
  std::set<std::string> accept;
  if (auto it = phrases_.find(ControlClass::Accept); it != phrases_.end()) {
    accept.insert(it->second.begin(), it->second.end());
  }
  for (ControlClass c : {ControlClass::Reject, ControlClass::Settings, ControlClass::Save}) {
    auto it = phrases_.find(c);
    if (it == phrases_.end()) continue;
    for (const auto& p : it->second) {
      if (accept.count(p)) {
        throw std::invalid_argument("lexicon phrase '" + p + "' is listed as both ACCEPT and " +
                                    std::string(to_string(c)));
      }
    }
  }
  for (const auto& [cls, list] : phrases_) {
    for (const auto& p : list) {
      if (p.empty()) throw std::invalid_argument("empty lexicon phrase");
    }
  }
}

LabelLexicon LabelLexicon::builtin() {
  return LabelLexicon(
      {
          {ControlClass::Accept,
           {"accept", "accept all", "accept cookies", "accept all cookies", "allow all", "allow cookies",
            "i agree", "agree", "agree and close", "ok", "okay", "yes i'm happy", "continue with cookies"}},
          {ControlClass::Reject,
           {"reject", "reject all", "reject cookies", "reject all cookies", "decline", "decline all",
            "refuse", "refuse all", "deny", "deny all", "necessary only", "only necessary",
            "essential only", "use necessary cookies only", "do not accept", "disagree"}},
          {ControlClass::Settings,
           {"customize", "customise", "manage settings", "manage cookies", "manage preferences",
            "preferences", "cookie settings", "settings", "manage options", "more options",
            "set preferences", "privacy settings"}},
          {ControlClass::Save,
           {"save", "save choices", "save preferences", "save settings", "confirm choices",
            "confirm my choices", "save and exit", "save my choices"}},
          {ControlClass::Reversibility,
           {"change consent", "withdraw consent", "revoke consent", "change cookie settings",
            "cookie preferences center", "update consent"}},
          {ControlClass::Informational,
           {"privacy policy", "cookie policy", "show details", "show purposes", "read more",
            "vendor list", "partners", "show vendors", "about cookies"}},
      },
      {"manage experience", "learn more", "got it", "privacy choices", "your choices",
       "more information"},
      "builtin-1");
}

LabelLexicon LabelLexicon::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("lexicon parse error: ") + e.what());
  }
  std::map<ControlClass, std::vector<std::string>> phrases;
  if (!j.contains("classes") || !j["classes"].is_object()) {
    throw std::invalid_argument("lexicon needs a 'classes' object");
  }
  for (const auto& [name, list] : j["classes"].items()) {
    phrases[control_class_from_string(name)] = list.get<std::vector<std::string>>();
  }
  auto euphemisms = j.value("euphemisms", std::vector<std::string>{});
  return LabelLexicon(std::move(phrases), std::move(euphemisms), j.value("version", "custom"));
}

LabelLexicon LabelLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open lexicon " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string LabelLexicon::to_json() const {
  nlohmann::json j;
  j["version"] = version_;
  for (const auto& [cls, list] : phrases_) j["classes"][std::string(to_string(cls))] = list;
  j["euphemisms"] = euphemisms_;
  return j.dump(2) + "\n";
}

bool LabelLexicon::is_euphemism(std::string_view name) const {
  const std::string norm = normalize_label(name);
  return std::any_of(euphemisms_.begin(), euphemisms_.end(),
                     [&](const std::string& e) { return contains_words(norm, e); });
}

ControlClass LabelLexicon::match(std::string_view name) const {
  const std::string norm = normalize_label(name);
  if (norm.empty() || is_euphemism(norm)) return ControlClass::Unknown;
  ControlClass best = ControlClass::Unknown;
  std::size_t bestLen = 0;
  for (const auto& [cls, list] : phrases_) {
    for (const auto& p : list) {
      if (p.size() > bestLen && contains_words(norm, p)) {
        best = cls;
        bestLen = p.size();
      }
    }
  }
  return best;
}

}  // namespace psi
