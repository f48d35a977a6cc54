#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "psi/snapshot.hpp"

namespace psi {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw SnapshotError(SnapshotError::Kind::Parse, "snapshot parse error at " + path + ": " + what,
                      {path});
}

void require_keys(const json& obj, const std::string& path,
                  std::initializer_list<std::string_view> allowed,
                  std::initializer_list<std::string_view> required) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      parse_fail(path + "." + key, "unknown key");
    }
  }
  for (auto key : required) {
    if (!obj.contains(key)) parse_fail(path + "." + std::string(key), "missing required key");
  }
}

template <typename T>
T get_as(const json& obj, const std::string& path, std::string_view key) {
  const json& v = obj.at(std::string(key));
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    parse_fail(path + "." + std::string(key), "wrong type");
  }
}

template <typename T>
T get_or(const json& obj, const std::string& path, std::string_view key, T fallback) {
  if (!obj.contains(key)) return fallback;
  return get_as<T>(obj, path, key);
}

template <typename T>
std::optional<T> get_opt(const json& obj, const std::string& path, std::string_view key) {
  if (!obj.contains(key) || obj.at(std::string(key)).is_null()) return std::nullopt;
  return get_as<T>(obj, path, key);
}

Role parse_role(const std::string& s, const std::string& path) {
  for (Role r : {Role::Button, Role::Link, Role::Toggle, Role::Checkbox, Role::Expander,
                 Role::Text, Role::Container}) {
    if (to_string(r) == s) return r;
  }
  parse_fail(path, "unknown role '" + s + "'");
}

Emphasis parse_emphasis(const std::string& s, const std::string& path) {
  for (Emphasis e : {Emphasis::Primary, Emphasis::Secondary, Emphasis::Plain}) {
    if (to_string(e) == s) return e;
  }
  parse_fail(path, "unknown emphasisClass '" + s + "'");
}

EffectKind parse_effect_kind(const std::string& s, const std::string& path) {
  for (EffectKind k : {EffectKind::Reveal, EffectKind::Navigate, EffectKind::ToggleState,
                       EffectKind::Dismiss}) {
    if (to_string(k) == s) return k;
  }
  parse_fail(path, "unknown effect kind '" + s + "'");
}

UINode parse_node(const json& j, const std::string& path) {
  require_keys(j, path,
               {"id", "paneId", "parentId", "role", "label", "accessibleName", "bounds", "visible",
                "enabled", "tabIndex", "rovingTabIndex", "emphasisClass", "celebratory",
                "rationaleFor", "animationMs", "effects", "focusTrap", "gated"},
               {"id", "paneId", "role", "bounds"});
  UINode n;
  n.id = get_as<std::string>(j, path, "id");
  n.paneId = get_as<std::string>(j, path, "paneId");
  n.parentId = get_opt<std::string>(j, path, "parentId");
  n.role = parse_role(get_as<std::string>(j, path, "role"), path + ".role");
  n.label = get_or<std::string>(j, path, "label", "");
  n.accessibleName = get_or<std::string>(j, path, "accessibleName", "");
  const json& b = j.at("bounds");
  const std::string bpath = path + ".bounds";
  require_keys(b, bpath, {"x", "y", "w", "h"}, {"x", "y", "w", "h"});
  n.bounds = {get_as<int>(b, bpath, "x"), get_as<int>(b, bpath, "y"), get_as<int>(b, bpath, "w"),
              get_as<int>(b, bpath, "h")};
  n.visible = get_or<bool>(j, path, "visible", true);
  n.enabled = get_or<bool>(j, path, "enabled", true);
  n.tabIndex = get_opt<int>(j, path, "tabIndex");
  n.rovingTabIndex = get_or<bool>(j, path, "rovingTabIndex", false);
  n.emphasisClass =
      parse_emphasis(get_or<std::string>(j, path, "emphasisClass", "plain"), path + ".emphasisClass");
  n.celebratory = get_or<bool>(j, path, "celebratory", false);
  n.rationaleFor = get_opt<std::string>(j, path, "rationaleFor");
  n.animationMs = get_or<int>(j, path, "animationMs", 0);
  n.focusTrap = get_or<bool>(j, path, "focusTrap", false);
  n.gated = get_or<bool>(j, path, "gated", false);
  if (j.contains("effects")) {
    const json& effects = j.at("effects");
    if (!effects.is_array()) parse_fail(path + ".effects", "expected an array");
    for (std::size_t i = 0; i < effects.size(); ++i) {
      const std::string epath = path + ".effects[" + std::to_string(i) + "]";
      require_keys(effects[i], epath, {"kind", "target"}, {"kind", "target"});
      n.effects.push_back({parse_effect_kind(get_as<std::string>(effects[i], epath, "kind"), epath + ".kind"),
                           get_as<std::string>(effects[i], epath, "target")});
    }
  }
  return n;
}

json node_to_json(const UINode& n) {
  json j;
  j["id"] = n.id;
  j["paneId"] = n.paneId;
  j["parentId"] = n.parentId ? json(*n.parentId) : json(nullptr);
  j["role"] = to_string(n.role);
  j["label"] = n.label;
  j["accessibleName"] = n.accessibleName;
  j["bounds"] = {{"x", n.bounds.x}, {"y", n.bounds.y}, {"w", n.bounds.w}, {"h", n.bounds.h}};
  j["visible"] = n.visible;
  j["enabled"] = n.enabled;
  j["tabIndex"] = n.tabIndex ? json(*n.tabIndex) : json(nullptr);
  j["rovingTabIndex"] = n.rovingTabIndex;
  j["emphasisClass"] = to_string(n.emphasisClass);
  j["celebratory"] = n.celebratory;
  j["rationaleFor"] = n.rationaleFor ? json(*n.rationaleFor) : json(nullptr);
  j["animationMs"] = n.animationMs;
  j["focusTrap"] = n.focusTrap;
  j["gated"] = n.gated;
  json effects = json::array();
  for (const auto& e : n.effects) effects.push_back({{"kind", to_string(e.kind)}, {"target", e.target}});
  j["effects"] = std::move(effects);
  return j;
}

}  // namespace

Snapshot parse_snapshot(std::string_view document) {
  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, document.size());
    const auto line = 1 + std::count(document.begin(), document.begin() + upto, '\n');
    throw SnapshotError(SnapshotError::Kind::Parse,
                        "snapshot parse error at line " + std::to_string(line) + ": " + e.what(),
                        {"line " + std::to_string(line)});
  }

  require_keys(root, "$", {"version", "meta", "viewport", "surface", "panes", "nodes"},
               {"version", "viewport", "surface", "panes", "nodes"});
  Snapshot s;
  s.version = get_as<int>(root, "$", "version");
  if (s.version != 1) parse_fail("$.version", "unsupported version " + std::to_string(s.version));

  if (root.contains("meta")) {
    const json& m = root.at("meta");
    require_keys(m, "$.meta", {"source", "note", "breakpoint"}, {});
    s.meta.source = get_or<std::string>(m, "$.meta", "source", "");
    s.meta.note = get_or<std::string>(m, "$.meta", "note", "");
    s.meta.breakpoint = get_or<std::string>(m, "$.meta", "breakpoint", "");
  }

  const json& vp = root.at("viewport");
  require_keys(vp, "$.viewport", {"width", "height", "name"}, {"width", "height"});
  s.viewport.width = get_as<int>(vp, "$.viewport", "width");
  s.viewport.height = get_as<int>(vp, "$.viewport", "height");
  s.viewport.name = get_opt<std::string>(vp, "$.viewport", "name");

  const json& sf = root.at("surface");
  require_keys(sf, "$.surface", {"rootNodeId", "scrollable", "scrollHeight", "effectiveViewportHeight"},
               {"rootNodeId", "scrollable", "scrollHeight"});
  s.surface.rootNodeId = get_as<std::string>(sf, "$.surface", "rootNodeId");
  s.surface.scrollable = get_as<bool>(sf, "$.surface", "scrollable");
  s.surface.scrollHeight = get_as<int>(sf, "$.surface", "scrollHeight");
  s.surface.effectiveViewportHeight = get_opt<int>(sf, "$.surface", "effectiveViewportHeight");

  const json& panes = root.at("panes");
  if (!panes.is_array()) parse_fail("$.panes", "expected an array");
  for (std::size_t i = 0; i < panes.size(); ++i) {
    const std::string path = "$.panes[" + std::to_string(i) + "]";
    require_keys(panes[i], path, {"id", "initial"}, {"id"});
    s.panes.push_back({get_as<std::string>(panes[i], path, "id"), get_or<bool>(panes[i], path, "initial", false)});
  }

  const json& nodes = root.at("nodes");
  if (!nodes.is_array()) parse_fail("$.nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    s.nodes.push_back(parse_node(nodes[i], "$.nodes[" + std::to_string(i) + "]"));
  }

  s.finalize();
  return s;
}

Snapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SnapshotError(SnapshotError::Kind::Parse, "cannot open snapshot " + path.string(), {path.string()});
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_snapshot(buf.str());
}

std::string serialize_snapshot(const Snapshot& s) {
  json root;
  root["version"] = s.version;
  root["meta"] = {{"source", s.meta.source}, {"note", s.meta.note}, {"breakpoint", s.meta.breakpoint}};
  root["viewport"] = {{"width", s.viewport.width}, {"height", s.viewport.height}};
  if (s.viewport.name) root["viewport"]["name"] = *s.viewport.name;
  root["surface"] = {{"rootNodeId", s.surface.rootNodeId},
                     {"scrollable", s.surface.scrollable},
                     {"scrollHeight", s.surface.scrollHeight}};
  if (s.surface.effectiveViewportHeight) {
    root["surface"]["effectiveViewportHeight"] = *s.surface.effectiveViewportHeight;
  }

  std::vector<const Pane*> panes;
  for (const auto& p : s.panes) panes.push_back(&p);
  std::sort(panes.begin(), panes.end(), [](auto* a, auto* b) { return a->id < b->id; });
  root["panes"] = json::array();
  for (const auto* p : panes) root["panes"].push_back({{"id", p->id}, {"initial", p->initial}});

  std::vector<const UINode*> nodes;
  for (const auto& n : s.nodes) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(), [](auto* a, auto* b) { return a->id < b->id; });
  root["nodes"] = json::array();
  for (const auto* n : nodes) root["nodes"].push_back(node_to_json(*n));

  // nlohmann::json objects are std::map backed, so keys come out sorted.
  return root.dump(2) + "\n";
}

}  // namespace psi
