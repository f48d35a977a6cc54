#include "psi/archetype.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "psi/rng.hpp"

namespace psi {

std::string_view to_string(ArchetypeKind k) {
  switch (k) {
    case ArchetypeKind::ScrollWall: return "SCROLL_WALL";
    case ArchetypeKind::Accordion: return "ACCORDION";
    case ArchetypeKind::MultiStep: return "MULTI_STEP";
    case ArchetypeKind::CoPresent: return "CO_PRESENT";
  }
  return "CO_PRESENT";
}

const std::vector<ArchetypeKind>& all_archetypes() {
  static const std::vector<ArchetypeKind> kinds{ArchetypeKind::ScrollWall, ArchetypeKind::Accordion,
                                                ArchetypeKind::MultiStep, ArchetypeKind::CoPresent};
  return kinds;
}

ArchetypeKind archetype_from_string(std::string_view s) {
  for (ArchetypeKind k : all_archetypes()) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown archetype '" + std::string(s) +
                              "' (valid: SCROLL_WALL, ACCORDION, MULTI_STEP, CO_PRESENT)");
}

void validate_params(ArchetypeKind kind, const ArchetypeParams& p) {
  if (p.breakpoint != "desktop" && p.breakpoint != "mobile") {
    throw std::domain_error("archetype breakpoint must be desktop or mobile, got '" + p.breakpoint + "'");
  }
  if (p.animationMsPerGate < 0) throw std::domain_error("animationMsPerGate must be >= 0");
  if (p.scrollDepthVh < 0) throw std::domain_error("scrollDepthVh must be >= 0");
  switch (kind) {
    case ArchetypeKind::ScrollWall:
      if (!(p.scrollDepthVh > 1.0)) throw std::domain_error("SCROLL_WALL needs scrollDepthVh > 1");
      if (p.scrollDepthVh > 20.0) throw std::domain_error("SCROLL_WALL scrollDepthVh above 20 is not supported");
      break;
    case ArchetypeKind::Accordion:
      if (p.revealCount < 1 || p.revealCount > 6) throw std::domain_error("ACCORDION needs revealCount in [1, 6]");
      break;
    case ArchetypeKind::MultiStep:
      if (p.paneCount < 2 || p.paneCount > 8) throw std::domain_error("MULTI_STEP needs paneCount in [2, 8]");
      if (p.scrollDepthVh > 20.0) throw std::domain_error("MULTI_STEP scrollDepthVh above 20 is not supported");
      break;
    case ArchetypeKind::CoPresent: break;
  }
}

namespace {

constexpr int kLine = 20;
constexpr int kButtonH = 44;
constexpr int kButtonW = 150;
constexpr int kGap = 12;
constexpr int kDesktopContentWidth = 640;
constexpr int kModalTop = 40;

constexpr const char* kToggleLabels[] = {"Analytics", "Personalised advertising", "Functional"};
constexpr const char* kRationales[] = {"Counts visits so we can improve the site.",
                                       "Uses your activity to choose which ads you see.",
                                       "Remembers settings such as your language."};

struct Layout {
  Viewport viewport;
  int x0 = 0;
  int cw = 0;
  double reflow = 1.0;  // text height multiplier relative to desktop
  bool stacked = false;  // buttons one per line
};

Layout layout_for(const std::string& breakpoint) {
  Layout l;
  l.viewport = named_viewport(breakpoint);
  if (breakpoint == "mobile") {
    l.x0 = 16;
    l.cw = l.viewport.width - 32;
    l.stacked = true;
  } else {
    l.cw = kDesktopContentWidth;
    l.x0 = (l.viewport.width - l.cw) / 2;
  }
  l.reflow = static_cast<double>(kDesktopContentWidth) / l.cw;
  return l;
}

class Builder {
 public:
  Builder(const Layout& layout, std::uint64_t seed, ArchetypeKind kind) : l_(layout) {
    s_.viewport = layout.viewport;
    s_.meta.source = "archetype:" + std::string(to_string(kind));
    s_.meta.note = "seed " + std::to_string(seed);
    s_.meta.breakpoint = *layout.viewport.name;
  }

  const Layout& layout() const { return l_; }

  // Text height for copy that takes `lines` lines at desktop width.
  int text_h(double lines) const { return kLine * static_cast<int>(std::ceil(lines * l_.reflow - 1e-9)); }
  // Reflowed height of a desktop block of `px` pixels.
  int reflow_px(int px) const { return static_cast<int>(std::ceil(px * l_.reflow - 1e-9)); }

  void pane(const std::string& id, bool initial) { s_.panes.push_back({id, initial}); }

  UINode& add(const std::string& id, const std::string& pane, const std::optional<std::string>& parent, Role role,
              const std::string& label, Rect r) {
    UINode n;
    n.id = id;
    n.paneId = pane;
    n.parentId = parent;
    n.role = role;
    n.label = label;
    n.bounds = r;
    s_.nodes.push_back(std::move(n));
    return s_.nodes.back();
  }

  UINode& node(const std::string& id) {
    for (auto& n : s_.nodes) {
      if (n.id == id) return n;
    }
    throw std::logic_error("builder: no node " + id);
  }

  struct ButtonSpec {
    std::string id;
    std::string label;
    Emphasis emphasis = Emphasis::Plain;
    Role role = Role::Button;
    int width = kButtonW;
  };

  // Lays buttons out in a row (desktop) or a stack (mobile); returns the
  // height used.
  int buttons(const std::string& pane, const std::string& parent, int y, const std::vector<ButtonSpec>& specs) {
    int x = l_.x0;
    int used = 0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const auto& b = specs[i];
      if (l_.stacked) {
        const int top = y + static_cast<int>(i) * (kButtonH + 8);
        add(b.id, pane, parent, b.role, b.label, {l_.x0, top, l_.cw, kButtonH}).emphasisClass = b.emphasis;
        used = top + kButtonH - y;
      } else {
        add(b.id, pane, parent, b.role, b.label, {x, y, b.width, kButtonH}).emphasisClass = b.emphasis;
        x += b.width + kGap;
        used = kButtonH;
      }
    }
    return used;
  }

  // Focus-trapping link group (privacy policy, vendor list).
  int trap(const std::string& id, const std::string& pane, const std::string& parent, int y) {
    UINode& c = add(id, pane, parent, Role::Container, "", {l_.x0, y, l_.cw, 24});
    c.focusTrap = true;
    add(id + "_policy", pane, id, Role::Link, "Privacy policy", {l_.x0, y, 140, 24});
    add(id + "_vendors", pane, id, Role::Link, "Vendor list", {l_.x0 + 152, y, 140, 24});
    return 24;
  }

  // Toggle rows with rationales; returns the height used.
  int toggles(const std::string& pane, const std::string& parent, int y, const std::vector<int>& which,
              const std::vector<std::string>& enables) {
    const int start = y;
    for (int i : which) {
      const std::string idx = std::to_string(i + 1);
      const int th = text_h(1);
      UINode& t = add("toggle_" + idx, pane, parent, Role::Toggle, kToggleLabels[i], {l_.x0, y, 44, 24});
      for (const auto& target : enables) t.effects.push_back({EffectKind::ToggleState, target});
      add("rationale_" + idx, pane, parent, Role::Text, kRationales[i], {l_.x0 + 60, y, l_.cw - 60, th})
          .rationaleFor = "toggle_" + idx;
      y += std::max(24, th) + kGap;
    }
    return y - start;
  }

  void change_consent(const std::string& pane) {
    const int h = l_.viewport.height;
    add("change_consent", pane, std::nullopt, Role::Link, "Change consent", {16, h - 40, 150, 28});
  }

  Snapshot finish(const std::string& root, int contentBottom) {
    s_.surface.rootNodeId = root;
    const int evh = l_.viewport.height;
    if (contentBottom > evh) {
      s_.surface.scrollable = true;
      s_.surface.scrollHeight = contentBottom;
    }
    s_.finalize();
    return std::move(s_);
  }

 private:
  Layout l_;
  Snapshot s_;
};

std::vector<int> range_indices(int from, int to) {
  std::vector<int> v;
  for (int i = from; i < to; ++i) v.push_back(i);
  return v;
}

// Header shared by every kind: title and intro copy. Returns the y below it.
int header(Builder& b, const std::string& pane, const std::string& root, int y) {
  b.add("title", pane, root, Role::Text, "We value your privacy", {b.layout().x0, y, b.layout().cw, 32});
  y += 32 + kGap;
  const int ih = b.text_h(2);
  b.add("intro", pane, root, Role::Text,
        "We and our partners use cookies to measure traffic and personalise content",
        {b.layout().x0, y, b.layout().cw, ih});
  return y + ih + 16;
}

void gate(UINode& n, int ms) { n.animationMs = ms; }

Snapshot co_present(Builder& b, const ArchetypeParams& p) {
  const Layout& l = b.layout();
  b.pane("p1", true);
  b.add("surface", "p1", std::nullopt, Role::Container, "", {l.x0 - 16, kModalTop, l.cw + 32, 0});
  int y = header(b, "p1", "surface", kModalTop + 24);
  if (p.focusTrap) y += b.trap("trap", "p1", "surface", y) + 16;
  y += b.buttons("p1", "surface", y,
                 {{"accept", "Accept all", Emphasis::Secondary},
                  {"reject", "Reject all", Emphasis::Secondary},
                  {"settings", "Customize", Emphasis::Plain},
                  {"save", "Save choices", Emphasis::Plain}}) +
       20;
  gate(b.node("reject"), p.animationMsPerGate);
  UINode& save = b.node("save");
  save.enabled = false;
  gate(save, p.animationMsPerGate);
  b.node("accept").effects.push_back({EffectKind::Dismiss, "surface"});

  b.add("panel", "p1", "surface", Role::Container, "", {l.x0, y, l.cw, 0});
  const int th = b.toggles("p1", "panel", y, {0, 1, 2}, {"save"});
  b.node("panel").bounds.h = th;
  y += th + 12;
  b.node("surface").bounds.h = y - kModalTop;
  b.change_consent("p1");
  return b.finish("surface", y);
}

Snapshot scroll_wall(Builder& b, const ArchetypeParams& p) {
  const Layout& l = b.layout();
  b.pane("p1", true);
  b.add("surface", "p1", std::nullopt, Role::Container, "", {l.x0 - 16, 0, l.cw + 32, 0});
  int y = header(b, "p1", "surface", 24);
  if (p.focusTrap) y += b.trap("trap", "p1", "surface", y) + 16;
  b.add("accept", "p1", "surface", Role::Button, "Accept all", {l.x0, y, l.cw, 56}).emphasisClass =
      Emphasis::Primary;
  b.node("accept").effects.push_back({EffectKind::Dismiss, "surface"});
  y += 56 + 24;

  // Everything after the long copy, measured at desktop width so the
  // reject control's bottom edge lands at scrollDepthVh desktop viewports.
  const int toggleBlock = 3 * (std::max(24, kLine) + kGap);
  const int tail = toggleBlock + 20 + kButtonH;
  const Layout desktop = layout_for("desktop");
  const int desktopHeader = [&] {
    Builder probe(desktop, 0, ArchetypeKind::ScrollWall);
    int dy = header(probe, "p1", "surface", 24);
    if (p.focusTrap) dy += 24 + 16;
    return dy + 56 + 24;
  }();
  const int target = static_cast<int>(std::lround(p.scrollDepthVh * desktop.viewport.height));
  const int longDesktop = std::max(0, target - desktopHeader - 24 - tail);
  const int longH = b.reflow_px(longDesktop);
  b.add("policy_text", "p1", "surface", Role::Text,
        "Detailed description of every purpose, partner and retention period", {l.x0, y, l.cw, longH});
  y += longH + 24;

  b.add("panel", "p1", "surface", Role::Container, "", {l.x0, y, l.cw, 0});
  const int th = b.toggles("p1", "panel", y, {0, 1, 2}, {"save"});
  b.node("panel").bounds.h = th;
  y += th + 20;
  y += b.buttons("p1", "surface", y,
                 {{"settings", "Manage settings", Emphasis::Plain},
                  {"save", "Save choices", Emphasis::Plain},
                  {"reject", "Reject all", Emphasis::Plain}});
  UINode& save = b.node("save");
  save.enabled = false;
  gate(save, p.animationMsPerGate);
  gate(b.node("reject"), p.animationMsPerGate);
  b.node("surface").bounds.h = y + 24;
  b.change_consent("p1");
  return b.finish("surface", y + 24);
}

Snapshot accordion(Builder& b, const ArchetypeParams& p) {
  const Layout& l = b.layout();
  const int k = p.revealCount;
  b.pane("p1", true);
  b.add("surface", "p1", std::nullopt, Role::Container, "", {l.x0 - 16, kModalTop, l.cw + 32, 0});
  int y = header(b, "p1", "surface", kModalTop + 24);
  if (p.focusTrap) y += b.trap("trap", "p1", "surface", y) + 16;
  y += b.buttons("p1", "surface", y,
                 {{"accept", "Accept all", Emphasis::Primary, Role::Button, 180},
                  {"settings", "Manage settings", Emphasis::Plain, Role::Expander}}) +
       20;
  b.node("accept").effects.push_back({EffectKind::Dismiss, "surface"});
  UINode& settings = b.node("settings");
  settings.effects.push_back({EffectKind::Reveal, "panel"});
  gate(settings, p.animationMsPerGate);

  std::string parent = "surface";
  std::vector<std::string> levels;
  for (int lvl = 1; lvl <= k; ++lvl) {
    const std::string id = lvl == 1 ? "panel" : "panel_" + std::to_string(lvl);
    b.add(id, "p1", parent, Role::Container, "", {l.x0, y, l.cw, 0}).visible = false;
    levels.push_back(id);
    std::vector<int> which;
    if (lvl < k) {
      if (lvl <= 3) which.push_back(lvl - 1);
    } else {
      which = range_indices(std::min(k - 1, 3), 3);
    }
    y += b.toggles("p1", id, y, which, {"reject", "save"});
    if (lvl < k) {
      const std::string more = "more_" + std::to_string(lvl);
      UINode& m = b.add(more, "p1", id, Role::Expander, "More settings", {l.x0, y, kButtonW, kButtonH});
      m.effects.push_back({EffectKind::Reveal, "panel_" + std::to_string(lvl + 1)});
      gate(m, p.animationMsPerGate);
      y += kButtonH + kGap;
    } else {
      y += 8;
      y += b.buttons("p1", id, y,
                     {{"reject", "Reject all", Emphasis::Plain}, {"save", "Save choices", Emphasis::Plain}});
      for (const char* c : {"reject", "save"}) {
        UINode& n = b.node(c);
        n.enabled = false;
        gate(n, p.animationMsPerGate);
      }
    }
    parent = id;
  }
  y += 12;
  for (const auto& id : levels) {
    UINode& c = b.node(id);
    c.bounds.h = y - c.bounds.y;
  }
  b.node("surface").bounds.h = y - kModalTop;
  b.change_consent("p1");
  return b.finish("surface", y);
}

Snapshot multi_step(Builder& b, const ArchetypeParams& p) {
  const Layout& l = b.layout();
  const int panes = p.paneCount;
  const auto pane_id = [](int i) { return "p" + std::to_string(i); };
  for (int i = 1; i <= panes; ++i) b.pane(pane_id(i), i == 1);

  b.add("surface", "p1", std::nullopt, Role::Container, "", {l.x0 - 16, kModalTop, l.cw + 32, 0});
  int y = header(b, "p1", "surface", kModalTop + 24);
  if (p.focusTrap) y += b.trap("trap", "p1", "surface", y) + 16;
  y += b.buttons("p1", "surface", y,
                 {{"accept", "Accept all", Emphasis::Primary, Role::Button, 180},
                  {"settings", "Manage settings", Emphasis::Plain}}) +
       20;
  b.node("accept").effects.push_back({EffectKind::Dismiss, "surface"});
  UINode& settings = b.node("settings");
  settings.effects.push_back({EffectKind::Navigate, pane_id(2)});
  gate(settings, p.animationMsPerGate);
  b.node("surface").bounds.h = y - kModalTop;
  int bottom = y;

  // Steps after the first informational one each stage a toggle; the final
  // pane keeps the rest together with the commit controls.
  const int staged = std::clamp(panes - 3, 0, 2);
  for (int i = 2; i < panes; ++i) {
    const std::string pid = pane_id(i);
    const std::string box = "pane_" + std::to_string(i);
    b.add(box, pid, std::nullopt, Role::Container, "", {l.x0 - 16, kModalTop, l.cw + 32, 0});
    int py = kModalTop + 24;
    const int ih = b.text_h(2);
    b.add("info_" + std::to_string(i), pid, box, Role::Text,
          "Step " + std::to_string(i) + " of " + std::to_string(panes) +
              ": how our partners use data for each purpose",
          {l.x0, py, l.cw, ih});
    py += ih + 16;
    if (p.focusTrap) py += b.trap("trap_" + std::to_string(i), pid, box, py) + 16;
    if (i >= 3 && i - 3 < staged) py += b.toggles(pid, box, py, {i - 3}, {"reject", "save"}) + 8;
    UINode& next = b.add("next_" + std::to_string(i), pid, box, Role::Button, "Next", {l.x0, py, kButtonW, kButtonH});
    next.effects.push_back({EffectKind::Navigate, pane_id(i + 1)});
    gate(next, p.animationMsPerGate);
    py += kButtonH + 20;
    b.node(box).bounds.h = py - kModalTop;
    bottom = std::max(bottom, py);
  }

  const std::string last = pane_id(panes);
  const std::string box = "pane_" + std::to_string(panes);
  b.add(box, last, std::nullopt, Role::Container, "", {l.x0 - 16, kModalTop, l.cw + 32, 0});
  int py = kModalTop + 24;
  if (p.scrollDepthVh > 0.0) {
    const int desktopPx = static_cast<int>(std::lround(p.scrollDepthVh * layout_for("desktop").viewport.height));
    const int h = b.reflow_px(desktopPx);
    b.add("purpose_text", last, box, Role::Text, "Purposes and features our partners rely on", {l.x0, py, l.cw, h});
    py += h + 16;
  }
  if (p.focusTrap) py += b.trap("trap_" + std::to_string(panes), last, box, py) + 16;
  b.add("panel", last, box, Role::Container, "", {l.x0, py, l.cw, 0});
  const int th = b.toggles(last, "panel", py, range_indices(staged, 3), {"reject", "save"});
  b.node("panel").bounds.h = th;
  py += th + 8;
  py += b.buttons(last, box, py, {{"reject", "Reject all", Emphasis::Plain}, {"save", "Save choices", Emphasis::Plain}});
  for (const char* c : {"reject", "save"}) {
    UINode& n = b.node(c);
    n.enabled = false;
    gate(n, p.animationMsPerGate);
  }
  py += 20;
  b.node(box).bounds.h = py - kModalTop;
  bottom = std::max(bottom, py);

  b.change_consent("p1");
  return b.finish("surface", bottom);
}

}  // namespace

Snapshot generate_archetype(ArchetypeKind kind, const ArchetypeParams& params, std::uint64_t seed) {
  validate_params(kind, params);
  Builder b(layout_for(params.breakpoint), seed, kind);
  switch (kind) {
    case ArchetypeKind::ScrollWall: return scroll_wall(b, params);
    case ArchetypeKind::Accordion: return accordion(b, params);
    case ArchetypeKind::MultiStep: return multi_step(b, params);
    case ArchetypeKind::CoPresent: return co_present(b, params);
  }
  throw std::logic_error("unreachable archetype kind");
}

std::map<ArchetypeKind, ArchetypeParams> canonical_calibration() {
  std::map<ArchetypeKind, ArchetypeParams> c;
  c[ArchetypeKind::ScrollWall] = {2.5, 1, 3, 655, false, "desktop"};
  c[ArchetypeKind::Accordion] = {0.0, 1, 3, 250, false, "desktop"};
  c[ArchetypeKind::MultiStep] = {0.0, 1, 3, 30, false, "desktop"};
  c[ArchetypeKind::CoPresent] = {0.0, 1, 3, 770, false, "desktop"};
  return c;
}

std::map<ArchetypeKind, ArchetypeParams> parse_calibration(std::string_view document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document.begin(), document.end());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("calibration parse error: ") + e.what());
  }
  std::map<ArchetypeKind, ArchetypeParams> out;
  try {
    if (j.at("version").get<int>() != 1) throw std::invalid_argument("unsupported calibration version");
    for (const auto& [name, v] : j.at("archetypes").items()) {
      const ArchetypeKind kind = archetype_from_string(name);
      ArchetypeParams p;
      p.scrollDepthVh = v.value("scrollDepthVh", 0.0);
      p.revealCount = v.value("revealCount", 1);
      p.paneCount = v.value("paneCount", 3);
      p.animationMsPerGate = v.value("animationMsPerGate", 0);
      p.focusTrap = v.value("focusTrap", false);
      p.breakpoint = v.value("breakpoint", "desktop");
      try {
        validate_params(kind, p);
      } catch (const std::domain_error& e) {
        throw std::invalid_argument(e.what());
      }
      out[kind] = p;
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed calibration: ") + e.what());
  }
  return out;
}

std::string calibration_to_json(const std::map<ArchetypeKind, ArchetypeParams>& calibration) {
  nlohmann::json j;
  j["version"] = 1;
  j["archetypes"] = nlohmann::json::object();
  for (const auto& [kind, p] : calibration) {
    j["archetypes"][std::string(to_string(kind))] = {{"scrollDepthVh", p.scrollDepthVh},
                                                     {"revealCount", p.revealCount},
                                                     {"paneCount", p.paneCount},
                                                     {"animationMsPerGate", p.animationMsPerGate},
                                                     {"focusTrap", p.focusTrap},
                                                     {"breakpoint", p.breakpoint}};
  }
  return j.dump(2) + "\n";
}

CorpusSpec CorpusSpec::defaults() {
  CorpusSpec s;
  KindDistribution co;
  co.animationMs = {500, 1100};
  co.focusTrapProbability = 0.2;
  KindDistribution sw;
  sw.scrollDepthVh = {1.4, 2.6};
  sw.animationMs = {300, 800};
  sw.focusTrapProbability = 0.4;
  KindDistribution acc;
  acc.revealCountWeights = {0.45, 0.35, 0.2};
  acc.animationMs = {150, 450};
  acc.focusTrapProbability = 0.5;
  KindDistribution ms;
  ms.paneCount = {3, 5};
  ms.scrollDepthVh = {0.8, 2.0};
  ms.animationMs = {150, 450};
  ms.focusTrapProbability = 0.7;
  s.distributions = {{ArchetypeKind::CoPresent, co},
                     {ArchetypeKind::ScrollWall, sw},
                     {ArchetypeKind::Accordion, acc},
                     {ArchetypeKind::MultiStep, ms}};
  return s;
}

void validate_corpus_spec(const CorpusSpec& spec) {
  if (spec.countPerArchetype <= 0) throw std::invalid_argument("countPerArchetype must be positive");
  if (spec.breakpoints.empty()) throw std::invalid_argument("corpus needs at least one breakpoint");
  if (spec.policies.empty()) throw std::invalid_argument("corpus needs at least one policy");
  for (const auto& bp : spec.breakpoints) named_viewport(bp);
  for (ArchetypeKind k : all_archetypes()) {
    auto it = spec.distributions.find(k);
    if (it == spec.distributions.end()) {
      throw std::invalid_argument("corpus spec lacks a distribution for " + std::string(to_string(k)));
    }
    const auto& d = it->second;
    const auto check = [&](const Range& r, const char* what) {
      if (r.hi < r.lo) throw std::invalid_argument(std::string(what) + " range is empty");
    };
    check(d.animationMs, "animationMs");
    if (d.animationMs.lo < 0) throw std::invalid_argument("animationMs must be >= 0");
    if (d.focusTrapProbability < 0 || d.focusTrapProbability > 1) {
      throw std::invalid_argument("focusTrapProbability must be in [0, 1]");
    }
    if (k == ArchetypeKind::ScrollWall && !(d.scrollDepthVh.lo > 1.0)) {
      throw std::invalid_argument("SCROLL_WALL scrollDepthVh range must lie above 1");
    }
    if (k == ArchetypeKind::ScrollWall || k == ArchetypeKind::MultiStep) check(d.scrollDepthVh, "scrollDepthVh");
    if (k == ArchetypeKind::Accordion) {
      double total = 0;
      for (double w : d.revealCountWeights) {
        if (w < 0) throw std::invalid_argument("revealCountWeights must be >= 0");
        total += w;
      }
      if (total <= 0) throw std::invalid_argument("revealCountWeights must not all be zero");
    }
    if (k == ArchetypeKind::MultiStep) {
      check(d.paneCount, "paneCount");
      if (d.paneCount.lo < 2) throw std::invalid_argument("MULTI_STEP paneCount must be >= 2");
    }
  }
}

namespace {

ArchetypeParams draw_params(ArchetypeKind kind, const KindDistribution& d, SplitMix64& rng) {
  ArchetypeParams p;
  p.animationMsPerGate = static_cast<int>(std::lround(rng.uniform(d.animationMs.lo, d.animationMs.hi)));
  p.focusTrap = rng.bernoulli(d.focusTrapProbability);
  switch (kind) {
    case ArchetypeKind::ScrollWall: p.scrollDepthVh = rng.uniform(d.scrollDepthVh.lo, d.scrollDepthVh.hi); break;
    case ArchetypeKind::Accordion: {
      double total = 0;
      for (double w : d.revealCountWeights) total += w;
      double u = rng.uniform() * total;
      p.revealCount = static_cast<int>(d.revealCountWeights.size());
      for (std::size_t i = 0; i < d.revealCountWeights.size(); ++i) {
        if (u < d.revealCountWeights[i]) {
          p.revealCount = static_cast<int>(i) + 1;
          break;
        }
        u -= d.revealCountWeights[i];
      }
      break;
    }
    case ArchetypeKind::MultiStep:
      p.paneCount = static_cast<int>(rng.uniform_int(static_cast<std::int64_t>(d.paneCount.lo),
                                                     static_cast<std::int64_t>(d.paneCount.hi)));
      p.scrollDepthVh = rng.uniform(d.scrollDepthVh.lo, d.scrollDepthVh.hi);
      break;
    case ArchetypeKind::CoPresent: break;
  }
  // Round drawn depths so generated documents stay short and stable.
  p.scrollDepthVh = std::round(p.scrollDepthVh * 1000.0) / 1000.0;
  return p;
}

std::string slug(ArchetypeKind k) {
  switch (k) {
    case ArchetypeKind::ScrollWall: return "scrollwall";
    case ArchetypeKind::Accordion: return "accordion";
    case ArchetypeKind::MultiStep: return "multistep";
    case ArchetypeKind::CoPresent: return "copresent";
  }
  return "unknown";
}

}  // namespace

std::vector<CorpusItem> generate_corpus(const CorpusSpec& spec) {
  validate_corpus_spec(spec);
  const auto& kinds = all_archetypes();
  const std::size_t perKind = static_cast<std::size_t>(spec.countPerArchetype) * spec.breakpoints.size();
  std::vector<CorpusItem> items(kinds.size() * perKind);

#if defined(PSI_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t flat = 0; flat < static_cast<std::int64_t>(kinds.size()) * spec.countPerArchetype; ++flat) {
    const std::size_t ki = static_cast<std::size_t>(flat / spec.countPerArchetype);
    const int site = static_cast<int>(flat % spec.countPerArchetype);
    const ArchetypeKind kind = kinds[ki];
    const std::uint64_t siteSeed = SplitMix64::derive(SplitMix64::derive(spec.seed, ki), site);
    SplitMix64 rng(siteSeed);
    ArchetypeParams params = draw_params(kind, spec.distributions.at(kind), rng);
    for (std::size_t bi = 0; bi < spec.breakpoints.size(); ++bi) {
      params.breakpoint = spec.breakpoints[bi];
      CorpusItem& item = items[ki * perKind + static_cast<std::size_t>(site) * spec.breakpoints.size() + bi];
      char num[16];
      std::snprintf(num, sizeof num, "%03d", site);
      item.id = slug(kind) + "-" + num + "-" + params.breakpoint;
      item.kind = kind;
      item.site = site;
      item.seed = siteSeed;
      item.params = params;
      item.snapshot = generate_archetype(kind, params, siteSeed);
    }
  }
  return items;
}

}  // namespace psi
