#!/usr/bin/env python3
"""Writes the bundled labeled fixture corpus (fixtures/v1).

Every fixture is authored here, so its ground truth is exact by
construction. Each control carries the class a careful human reviewer would
assign it and a few perceptual facts; the per-control labels are derived
from those with the labeling protocol below, never from the engine.

Labeling protocol, for every non-toggle interactive control on the initial
pane:

* visibleAtFirstViewport: the control is a refusal, customization or save
  control (by meaning, whatever its wording), it renders at first
  encounter, lies entirely inside the first viewport and is large enough to
  be perceived (at least 16 x 16 px).
* actionableOneInteraction: visible as above, enabled, and one activation
  either records a refusal/choice or opens a view whose purpose is making
  granular choices. In-place disclosures and steps that only lead to more
  information are not actionable.

Golden event strips and component vectors are produced by the engine
(`psi_bless`) and stored separately in golden.json; the hand-written
expectations in this file (`expect`) are checked against the engine by the
test suite.

Usage: make_fixtures.py [OUTPUT_DIR]
"""

import json
import pathlib
import sys

VIEWPORTS = {"desktop": (1440, 900), "mobile": (390, 844)}
NON_ACCEPT = {"REJECT", "SETTINGS", "SAVE"}
INTERACTIVE = {"button", "link", "toggle", "checkbox", "expander"}


class Fixture:
    def __init__(self, fid, note, tags, breakpoint="desktop", archetype=None):
        self.id = fid
        self.note = note
        self.tags = list(tags)
        self.breakpoint = breakpoint
        self.archetype = archetype
        self.width, self.height = VIEWPORTS[breakpoint]
        self.panes = []
        self.nodes = {}
        self.human = {}  # node id -> (class, leads_to_choice)
        self.surface = None
        self.expect = {}
        if breakpoint == "mobile":
            self.x0, self.cw = 16, self.width - 32
        else:
            self.cw = 640
            self.x0 = (self.width - self.cw) // 2

    def pane(self, pid, initial=False):
        self.panes.append({"id": pid, "initial": initial})

    def node(self, nid, pane, parent, role, label, rect, **kw):
        assert nid not in self.nodes, nid
        n = {
            "id": nid,
            "paneId": pane,
            "parentId": parent,
            "role": role,
            "label": label,
            "bounds": dict(zip("xywh", rect)),
        }
        for key, value in kw.items():
            n[key] = value
        self.nodes[nid] = n
        return n

    def control(self, nid, pane, parent, role, label, rect, human, leads=True, **kw):
        """An interactive control with its human-judged class."""
        n = self.node(nid, pane, parent, role, label, rect, **kw)
        self.human[nid] = (human, leads)
        return n

    def set_surface(self, root, bottom=None, evh=None):
        limit = evh if evh is not None else self.height
        s = {"rootNodeId": root, "scrollable": False, "scrollHeight": 0}
        if bottom is not None and bottom > limit:
            s["scrollable"] = True
            s["scrollHeight"] = bottom
        if evh is not None:
            s["effectiveViewportHeight"] = evh
        self.surface = s

    # ----------------------------------------------------------------- truth

    def _rendered_initially(self, n):
        while n is not None:
            if not n.get("visible", True):
                return False
            parent = n.get("parentId")
            n = self.nodes[parent] if parent else None
        return True

    def _in_first_viewport(self, n):
        b = n["bounds"]
        evh = self.surface.get("effectiveViewportHeight", self.height)
        return b["x"] >= 0 and b["y"] >= 0 and b["x"] + b["w"] <= self.width and b["y"] + b["h"] <= evh

    def labels(self):
        initial = next(p["id"] for p in self.panes if p["initial"])
        out = {}
        for nid, n in sorted(self.nodes.items()):
            if n["role"] not in INTERACTIVE or n["role"] in ("toggle", "checkbox"):
                continue
            if n["paneId"] != initial:
                continue
            human, leads = self.human[nid]
            b = n["bounds"]
            visible = (
                human in NON_ACCEPT
                and self._rendered_initially(n)
                and self._in_first_viewport(n)
                and b["w"] >= 16
                and b["h"] >= 16
            )
            actionable = visible and n.get("enabled", True) and leads
            out[nid] = {
                "controlClass": human,
                "visibleAtFirstViewport": bool(visible),
                "actionableOneInteraction": bool(actionable),
            }
        return out

    def document(self):
        assert self.surface is not None, self.id
        return {
            "version": 1,
            "meta": {"source": "fixture:" + self.id, "note": self.note, "breakpoint": self.breakpoint},
            "viewport": {"width": self.width, "height": self.height, "name": self.breakpoint},
            "surface": self.surface,
            "panes": sorted(self.panes, key=lambda p: p["id"]),
            "nodes": [self.nodes[k] for k in sorted(self.nodes)],
        }


# --------------------------------------------------------------- building blocks

BTN_W, BTN_H, GAP = 150, 44, 12
TOGGLES = [
    ("Analytics", "Counts visits so we can improve the site."),
    ("Personalised advertising", "Uses your activity to choose which ads you see."),
    ("Functional", "Remembers settings such as your language."),
]


def header(fx, pane, parent, y):
    fx.node("title", pane, parent, "text", "We value your privacy", (fx.x0, y, fx.cw, 32))
    y += 44
    h = 40 if fx.breakpoint == "desktop" else 80
    fx.node("intro", pane, parent, "text",
            "We and our partners use cookies to measure traffic and personalise content",
            (fx.x0, y, fx.cw, h))
    return y + h + 16


def buttons(fx, pane, parent, y, specs):
    """specs: (id, label, human, kwargs). Row on desktop, stack on mobile."""
    x = fx.x0
    used = 0
    for i, (nid, label, human, kw) in enumerate(specs):
        kw = dict(kw)
        role = kw.pop("role", "button")
        leads = kw.pop("leads", True)
        w = kw.pop("width", BTN_W)
        if fx.breakpoint == "mobile":
            top = y + i * (BTN_H + 8)
            fx.control(nid, pane, parent, role, label, (fx.x0, top, fx.cw, BTN_H), human, leads, **kw)
            used = top + BTN_H - y
        else:
            fx.control(nid, pane, parent, role, label, (x, y, w, BTN_H), human, leads, **kw)
            x += w + GAP
            used = BTN_H
    return used


def toggles(fx, pane, parent, y, which, enables=(), prefix="toggle", **kw):
    start = y
    for i in which:
        label, why = TOGGLES[i]
        tid = f"{prefix}_{i + 1}"
        effects = [{"kind": "toggleState", "target": t} for t in enables]
        fx.control(tid, pane, parent, "toggle", label, (fx.x0, y, 44, 24), "INFORMATIONAL",
                   effects=effects, **kw)
        h = 20 if fx.breakpoint == "desktop" else 40
        fx.node(f"rationale_{prefix}_{i + 1}", pane, parent, "text", why, (fx.x0 + 60, y, fx.cw - 60, h),
                rationaleFor=tid)
        y += max(24, h) + GAP
    return y - start


def trap(fx, cid, pane, parent, y):
    fx.node(cid, pane, parent, "container", "", (fx.x0, y, fx.cw, 24), focusTrap=True)
    fx.control(cid + "_policy", pane, cid, "link", "Privacy policy", (fx.x0, y, 140, 24), "INFORMATIONAL")
    fx.control(cid + "_vendors", pane, cid, "link", "Vendor list", (fx.x0 + 152, y, 140, 24), "INFORMATIONAL")
    return 24


def change_consent(fx, pane="p1"):
    fx.control("change_consent", pane, None, "link", "Change consent", (16, fx.height - 40, 150, 28),
               "REVERSIBILITY")


def settings_pane(fx, pane, final="save", anim=0, locked=False):
    """A preferences pane with toggles and a commit control."""
    box = "box_" + pane
    fx.node(box, pane, None, "container", "", (fx.x0 - 16, 40, fx.cw + 32, 400))
    y = 64
    if locked:
        y += toggles(fx, pane, box, y, [0, 1, 2], prefix="locked", enabled=False)
        fx.control("close_" + pane, pane, box, "button", "Close", (fx.x0, y, BTN_W, BTN_H), "INFORMATIONAL",
                   effects=[{"kind": "navigate", "target": "p1"}])
        return
    y += toggles(fx, pane, box, y, [0, 1, 2], enables=["save_" + pane] if final == "save" else [])
    if final == "save":
        fx.control("save_" + pane, pane, box, "button", "Save choices", (fx.x0, y, BTN_W, BTN_H), "SAVE",
                   enabled=False, animationMs=anim)
    else:
        fx.control("reject_" + pane, pane, box, "button", "Reject all", (fx.x0, y, BTN_W, BTN_H), "REJECT",
                   animationMs=anim)


# ------------------------------------------------------------------ families

def co_present(fid, note, tags, breakpoint="desktop", reject=("Reject all", "REJECT"), settings=("Customize", "SETTINGS"),
               reject_kw=None, anim=0, with_trap=False, expect=None, accept_kw=None, extra=None):
    fx = Fixture(fid, note, ["co-present"] + tags, breakpoint, "CO_PRESENT")
    fx.pane("p1", True)
    fx.pane("p2")
    top = 520 if breakpoint == "desktop" else 380
    fx.node("surface", "p1", None, "container", "", (fx.x0 - 16, top, fx.cw + 32, 0))
    y = header(fx, "p1", "surface", top + 24)
    if with_trap:
        y += trap(fx, "trap", "p1", "surface", y) + 16
    specs = [("accept", "Accept all", "ACCEPT", dict(emphasisClass="secondary", effects=[{"kind": "dismiss", "target": "surface"}], **(accept_kw or {})))]
    if reject:
        specs.append(("reject", reject[0], reject[1], dict(emphasisClass="secondary", animationMs=anim, **(reject_kw or {}))))
    if settings:
        specs.append(("settings", settings[0], settings[1],
                      dict(effects=[{"kind": "navigate", "target": "p2"}], animationMs=anim)))
    y += buttons(fx, "p1", "surface", y, specs) + 20
    if extra:
        y = extra(fx, y)
    fx.nodes["surface"]["bounds"]["h"] = y - top
    settings_pane(fx, "p2", anim=anim)
    change_consent(fx)
    fx.set_surface("surface", y)
    if expect:
        fx.expect = expect
    return fx


def scroll_wall(fid, note, tags, depth_px, breakpoint="desktop", reject_label="Reject all", evh=None, anim=0,
                with_trap=False, expect=None):
    fx = Fixture(fid, note, ["scroll-wall", "scrollable-surface"] + tags, breakpoint, "SCROLL_WALL")
    fx.pane("p1", True)
    fx.node("surface", "p1", None, "container", "", (fx.x0 - 16, 0, fx.cw + 32, 0))
    y = header(fx, "p1", "surface", 24)
    if with_trap:
        y += trap(fx, "trap", "p1", "surface", y) + 16
    fx.control("accept", "p1", "surface", "button", "Accept all", (fx.x0, y, fx.cw, 56), "ACCEPT",
               emphasisClass="primary", effects=[{"kind": "dismiss", "target": "surface"}])
    y += 80
    text_h = max(40, depth_px - y - BTN_H - 24)
    fx.node("policy_text", "p1", "surface", "text", "Detailed description of every purpose and partner",
            (fx.x0, y, fx.cw, text_h))
    y += text_h + 24
    fx.control("reject", "p1", "surface", "button", reject_label, (fx.x0, y, BTN_W, BTN_H), "REJECT",
               animationMs=anim)
    y += BTN_H + 24
    fx.nodes["surface"]["bounds"]["h"] = y
    change_consent(fx)
    fx.set_surface("surface", y, evh)
    if expect:
        fx.expect = expect
    return fx


def accordion(fid, note, tags, levels=1, breakpoint="desktop", expander_label="Manage settings",
              expander_human="SETTINGS", final="save", anim=0, with_trap=False, expect=None):
    fx = Fixture(fid, note, ["accordion"] + tags, breakpoint, "ACCORDION")
    fx.pane("p1", True)
    top = 300 if breakpoint == "desktop" else 120
    fx.node("surface", "p1", None, "container", "", (fx.x0 - 16, top, fx.cw + 32, 0))
    y = header(fx, "p1", "surface", top + 24)
    if with_trap:
        y += trap(fx, "trap", "p1", "surface", y) + 16
    y += buttons(fx, "p1", "surface", y, [
        ("accept", "Accept all", "ACCEPT",
         dict(emphasisClass="primary", width=180, effects=[{"kind": "dismiss", "target": "surface"}])),
        ("settings", expander_label, expander_human,
         dict(role="expander", leads=False, animationMs=anim, effects=[{"kind": "reveal", "target": "panel_1"}])),
    ]) + 20
    parent = "surface"
    commit = "save" if final == "save" else "reject"
    for lvl in range(1, levels + 1):
        pid = f"panel_{lvl}"
        fx.node(pid, "p1", parent, "container", "", (fx.x0, y, fx.cw, 0), visible=False)
        if lvl < levels:
            y += toggles(fx, "p1", pid, y, [lvl - 1], enables=[commit] if final == "save" else [])
            fx.control(f"more_{lvl}", "p1", pid, "expander", "More settings", (fx.x0, y, BTN_W, BTN_H),
                       "SETTINGS", leads=False, animationMs=anim,
                       effects=[{"kind": "reveal", "target": f"panel_{lvl + 1}"}])
            y += BTN_H + GAP
        else:
            which = list(range(min(levels - 1, 2), 3))
            y += toggles(fx, "p1", pid, y, which, enables=[commit] if final == "save" else [])
            if final == "save":
                fx.control("save", "p1", pid, "button", "Save choices", (fx.x0, y, BTN_W, BTN_H), "SAVE",
                           enabled=False, animationMs=anim)
            else:
                fx.control("reject", "p1", pid, "button", "Reject all", (fx.x0, y, BTN_W, BTN_H), "REJECT",
                           animationMs=anim)
            y += BTN_H + 12
        parent = pid
    for lvl in range(1, levels + 1):
        b = fx.nodes[f"panel_{lvl}"]["bounds"]
        b["h"] = y - b["y"]
    fx.nodes["surface"]["bounds"]["h"] = y - top
    change_consent(fx)
    fx.set_surface("surface", y)
    if expect:
        fx.expect = expect
    return fx


def multi_step(fid, note, tags, panes=3, breakpoint="desktop", first=("Manage settings", "SETTINGS"),
               staged=False, final="save", anim=0, with_trap=False, expect=None):
    """p1 -> ... -> p{panes}. Middle panes carry information (plus one toggle
    each when staged) and a 'Continue' button; the last pane holds the
    remaining toggles and the commit control."""
    fx = Fixture(fid, note, ["multi-step"] + tags, breakpoint, "MULTI_STEP")
    for i in range(1, panes + 1):
        fx.pane(f"p{i}", i == 1)
    top = 300 if breakpoint == "desktop" else 120
    fx.node("surface", "p1", None, "container", "", (fx.x0 - 16, top, fx.cw + 32, 0))
    y = header(fx, "p1", "surface", top + 24)
    if with_trap:
        y += trap(fx, "trap", "p1", "surface", y) + 16
    leads = staged or panes == 2
    y += buttons(fx, "p1", "surface", y, [
        ("accept", "Accept all", "ACCEPT",
         dict(emphasisClass="primary", width=180, effects=[{"kind": "dismiss", "target": "surface"}])),
        ("settings", first[0], first[1],
         dict(leads=leads, animationMs=anim, effects=[{"kind": "navigate", "target": "p2"}])),
    ]) + 20
    fx.nodes["surface"]["bounds"]["h"] = y - top
    commit = "save" if final == "save" else "reject"
    used = set()
    for i in range(2, panes):
        pid = f"p{i}"
        box = f"box_{i}"
        fx.node(box, pid, None, "container", "", (fx.x0 - 16, 40, fx.cw + 32, 300))
        py = 64
        fx.node(f"info_{i}", pid, box, "text", f"Step {i} of {panes}: how our partners use data", (fx.x0, py, fx.cw, 40))
        py += 56
        if with_trap:
            py += trap(fx, f"trap_{i}", pid, box, py) + 16
        if staged:
            k = (i - 2) % 3
            used.add(k)
            py += toggles(fx, pid, box, py, [k], prefix=f"step{i}")
        fx.control(f"next_{i}", pid, box, "button", "Continue", (fx.x0, py, BTN_W, BTN_H), "INFORMATIONAL",
                   animationMs=anim, effects=[{"kind": "navigate", "target": f"p{i + 1}"}])
    last = f"p{panes}"
    box = f"box_{panes}"
    fx.node(box, last, None, "container", "", (fx.x0 - 16, 40, fx.cw + 32, 400))
    py = 64
    if with_trap:
        py += trap(fx, f"trap_{panes}", last, box, py) + 16
    py += toggles(fx, last, box, py, [k for k in range(3) if k not in used] or [0],
                  enables=[commit] if final == "save" else [])
    if final == "save":
        fx.control("save", last, box, "button", "Save choices", (fx.x0, py, BTN_W, BTN_H), "SAVE", enabled=False,
                   animationMs=anim)
    else:
        fx.control("reject", last, box, "button", "Reject all", (fx.x0, py, BTN_W, BTN_H), "REJECT",
                   animationMs=anim)
    change_consent(fx)
    fx.set_surface("surface", y)
    if expect:
        fx.expect = expect
    return fx


# ---------------------------------------------------------------- named cases

def vignette():
    """Long notice; the settings disclosure sits below the fold and reveals a
    toggle and a save control on the same row; save needs a toggle first."""
    fx = Fixture("vignette", "Worked vignette: scroll to the settings disclosure, expand it, switch one "
                 "purpose off, save.", ["scroll-wall", "accordion", "scrollable-surface", "worked-example"])
    fx.pane("p1", True)
    fx.node("surface", "p1", None, "container", "", (fx.x0 - 16, 0, fx.cw + 32, 1100))
    y = header(fx, "p1", "surface", 24)
    fx.control("accept", "p1", "surface", "button", "Accept all", (fx.x0, y, fx.cw, 56), "ACCEPT",
               emphasisClass="primary", effects=[{"kind": "dismiss", "target": "surface"}])
    y += 80
    fx.node("policy_text", "p1", "surface", "text", "Detailed description of every purpose and partner",
            (fx.x0, y, fx.cw, 1000 - y - 24))
    y = 1000
    fx.control("settings", "p1", "surface", "expander", "Manage settings", (fx.x0, y, BTN_W, BTN_H), "SETTINGS",
               leads=False, effects=[{"kind": "reveal", "target": "panel"}])
    fx.node("panel", "p1", "surface", "container", "", (fx.x0 + 170, y, 470, BTN_H), visible=False)
    fx.control("toggle_1", "p1", "panel", "toggle", "Personalised advertising", (fx.x0 + 170, y + 10, 44, 24),
               "INFORMATIONAL", effects=[{"kind": "toggleState", "target": "save"}])
    fx.node("rationale_1", "p1", "panel", "text", "Uses your activity to choose which ads you see.",
            (fx.x0 + 224, y + 12, 250, 20), rationaleFor="toggle_1")
    fx.control("save", "p1", "panel", "button", "Save choices", (fx.x0 + 490, y, BTN_W, BTN_H), "SAVE",
               enabled=False)
    change_consent(fx)
    fx.set_surface("surface", 1100)
    fx.expect = {"pointer": "EV_SCROLL -> EV_EXPAND -> EV_TOGGLE -> EV_ACTION"}
    return fx


def multistep_named(fid, with_trap):
    fx = Fixture(fid, "Multi-step: a euphemistic entry opens a step with one purpose, "
                 "'Continue' leads to the remaining purposes and a save control that "
                 "needs a change first." + (" A focus-trapping link group precedes every route." if with_trap else ""),
                 ["multi-step", "euphemism"] + (["focus-trap"] if with_trap else []), archetype="MULTI_STEP")
    for p in ("p1", "p2", "p3"):
        fx.pane(p, p == "p1")
    fx.node("surface", "p1", None, "container", "", (fx.x0 - 16, 300, fx.cw + 32, 0))
    y = header(fx, "p1", "surface", 324)
    if with_trap:
        y += trap(fx, "trap", "p1", "surface", y) + 16
    y += buttons(fx, "p1", "surface", y, [
        ("accept", "Accept all", "ACCEPT",
         dict(emphasisClass="primary", width=180, effects=[{"kind": "dismiss", "target": "surface"}])),
        ("settings", "Manage experience", "SETTINGS", dict(effects=[{"kind": "navigate", "target": "p2"}])),
    ]) + 20
    fx.nodes["surface"]["bounds"]["h"] = y - 300
    fx.node("box_2", "p2", None, "container", "", (fx.x0 - 16, 40, fx.cw + 32, 300))
    py = 64
    if with_trap:
        py += trap(fx, "trap_2", "p2", "box_2", py) + 16
    py += toggles(fx, "p2", "box_2", py, [0], prefix="step2")
    fx.control("next_2", "p2", "box_2", "button", "Continue", (fx.x0, py, BTN_W, BTN_H), "INFORMATIONAL",
               effects=[{"kind": "navigate", "target": "p3"}])
    fx.node("box_3", "p3", None, "container", "", (fx.x0 - 16, 40, fx.cw + 32, 300))
    py = 64
    if with_trap:
        py += trap(fx, "trap_3", "p3", "box_3", py) + 16
    py += toggles(fx, "p3", "box_3", py, [1, 2], enables=["save"])
    fx.control("save", "p3", "box_3", "button", "Save choices", (fx.x0, py, BTN_W, BTN_H), "SAVE", enabled=False)
    change_consent(fx)
    fx.set_surface("surface", y)
    fx.expect = {"pointer": "EV_ACTION -> EV_ACTION -> EV_TOGGLE -> EV_ACTION"}
    return fx


def censored():
    """Reject stays disabled and nothing else offers a way out."""
    fx = Fixture("censored", "No reachable alternative: reject is permanently disabled.",
                 ["disabled-control", "censoring"], archetype=None)
    fx.pane("p1", True)
    fx.node("surface", "p1", None, "container", "", (fx.x0 - 16, 520, fx.cw + 32, 300))
    y = header(fx, "p1", "surface", 544)
    buttons(fx, "p1", "surface", y, [
        ("accept", "Accept all", "ACCEPT", dict(emphasisClass="primary", effects=[{"kind": "dismiss", "target": "surface"}])),
        ("reject", "Reject all", "REJECT", dict(enabled=False)),
        ("policy", "Privacy policy", "INFORMATIONAL", dict(role="link")),
    ])
    fx.set_surface("surface", 820)
    fx.expect = {"pointer": "[BUDGET_EXHAUSTED]", "keyboard": "[BUDGET_EXHAUSTED]"}
    return fx


def newsletter_decline():
    """A 'Decline' button belongs to a newsletter offer inside the surface; the
    consent alternative is behind 'Cookie settings'."""
    def extra(fx, y):
        fx.node("newsletter", "p1", "surface", "text", "Get our weekly newsletter", (fx.x0, y, 300, 24))
        fx.control("newsletter_decline", "p1", "surface", "button", "Decline", (fx.x0 + 320, y - 10, 120, BTN_H),
                   "INFORMATIONAL")
        return y + 44
    return co_present("distractor_newsletter", "Distractor: a newsletter 'Decline' sits inside the consent surface; "
                      "the real alternative is the settings pane.", ["distractor"],
                      reject=None, settings=("Cookie settings", "SETTINGS"), extra=extra)


def tiny_reject():
    return co_present("tiny_reject", "Reject is rendered as a 10 x 10 px glyph: present in the tree, "
                      "not perceivable.", ["imperceptible"],
                      reject=("Reject all", "REJECT"), reject_kw={"accessibleName": "Reject all"},
                      settings=("Customize", "SETTINGS"))


def locked_settings():
    fx = co_present("locked_settings", "Settings opens a pane whose toggles are all locked on; no refusal or "
                    "save exists.", ["disabled-control", "settings-only-locked"],
                    reject=None, settings=("Cookie settings", "SETTINGS"))
    # Replace the pane with a locked variant.
    for nid in [k for k, n in fx.nodes.items() if n["paneId"] == "p2"]:
        del fx.nodes[nid]
        fx.human.pop(nid, None)
    settings_pane(fx, "p2", locked=True)
    fx.human["settings"] = ("SETTINGS", False)
    return fx


def keyboard_unreachable_reject():
    fx = co_present("keyboard_skip_reject", "Reject is removed from the tab order (tabIndex -1); keyboard users "
                    "must go through settings.", ["keyboard"], reject_kw={"tabIndex": -1})
    return fx


def roving_buttons():
    fx = co_present("roving_group", "Accept, reject and settings form one roving-tabindex group.", ["keyboard"],
                    accept_kw={"rovingTabIndex": True}, reject_kw={"rovingTabIndex": True})
    fx.nodes["settings"]["rovingTabIndex"] = True
    return fx


def hidden_reject():
    fx = co_present("hidden_reject", "Reject exists in the tree but is display:none at first encounter.",
                    ["occluded"], reject_kw={"visible": False})
    return fx


# ------------------------------------------------------------------ the corpus

def build():
    fxs = []
    # Named worked examples.
    fxs.append(co_present("copresent", "Co-present: accept, reject and customize share one row.", [],
                          expect={"pointer": "EV_ACTION", "keyboard": "EV_ACTION"}))
    fxs.append(scroll_wall("scrollwall", "Scroll wall: reject sits below two and a half viewports of policy "
                           "text.", [], 2250, expect={"pointer": "EV_SCROLL -> EV_ACTION"}))
    fxs.append(accordion("accordion", "Accordion: one disclosure reveals the purposes and a save control "
                         "that needs a change first.", [],
                         expect={"pointer": "EV_EXPAND -> EV_TOGGLE -> EV_ACTION"}))
    fxs.append(multistep_named("multistep", False))
    fxs.append(multistep_named("multistep_trap", True))
    fxs.append(vignette())
    fxs.append(censored())

    # Co-present variants.
    for i, (label, human) in enumerate([("Decline", "REJECT"), ("Only necessary", "REJECT"),
                                        ("Refuse all", "REJECT"), ("Necessary only", "REJECT"),
                                        ("Deny all", "REJECT")], 1):
        fxs.append(co_present(f"co_label_{i}", f"Co-present with reject worded '{label}'.", ["label-variant"],
                              reject=(label, human)))
    fxs.append(co_present("co_mobile", "Co-present at the mobile breakpoint; buttons stack.", ["mobile"],
                          breakpoint="mobile"))
    fxs.append(co_present("co_mobile_anim", "Co-present on mobile with animated transitions.", ["mobile"],
                          breakpoint="mobile", anim=400))
    fxs.append(co_present("co_animated", "Co-present with a 600 ms reject transition.", [], anim=600))
    fxs.append(co_present("co_trap", "Co-present with a focus-trapping link group before the buttons.",
                          ["focus-trap"], with_trap=True))
    fxs.append(co_present("co_no_settings", "Co-present with accept and reject only.", [], settings=None))
    fxs.append(co_present("co_disabled_reject", "Reject is disabled; customize still opens choices.",
                          ["disabled-control"], reject_kw={"enabled": False}))
    fxs.append(keyboard_unreachable_reject())
    fxs.append(roving_buttons())
    fxs.append(hidden_reject())

    # Scroll-wall variants.
    for i, depth in enumerate([1100, 1500, 1900, 3000], 1):
        fxs.append(scroll_wall(f"sw_depth_{i}", f"Scroll wall with the reject bottom at {depth} px.", [], depth))
    fxs.append(scroll_wall("sw_mobile", "Scroll wall at the mobile breakpoint.", ["mobile"], 2000,
                           breakpoint="mobile"))
    fxs.append(scroll_wall("sw_sticky", "Scroll wall under a 200 px sticky footer (effective height 700).",
                           ["sticky-footer"], 1600, evh=700))
    fxs.append(scroll_wall("sw_trap", "Scroll wall with a focus trap above the accept button.", ["focus-trap"],
                           1800, with_trap=True))
    fxs.append(scroll_wall("sw_animated", "Scroll wall with a 500 ms reject transition.", [], 1800, anim=500))
    fxs.append(scroll_wall("sw_short", "Reject just fits in the first viewport; nothing to scroll past.", [], 880))

    # Accordion variants.
    fxs.append(accordion("acc_nested_2", "Two nested disclosures.", ["nested"], levels=2,
                         expect={"pointer": "EV_EXPAND -> EV_EXPAND -> EV_TOGGLE -> EV_ACTION"}))
    fxs.append(accordion("acc_nested_3", "Three nested disclosures.", ["nested"], levels=3))
    fxs.append(accordion("acc_reject_inside", "The disclosure reveals an enabled reject.", [], final="reject",
                         expect={"pointer": "EV_EXPAND -> EV_ACTION"}))
    fxs.append(accordion("acc_mobile", "Accordion at the mobile breakpoint.", ["mobile"], breakpoint="mobile"))
    fxs.append(accordion("acc_animated", "Accordion with 350 ms disclosure animation.", [], anim=350))
    fxs.append(accordion("acc_trap", "Accordion with a focus trap ahead of the disclosure.", ["focus-trap"],
                         with_trap=True))
    fxs.append(accordion("acc_label_options", "Disclosure worded 'More options'.", ["label-variant"],
                         expander_label="More options"))
    fxs.append(accordion("acc_euphemism", "Disclosure worded 'Learn more' although it holds the choices.",
                         ["euphemism"], expander_label="Learn more"))

    # Multi-step variants.
    fxs.append(multi_step("ms_two", "Two panes: settings opens a pane with an enabled reject, so settings "
                          "itself is the alternative.", [], panes=2, final="reject", expect={"pointer": "EV_ACTION"}))
    fxs.append(multi_step("ms_four", "Four panes; two informational steps precede the choices.", [], panes=4,
                          expect={"pointer": "EV_ACTION -> EV_ACTION -> EV_ACTION -> EV_TOGGLE -> EV_ACTION"}))
    fxs.append(multi_step("ms_staged", "Each step after the first stages one purpose, so the settings entry "
                          "already leads to a choice.", [], panes=4, staged=True, expect={"pointer": "EV_ACTION"}))
    fxs.append(multi_step("ms_mobile", "Multi-step at the mobile breakpoint.", ["mobile"], breakpoint="mobile"))
    fxs.append(multi_step("ms_animated", "Multi-step with 300 ms pane transitions.", [], anim=300))
    fxs.append(multi_step("ms_trap_four", "Four panes with a focus trap on every pane.", ["focus-trap"], panes=4,
                          with_trap=True))
    fxs.append(multi_step("ms_set_preferences", "Entry worded 'Set preferences'.", ["label-variant"],
                          first=("Set preferences", "SETTINGS")))

    # Euphemisms and wording the lexicon does not know.
    fxs.append(co_present("euph_your_choices", "Settings worded 'Your choices'.", ["euphemism"], reject=None,
                          settings=("Your choices", "SETTINGS")))
    fxs.append(co_present("euph_privacy_choices", "Settings worded 'Privacy choices'.", ["euphemism"], reject=None,
                          settings=("Privacy choices", "SETTINGS")))
    fxs.append(co_present("euph_continue_without", "Reject worded 'Continue without agreeing'.",
                          ["euphemism", "unlisted-wording"], reject=("Continue without agreeing", "REJECT")))
    fxs.append(co_present("euph_no_thanks", "Reject worded 'No thanks'.", ["euphemism", "unlisted-wording"],
                          reject=("No thanks", "REJECT")))
    fxs.append(multi_step("euph_ms_manage", "Multi-step whose entry reads 'Manage experience'.", ["euphemism"],
                          first=("Manage experience", "SETTINGS"), staged=True))
    fxs.append(co_present("euph_more_information", "Settings worded 'More information' although it opens "
                          "the purposes.", ["euphemism"], reject=("Reject all", "REJECT"),
                          settings=("More information", "SETTINGS")))

    # Distractors and perception failures.
    fxs.append(newsletter_decline())
    tiny = tiny_reject()
    b = tiny.nodes["reject"]["bounds"]
    b["w"], b["h"] = 10, 10
    tiny.nodes["reject"]["label"] = ""
    fxs.append(tiny)
    fxs.append(locked_settings())

    # Disabled controls and scrollable surfaces.
    fxs.append(co_present("co_reject_needs_toggle", "Reject is disabled until any purpose is changed.",
                          ["disabled-control"], settings=None,
                          extra=lambda fx, y: y + toggles(fx, "p1", "surface", y, [0], enables=["reject"], prefix="inline"),
                          reject_kw={"enabled": False}))
    fxs.append(scroll_wall("sw_mobile_deep", "Deep scroll wall on mobile.", ["mobile"], 3200, breakpoint="mobile"))
    fxs.append(accordion("acc_nested_mobile", "Two nested disclosures on mobile.", ["mobile", "nested"], levels=2,
                         breakpoint="mobile"))
    fxs.append(multi_step("ms_five", "Five panes.", [], panes=5))
    fxs.append(multi_step("ms_mobile_trap", "Multi-step on mobile with focus traps on every pane.",
                          ["mobile", "focus-trap"], breakpoint="mobile", with_trap=True))
    fxs.append(co_present("co_primary_accept", "Accept is a large primary button; reject is plain.", [],
                          accept_kw={}, reject_kw={}))
    return fxs


def main():
    out = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "v1"
    fixtures = build()
    ids = [f.id for f in fixtures]
    assert len(ids) == len(set(ids)), "duplicate fixture ids"
    assert len(fixtures) == 60, f"expected 60 fixtures, built {len(fixtures)}"
    snapdir = out / "snapshots"
    snapdir.mkdir(parents=True, exist_ok=True)
    for old in snapdir.glob("*.json"):
        old.unlink()
    entries = []
    for fx in fixtures:
        name = f"{fx.id}.snapshot.json"
        (snapdir / name).write_text(json.dumps(fx.document(), indent=2, sort_keys=True) + "\n")
        entries.append({
            "id": fx.id,
            "snapshot": "snapshots/" + name,
            "note": fx.note,
            "tags": sorted(set(fx.tags)),
            "archetype": fx.archetype,
            "labels": fx.labels(),
            "expectedStrips": fx.expect,
        })
    manifest = {"version": 1, "fixtures": entries}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(entries)} fixtures to {out}")


if __name__ == "__main__":
    main()
