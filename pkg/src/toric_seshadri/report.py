"""Machine (JSON) and human (aligned text) views of results.

Every builder returns a plain JSON-ready dict; ``render_text`` works from that
dict alone, so both views always carry the same numbers.
"""

from __future__ import annotations

import json
from typing import Sequence

from .fan import Fan, curve_class
from .klyachko import EquivariantBundle, RestrictionProfile, associated_characters
from .positivity import MoriGenerators, Verdict
from .seshadri import HypothesisReport, SeshadriResult


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(h) for h in headers]] + [[_cell(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _cell(c) -> str:
    if c is None:
        return "-"
    if isinstance(c, bool):
        return "yes" if c else "no"
    if isinstance(c, (list, tuple)):
        return "{" + ", ".join(str(x) for x in c) + "}"
    return str(c)


# -- builders -----------------------------------------------------------------


def fan_doc(fan: Fan) -> dict:
    doc = {"command": "fan", **fan.describe()}
    for w, C in zip(doc["walls"], fan.walls):
        w["curve_class"] = list(curve_class(fan, C).gamma_coords)
    doc["nef_criterion"] = (
        "D = sum a_i D_i is nef iff every a_i >= 0, ample iff every a_i > 0"
        if fan.is_bott else "O(d) is nef iff d >= 0, ample iff d > 0"
    )
    return doc


def _bundle_header(bundle: EquivariantBundle, twist) -> dict:
    return {
        "bundle": bundle.name,
        "rank": bundle.rank,
        "variety": bundle.fan.family,
        "n": bundle.fan.n,
        "twist": list(twist.coefficients) if twist is not None else None,
    }


def restrict_doc(bundle: EquivariantBundle, profile: RestrictionProfile, twist=None) -> dict:
    fan = profile.fan
    rows = []
    for C in fan.walls:
        st = profile[C.label]
        ref = profile.reference.get(C.label)
        rows.append({
            "curve": C.label,
            "divisors": C.divisor_label,
            "degrees": list(st.degrees),
            "deg": st.deg,
            "mu_min": st.mu_min,
            "m": st.m,
            "reference_degrees": list(ref.degrees) if ref is not None else None,
            "matches_reference": (ref == st) if ref is not None else None,
        })
    chars = {
        ",".join(fan.ray_labels[r] for r in cone): [list(u) for u in associated_characters(bundle, ci)]
        for ci, cone in enumerate(fan.max_cones)
    }
    return {
        "command": "restrict",
        **_bundle_header(bundle, twist),
        "characters": chars,
        "curves": rows,
        "discrepancies": [r["curve"] for r in rows if r["matches_reference"] is False],
    }


def _verdict(v: Verdict) -> dict:
    return {"holds": v.holds, "witness": v.witness, "degree": v.degree}


def nef_doc(bundle, profile: RestrictionProfile, nef: Verdict, ample: Verdict, twist=None) -> dict:
    return {
        "command": "nef",
        **_bundle_header(bundle, twist),
        "nef": _verdict(nef),
        "ample": _verdict(ample),
        "mu_min": profile.mu_table(),
    }


def mori_doc(bundle, gens: MoriGenerators, twist=None) -> dict:
    return {
        "command": "mori",
        **_bundle_header(bundle, twist),
        "generators": [
            {
                "generator": g,
                "over_curve": c,
                "xi_product": gens.xi(g),
                "pushforward": list(gens.pushforwards[g].gamma_coords) if gens.pushforwards[g] else None,
            }
            for g, c in zip(gens.labels, gens.curves)
        ],
    }


def check_doc(bundle, report: HypothesisReport, twist=None) -> dict:
    return {"command": "check", **_bundle_header(bundle, twist), "hypotheses": report.as_dict()}


def seshadri_doc(bundle, results: Sequence[SeshadriResult], twist=None) -> dict:
    return {
        "command": "seshadri",
        **_bundle_header(bundle, twist),
        "results": [r.as_dict() for r in results],
    }


# -- text rendering ---------------------------------------------------------------


def _header_text(doc: dict) -> str:
    tw = doc.get("twist")
    twist = f" (x) O({', '.join(map(str, tw))})" if tw else ""
    return f"{doc['bundle']}{twist}, rank {doc['rank']}, on {doc['variety']} n={doc['n']}"


def _render_fan(doc: dict) -> str:
    rays = table(["ray", "vector", "divisor"], [[r["label"], r["vector"], r["divisor"]] for r in doc["rays"]])
    walls = table(
        ["curve", "divisors", "wall", "relation", "class"],
        [
            [w["label"], w["divisors"], w["wall_rays"],
             " ".join(f"{k}:{v}" for k, v in w["wall_relation"].items()), w["curve_class"]]
            for w in doc["walls"]
        ],
    )
    cones = "maximal cones: " + " ".join("(" + ",".join(c) + ")" for c in doc["max_cones"])
    head = f"{doc['family']} n={doc['n']}"
    if doc.get("degenerate"):
        head += " (degenerate: the only invariant curve is the variety itself)"
    return "\n\n".join([head, rays, cones, walls, doc["nef_criterion"]])


def _render_restrict(doc: dict) -> str:
    t = table(
        ["curve", "divisors", "degrees", "deg", "mu_min", "m", "reference"],
        [[r["curve"], r["divisors"], r["degrees"], r["deg"], r["mu_min"], r["m"], r["reference_degrees"]]
         for r in doc["curves"]],
    )
    chars = table(["cone", "characters"], [[k, [tuple(u) for u in v]] for k, v in doc["characters"].items()])
    out = [_header_text(doc), t, chars]
    if doc["discrepancies"]:
        out.append("computed splitting differs from the reference table on: " + ", ".join(doc["discrepancies"]))
    return "\n\n".join(out)


def _verdict_text(name: str, v: dict) -> str:
    if v["holds"]:
        return f"{name}: yes"
    return f"{name}: no; witness {v['witness']} degree {v['degree']}"


def _render_nef(doc: dict) -> str:
    mu = table(["curve", "mu_min"], list(doc["mu_min"].items()))
    return "\n\n".join([_header_text(doc), _verdict_text("nef", doc["nef"]) + "\n"
                        + _verdict_text("ample", doc["ample"]), mu])


def _render_mori(doc: dict) -> str:
    t = table(["generator", "over", "xi.C", "pi_*C"],
              [[g["generator"], g["over_curve"], g["xi_product"], g["pushforward"]] for g in doc["generators"]])
    return "\n\n".join([_header_text(doc), t])


def _render_hypotheses(h: dict) -> str:
    t = table(
        ["condition", "requirement", "values", "pass", "required"],
        [[c["name"], c["requirement"], " ".join(f"{k}={v}" for k, v in c["values"].items()),
          c["passed"], c["required"]] for c in h["conditions"]],
    )
    verdict = "all required conditions hold" if h["passed"] else "some required condition fails"
    return f"theorem {h['theorem']}: {verdict}\n{t}"


def _render_check(doc: dict) -> str:
    return "\n\n".join([_header_text(doc), _render_hypotheses(doc["hypotheses"])])


def _value_text(v: dict) -> str:
    if v["kind"] == "exact":
        return f"exact {v['value']}"
    upper = v["upper"] if v["upper"] is not None else "open"
    return f"interval [{v['lower']}, {upper}]"


def _render_seshadri(doc: dict) -> str:
    rows = [[r["point"], r["level"], _value_text(r["value"])] for r in doc["results"]]
    out = [_header_text(doc), table(["point", "level", "epsilon"], rows)]
    for r in doc["results"]:
        for note in r["notes"]:
            out.append(f"note ({r['point']}): {note}")
    if doc["results"]:
        first = doc["results"][0]
        if first["per_gamma_mu"]:
            out.append(table(["Gamma level", "mu_min"], list(first["per_gamma_mu"].items())))
        out.append(_render_hypotheses(first["hypotheses"]))
    return "\n\n".join(out)


RENDERERS = {
    "fan": _render_fan,
    "restrict": _render_restrict,
    "nef": _render_nef,
    "mori": _render_mori,
    "check": _render_check,
    "seshadri": _render_seshadri,
}


def render_text(doc: dict) -> str:
    return RENDERERS[doc["command"]](doc) + "\n"
