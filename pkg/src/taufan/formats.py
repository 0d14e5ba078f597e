"""Algebra files, versioned JSON documents, DOT and SVG output."""

from __future__ import annotations

import json
import math
import xml.etree.ElementTree as ET
from typing import Any, Sequence

from . import linalg as la
from .algebra import Algebra, AlgebraPresentation, Arrow, Quiver
from .categories import CategoryTable, hasse_edges
from .errors import PresentationError, SVGUnsupportedRank
from .modules import Representation
from .projective import g_vector
from .registry import registry_for
from .tautilt import PairCatalog, TauRigidPair
from .wallchamber import Cone, TFClass, Wall

SCHEMA = "taufan/1"
DEFAULT_LENGTH_BOUND = 12


class ParseError(PresentationError):
    """Malformed algebra file."""


# -- algebra files ---------------------------------------------------------------------------
def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise ParseError(f"{where}: field {key!r} must be an integer")
    if kind is not int and not isinstance(val, kind):
        raise ParseError(f"{where}: field {key!r} must be of type {kind.__name__}")
    return val


def parse_algebra(doc: Any) -> AlgebraPresentation:
    """Validate an AlgebraFile document and turn it into a presentation."""
    if not isinstance(doc, dict):
        raise ParseError("algebra file must be a JSON object")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ParseError("field 'name' must be a string")
    n = _require(doc, "vertices", int, "algebra")
    arrows = []
    for k, a in enumerate(_require(doc, "arrows", list, "algebra")):
        where = f"arrows[{k}]"
        if not isinstance(a, dict):
            raise ParseError(f"{where} must be an object")
        arrows.append(Arrow(_require(a, "name", str, where), _require(a, "from", int, where), _require(a, "to", int, where)))
    relations = []
    for r, rel in enumerate(doc.get("relations", [])):
        if not isinstance(rel, list) or not rel:
            raise ParseError(f"relations[{r}] must be a non-empty list of terms")
        terms = []
        for t, term in enumerate(rel):
            where = f"relations[{r}][{t}]"
            if not isinstance(term, dict):
                raise ParseError(f"{where} must be an object")
            coeff = _require(term, "coeff", (str, int), where)
            try:
                c = la.to_q(coeff)
            except (ValueError, ZeroDivisionError, TypeError) as exc:
                raise ParseError(f"{where}: bad coefficient {coeff!r}") from exc
            path = _require(term, "path", list, where)
            if not path or not all(isinstance(x, str) for x in path):
                raise ParseError(f"{where}: path must be a non-empty list of arrow names")
            terms.append((c, tuple(path)))
        relations.append(tuple(terms))
    L = doc.get("length_bound", DEFAULT_LENGTH_BOUND)
    if isinstance(L, bool) or not isinstance(L, int):
        raise ParseError("field 'length_bound' must be an integer")
    return AlgebraPresentation(Quiver(n, tuple(arrows)), tuple(relations), L, name)


def load_algebra_file(path: str) -> AlgebraPresentation:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return parse_algebra(doc)


def emit_algebra(p: AlgebraPresentation) -> dict:
    return {
        "name": p.name,
        "vertices": p.quiver.vertex_count,
        "arrows": [{"name": a.id, "from": a.source, "to": a.target} for a in p.quiver.arrows],
        "relations": [[{"coeff": la.q_str(c), "path": list(path)} for c, path in rel] for rel in p.relations],
        "length_bound": p.length_bound,
    }


# -- JSON documents --------------------------------------------------------------------------
def document(kind: str, algebra: Algebra | None, body: dict) -> dict:
    head = {"schema": SCHEMA, "kind": kind}
    if algebra is not None:
        head["algebra"] = algebra.presentation.name
    head.update(body)
    return head


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _matrix_json(m) -> list[list[str]]:
    return [[la.q_str(x) for x in row] for row in la.rows_of(m)]


def module_to_json(M: Representation) -> dict:
    return {
        "id": registry_for(M.algebra).register(M),
        "dims": list(M.dims),
        "arrows": {a.id: _matrix_json(m) for a, m in zip(M.algebra.quiver.arrows, M.maps)},
    }


def module_from_json(A: Algebra, doc: dict) -> Representation:
    dims = doc["dims"]
    maps = []
    for a in A.quiver.arrows:
        rows = doc["arrows"][a.id]
        r, c = dims[a.target - 1], dims[a.source - 1]
        maps.append(la.from_rows([[la.to_q(x) for x in row] for row in rows], c) if r else la.zeros(0, c))
    return Representation(A, dims, maps)


def pair_to_json(p: TauRigidPair) -> dict:
    return {
        "label": p.label,
        "modules": [dict(module_to_json(M), g=list(g_vector(M))) for M in p.modules],
        "projectives": list(p.projective_part),
        "g_rays": [list(g) for g in p.g_rays],
        "rank": p.rank,
        "tau_tilting": p.is_tau_tilting,
    }


def pair_from_json(A: Algebra, doc: dict) -> TauRigidPair:
    mods = [module_from_json(A, m) for m in doc["modules"]]
    return TauRigidPair.from_modules(A, mods, doc["projectives"])


def pairs_document(catalog: PairCatalog) -> dict:
    return document(
        "pairs",
        catalog.algebra,
        {
            "counts": {"pairs": len(catalog.pairs), "tau_tilting": len(catalog.tilting)},
            "pairs": [pair_to_json(p) for p in catalog.pairs],
        },
    )


def cone_to_json(C: Cone) -> dict:
    return {"ambient": C.ambient, "rays": [list(r) for r in C.rays]}


def cone_from_json(doc: dict) -> Cone:
    return Cone(tuple(tuple(int(x) for x in r) for r in doc["rays"]), int(doc["ambient"]))


def fan_document(classes: Sequence[TFClass], walls: Sequence[Wall]) -> dict:
    rays = sorted({r for E in classes for r in E.cone.rays})
    return document(
        "fan",
        classes[0].pair.algebra if classes else None,
        {
            "rays": [list(r) for r in rays],
            "cones": [
                {"class": E.id, "cone": cone_to_json(E.cone), "wide": list(E.wide_key), "tau_tilting": E.pair.is_tau_tilting}
                for E in classes
            ],
            "walls": [
                {"cone": cone_to_json(w.cone), "brick": w.brick, "dim_vector": list(w.dim_vector), "classes": list(w.classes)}
                for w in walls
            ],
        },
    )


def table_to_json(cat: CategoryTable) -> dict:
    return {
        "name": cat.name,
        "objects": list(cat.objects),
        "hom": [{"from": a, "to": b, "morphisms": list(ms)} for (a, b), ms in sorted(cat.hom.items(), key=lambda kv: (cat.objects.index(kv[0][0]), cat.objects.index(kv[0][1])))],
        "identity": {a: cat.identity[a] for a in cat.objects},
        "compose": [{"f": f, "g": g, "result": h} for (g, f), h in sorted(cat.compose.items(), key=lambda kv: (kv[0][1], kv[0][0]))],
        "members": {a: list(cat.members.get(a, [])) for a in cat.objects},
        "representatives": {m: [list(r) for r in cat.reps.get(m, [])] for m in sorted(cat.source)},
        "hom_matrix": cat.hom_matrix(),
    }


def table_from_json(doc: dict) -> CategoryTable:
    hom = {(h["from"], h["to"]): list(h["morphisms"]) for h in doc["hom"]}
    source = {m: a for (a, _), ms in hom.items() for m in ms}
    target = {m: b for (_, b), ms in hom.items() for m in ms}
    return CategoryTable(
        doc["name"],
        list(doc["objects"]),
        hom,
        {(c["g"], c["f"]): c["result"] for c in doc["compose"]},
        dict(doc["identity"]),
        source,
        target,
        {a: list(v) for a, v in doc["members"].items()},
        {m: [tuple(r) for r in v] for m, v in doc["representatives"].items()},
    )


def tables_equal(a: CategoryTable, b: CategoryTable) -> bool:
    return (
        a.name == b.name
        and a.objects == b.objects
        and {k: sorted(v) for k, v in a.hom.items()} == {k: sorted(v) for k, v in b.hom.items()}
        and a.compose == b.compose
        and a.identity == b.identity
        and a.source == b.source
        and a.target == b.target
        and a.members == b.members
        and {k: list(v) for k, v in a.reps.items()} == {k: list(v) for k, v in b.reps.items()}
    )


# -- DOT --------------------------------------------------------------------------------------
PALETTE = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal", "gold", "navy", "olive", "crimson")


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def category_to_dot(cat: CategoryTable, poset: CategoryTable | None = None) -> str:
    """Posets are drawn as Hasse diagrams.

    A quotient category is drawn over the Hasse diagram of ``poset``: members of
    one object share a cluster and covering edges are coloured by the morphism
    class they represent, black when the class has a single covering edge.
    """
    lines = [f"digraph {_dot_id(cat.name)} {{", "  rankdir=TB;", "  node [shape=box, fontname=monospace];"]
    if poset is None:
        for a in cat.objects:
            lines.append(f"  {_dot_id(a)};")
        for a, b in hasse_edges(cat):
            lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    for k, obj in enumerate(cat.objects):
        lines.append(f"  subgraph cluster_{k} {{")
        lines.append(f"    label={_dot_id(obj)};")
        for m in cat.members[obj]:
            lines.append(f"    {_dot_id(m)};")
        lines.append("  }")
    cls_of = {}
    for m, reps in cat.reps.items():
        for r in reps:
            cls_of[r] = m
    edges = hasse_edges(poset)
    counts: dict[str, int] = {}
    for e in edges:
        counts[cls_of[e]] = counts.get(cls_of[e], 0) + 1
    colours = {}
    for e in edges:
        m = cls_of[e]
        if counts[m] > 1 and m not in colours:
            colours[m] = (PALETTE[len(colours) % len(PALETTE)], chr(ord("a") + len(colours) % 26))
    for a, b in edges:
        m = cls_of[(a, b)]
        if m in colours:
            colour, tag = colours[m]
            lines.append(f"  {_dot_id(a)} -> {_dot_id(b)} [color={colour}, label={tag}, tooltip={_dot_id(m)}];")
        else:
            lines.append(f"  {_dot_id(a)} -> {_dot_id(b)} [tooltip={_dot_id(m)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- SVG --------------------------------------------------------------------------------------
SCALE = 60
EXTENT = 3


def _endpoint(r: Sequence[int], reach: float = EXTENT) -> tuple[float, float]:
    m = max(abs(x) for x in r)
    return (reach * r[0] / m, reach * r[1] / m)


def _px(x: float, y: float) -> tuple[str, str]:
    return (f"{x * SCALE:.2f}", f"{-y * SCALE:.2f}")


def fan_to_svg(classes: Sequence[TFClass], walls: Sequence[Wall]) -> str:
    """Rank-two fan in the square ``[-3, 3]^2``: rays, labelled walls and chamber labels."""
    if not classes or classes[0].n != 2:
        raise SVGUnsupportedRank(f"SVG output needs rank 2, got rank {classes[0].n if classes else 0}")
    pad = 1.4
    half = (EXTENT + pad) * SCALE
    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": f"{2 * half:.0f}",
            "height": f"{2 * half:.0f}",
            "viewBox": f"{-half:.0f} {-half:.0f} {2 * half:.0f} {2 * half:.0f}",
            "font-family": "monospace",
            "font-size": "12",
        },
    )
    ET.SubElement(svg, "title").text = f"g-vector fan of {classes[0].pair.algebra.presentation.name}"
    frame = ET.SubElement(svg, "rect", {"x": _px(-EXTENT, EXTENT)[0], "y": _px(-EXTENT, EXTENT)[1], "width": f"{2 * EXTENT * SCALE}", "height": f"{2 * EXTENT * SCALE}", "fill": "none", "stroke": "#ccc"})
    frame.set("class", "frame")
    chambers = ET.SubElement(svg, "g", {"class": "chambers"})
    for E in classes:
        if E.dim != 2:
            continue
        u = [_endpoint(r, 1.0) for r in E.cone.rays]
        cx, cy = (u[0][0] + u[1][0]) / 2, (u[0][1] + u[1][1]) / 2
        norm = math.hypot(cx, cy) or 1.0
        x, y = _px(1.9 * cx / norm, 1.9 * cy / norm)
        t = ET.SubElement(chambers, "text", {"class": "chamber", "x": x, "y": y, "text-anchor": "middle", "fill": "#555", "data-pair": E.id})
        t.text = E.id
    group = ET.SubElement(svg, "g", {"class": "walls"})
    for w in walls:
        (r,) = w.cone.rays
        ex, ey = _endpoint(r)
        x2, y2 = _px(ex, ey)
        g = ET.SubElement(
            group,
            "g",
            {
                "class": "wall",
                "data-brick": w.brick,
                "data-dim": ",".join(str(d) for d in w.dim_vector),
                "data-arrows": ";".join(f"{k[0]}x{k[1]}:" + ",".join(f"{p}/{q}" for p, q in k[2]) for k in w.arrow_data),
                "data-ray": ",".join(str(x) for x in r),
            },
        )
        ET.SubElement(g, "line", {"x1": "0", "y1": "0", "x2": x2, "y2": y2, "stroke": "black", "stroke-width": "2"})
        lx, ly = _px(ex * 1.12, ey * 1.12)
        ET.SubElement(g, "text", {"x": lx, "y": ly, "text-anchor": "middle"}).text = f"D({w.brick}) ({','.join(map(str, w.dim_vector))})"
    rays = ET.SubElement(svg, "g", {"class": "rays"})
    for r in sorted({r for E in classes for r in E.cone.rays}):
        ex, ey = _endpoint(r)
        x2, y2 = _px(ex, ey)
        ET.SubElement(rays, "line", {"class": "ray", "x1": "0", "y1": "0", "x2": x2, "y2": y2, "stroke": "blue", "stroke-width": "1", "data-ray": ",".join(map(str, r))})
    ET.SubElement(svg, "circle", {"class": "origin", "cx": "0", "cy": "0", "r": "3", "fill": "blue"})
    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"


def svg_walls(svg_text: str) -> list[dict]:
    """Read back the wall annotations of an SVG produced by :func:`fan_to_svg`."""
    root = ET.fromstring(svg_text.split("\n", 1)[1] if svg_text.startswith("<?xml") else svg_text)
    ns = {"s": "http://www.w3.org/2000/svg"}
    out = []
    for g in root.iterfind(".//s:g[@class='wall']", ns):
        label = g.find("s:text", ns)
        out.append(
            {
                "brick": g.get("data-brick"),
                "dim": tuple(int(x) for x in g.get("data-dim").split(",")),
                "arrows": g.get("data-arrows"),
                "ray": tuple(int(x) for x in g.get("data-ray").split(",")),
                "label": label.text if label is not None else None,
            }
        )
    return out
