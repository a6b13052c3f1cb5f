"""File formats: JSON interchange for layouts and drawings, instance and
tree files, and static SVG rendering.

Angles are stored as integer spoke units plus the base count, so they
round-trip exactly; distances are floats serialized at full precision.
"""

from __future__ import annotations

import json
import math
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from .layout import Layer, Layout
from .treedraw import Drawing, RootedTree


class ParseError(ValueError):
    pass


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ParseError(f"{where}: missing field '{key}'")
    return obj[key]


# ----------------------------------------------------------------- instances

def parse_instance(data: Union[str, bytes]) -> Tuple[List[float], int]:
    """Read {radii, free_spokes} from an instance JSON document."""
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(f"instance: invalid JSON ({e})") from e
    if not isinstance(obj, dict):
        raise ParseError("instance: top level must be an object")
    radii = _require(obj, "radii", "instance")
    free = obj.get("free_spokes", 0)
    if not isinstance(radii, list) or not radii:
        raise ParseError("instance: 'radii' must be a non-empty list")
    vals = []
    for x in radii:
        if not isinstance(x, (int, float)) or not x > 0 or not math.isfinite(x):
            raise ParseError(f"instance: radius {x!r} is not a positive number")
        vals.append(float(x))
    if free not in (0, 1, 2):
        raise ParseError("instance: 'free_spokes' must be 0, 1 or 2")
    return vals, int(free)


def emit_instance(radii: Sequence[float], free_spokes: int, seed=None) -> bytes:
    obj: Dict = {"radii": [float(x) for x in radii], "free_spokes": int(free_spokes)}
    if seed is not None:
        obj["seed"] = seed
    return (json.dumps(obj) + "\n").encode()


def parse_tree(data: Union[str, bytes]) -> RootedTree:
    """Read an edge-list tree file: one 'parent child' pair per line, node 0
    is the root; blank lines and '#' comments are ignored."""
    if isinstance(data, bytes):
        data = data.decode()
    edges = []
    nodes = {0}
    for ln, line in enumerate(data.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"tree line {ln}: expected 'parent child', got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"tree line {ln}: ids must be integers") from None
        edges.append((a, b))
        nodes.add(a)
        nodes.add(b)
    n = max(nodes) + 1
    if sorted(nodes) != list(range(n)):
        raise ParseError("tree: node ids must be 0..n-1 without gaps")
    try:
        return RootedTree.from_edges(n, edges, root=0)
    except ValueError as e:
        raise ParseError(f"tree: {e}") from e


def emit_tree(t: RootedTree) -> bytes:
    lines = [f"{int(t.parent[c])} {c}" for c in range(t.n) if c != t.root]
    return ("\n".join(lines) + ("\n" if lines else "")).encode()


# ----------------------------------------------------------------- JSON

def emit_json(obj: Union[Layout, Drawing]) -> bytes:
    if isinstance(obj, Layout):
        doc = {
            "type": "layout",
            "n_base": int(obj.n_base),
            "variant": int(obj.variant),
            "radii": obj.radii.tolist(),
            "order": obj.order.tolist(),
            "balloon": obj.balloon.tolist(),
            "spoke_label": obj.spoke_label.tolist(),
            "spoke_unit": obj.spoke_unit.tolist(),
            "center": obj.center.tolist(),
            "round_index": obj.round_index.tolist(),
            "wedge_opening": obj.wedge_opening.tolist(),
            "compactified": [bool(b) for b in obj.compactified],
            "free_labels": obj.free_labels.tolist(),
            "free_units": obj.free_units.tolist(),
            "free_angle": obj.free_angle,
            "layers": [
                {"round": l.round, "kind": l.kind, "safe_before": l.safe_before,
                 "width": l.width, "spokes": l.spokes}
                for l in obj.layers
            ],
            "covering_radius": obj.covering_radius,
        }
    elif isinstance(obj, Drawing):
        doc = {
            "type": "drawing",
            "n": int(obj.n),
            "root": int(obj.root),
            "positions": obj.positions.tolist(),
            "edges": obj.edges.tolist(),
            "exclusive": [[int(u), float(x)] for u, x in obj.exclusive],
            "stats": dict(obj.stats),
        }
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return (json.dumps(doc) + "\n").encode()


def parse_json(data: Union[str, bytes]) -> Union[Layout, Drawing]:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(f"document: invalid JSON ({e})") from e
    if not isinstance(doc, dict):
        raise ParseError("document: top level must be an object")
    kind = _require(doc, "type", "document")
    if kind == "layout":
        layers = tuple(
            Layer(
                round=int(_require(l, "round", f"layers[{i}]")),
                kind=str(_require(l, "kind", f"layers[{i}]")),
                safe_before=float(_require(l, "safe_before", f"layers[{i}]")),
                width=float(_require(l, "width", f"layers[{i}]")),
                spokes=int(_require(l, "spokes", f"layers[{i}]")),
            )
            for i, l in enumerate(_require(doc, "layers", "layout"))
        )
        fa = _require(doc, "free_angle", "layout")
        return Layout(
            n_base=int(_require(doc, "n_base", "layout")),
            radii=np.asarray(_require(doc, "radii", "layout"), dtype=float),
            order=np.asarray(_require(doc, "order", "layout"), dtype=np.int64),
            variant=int(_require(doc, "variant", "layout")),
            balloon=np.asarray(_require(doc, "balloon", "layout"), dtype=np.int64),
            spoke_label=np.asarray(_require(doc, "spoke_label", "layout"), dtype=np.int64),
            spoke_unit=np.asarray(_require(doc, "spoke_unit", "layout"), dtype=np.int64),
            center=np.asarray(_require(doc, "center", "layout"), dtype=float),
            round_index=np.asarray(_require(doc, "round_index", "layout"), dtype=np.int64),
            wedge_opening=np.asarray(_require(doc, "wedge_opening", "layout"), dtype=float),
            compactified=np.asarray(_require(doc, "compactified", "layout"), dtype=bool),
            free_labels=np.asarray(_require(doc, "free_labels", "layout"), dtype=np.int64),
            free_units=np.asarray(_require(doc, "free_units", "layout"), dtype=np.int64),
            free_angle=None if fa is None else float(fa),
            layers=layers,
            covering_radius=float(_require(doc, "covering_radius", "layout")),
        )
    if kind == "drawing":
        positions = np.asarray(_require(doc, "positions", "drawing"), dtype=float)
        if positions.ndim != 2 or positions.shape[1] != 2:
            raise ParseError("drawing: 'positions' must be a list of [x, y] pairs")
        edges = np.asarray(_require(doc, "edges", "drawing"), dtype=np.int64).reshape(-1, 2)
        stats = dict(_require(doc, "stats", "drawing"))
        return Drawing(
            n=int(_require(doc, "n", "drawing")),
            root=int(_require(doc, "root", "drawing")),
            positions=positions,
            edges=edges,
            exclusive=tuple((int(u), float(x)) for u, x in _require(doc, "exclusive", "drawing")),
            stats=stats,
        )
    raise ParseError(f"document: unknown type {kind!r}")


# ----------------------------------------------------------------- SVG

def _svg_head(cx: float, cy: float, radius: float) -> List[str]:
    m = 1.05 * radius
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{cx - m:.6f} {cy - m:.6f} {2 * m:.6f} {2 * m:.6f}">',
    ]


def emit_svg(obj: Union[Layout, Drawing]) -> bytes:
    """Render to static SVG: solid circles for balloons/exclusive disks,
    segments for spokes/edges, one dashed circle for the covering disk."""
    if isinstance(obj, Layout):
        R = obj.covering_radius
        unit = 2.0 * math.pi / obj.n_base
        out = _svg_head(0.0, 0.0, max(R, 1e-9))
        sw = max(R, 1e-9) / 300.0
        style = f'fill="none" stroke="black" stroke-width="{sw:.6g}"'
        rp = obj.radii[obj.balloon]
        for su, c, r in zip(obj.spoke_unit, obj.center, rp):
            a = float(su) * unit
            x, y = c * math.cos(a), c * math.sin(a)
            out.append(f'<line x1="0" y1="0" x2="{x:.9g}" y2="{y:.9g}" {style}/>')
            out.append(f'<circle cx="{x:.9g}" cy="{y:.9g}" r="{float(r):.9g}" {style}/>')
        for fu in obj.free_units:
            a = float(fu) * unit
            x, y = R * math.cos(a), R * math.sin(a)
            out.append(f'<line class="free" x1="0" y1="0" x2="{x:.9g}" y2="{y:.9g}" '
                       f'{style} stroke-dasharray="{4 * sw:.6g}"/>')
        out.append(f'<circle class="covering" cx="0" cy="0" r="{R:.9g}" {style} '
                   f'stroke-dasharray="{8 * sw:.6g}"/>')
    elif isinstance(obj, Drawing):
        pos = obj.positions
        root = pos[obj.root]
        R = max(float(np.hypot(*(pos[u] - root)) + x) for u, x in obj.exclusive)
        out = _svg_head(float(root[0]), float(root[1]), max(R, 1e-9))
        sw = max(R, 1e-9) / 300.0
        style = f'fill="none" stroke="black" stroke-width="{sw:.6g}"'
        for a, b in obj.edges:
            out.append(f'<line x1="{pos[a, 0]:.9g}" y1="{pos[a, 1]:.9g}" '
                       f'x2="{pos[b, 0]:.9g}" y2="{pos[b, 1]:.9g}" {style}/>')
        for u, x in obj.exclusive:
            out.append(f'<circle cx="{pos[u, 0]:.9g}" cy="{pos[u, 1]:.9g}" '
                       f'r="{x:.9g}" {style}/>')
        out.append(f'<circle class="covering" cx="{root[0]:.9g}" cy="{root[1]:.9g}" '
                   f'r="{R:.9g}" {style} stroke-dasharray="{8 * sw:.6g}"/>')
    else:
        raise TypeError(f"cannot render {type(obj).__name__}")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode()
