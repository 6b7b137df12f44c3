"""Instance documents: a JSON schema for self-similar ultragraph systems,
a loader into live objects, a canonical emitter, and bundled examples.

Documents are plain JSON objects with the keys

    name            optional label
    universe        {"kind": "finite", "vertices": [...]}
                    or {"kind": "int_indexed", "families": [...]}
    edges           finite universes: [{"id", "range", "source": [vertex ids]}]
    edge_families   int-indexed: [{"name", "range_family", "range_offset",
                                   "source": <set expression string>}]
    group           {"kind": "cyclic", "order": n} | {"kind": "int"}
                    | {"kind": "table", "elements", "table", "generators"}
    action          {"kind": "perm", "vertex_maps", "edge_maps"}
                    | {"kind": "int_perm", "vertex_map", "edge_map"}
                    | {"kind": "shift", "vertex_shifts", "edge_shifts"}
    cocycle         {"kind": "trivial"}
                    | {"kind": "generator_values", "values": {...}}
                    | {"kind": "table", "entries": [[g, edge, h], ...]}
    amenable        bool (optional, default false)

Set expressions for edge-family sources use the index variable i:

    FIN{v[i], v[i+2]}         the finite set of the listed vertices
    TAIL(v, i)                {v[j] : j > i}        (offsets: TAIL(v, i+1))
    LTAIL(v, i)               {v[j] : j <= i}
    UNION(a, b, ...)  INTER(a, b, ...)  DIFF(a, b)
"""

from __future__ import annotations

import hashlib
import json
import re

from .action import (
    GeneratorCocycle,
    IntPermAction,
    PermAction,
    SelfSimilarSystem,
    ShiftAction,
    TableCocycle,
    TrivialCocycle,
)
from .errors import ParseError, UnknownExample
from .groups import FiniteGroup, IntGroup, cyclic_group
from .ultragraph import (
    Edge,
    EdgeFamily,
    FiniteUniverse,
    IntIndexedUniverse,
    Ultragraph,
    VertexSet,
)


# ---------------------------------------------------------------------------
# set-expression strings
# ---------------------------------------------------------------------------

_OFFSET_RE = re.compile(r"^i(?:\s*([+-])\s*(\d+))?$")
_INDEXED_RE = re.compile(r"^(\w+)\[(.+)\]$")


def _parse_offset(text):
    """An index term: i, i+c, i-c, or a bare integer (meaning i+that)."""
    text = text.strip()
    m = _OFFSET_RE.match(text)
    if m:
        if m.group(1) is None:
            return 0
        off = int(m.group(2))
        return off if m.group(1) == "+" else -off
    try:
        return int(text)
    except ValueError:
        raise ParseError(
            f"bad index term {text!r} (expected i, i+c, i-c, or an integer)"
        ) from None


def _split_args(text):
    """Split on top-level commas (respecting (), {} nesting)."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "({[":
            depth += 1
        elif ch in ")}]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur or parts:
        parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_set_expr(text):
    """Parse the source-expression grammar into the nested-tuple form."""
    text = text.strip()
    if text.startswith("FIN{") and text.endswith("}"):
        items = []
        for item in _split_args(text[4:-1]):
            m = _INDEXED_RE.match(item)
            if not m:
                raise ParseError(f"bad FIN member {item!r}")
            items.append((m.group(1), _parse_offset(m.group(2))))
        if not items:
            raise ParseError("FIN{} must list at least one vertex")
        return ("fin", tuple(items))
    for head, kind in (("TAIL(", "tail"), ("LTAIL(", "ltail")):
        if text.startswith(head) and text.endswith(")"):
            args = _split_args(text[len(head):-1])
            if len(args) != 2:
                raise ParseError(f"{kind.upper()} takes (family, index)")
            return (kind, args[0], _parse_offset(args[1]))
    for head, kind in (("UNION(", "union"), ("INTER(", "inter")):
        if text.startswith(head) and text.endswith(")"):
            subs = tuple(parse_set_expr(a) for a in _split_args(text[len(head):-1]))
            if not subs:
                raise ParseError(f"{kind.upper()} needs arguments")
            return (kind, subs)
    if text.startswith("DIFF(") and text.endswith(")"):
        args = _split_args(text[5:-1])
        if len(args) != 2:
            raise ParseError("DIFF takes exactly two arguments")
        return ("diff", parse_set_expr(args[0]), parse_set_expr(args[1]))
    raise ParseError(f"cannot parse set expression {text!r}")


def _offset_str(off):
    if off == 0:
        return "i"
    return f"i+{off}" if off > 0 else f"i-{-off}"


def format_set_expr(expr):
    kind = expr[0]
    if kind == "fin":
        inner = ", ".join(f"{f}[{_offset_str(o)}]" for f, o in expr[1])
        return "FIN{" + inner + "}"
    if kind in ("tail", "ltail"):
        return f"{kind.upper()}({expr[1]}, {_offset_str(expr[2])})"
    if kind in ("union", "inter"):
        return f"{kind.upper()}(" + ", ".join(map(format_set_expr, expr[1])) + ")"
    if kind == "diff":
        return f"DIFF({format_set_expr(expr[1])}, {format_set_expr(expr[2])})"
    raise ParseError(f"unknown set expression {kind!r}")


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------

def _load_graph(doc):
    uni = doc.get("universe")
    if not isinstance(uni, dict) or "kind" not in uni:
        raise ParseError("document needs a universe object with a kind")
    if uni["kind"] == "finite":
        universe = FiniteUniverse(tuple(uni["vertices"]))
        edges = []
        for e in doc.get("edges", ()):
            src = e["source"]
            if isinstance(src, str):
                # FIN{v, w} style over bare vertex ids, sets only
                if not (src.startswith("FIN{") and src.endswith("}")):
                    raise ParseError(f"bad finite source {src!r}")
                src = [s.strip() for s in src[4:-1].split(",")]
            edges.append(
                Edge(
                    id=e["id"],
                    range_vertex=e["range"],
                    source=VertexSet.of(universe, tuple(src)),
                )
            )
        return Ultragraph(universe, edges=tuple(edges))
    if uni["kind"] == "int_indexed":
        universe = IntIndexedUniverse(tuple(uni["families"]))
        fams = []
        for f in doc.get("edge_families", ()):
            fams.append(
                EdgeFamily(
                    name=f.get("name", f.get("family")),
                    range_family=f["range_family"],
                    range_offset=int(f.get("range_offset", 0)),
                    source_expr=parse_set_expr(f.get("source", f.get("source_expr"))),
                )
            )
        return Ultragraph(universe, families=tuple(fams))
    raise ParseError(f"unknown universe kind {uni['kind']!r}")


def _load_group(doc):
    g = doc.get("group", {})
    kind = g.get("kind")
    if kind == "int":
        return IntGroup()
    if kind == "cyclic":
        return cyclic_group(int(g["order"]))
    if kind == "table":
        table = {(a, b): c for a, b, c in g["table"]}
        return FiniteGroup(tuple(g["elements"]), table,
                           generators=tuple(g.get("generators", ())) or None)
    raise ParseError(f"unknown group kind {kind!r}")


def _load_action(doc, group):
    a = doc.get("action", {})
    kind = a.get("kind")
    if kind == "perm":
        return PermAction(group, a["vertex_maps"], a["edge_maps"])
    if kind == "int_perm":
        return IntPermAction(group, a["vertex_map"], a["edge_map"])
    if kind == "shift":
        return ShiftAction(
            group,
            {f: int(d) for f, d in a["vertex_shifts"].items()},
            {f: int(d) for f, d in a["edge_shifts"].items()},
        )
    raise ParseError(f"unknown action kind {kind!r}")


def _load_cocycle(doc):
    c = doc.get("cocycle", {"kind": "trivial"})
    if c == "trivial":
        return TrivialCocycle()
    kind = c.get("kind")
    if kind == "trivial":
        return TrivialCocycle()
    if kind == "generator_values":
        return GeneratorCocycle({k: int(v) for k, v in c["values"].items()})
    if kind == "table":
        return TableCocycle({(g, e): h for g, e, h in c["entries"]})
    raise ParseError(f"unknown cocycle kind {kind!r}")


def load_system(doc):
    """Build a validated-shape system from a parsed JSON document."""
    graph = _load_graph(doc)
    group = _load_group(doc)
    return SelfSimilarSystem(
        graph=graph,
        group=group,
        action=_load_action(doc, group),
        cocycle=_load_cocycle(doc),
        amenable=bool(doc.get("amenable", False)),
        name=doc.get("name", ""),
    )


def emit_document(doc):
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def document_digest(doc):
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


# ---------------------------------------------------------------------------
# bundled examples
# ---------------------------------------------------------------------------

def _example_shift_line():
    """Integers shifting an integer-indexed line: one vertex family, one
    edge family e[i] ranging into v[i] with source {v[j] : j > i}."""
    return {
        "name": "ex5.1",
        "universe": {"kind": "int_indexed", "families": ["v"]},
        "edge_families": [
            {
                "name": "e",
                "range_family": "v",
                "range_offset": 0,
                "source": "TAIL(v, i)",
            }
        ],
        "group": {"kind": "int"},
        "action": {
            "kind": "shift",
            "vertex_shifts": {"v": 1},
            "edge_shifts": {"e": 1},
        },
        "cocycle": {"kind": "trivial"},
        "amenable": True,
    }


def _example_two_vertex_swap():
    """Order-two group swapping two vertices and their two edges."""
    return {
        "name": "ex5.2",
        "universe": {"kind": "finite", "vertices": ["v", "w"]},
        "edges": [
            {"id": "e", "range": "v", "source": ["v", "w"]},
            {"id": "f", "range": "w", "source": ["v", "w"]},
        ],
        "group": {"kind": "cyclic", "order": 2},
        "action": {
            "kind": "perm",
            "vertex_maps": {"1": {"v": "w", "w": "v"}},
            "edge_maps": {"1": {"e": "f", "f": "e"}},
        },
        "cocycle": {"kind": "trivial"},
        "amenable": True,
    }


def _example_swapped_loops(cocycle, label):
    """Two swapped loops plus a sink-feeding edge, integers acting with
    period two; the cocycle is the varying part of the family."""
    return {
        "name": label,
        "universe": {"kind": "finite", "vertices": ["v0", "v1", "w"]},
        "edges": [
            {"id": "e0", "range": "v0", "source": ["v0", "v1"]},
            {"id": "e1", "range": "v1", "source": ["v0", "v1"]},
            {"id": "f", "range": "w", "source": ["v0", "v1"]},
        ],
        "group": {"kind": "int"},
        "action": {
            "kind": "int_perm",
            "vertex_map": {"v0": "v1", "v1": "v0", "w": "w"},
            "edge_map": {"e0": "e1", "e1": "e0", "f": "f"},
        },
        "cocycle": cocycle,
        "amenable": True,
    }


_EX53_RE = re.compile(r"^ex5\.3\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")


def example_names():
    return ("ex5.1", "ex5.2", "ex5.3-trivial", "ex5.3(t0,t1)")


def example_document(name):
    """The bundled instance document for a recognized example name."""
    if name == "ex5.1":
        return _example_shift_line()
    if name == "ex5.2":
        return _example_two_vertex_swap()
    if name == "ex5.3-trivial":
        return _example_swapped_loops({"kind": "trivial"}, name)
    m = _EX53_RE.match(name)
    if m:
        t0, t1 = int(m.group(1)), int(m.group(2))
        return _example_swapped_loops(
            {
                "kind": "generator_values",
                "values": {"e0": t0, "e1": t1, "f": 0},
            },
            name,
        )
    raise UnknownExample(
        f"unknown example {name!r}; available: " + ", ".join(example_names())
    )
