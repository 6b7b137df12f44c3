"""Ultragraphs with set-valued sources, their vertex-set algebra, and paths.

Vertex universes come in two flavors:

* Finite: an explicit list of vertex ids (strings).
* IntIndexed: finitely many named families, each family holding one vertex
  v[i] per integer i.  Vertices are (family, index) pairs.

Vertex sets are exact and canonical: plain frozensets over finite universes,
and per-family IntervalSets over int-indexed ones.  Edges of an int-indexed
ultragraph come in families with affine index rules, materialized on demand.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InfiniteAnswer,
    NonSingletonRange,
    ParseError,
    RegularityViolation,
    SourceViolation,
    UniverseMismatch,
    ValidationError,
)
from .intset import NEG, POS, IntervalSet


# ---------------------------------------------------------------------------
# universes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteUniverse:
    vertices: tuple

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex ids")


@dataclass(frozen=True)
class IntIndexedUniverse:
    families: tuple

    def __post_init__(self):
        if len(set(self.families)) != len(self.families):
            raise ValidationError("duplicate family names")


def is_indexed(universe):
    return isinstance(universe, IntIndexedUniverse)


def vertex_name(v):
    """Printable form of a vertex (id string or (family, index) pair)."""
    if isinstance(v, tuple):
        fam, i = v
        return f"{fam}[{i}]"
    return v


# ---------------------------------------------------------------------------
# vertex sets
# ---------------------------------------------------------------------------

class VertexSet:
    """An element of the set algebra generated by singletons and edge sources.

    Immutable and canonical: two VertexSets over the same universe are equal
    iff they denote the same set of vertices.
    """

    __slots__ = ("universe", "parts")

    def __init__(self, universe, parts):
        self.universe = universe
        if is_indexed(universe):
            # parts: sorted tuple of (family, nonempty IntervalSet)
            self.parts = tuple(
                sorted((f, s) for f, s in parts if not s.is_empty())
            )
        else:
            self.parts = frozenset(parts)

    # -- constructors -------------------------------------------------

    @staticmethod
    def empty(universe):
        return VertexSet(universe, ())

    @staticmethod
    def full(universe):
        if is_indexed(universe):
            return VertexSet(
                universe, tuple((f, IntervalSet.all()) for f in universe.families)
            )
        return VertexSet(universe, universe.vertices)

    @staticmethod
    def of(universe, vertices):
        if is_indexed(universe):
            per = {}
            for fam, i in vertices:
                per.setdefault(fam, []).append(i)
            return VertexSet(
                universe,
                tuple((f, IntervalSet.of(*idxs)) for f, idxs in per.items()),
            )
        return VertexSet(universe, vertices)

    @staticmethod
    def singleton(universe, v):
        return VertexSet.of(universe, (v,))

    @staticmethod
    def family_set(universe, family, intervalset):
        return VertexSet(universe, ((family, intervalset),))

    # -- family access ------------------------------------------------

    def part(self, family):
        for f, s in self.parts:
            if f == family:
                return s
        return IntervalSet.empty()

    def _check(self, other):
        if self.universe != other.universe:
            raise UniverseMismatch("operands from different universes")

    # -- algebra ------------------------------------------------------

    def union(self, other):
        self._check(other)
        if is_indexed(self.universe):
            fams = {f for f, _ in self.parts} | {f for f, _ in other.parts}
            return VertexSet(
                self.universe,
                tuple((f, self.part(f).union(other.part(f))) for f in fams),
            )
        return VertexSet(self.universe, self.parts | other.parts)

    def intersect(self, other):
        self._check(other)
        if is_indexed(self.universe):
            fams = {f for f, _ in self.parts}
            return VertexSet(
                self.universe,
                tuple((f, self.part(f).intersect(other.part(f))) for f in fams),
            )
        return VertexSet(self.universe, self.parts & other.parts)

    def difference(self, other):
        self._check(other)
        if is_indexed(self.universe):
            return VertexSet(
                self.universe,
                tuple((f, s.difference(other.part(f))) for f, s in self.parts),
            )
        return VertexSet(self.universe, self.parts - other.parts)

    # -- queries ------------------------------------------------------

    def member(self, v):
        if is_indexed(self.universe):
            fam, i = v
            return self.part(fam).member(i)
        return v in self.parts

    def subset(self, other):
        self._check(other)
        return self.difference(other).is_empty()

    def is_empty(self):
        return not self.parts

    def is_finite(self):
        if is_indexed(self.universe):
            return all(s.is_finite() for _, s in self.parts)
        return True

    def cardinality(self):
        """Exact size, or None when infinite."""
        if not self.is_finite():
            return None
        if is_indexed(self.universe):
            return sum(s.cardinality() for _, s in self.parts)
        return len(self.parts)

    def iter_vertices(self):
        """All members in deterministic order; requires a finite set."""
        if not self.is_finite():
            raise InfiniteAnswer("cannot enumerate an infinite vertex set")
        if is_indexed(self.universe):
            for f, s in self.parts:
                for i in s.iter_finite():
                    yield (f, i)
        else:
            yield from sorted(self.parts)

    def has_tail(self, family, direction):
        return self.part(family).has_tail(direction)

    # -- value semantics ----------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, VertexSet)
            and self.universe == other.universe
            and self.parts == other.parts
        )

    def __hash__(self):
        return hash((self.universe, self.parts))

    def __repr__(self):
        if is_indexed(self.universe):
            inner = ", ".join(f"{f}:{s!r}" for f, s in self.parts)
            return "VertexSet{" + inner + "}"
        return "VertexSet{" + ", ".join(sorted(self.parts)) + "}"

    def sort_key(self):
        """Deterministic ordering key for reports."""
        if is_indexed(self.universe):
            return tuple((f, s.intervals) for f, s in self.parts)
        return tuple(sorted(self.parts))


def set_algebra(op, *args):
    """Dispatch the closure operations and exact boolean queries."""
    if op == "intersect":
        return args[0].intersect(args[1])
    if op == "union":
        return args[0].union(args[1])
    if op == "difference":
        return args[0].difference(args[1])
    if op == "member":
        return args[0].member(args[1])
    if op == "subset":
        return args[0].subset(args[1])
    if op == "is_empty":
        return args[0].is_empty()
    if op == "is_finite":
        return args[0].is_finite()
    raise ParseError(f"unknown set operation {op!r}")


# ---------------------------------------------------------------------------
# edges
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Edge:
    """A single edge: singleton range plus a set-valued source."""

    id: str
    range_vertex: object
    source: VertexSet
    family: str = None
    index: int = None

    def sort_key(self):
        if self.family is not None:
            return (self.family, self.index)
        return (self.id, 0)


# Source expressions for edge families are nested tuples in the index
# variable i:
#   ("fin", ((family, offset), ...))     -> {v[i+offset], ...}
#   ("tail", family, offset)             -> {v[j] : j > i+offset}
#   ("ltail", family, offset)            -> {v[j] : j <= i+offset}
#   ("union", (subexpr, ...))
#   ("inter", (subexpr, ...))
#   ("diff", subexpr, subexpr)

def eval_source_expr(universe, expr, i):
    kind = expr[0]
    if kind == "fin":
        return VertexSet.of(universe, tuple((f, i + off) for f, off in expr[1]))
    if kind == "tail":
        return VertexSet.family_set(universe, expr[1], IntervalSet.tail(i + expr[2]))
    if kind == "ltail":
        return VertexSet.family_set(universe, expr[1], IntervalSet.ltail(i + expr[2]))
    if kind == "union":
        out = VertexSet.empty(universe)
        for sub in expr[1]:
            out = out.union(eval_source_expr(universe, sub, i))
        return out
    if kind == "inter":
        out = eval_source_expr(universe, expr[1][0], i)
        for sub in expr[1][1:]:
            out = out.intersect(eval_source_expr(universe, sub, i))
        return out
    if kind == "diff":
        a = eval_source_expr(universe, expr[1], i)
        b = eval_source_expr(universe, expr[2], i)
        return a.difference(b)
    raise ParseError(f"unknown source expression {kind!r}")


def source_expr_families(expr):
    kind = expr[0]
    if kind == "fin":
        return {f for f, _ in expr[1]}
    if kind in ("tail", "ltail"):
        return {expr[1]}
    if kind in ("union", "inter"):
        out = set()
        for sub in expr[1]:
            out |= source_expr_families(sub)
        return out
    if kind == "diff":
        return source_expr_families(expr[1]) | source_expr_families(expr[2])
    raise ParseError(f"unknown source expression {kind!r}")


@dataclass(frozen=True)
class EdgeFamily:
    """Edges e[i], i in Z, with range v[i + range_offset] and a source rule."""

    name: str
    range_family: str
    range_offset: int
    source_expr: tuple


# ---------------------------------------------------------------------------
# the ultragraph
# ---------------------------------------------------------------------------

class Ultragraph:
    """A validated ultragraph over either universe kind."""

    def __init__(self, universe, edges=(), families=(), strict_sources=False):
        self.universe = universe
        self.edges = tuple(sorted(edges, key=lambda e: e.sort_key()))
        self.families = tuple(sorted(families, key=lambda f: f.name))
        self._by_id = {e.id: e for e in self.edges}
        self._validate(strict_sources)

    @property
    def indexed(self):
        return is_indexed(self.universe)

    # -- validation ---------------------------------------------------

    def _validate(self, strict_sources):
        if self.indexed:
            if self.edges:
                raise ValidationError("int-indexed universes use edge families")
            fam_names = set(self.universe.families)
            for f in self.families:
                if f.range_family not in fam_names:
                    raise ValidationError(f"unknown range family {f.range_family!r}")
                if not source_expr_families(f.source_expr) <= fam_names:
                    raise ValidationError(f"unknown family in source of {f.name!r}")
                for i in range(-8, 9):
                    if eval_source_expr(self.universe, f.source_expr, i).is_empty():
                        raise ValidationError(
                            f"edge family {f.name!r} has empty source at index {i}"
                        )
            # in-degree of every vertex of a family = number of edge families
            # ranging into it (each contributes exactly one edge), so
            # regularity means "at least one" and finiteness is automatic.
            for fam in self.universe.families:
                if not any(f.range_family == fam for f in self.families):
                    raise RegularityViolation((fam, "*"), f"family {fam!r} receives no edges")
            return
        if self.families:
            raise ValidationError("finite universes use explicit edges")
        vset = set(self.universe.vertices)
        indeg = {v: 0 for v in vset}
        for e in self.edges:
            if isinstance(e.range_vertex, (tuple, list, set, frozenset)):
                raise NonSingletonRange(f"edge {e.id!r} has a non-singleton range")
            if e.range_vertex not in vset:
                raise ValidationError(f"edge {e.id!r} ranges outside the universe")
            if e.source.is_empty():
                raise ValidationError(f"edge {e.id!r} has an empty source")
            indeg[e.range_vertex] += 1
        for v in sorted(vset):
            if indeg[v] == 0:
                raise RegularityViolation(v)
        if strict_sources:
            for v in sorted(vset):
                if not any(e.source.member(v) for e in self.edges):
                    raise SourceViolation(v)

    # -- edge access --------------------------------------------------

    def family(self, name):
        for f in self.families:
            if f.name == name:
                return f
        raise ParseError(f"unknown edge family {name!r}")

    def make_edge(self, family_name, i):
        f = self.family(family_name)
        return Edge(
            id=f"{f.name}[{i}]",
            range_vertex=(f.range_family, i + f.range_offset),
            source=eval_source_expr(self.universe, f.source_expr, i),
            family=f.name,
            index=i,
        )

    def edge_by_id(self, eid):
        if self.indexed:
            if "[" not in eid or not eid.endswith("]"):
                raise ParseError(f"bad indexed edge id {eid!r}")
            name, _, rest = eid.partition("[")
            return self.make_edge(name, int(rest[:-1]))
        if eid not in self._by_id:
            raise ParseError(f"unknown edge {eid!r}")
        return self._by_id[eid]

    def edges_in_window(self, lo, hi):
        """A finite deterministic edge pool (index window for families)."""
        if not self.indexed:
            return self.edges
        out = []
        for f in self.families:
            for i in range(lo, hi + 1):
                out.append(self.make_edge(f.name, i))
        return tuple(sorted(out, key=lambda e: e.sort_key()))

    # -- queries ------------------------------------------------------

    def edges_into(self, aset):
        """All edges whose singleton range lies in the given set."""
        if aset.is_empty():
            raise ValidationError("edges_into requires a nonempty set")
        if not self.indexed:
            return tuple(e for e in self.edges if aset.member(e.range_vertex))
        out = []
        for f, indices in self.edges_into_symbolic(aset):
            if not indices.is_finite():
                raise InfiniteAnswer(
                    f"infinitely many edges of family {f.name!r} range into the set"
                )
            for i in indices.iter_finite():
                out.append(self.make_edge(f.name, i))
        return tuple(sorted(out, key=lambda e: e.sort_key()))

    def edges_into_symbolic(self, aset):
        """Per-family index slices of edges ranging into the set (int-indexed)."""
        out = []
        for f in self.families:
            indices = aset.part(f.range_family).shift(-f.range_offset)
            if not indices.is_empty():
                out.append((f, indices))
        return tuple(out)

    def edges_into_is_infinite(self, aset):
        if not self.indexed:
            return False
        return any(not s.is_finite() for _, s in self.edges_into_symbolic(aset))

    def enumerate_paths(self, aset, max_len, edge_pool=None):
        """All paths of length 1..max_len with range inside the set.

        Over int-indexed universes an explicit finite edge_pool is required
        when the relevant edge slices are infinite.
        """
        if max_len <= 0:
            return []
        if edge_pool is None:
            starts = self.edges_into(aset)  # may raise InfiniteAnswer
            pool = None
        else:
            starts = tuple(e for e in edge_pool if aset.member(e.range_vertex))
            pool = edge_pool
        out = []
        frontier = [(e,) for e in starts]
        while frontier:
            out.extend(frontier)
            nxt = []
            if len(frontier[0]) >= max_len:
                break
            for path in frontier:
                src = path[-1].source
                if pool is None:
                    ext = self.edges_into(src)
                else:
                    ext = tuple(e for e in pool if src.member(e.range_vertex))
                for e in ext:
                    nxt.append(path + (e,))
            frontier = nxt
        out.sort(key=lambda p: (len(p), tuple(e.sort_key() for e in p)))
        return [FinitePath(p) for p in out]


# ---------------------------------------------------------------------------
# path expressions
# ---------------------------------------------------------------------------

class _Omega:
    """The universal zero-length path: concatenation identity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "w"


OMEGA = _Omega()


@dataclass(frozen=True)
class FinitePath:
    edges: tuple

    def __post_init__(self):
        if not self.edges:
            raise ValidationError("finite paths have at least one edge; use OMEGA")

    def __len__(self):
        return len(self.edges)

    def __repr__(self):
        return ".".join(e.id for e in self.edges)


def path_edges(p):
    """Edge tuple of a path expression (ω is the empty tuple)."""
    return () if p is OMEGA else p.edges


def path_from_edges(edges):
    return OMEGA if not edges else FinitePath(tuple(edges))


def path_len(p):
    return len(path_edges(p))


def check_junctions(edges):
    for a, b in zip(edges, edges[1:]):
        if not a.source.member(b.range_vertex):
            raise ValidationError(
                f"edge {b.id!r} cannot follow {a.id!r}: range not in source"
            )


def make_path(graph, edge_ids):
    edges = tuple(graph.edge_by_id(i) for i in edge_ids)
    check_junctions(edges)
    return path_from_edges(edges)


def path_source(graph, p):
    """s(path): source of its last edge; s(ω) is the whole vertex universe."""
    if p is OMEGA:
        return VertexSet.full(graph.universe)
    return p.edges[-1].source


def path_range(graph, p):
    """r(path) as a vertex set; r(ω) is the whole vertex universe."""
    if p is OMEGA:
        return VertexSet.full(graph.universe)
    return VertexSet.singleton(graph.universe, p.edges[0].range_vertex)


def concat(p, q):
    """Concatenation with ω as the two-sided identity."""
    edges = path_edges(p) + path_edges(q)
    check_junctions(edges)
    return path_from_edges(edges)


# ---------------------------------------------------------------------------
# lassos: eventually periodic infinite paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lasso:
    """prefix . cycle^infinity in canonical form; build with make_lasso."""

    prefix: tuple
    cycle: tuple

    def __repr__(self):
        pre = ".".join(e.id for e in self.prefix)
        cyc = ".".join(e.id for e in self.cycle)
        return f"{pre}({cyc})^oo" if pre else f"({cyc})^oo"

    def letter(self, i):
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def letters(self, n):
        return tuple(self.letter(i) for i in range(n))

    def sort_key(self):
        return (
            len(self.prefix) + len(self.cycle),
            tuple(e.sort_key() for e in self.prefix),
            tuple(e.sort_key() for e in self.cycle),
        )


def _primitive(cycle):
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle[:d] * (n // d) == cycle:
            return cycle[:d]
    return cycle


def make_lasso(prefix, cycle, validate=True):
    """Canonical lasso: primitive cycle, minimal prefix; junctions checked."""
    prefix, cycle = tuple(prefix), tuple(cycle)
    if not cycle:
        raise ValidationError("lasso cycle must be nonempty")
    if validate:
        check_junctions(prefix + cycle + (cycle[0],))
    cycle = _primitive(cycle)
    while prefix and prefix[-1] == cycle[-1]:
        prefix = prefix[:-1]
        cycle = (cycle[-1],) + cycle[:-1]
    return Lasso(prefix, cycle)


def lasso_head(x):
    return x.letter(0)


def lasso_tail(x):
    """Lasso of the shifted infinite word."""
    if x.prefix:
        return make_lasso(x.prefix[1:], x.cycle, validate=False)
    return make_lasso((), x.cycle[1:] + x.cycle[:1], validate=False)
