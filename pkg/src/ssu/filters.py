"""Tight filters, cylinder membership, and the partial action theta_s.

A tight filter is either

* path type: determined by an eventually periodic infinite path (a lasso), or
* finite type: a pair (alpha, B) where B is a filter of infinite vertex sets
  inside the source of alpha.

Set filters come in two exact representations: the upward closure of a
finite meet-closed generating family, and the canonical "tail" filter of an
int-indexed family (all sets containing arbitrarily large/small indices of
that family).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, Unsupported, ValidationError
from .intset import NEG, POS
from .ultragraph import (
    OMEGA,
    VertexSet,
    make_lasso,
    path_edges,
    path_from_edges,
    path_source,
)
from .verdicts import UNKNOWN


# ---------------------------------------------------------------------------
# set filters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrincipalFilter:
    """Upward closure of a finite meet-closed family; gens kept minimal."""

    gens: tuple

    @staticmethod
    def of(gens):
        gens = [g for g in gens]
        if not gens or any(g.is_empty() for g in gens):
            raise ValidationError("filter generators must be nonempty")
        # meet-close
        closed = list(gens)
        changed = True
        while changed:
            changed = False
            for a in list(closed):
                for b in list(closed):
                    c = a.intersect(b)
                    if c.is_empty():
                        raise ValidationError("generators do not form a filter base")
                    if c not in closed:
                        closed.append(c)
                        changed = True
        # keep only minimal elements (they determine membership)
        minimal = [
            a
            for a in closed
            if not any(b != a and b.subset(a) for b in closed)
        ]
        minimal.sort(key=lambda s: s.sort_key())
        return PrincipalFilter(tuple(minimal))

    def contains(self, cset):
        return any(g.subset(cset) for g in self.gens)

    def all_infinite(self):
        return all(not g.is_finite() for g in self.gens)


@dataclass(frozen=True)
class TailFilter:
    """Sets containing a one-sided tail of the given family.

    C belongs to the filter iff C contains {v[j] : j > k} (direction POS)
    or {v[j] : j <= k} (direction NEG) for some k.  With interval-set
    representations this depends only on whether C's part in the family
    stretches to the corresponding infinity, so (family, direction) is a
    complete canonical form.
    """

    family: str
    direction: str

    def contains(self, cset):
        return cset.has_tail(self.family, self.direction)

    def all_infinite(self):
        return True


def transport_filter(system, g, bfilter):
    """The filter g.B = {g.C : C in B}."""
    if isinstance(bfilter, TailFilter):
        # shifts preserve one-sided tails of the same family
        return bfilter
    return PrincipalFilter.of(
        tuple(system.act_set(g, c) for c in bfilter.gens)
    )


def restrict_filter(system, bfilter, aset):
    """The filter B restricted down into aset: {C intersect aset : C in B}."""
    if isinstance(bfilter, TailFilter):
        if not aset.has_tail(bfilter.family, bfilter.direction):
            raise DomainError("restriction set cuts off the tail")
        return bfilter
    return PrincipalFilter.of(tuple(c.intersect(aset) for c in bfilter.gens))


# ---------------------------------------------------------------------------
# tight filters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathFilter:
    """The filter of a (canonical) eventually periodic infinite path."""

    x: object  # Lasso

    def __repr__(self):
        return f"F[{self.x!r}]"


@dataclass(frozen=True)
class FiniteTypeFilter:
    alpha: object  # PathExpr
    bfilter: object  # PrincipalFilter | TailFilter

    def __repr__(self):
        return f"F[{self.alpha!r};{self.bfilter!r}]"


def filter_contains(system, F, beta, cset):
    """Does the idempotent q_(beta, C) belong to the tight filter F?"""
    graph = system.graph
    be = path_edges(beta)
    if isinstance(F, PathFilter):
        x = F.x
        if x.letters(len(be)) != be:
            return False
        nxt = x.letter(len(be))
        if not cset.member(nxt.range_vertex):
            return False
        if be and not cset.subset(be[-1].source):
            return False
        return True
    ae = path_edges(F.alpha)
    if be == ae:
        return F.bfilter.contains(cset)
    if len(be) < len(ae) and ae[: len(be)] == be:
        return cset.member(ae[len(be)].range_vertex)
    return False


def in_cylinder(system, F, alpha, aset):
    return filter_contains(system, F, alpha, aset)


def theta_apply(system, s, F, state_bound=64):
    """The partial map theta_s on its domain Z(beta, g^{-1}.A)."""
    alpha, aset, g, beta = s.alpha, s.aset, s.g, s.beta
    dom_set = system.act_set(system.inv(g), aset)
    if not filter_contains(system, F, beta, dom_set):
        raise DomainError("filter outside the domain of theta_s")
    be = path_edges(beta)

    if isinstance(F, PathFilter):
        # strip beta, act, prepend alpha
        x = F.x
        rest = x
        from .ultragraph import lasso_tail

        for _ in be:
            rest = lasso_tail(rest)
        gx = system.act_lasso(g, rest, state_bound)
        if gx is UNKNOWN:
            return UNKNOWN
        return PathFilter(
            make_lasso(path_edges(alpha) + gx.prefix, gx.cycle, validate=False)
        )

    ge = path_edges(F.alpha)
    gamma = path_from_edges(ge[len(be):])

    if beta is OMEGA:
        if gamma is OMEGA:
            # restriction form: g.B cut down into s(alpha)
            moved = transport_filter(system, g, F.bfilter)
            return FiniteTypeFilter(
                alpha, restrict_filter(system, moved, path_source(system.graph, alpha))
            )
        new_alpha = path_from_edges(
            path_edges(alpha) + path_edges(system.act_path(g, gamma))
        )
        phi = system.cocycle_path(g, gamma)
        return FiniteTypeFilter(new_alpha, transport_filter(system, phi, F.bfilter))

    # |beta| >= 1
    if alpha is OMEGA and gamma is OMEGA:
        # upward closure in the full set algebra; canonical forms already
        # test membership by domination, so the moved generators suffice
        return FiniteTypeFilter(OMEGA, transport_filter(system, g, F.bfilter))
    new_alpha = path_from_edges(
        path_edges(alpha) + path_edges(system.act_path(g, gamma))
    )
    phi = system.cocycle_path(g, gamma)
    return FiniteTypeFilter(new_alpha, transport_filter(system, phi, F.bfilter))


def enumerate_path_filters(system, in_set, lasso_bound):
    """All canonical lassos (total length <= bound) with range in the set.

    Finite universes only; these are the path-type tight filter candidates
    up to the bound.
    """
    graph = system.graph
    if graph.indexed:
        raise Unsupported("path-filter enumeration needs a finite universe")
    if lasso_bound <= 0:
        return []
    found = set()
    edges = graph.edges

    def extend(word):
        total = len(word)
        if total:
            # close into a cycle at every suffix position
            for k in range(total):
                cyc = word[k:]
                if cyc[-1].source.member(cyc[0].range_vertex):
                    x = make_lasso(word[:k], cyc, validate=False)
                    if in_set.member(x.letter(0).range_vertex):
                        found.add(x)
        if total >= lasso_bound:
            return
        for e in edges:
            if not word:
                if in_set.member(e.range_vertex):
                    extend((e,))
            elif word[-1].source.member(e.range_vertex):
                extend(word + (e,))

    extend(())
    return sorted(found, key=lambda x: x.sort_key())
