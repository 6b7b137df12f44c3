"""The inverse semigroup of quadruples (alpha, A, g, beta) with zero.

Membership constraint: nonempty A contained in s(alpha) and in g.s(beta).
The four-case multiplication, inversion, idempotents, and the idempotent
order are implemented exactly as algebraic formulas; Zero only ever arises
from products, never from construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConstraintError, NotIdempotent
from .ultragraph import (
    OMEGA,
    path_edges,
    path_from_edges,
    path_source,
)


class _Zero:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "0"


ZERO = _Zero()


@dataclass(frozen=True)
class SemigroupElement:
    alpha: object
    aset: object
    g: object
    beta: object

    def __repr__(self):
        return f"({self.alpha!r};{self.aset!r};{self.g!r};{self.beta!r})"

    def sort_key(self):
        return (
            tuple(e.sort_key() for e in path_edges(self.alpha)),
            self.aset.sort_key(),
            str(self.g),
            tuple(e.sort_key() for e in path_edges(self.beta)),
        )


def make(system, alpha, aset, g, beta):
    """Construct a quadruple, rejecting constraint violations loudly."""
    if aset.is_empty():
        raise ConstraintError("empty A")
    if not aset.subset(path_source(system.graph, alpha)):
        raise ConstraintError("A not contained in s(alpha)")
    if not aset.subset(system.act_set(g, path_source(system.graph, beta))):
        raise ConstraintError("A not contained in g.s(beta)")
    return SemigroupElement(alpha, aset, g, beta)


def _assert_valid(system, elem):
    make(system, elem.alpha, elem.aset, elem.g, elem.beta)
    return elem


def multiply(system, s, t):
    """The four-case product; Zero is absorbing."""
    if s is ZERO or t is ZERO:
        return ZERO
    alpha, aset, g, beta = s.alpha, s.aset, s.g, s.beta
    gamma, bset, h, delta = t.alpha, t.aset, t.g, t.beta
    be = path_edges(beta)
    ge = path_edges(gamma)

    if len(ge) > len(be) and ge[: len(be)] == be:
        # gamma = beta.eps with |eps| >= 1; requires g.r(eps) in A
        eps = path_from_edges(ge[len(be):])
        if not aset.member(system.act_vertex(g, eps.edges[0].range_vertex)):
            return ZERO
        phi = system.cocycle_path(g, eps)
        new_alpha = path_from_edges(
            path_edges(alpha) + path_edges(system.act_path(g, eps))
        )
        new_set = system.act_set(g, path_source(system.graph, eps)).intersect(
            system.act_set(phi, bset)
        )
        assert not new_set.is_empty(), "case (i) produced an empty set"
        return _assert_valid(
            system,
            SemigroupElement(new_alpha, new_set, system.op(phi, h), delta),
        )

    if len(be) > len(ge) and be[: len(ge)] == ge:
        # beta = gamma.eps with |eps| >= 1; requires r(eps) in B
        eps = path_from_edges(be[len(ge):])
        if not bset.member(eps.edges[0].range_vertex):
            return ZERO
        hinv = system.inv(h)
        phi = system.cocycle_path(hinv, eps)
        # the group word and the set word are evaluated strictly left-to-right
        word = system.op(g, system.inv(phi))
        new_set = aset.intersect(
            system.act_set(
                system.op(word, hinv), path_source(system.graph, beta)
            )
        )
        if new_set.is_empty():
            return ZERO
        new_delta = path_from_edges(
            path_edges(delta) + path_edges(system.act_path(hinv, eps))
        )
        return _assert_valid(
            system, SemigroupElement(alpha, new_set, word, new_delta)
        )

    if ge == be:
        new_set = aset.intersect(system.act_set(g, bset))
        if new_set.is_empty():
            return ZERO
        return _assert_valid(
            system, SemigroupElement(alpha, new_set, system.op(g, h), delta)
        )

    return ZERO


def invert(system, s):
    """(alpha,A,g,beta)* = (beta, g^{-1}.A, g^{-1}, alpha); Zero* = Zero."""
    if s is ZERO:
        return ZERO
    ginv = system.inv(s.g)
    return _assert_valid(
        system,
        SemigroupElement(s.beta, system.act_set(ginv, s.aset), ginv, s.alpha),
    )


def is_idempotent(system, s):
    return s is not ZERO and s.alpha == s.beta and s.g == system.identity


def idempotent(system, alpha, aset):
    return make(system, alpha, aset, system.identity, alpha)


def leq(system, q1, q2):
    """Idempotent order: q_(a,A) <= q_(b,B) iff a=b and A<=B, or a=bc with
    |c| >= 1 and r(c) in B."""
    if not is_idempotent(system, q1) or not is_idempotent(system, q2):
        raise NotIdempotent("leq is defined on idempotents")
    a = path_edges(q1.alpha)
    b = path_edges(q2.alpha)
    if a == b:
        return q1.aset.subset(q2.aset)
    if len(a) > len(b) and a[: len(b)] == b:
        return q2.aset.member(a[len(b)].range_vertex)
    return False


def intersects(system, q1, q2):
    if not is_idempotent(system, q1) or not is_idempotent(system, q2):
        raise NotIdempotent("intersects is defined on idempotents")
    return multiply(system, q1, q2) is not ZERO
