"""The rational *-algebra spanned by semigroup monomials, and the
trivial-cocycle crossed-product correspondence.

A span element is a finite formal sum of nonzero semigroup quadruples with
exact rational coefficients.  The crossed-product side tags projections-
and-isometries monomials (quadruples with identity group part) with a group
element delta tag and multiplies by twisted convolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .action import TrivialCocycle
from .errors import NontrivialCocycle
from .semigroup import SemigroupElement, ZERO, invert, make, multiply
from .ultragraph import OMEGA, VertexSet, path_from_edges, path_edges


def span(terms):
    """Canonical span element: Monomial -> Fraction with zeros pruned."""
    out = {}
    for m, c in terms.items() if isinstance(terms, dict) else terms:
        if m is ZERO:
            continue
        c = Fraction(c)
        if c == 0:
            continue
        out[m] = out.get(m, Fraction(0)) + c
    return {m: c for m, c in out.items() if c != 0}


def span_of(*monomials):
    return span((m, Fraction(1)) for m in monomials)


def span_add(x, y):
    out = dict(x)
    for m, c in y.items():
        out[m] = out.get(m, Fraction(0)) + c
    return {m: c for m, c in out.items() if c != 0}


def span_scale(c, x):
    c = Fraction(c)
    return {} if c == 0 else {m: c * v for m, v in x.items()}


def span_product(system, x, y):
    """Bilinear extension of the semigroup product (Zero contributes nothing)."""
    out = {}
    for m1, c1 in x.items():
        for m2, c2 in y.items():
            p = multiply(system, m1, m2)
            if p is ZERO:
                continue
            out[p] = out.get(p, Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c != 0}


def star(system, x):
    """Monomial-wise involution; rational coefficients are self-conjugate."""
    return span((invert(system, m), c) for m, c in x.items())


# ---------------------------------------------------------------------------
# the one-vertex projection relation, checked behaviorally
# ---------------------------------------------------------------------------

def vertex_projection(system, v):
    """p_{v} as the monomial (omega, {v}, identity, omega)."""
    return make(
        system, OMEGA, VertexSet.singleton(system.graph.universe, v),
        system.identity, OMEGA,
    )


def edge_isometry(system, e):
    """s_e as the monomial (e, s(e), identity, omega)."""
    return make(system, path_from_edges((e,)), e.source, system.identity, OMEGA)


def ck4_identity(system, v):
    """LHS p_{v}, RHS sum of s_e s_e* over edges into v, and behavioral
    equality: both sides act identically on a probe set of monomials.

    The two formal sums are distinct; the relation identifies them in the
    algebra, which the probes witness through the product rewrites.
    """
    vset = VertexSet.singleton(system.graph.universe, v)
    lhs = span_of(vertex_projection(system, v))
    in_edges = system.graph.edges_into(vset)
    rhs = {}
    for e in in_edges:
        se = edge_isometry(system, e)
        rhs = span_add(rhs, span_product(system, span_of(se),
                                         star(system, span_of(se))))
    checks = []
    for e in in_edges:
        se = span_of(edge_isometry(system, e))
        # right probe: both sides restrict the isometry the same way
        checks.append(
            span_product(system, lhs, se) == span_product(system, rhs, se)
        )
        # left probe: the adjoint collapses the sum to its own term
        sestar = star(system, se)
        checks.append(
            span_product(system, sestar, lhs) == span_product(system, sestar, rhs)
        )
    # the projection dominates the sum on both sides
    checks.append(span_product(system, lhs, rhs) == rhs)
    checks.append(span_product(system, rhs, lhs) == rhs)
    return lhs, rhs, all(checks)


# ---------------------------------------------------------------------------
# crossed product over the trivial cocycle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossedMonomial:
    """A term (s_alpha p_A s*_beta) delta_g: ck has the identity group part."""

    ck: SemigroupElement
    g: object

    def __repr__(self):
        return f"{self.ck!r}.delta[{self.g!r}]"


def _require_trivial(system):
    if not isinstance(system.cocycle, TrivialCocycle):
        raise NontrivialCocycle("crossed-product form needs the trivial cocycle")


def crossed_map(system, s):
    """(alpha, A, g, beta) -> (s_alpha p_A s*_{g.beta}) delta_g."""
    _require_trivial(system)
    if s is ZERO:
        raise ValueError("the zero element maps to the empty span")
    ck = make(
        system, s.alpha, s.aset, system.identity,
        system.act_path(s.g, s.beta),
    )
    return CrossedMonomial(ck, s.g)


def eta(system, g, ck):
    """The induced automorphism on ck monomials: act on both paths and the set."""
    return make(
        system,
        system.act_path(g, ck.alpha),
        system.act_set(g, ck.aset),
        system.identity,
        system.act_path(g, ck.beta),
    )


def crossed_span(terms):
    out = {}
    for m, c in terms.items() if isinstance(terms, dict) else terms:
        c = Fraction(c)
        if c == 0:
            continue
        out[m] = out.get(m, Fraction(0)) + c
    return {m: c for m, c in out.items() if c != 0}


def crossed_span_of(*monomials):
    return crossed_span((m, Fraction(1)) for m in monomials)


def crossed_product(system, x, y):
    """Twisted convolution: (a delta_g)(b delta_h) = a eta_g(b) delta_{gh}."""
    _require_trivial(system)
    out = {}
    for m1, c1 in x.items():
        for m2, c2 in y.items():
            p = multiply(system, m1.ck, eta(system, m1.g, m2.ck))
            if p is ZERO:
                continue
            key = CrossedMonomial(p, system.op(m1.g, m2.g))
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c != 0}


def crossed_star(system, x):
    """f* carries a delta_g to eta_{g^{-1}}(a*) delta_{g^{-1}}."""
    _require_trivial(system)
    out = {}
    for m, c in x.items():
        ginv = system.inv(m.g)
        key = CrossedMonomial(eta(system, ginv, invert(system, m.ck)), ginv)
        out[key] = out.get(key, Fraction(0)) + c
    return {m: c for m, c in out.items() if c != 0}
