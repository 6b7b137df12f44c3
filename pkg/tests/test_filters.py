"""Tight filters, cylinder membership, and the partial action theta."""

import pytest

from ssu.errors import DomainError, Unsupported, ValidationError
from ssu.filters import (
    FiniteTypeFilter,
    PathFilter,
    PrincipalFilter,
    TailFilter,
    enumerate_path_filters,
    filter_contains,
    theta_apply,
)
from ssu.intset import POS
from ssu.semigroup import ZERO, invert, make, multiply
from ssu.ultragraph import OMEGA, VertexSet, make_lasso, make_path, path_from_edges
from ssu.verdicts import UNKNOWN


def _vs(system, *vertices):
    return VertexSet.of(system.graph.universe, vertices)


def test_principal_filter_canonical(ex52):
    vw = _vs(ex52, "v", "w")
    v = _vs(ex52, "v")
    F = PrincipalFilter.of((vw, v))
    assert F.gens == (v,)  # only minimal generators kept
    assert F.contains(vw) and F.contains(v)
    assert not F.contains(_vs(ex52, "w"))
    with pytest.raises(ValidationError):
        PrincipalFilter.of((v, _vs(ex52, "w")))  # meets are empty


def test_tail_filter_membership(ex51):
    from ssu.intset import IntervalSet

    u = ex51.graph.universe
    F = TailFilter("v", POS)
    assert F.contains(VertexSet.family_set(u, "v", IntervalSet.tail(100)))
    assert not F.contains(
        VertexSet.family_set(u, "v", IntervalSet.range(0, 1000))
    )


def test_path_filter_membership(ex52):
    g = ex52.graph
    e, f = g.edge_by_id("e"), g.edge_by_id("f")
    F = PathFilter(make_lasso((), (e,)))
    assert filter_contains(ex52, F, OMEGA, _vs(ex52, "v", "w"))
    assert filter_contains(ex52, F, make_path(g, ("e",)), _vs(ex52, "v"))
    assert not filter_contains(ex52, F, make_path(g, ("f",)), _vs(ex52, "v"))
    # the set must contain the next range vertex
    assert not filter_contains(ex52, F, make_path(g, ("e",)), _vs(ex52, "w"))


def test_finite_type_membership(ex51):
    g = ex51.graph
    alpha = make_path(g, ("e[0]",))
    F = FiniteTypeFilter(alpha, TailFilter("v", POS))
    # at the path itself, membership defers to the set filter
    from ssu.intset import IntervalSet

    u = g.universe
    assert filter_contains(
        ex51, F, alpha, VertexSet.family_set(u, "v", IntervalSet.tail(5))
    )
    # at a proper prefix, the set must contain the next range vertex v0
    assert filter_contains(ex51, F, OMEGA, VertexSet.of(u, (("v", 0),)))
    assert not filter_contains(ex51, F, OMEGA, VertexSet.of(u, (("v", 1),)))


def test_theta_path_type(ex52):
    g = ex52.graph
    e, f = g.edge_by_id("e"), g.edge_by_id("f")
    s = make(ex52, OMEGA, _vs(ex52, "v", "w"), "1", OMEGA)
    F = PathFilter(make_lasso((), (e,)))
    assert theta_apply(ex52, s, F) == PathFilter(make_lasso((), (f,)))
    # prefix stripping: s = (f, {w}, 1, e) sends e x to f (1.x)
    s2 = make(ex52, make_path(g, ("f",)), _vs(ex52, "w"), "1", make_path(g, ("e",)))
    F2 = PathFilter(make_lasso((e,), (e, f)))
    img = theta_apply(ex52, s2, F2)
    assert img == PathFilter(make_lasso((f,), (f, e)))


def test_theta_domain_error(ex52):
    g = ex52.graph
    e = g.edge_by_id("e")
    s = make(ex52, OMEGA, _vs(ex52, "v"), "0", make_path(g, ("e",)))
    F = PathFilter(make_lasso((), (g.edge_by_id("f"),)))
    with pytest.raises(DomainError):
        theta_apply(ex52, s, F)


def test_theta_finite_type_restriction(ex51):
    full = VertexSet.full(ex51.graph.universe)
    s = make(ex51, OMEGA, full, 1, OMEGA)
    F = FiniteTypeFilter(OMEGA, TailFilter("v", POS))
    assert theta_apply(ex51, s, F) == F  # shifts preserve one-sided tails
    alpha = make_path(ex51.graph, ("e[0]",))
    F2 = FiniteTypeFilter(alpha, TailFilter("v", POS))
    img = theta_apply(ex51, s, F2)
    assert isinstance(img, FiniteTypeFilter)
    assert [e.id for e in img.alpha.edges] == ["e[1]"]
    assert img.bfilter == TailFilter("v", POS)


def test_theta_composition_sample(ex52, ex52_elements):
    """theta_{ts} = theta_t . theta_s on a filter sample."""
    full = VertexSet.full(ex52.graph.universe)
    filters = [PathFilter(x) for x in enumerate_path_filters(ex52, full, 3)]
    sample = ex52_elements[:: 11]
    for s in sample:
        dom_s = ex52.act_set(ex52.inv(s.g), s.aset)
        for t in sample:
            ts = multiply(ex52, t, s)
            for F in filters:
                if not filter_contains(ex52, F, s.beta, dom_s):
                    continue
                mid = theta_apply(ex52, s, F)
                dom_t = ex52.act_set(ex52.inv(t.g), t.aset)
                inner_ok = filter_contains(ex52, mid, t.beta, dom_t)
                if ts is ZERO:
                    assert not inner_ok
                    continue
                dom_ts = ex52.act_set(ex52.inv(ts.g), ts.aset)
                outer_ok = filter_contains(ex52, F, ts.beta, dom_ts)
                assert inner_ok == outer_ok
                if outer_ok:
                    assert theta_apply(ex52, ts, F) == theta_apply(ex52, t, mid)


def test_theta_inverse_roundtrip(ex52, ex52_elements):
    full = VertexSet.full(ex52.graph.universe)
    filters = [PathFilter(x) for x in enumerate_path_filters(ex52, full, 3)]
    for s in ex52_elements[:: 5]:
        si = invert(ex52, s)
        dom = ex52.act_set(ex52.inv(s.g), s.aset)
        for F in filters:
            if filter_contains(ex52, F, s.beta, dom):
                assert theta_apply(ex52, si, theta_apply(ex52, s, F)) == F


def test_enumerate_path_filters_unsupported(ex51):
    with pytest.raises(Unsupported):
        enumerate_path_filters(ex51, VertexSet.full(ex51.graph.universe), 3)
