"""Shared fixtures: the bundled example systems and exhaustive element sets."""

import itertools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ssu.docs import example_document, load_system
from ssu.semigroup import make
from ssu.ultragraph import OMEGA, VertexSet, path_source


@pytest.fixture(scope="session")
def ex51():
    return load_system(example_document("ex5.1"))


@pytest.fixture(scope="session")
def ex52():
    return load_system(example_document("ex5.2"))


@pytest.fixture(scope="session")
def ex53_trivial():
    return load_system(example_document("ex5.3-trivial"))


@pytest.fixture(scope="session")
def ex53():
    def build(t0, t1):
        return load_system(example_document(f"ex5.3({t0},{t1})"))

    return build


def nonempty_subsets(universe, aset):
    vs = list(aset.iter_vertices())
    for r in range(1, len(vs) + 1):
        for combo in itertools.combinations(vs, r):
            yield VertexSet.of(universe, combo)


def exhaustive_elements(system, max_len=2):
    """Every quadruple with |alpha|, |beta| <= max_len and every valid set."""
    graph = system.graph
    full = VertexSet.full(graph.universe)
    paths = [OMEGA] + list(graph.enumerate_paths(full, max_len))
    group_elems = getattr(system.group, "elements", None) or system.group.ball(2)
    out = []
    for alpha in paths:
        for beta in paths:
            for g in group_elems:
                cap = path_source(graph, alpha).intersect(
                    system.act_set(g, path_source(graph, beta))
                )
                if cap.is_empty():
                    continue
                for aset in nonempty_subsets(graph.universe, cap):
                    out.append(make(system, alpha, aset, g, beta))
    return out


@pytest.fixture(scope="session")
def ex52_elements(ex52):
    return exhaustive_elements(ex52, 2)
