"""Interval sets: canonical form and agreement with a pointwise oracle."""

from hypothesis import given, settings, strategies as st

from ssu.intset import NEG, POS, IntervalSet

WINDOW = range(-40, 41)


# strategy for interval sets built from constructors
def leaf():
    finite = st.lists(st.integers(-20, 20), max_size=5).map(
        lambda xs: IntervalSet.of(*xs)
    )
    rng = st.tuples(st.integers(-20, 20), st.integers(0, 10)).map(
        lambda t: IntervalSet.range(t[0], t[0] + t[1])
    )
    tails = st.integers(-20, 20).map(IntervalSet.tail)
    ltails = st.integers(-20, 20).map(IntervalSet.ltail)
    consts = st.sampled_from([IntervalSet.empty(), IntervalSet.all()])
    return st.one_of(finite, rng, tails, ltails, consts)


def trees(depth=3):
    if depth == 0:
        return leaf()
    sub = trees(depth - 1)
    return st.one_of(
        leaf(),
        st.tuples(sub, sub).map(lambda t: t[0].union(t[1])),
        st.tuples(sub, sub).map(lambda t: t[0].intersect(t[1])),
        st.tuples(sub, sub).map(lambda t: t[0].difference(t[1])),
        st.tuples(sub, st.integers(-5, 5)).map(lambda t: t[0].shift(t[1])),
        sub.map(lambda s: s.complement()),
    )


def window_set(s):
    return {i for i in WINDOW if s.member(i)}


@settings(max_examples=300)
@given(trees(), trees())
def test_boolean_ops_match_pointwise_oracle(a, b):
    assert window_set(a.union(b)) == window_set(a) | window_set(b)
    assert window_set(a.intersect(b)) == window_set(a) & window_set(b)
    assert window_set(a.difference(b)) == window_set(a) - window_set(b)


@settings(max_examples=300)
@given(trees())
def test_complement_and_demorgan(a):
    assert window_set(a.complement()) == set(WINDOW) - window_set(a)
    assert a.complement().complement() == a


@settings(max_examples=300)
@given(trees(), trees())
def test_canonical_equality(a, b):
    """Equal denotations (checked well past the window) give equal values."""
    big = range(-200, 201)
    same = all(a.member(i) == b.member(i) for i in big) and (
        a.has_pos_tail() == b.has_pos_tail()
        and a.has_neg_tail() == b.has_neg_tail()
    )
    assert (a == b) == same


@settings(max_examples=200)
@given(trees())
def test_normal_form_invariants(a):
    ivs = a.intervals
    for lo, hi in ivs:
        if lo is not None and hi is not None:
            assert lo <= hi
    # sorted, disjoint, non-adjacent
    for (lo1, hi1), (lo2, hi2) in zip(ivs, ivs[1:]):
        assert hi1 is not None and lo2 is not None
        assert hi1 + 1 < lo2


def test_tails_and_cardinality():
    t = IntervalSet.tail(3)
    assert t.member(4) and not t.member(3)
    assert t.has_pos_tail() and not t.has_neg_tail()
    assert t.has_tail(POS) and not t.has_tail(NEG)
    assert not t.is_finite() and t.cardinality() is None
    lt = IntervalSet.ltail(3)
    assert lt.member(3) and not lt.member(4)
    assert lt.has_neg_tail()
    fin = IntervalSet.of(1, 2, 2, 9)
    assert fin.is_finite() and fin.cardinality() == 3
    assert fin.max_finite() == 9 and fin.min_finite() == 1
    assert t.intersect(lt).is_empty()
    assert t.union(lt) == IntervalSet.all()


def test_shift():
    s = IntervalSet.of(0, 5).union(IntervalSet.tail(10))
    assert s.shift(2) == IntervalSet.of(2, 7).union(IntervalSet.tail(12))
    assert s.shift(0) == s


def test_subset():
    assert IntervalSet.of(1, 2).subset(IntervalSet.range(0, 5))
    assert not IntervalSet.tail(0).subset(IntervalSet.range(0, 100))
    assert IntervalSet.empty().subset(IntervalSet.empty())
