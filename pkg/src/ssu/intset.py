"""Canonical sets of integers built from finitely many intervals.

An IntervalSet is a finite union of inclusive integer intervals whose
endpoints may be infinite (None stands for the missing bound).  The
canonical form keeps intervals sorted, disjoint, and maximal, so two
IntervalSets are equal iff they denote the same subset of Z.  All Boolean
operations and queries are exact.
"""

from __future__ import annotations

NEG = "neg"  # direction tags for tails
POS = "pos"


def _lo_key(lo):
    return float("-inf") if lo is None else lo


def _hi_key(hi):
    return float("inf") if hi is None else hi


def _normalize(intervals):
    ivs = sorted(intervals, key=lambda p: (_lo_key(p[0]), _hi_key(p[1])))
    out = []
    for lo, hi in ivs:
        if lo is not None and hi is not None and lo > hi:
            continue
        if out:
            plo, phi = out[-1]
            if phi is None:
                # previous interval already runs to +inf
                continue
            if _lo_key(lo) <= phi + 1:
                # overlapping or adjacent: merge
                if hi is None or hi > phi:
                    out[-1] = (plo, hi)
                continue
        out.append((lo, hi))
    return tuple(out)


class IntervalSet:
    __slots__ = ("intervals",)

    def __init__(self, intervals=()):
        self.intervals = _normalize(intervals)

    # -- constructors -------------------------------------------------

    @staticmethod
    def empty():
        return IntervalSet(())

    @staticmethod
    def all():
        return IntervalSet(((None, None),))

    @staticmethod
    def of(*points):
        return IntervalSet(tuple((p, p) for p in points))

    @staticmethod
    def range(lo, hi):
        """Inclusive interval [lo, hi]; None for an infinite bound."""
        return IntervalSet(((lo, hi),))

    @staticmethod
    def tail(k):
        """{j : j > k}."""
        return IntervalSet(((k + 1, None),))

    @staticmethod
    def ltail(k):
        """{j : j <= k}."""
        return IntervalSet(((None, k),))

    # -- algebra ------------------------------------------------------

    def union(self, other):
        return IntervalSet(self.intervals + other.intervals)

    def intersect(self, other):
        out = []
        for alo, ahi in self.intervals:
            for blo, bhi in other.intervals:
                lo = alo if blo is None else (blo if alo is None else max(alo, blo))
                hi = ahi if bhi is None else (bhi if ahi is None else min(ahi, bhi))
                if lo is None or hi is None or lo <= hi:
                    out.append((lo, hi))
        return IntervalSet(out)

    def complement(self):
        out = []
        prev = None  # exclusive lower bound of the next gap
        started = False
        for lo, hi in self.intervals:
            if not started:
                if lo is not None:
                    out.append((None, lo - 1))
                started = True
            else:
                out.append((prev + 1, lo - 1))
            prev = hi
            if hi is None:
                return IntervalSet(out)
        if not started:
            return IntervalSet.all()
        out.append((prev + 1, None))
        return IntervalSet(out)

    def difference(self, other):
        return self.intersect(other.complement())

    def shift(self, n):
        return IntervalSet(
            tuple(
                (None if lo is None else lo + n, None if hi is None else hi + n)
                for lo, hi in self.intervals
            )
        )

    # -- queries ------------------------------------------------------

    def is_empty(self):
        return not self.intervals

    def is_finite(self):
        return all(lo is not None and hi is not None for lo, hi in self.intervals)

    def cardinality(self):
        """Exact size, or None when infinite."""
        if not self.is_finite():
            return None
        return sum(hi - lo + 1 for lo, hi in self.intervals)

    def member(self, j):
        for lo, hi in self.intervals:
            if (lo is None or j >= lo) and (hi is None or j <= hi):
                return True
        return False

    def subset(self, other):
        return self.difference(other).is_empty()

    def has_pos_tail(self):
        return any(hi is None for _, hi in self.intervals)

    def has_neg_tail(self):
        return any(lo is None for lo, _ in self.intervals)

    def has_tail(self, direction):
        return self.has_pos_tail() if direction == POS else self.has_neg_tail()

    def max_finite(self):
        """Largest element; requires nonempty and no +inf tail."""
        if self.is_empty() or self.has_pos_tail():
            raise ValueError("no finite maximum")
        return self.intervals[-1][1]

    def min_finite(self):
        if self.is_empty() or self.has_neg_tail():
            raise ValueError("no finite minimum")
        return self.intervals[0][0]

    def iter_window(self, lo, hi):
        """Members j with lo <= j <= hi, ascending."""
        for j in range(lo, hi + 1):
            if self.member(j):
                yield j

    def iter_finite(self):
        """All members, ascending; requires a finite set."""
        if not self.is_finite():
            raise ValueError("infinite set")
        for lo, hi in self.intervals:
            yield from range(lo, hi + 1)

    # -- value semantics ----------------------------------------------

    def __eq__(self, other):
        return isinstance(other, IntervalSet) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        if not self.intervals:
            return "IntervalSet()"
        parts = []
        for lo, hi in self.intervals:
            l = "-inf" if lo is None else str(lo)
            h = "+inf" if hi is None else str(hi)
            parts.append(f"[{l},{h}]" if (lo, hi) != (lo, lo) or lo is None else f"{{{lo}}}")
        return "IntervalSet(" + " u ".join(parts) + ")"
