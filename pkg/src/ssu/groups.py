"""Discrete groups: finite Cayley-table groups and the additive integers."""

from __future__ import annotations

from .errors import ValidationError


class FiniteGroup:
    """A finite group given by an explicit multiplication table.

    Elements are strings; the table maps pairs to elements.  Group axioms
    are validated exhaustively at construction.
    """

    def __init__(self, elements, table, generators=None):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValidationError("duplicate group elements")
        self.table = dict(table)
        elems = set(self.elements)
        for a in self.elements:
            for b in self.elements:
                if (a, b) not in self.table:
                    raise ValidationError(f"table missing product {a!r}*{b!r}")
                if self.table[(a, b)] not in elems:
                    raise ValidationError("table not closed")
        for a in self.elements:
            for b in self.elements:
                for c in self.elements:
                    if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)):
                        raise ValidationError("multiplication not associative")
        identity = None
        for e in self.elements:
            if all(self.op(e, a) == a and self.op(a, e) == a for a in self.elements):
                identity = e
                break
        if identity is None:
            raise ValidationError("no identity element")
        self.identity = identity
        self._inv = {}
        for a in self.elements:
            inv = next(
                (b for b in self.elements if self.op(a, b) == identity), None
            )
            if inv is None or self.op(inv, a) != identity:
                raise ValidationError(f"element {a!r} has no inverse")
            self._inv[a] = inv
        self.generators = tuple(generators) if generators else tuple(
            e for e in self.elements if e != identity
        )
        if not set(self.generators) <= elems:
            raise ValidationError("generators outside the group")

    def op(self, a, b):
        return self.table[(a, b)]

    def inv(self, a):
        return self._inv[a]

    def ball(self, radius):
        """Deterministic BFS ball around the identity; contains the identity."""
        seen = [self.identity]
        frontier = [self.identity]
        gens = tuple(self.generators) + tuple(self._inv[g] for g in self.generators)
        for _ in range(radius):
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.op(a, g)
                    if b not in seen:
                        seen.append(b)
                        nxt.append(b)
            if not nxt:
                break
            frontier = nxt
        return tuple(seen)

    def generator_words(self):
        """Element -> shortest word in generators/inverses (deterministic BFS)."""
        gens = [(g, 1) for g in self.generators] + [
            (self._inv[g], -1) for g in self.generators
        ]
        words = {self.identity: ()}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g, tag in gens:
                    b = self.op(a, g)
                    if b not in words:
                        words[b] = words[a] + ((g, tag),)
                        nxt.append(b)
            frontier = nxt
        if len(words) != len(self.elements):
            raise ValidationError("generators do not generate the group")
        return words

    def __eq__(self, other):
        return (
            isinstance(other, FiniteGroup)
            and self.elements == other.elements
            and self.table == other.table
        )

    def __hash__(self):
        return hash(self.elements)


class IntGroup:
    """The additive integers; elements are Python ints, generator 1."""

    identity = 0
    generators = (1,)

    def op(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def ball(self, radius):
        out = [0]
        for n in range(1, radius + 1):
            out.extend((n, -n))
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, IntGroup)

    def __hash__(self):
        return hash("IntGroup")


def cyclic_group(n):
    """Z_n with elements "0".."n-1" written additively."""
    elems = [str(i) for i in range(n)]
    table = {
        (str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)
    }
    return FiniteGroup(elems, table, generators=("1",) if n > 1 else ("0",))
