"""Finite groups as validated multiplication tables, plus conjugation.

Construction checks the full group axioms eagerly (two-sided identity,
two-sided inverses, associativity over all triples), so a FiniteGroup
that exists is always a genuine group.  Conjugation a*b = a.b.a^-1
turns any group into a quandle, which is the main supply of quandles
that are not keis used in tests.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .errors import NotAGroup, OutOfRange
from .magma import Magma


class FiniteGroup:
    """An immutable finite group on {0, ..., n-1}."""

    def __init__(self, table, name: str = "") -> None:
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise NotAGroup(f"composition table must be square and nonempty, got shape {arr.shape}")
        n = int(arr.shape[0])
        if int(arr.min()) < 0 or int(arr.max()) >= n:
            raise NotAGroup(f"composition table has entries outside 0..{n - 1}")
        idx = np.arange(n)
        identity = None
        for e in range(n):
            if np.array_equal(arr[e], idx) and np.array_equal(arr[:, e], idx):
                identity = e
                break
        if identity is None:
            raise NotAGroup("no two-sided identity element")
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            rights = np.flatnonzero(arr[a] == identity)
            if len(rights) != 1 or arr[int(rights[0]), a] != identity:
                raise NotAGroup(f"element {a} has no unique two-sided inverse")
            inv[a] = int(rights[0])
        lhs = arr[np.arange(n)[:, None, None], arr[None, :, :]]
        rhs = arr[arr[:, :, None], np.arange(n)[None, None, :]]
        if not np.array_equal(lhs, rhs):
            a, b, c = (int(x) for x in np.argwhere(lhs != rhs)[0])
            raise NotAGroup(f"composition is not associative, first failure at ({a}, {b}, {c})")
        arr.setflags(write=False)
        inv.setflags(write=False)
        self.n = n
        self.comp = arr
        self.identity = identity
        self.inv = inv
        self.name = name or f"group{n}"

    def op(self, a: int, b: int) -> int:
        return int(self.comp[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, n={self.n})"

    @classmethod
    def cyclic(cls, k: int) -> "FiniteGroup":
        if k < 1:
            raise OutOfRange("cyclic group order must be at least 1")
        idx = np.arange(k)
        return cls((idx[:, None] + idx[None, :]) % k, name=f"Z{k}")

    @classmethod
    def direct_product(cls, g: "FiniteGroup", h: "FiniteGroup") -> "FiniteGroup":
        n = g.n * h.n
        table = np.empty((n, n), dtype=np.int64)
        for a in range(g.n):
            for b in range(h.n):
                for c in range(g.n):
                    for d in range(h.n):
                        table[a * h.n + b, c * h.n + d] = g.op(a, c) * h.n + h.op(b, d)
        return cls(table, name=f"{g.name}x{h.name}")

    @classmethod
    def dihedral(cls, k: int) -> "FiniteGroup":
        """Symmetries of a regular k-gon, order 2k; element 2r+f is
        rotation r followed by f flips."""
        if k < 1:
            raise OutOfRange("dihedral parameter must be at least 1")
        n = 2 * k
        table = np.empty((n, n), dtype=np.int64)
        for a in range(k):
            for b in range(2):
                for c in range(k):
                    for d in range(2):
                        rot = (a + (c if b == 0 else -c)) % k
                        table[2 * a + b, 2 * c + d] = 2 * rot + (b + d) % 2
        return cls(table, name=f"D{k}")

    @classmethod
    def quaternion(cls) -> "FiniteGroup":
        """The quaternion group of order 8; element 2a+b encodes x^a y^b
        with x of order 4, y^2 = x^2, y x y^-1 = x^-1."""
        table = np.empty((8, 8), dtype=np.int64)
        for a in range(4):
            for b in range(2):
                for c in range(4):
                    for d in range(2):
                        exp = (a + (c if b == 0 else -c) + 2 * b * d) % 4
                        table[2 * a + b, 2 * c + d] = 2 * exp + (b + d) % 2
        return cls(table, name="Q8")

    @classmethod
    def symmetric(cls, k: int) -> "FiniteGroup":
        """Permutations of k points under composition, elements numbered
        in lexicographic one-line order."""
        if not 1 <= k <= 5:
            raise OutOfRange("symmetric group supported for 1 <= k <= 5")
        elems = sorted(permutations(range(k)))
        index = {p: i for i, p in enumerate(elems)}
        n = len(elems)
        table = np.empty((n, n), dtype=np.int64)
        for i, p in enumerate(elems):
            for j, q in enumerate(elems):
                table[i, j] = index[tuple(p[q[x]] for x in range(k))]
        return cls(table, name=f"S{k}")


def standard_groups(max_order: int = 8) -> list[FiniteGroup]:
    """Every group of order up to max_order (up to isomorphism), for
    max_order <= 8.  That is 14 groups at the default."""
    if max_order > 8:
        raise OutOfRange("standard battery only covers orders up to 8")
    z = FiniteGroup.cyclic
    groups = [
        z(1), z(2), z(3),
        z(4), FiniteGroup.direct_product(z(2), z(2)),
        z(5),
        z(6), FiniteGroup.symmetric(3),
        z(7),
        z(8), FiniteGroup.direct_product(z(4), z(2)),
        FiniteGroup.direct_product(FiniteGroup.direct_product(z(2), z(2)), z(2)),
        FiniteGroup.dihedral(4), FiniteGroup.quaternion(),
    ]
    return [g for g in groups if g.n <= max_order]


def conjugation_quandle(g: FiniteGroup) -> Magma:
    """The quandle a*b = a.b.a^-1 on the elements of g."""
    table = g.comp[g.comp, g.inv[:, None]]
    return Magma(table)
