"""Finite magmas and the axiom ladder from left distributivity to kei.

A magma is a binary operation * on the carrier {0, ..., n-1}, stored as
an n by n table with table[a][b] = a*b.  The ladder of interest:

  left distributivity   a*(b*c) = (a*b)*(a*c)
  unique left division  for all a, c there is exactly one b with a*b = c
  idempotence           a*a = a
  involutivity          a*(a*b) = b

A rack satisfies the first two, a quandle the first three, a kei all
four.  All checkers are exhaustive and report the lexicographically
least counterexample, so results are deterministic and replayable.
Magma objects are immutable; every function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import MalformedLine, NotARack, OutOfRange
from .textio import read_header_int, read_row_block, require_only_trailing_junk

AXIOM_LD = "left-distributivity"
AXIOM_DIVISION = "unique-left-division"
AXIOM_IDEMPOTENCE = "idempotence"
AXIOM_INVOLUTORY = "involutivity"

LADDER_AXIOMS = (AXIOM_LD, AXIOM_DIVISION, AXIOM_IDEMPOTENCE, AXIOM_INVOLUTORY)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of one exhaustive axiom check.

    witness is None when the axiom holds, otherwise the least violating
    tuple in lexicographic order (shape depends on the axiom).
    """

    axiom: str
    holds: bool
    witness: tuple[int, ...] | None = None

    def __str__(self) -> str:
        if self.holds:
            return f"{self.axiom}: holds"
        return f"{self.axiom}: fails at {self.witness}"


class Magma:
    """An immutable finite magma given by its operation table."""

    def __init__(self, table) -> None:
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise OutOfRange(f"operation table must be square and nonempty, got shape {arr.shape}")
        n = int(arr.shape[0])
        if int(arr.min()) < 0 or int(arr.max()) >= n:
            a, b = (int(x) for x in np.argwhere((arr < 0) | (arr >= n))[0])
            raise OutOfRange(f"entry {int(arr[a, b])} at ({a}, {b}) is outside 0..{n - 1}")
        arr.setflags(write=False)
        self.n = n
        self.table = arr
        self._rows: tuple[tuple[int, ...], ...] | None = None
        self._hash: int | None = None

    def apply(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def rows(self) -> tuple[tuple[int, ...], ...]:
        """Table as nested tuples of plain ints, cached for tight loops."""
        if self._rows is None:
            self._rows = tuple(tuple(int(x) for x in row) for row in self.table)
        return self._rows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Magma):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.table.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"Magma(n={self.n})"

    def to_text(self) -> str:
        lines = [str(self.n)]
        lines.extend(" ".join(str(x) for x in row) for row in self.rows())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Magma":
        lines = text.splitlines()
        n, i = read_header_int(lines, 0)
        if n < 1:
            raise MalformedLine(i, lines[i - 1] if lines else "", "size must be at least 1")
        rows, i = read_row_block(lines, i, n, n)
        require_only_trailing_junk(lines, i)
        return cls(rows)


@dataclass(frozen=True)
class LeftMult:
    """The left translation b -> a*b of one element, as an explicit map."""

    a: int
    map: tuple[int, ...]

    def __init__(self, magma: Magma, a: int) -> None:
        if not 0 <= a < magma.n:
            raise OutOfRange(f"element {a} is outside 0..{magma.n - 1}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "map", magma.rows()[a])

    def apply(self, b: int) -> int:
        return self.map[b]

    @property
    def is_permutation(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted cycle lengths; only defined when the map is a permutation."""
        if not self.is_permutation:
            raise NotARack(f"left translation of {self.a} is not a permutation")
        return cycle_type(self.map)


def cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def check_axiom_ld(m: Magma) -> AxiomReport:
    """Check a*(b*c) = (a*b)*(a*c) over all triples."""
    t = m.table
    n = m.n
    lhs = t[np.arange(n)[:, None, None], t[None, :, :]]
    rhs = t[t[:, :, None], t[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size == 0:
        return AxiomReport(AXIOM_LD, True)
    a, b, c = (int(x) for x in bad[0])
    return AxiomReport(AXIOM_LD, False, (a, b, c))


def check_axiom_unique_left_division(m: Magma) -> AxiomReport:
    """Check that every row of the table is a permutation.

    The witness is the least (a, c) such that a*b = c has no solution;
    on a finite carrier a non-surjective row is also non-injective, so
    this captures failure of uniqueness as well.
    """
    for a in range(m.n):
        present = np.zeros(m.n, dtype=bool)
        present[m.table[a]] = True
        if not present.all():
            c = int(np.argmin(present))
            return AxiomReport(AXIOM_DIVISION, False, (a, c))
    return AxiomReport(AXIOM_DIVISION, True)


def check_axiom_idempotent(m: Magma) -> AxiomReport:
    """Check a*a = a for every element."""
    diag = np.diagonal(m.table)
    bad = np.flatnonzero(diag != np.arange(m.n))
    if bad.size == 0:
        return AxiomReport(AXIOM_IDEMPOTENCE, True)
    return AxiomReport(AXIOM_IDEMPOTENCE, False, (int(bad[0]),))


def check_axiom_involutory(m: Magma) -> AxiomReport:
    """Check a*(a*b) = b for every pair."""
    t = m.table
    n = m.n
    lhs = t[np.arange(n)[:, None], t]
    bad = np.argwhere(lhs != np.arange(n)[None, :])
    if bad.size == 0:
        return AxiomReport(AXIOM_INVOLUTORY, True)
    a, b = (int(x) for x in bad[0])
    return AxiomReport(AXIOM_INVOLUTORY, False, (a, b))


@dataclass(frozen=True)
class Ladder:
    """Classification of a magma along the axiom ladder."""

    is_ld: bool
    is_rack: bool
    is_quandle: bool
    is_kei: bool
    reports: tuple[AxiomReport, AxiomReport, AxiomReport, AxiomReport]


def classify(m: Magma) -> Ladder:
    """Run all four axiom checks and combine them into ladder levels."""
    ld = check_axiom_ld(m)
    division = check_axiom_unique_left_division(m)
    idem = check_axiom_idempotent(m)
    invol = check_axiom_involutory(m)
    is_rack = ld.holds and division.holds
    return Ladder(
        is_ld=ld.holds,
        is_rack=is_rack,
        is_quandle=is_rack and idem.holds,
        is_kei=is_rack and idem.holds and invol.holds,
        reports=(ld, division, idem, invol),
    )


def left_division(m: Magma, a: int, c: int) -> int:
    """The unique b with a*b = c.

    Raises NotARack when the row of a is not a permutation, since then
    b need not exist or be unique.
    """
    if not 0 <= a < m.n or not 0 <= c < m.n:
        raise OutOfRange(f"arguments ({a}, {c}) outside 0..{m.n - 1}")
    row = m.table[a]
    if len(set(row.tolist())) != m.n:
        raise NotARack(f"row of {a} is not a permutation, cannot divide")
    return int(np.flatnonzero(row == c)[0])


def iter_ld_violations(m: Magma) -> Iterator[tuple[int, int, int]]:
    """All (a, b, c) with a*(b*c) != (a*b)*(a*c), lexicographic order."""
    t = m.table
    n = m.n
    lhs = t[np.arange(n)[:, None, None], t[None, :, :]]
    rhs = t[t[:, :, None], t[:, None, :]]
    for a, b, c in np.argwhere(lhs != rhs):
        yield int(a), int(b), int(c)


def iter_division_violations(m: Magma) -> Iterator[tuple[int, int]]:
    """All (a, c) with no b solving a*b = c, lexicographic order."""
    for a in range(m.n):
        present = np.zeros(m.n, dtype=bool)
        present[m.table[a]] = True
        for c in np.flatnonzero(~present):
            yield a, int(c)


def iter_idempotence_violations(m: Magma) -> Iterator[tuple[int]]:
    diag = np.diagonal(m.table)
    for a in np.flatnonzero(diag != np.arange(m.n)):
        yield (int(a),)


def iter_involutory_violations(m: Magma) -> Iterator[tuple[int, int]]:
    t = m.table
    n = m.n
    lhs = t[np.arange(n)[:, None], t]
    for a, b in np.argwhere(lhs != np.arange(n)[None, :]):
        yield int(a), int(b)


VIOLATION_ITERATORS = {
    AXIOM_LD: iter_ld_violations,
    AXIOM_DIVISION: iter_division_violations,
    AXIOM_IDEMPOTENCE: iter_idempotence_violations,
    AXIOM_INVOLUTORY: iter_involutory_violations,
}
