"""Independent reference implementations used to validate the library.

Everything here is deliberately written as direct loops over the
definitions, so the optimized library code has something dumb and
trustworthy to be compared against.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from keikit import Digraph, Magma
from keikit.magma import check_axiom_unique_left_division, classify, LeftMult


def first_ld_violation(rows) -> tuple[int, int, int] | None:
    n = len(rows)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if rows[a][rows[b][c]] != rows[rows[a][b]][rows[a][c]]:
                    return (a, b, c)
    return None


def first_involutory_violation(rows) -> tuple[int, int] | None:
    n = len(rows)
    for a in range(n):
        for b in range(n):
            if rows[a][rows[a][b]] != b:
                return (a, b)
    return None


def first_division_violation(rows) -> tuple[int, int] | None:
    # least (a, c) that row a never attains; a duplicated value always
    # forces some other value to be missing, so this detects exactly
    # the non-permutation rows
    n = len(rows)
    for a in range(n):
        for c in range(n):
            if all(rows[a][b] != c for b in range(n)):
                return (a, c)
    return None


def first_idempotence_violation(rows) -> tuple[int] | None:
    for a in range(len(rows)):
        if rows[a][a] != a:
            return (a,)
    return None


def direct_encode_rows(graph: Digraph) -> list[list[int]]:
    """The kei of a digraph evaluated case by case from its definition."""
    n2 = 2 * graph.n
    rows = []
    for x in range(n2):
        u = x // 2
        row = []
        for y in range(n2):
            v, j = y // 2, y % 2
            if u == v or graph.has_edge(u, v):
                row.append(2 * v + j)
            else:
                row.append(2 * v + (1 - j))
        rows.append(row)
    return rows


def brute_graph_iso(g: Digraph, h: Digraph) -> tuple[int, ...] | None:
    """First isomorphism over all n! vertex maps, or None."""
    if g.n != h.n:
        return None
    n = g.n
    perms = np.array(list(permutations(range(n))), dtype=np.int64)
    relabeled = h.adj[perms[:, :, None], perms[:, None, :]]
    hits = np.flatnonzero((relabeled == g.adj[None, :, :]).all(axis=(1, 2)))
    if hits.size == 0:
        return None
    return tuple(int(x) for x in perms[int(hits[0])])


def graph_automorphisms(g: Digraph) -> list[tuple[int, ...]]:
    """Every vertex permutation fixing the edge relation, ascending."""
    n = g.n
    perms = np.array(list(permutations(range(n))), dtype=np.int64)
    relabeled = g.adj[perms[:, :, None], perms[:, None, :]]
    hits = np.flatnonzero((relabeled == g.adj[None, :, :]).all(axis=(1, 2)))
    return [tuple(int(x) for x in perms[int(i)]) for i in hits]


def fpf_involutions(n: int) -> list[tuple[int, ...]]:
    """All fixed-point-free involutions of {0..n-1}."""
    if n % 2 == 1:
        return []
    out: list[tuple[int, ...]] = []
    tau = [-1] * n

    def pair(elems: list[int]) -> None:
        if not elems:
            out.append(tuple(tau))
            return
        a = elems[0]
        for j in range(1, len(elems)):
            b = elems[j]
            tau[a], tau[b] = b, a
            pair(elems[1:j] + elems[j + 1:])
            tau[a] = tau[b] = -1

    pair(list(range(n)))
    return out


def folded_witness_taus(m: Magma) -> list[tuple[int, ...]]:
    """All tau under which m literally is a folded table, by trying
    every fixed-point-free involution against the definitions."""
    rows = m.rows()
    n = m.n
    result = []
    for tau in fpf_involutions(n):
        phi = [[rows[a][b] == b for b in range(n)] for a in range(n)]
        ok = all(phi[a][a] for a in range(n))
        ok = ok and all(
            phi[a][b] == phi[tau[a]][b] and phi[a][b] == phi[a][tau[b]]
            for a in range(n)
            for b in range(n)
        )
        ok = ok and all(
            rows[a][b] == (b if phi[a][b] else tau[b])
            for a in range(n)
            for b in range(n)
        )
        if ok:
            result.append(tau)
    return result


def direct_sigma_violations(comp, star) -> dict[str, tuple[int, ...] | None]:
    """First violating tuple of each identity, by direct evaluation."""
    n = len(comp)
    found: dict[str, tuple[int, ...] | None] = {}
    witness = None
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if comp[a][comp[b][c]] != comp[comp[a][b]][c] and witness is None:
                    witness = (a, b, c)
    found["sigma-1"] = witness
    witness = None
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if star[comp[a][b]][c] != star[a][star[b][c]] and witness is None:
                    witness = (a, b, c)
    found["sigma-2"] = witness
    witness = None
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if star[a][comp[b][c]] != comp[star[a][b]][star[a][c]] and witness is None:
                    witness = (a, b, c)
    found["sigma-3"] = witness
    witness = None
    for a in range(n):
        for b in range(n):
            if comp[star[a][b]][a] != comp[a][b] and witness is None:
                witness = (a, b)
    found["sigma-4"] = witness
    return found


def trivial_kei(n: int) -> Magma:
    return Magma([[b for b in range(n)] for _ in range(n)])


def dihedral_kei(n: int) -> Magma:
    """a*b = 2a-b mod n, the reflection kei on n points."""
    return Magma([[(2 * a - b) % n for b in range(n)] for a in range(n)])


def assert_core_invariants(m: Magma) -> None:
    """Cross-cutting checks applied to every magma a test touches."""
    ladder = classify(m)
    assert ladder.is_kei <= ladder.is_quandle <= ladder.is_rack <= ladder.is_ld
    if check_axiom_unique_left_division(m).holds:
        for a in range(m.n):
            assert LeftMult(m, a).is_permutation


def all_subsets(n: int) -> list[tuple[int, ...]]:
    return [
        tuple(v for v in range(n) if (mask >> v) & 1) for mask in range(1 << n)
    ]
