"""Isomorphisms of magmas and the graph-to-kei reduction argument.

The central claim verified by this package: two irreflexive digraphs
are isomorphic exactly when their encoded keis are isomorphic as
magmas.  This module supplies both directions concretely: a graph
isomorphism induces a kei isomorphism by acting on twin pairs, and a
kei isomorphism is converted back into a graph isomorphism by reading
off where twin pairs go (with a chain construction on the vertices
that every vertex points at, where twin pairs can be shuffled).

Two magma isomorphism finders are provided: a vectorized brute force
over all permutations (small orders, used as the oracle) and a
backtracking search with invariant-based pruning (the workhorse).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence

import numpy as np

from .digraph import Bijection, Digraph, find_graph_isomorphism, is_graph_isomorphism
from .errors import (
    InternalContradiction,
    InvalidIso,
    MalformedLine,
    NotAGraphIso,
    TooLarge,
)
from .folding import encode_kei
from .magma import Magma, cycle_type

BRUTE_FORCE_LIMIT = 8
LABEL_CACHE_SIZE = 8192

_PERM_CACHE: dict[int, np.ndarray] = {}

# Structure tuples are interned to small ints process-wide, so labels
# computed independently for two magmas are directly comparable.
_STRUCTURE_LABELS: dict[tuple, int] = {}


def is_magma_isomorphism(m: Magma, n_: Magma, f: Bijection | Sequence[int]) -> bool:
    """True iff f is a bijection with f(a*b) = f(a)*f(b) on the whole
    table.  Size mismatches and non-bijections simply yield False."""
    fmap = f.map if isinstance(f, Bijection) else tuple(int(x) for x in f)
    if m.n != n_.n or len(fmap) != m.n or sorted(fmap) != list(range(m.n)):
        return False
    perm = np.array(fmap, dtype=np.int64)
    return bool(np.array_equal(perm[m.table], n_.table[perm[:, None], perm[None, :]]))


def _perm_array(n: int) -> np.ndarray:
    if n not in _PERM_CACHE:
        _PERM_CACHE[n] = np.array(list(permutations(range(n))), dtype=np.int64)
    return _PERM_CACHE[n]


def magma_iso_bruteforce_all(m: Magma, n_: Magma) -> Iterator[Bijection]:
    """Every isomorphism from m to n_, by scanning all permutations in
    lexicographic order.  Only for carriers up to BRUTE_FORCE_LIMIT."""
    if max(m.n, n_.n) > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute force only runs at order <= {BRUTE_FORCE_LIMIT}")
    if m.n != n_.n:
        return
    perms = _perm_array(m.n)
    chunk = 2048
    for lo in range(0, len(perms), chunk):
        block = perms[lo:lo + chunk]
        lhs = block[:, m.table]
        rhs = n_.table[block[:, :, None], block[:, None, :]]
        for idx in np.flatnonzero((lhs == rhs).all(axis=(1, 2))):
            yield Bijection(tuple(int(x) for x in block[idx]))


def magma_iso_bruteforce(m: Magma, n_: Magma) -> Bijection | None:
    """Least isomorphism in one-line lexicographic order, or None."""
    for found in magma_iso_bruteforce_all(m, n_):
        return found
    return None


def _intern(structure: tuple) -> int:
    label = _STRUCTURE_LABELS.get(structure)
    if label is None:
        label = len(_STRUCTURE_LABELS)
        _STRUCTURE_LABELS[structure] = label
    return label


def _row_shape(row: tuple[int, ...]) -> tuple:
    if len(set(row)) == len(row):
        return ("perm",) + cycle_type(row)
    return ("map",) + tuple(sorted(Counter(row).values()))


def _seed_profile(rows: tuple[tuple[int, ...], ...], a: int) -> tuple:
    """Isomorphism-invariant fingerprint of one element.

    Combines idempotence, the shape of its left translation, the number
    of points that translation fixes, and the multiset of translation
    shapes along the forward orbit of a under its own translation.
    """
    n = len(rows)
    row = rows[a]
    orbit = []
    seen = set()
    x = a
    while x not in seen:
        seen.add(x)
        orbit.append(x)
        x = row[x]
    return (
        row[a] == a,
        _row_shape(row),
        sum(1 for b in range(n) if row[b] == b),
        tuple(sorted(_row_shape(rows[b]) for b in orbit)),
    )


def _partition_shape(labels: list[int]) -> tuple[int, ...]:
    first: dict[int, int] = {}
    return tuple(first.setdefault(lab, len(first)) for lab in labels)


@lru_cache(maxsize=LABEL_CACHE_SIZE)
def _invariant_labels(m: Magma) -> tuple[int, ...]:
    """Stable per-element labels refined from the seed profiles.

    Refinement folds in, for every other element b, the labels of b,
    a*b and b*a as an unordered multiset; it stops when the induced
    partition stops changing.  Any isomorphism must match labels
    pointwise at every round, so equal-label filtering is sound.
    """
    rows = m.rows()
    n = m.n
    labels = [_intern(("seed", _seed_profile(rows, a))) for a in range(n)]
    while True:
        refined = [
            _intern((
                "step",
                labels[a],
                tuple(sorted((labels[b], labels[rows[a][b]], labels[rows[b][a]]) for b in range(n))),
            ))
            for a in range(n)
        ]
        if _partition_shape(refined) == _partition_shape(labels):
            return tuple(refined)
        labels = refined


def magma_iso_search(m: Magma, n_: Magma) -> Bijection | None:
    """Backtracking isomorphism search usable well beyond brute force.

    Elements may only map to elements with the same invariant label;
    each tentative assignment propagates through the tables (a -> x and
    b -> y force a*b -> x*y and b*a -> y*x).  Assignment order and
    candidate order are fixed, so the result is deterministic.
    """
    if m.n != n_.n:
        return None
    if m == n_:
        return Bijection.identity(m.n)
    la = _invariant_labels(m)
    lb = _invariant_labels(n_)
    if sorted(la) != sorted(lb):
        return None
    rows_m = m.rows()
    rows_n = n_.rows()
    n = m.n
    cands: dict[int, list[int]] = {}
    for y in range(n):
        cands.setdefault(lb[y], []).append(y)
    order = sorted(range(n), key=lambda a: (len(cands.get(la[a], ())), a))
    fwd = [-1] * n
    bwd = [-1] * n

    def try_assign(x: int, y: int, log: list[int]) -> bool:
        stack = [(x, y)]
        while stack:
            p, q = stack.pop()
            if fwd[p] != -1:
                if fwd[p] != q:
                    return False
                continue
            if bwd[q] != -1 or la[p] != lb[q]:
                return False
            fwd[p] = q
            bwd[q] = p
            log.append(p)
            for z in range(n):
                w = fwd[z]
                if w == -1:
                    continue
                stack.append((rows_m[p][z], rows_n[q][w]))
                stack.append((rows_m[z][p], rows_n[w][q]))
        return True

    def solve(k: int) -> bool:
        if k == n:
            return True
        a = order[k]
        if fwd[a] != -1:
            return solve(k + 1)
        for b in cands.get(la[a], ()):
            if bwd[b] != -1:
                continue
            log: list[int] = []
            if try_assign(a, b, log) and solve(k + 1):
                return True
            for p in reversed(log):
                bwd[fwd[p]] = -1
                fwd[p] = -1
        return False

    if solve(0):
        return Bijection(tuple(fwd))
    return None


class KeiIso:
    """A validated magma isomorphism between the keis of two digraphs."""

    def __init__(self, mapping: Bijection, source: Digraph, target: Digraph) -> None:
        if mapping.domain_size != 2 * source.n or source.n != target.n:
            raise InvalidIso(
                f"map on {mapping.domain_size} elements cannot link keis of "
                f"{source.n} and {target.n} vertices"
            )
        if not is_magma_isomorphism(encode_kei(source).magma, encode_kei(target).magma, mapping):
            raise InvalidIso("map does not preserve the kei operation")
        self.mapping = mapping
        self.source = source
        self.target = target

    def __call__(self, x: int) -> int:
        return self.mapping.map[x]

    def vertex_image(self, x: int) -> int:
        """The vertex under the image of element x."""
        return self.mapping.map[x] // 2

    def level_image(self, x: int) -> int:
        """The level (0 or 1) of the image of element x."""
        return self.mapping.map[x] % 2

    def __repr__(self) -> str:
        return f"KeiIso(n={self.source.n}, map={self.mapping.map})"


@dataclass(frozen=True)
class VertexSplit:
    """Partition of the vertices into sinks of everything and the rest.

    A vertex is fixed when every other vertex has an edge into it; in
    the kei this is exactly 'every element fixes both its twins'.
    """

    fixed: frozenset[int]
    moving: frozenset[int]


def vertex_split(graph: Digraph) -> VertexSplit:
    """Compute the split on the graph side and on the kei side and
    insist that they agree."""
    n = graph.n
    indeg = graph.adj.sum(axis=0)
    from_graph = frozenset(v for v in range(n) if int(indeg[v]) == n - 1)
    table = encode_kei(graph).magma.table
    from_kei = frozenset(
        v for v in range(n) if bool(np.all(table[:, 2 * v] == 2 * v))
    )
    if from_graph != from_kei:
        raise InternalContradiction(
            f"fixed-vertex sets disagree: graph says {sorted(from_graph)}, "
            f"kei says {sorted(from_kei)}"
        )
    return VertexSplit(fixed=from_graph, moving=frozenset(range(n)) - from_graph)


def induced_kei_iso(h: Bijection, source: Digraph, target: Digraph) -> KeiIso:
    """Lift a graph isomorphism to the keis by 2v+i -> 2h(v)+i."""
    if not is_graph_isomorphism(source, target, h):
        raise NotAGraphIso("map is not an isomorphism of the given digraphs")
    mapping = [0] * (2 * source.n)
    for v in range(source.n):
        mapping[2 * v] = 2 * h(v)
        mapping[2 * v + 1] = 2 * h(v) + 1
    return KeiIso(Bijection(tuple(mapping)), source, target)


def extract_graph_iso(
    rho: KeiIso | Bijection,
    source: Digraph | None = None,
    target: Digraph | None = None,
) -> Bijection:
    """Convert a kei isomorphism back into a graph isomorphism.

    Accepts either a KeiIso or a raw Bijection plus the two digraphs
    (the latter is validated first, raising InvalidIso on a non-iso).

    On a moving vertex both twins must land on one target vertex, which
    becomes the image.  On fixed vertices the twins may be scattered,
    so images are chosen along chains: starting from the least unvisited
    fixed vertex at level 0, repeatedly hop to the element whose image
    is the twin of the image of the current vertex's other level.  Each
    hop lands on a new fixed vertex and fixes its level choice; chains
    close up into cycles, and the chosen elements hit each target twin
    pair exactly once.  The result is validated on the graphs before
    being returned; failure there would mean the construction is broken
    and raises InternalContradiction.
    """
    if not isinstance(rho, KeiIso):
        if source is None or target is None:
            raise InvalidIso("a raw map needs both digraphs for validation")
        rho = KeiIso(rho, source, target)
    source = rho.source
    target = rho.target
    n = source.n
    split_source = vertex_split(source)
    split_target = vertex_split(target)
    fwd = rho.mapping.map
    inv = rho.mapping.inverse().map
    f = [-1] * n
    for v in sorted(split_source.moving):
        if rho.vertex_image(2 * v) != rho.vertex_image(2 * v + 1):
            raise InternalContradiction(
                f"twins of moving vertex {v} were separated by the kei map"
            )
        if rho.vertex_image(2 * v) not in split_target.moving:
            raise InternalContradiction(
                f"moving vertex {v} landed on a fixed target vertex"
            )
        f[v] = rho.vertex_image(2 * v)
    visited: set[int] = set()
    for start in sorted(split_source.fixed):
        if start in visited:
            continue
        v, level = start, 0
        while v not in visited:
            visited.add(v)
            f[v] = fwd[2 * v + level] // 2
            hop = inv[fwd[2 * v + (1 - level)] ^ 1]
            v, level = hop // 2, hop % 2
        if (v, level) != (start, 0):
            raise InternalContradiction("level chain did not close at its start")
    try:
        result = Bijection(tuple(f))
    except Exception as exc:
        raise InternalContradiction(f"extracted vertex map is not a bijection: {f}") from exc
    if not is_graph_isomorphism(source, target, result):
        raise InternalContradiction("extracted vertex map fails the edge check")
    return result


@dataclass(frozen=True)
class ReductionVerdict:
    """Outcome of testing one graph pair for both kinds of isomorphism."""

    graph_iso: bool
    kei_iso: bool
    agree: bool


def reduction_check(g: Digraph, h: Digraph, oracle_limit: int = 6) -> ReductionVerdict:
    """Decide graph isomorphism and kei isomorphism independently and
    record whether they agree.

    Any isomorphism the searches produce is re-validated, and the kei
    search is cross-checked against brute force when the kei order is
    at most oracle_limit.  Disagreement between the searches and their
    validation or oracle raises InternalContradiction; disagreement
    between the graph answer and the kei answer is what the verdict is
    for and is simply reported.
    """
    graph_found = find_graph_isomorphism(g, h)
    if graph_found is not None and not is_graph_isomorphism(g, h, graph_found):
        raise InternalContradiction("graph search returned a non-isomorphism")
    kei_g = encode_kei(g).magma
    kei_h = encode_kei(h).magma
    kei_found = magma_iso_search(kei_g, kei_h)
    if kei_found is not None and not is_magma_isomorphism(kei_g, kei_h, kei_found):
        raise InternalContradiction("kei search returned a non-isomorphism")
    if kei_g.n == kei_h.n and kei_g.n <= oracle_limit:
        brute = magma_iso_bruteforce(kei_g, kei_h)
        if (brute is None) != (kei_found is None):
            raise InternalContradiction("kei search disagrees with brute force")
    graph_iso = graph_found is not None
    kei_iso = kei_found is not None
    return ReductionVerdict(graph_iso, kei_iso, graph_iso == kei_iso)


def format_verdict_line(id_left: str, id_right: str, verdict: ReductionVerdict) -> str:
    return (
        f"{id_left} {id_right} "
        f"{int(verdict.graph_iso)} {int(verdict.kei_iso)} {int(verdict.agree)}"
    )


def parse_verdict_line(line: str, lineno: int = 1) -> tuple[str, str, ReductionVerdict]:
    tokens = line.split()
    if len(tokens) != 5:
        raise MalformedLine(lineno, line, "expected 5 fields")
    for t in tokens[2:]:
        if t not in ("0", "1"):
            raise MalformedLine(lineno, line, "verdict flags must be 0 or 1")
    verdict = ReductionVerdict(tokens[2] == "1", tokens[3] == "1", tokens[4] == "1")
    if verdict.agree != (verdict.graph_iso == verdict.kei_iso):
        raise MalformedLine(lineno, line, "agree flag inconsistent with verdicts")
    return tokens[0], tokens[1], verdict
