"""Irreflexive directed graphs on {0, ..., n-1} and their isomorphisms.

Digraphs are immutable adjacency matrices with a forced-false diagonal.
The module also provides the edge-list text format, exhaustive and
canonical-form enumeration at small orders, seeded random generation,
and a backtracking isomorphism search with degree-pair pruning.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence

import numpy as np

from .errors import MalformedLine, OutOfRange, SelfLoop, TooLarge
from .textio import (
    is_blank,
    is_comment,
    parse_int_tokens,
    read_header_int,
    split_records,
)

ENUMERATION_LIMIT = 5


@dataclass(frozen=True)
class Bijection:
    """A permutation of {0, ..., n-1} stored in one-line notation."""

    map: tuple[int, ...]

    def __post_init__(self) -> None:
        as_tuple = tuple(int(x) for x in self.map)
        object.__setattr__(self, "map", as_tuple)
        n = len(as_tuple)
        if sorted(as_tuple) != list(range(n)):
            raise OutOfRange(f"map {as_tuple} is not a permutation of 0..{n - 1}")

    @classmethod
    def identity(cls, n: int) -> "Bijection":
        return cls(tuple(range(n)))

    @property
    def domain_size(self) -> int:
        return len(self.map)

    def __call__(self, x: int) -> int:
        return self.map[x]

    def inverse(self) -> "Bijection":
        inv = [0] * len(self.map)
        for x, y in enumerate(self.map):
            inv[y] = x
        return Bijection(tuple(inv))

    def then(self, other: "Bijection") -> "Bijection":
        """Apply self first, then other."""
        if other.domain_size != self.domain_size:
            raise OutOfRange("cannot compose bijections of different sizes")
        return Bijection(tuple(other.map[y] for y in self.map))


class Digraph:
    """An immutable irreflexive digraph; adj[u][v] means an edge u -> v."""

    def __init__(self, n: int, edges: Sequence[tuple[int, int]] = (), adj=None) -> None:
        if n < 1:
            raise OutOfRange("a digraph needs at least one vertex")
        if adj is not None:
            matrix = np.array(adj, dtype=bool)
            if matrix.shape != (n, n):
                raise OutOfRange(f"adjacency must be {n} by {n}, got {matrix.shape}")
            diag = np.flatnonzero(np.diagonal(matrix))
            if diag.size:
                raise SelfLoop(int(diag[0]))
        else:
            matrix = np.zeros((n, n), dtype=bool)
            for u, v in edges:
                if not (0 <= u < n and 0 <= v < n):
                    raise OutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
                if u == v:
                    raise SelfLoop(u)
                matrix[u, v] = True
        matrix.setflags(write=False)
        self.n = n
        self.adj = matrix
        self._hash: int | None = None

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def edges(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in np.argwhere(self.adj)]

    def out_degrees(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.adj.sum(axis=1))

    def in_degrees(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.adj.sum(axis=0))

    def relabel(self, mapping: "Bijection | Sequence[int]") -> "Digraph":
        """The digraph with vertex u renamed to mapping(u)."""
        if not isinstance(mapping, Bijection):
            mapping = Bijection(tuple(mapping))
        if mapping.domain_size != self.n:
            raise OutOfRange("relabeling must cover every vertex exactly once")
        perm = np.array(mapping.map, dtype=np.int64)
        out = np.zeros_like(self.adj)
        out[np.ix_(perm, perm)] = self.adj
        return Digraph(self.n, adj=out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.adj, other.adj))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.adj.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, edges={self.edges()})"

    def to_edge_list(self) -> str:
        lines = [str(self.n)]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text: str) -> "Digraph":
        return parse_edge_list(text)


def parse_edge_list(text: str) -> Digraph:
    """Parse the edge-list format: a vertex count line, then one 'u v'
    line per edge.  Comments and blank lines are skipped."""
    lines = text.splitlines()
    n, i = read_header_int(lines, 0)
    if n < 1:
        raise MalformedLine(i, lines[i - 1] if lines else "", "vertex count must be at least 1")
    edges = []
    for j in range(i, len(lines)):
        line = lines[j]
        if is_comment(line) or is_blank(line):
            continue
        values = parse_int_tokens(line, j + 1)
        if len(values) != 2:
            raise MalformedLine(j + 1, line, "expected two integers per edge line")
        u, v = values
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRange(f"line {j + 1}: edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(u)
        edges.append((u, v))
    return Digraph(n, edges)


def digraphs_to_catalog(graphs: Sequence[Digraph]) -> str:
    """Serialize graphs as blank-line separated edge-list records."""
    return "\n".join(g.to_edge_list() for g in graphs)


def parse_digraph_catalog(text: str) -> list[Digraph]:
    return [parse_edge_list(record) for record in split_records(text)]


def _positions(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(n) if u != v]


def pattern_of(graph: Digraph) -> int:
    """Pack the off-diagonal adjacency bits, row-major, first position
    most significant, into one integer.  Used as a compact graph id."""
    bits = 0
    for u, v in _positions(graph.n):
        bits = (bits << 1) | int(graph.adj[u, v])
    return bits


def digraph_from_pattern(n: int, pattern: int) -> Digraph:
    positions = _positions(n)
    k = len(positions)
    if not 0 <= pattern < (1 << k):
        raise OutOfRange(f"pattern {pattern} outside 0..{(1 << k) - 1} for n={n}")
    adj = np.zeros((n, n), dtype=bool)
    for j, (u, v) in enumerate(positions):
        adj[u, v] = bool((pattern >> (k - 1 - j)) & 1)
    return Digraph(n, adj=adj)


def _canonical_patterns(n: int) -> list[int]:
    """Patterns that are minimal within their relabeling class."""
    positions = _positions(n)
    k = len(positions)
    pos_index = {p: j for j, p in enumerate(positions)}
    shifts = np.array([k - 1 - j for j in range(k)], dtype=np.int64)
    weights = np.int64(1) << shifts
    sources = []
    for perm in permutations(range(n)):
        if perm == tuple(range(n)):
            continue
        inv = [0] * n
        for x, y in enumerate(perm):
            inv[y] = x
        sources.append(np.array([pos_index[(inv[u], inv[v])] for u, v in positions], dtype=np.int64))
    out: list[int] = []
    total = 1 << k
    chunk = 1 << 16
    for lo in range(0, total, chunk):
        pats = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        bits = (pats[:, None] >> shifts[None, :]) & 1
        best = pats.copy()
        for src in sources:
            np.minimum(best, bits[:, src] @ weights, out=best)
        out.extend(int(p) for p in pats[best == pats])
    return out


def enumerate_digraphs(n: int, dedupe: bool = False) -> Iterator[Digraph]:
    """Yield every labeled digraph on n vertices in increasing pattern
    order, or one representative per isomorphism class when dedupe is
    set.  Limited to n <= 5."""
    if n > ENUMERATION_LIMIT:
        raise TooLarge(f"enumeration supported only for n <= {ENUMERATION_LIMIT}")
    if n < 1:
        raise OutOfRange("enumeration needs at least one vertex")
    if dedupe:
        for pattern in _canonical_patterns(n):
            yield digraph_from_pattern(n, pattern)
        return
    positions = _positions(n)
    for assignment in product((False, True), repeat=len(positions)):
        adj = np.zeros((n, n), dtype=bool)
        for (u, v), present in zip(positions, assignment):
            adj[u, v] = present
        yield Digraph(n, adj=adj)


def random_digraph(n: int, p: float, seed: int) -> Digraph:
    """Each ordered non-diagonal pair independently gets an edge with
    probability p, driven by a seeded generator for reproducibility."""
    if n < 1:
        raise OutOfRange("a digraph needs at least one vertex")
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"edge probability {p} outside [0, 1]")
    rng = random.Random(seed)
    adj = np.zeros((n, n), dtype=bool)
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                adj[u, v] = True
    return Digraph(n, adj=adj)


def is_graph_isomorphism(g: Digraph, h: Digraph, f: "Bijection | Sequence[int]") -> bool:
    """True iff f is a bijection mapping g onto h preserving edges in
    both directions.  Size mismatches and non-bijections yield False."""
    fmap = f.map if isinstance(f, Bijection) else tuple(int(x) for x in f)
    if g.n != h.n or len(fmap) != g.n or sorted(fmap) != list(range(g.n)):
        return False
    perm = np.array(fmap, dtype=np.int64)
    return bool(np.array_equal(h.adj[np.ix_(perm, perm)], g.adj))


def find_graph_isomorphism(g: Digraph, h: Digraph) -> Bijection | None:
    """Backtracking search for an isomorphism from g to h.

    Vertices are assigned in ascending order; candidates must match on
    the (out-degree, in-degree) pair and on adjacency with everything
    already assigned.  Returns the lexicographically least isomorphism
    in one-line notation, or None.
    """
    if g.n != h.n:
        return None
    n = g.n
    deg_g = list(zip(g.out_degrees(), g.in_degrees()))
    deg_h = list(zip(h.out_degrees(), h.in_degrees()))
    if sorted(deg_g) != sorted(deg_h):
        return None
    adj_g = g.adj.tolist()
    adj_h = h.adj.tolist()
    assign = [-1] * n
    used = [False] * n

    def backtrack(u: int) -> bool:
        if u == n:
            return True
        for v in range(n):
            if used[v] or deg_g[u] != deg_h[v]:
                continue
            ok = True
            for w in range(u):
                x = assign[w]
                if adj_g[u][w] != adj_h[v][x] or adj_g[w][u] != adj_h[x][v]:
                    ok = False
                    break
            if ok:
                assign[u] = v
                used[v] = True
                if backtrack(u + 1):
                    return True
                assign[u] = -1
                used[v] = False
        return False

    if backtrack(0):
        return Bijection(tuple(assign))
    return None
