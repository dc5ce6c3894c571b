"""Keis from digraphs, and recovering the digraph from the kei.

The encoding doubles each vertex v into a twin pair (v, 0), (v, 1),
flattened to elements 2v and 2v+1.  The operation is

  (u, i) * (v, j) = (v, j)      if u = v or there is an edge u -> v,
  (u, i) * (v, j) = (v, 1-j)    otherwise,

which is a kei for every irreflexive digraph.  More generally, any
fixed-point-free involution tau together with a compatible membership
family phi (a "replete" family: a is in phi(a), and phi respects tau in
both coordinates) defines a quandle by  a*b = b if phi[a][b] else
tau(b); the encoding above is the special case tau = twin swap,
phi = adjacency-or-equality.  Tables of that shape are called folded
here, and detect_folded inverts the construction up to the choice of
pairing on elements that everything fixes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    InternalContradiction,
    InvalidWitness,
    MalformedLine,
    NotAKei,
    NotBijective,
    NotReplete,
    OutOfRange,
    WitnessMismatch,
)
from .digraph import Bijection, Digraph
from .magma import Magma, classify
from .textio import read_header_int, read_row_block, require_only_trailing_junk

ENCODE_CACHE_SIZE = 8192


def _validate_tau(n: int, tau: Sequence[int]) -> tuple[int, ...]:
    tau_t = tuple(int(x) for x in tau)
    if len(tau_t) != n or sorted(tau_t) != list(range(n)):
        raise NotBijective(f"tau {tau_t} is not a permutation of 0..{n - 1}")
    return tau_t


def _validate_replete(n: int, tau: tuple[int, ...], phi: np.ndarray) -> None:
    """Raise NotReplete at the least offending (a, b).

    Conditions, in scan order: every a lies in its own neighborhood;
    then row-major over (a, b), membership is invariant under tau on
    either coordinate.
    """
    if phi.shape != (n, n):
        raise OutOfRange(f"phi must be {n} by {n}, got {phi.shape}")
    diag_bad = np.flatnonzero(~np.diagonal(phi))
    if diag_bad.size:
        a = int(diag_bad[0])
        raise NotReplete(a, a, "element not in its own neighborhood")
    tau_arr = np.array(tau, dtype=np.int64)
    violations = (phi != phi[tau_arr, :]) | (phi != phi[:, tau_arr])
    bad = np.argwhere(violations)
    if bad.size:
        a, b = (int(x) for x in bad[0])
        raise NotReplete(a, b, "membership not invariant under tau")


def derive_dynamical_quandle(n: int, tau: Sequence[int], phi) -> Magma:
    """Build the table a*b = b if phi[a][b] else tau[b].

    tau must be a permutation (NotBijective otherwise) and phi must be
    replete for tau (NotReplete otherwise).  The result is always a
    quandle; it is a kei exactly when tau is an involution on the
    elements it moves.
    """
    tau_t = _validate_tau(n, tau)
    phi_arr = np.array(phi, dtype=bool)
    _validate_replete(n, tau_t, phi_arr)
    idx = np.arange(n, dtype=np.int64)
    tau_arr = np.array(tau_t, dtype=np.int64)
    table = np.where(phi_arr, idx[None, :], tau_arr[None, :])
    return Magma(table)


class FoldedWitness:
    """A pairing tau and membership family phi exhibiting a table as
    folded.  Valid witnesses always have tau a fixed-point-free
    involution and phi replete for it."""

    def __init__(self, tau: Sequence[int], phi) -> None:
        phi_arr = np.array(phi, dtype=bool)
        n = len(phi_arr)
        tau_t = _validate_tau(n, tau)
        for a in range(n):
            if tau_t[a] == a:
                raise InvalidWitness(f"tau fixes {a}, but every element must be paired")
            if tau_t[tau_t[a]] != a:
                raise InvalidWitness(f"tau is not an involution at {a}")
        _validate_replete(n, tau_t, phi_arr)
        self.n = n
        self.tau = tau_t
        self.phi = tuple(tuple(bool(x) for x in row) for row in phi_arr)

    def phi_array(self) -> np.ndarray:
        return np.array(self.phi, dtype=bool)

    def to_magma(self) -> Magma:
        return derive_dynamical_quandle(self.n, self.tau, self.phi)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FoldedWitness):
            return NotImplemented
        return self.tau == other.tau and self.phi == other.phi

    def __hash__(self) -> int:
        return hash((self.tau, self.phi))

    def __repr__(self) -> str:
        return f"FoldedWitness(n={self.n}, tau={self.tau})"

    def to_text(self) -> str:
        lines = [str(self.n), " ".join(str(x) for x in self.tau)]
        lines.extend("".join("1" if x else "0" for x in row) for row in self.phi)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FoldedWitness":
        lines = text.splitlines()
        n, i = read_header_int(lines, 0)
        if n < 1:
            raise MalformedLine(i, lines[i - 1] if lines else "", "size must be at least 1")
        tau_rows, i = read_row_block(lines, i, 1, n)
        phi_rows, i = _read_bit_block(lines, i, n)
        require_only_trailing_junk(lines, i)
        return cls(tau_rows[0], phi_rows)


def _read_bit_block(lines: list[str], start: int, n: int) -> tuple[list[list[bool]], int]:
    """Read n rows of n 0/1 digits, packed ("0110") or space separated."""
    rows: list[list[bool]] = []
    i = start
    while len(rows) < n:
        if i >= len(lines):
            raise MalformedLine(i + 1, "", f"expected {n} membership rows, got {len(rows)}")
        line = lines[i]
        stripped = line.strip()
        if stripped.startswith("#"):
            i += 1
            continue
        if not stripped:
            raise MalformedLine(i + 1, line, "blank line inside membership block")
        tokens = stripped.split()
        digits = tokens if len(tokens) > 1 else list(tokens[0])
        if len(digits) != n or any(d not in ("0", "1") for d in digits):
            raise MalformedLine(i + 1, line, f"expected {n} binary digits")
        rows.append([d == "1" for d in digits])
        i += 1
    return rows, i


@dataclass(frozen=True)
class EncodedKei:
    """A digraph together with the kei built on its twin pairs."""

    graph: Digraph
    magma: Magma

    def to_text(self) -> str:
        header = (
            f"# kei of a digraph with n_vertices={self.graph.n}; "
            "element 2*v+i encodes vertex v at level i"
        )
        return header + "\n" + self.magma.to_text()


@lru_cache(maxsize=ENCODE_CACHE_SIZE)
def encode_kei(graph: Digraph) -> EncodedKei:
    """The kei of a digraph, on carrier {0, ..., 2n-1} with (v, i)
    stored at index 2v+i."""
    n2 = 2 * graph.n
    tau = tuple(x ^ 1 for x in range(n2))
    base = graph.adj | np.eye(graph.n, dtype=bool)
    phi = np.repeat(np.repeat(base, 2, axis=0), 2, axis=1)
    magma = derive_dynamical_quandle(n2, tau, phi)
    return EncodedKei(graph=graph, magma=magma)


def twin_involution(graph: Digraph, keep: Sequence[int]) -> Bijection:
    """The kei automorphism of encode_kei(graph) that swaps the two
    levels of every vertex outside keep and fixes the rest."""
    keep_set = set(int(v) for v in keep)
    for v in keep_set:
        if not 0 <= v < graph.n:
            raise OutOfRange(f"vertex {v} outside 0..{graph.n - 1}")
    mapping = tuple(x if x // 2 in keep_set else x ^ 1 for x in range(2 * graph.n))
    return Bijection(mapping)


def apex_extension(graph: Digraph, subset: Sequence[int]) -> Digraph:
    """Add one new vertex (numbered n) with edges only from it into
    subset.  Left multiplication by element 2n in the extended kei,
    restricted to old elements, realizes twin_involution(graph, subset).
    """
    subset_set = set(int(v) for v in subset)
    for v in subset_set:
        if not 0 <= v < graph.n:
            raise OutOfRange(f"vertex {v} outside 0..{graph.n - 1}")
    n = graph.n
    adj = np.zeros((n + 1, n + 1), dtype=bool)
    adj[:n, :n] = graph.adj
    for v in subset_set:
        adj[n, v] = True
    return Digraph(n + 1, adj=adj)


def detect_folded_all(m: Magma) -> Iterator[FoldedWitness]:
    """Yield every witness exhibiting m as folded, in a fixed order.

    Raises NotAKei when m is not a kei.  For a folded table, phi is
    forced cell by cell (phi[a][b] iff a*b = b) and tau is forced on
    every element that something moves; only the pairing among elements
    fixed by everything is free, and those pairings are enumerated by
    backtracking in increasing element order.
    """
    if not classify(m).is_kei:
        raise NotAKei("only keis can be folded")
    n = m.n
    if n % 2 == 1:
        return
    rows = m.rows()
    moved: list[list[int]] = []
    for b in range(n):
        images = {rows[a][b] for a in range(n)}
        images.discard(b)
        moved.append(sorted(images))
    if any(len(s) > 1 for s in moved):
        return
    tau = [-1] * n
    for b in range(n):
        if moved[b]:
            tau[b] = moved[b][0]
    for b in range(n):
        if tau[b] != -1 and tau[tau[b]] != b:
            return
    row_fix = [tuple(rows[a][b] == b for b in range(n)) for a in range(n)]
    col_fix = [tuple(rows[a][b] == b for a in range(n)) for b in range(n)]
    for b in range(n):
        c = tau[b]
        if c != -1 and (row_fix[b] != row_fix[c] or col_fix[b] != col_fix[c]):
            return
    phi = [[rows[a][b] == b for b in range(n)] for a in range(n)]
    free = [b for b in range(n) if tau[b] == -1]

    def pairings(remaining: list[int]) -> Iterator[None]:
        if not remaining:
            yield None
            return
        a = remaining[0]
        for j in range(1, len(remaining)):
            b = remaining[j]
            if row_fix[a] != row_fix[b] or col_fix[a] != col_fix[b]:
                continue
            tau[a], tau[b] = b, a
            yield from pairings(remaining[1:j] + remaining[j + 1:])
            tau[a] = tau[b] = -1

    for _ in pairings(free):
        witness = FoldedWitness(tuple(tau), phi)
        if witness.to_magma() != m:
            raise InternalContradiction("detected witness does not reproduce the table")
        yield witness


def detect_folded(m: Magma) -> FoldedWitness | None:
    """First witness from detect_folded_all, or None."""
    for witness in detect_folded_all(m):
        return witness
    return None


def decode_graph(m: Magma, witness: FoldedWitness) -> tuple[Digraph, Bijection]:
    """Recover a digraph from a folded kei and a witness for it.

    Vertices are the tau pairs, represented by their smaller element in
    increasing order; u -> v is an edge when the representative of u
    lies in phi of the representative of v and u != v.  Also returns
    the isomorphism from encode_kei(graph).magma onto m that sends
    2u to the representative of u and 2u+1 to its partner.

    Raises WitnessMismatch when the witness does not rebuild m exactly.
    """
    if witness.n != m.n or witness.to_magma() != m:
        raise WitnessMismatch("witness does not reproduce the given table")
    reps = [a for a in range(m.n) if a < witness.tau[a]]
    k = m.n // 2
    adj = np.zeros((k, k), dtype=bool)
    for u in range(k):
        for v in range(k):
            if u != v:
                adj[u, v] = witness.phi[reps[u]][reps[v]]
    graph = Digraph(k, adj=adj)
    mapping = [0] * m.n
    for u in range(k):
        mapping[2 * u] = reps[u]
        mapping[2 * u + 1] = witness.tau[reps[u]]
    return graph, Bijection(tuple(mapping))
