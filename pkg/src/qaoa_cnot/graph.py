"""Undirected simple graphs, edge-list I/O and seeded Erdős–Rényi sampling.

Vertices are labeled ``0..n-1`` and every edge is stored as ``(u, v)`` with
``u < v``.  Edge order is meaningful: downstream passes iterate edges in the
order they were given, so it is preserved exactly (after normalizing each
pair).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]


class GraphError(ValueError):
    """Base class for malformed graph input."""


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class InvalidProbability(GraphError):
    pass


class AttemptsExhausted(RuntimeError):
    """No connected sample was drawn within the attempt budget."""


class ParseError(GraphError):
    def __init__(self, lineno: int, msg: str) -> None:
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    weights: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        norm: list[Edge] = []
        seen: set[Edge] = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise SelfLoop(f"self-loop on vertex {u}")
            if u > v:
                u, v = v, u
            if u < 0 or v >= self.n:
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            if (u, v) in seen:
                raise DuplicateEdge(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            norm.append((u, v))
        object.__setattr__(self, "edges", tuple(norm))
        if not self.weights:
            object.__setattr__(self, "weights", (1.0,) * len(norm))
        elif len(self.weights) != len(norm):
            raise GraphError("weights must have one entry per edge")
        else:
            object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def weighted(self) -> bool:
        return any(w != 1.0 for w in self.weights)

    def weight(self, u: int, v: int) -> float:
        key = (u, v) if u < v else (v, u)
        return self.weights[self.edges.index(key)]

    def adjacency(self) -> list[list[int]]:
        """Neighbor lists in ascending vertex order."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def subgraph_without(self, removed: Iterable[Edge]) -> "Graph":
        """Same vertex set, minus the given edges (orientation ignored)."""
        drop = {(min(e), max(e)) for e in removed}
        kept = [(e, w) for e, w in zip(self.edges, self.weights) if e not in drop]
        return Graph(self.n, tuple(e for e, _ in kept), tuple(w for _, w in kept))


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    max_degree: int
    degrees: tuple[int, ...] = field(default=())


def stats(g: Graph) -> GraphStats:
    deg = g.degrees()
    return GraphStats(g.n, g.m, max(deg, default=0), tuple(deg))


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    adj = g.adjacency()
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                queue.append(v)
    return count == g.n


# -- named families ---------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def star_graph(n: int) -> Graph:
    """Star on ``n`` vertices with center 0."""
    return Graph(n, tuple((0, i) for i in range(1, n)))


# -- random generation ------------------------------------------------------

def erdos_renyi(n: int, p_edge: float, seed: int, max_attempts: int = 10_000) -> Graph:
    """Sample G(n, p_edge) conditioned on connectivity.

    Pairs ``(u, v)``, ``u < v`` are visited in lexicographic order and each
    consumes exactly one double from a PCG64 stream seeded with ``seed``.  A
    disconnected sample is discarded and the next sample continues the same
    stream, so the result is a pure function of ``(n, p_edge, seed)``.
    """
    if n < 2:
        raise GraphError(f"need at least 2 vertices, got {n}")
    if not 0.0 <= p_edge <= 1.0:
        raise InvalidProbability(f"p_edge must lie in [0, 1], got {p_edge}")
    rng = np.random.Generator(np.random.PCG64(seed))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for _ in range(max_attempts):
        draws = rng.random(len(pairs))
        g = Graph(n, tuple(pr for pr, x in zip(pairs, draws) if x < p_edge))
        if is_connected(g):
            return g
    raise AttemptsExhausted(
        f"no connected G({n}, {p_edge}) sample within {max_attempts} attempts (seed={seed})"
    )


# -- edge-list text format --------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: a vertex count line, then ``u v [w]`` lines.

    ``#`` starts a comment; blank lines are ignored.
    """
    n: int | None = None
    edges: list[Edge] = []
    weights: list[float] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise ParseError(lineno, f"expected vertex count, got {line!r}")
            try:
                n = int(parts[0])
            except ValueError:
                raise ParseError(lineno, f"bad vertex count {parts[0]!r}") from None
            if n < 0:
                raise ParseError(lineno, "vertex count must be non-negative")
            continue
        if len(parts) not in (2, 3):
            raise ParseError(lineno, f"expected 'u v [w]', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise ParseError(lineno, f"bad edge line {line!r}") from None
        if u == v:
            raise SelfLoop(f"line {lineno}: self-loop on vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, f"vertex out of range in {line!r}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        edges.append(key)
        weights.append(w)
    if n is None:
        raise ParseError(1, "empty document")
    return Graph(n, tuple(edges), tuple(weights))


def serialize_graph(g: Graph) -> str:
    lines = [str(g.n)]
    for (u, v), w in zip(g.edges, g.weights):
        lines.append(f"{u} {v}" if w == 1.0 else f"{u} {v} {w!r}")
    return "\n".join(lines) + "\n"

