"""CNOT-reduction passes for the Max-Cut cost layer.

An edge gadget ``CNOT(c,t) RZ(t) CNOT(c,t)`` may drop its first CNOT when
the target qubit has not been touched by any earlier gadget of the layer:
on a uniform superposition whose phase does not depend on ``t`` the leading
CNOT only permutes amplitudes of equal value.  The two passes here pick
schedules that make many edges satisfy that condition:

* :func:`misra_gries_color` / :func:`color_classes` -- the largest color
  class is a matching, so all its edges go first and are all optimizable.
* :func:`dfs_plan` -- DFS tree edges in discovery order, parent as control,
  child as target; every child is fresh when its edge runs, giving ``n - 1``
  optimized edges, which :func:`max_optimizable_bruteforce` confirms is the
  ceiling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .graph import Edge, Graph, is_connected, stats


class Disconnected(ValueError):
    pass


class EdgeMismatch(ValueError):
    pass


class TooLarge(ValueError):
    pass


class ScheduledEdge(NamedTuple):
    control: int
    target: int
    optimized: bool = False

    @property
    def edge(self) -> Edge:
        return (min(self.control, self.target), max(self.control, self.target))


Schedule = Sequence[ScheduledEdge]


# -- Misra-Gries edge coloring ---------------------------------------------

@dataclass(frozen=True)
class EdgeColoring:
    color_of: dict[Edge, int]
    num_colors: int

    def to_json(self) -> str:
        colors = {f"{u}-{v}": c for (u, v), c in self.color_of.items()}
        return json.dumps({"colors": colors, "num_colors": self.num_colors}, indent=2)


class _Coloring:
    """Mutable coloring state: at each vertex, color -> neighbor."""

    def __init__(self, n: int, palette: int) -> None:
        self.palette = palette
        self.at: list[dict[int, int]] = [{} for _ in range(n)]
        self.color: dict[Edge, int] = {}

    def get(self, u: int, v: int) -> int | None:
        return self.color.get((u, v) if u < v else (v, u))

    def set(self, u: int, v: int, c: int | None) -> None:
        key = (u, v) if u < v else (v, u)
        old = self.color.pop(key, None)
        if old is not None:
            del self.at[u][old]
            del self.at[v][old]
        if c is not None:
            assert c not in self.at[u] and c not in self.at[v], "color clash"
            self.color[key] = c
            self.at[u][c] = v
            self.at[v][c] = u

    def is_free(self, u: int, c: int) -> bool:
        return c not in self.at[u]

    def lowest_free(self, u: int) -> int:
        for c in range(self.palette):
            if c not in self.at[u]:
                return c
        raise AssertionError(f"no free color at vertex {u}")


def _is_fan(col: _Coloring, x: int, fan: Sequence[int]) -> bool:
    for prev, cur in zip(fan, fan[1:]):
        c = col.get(x, cur)
        if c is None or not col.is_free(prev, c):
            return False
    return True


def misra_gries_color(g: Graph) -> EdgeColoring:
    """Proper edge coloring with at most ``max_degree + 1`` colors.

    Edges are colored in input order.  Ties are broken toward the lowest
    index: the fan grows by the smallest eligible neighbor and free colors
    are the smallest available.
    """
    delta = stats(g).max_degree
    col = _Coloring(g.n, delta + 1)
    adj = g.adjacency()

    for x, f in g.edges:
        # a color free at both ends is the one-vertex fan with an empty cd-path
        common = next((c for c in range(col.palette) if col.is_free(x, c) and col.is_free(f, c)), None)
        if common is not None:
            col.set(x, f, common)
            continue

        # maximal fan of x starting at f
        fan = [f]
        in_fan = {f}
        grown = True
        while grown:
            grown = False
            last = fan[-1]
            for y in adj[x]:
                if y in in_fan:
                    continue
                c_xy = col.get(x, y)
                if c_xy is not None and col.is_free(last, c_xy):
                    fan.append(y)
                    in_fan.add(y)
                    grown = True
                    break

        c = col.lowest_free(x)
        d = col.lowest_free(fan[-1])

        # invert the cd-path that starts at x (its first edge has color d)
        path = []
        u, want = x, d
        while want in col.at[u]:
            v = col.at[u][want]
            path.append((u, v, want))
            u, want = v, (c if want == d else d)
        for u, v, _ in path:
            col.set(u, v, None)
        for u, v, old in path:
            col.set(u, v, c if old == d else d)

        for i, w in enumerate(fan):
            if col.is_free(w, d) and _is_fan(col, x, fan[: i + 1]):
                break
        else:
            raise AssertionError("Misra-Gries: no rotatable fan prefix")
        # rotate fan[0..i]: each edge takes the color of its successor
        shifted = [col.get(x, fan[j + 1]) for j in range(i)]
        for j in range(i + 1):
            col.set(x, fan[j], None)
        for j in range(i):
            col.set(x, fan[j], shifted[j])
        col.set(x, fan[i], d)

    used = set(col.color.values())
    return EdgeColoring(dict(col.color), len(used) and max(used) + 1)


def is_proper(g: Graph, coloring: EdgeColoring) -> bool:
    if set(coloring.color_of) != set(g.edges):
        return False
    seen: set[tuple[int, int]] = set()
    for (u, v), c in coloring.color_of.items():
        if not 0 <= c < coloring.num_colors:
            return False
        for end in (u, v):
            if (end, c) in seen:
                return False
            seen.add((end, c))
    return True


@dataclass(frozen=True)
class ColorClasses:
    classes: tuple[tuple[Edge, ...], ...]

    @property
    def s_max(self) -> tuple[Edge, ...]:
        return self.classes[0] if self.classes else ()


def color_classes(g: Graph, col: EdgeColoring) -> ColorClasses:
    """Color classes, largest first; equal sizes keep color-index order.

    Edges inside a class keep the graph's input order.
    """
    buckets: dict[int, list[Edge]] = {}
    for e in g.edges:
        buckets.setdefault(col.color_of[e], []).append(e)
    ordered = sorted(buckets.items(), key=lambda kv: (-len(kv[1]), kv[0]))
    return ColorClasses(tuple(tuple(edges) for _, edges in ordered))


# -- DFS plan ---------------------------------------------------------------

@dataclass(frozen=True)
class DfsPlan:
    root: int
    tree_edges: tuple[Edge, ...]  # (parent, child), discovery order
    non_tree_edges: tuple[tuple[Edge, ...], ...] = field(default=())

    def to_json(self) -> str:
        return json.dumps(
            {
                "root": self.root,
                "tree": [list(e) for e in self.tree_edges],
                "residual_layers": [[list(e) for e in layer] for layer in self.non_tree_edges],
            },
            indent=2,
        )


def dfs_tree(g: Graph, root: int = 0) -> list[Edge]:
    """Tree edges of a recursive-order DFS, neighbors in ascending order."""
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} outside [0, {g.n})")
    adj = g.adjacency()
    seen = [False] * g.n
    seen[root] = True
    tree: list[Edge] = []
    stack = [(root, iter(adj[root]))]
    while stack:
        parent, nbrs = stack[-1]
        for v in nbrs:
            if not seen[v]:
                seen[v] = True
                tree.append((parent, v))
                stack.append((v, iter(adj[v])))
                break
        else:
            stack.pop()
    return tree


def dfs_plan(g: Graph, root: int = 0) -> DfsPlan:
    if not is_connected(g):
        raise Disconnected("DFS plan needs a connected graph")
    tree = dfs_tree(g, root)
    residual = g.subgraph_without(tree)
    groups = color_classes(residual, misra_gries_color(residual)).classes
    return DfsPlan(root, tuple(tree), groups)


# -- optimizability ----------------------------------------------------------

def _check_cover(g: Graph, schedule: Schedule) -> None:
    got = [op.edge for op in schedule]
    if len(got) != len(set(got)) or set(got) != set(g.edges):
        raise EdgeMismatch("schedule must cover every graph edge exactly once")


def verify_schedule(g: Graph, schedule: Schedule) -> bool:
    """True iff every edge flagged optimized has a fresh target at its turn.

    A vertex becomes non-fresh once any earlier gadget touched it (as
    control or target).  Reusing a control is always allowed.
    """
    _check_cover(g, schedule)
    touched: set[int] = set()
    for op in schedule:
        if op.optimized and op.target in touched:
            return False
        touched.add(op.control)
        touched.add(op.target)
    return True


def optimizable_flags(schedule: Schedule) -> list[bool]:
    """For each position, whether some orientation has a fresh target there."""
    touched: set[int] = set()
    flags = []
    for op in schedule:
        flags.append(op.control not in touched or op.target not in touched)
        touched.update((op.control, op.target))
    return flags


def opportunistic_extra(schedule: Schedule) -> int:
    """Unflagged edges that could also be optimized (after a possible flip)."""
    return sum(
        1 for op, ok in zip(schedule, optimizable_flags(schedule)) if ok and not op.optimized
    )


def max_optimizable_bruteforce(g: Graph) -> int:
    """Most edges any order/orientation can optimize in one cost layer.

    Exhaustive over all edge orders via dynamic programming on the set of
    already-applied edges: the set of touched vertices depends only on that
    set, not on its order, so ``best[S] = max_e best[S - e] + fresh(e, S - e)``
    visits every schedule's value.  Limited to ``n <= 8`` and ``m <= 8``.
    """
    if g.n > 8 or g.m > 8:
        raise TooLarge(f"exhaustive domain is n <= 8, m <= 8 (got n={g.n}, m={g.m})")
    m = g.m
    ends = [(1 << u) | (1 << v) for u, v in g.edges]
    support = [0] * (1 << m)
    best = [0] * (1 << m)
    for s in range(1, 1 << m):
        low = (s & -s).bit_length() - 1
        support[s] = support[s & (s - 1)] | ends[low]
        top = 0
        rest = s
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            prev = s & ~(1 << i)
            fresh = (ends[i] & ~support[prev]) != 0
            val = best[prev] + fresh
            if val > top:
                top = val
        best[s] = top
    return best[(1 << m) - 1]
