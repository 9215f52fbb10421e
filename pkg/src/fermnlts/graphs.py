"""Simple graphs, cycle bases, Horton's minimum cycle basis and stack-and-sew localization."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from . import _kernels
from .errors import BasisError, ConnectivityError, DimensionError, OperatorIndexError


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..n_vertices``."""

    n_vertices: int
    edges: frozenset = frozenset()
    _adj: dict = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_vertices < 1:
            raise DimensionError("a graph needs at least one vertex")
        es = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            for w in (u, v):
                if not 1 <= w <= self.n_vertices:
                    raise OperatorIndexError(f"vertex {w} out of range 1..{self.n_vertices}")
            es.add(_edge(u, v))
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n_vertices + 1)}
        for u, v in es:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        object.__setattr__(self, "edges", frozenset(es))
        object.__setattr__(self, "_adj", {v: tuple(a) for v, a in adj.items()})
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(sorted(es))})

    @property
    def vertices(self) -> range:
        return range(1, self.n_vertices + 1)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def edge_index(self, u: int, v: int) -> int:
        """0-based position of the edge in :meth:`sorted_edges`."""
        try:
            return self._index[_edge(u, v)]
        except KeyError:
            raise BasisError(f"({u}, {v}) is not an edge") from None

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self._index

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj.values()), default=0)

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = []
            queue = deque([s])
            seen.add(s)
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def cycle_space_dim(self) -> int:
        return self.n_edges - self.n_vertices + len(self.components())

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n_vertices, self.edges | {_edge(u, v) for u, v in extra})


def _cycle_edges(cycle: Sequence[int]) -> list[tuple[int, int]]:
    m = len(cycle)
    return [_edge(cycle[i], cycle[(i + 1) % m]) for i in range(m)]


@dataclass(frozen=True)
class CycleBasis:
    """Cycles given as closed vertex sequences (the last vertex joins the first)."""

    graph: Graph
    cycles: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(tuple(int(v) for v in c) for c in self.cycles))

    def __len__(self):
        return len(self.cycles)

    def edge_sets(self) -> list[list[tuple[int, int]]]:
        return [_cycle_edges(c) for c in self.cycles]

    def edge_vectors(self) -> list[int]:
        """GF(2) indicator vectors over :meth:`Graph.sorted_edges`; raises on non-edges."""
        out = []
        for c in self.cycles:
            v = 0
            for e in _cycle_edges(c):
                v ^= 1 << self.graph.edge_index(*e)
            out.append(v)
        return out

    def total_length(self) -> int:
        return sum(len(c) for c in self.cycles)


def is_simple_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        return False
    return all(g.has_edge(*e) for e in _cycle_edges(cycle))


def gf2_rank(vectors: Sequence[int], n_bits: int) -> int:
    return sum(_kernels.gf2_independent_flags(list(vectors), n_bits))


def check_basis(g: Graph, b: CycleBasis) -> None:
    """Raise :class:`BasisError` unless ``b`` is a basis of simple cycles of ``g``."""
    if b.graph != g:
        raise BasisError("cycle basis belongs to a different graph")
    for c in b.cycles:
        if not is_simple_cycle(g, c):
            raise BasisError(f"{list(c)} is not a simple cycle of the graph")
    vecs = b.edge_vectors()
    if len(vecs) != g.cycle_space_dim():
        raise BasisError(f"{len(vecs)} cycles for a cycle space of dimension {g.cycle_space_dim()}")
    if gf2_rank(vecs, g.n_edges) != len(vecs):
        raise BasisError("cycles are linearly dependent over GF(2)")


# --------------------------------------------------------------------------
# Horton


def _bfs_tree(g: Graph, root: int) -> dict[int, int]:
    parent = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    return parent


def _path_to_root(parent: dict[int, int], v: int) -> list[int]:
    path = [v]
    while parent[path[-1]]:
        path.append(parent[path[-1]])
    return path


def horton_candidates(g: Graph) -> list[tuple[int, ...]]:
    """Simple cycles ``P(r,u) + (u,v) + P(v,r)`` from BFS trees, deduplicated and sorted."""
    seen: dict[int, tuple[int, ...]] = {}
    for r in g.vertices:
        parent = _bfs_tree(g, r)
        for u, v in g.sorted_edges():
            if u not in parent or parent[u] == v or parent[v] == u:
                continue
            pu, pv = _path_to_root(parent, u), _path_to_root(parent, v)
            if set(pu) & set(pv) != {r}:
                continue
            cycle = tuple(reversed(pu)) + tuple(pv[:-1])
            vec = 0
            for e in _cycle_edges(cycle):
                vec ^= 1 << g.edge_index(*e)
            seen.setdefault(vec, cycle)
    order = sorted(seen, key=lambda vec: (len(seen[vec]), vec))
    return [seen[vec] for vec in order]


def _canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Start at the smallest vertex, go towards its smaller neighbour on the cycle."""
    m = len(cycle)
    i = min(range(m), key=lambda k: cycle[k])
    fwd = tuple(cycle[(i + k) % m] for k in range(m))
    bwd = tuple(cycle[(i - k) % m] for k in range(m))
    return min(fwd, bwd, key=lambda c: c[1])


def horton_mcb(g: Graph) -> CycleBasis:
    """Minimum cycle basis by greedy GF(2) selection from sorted Horton candidates."""
    if not g.is_connected():
        raise ConnectivityError("horton_mcb needs a connected graph")
    dim = g.cycle_space_dim()
    if dim == 0:
        return CycleBasis(g, ())
    cands = horton_candidates(g)
    vecs = CycleBasis(g, cands).edge_vectors()
    flags = _kernels.gf2_independent_flags(vecs, g.n_edges, dim)
    chosen = [_canonical_cycle(c) for c, keep in zip(cands, flags) if keep]
    if len(chosen) != dim:
        raise BasisError("candidate set did not span the cycle space")
    return CycleBasis(g, tuple(chosen))


# --------------------------------------------------------------------------
# Stack and sew


def ladder_chords(cycle: Sequence[int]) -> tuple[list[tuple[int, int]], list[tuple[int, ...]]]:
    """Rungs ``(v2, vm), (v3, v_{m-1}), ...`` until every face has length <= 4.

    Returns the chords and the faces; the faces sum to ``cycle`` over GF(2).
    """
    v = list(cycle)
    m = len(v)
    if m <= 4:
        return [], [tuple(v)]
    chords = [(v[1], v[m - 1])]
    faces = [(v[0], v[1], v[m - 1])]
    i = 0
    # residual polygon after rung i is v[i+1 .. m-1-i], length m - 1 - 2i
    while m - 1 - 2 * i > 4:
        i += 1
        chords.append((v[i + 1], v[m - 1 - i]))
        faces.append((v[i], v[i + 1], v[m - 1 - i], v[m - i]))
    faces.append(tuple(v[i + 1 : m - i]))
    return chords, faces


def sew(cycle: Sequence[int], existing) -> tuple[list[tuple[int, int]], list[tuple[int, ...]]]:
    """Ladder-sew ``cycle`` starting from the first rotation whose chords are all new edges."""
    m = len(cycle)
    for s in range(m):
        rotated = list(cycle[s:]) + list(cycle[:s])
        chords, faces = ladder_chords(rotated)
        if not any(_edge(*c) in existing for c in chords):
            return chords, faces
    raise BasisError(f"every ladder sewing of {list(cycle)} collides with an existing edge")


class LocalizeResult(NamedTuple):
    graph: Graph
    basis: CycleBasis
    embedding: dict
    origin: dict
    chords: tuple


def _copy_assignment(basis: CycleBasis) -> list[list[int]]:
    """Which basis cycles are sewn in each copy.

    Copy 1 holds the embedding, so it only receives a cycle that needs no
    chords.  When no basis cycle is that short, copy 1 stays empty and the
    last copy takes two cycles.
    """
    k = len(basis)
    lengths = [len(c) for c in basis.cycles]
    short = [i for i in range(k) if lengths[i] <= 4]
    if short or k == 1:
        first = short[0] if short else 0
        rest = [i for i in range(k) if i != first]
        return [[first]] + [[i] for i in rest]
    slots: list[list[int]] = [[]] + [[i] for i in range(k - 1)]
    slots[-1].append(k - 1)
    return slots


def localize(g: Graph, basis: CycleBasis) -> LocalizeResult:
    """Stack ``|basis|`` copies of ``g``, join them vertically and sew one basis cycle per copy.

    Vertex ``v`` of copy ``t`` becomes ``(t - 1) * n + v``; ``g`` embeds as
    copy 1.  The new basis lists the vertical squares (copy index ascending)
    followed by the sewn faces.
    """
    if not g.is_connected():
        raise ConnectivityError("localize needs a connected graph")
    check_basis(g, basis)
    n, k = g.n_vertices, len(basis)
    ident = {v: v for v in g.vertices}
    if k == 0:
        return LocalizeResult(g, CycleBasis(g, ()), ident, {v: (v, 1) for v in g.vertices}, ())

    def at(v: int, t: int) -> int:
        return (t - 1) * n + v

    edges = set()
    for t in range(1, k + 1):
        edges |= {(at(u, t), at(v, t)) for u, v in g.edges}
    for t in range(1, k):
        edges |= {(at(v, t), at(v, t + 1)) for v in g.vertices}

    cycles: list[tuple[int, ...]] = []
    for t in range(1, k):
        for u, v in g.sorted_edges():
            cycles.append((at(u, t), at(v, t), at(v, t + 1), at(u, t + 1)))

    all_chords = []
    for t, members in enumerate(_copy_assignment(basis), start=1):
        for i in members:
            lifted = [at(v, t) for v in basis.cycles[i]]
            chords, faces = sew(lifted, edges)
            edges |= {_edge(*c) for c in chords}
            all_chords += [_edge(*c) for c in chords]
            cycles += faces

    ghat = Graph(n * k, frozenset(edges))
    origin = {at(v, t): (v, t) for t in range(1, k + 1) for v in g.vertices}
    return LocalizeResult(ghat, CycleBasis(ghat, tuple(cycles)), ident, origin, tuple(all_chords))


# --------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class CycleBasisReport:
    independent: bool
    dim_ok: bool
    n_cycles: int
    expected_dim: int
    max_cycle_len: int
    max_edge_usage: int
    all_simple: bool

    def lines(self) -> list[str]:
        b = lambda x: "true" if x else "false"  # noqa: E731
        return [
            f"independent {b(self.independent)}",
            f"dim_ok {b(self.dim_ok)}",
            f"n_cycles {self.n_cycles}",
            f"expected_dim {self.expected_dim}",
            f"max_cycle_len {self.max_cycle_len}",
            f"max_edge_usage {self.max_edge_usage}",
            f"all_simple {b(self.all_simple)}",
        ]


def verify_cycle_basis(g: Graph, b: CycleBasis) -> CycleBasisReport:
    simple = all(is_simple_cycle(g, c) for c in b.cycles)
    usage: dict[tuple[int, int], int] = {}
    for es in b.edge_sets():
        for e in es:
            usage[e] = usage.get(e, 0) + 1
    on_graph = all(g.has_edge(*e) for e in usage)
    if on_graph:
        vecs = b.edge_vectors()
        independent = gf2_rank(vecs, g.n_edges) == len(vecs)
    else:
        independent = False
    expected = g.cycle_space_dim()
    return CycleBasisReport(
        independent=independent,
        dim_ok=len(b) == expected,
        n_cycles=len(b),
        expected_dim=expected,
        max_cycle_len=max((len(c) for c in b.cycles), default=0),
        max_edge_usage=max(usage.values(), default=0),
        all_simple=simple and on_graph,
    )


def embedding_is_induced(g: Graph, ghat: Graph, embedding: dict) -> bool:
    """Every edge of ``g`` maps to an edge and no other edges join embedded vertices."""
    image = {embedding[u]: u for u in g.vertices}
    if len(image) != g.n_vertices:
        return False
    for a, b in ghat.edges:
        if a in image and b in image and not g.has_edge(image[a], image[b]):
            return False
    return all(ghat.has_edge(embedding[u], embedding[v]) for u, v in g.edges)


def degree_increase(g: Graph, ghat: Graph, origin: dict) -> int:
    """Largest ``deg(copy of v) - deg(v)`` over the vertices of ``ghat``."""
    return max((ghat.degree(w) - g.degree(v) for w, (v, _) in origin.items()), default=0)


def random_connected_graph(n: int, rng: random.Random, max_degree: int = 4, mean_degree: float = 3.0) -> Graph:
    """Random spanning tree plus extra edges, all degrees capped at ``max_degree``."""
    if n < 1:
        raise DimensionError("n must be positive")
    if max_degree < 2 and n > 2:
        raise ValueError("max_degree must be at least 2")
    deg = [0] * (n + 1)
    edges: set[tuple[int, int]] = set()
    order = list(range(1, n + 1))
    rng.shuffle(order)
    for i in range(1, n):
        open_ = [u for u in order[:i] if deg[u] < max_degree - 1] or [u for u in order[:i] if deg[u] < max_degree]
        u, v = rng.choice(open_), order[i]
        edges.add(_edge(u, v))
        deg[u] += 1
        deg[v] += 1
    target = int(round(mean_degree * n / 2))
    tries = 0
    while len(edges) < target and tries < 50 * n:
        tries += 1
        u, v = rng.randint(1, n), rng.randint(1, n)
        if u == v or _edge(u, v) in edges or deg[u] >= max_degree or deg[v] >= max_degree:
            continue
        edges.add(_edge(u, v))
        deg[u] += 1
        deg[v] += 1
    return Graph(n, frozenset(edges))


__all__ = [
    "Graph",
    "CycleBasis",
    "is_simple_cycle",
    "gf2_rank",
    "check_basis",
    "horton_candidates",
    "horton_mcb",
    "ladder_chords",
    "sew",
    "LocalizeResult",
    "localize",
    "CycleBasisReport",
    "verify_cycle_basis",
    "embedding_is_induced",
    "degree_increase",
    "random_connected_graph",
]
