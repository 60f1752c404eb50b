"""Principal unimodularity: decision procedures, cycle parity,
orientation search, and comparison of orientations.

A graph is principally unimodular (PU) when every state determinant
det A(s) lies in {0, 1}.  Equivalently every minor of A(G), or every
minor of the bipartite block B(G), lies in {0, +1, -1}; the decision
methods below implement all three readings and must agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import GiveUp, NotBipartite, StructureMismatch
from .graphs import LabeledGraph, UnorientedGraph, build_graph
from .intlinalg import det, minors_all

__all__ = [
    "Counterexample",
    "is_pu",
    "chordless_cycles",
    "cycle_parity",
    "all_chordless_even",
    "find_pu_orientation",
    "compare_orientations",
    "random_pu_graph",
]

METHODS = ("minors-b", "minors-a", "state-dets")


@dataclass
class Counterexample:
    """Why a graph fails to be PU.

    Either a violating state with its determinant, or a violating
    minor (row/column vertex names and its value), or both: a minor
    of the bipartite block names the state given by its row and
    column vertices together.
    """

    state: tuple[str, ...] | None = None
    det: int | None = None
    rows: tuple[str, ...] | None = None
    cols: tuple[str, ...] | None = None
    minor: int | None = None


def is_pu(g: LabeledGraph, method: str = "minors-b") -> Counterexample | None:
    """None when principally unimodular, else a counterexample.

    The default method enumerates minors of the bipartite block,
    which is the smallest search space; "minors-a" enumerates minors
    of the full adjacency and "state-dets" enumerates state
    determinants directly.
    """
    if method == "minors-b":
        full = (1 << g.n) - 1
        rows, cols, b = g.bipartite_block(full)
        hit = minors_all(b)
        if hit is None:
            return None
        rsub, csub, value = hit
        ridx = [rows[i] for i in rsub]
        cidx = [cols[j] for j in csub]
        state = tuple(g.names[i] for i in sorted(ridx + cidx))
        return Counterexample(
            state=state,
            det=value * value,
            rows=tuple(g.names[i] for i in ridx),
            cols=tuple(g.names[j] for j in cidx),
            minor=value,
        )
    if method == "minors-a":
        hit = minors_all([list(r) for r in g.adj])
        if hit is None:
            return None
        rsub, csub, value = hit
        return Counterexample(
            rows=tuple(g.names[i] for i in rsub),
            cols=tuple(g.names[j] for j in csub),
            minor=value,
        )
    if method == "state-dets":
        for state in g.all_states():
            d = det(g.induced(state))
            if d not in (0, 1):
                return Counterexample(
                    state=tuple(g.names[i] for i in g.state_indices(state)),
                    det=d,
                )
        return None
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def _undirected_adj(n: int, pairs) -> list[list[bool]]:
    adj = [[False] * n for _ in range(n)]
    for i, j in pairs:
        adj[i][j] = adj[j][i] = True
    return adj


def chordless_cycles(adj: list[list[bool]]):
    """Yield every chordless cycle once, as a vertex index tuple.

    Canonical form: the cycle starts at its smallest vertex and its
    second entry is smaller than its last.  Enumeration order is
    deterministic (smallest start first, neighbors ascending).
    """
    n = len(adj)
    for a in range(n):
        starts = [b for b in range(a + 1, n) if adj[a][b]]
        for b in starts:
            stack = [[a, b]]
            while stack:
                path = stack.pop()
                last = path[-1]
                for v in range(a + 1, n):
                    if not adj[last][v] or v in path:
                        continue
                    # chordless: v may touch only the path's last
                    # vertex, and the start when closing
                    if any(adj[v][p] for p in path[1:-1]):
                        continue
                    if adj[v][a]:
                        if len(path) >= 3 and path[1] < v:
                            yield tuple(path + [v])
                        continue
                    stack.append(path + [v])


def cycle_parity(g: LabeledGraph, cycle: tuple[int, ...]) -> int:
    """Number of codirectional edges along the traversal, mod 2."""
    count = 0
    for t in range(len(cycle)):
        if g.adj[cycle[t]][cycle[(t + 1) % len(cycle)]] == 1:
            count += 1
    return count % 2


def all_chordless_even(g: LabeledGraph) -> tuple[str, ...] | None:
    """None when every chordless cycle is even, else the first odd one.

    Evenness of all chordless cycles is necessary (not sufficient)
    for principal unimodularity.
    """
    adj = [[x != 0 for x in row] for row in g.adj]
    for cycle in chordless_cycles(adj):
        if cycle_parity(g, cycle) == 1:
            return tuple(g.names[i] for i in cycle)
    return None


def find_pu_orientation(u: UnorientedGraph) -> LabeledGraph | None:
    """Orient the free edges so the result is PU, or report None.

    Directed edges in the input are kept as given.  The search prunes
    partial orientations that close an odd chordless cycle and
    certifies every surviving candidate with is_pu, so a returned
    graph is always PU.  Deterministic.
    """
    n = len(u.names)
    for i, j in list(u.directed) + list(u.undirected):
        if u.parts[i] == u.parts[j]:
            raise NotBipartite(
                f"edge {u.names[i]} {u.names[j]} joins two part-{u.parts[i]} vertices"
            )

    all_pairs = [tuple(sorted(p)) for p in list(u.directed) + list(u.undirected)]
    cycles = list(chordless_cycles(_undirected_adj(n, all_pairs)))

    adj = [[0] * n for _ in range(n)]
    for i, j in u.directed:
        adj[i][j] = 1
        adj[j][i] = -1

    free = sorted(tuple(sorted(p)) for p in u.undirected)
    if not u.directed:
        free = _gauge_fix_forest(n, free, adj)

    # cycles that become fully oriented once free edge k is assigned
    last_free = []
    free_pos = {p: k for k, p in enumerate(free)}
    for cyc in cycles:
        edges = [tuple(sorted((cyc[t], cyc[(t + 1) % len(cyc)]))) for t in range(len(cyc))]
        ks = [free_pos[e] for e in edges if e in free_pos]
        last_free.append(max(ks) if ks else -1)

    def parity_ok(upto: int) -> bool:
        for cyc, lastk in zip(cycles, last_free):
            if lastk > upto:
                continue
            count = 0
            for t in range(len(cyc)):
                if adj[cyc[t]][cyc[(t + 1) % len(cyc)]] == 1:
                    count += 1
            if count % 2:
                return False
        return True

    def assemble() -> LabeledGraph:
        signs = ["+" if s == 1 else "-" for s in u.signs]
        verts = list(zip(u.names, u.parts, signs))
        edges = [
            (u.names[i], u.names[j])
            for i in range(n)
            for j in range(n)
            if adj[i][j] == 1
        ]
        return build_graph(verts, edges)

    def search(k: int) -> LabeledGraph | None:
        if k == len(free):
            g = assemble()
            return g if is_pu(g) is None else None
        i, j = free[k]
        for a, b in ((i, j), (j, i)):
            adj[a][b] = 1
            adj[b][a] = -1
            if parity_ok(k):
                got = search(k + 1)
                if got is not None:
                    return got
            adj[a][b] = adj[b][a] = 0
        return None

    if not parity_ok(-1):
        return None
    return search(0)


def _gauge_fix_forest(n: int, free: list, adj) -> list:
    """Pre-orient a spanning forest low-to-high; reversions of vertex
    stars recover every orientation, so no PU candidate is lost."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    remaining = []
    for i, j in free:
        ri, rj = find(i), find(j)
        if ri == rj:
            remaining.append((i, j))
        else:
            parent[ri] = rj
            adj[i][j] = 1
            adj[j][i] = -1
    return remaining


def compare_orientations(g1: LabeledGraph, g2: LabeledGraph):
    """Vertex set alpha with R(alpha)(g1) == g2, or None.

    Per connected component the two complementary candidates are
    resolved to the lexicographically smaller name tuple.  Raises
    StructureMismatch unless the graphs share vertices, labels, and
    underlying edges.
    """
    if g1.names != g2.names or g1.parts != g2.parts or g1.signs != g2.signs:
        raise StructureMismatch("vertex lists or labels differ")
    n = g1.n
    und1 = {(min(i, j), max(i, j)) for i, j in g1.edges()}
    und2 = {(min(i, j), max(i, j)) for i, j in g2.edges()}
    if und1 != und2:
        raise StructureMismatch("underlying edges differ")

    flip = {e: g1.adj[e[0]][e[1]] != g2.adj[e[0]][e[1]] for e in und1}
    nbrs = [[] for _ in range(n)]
    for i, j in und1:
        nbrs[i].append(j)
        nbrs[j].append(i)

    chi = [None] * n
    alpha: list[str] = []
    for root in range(n):
        if chi[root] is not None:
            continue
        chi[root] = 0
        comp = [root]
        queue = [root]
        while queue:
            x = queue.pop(0)
            for y in nbrs[x]:
                e = (min(x, y), max(x, y))
                want = chi[x] ^ flip[e]
                if chi[y] is None:
                    chi[y] = want
                    comp.append(y)
                    queue.append(y)
                elif chi[y] != want:
                    return None
        inside = tuple(sorted(g1.names[v] for v in comp if chi[v] == 1))
        outside = tuple(sorted(g1.names[v] for v in comp if chi[v] == 0))
        alpha.extend(min(inside, outside))
    return tuple(sorted(alpha))


def random_pu_graph(
    n: int, edge_density: float = 0.5, seed: int = 0, max_attempts: int = 300
) -> LabeledGraph:
    """Sample a PU graph with n vertices; raises GiveUp when the
    attempt budget runs out."""
    rng = random.Random(seed)
    for _ in range(max_attempts):
        parts = tuple(rng.randint(0, 1) for _ in range(n))
        signs = tuple(rng.choice((1, -1)) for _ in range(n))
        pairs = tuple(
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if parts[i] != parts[j] and rng.random() < edge_density
        )
        u = UnorientedGraph(
            tuple(f"v{i}" for i in range(n)), parts, signs, (), pairs
        )
        g = find_pu_orientation(u)
        if g is not None:
            return g
    raise GiveUp(max_attempts)
