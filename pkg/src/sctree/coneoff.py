"""The cone-off of the tree over the conjugate-axis family.

Each conjugate axis Q gets an apex joined to every vertex of Q by an edge of
length r0.  Distances between tree vertices only ever use apexes of axes
meeting the tree geodesic, and along the geodesic an apex is useful exactly on
the trace of its axis, so a small local graph is enough to compute them.
"""
from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .automorphism import CORE_ID, ReducedWord, core_elements
from .bassserre import (
    Axis,
    ID_A,
    Vertex,
    act,
    diameter,
    distance,
    edge_word,
    geodesic,
    vertex_of_word,
)
from .smallcancel import CancellationParams, RelatorFinder, _finder

__all__ = [
    "ConeOffConfig",
    "ConeOffLocalGraph",
    "ConeOffDistance",
    "WindmillSpec",
    "WindmillReport",
    "TwReport",
    "classify_edges",
    "coneoff_distance",
    "coneoff_oracle",
    "apex_forcing",
    "axis_trace",
    "apex_key",
    "line_distance",
    "windmill_check",
    "base_windmill",
    "tw_distance_check",
    "random_tw_path",
    "random_neighbor",
    "sample_pairs",
    "wider_oracle",
    "path_shape_ok",
    "ApexForcing",
    "apex_forcing_instances",
]


@dataclass(frozen=True)
class ConeOffConfig:
    params: CancellationParams
    r0: Fraction = Fraction(1, 4)

    def __post_init__(self):
        if not (0 < 2 * self.r0 < 1):
            raise ValueError("r0 must satisfy 0 < 2*r0 < 1")

    @property
    def finder(self) -> RelatorFinder:
        return _finder(self.params.g, self.params.n)


@dataclass(frozen=True)
class ConeOffLocalGraph:
    segment: tuple
    insulator: tuple  # per edge: True when the edge lies on no conjugate axis
    apexes: tuple  # maximal covered intervals (start, stop) as segment indices
    reach: tuple
    r0: Fraction

    @property
    def n_vertices(self) -> int:
        return len(self.segment)


def classify_edges(x: Vertex, y: Vertex, cfg: ConeOffConfig) -> ConeOffLocalGraph:
    S = geodesic(x, y)
    reach = cfg.finder.reaches(S)
    insulator = tuple(reach[i] == i for i in range(len(S) - 1))
    apexes = []
    last = -1
    for i in range(len(S) - 1):
        if reach[i] > i and reach[i] > last:
            apexes.append((i, reach[i]))
        last = max(last, reach[i])
    return ConeOffLocalGraph(tuple(S), insulator, tuple(apexes), tuple(reach), cfg.r0)


@dataclass(frozen=True)
class ConeOffDistance:
    value: Fraction
    insulators: int  # m'
    hops: int  # m

    def to_json(self) -> dict:
        return {"m_prime": self.insulators, "m": self.hops, "distance": str(self.value)}


def coneoff_distance(x: Vertex, y: Vertex, cfg: ConeOffConfig, local: ConeOffLocalGraph | None = None) -> ConeOffDistance:
    """m' + 2m·r0 with m the least number of axis traces covering the rest."""
    local = local or classify_edges(x, y, cfg)
    reach = local.reach
    n = len(local.segment)
    cur, m_prime, m = 0, 0, 0
    while cur < n - 1:
        if reach[cur] == cur:
            m_prime += 1
            cur += 1
        else:
            m += 1
            cur = reach[cur]
    return ConeOffDistance(m_prime + 2 * m * cfg.r0, m_prime, m)


def _local_adjacency(local: ConeOffLocalGraph, skip_apex: int | None = None) -> dict:
    n = len(local.segment)
    adj: dict = {v: [] for v in range(n)}
    for i in range(n - 1):
        adj[i].append((i + 1, Fraction(1)))
        adj[i + 1].append((i, Fraction(1)))
    for a, (lo, hi) in enumerate(local.apexes):
        if a == skip_apex:
            continue
        node = ("apex", a)
        adj[node] = []
        for v in range(lo, hi + 1):
            adj[node].append((v, local.r0))
            adj[v].append((node, local.r0))
    return adj


def _dijkstra(adj: dict, src) -> tuple[dict, dict]:
    dist = {src: Fraction(0)}
    prev: dict = {src: None}
    counter = itertools.count()
    heap = [(Fraction(0), next(counter), src)]
    done = set()
    while heap:
        d, _, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for v, w in adj[u]:
            nd = d + w
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, next(counter), v))
    return dist, prev


def coneoff_oracle(x: Vertex, y: Vertex, cfg: ConeOffConfig, local: ConeOffLocalGraph | None = None) -> tuple[Fraction, list]:
    """Shortest path in the local graph by Dijkstra; returns (length, path)."""
    local = local or classify_edges(x, y, cfg)
    adj = _local_adjacency(local)
    target = len(local.segment) - 1
    dist, prev = _dijkstra(adj, 0)
    path = [target]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return dist[target], path[::-1]


def _count_shortest(adj: dict, src, dst) -> tuple[Fraction, int]:
    dist, _ = _dijkstra(adj, src)
    if dst not in dist:
        return None, 0
    order = sorted(dist, key=lambda v: dist[v])
    ways = {src: 1}
    for u in order:
        for v, w in adj[u]:
            if v in dist and dist[u] + w == dist[v]:
                ways[v] = ways.get(v, 0) + ways.get(u, 0)
    return dist[dst], ways.get(dst, 0)


@dataclass(frozen=True)
class ApexForcing:
    applicable: bool
    holds: bool | None
    overlap: int
    shortest_paths: int = 0
    avoiding_paths: int = 0


def apex_forcing(x: Vertex, y: Vertex, Q_support: ReducedWord, cfg: ConeOffConfig) -> ApexForcing:
    """Check that every shortest path from x to y passes through Q's apex.

    Applies only when the tree geodesic meets axe(Q) in more than 3Δ edges;
    otherwise the result is marked inapplicable.
    """
    local = classify_edges(x, y, cfg)
    axq = Axis(Q_support)
    on = [i for i, v in enumerate(local.segment) if axq.contains(v)]
    overlap = (on[-1] - on[0]) if on else 0
    if overlap <= 3 * cfg.params.delta:
        return ApexForcing(False, None, overlap)
    trace = (on[0], on[-1])
    if trace not in local.apexes:
        return ApexForcing(True, False, overlap)
    a = local.apexes.index(trace)
    target = len(local.segment) - 1
    d_all, n_all = _count_shortest(_local_adjacency(local), 0, target)
    d_skip, n_skip = _count_shortest(_local_adjacency(local, skip_apex=a), 0, target)
    avoiding = n_skip if d_skip == d_all else 0
    return ApexForcing(True, avoiding == 0, overlap, n_all, avoiding)


def apex_forcing_instances(x: Vertex, y: Vertex, cfg: ConeOffConfig) -> list[ApexForcing]:
    """Run apex_forcing for every axis whose trace on [x, y] exceeds 3Δ."""
    local = classify_edges(x, y, cfg)
    out = []
    for lo, hi in local.apexes:
        if hi - lo > 3 * cfg.params.delta:
            hit = cfg.finder.hit(list(local.segment), lo)
            out.append(apex_forcing(x, y, hit.support, cfg))
    return out


# ---------------------------------------------------------------------------
# windmills


def apex_key(h: ReducedWord) -> ReducedWord:
    """Name the apex of axe(h) by the smaller of h, h⁻¹."""
    hi = h.inverse()
    return min(h, hi, key=ReducedWord.sort_key)


def axis_trace(h: ReducedWord | Axis, center: Vertex, radius: int) -> list[Vertex]:
    """Vertices of axe(h) within ``radius`` of ``center``, in axis order."""
    ax = h if isinstance(h, Axis) else Axis(h)
    p = ax.project(center)
    d0 = distance(center, p)
    if d0 > radius:
        return []
    k = ax.position(p)
    span = radius - d0
    return ax.vertices(k - span, k + span)


def line_distance(ax1: Axis, ax2: Axis) -> int:
    """Tree distance between two axes (0 when they meet)."""
    q1 = ax1.project(ax2.base)
    q2 = ax2.project(q1)
    return distance(q1, q2)


@dataclass(frozen=True)
class WindmillSpec:
    vertices: frozenset
    apexes: frozenset  # apex keys
    center: Vertex
    radius: int


@dataclass
class WindmillReport:
    checks: dict
    diagnostics: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def base_windmill(cfg: ConeOffConfig, radius: int, center: Vertex | None = None) -> WindmillSpec:
    """Truncation of Q̊ for Q = axe(g) to the ball of given radius."""
    g = cfg.params.g
    ax = Axis(g)
    c = center if center is not None else ax.base
    tr = axis_trace(ax, c, radius)
    return WindmillSpec(frozenset(tr), frozenset({apex_key(g)}), c, radius)


def _components(nodes: Iterable, edges: Iterable) -> int:
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(v) for v in parent})


def _candidate_axes(g: ReducedWord, L: int, degree_cap: int = 0) -> list[ReducedWord]:
    from .smallcancel import _transversal_words

    F = g.field
    seen: dict = {}
    for w in _transversal_words(F, L, degree_cap):
        for c in core_elements(F):
            h = g.conj(w.mul_core(c))
            seen.setdefault(apex_key(h), h)
    return list(seen.values())


def windmill_check(
    W: WindmillSpec, depth: int, cfg: ConeOffConfig, L: int = 2, candidates: Sequence[ReducedWord] | None = None
) -> WindmillReport:
    """Check W1 (quasiconvex, complete, saturated to ``depth``) and W2 on a ball."""
    g = cfg.params.g
    n = cfg.params.n
    Delta = cfg.params.delta
    center, R = W.center, W.radius
    verts = set(W.vertices)
    apexes = set(W.apexes)
    cands = list(candidates) if candidates is not None else _candidate_axes(g, L)
    by_key = {apex_key(h): h for h in cands}
    for a in apexes:
        by_key.setdefault(a, a)
    traces = {k: axis_trace(h, center, R) for k, h in by_key.items()}
    diag: dict = {"candidate_axes": len(by_key), "vertices": len(verts), "apexes": len(apexes)}

    # quasiconvexity
    tree_edges = [(u, v) for u in verts for v in verts if u < v and distance(u, v) == 1]
    apex_edges = [(("apex", a), v) for a in apexes for v in traces.get(a, []) if v in verts]
    nodes = list(verts) + [("apex", a) for a in apexes]
    connected = _components(nodes, tree_edges + apex_edges) == 1 if nodes else True
    x_connected = _components(verts, tree_edges) == 1 if verts else True

    # completeness
    complete = True
    missing = []
    for k, tr in traces.items():
        has_apex = k in apexes
        covers = bool(tr) and set(tr) <= verts and diameter(tr) > 2 * Delta
        if has_apex and not set(tr) <= verts:
            complete = False
            missing.append(("trace", str(k.describe())))
        if covers and not has_apex:
            complete = False
            missing.append(("apex", str(k.describe())))
    diag["completeness_gaps"] = len(missing)

    # saturation under G_W, truncated to words of length <= depth
    gens = []
    for a in apexes:
        h = by_key[a] ** n
        gens += [h, h.inverse()]
    saturated = True
    frontier_v = set(verts)
    frontier_a = set(apexes)
    for _ in range(depth):
        new_v, new_a = set(), set()
        for s in gens:
            for v in frontier_v:
                u = act(s, v)
                if distance(center, u) <= R:
                    new_v.add(u)
            for a in frontier_a:
                h2 = by_key[a].conj(s)
                k2 = apex_key(h2)
                if axis_trace(h2, center, R):
                    new_a.add(k2)
        if not new_v <= verts or not new_a <= apexes:
            saturated = False
            diag["saturation_escape"] = len(new_v - verts) + len(new_a - apexes)
            break
        frontier_v, frontier_a = new_v, new_a

    # W2: adjacent axes meet W in at most 2Δ
    worst = 0
    for k, tr in traces.items():
        if k in apexes:
            continue
        inside = [v for v in tr if v in verts]
        if inside:
            worst = max(worst, diameter(inside))
    diag["max_adjacent_overlap"] = worst
    checks = {
        "W1_quasiconvex": connected and x_connected,
        "W1_complete": complete,
        f"W1_saturated_to_depth_{depth}": saturated,
        "W2_adjacent_overlap": worst <= 2 * Delta,
    }
    return WindmillReport(checks, diag)


# ---------------------------------------------------------------------------
# T_W paths


@dataclass
class TwReport:
    distances: list
    bounds: list
    ok: bool


def tw_distance_check(choices: Sequence[tuple[ReducedWord, int]], cfg: ConeOffConfig, cap: int | None = None) -> TwReport:
    """Check dist_X(W, g_k…g_1 W) > kℓ − (3k−1)Δ along a path from W = Q̊.

    ``choices`` lists (h_i, e_i): c_i is the apex of axe(h_i) and
    g_i = h_i^{n·e_i}.
    """
    g = cfg.params.g
    n = cfg.params.n
    Delta = cfg.params.delta
    ell = cfg.params.ell
    cap = cap if cap is not None else 4 * ell
    base = Axis(g)
    tau = ReducedWord.identity(g.field)
    prev_key = None
    dists, bounds = [], []
    ok = True
    for k, (h, e) in enumerate(choices, start=1):
        if e == 0:
            raise ValueError("g_i must be nontrivial")
        cur_line = Axis(g.conj(tau))
        ax_h = Axis(h)
        if line_distance(cur_line, ax_h) != 0:
            raise ValueError(f"apex {k} is not adjacent to the current windmill")
        from .bassserre import axis_intersection_diam

        if axis_intersection_diam(g.conj(tau), h, cap) >= cap:
            raise ValueError(f"apex {k} belongs to the current windmill")
        key = apex_key(h)
        if key == prev_key:
            raise ValueError(f"apex {k} repeats the previous apex")
        prev_key = key
        tau = (h ** (n * e)) * tau
        d = line_distance(base, Axis(g.conj(tau)))
        bound = k * ell - (3 * k - 1) * Delta
        dists.append(d)
        bounds.append(bound)
        ok = ok and d > bound
    return TwReport(dists, bounds, ok)


def random_tw_path(cfg: ConeOffConfig, k: int, rng: random.Random, cap: int | None = None) -> list[tuple[ReducedWord, int]]:
    """A random admissible path of length k from W = Q̊ in T_W.

    The i-th axis is τ s·axe(g) where s fixes an edge of axe(g) but not the
    whole axis, so it meets the current windmill τ·axe(g) without being it.
    """
    g = cfg.params.g
    F = g.field
    n = cfg.params.n
    cap = cap if cap is not None else 4 * cfg.params.ell
    ax = Axis(g)
    cores = core_elements(F)
    tau = ReducedWord.identity(F)
    out: list = []
    prev = None
    while len(out) < k:
        p = rng.randrange(-cfg.params.ell, cfg.params.ell)
        psi = edge_word(F, ax.vertex_at(p), ax.vertex_at(p + 1))
        s = psi * ReducedWord.from_core(F, rng.choice(cores)) * psi.inverse()
        h0 = g.conj(s)
        from .bassserre import axis_intersection_diam

        if axis_intersection_diam(g, h0, cap) >= cap:
            continue
        h = h0.conj(tau)
        if prev is not None and apex_key(h) == prev:
            continue
        e = rng.choice((-2, -1, 1, 2))
        out.append((h, e))
        prev = apex_key(h)
        tau = (h ** (n * e)) * tau
    return out


def random_neighbor(v: Vertex, rng: random.Random, field, degree_cap: int = 1) -> Vertex:
    """A uniformly chosen transversal step away from v (may be v's parent)."""
    w = ReducedWord(field, v.reps, CORE_ID)
    if v.side == "A":
        lam = rng.randrange(field.q + 1)
        step = w if lam == field.q else w.mul_rep(("A", lam))
        return vertex_of_word(step, "B")
    deg = rng.randrange(degree_cap + 1)
    R = tuple(rng.randrange(field.q) for _ in range(deg)) + (rng.randrange(1, field.q),)
    step = w.mul_rep(("B", R)) if rng.random() < 0.9 else w
    return vertex_of_word(step, "A")


def sample_pairs(cfg: ConeOffConfig, count: int, rng: random.Random, max_dist: int = 30) -> list[tuple[Vertex, Vertex]]:
    """Seeded vertex pairs at tree distance <= max_dist.

    Half the pairs hug conjugate axes (so apex hops matter), the rest are
    random walks from random points.
    """
    g = cfg.params.g
    F = g.field
    gn = g ** cfg.params.n
    cores = core_elements(F)
    out = []
    while len(out) < count:
        if len(out) % 2 == 0:
            ax = Axis(gn)
            p = rng.randrange(-cfg.params.ell, cfg.params.ell)
            psi = edge_word(F, ax.vertex_at(p), ax.vertex_at(p + 1))
            phi = psi * ReducedWord.from_core(F, rng.choice(cores)) * psi.inverse()
            ax2 = Axis(gn.conj(phi))
            q = rng.randrange(-cfg.params.ell, cfg.params.ell)
            x = ax2.vertex_at(q)
            y = ax2.vertex_at(q + rng.randrange(0, max_dist + 1))
            for _ in range(rng.randrange(3)):
                x = random_neighbor(x, rng, F)
            for _ in range(rng.randrange(3)):
                y = random_neighbor(y, rng, F)
        else:
            x = ID_A
            for _ in range(rng.randrange(12)):
                x = random_neighbor(x, rng, F)
            y = x
            for _ in range(rng.randrange(max_dist + 1)):
                y = random_neighbor(y, rng, F)
        if distance(x, y) <= max_dist:
            out.append((x, y))
    return out


def wider_oracle(x: Vertex, y: Vertex, cfg: ConeOffConfig, extra: Sequence[Vertex]) -> Fraction:
    """Shortest path from x to y through the segment plus ``extra`` off-segment vertices.

    Any two chosen vertices whose tree geodesic lies on a single conjugate
    axis are joined by an apex hop of length 2·r0.  Used to stress the claim
    that leaving the segment never helps.
    """
    S = geodesic(x, y)
    nodes = list(dict.fromkeys(list(S) + list(extra)))
    fnd = cfg.finder
    adj: dict = {v: [] for v in nodes}
    for i, u in enumerate(nodes):
        for v in nodes[i + 1:]:
            d = distance(u, v)
            w = Fraction(d)
            if d > 0 and fnd.reach(geodesic(u, v), 0)[0] == d:
                w = min(w, 2 * cfg.r0)
            adj[u].append((v, w))
            adj[v].append((u, w))
    dist, _ = _dijkstra(adj, x)
    return dist[y]


def path_shape_ok(local: ConeOffLocalGraph, path: Sequence) -> bool:
    """A reconstructed oracle path alternates tree edges and apex visits.

    Each apex is entered and left at vertices of its own trace, and every
    apex hop costs exactly 2·r0.
    """
    for a, node in enumerate(path):
        if isinstance(node, tuple):
            lo, hi = local.apexes[node[1]]
            u, v = path[a - 1], path[a + 1]
            if not (lo <= u <= hi and lo <= v <= hi):
                return False
        elif a and not isinstance(path[a - 1], tuple) and abs(node - path[a - 1]) != 1:
            return False
    return True
