"""The Bass-Serre tree of A *_C B and the action on it.

A vertex is the coset fA or fB, named by the transversal syllables of f with
any trailing syllable of the vertex's own side stripped (the core is dropped
too).  The root path from idA to a vertex can be read off its key, which makes
distances, geodesics and medians cheap.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .automorphism import CORE_ID, PolyMap, ReducedWord, translation_length
from .galois import Field

__all__ = [
    "Vertex",
    "ID_A",
    "ID_B",
    "vertex",
    "vertex_of_word",
    "root_path",
    "distance",
    "geodesic",
    "median",
    "act",
    "act_path",
    "project",
    "Axis",
    "AxisWindow",
    "axis_window",
    "axis_intersection_diam",
    "diameter",
    "is_adjacent",
    "vertex_to_str",
    "parse_vertex",
    "edge_word",
]


class Vertex(NamedTuple):
    reps: tuple
    side: str  # "A" or "B"


ID_A = Vertex((), "A")
ID_B = Vertex((), "B")


def vertex_of_word(w: ReducedWord, side: str) -> Vertex:
    reps = w.reps
    if reps and reps[-1][0] == side:
        reps = reps[:-1]
    return Vertex(reps, side)


def vertex(f: PolyMap | ReducedWord, side: str) -> Vertex:
    """The coset f·A or f·B."""
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    w = f if isinstance(f, ReducedWord) else f.to_word()
    return vertex_of_word(w, side)


def root_path(v: Vertex) -> list[Vertex]:
    """Geodesic from idA to v."""
    K = v.reps
    out = [ID_A]
    for i in range(len(K)):
        u = Vertex(K[:i], K[i][0])
        if u != out[-1]:
            out.append(u)
    if v != out[-1]:
        out.append(v)
    return out


def _lcp(P: Sequence, Q: Sequence) -> int:
    n = 0
    for a, b in zip(P, Q):
        if a != b:
            break
        n += 1
    return n


def distance(u: Vertex, v: Vertex) -> int:
    if u == v:
        return 0
    P, Q = root_path(u), root_path(v)
    return len(P) + len(Q) - 2 * _lcp(P, Q)


def geodesic(u: Vertex, v: Vertex) -> list[Vertex]:
    P, Q = root_path(u), root_path(v)
    n = _lcp(P, Q)
    return P[n - 1:][::-1] + Q[n:]


def median(a: Vertex, b: Vertex, c: Vertex) -> Vertex:
    """The branch point of the tripod spanned by a, b, c."""
    Pa, Pb, Pc = root_path(a), root_path(b), root_path(c)
    best = None
    for P, Q in ((Pa, Pb), (Pa, Pc), (Pb, Pc)):
        n = _lcp(P, Q)
        if best is None or n > best[0]:
            best = (n, P[n - 1])
    return best[1]


def is_adjacent(u: Vertex, v: Vertex) -> bool:
    return distance(u, v) == 1


def act(phi: ReducedWord, v: Vertex) -> Vertex:
    w = phi
    for key in v.reps:
        w = w.mul_rep(key)
    return vertex_of_word(w, v.side)


def act_path(phi: ReducedWord, P: Sequence[Vertex]) -> list[Vertex]:
    return [act(phi, v) for v in P]


def project(v: Vertex, P: Sequence[Vertex]) -> Vertex:
    """Nearest vertex of the geodesic path P to v."""
    if not P:
        raise ValueError("cannot project onto an empty path")
    if len(P) == 1:
        return P[0]
    return median(v, P[0], P[-1])


def diameter(vertices: Sequence[Vertex]) -> int:
    vs = list(vertices)
    return max((distance(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]), default=0)


def edge_word(field: Field, u: Vertex, v: Vertex) -> ReducedWord:
    """ψ with ψ·{idA, idB} = {u, v} for adjacent u, v (sides preserved)."""
    longer = u.reps if len(u.reps) >= len(v.reps) else v.reps
    return ReducedWord(field, longer, CORE_ID)


# ---------------------------------------------------------------------------
# axes


class Axis:
    """The axis of a loxodromic element, indexed by signed integer positions.

    Position 0 is the projection of idA; position k + ℓ is g applied to
    position k, so increasing positions run in the direction g translates.
    """

    def __init__(self, g: ReducedWord):
        ell = translation_length(g)
        if ell == 0:
            raise ValueError("element is elliptic and has no axis")
        self.g = g
        self.length = ell
        self.field = g.field
        self.base = self.project(ID_A)
        self.segment = geodesic(self.base, act(g, self.base))
        self._powers: dict[int, ReducedWord] = {0: ReducedWord.identity(g.field), 1: g}
        self._g_inv = g.inverse()
        self._cache: dict[int, Vertex] = {}

    def power(self, q: int) -> ReducedWord:
        w = self._powers.get(q)
        if w is None:
            step = 1 if q > 0 else -1
            prev = self.power(q - step)
            w = prev * (self.g if q > 0 else self._g_inv)
            self._powers[q] = w
        return w

    def project(self, v: Vertex) -> Vertex:
        path = geodesic(v, act(self.g, v))
        off = (len(path) - 1 - translation_length(self.g)) // 2
        return path[off]

    def contains(self, v: Vertex) -> bool:
        return distance(v, act(self.g, v)) == self.length

    def vertex_at(self, k: int) -> Vertex:
        v = self._cache.get(k)
        if v is None:
            q, r = divmod(k, self.length)
            v = act(self.power(q), self.segment[r]) if q else self.segment[r]
            self._cache[k] = v
        return v

    def vertices(self, start: int, stop: int) -> list[Vertex]:
        """Positions start..stop inclusive."""
        return [self.vertex_at(k) for k in range(start, stop + 1)]

    def position(self, v: Vertex) -> int:
        """Signed position of an axis vertex."""
        m = distance(self.base, v)
        if self.vertex_at(m) == v:
            return m
        if self.vertex_at(-m) == v:
            return -m
        raise ValueError("vertex is not on the axis")

    def side_at(self, k: int) -> str:
        return self.vertex_at(k).side


@dataclass(frozen=True)
class AxisWindow:
    support: ReducedWord
    window: tuple
    base_offset: int
    orientation: str = "forward"

    def __len__(self) -> int:
        return len(self.window)


def axis_window(g: ReducedWord, center: Vertex, radius: int) -> AxisWindow:
    ax = Axis(g)
    k = ax.position(ax.project(center))
    return AxisWindow(g, tuple(ax.vertices(k - radius, k + radius)), k - radius)


def axis_intersection_diam(g1: ReducedWord, g2: ReducedWord, cap: int) -> int:
    """Edge diameter of axe(g1) ∩ axe(g2), saturating at ``cap``."""
    ax1, ax2 = Axis(g1), Axis(g2)
    q = ax1.project(ax2.base)
    if not ax2.contains(q):
        return 0
    k = ax1.position(q)
    lo = hi = k
    while hi - lo < cap and ax2.contains(ax1.vertex_at(hi + 1)):
        hi += 1
    while hi - lo < cap and ax2.contains(ax1.vertex_at(lo - 1)):
        lo -= 1
    return min(hi - lo, cap)


# ---------------------------------------------------------------------------
# text form


def vertex_to_str(field: Field, v: Vertex) -> str:
    if not v.reps:
        return f"id|{v.side}"
    return ReducedWord(field, v.reps, CORE_ID).describe().rsplit(" core", 1)[0] + f"|{v.side}"


_SYL = re.compile(r"([AB])\[((?:\[[^\]]*\]|[^\]\[])*)\]")


def _parse_scalar(field: Field, s: str) -> int:
    s = s.strip()
    if s.startswith("["):
        return field.from_vector(int(c) for c in s[1:-1].split(","))
    return field.from_int(int(s))


def parse_vertex(field: Field, text: str) -> Vertex:
    """Inverse of ``vertex_to_str``: ``B[1] A[0]|B`` or ``id|A``."""
    body, _, side = text.strip().rpartition("|")
    if side not in ("A", "B"):
        raise ValueError(f"vertex must end in |A or |B: {text!r}")
    body = body.strip()
    w = ReducedWord.identity(field)
    if body and body != "id":
        pos = 0
        for m in _SYL.finditer(body):
            if body[pos:m.start()].strip():
                raise ValueError(f"cannot parse vertex {text!r}")
            pos = m.end()
            kind, arg = m.group(1), m.group(2)
            if kind == "A":
                w = w.mul_rep(("A", _parse_scalar(field, arg)))
            else:
                parts = re.findall(r"\[[^\]]*\]|[^,]+", arg)
                R = tuple(_parse_scalar(field, p) for p in parts)
                w = w.mul_rep(("B", R))
        if body[pos:].strip():
            raise ValueError(f"cannot parse vertex {text!r}")
    return vertex_of_word(w, side)
