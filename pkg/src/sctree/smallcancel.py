"""Relators, neutral segments, tightness and the small-cancellation constants.

All conjugate axes of g are translates φ·axe(g).  A segment S lies on one of
them exactly when some transporter carries S onto a window of axe(g); since
axe(g) is ℓ(g)-periodic under g it is enough to try windows starting at
positions 0..ℓ(g)-1 in both orientations.  Each such query is a filter over
the finite edge group C, so every answer here is exact.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .automorphism import (
    CORE_ID,
    ReducedWord,
    core_elements,
    translation_length,
)
from .bassserre import Axis, Vertex, act, edge_word, vertex_of_word
from .galois import Field

__all__ = [
    "RelatorHit",
    "RelatorFinder",
    "TightnessCertificate",
    "NotTight",
    "CancellationParams",
    "max_relator",
    "is_neutral",
    "certify_tight",
    "minimal_tight_B",
    "delta",
    "overlap_scan",
    "choose_exponent",
    "check_epsilon_sc",
]


@dataclass(frozen=True)
class RelatorHit:
    start: int  # indices into the query segment, start < stop
    stop: int
    segment: tuple
    support: ReducedWord  # a conjugate of g^{±n} translating from start toward stop
    witness: ReducedWord  # carries the segment into axe(g)

    @property
    def size(self) -> int:
        return self.stop - self.start


def _step_word(F: Field, u: Vertex, v: Vertex) -> ReducedWord | None:
    """s with word(key(v)) = word(key(u))·s for adjacent u, v (None if keys agree)."""
    if len(v.reps) > len(u.reps):
        return ReducedWord(F, (v.reps[-1],), CORE_ID)
    if len(v.reps) < len(u.reps):
        return ReducedWord(F, (u.reps[-1],), CORE_ID).inverse()
    return None


class RelatorFinder:
    """Exact relator detection for the conjugate family of a loxodromic g.

    For a start index i the segment is viewed in the frame where its first
    edge is the standard edge (idA, idB); the same is done for each axis class
    (start r in [0, ℓ), direction ±1).  A core c matches when it carries every
    framed segment vertex to the framed axis vertex.  For each class and depth
    k the preimages c⁻¹·dst_k are tabulated once, so filtering a segment is a
    chain of dictionary lookups and bitmask intersections.
    """

    def __init__(self, g: ReducedWord, n: int = 1):
        self.g = g
        self.n = n
        self.field = g.field
        self.axis = Axis(g)
        self.ell = self.axis.length
        self._gn = g**n
        self._gn_inv = self._gn.inverse()
        F = self.field
        self._cores = [ReducedWord.from_core(F, c) for c in core_elements(F)]
        self._core_invs = [c.inverse() for c in self._cores]
        self._full = (1 << len(self._cores)) - 1
        self._classes = []
        for sigma in (1, -1):
            for r in range(self.ell):
                psi2 = edge_word(F, self.axis.vertex_at(r), self.axis.vertex_at(r + sigma))
                self._classes.append(
                    {"r": r, "sigma": sigma, "side": self.axis.side_at(r),
                     "psi2": psi2, "psi2_inv": psi2.inverse(), "orbits": []}
                )

    def _orbit(self, cls: dict, k: int) -> dict:
        orbits = cls["orbits"]
        while len(orbits) <= k:
            kk = len(orbits)
            dst = act(cls["psi2_inv"], self.axis.vertex_at(cls["r"] + cls["sigma"] * kk))
            if kk == 0:
                # words c⁻¹·word(dst_k), advanced one syllable per depth
                cls["walk"] = list(self._core_invs)
            else:
                step = _step_word(self.field, cls["prev"], dst)
                if step is not None:
                    cls["walk"] = [u * step for u in cls["walk"]]
            cls["prev"] = dst
            table: dict = {}
            for idx, u in enumerate(cls["walk"]):
                v = vertex_of_word(u, dst.side)
                table[v] = table.get(v, 0) | (1 << idx)
            orbits.append(table)
        return orbits[k]

    def _frame(self, S: Sequence[Vertex], i: int):
        """Yield ψ⁻¹·S[i+k] for k = 0, 1, ... where ψ·{idA, idB} = {S[i], S[i+1]}."""
        F = self.field
        a, b = S[i], S[i + 1]
        if len(a.reps) < len(b.reps):
            u = ReducedWord.identity(F).mul_rep(b.reps[-1]).inverse()
        else:
            u = ReducedWord.identity(F)
        yield vertex_of_word(u, a.side)
        prev = a
        for v in S[i + 1:]:
            step = _step_word(F, prev, v)
            if step is not None:
                u = u * step
            yield vertex_of_word(u, v.side)
            prev = v

    def reach(self, S: Sequence[Vertex], i: int) -> tuple[int, tuple | None]:
        """Largest j such that S[i..j] lies on a conjugate axis, with a witness.

        The witness is (class, core mask): any core in the mask, framed back,
        carries S[i+k] to the axis position r + σk.
        """
        n = len(S)
        if i >= n - 1:
            return i, None
        frame = self._frame(S, i)
        src = [next(frame), next(frame)]
        best_j, best = i + 1, None
        for cls in self._classes:
            if cls["side"] != S[i].side:
                continue
            alive = self._full
            k = 1
            while i + k + 1 < n:
                if len(src) <= k + 1:
                    src.append(next(frame))
                m = alive & self._orbit(cls, k + 1).get(src[k + 1], 0)
                if not m:
                    break
                alive = m
                k += 1
            if best is None or i + k > best_j:
                best_j, best = i + k, (cls, alive)
        return best_j, best

    def reaches(self, S: Sequence[Vertex]) -> list[int]:
        """reach(i) for every i; nondecreasing in i."""
        return [self.reach(S, i)[0] for i in range(len(S))]

    def witness(self, S: Sequence[Vertex], i: int, best: tuple) -> tuple[ReducedWord, int]:
        cls, mask = best
        idx = (mask & -mask).bit_length() - 1
        psi1 = edge_word(self.field, S[i], S[i + 1])
        tau = cls["psi2"] * self._cores[idx] * psi1.inverse()
        return tau, cls["sigma"]

    def hit(self, S: Sequence[Vertex], i: int) -> RelatorHit | None:
        j, best = self.reach(S, i)
        if best is None:
            return None
        tau, sigma = self.witness(S, i, best)
        power = self._gn if sigma > 0 else self._gn_inv
        support = tau.inverse() * power * tau
        return RelatorHit(i, j, tuple(S[i:j + 1]), support, tau)

    def max_relator(self, S: Sequence[Vertex]) -> RelatorHit | None:
        best_i, best_size = None, 0
        for i in range(len(S) - 1):
            if len(S) - 1 - i <= best_size:
                break
            j, _ = self.reach(S, i)
            if j - i > best_size:
                best_i, best_size = i, j - i
        return None if best_i is None else self.hit(S, best_i)


@functools.lru_cache(maxsize=64)
def _finder(g: ReducedWord, n: int = 1) -> RelatorFinder:
    return RelatorFinder(g, n)


def max_relator(S: Sequence[Vertex], g: ReducedWord, n: int = 1) -> RelatorHit | None:
    return _finder(g, n).max_relator(S)


@dataclass(frozen=True)
class CancellationParams:
    g: ReducedWord
    B: int
    delta: int
    n: int

    @property
    def ell(self) -> int:
        return self.n * translation_length(self.g)


def is_neutral(S: Sequence[Vertex], params: CancellationParams) -> bool:
    """No relator in S is longer than half of ℓ(gⁿ)."""
    hit = _finder(params.g, params.n).max_relator(S)
    return hit is None or 2 * hit.size <= params.ell


# ---------------------------------------------------------------------------
# tightness


@dataclass(frozen=True)
class TightnessCertificate:
    g: ReducedWord
    B: int
    counterexample: ReducedWord | None
    classes_checked: int

    @property
    def tight(self) -> bool:
        return self.counterexample is None


class NotTight(RuntimeError):
    def __init__(self, message: str, certificate: TightnessCertificate):
        super().__init__(message)
        self.certificate = certificate


def certify_tight(g: ReducedWord, B: int) -> TightnessCertificate:
    """Decide whether overlap > B forces φgφ⁻¹ ∈ {g, g⁻¹}.

    Such a φ maps some (B+1)-edge window of axe(g) onto another window; after
    composing with powers of g both windows start in [0, ℓ).  The transporter
    sets between those windows are complete, so checking them is exhaustive.
    """
    if B < 0:
        raise ValueError("B must be >= 0")
    F = g.field
    ax = Axis(g)
    ell = ax.length
    g_inv = g.inverse()
    cores = [ReducedWord.from_core(F, c) for c in core_elements(F)]
    checked = 0
    for r in range(ell):
        P = ax.vertices(r, r + B + 1)
        psi1 = edge_word(F, P[0], P[1])
        psi1_inv = psi1.inverse()
        src = [act(psi1_inv, v) for v in P]
        for sigma in (1, -1):
            for r2 in range(ell):
                Q = [ax.vertex_at(r2 + sigma * k) for k in range(B + 2)]
                if Q[0].side != P[0].side:
                    continue
                checked += 1
                psi2 = edge_word(F, Q[0], Q[1])
                psi2_inv = psi2.inverse()
                dst = [act(psi2_inv, v) for v in Q]
                if dst[0] != src[0]:
                    continue
                for c in cores:
                    if all(act(c, src[k]) == dst[k] for k in range(2, len(src))):
                        tau = psi2 * c * psi1_inv
                        conj = g.conj(tau)
                        if conj != g and conj != g_inv:
                            return TightnessCertificate(g, B, tau, checked)
    return TightnessCertificate(g, B, None, checked)


def minimal_tight_B(g: ReducedWord, B_max: int = 40) -> int:
    last = None
    for B in range(B_max + 1):
        cert = certify_tight(g, B)
        if cert.tight:
            return B
        last = cert
    raise NotTight(f"no B <= {B_max} certifies tightness", last)


def overlap_scan(g: ReducedWord, L: int, degree_cap: int = 0, cap: int = 64) -> int:
    """Largest overlap of axe(g) with a distinct conjugate axis φ·axe(g), |φ| ≤ L.

    φ runs over (transversal word of length ≤ L)·(element of C), which is the
    whole ball of syllable length L apart from the B-syllable degree cap.
    Overlaps reaching ``cap`` are treated as the same axis.
    """
    F = g.field
    ax = Axis(g)
    words = [ReducedWord.identity(F)] + [
        phi for phi in _transversal_words(F, L, degree_cap) if phi.reps
    ]
    best = 0
    for w in words:
        for c in core_elements(F):
            phi = w.mul_core(c)
            d = _translate_overlap(ax, phi, cap)
            if d < cap:
                best = max(best, d)
    return best


def _transversal_words(F: Field, L: int, degree_cap: int) -> list[ReducedWord]:
    from .automorphism import _b_transversals

    a_keys = [("A", lam) for lam in F.elements()]
    b_keys = [("B", R) for R in _b_transversals(F, degree_cap)]
    out = [ReducedWord.identity(F)]
    frontier = [()]
    for _ in range(L):
        nxt = []
        for reps in frontier:
            last = reps[-1][0] if reps else None
            for key in (a_keys if last != "A" else []) + (b_keys if last != "B" else []):
                nxt.append(reps + (key,))
        out.extend(ReducedWord(F, r, CORE_ID) for r in nxt)
        frontier = nxt
    return out


def _translate_overlap(ax: Axis, phi: ReducedWord, cap: int) -> int:
    """Edge diameter of axe(g) ∩ φ·axe(g), saturating at ``cap``.

    Walks along axe(g) from the projection of φ·base, testing membership in
    φ·axe(g) by pulling back with φ⁻¹.
    """
    phi_inv = phi.inverse()
    q = ax.project(act(phi, ax.base))
    on = lambda v: ax.contains(act(phi_inv, v))  # noqa: E731
    if not on(q):
        return 0
    k = ax.position(q)
    lo = hi = k
    while hi - lo < cap and on(ax.vertex_at(hi + 1)):
        hi += 1
    while hi - lo < cap and on(ax.vertex_at(lo - 1)):
        lo -= 1
    return min(hi - lo, cap)


def delta(g: ReducedWord, B_max: int = 40) -> int:
    """Δ of the conjugate-axis family, equal to the least certified B."""
    return minimal_tight_B(g, B_max)


def choose_exponent(g: ReducedWord, mode: str, B: int, Delta: int) -> CancellationParams:
    ell = translation_length(g)
    if ell == 0:
        raise ValueError("g must be loxodromic")
    if mode == "coneoff":
        bound = 7 * Delta
    elif mode == "greendlinger":
        bound = 12 * B
    else:
        raise ValueError(f"unknown mode {mode!r}")
    n = bound // ell + 1
    return CancellationParams(g, B, Delta, n)


def check_epsilon_sc(g: ReducedWord, n: int, eps: Fraction, Delta: int) -> bool:
    return Fraction(eps) * n * translation_length(g) > Delta
