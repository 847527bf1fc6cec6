"""Pointwise path stabilizers, transporters and WPD certificates.

Over a finite field the vertex group A is finite, and so is the edge group
C = A ∩ B.  A path with at least one edge is anchored at its middle edge: an
element fixing the path fixes that edge, so it lies in ψ C ψ⁻¹ where ψ carries
the standard edge (idA, idB) onto it.  Enumerating C and filtering is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .automorphism import (
    CapExceeded,
    ReducedWord,
    affine_elements,
    core_elements,
)
from .bassserre import Axis, Vertex, act, edge_word, geodesic, is_adjacent
from .galois import Field

__all__ = [
    "ENUMERATION_CAP",
    "InfiniteStabilizer",
    "StabilizerSet",
    "TransporterSet",
    "WpdCertificate",
    "WpdInconclusive",
    "path_stabilizer",
    "transporter",
    "fix_pair",
    "wpd_certify",
    "is_finite_proxy",
    "affine_group_order",
    "core_group_order",
]

ENUMERATION_CAP = 10**7


class InfiniteStabilizer(ValueError):
    """The stabilizer of a lone B-vertex is infinite."""


def affine_group_order(F: Field) -> int:
    q = F.q
    return (q * q - 1) * (q * q - q) * q * q


def core_group_order(F: Field) -> int:
    q = F.q
    return (q - 1) ** 2 * q**3


@dataclass(frozen=True)
class StabilizerSet:
    path: tuple
    elements: tuple  # ReducedWord, sorted canonically
    anchor: tuple  # the anchoring vertex or edge

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class TransporterSet:
    source: tuple
    target: tuple
    witnesses: tuple

    def __bool__(self) -> bool:
        return bool(self.witnesses)


@dataclass(frozen=True)
class WpdCertificate:
    g: ReducedWord
    u: Vertex
    v: Vertex
    width: int
    offset: int
    stabilizer_order: int
    path: tuple


class WpdInconclusive(RuntimeError):
    """No window up to the requested width had a finite-type stabilizer."""

    def __init__(self, message: str, orders: dict):
        super().__init__(message)
        self.orders = orders


def _side_seq(P: Sequence[Vertex]) -> tuple:
    return tuple(v.side for v in P)


def _anchor_order(n: int, j: int) -> list[int]:
    """Path indices ordered by distance from the edge (j, j+1)."""
    order = []
    lo, hi = j - 1, j + 2
    while lo >= 0 or hi < n:
        if hi < n:
            order.append(hi)
            hi += 1
        if lo >= 0:
            order.append(lo)
            lo -= 1
    return order


def _matches(F: Field, c, src: list[Vertex], dst: list[Vertex], idx: list[int]) -> bool:
    cw = ReducedWord.from_core(F, c)
    for i in idx:
        if act(cw, src[i]) != dst[i]:
            return False
    return True


def _solve(F: Field, P: Sequence[Vertex], P2: Sequence[Vertex], cap: int) -> tuple[list[ReducedWord], tuple]:
    """All φ with φ(P[i]) = P2[i] for every i."""
    n = len(P)
    if n == 1:
        v, v2 = P[0], P2[0]
        if v.side != "A" or v2.side != "A":
            raise InfiniteStabilizer("a lone B-vertex has an infinite stabilizer")
        if affine_group_order(F) > cap:
            raise CapExceeded(f"|A| = {affine_group_order(F)} exceeds the cap {cap}")
        psi1 = ReducedWord(F, v.reps)
        psi2 = ReducedWord(F, v2.reps)
        psi1_inv = psi1.inverse()
        out = [psi2 * ReducedWord.from_affine(F, a) * psi1_inv for a in affine_elements(F)]
        return out, (v,)
    if core_group_order(F) > cap:
        raise CapExceeded(f"|C| = {core_group_order(F)} exceeds the cap {cap}")
    j = (n - 1) // 2
    psi1 = edge_word(F, P[j], P[j + 1])
    psi2 = edge_word(F, P2[j], P2[j + 1])
    psi1_inv, psi2_inv = psi1.inverse(), psi2.inverse()
    src = [act(psi1_inv, v) for v in P]
    dst = [act(psi2_inv, v) for v in P2]
    # the standard edge has to go to itself, sides included
    if {src[j], src[j + 1]} != {dst[j], dst[j + 1]} or src[j].side != dst[j].side:
        return [], (P[j], P[j + 1])
    idx = _anchor_order(n, j)
    out = []
    for c in core_elements(F):
        if _matches(F, c, src, dst, idx):
            out.append(psi2 * ReducedWord.from_core(F, c) * psi1_inv)
    return out, (P[j], P[j + 1])


def _check_path(P: Sequence[Vertex]) -> None:
    if not P:
        raise ValueError("empty path")
    if len(set(P)) != len(P):
        raise ValueError("path revisits a vertex")
    if any(not is_adjacent(a, b) for a, b in zip(P, P[1:])):
        raise ValueError("consecutive path vertices must be adjacent")


def path_stabilizer(F: Field, P: Sequence[Vertex], cap: int = ENUMERATION_CAP) -> StabilizerSet:
    """Every automorphism fixing each vertex of P."""
    _check_path(P)
    elems, anchor = _solve(F, P, P, cap)
    return StabilizerSet(tuple(P), tuple(sorted(elems, key=ReducedWord.sort_key)), anchor)


def transporter(
    F: Field, P: Sequence[Vertex], P2: Sequence[Vertex], cap: int = ENUMERATION_CAP
) -> TransporterSet:
    """Every automorphism carrying P[i] to P2[i] for all i."""
    _check_path(P)
    _check_path(P2)
    if len(P) != len(P2) or _side_seq(P) != _side_seq(P2):
        raise ValueError("paths must have the same length and side sequence")
    elems, _ = _solve(F, P, P2, cap)
    return TransporterSet(tuple(P), tuple(P2), tuple(sorted(elems, key=ReducedWord.sort_key)))


def fix_pair(F: Field, u: Vertex, v: Vertex, cap: int = ENUMERATION_CAP) -> StabilizerSet:
    return path_stabilizer(F, geodesic(u, v), cap)


def is_finite_proxy(F: Field, order: int) -> bool:
    """Whether a stabilizer of this order counts as finite for certification.

    Every stabilizer is finite over a finite field.  The infinite stabilizers
    seen over the algebraic closure show up here as unipotent subgroups, so a
    stabilizer counts as finite when its order is prime to the characteristic
    (equivalently, it has no element of order p).
    """
    return order % F.p != 0


def wpd_certify(
    g: ReducedWord, max_width: int, cap: int = ENUMERATION_CAP
) -> WpdCertificate:
    """Scan axis windows of width 1..max_width for a finite-type stabilizer.

    Windows of each width are tried at every offset 0..ℓ-1 from the axis base
    point, which covers all windows up to translation by g.
    """
    F = g.field
    ax = Axis(g)
    orders: dict = {}
    for width in range(1, max_width + 1):
        for off in range(ax.length):
            P = ax.vertices(off, off + width)
            st = path_stabilizer(F, P, cap)
            orders[(width, off)] = st.order
            if is_finite_proxy(F, st.order):
                return WpdCertificate(g, P[0], P[-1], width, off, st.order, tuple(P))
    smallest = min(orders.values()) if orders else math.inf
    raise WpdInconclusive(
        f"no window up to width {max_width} has a stabilizer of order prime to {F.p}"
        f" (smallest order seen: {smallest})",
        orders,
    )
