"""Plane polynomial automorphisms and the amalgam A *_C B.

A is the affine group, B the elementary maps (ax + P(y), by + c) and C = A ∩ B
the maps (αx + βy + γ, δy + ε).  Group elements are carried around as
``ReducedWord`` normal forms; ``PolyMap`` is the explicit polynomial pair used
for input, output and as an independent oracle.

Small tuple encodings used throughout:

* affine ``(a, b, c, d, e, f)`` is the map (ax + by + e, cx + dy + f)
* elementary ``(a, P, b, c)`` is (ax + P(y), by + c) with P a coefficient
  tuple (low -> high, no trailing zeros)
* core ``(α, β, γ, δ, ε)`` is (αx + βy + γ, δy + ε)

Composition is always ``f∘g``: g is applied first.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .galois import BiPoly, Field, FieldError, parse_poly

__all__ = [
    "FactorizationError",
    "UnsupportedCase",
    "CapExceeded",
    "PolyMap",
    "Syllable",
    "ReducedWord",
    "CyclicWord",
    "compose",
    "invert",
    "classify",
    "jvdk_factorize",
    "normalize",
    "cyclic_reduce",
    "translation_length",
    "are_conjugate",
    "enumerate_conjugates",
    "core_elements",
    "affine_elements",
    "parse_map",
    "standard_maps",
    "a_lambda",
    "pingpong_generator",
]


class FactorizationError(ValueError):
    """The input map is not a polynomial automorphism."""


class UnsupportedCase(ValueError):
    """Requested case falls outside what the algorithm handles."""


class CapExceeded(RuntimeError):
    """An enumeration would exceed its configured size cap."""


# ---------------------------------------------------------------------------
# univariate helpers (coefficient tuples, low -> high)


def _trim(P: Sequence[int]) -> tuple[int, ...]:
    P = tuple(P)
    n = len(P)
    while n and P[n - 1] == 0:
        n -= 1
    return P[:n]


def _uadd(F: Field, P: Sequence[int], Q: Sequence[int]) -> tuple[int, ...]:
    if len(P) < len(Q):
        P, Q = Q, P
    add = F.add
    return _trim([add(a, b) for a, b in zip(P, Q)] + list(P[len(Q):]))


def _uscale(F: Field, s: int, P: Sequence[int]) -> tuple[int, ...]:
    if s == 1:
        return tuple(P)
    mul = F.mul
    return _trim([mul(s, c) for c in P])


def _ulinsub(F: Field, P: Sequence[int], b: int, c: int) -> tuple[int, ...]:
    """P(b*y + c) by Horner."""
    if c == 0:
        if b == 1:
            return tuple(P)
        return _trim([F.mul(coef, F.pow(b, i)) for i, coef in enumerate(P)])
    add, mul = F.add, F.mul
    acc: list[int] = []
    for coef in reversed(P):
        # acc <- acc * (b y + c) + coef
        new = [0] * (len(acc) + 1)
        for i, v in enumerate(acc):
            if v:
                new[i] = add(new[i], mul(v, c))
                new[i + 1] = add(new[i + 1], mul(v, b))
        new[0] = add(new[0], coef)
        acc = new
    return _trim(acc)


# ---------------------------------------------------------------------------
# group-law kernels on tuples


def aff_mul(F: Field, f, g):
    a1, b1, c1, d1, e1, f1 = f
    a2, b2, c2, d2, e2, f2 = g
    add, mul = F.add, F.mul
    return (
        add(mul(a1, a2), mul(b1, c2)),
        add(mul(a1, b2), mul(b1, d2)),
        add(mul(c1, a2), mul(d1, c2)),
        add(mul(c1, b2), mul(d1, d2)),
        add(add(mul(a1, e2), mul(b1, f2)), e1),
        add(add(mul(c1, e2), mul(d1, f2)), f1),
    )


def aff_inv(F: Field, f):
    a, b, c, d, e, f_ = f
    det = F.sub(F.mul(a, d), F.mul(b, c))
    if det == 0:
        raise FactorizationError("singular affine map")
    di = F.inv(det)
    mul, neg = F.mul, F.neg
    na, nb, nc, nd = mul(d, di), neg(mul(b, di)), neg(mul(c, di)), mul(a, di)
    ne = neg(F.add(mul(na, e), mul(nb, f_)))
    nf = neg(F.add(mul(nc, e), mul(nd, f_)))
    return (na, nb, nc, nd, ne, nf)


def aff_decompose(F: Field, f):
    """Split an affine map as a_λ ∘ core; λ is None when the map lies in C."""
    a, b, c, d, e, f_ = f
    if c == 0:
        return None, (a, b, e, d, f_)
    lam = F.div(a, c)
    mul, sub = F.mul, F.sub
    return lam, (c, d, f_, sub(b, mul(lam, d)), sub(e, mul(lam, f_)))


def elem_mul(F: Field, f, g):
    a1, P1, b1, c1 = f
    a2, P2, b2, c2 = g
    mul, add = F.mul, F.add
    P = _uadd(F, _uscale(F, a1, P2), _ulinsub(F, P1, b2, c2))
    return (mul(a1, a2), P, mul(b1, b2), add(mul(b1, c2), c1))


def elem_inv(F: Field, f):
    a, P, b, c = f
    ai, bi = F.inv(a), F.inv(b)
    nc = F.neg(F.mul(c, bi))
    P2 = _uscale(F, F.neg(ai), _ulinsub(F, P, bi, nc))
    return (ai, P2, bi, nc)


def elem_decompose(F: Field, f):
    """Split an elementary map as e_R ∘ core; R is () when the map lies in C."""
    a, P, b, c = f
    Q = _ulinsub(F, P, F.inv(b), F.neg(F.mul(c, F.inv(b))))
    q0 = Q[0] if len(Q) > 0 else 0
    q1 = Q[1] if len(Q) > 1 else 0
    R = _trim(Q[2:])
    return R, (a, F.mul(q1, b), F.add(q0, F.mul(q1, c)), b, c)


def core_mul(F: Field, f, g):
    a1, b1, c1, d1, e1 = f
    a2, b2, c2, d2, e2 = g
    add, mul = F.add, F.mul
    return (
        mul(a1, a2),
        add(mul(a1, b2), mul(b1, d2)),
        add(add(mul(a1, c2), mul(b1, e2)), c1),
        mul(d1, d2),
        add(mul(d1, e2), e1),
    )


def core_inv(F: Field, f):
    _, core = aff_decompose(F, aff_inv(F, core_to_aff(f)))
    return core


def core_to_aff(c):
    al, be, ga, de, ep = c
    return (al, be, 0, de, ga, ep)


def core_to_elem(c):
    al, be, ga, de, ep = c
    return (al, _trim((ga, be)), de, ep)


CORE_ID = (1, 0, 0, 1, 0)


def a_rep(lam: int):
    """The transversal a_λ = (λx + y, x) as an affine tuple."""
    return (lam, 1, 1, 0, 0, 0)


def a_rep_inv(F: Field, lam: int):
    return (0, 1, 1, F.neg(lam), 0, 0)


def b_rep(R: tuple[int, ...]):
    """The transversal (x + y^2 R(y), y) as an elementary tuple."""
    return (1, (0, 0) + tuple(R), 1, 0)


def b_rep_inv(F: Field, R: tuple[int, ...]):
    return (1, (0, 0) + tuple(F.neg(c) for c in R), 1, 0)


# ---------------------------------------------------------------------------
# normal forms


@dataclass(frozen=True)
class ReducedWord:
    """Normal form s_1 ∘ ... ∘ s_n ∘ core.

    Each s_i is a transversal key: ``('A', λ)`` for a_λ or ``('B', R)`` for
    (x + y²R(y), y).  Sides alternate and the core lies in C.  Two words are
    equal exactly when they represent the same automorphism.
    """

    field: Field
    reps: tuple = ()
    core: tuple = CORE_ID

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls, field: Field) -> "ReducedWord":
        return cls(field, (), CORE_ID)

    @classmethod
    def from_affine(cls, field: Field, f) -> "ReducedWord":
        return cls.identity(field).mul_affine(f)

    @classmethod
    def from_elementary(cls, field: Field, f) -> "ReducedWord":
        return cls.identity(field).mul_elementary(f)

    @classmethod
    def from_core(cls, field: Field, c) -> "ReducedWord":
        return cls(field, (), tuple(c))

    @classmethod
    def from_reps(cls, field: Field, reps: Iterable) -> "ReducedWord":
        w = cls.identity(field)
        for key in reps:
            w = w.mul_rep(key)
        return w

    # -- basic queries ----------------------------------------------------
    def __len__(self) -> int:
        return len(self.reps)

    def is_identity(self) -> bool:
        return not self.reps and self.core == CORE_ID

    def last_side(self) -> str | None:
        return self.reps[-1][0] if self.reps else None

    def first_side(self) -> str | None:
        return self.reps[0][0] if self.reps else None

    def sort_key(self) -> tuple:
        return (len(self.reps), self.reps, self.core)

    # -- right multiplication by single factors -----------------------------
    def mul_affine(self, h) -> "ReducedWord":
        F = self.field
        tail = aff_mul(F, core_to_aff(self.core), h)
        reps = self.reps
        if reps and reps[-1][0] == "A":
            tail = aff_mul(F, a_rep(reps[-1][1]), tail)
            reps = reps[:-1]
        lam, core = aff_decompose(F, tail)
        if lam is not None:
            reps = reps + (("A", lam),)
        return ReducedWord(F, reps, core)

    def mul_elementary(self, h) -> "ReducedWord":
        F = self.field
        tail = elem_mul(F, core_to_elem(self.core), h)
        reps = self.reps
        if reps and reps[-1][0] == "B":
            tail = elem_mul(F, b_rep(reps[-1][1]), tail)
            reps = reps[:-1]
        R, core = elem_decompose(F, tail)
        if R:
            reps = reps + (("B", R),)
        return ReducedWord(F, reps, core)

    def mul_core(self, c) -> "ReducedWord":
        return ReducedWord(self.field, self.reps, core_mul(self.field, self.core, c))

    def mul_rep(self, key) -> "ReducedWord":
        side, val = key
        if side == "A":
            return self.mul_affine(a_rep(val))
        return self.mul_elementary(b_rep(val))

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        if self.field != other.field:
            raise FieldError("field mismatch")
        w = self
        for key in other.reps:
            w = w.mul_rep(key)
        return w.mul_core(other.core)

    def inverse(self) -> "ReducedWord":
        F = self.field
        w = ReducedWord(F, (), core_inv(F, self.core))
        for side, val in reversed(self.reps):
            if side == "A":
                w = w.mul_affine(a_rep_inv(F, val))
            else:
                w = w.mul_elementary(b_rep_inv(F, val))
        return w

    def conj(self, phi: "ReducedWord") -> "ReducedWord":
        """φ ∘ self ∘ φ⁻¹."""
        return phi * self * phi.inverse()

    def __pow__(self, n: int) -> "ReducedWord":
        if n < 0:
            return self.inverse() ** (-n)
        result = ReducedWord.identity(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def prefix(self, i: int) -> "ReducedWord":
        """The product of the first i transversal syllables (no core)."""
        return ReducedWord(self.field, self.reps[:i], CORE_ID)

    # -- explicit maps -----------------------------------------------------
    def to_polymap(self) -> "PolyMap":
        F = self.field
        m = PolyMap.identity(F)
        for side, val in self.reps:
            rep = PolyMap.from_affine(F, a_rep(val)) if side == "A" else PolyMap.from_elementary(F, b_rep(val))
            m = compose(m, rep)
        return compose(m, PolyMap.from_affine(F, core_to_aff(self.core)))

    def degree(self) -> int:
        d = 1
        for side, val in self.reps:
            if side == "B":
                d *= len(val) + 1
        return d

    def syllables(self) -> list["Syllable"]:
        """Syllables with the core folded into the last one."""
        F = self.field
        if not self.reps:
            return [Syllable.of(PolyMap.from_affine(F, core_to_aff(self.core)))]
        out = []
        n = len(self.reps)
        for i, (side, val) in enumerate(self.reps):
            if side == "A":
                m = PolyMap.from_affine(F, a_rep(val))
                if i == n - 1:
                    m = PolyMap.from_affine(F, aff_mul(F, a_rep(val), core_to_aff(self.core)))
            else:
                m = PolyMap.from_elementary(F, b_rep(val))
                if i == n - 1:
                    m = PolyMap.from_elementary(F, elem_mul(F, b_rep(val), core_to_elem(self.core)))
            out.append(Syllable("AffineOnly" if side == "A" else "ElementaryOnly", m))
        return out

    def __str__(self) -> str:
        return str(self.to_polymap())

    def describe(self) -> str:
        """Compact syllable description, e.g. ``B[1] A[0] | core``."""
        F = self.field
        parts = []
        for side, val in self.reps:
            if side == "A":
                parts.append(f"A[{F.format(val)}]")
            else:
                parts.append("B[" + ",".join(F.format(c) for c in val) + "]")
        parts.append("core(" + ",".join(F.format(c) for c in self.core) + ")")
        return " ".join(parts)

    def to_json(self) -> dict:
        F = self.field
        return {
            "syllables": [
                [side, F.to_vector(val)] if side == "A" else [side, [F.to_vector(c) for c in val]]
                for side, val in self.reps
            ],
            "core": [F.to_vector(c) for c in self.core],
        }


@dataclass(frozen=True)
class CyclicWord:
    core: ReducedWord
    conjugator: ReducedWord

    def recompose(self) -> ReducedWord:
        return self.core.conj(self.conjugator)


# ---------------------------------------------------------------------------
# explicit polynomial maps


@dataclass(frozen=True)
class PolyMap:
    """The automorphism (x, y) ↦ (fx, fy)."""

    fx: BiPoly
    fy: BiPoly

    @property
    def field(self) -> Field:
        return self.fx.field

    @classmethod
    def identity(cls, F: Field) -> "PolyMap":
        return cls(BiPoly.x(F), BiPoly.y(F))

    @classmethod
    def from_affine(cls, F: Field, f) -> "PolyMap":
        a, b, c, d, e, f_ = f
        return cls(
            BiPoly(F, {(1, 0): a, (0, 1): b, (0, 0): e}),
            BiPoly(F, {(1, 0): c, (0, 1): d, (0, 0): f_}),
        )

    @classmethod
    def from_elementary(cls, F: Field, f) -> "PolyMap":
        a, P, b, c = f
        fx = BiPoly(F, {(1, 0): a}) + BiPoly.univariate_y(F, P)
        return cls(fx, BiPoly(F, {(0, 1): b, (0, 0): c}))

    def __call__(self, other: "PolyMap") -> "PolyMap":
        return compose(self, other)

    def to_word(self) -> ReducedWord:
        return _factor_to_word(self)

    def __str__(self) -> str:
        return f"({self.fx}, {self.fy})"

    def to_json(self) -> dict:
        return {"fx": self.fx.to_json(), "fy": self.fy.to_json()}

    @classmethod
    def from_json(cls, F: Field, data) -> "PolyMap":
        return cls(BiPoly.from_json(F, data["fx"]), BiPoly.from_json(F, data["fy"]))

    def degree(self) -> int:
        return max(self.fx.degree(), self.fy.degree())


@dataclass(frozen=True)
class Syllable:
    kind: str  # AffineOnly | ElementaryOnly | Core
    map: PolyMap

    @classmethod
    def of(cls, m: PolyMap) -> "Syllable":
        kind = classify(m)
        if kind == "General":
            raise ValueError("a syllable must lie in A or B")
        return cls(kind, m)


def compose(f: PolyMap, g: PolyMap) -> PolyMap:
    """f∘g."""
    if f.field != g.field:
        raise FieldError("field mismatch")
    return PolyMap(f.fx.substitute(g.fx, g.fy), f.fy.substitute(g.fx, g.fy))


def invert(f: PolyMap) -> PolyMap:
    return f.to_word().inverse().to_polymap()


def _is_affine(m: PolyMap) -> bool:
    return all(i + j <= 1 for P in (m.fx, m.fy) for (i, j), _ in P.terms)


def _is_elementary(m: PolyMap) -> bool:
    fy_ok = all(i == 0 and j <= 1 for (i, j), _ in m.fy.terms) and m.fy.coeff(0, 1) != 0
    fx_ok = all(i == 0 or (i, j) == (1, 0) for (i, j), _ in m.fx.terms) and m.fx.coeff(1, 0) != 0
    return fy_ok and fx_ok


def classify(f: PolyMap) -> str:
    aff = _is_affine(f)
    ele = _is_elementary(f)
    if aff and ele:
        return "Core"
    if aff:
        return "AffineOnly"
    if ele:
        return "ElementaryOnly"
    return "General"


def _affine_tuple(m: PolyMap):
    fx, fy = m.fx, m.fy
    return (fx.coeff(1, 0), fx.coeff(0, 1), fy.coeff(1, 0), fy.coeff(0, 1), fx.coeff(0, 0), fy.coeff(0, 0))


def _factor_to_word(f: PolyMap) -> ReducedWord:
    """Degree-reduction factorization, stripping elementary factors on the left."""
    F = f.field
    fx, fy = f.fx, f.fy
    if fx.is_zero() or fy.is_zero():
        raise FactorizationError("a coordinate is zero")
    pieces: list[tuple[str, tuple]] = []
    swap = (0, 1, 1, 0, 0, 0)
    while max(fx.degree(), fy.degree()) > 1:
        d1, d2 = fx.degree(), fy.degree()
        if d2 > d1:
            pieces.append(("A", swap))
            fx, fy = fy, fx
            d1, d2 = d2, d1
        if d1 % d2:
            raise FactorizationError(f"degrees {d1}, {d2} are incompatible with an automorphism")
        m = d1 // d2
        lead = fy.leading_form() ** m
        (e0, c0) = lead.terms[0]
        c1 = fx.coeff(*e0)
        if c1 == 0:
            raise FactorizationError("leading forms are not proportional")
        s = F.div(c1, c0)
        if fx.leading_form() != lead.scale(s):
            raise FactorizationError("leading forms are not proportional")
        # f = (x + s y^m, y) ∘ (fx - s fy^m, fy)
        pieces.append(("B", (1, _trim([0] * m + [s]), 1, 0)))
        fx = fx - (fy ** m).scale(s)
        if fx.is_zero():
            raise FactorizationError("map is not injective")
    aff = _affine_tuple(PolyMap(fx, fy))
    if F.sub(F.mul(aff[0], aff[3]), F.mul(aff[1], aff[2])) == 0:
        raise FactorizationError("affine remainder is singular")
    w = ReducedWord.identity(F)
    for side, tup in pieces:
        w = w.mul_affine(tup) if side == "A" else w.mul_elementary(tup)
    return w.mul_affine(aff)


def jvdk_factorize(f: PolyMap) -> list[Syllable]:
    """Alternating A/B syllables whose composition, in order, is f."""
    return f.to_word().syllables()


def normalize(word: Sequence[Syllable | PolyMap], field: Field | None = None) -> ReducedWord:
    if not word:
        if field is None:
            raise ValueError("field is required for an empty word")
        return ReducedWord.identity(field)
    maps = [s.map if isinstance(s, Syllable) else s for s in word]
    F = maps[0].field
    w = ReducedWord.identity(F)
    for m in maps:
        kind = classify(m)
        if kind in ("AffineOnly", "Core"):
            w = w.mul_affine(_affine_tuple(m))
        elif kind == "ElementaryOnly":
            fx = m.fx
            P = _trim([fx.coeff(0, j) for j in range(fx.degree_in("y") + 1)])
            w = w.mul_elementary((fx.coeff(1, 0), P, m.fy.coeff(0, 1), m.fy.coeff(0, 0)))
        else:
            w = w * m.to_word()
    return w


def cyclic_reduce(w: ReducedWord) -> CyclicWord:
    F = w.field
    conj = ReducedWord.identity(F)
    cur = w
    # conj ∘ cur ∘ conj⁻¹ == w throughout
    while len(cur) >= 3 and len(cur) % 2 == 1:
        first, last = cur.reps[0], cur.reps[-1]
        # s_1⁻¹ (s_1 … s_n c) s_1 = s_2 … s_{n-1} · (s_n c s_1)
        cur = ReducedWord(F, cur.reps[1:-1], CORE_ID).mul_rep(last).mul_core(cur.core).mul_rep(first)
        conj = conj.mul_rep(first)
    return CyclicWord(cur, conj)


def translation_length(w: ReducedWord) -> int:
    n = len(cyclic_reduce(w).core)
    return n if n >= 2 else 0


@functools.lru_cache(maxsize=None)
def core_elements(F: Field) -> tuple[tuple, ...]:
    """All of C = A ∩ B, identity first."""
    nz, allv = list(F.nonzero()), list(F.elements())
    out = [CORE_ID]
    for al, de in itertools.product(nz, nz):
        for be, ga, ep in itertools.product(allv, allv, allv):
            c = (al, be, ga, de, ep)
            if c != CORE_ID:
                out.append(c)
    return tuple(out)


def affine_elements(F: Field) -> Iterator[tuple]:
    """All of A as affine tuples."""
    allv = list(F.elements())
    for a, b, c, d in itertools.product(allv, repeat=4):
        if F.sub(F.mul(a, d), F.mul(b, c)) == 0:
            continue
        for e, f in itertools.product(allv, allv):
            yield (a, b, c, d, e, f)


def _rotations(u: ReducedWord) -> Iterator[tuple[ReducedWord, ReducedWord]]:
    """(π, π⁻¹ u π) for π ranging over syllable prefixes of u."""
    for j in range(len(u)):
        pi = u.prefix(j)
        yield pi, pi.inverse() * u * pi


def are_conjugate(w1: ReducedWord, w2: ReducedWord) -> ReducedWord | None:
    """A witness φ with φ w1 φ⁻¹ = w2, or None."""
    F = w1.field
    if w1 == w2:
        return ReducedWord.identity(F)
    l1, l2 = translation_length(w1), translation_length(w2)
    if l1 != l2:
        return None
    if l1 == 0:
        in_a = all(len(w) == 0 or (len(w) == 1 and w.reps[0][0] == "A") for w in (w1, w2))
        if not in_a:
            raise UnsupportedCase("elliptic conjugacy is only searched inside A")
        for f in affine_elements(F):
            phi = ReducedWord.from_affine(F, f)
            if w1.conj(phi) == w2:
                return phi
        return None
    c1, c2 = cyclic_reduce(w1), cyclic_reduce(w2)
    u2 = c2.core
    k1_inv = c1.conjugator.inverse()
    for pi, rot in _rotations(c1.core):
        # only words with matching syllable sides can be C-twists of each other
        if rot.reps[0][0] != u2.reps[0][0]:
            continue
        for c in core_elements(F):
            cw = ReducedWord.from_core(F, c)
            if rot.conj(cw) == u2:
                return c2.conjugator * cw * pi.inverse() * k1_inv
    return None


def _b_transversals(F: Field, degree_cap: int) -> list[tuple[int, ...]]:
    out = []
    for deg in range(degree_cap + 1):
        for coeffs in itertools.product(F.elements(), repeat=deg):
            for lead in F.nonzero():
                out.append(tuple(coeffs) + (lead,))
    return out


def enumerate_conjugates(
    g: ReducedWord, L: int, degree_cap: int = 0, cap: int = 200_000
) -> list[ReducedWord]:
    """φ g φ⁻¹ for φ over transversal words of syllable length ≤ L.

    B-syllables (x + y²R(y), y) are restricted to deg R ≤ degree_cap.
    Results are deduplicated and listed in a deterministic order.
    """
    if L < 0:
        raise ValueError("L must be >= 0")
    F = g.field
    a_keys = [("A", lam) for lam in F.elements()]
    b_keys = [("B", R) for R in _b_transversals(F, degree_cap)]
    na, nb = len(a_keys), len(b_keys)
    est = 1
    ends_a = ends_b = 1  # words of current length ending on each side
    for n in range(1, L + 1):
        if n == 1:
            ends_a, ends_b = na, nb
        else:
            ends_a, ends_b = ends_b * na, ends_a * nb
        est += ends_a + ends_b
    if est > cap:
        raise CapExceeded(f"about {est} conjugators exceed the cap {cap}")
    seen: dict[ReducedWord, None] = {g: None}
    frontier = [ReducedWord.identity(F)]
    for _ in range(L):
        nxt = []
        for phi in frontier:
            last = phi.last_side()
            for key in (a_keys if last != "A" else []) + (b_keys if last != "B" else []):
                nphi = ReducedWord(F, phi.reps + (key,), CORE_ID)
                nxt.append(nphi)
                seen.setdefault(g.conj(nphi), None)
        frontier = nxt
    return list(seen)


# ---------------------------------------------------------------------------
# text input and named maps


def _split_pair(text: str) -> tuple[str, str]:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise FactorizationError(f"map must look like '(fx, fy)': {text!r}")
    body = s[1:-1]
    depth = 0
    for i, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1:]
    raise FactorizationError(f"map must have two coordinates: {text!r}")


def parse_map(F: Field, text: str, check: bool = True) -> PolyMap:
    """Parse ``(x^2 - y, x)``; with ``check`` the map must be an automorphism."""
    a, b = _split_pair(text)
    try:
        m = PolyMap(parse_poly(F, a), parse_poly(F, b))
    except FieldError as exc:
        raise FactorizationError(str(exc)) from exc
    if check:
        m.to_word()
    return m


def standard_maps(F: Field) -> dict[str, PolyMap]:
    """Named generators used by the word grammar and the experiments."""
    t = PolyMap.from_affine(F, (0, 1, 1, 0, 0, 0))
    if F.p == 2:
        b = parse_map(F, "(x + y^3, y)")
    else:
        b = parse_map(F, "(-x + y^2, y)")
    return {"t": t, "b": b, "bt": compose(b, t), "id": PolyMap.identity(F)}


def a_lambda(F: Field, lam: int | None) -> ReducedWord:
    """a_λ = (λx + y, x); λ = None stands for the point at infinity (identity)."""
    if lam is None:
        return ReducedWord.identity(F)
    return ReducedWord.from_affine(F, a_rep(lam))


def pingpong_generator(F: Field, lam: int | None) -> ReducedWord:
    """g_λ = a_λ ∘ b ∘ a_λ⁻¹."""
    b = standard_maps(F)["b"].to_word()
    return b.conj(a_lambda(F, lam))
