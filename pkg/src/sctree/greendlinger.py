"""Admissible presentations of normal-closure elements and Greendlinger configurations.

An element h of the normal closure of gⁿ is written h = h_m ⋯ h_1 with each
h_i a conjugate of g^{±n}.  From a base point x₀ the chain a_i, b_i, x_i
follows the factors one at a time; the presentation is admissible when every
approach segment [x_{i-1}, a_i] is neutral.  Admissible, pair-free
presentations admit configurations, and a configuration bounds ℓ(h) from below.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .automorphism import (
    CORE_ID,
    ReducedWord,
    are_conjugate,
    core_elements,
    translation_length,
    _b_transversals,
)
from .bassserre import ID_A, Axis, Vertex, act, distance, geodesic, median
from .smallcancel import CancellationParams, _finder, is_neutral

__all__ = [
    "Presentation",
    "Chain",
    "Segment",
    "Configuration",
    "ConfigurationError",
    "NotAdmissible",
    "random_conjugator",
    "random_presentation",
    "compute_chain",
    "is_admissible",
    "make_admissible",
    "reduce_pairs",
    "minimize",
    "extract_configuration",
    "validate_configuration",
    "configuration_violations",
    "SampleResult",
    "sct_sample",
    "sct_verify",
]


class NotAdmissible(ValueError):
    pass


class ConfigurationError(AssertionError):
    """A step of the configuration induction broke one of its own guarantees."""

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(f"{message}: {diagnostics}")
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class Presentation:
    base: Vertex
    factors: tuple  # (ψ_i, ±1), applied in order h_1 first
    params: CancellationParams

    @property
    def m(self) -> int:
        return len(self.factors)

    def factor(self, i: int) -> ReducedWord:
        """h_{i+1} = ψ g^{±n} ψ⁻¹ (0-based index)."""
        psi, sign = self.factors[i]
        return _power(self.params, sign).conj(psi)

    def elements(self) -> list[ReducedWord]:
        return [self.factor(i) for i in range(self.m)]

    def element(self) -> ReducedWord:
        h = ReducedWord.identity(self.params.g.field)
        for f in self.elements():
            h = f * h
        return h

    def with_factors(self, factors: Sequence) -> "Presentation":
        return Presentation(self.base, tuple(factors), self.params)

    def with_base(self, base: Vertex) -> "Presentation":
        return Presentation(base, self.factors, self.params)

    def to_json(self) -> dict:
        return {
            "base": list(map(str, self.base.reps)) + [self.base.side],
            "factors": [{"conjugator": psi.describe(), "sign": s} for psi, s in self.factors],
        }


_POWERS: dict = {}


def _power(params: CancellationParams, sign: int) -> ReducedWord:
    key = (params.g, params.n, sign)
    w = _POWERS.get(key)
    if w is None:
        w = params.g ** (sign * params.n)
        _POWERS[key] = w
    return w


@dataclass(frozen=True)
class Chain:
    a: tuple
    b: tuple
    x: tuple  # x[0] is the base point, x[i] = h_i(x[i-1])


def compute_chain(p: Presentation) -> Chain:
    a, b, x = [], [], [p.base]
    for h in p.elements():
        ax = Axis(h)
        ai = ax.project(x[-1])
        a.append(ai)
        b.append(act(h, ai))
        x.append(act(h, x[-1]))
    return Chain(tuple(a), tuple(b), tuple(x))


def _bad_indices(p: Presentation, chain: Chain) -> list[int]:
    return [i for i in range(p.m) if not is_neutral(geodesic(chain.x[i], chain.a[i]), p.params)]


def is_admissible(p: Presentation) -> bool:
    return not _bad_indices(p, compute_chain(p))


def _split_factor(p: Presentation, chain: Chain, i: int) -> list:
    """Rewrite h = (h f⁻¹ h⁻¹)·h·f for the longest relator f on [x_{i-1}, a_i]."""
    S = geodesic(chain.x[i], chain.a[i])
    hit = _finder(p.params.g, p.params.n).max_relator(S)
    # support f = τ⁻¹ g^{±n} τ translates from the start of the relator toward a_i
    tau = hit.witness
    sign = 1 if hit.support == _power(p.params, 1).conj(tau.inverse()) else -1
    psi_f = tau.inverse()
    psi_h, s_h = p.factors[i]
    h = p.factor(i)
    return [(psi_f, sign), (psi_h, s_h), (h * psi_f, -sign)]


def make_admissible(p: Presentation, max_rounds: int = 10_000) -> tuple[Presentation, int]:
    """Rewrite until every approach segment is neutral; returns (presentation, rounds).

    All bad indices are split in the same round.  The longest bad approach
    segment shrinks every round, which bounds the number of rounds.
    """
    rounds = 0
    while True:
        chain = compute_chain(p)
        bad = set(_bad_indices(p, chain))
        if not bad:
            return p, rounds
        if rounds >= max_rounds:
            raise RuntimeError(f"make_admissible did not settle in {max_rounds} rounds")
        new = []
        for i in range(p.m):
            new.extend(_split_factor(p, chain, i) if i in bad else [p.factors[i]])
        p = p.with_factors(new)
        rounds += 1


def _find_pair(hs: Sequence[ReducedWord]) -> tuple[int, int] | None:
    inv = {}
    for j, h in enumerate(hs):
        i = inv.get(h)
        if i is not None:
            return i, j
        inv.setdefault(h.inverse(), j)
    return None


def reduce_pairs(p: Presentation) -> Presentation:
    """Remove one pair h_j = h_i⁻¹ (j > i) at a time until none is left.

    Factors strictly between the pair are conjugated by h_i⁻¹.  The result is
    re-made admissible after each elimination.
    """
    p, _ = make_admissible(p)
    while True:
        hs = p.elements()
        pair = _find_pair(hs)
        if pair is None:
            return p
        i, j = pair
        hi_inv = hs[i].inverse()
        mid = [(hi_inv * psi, s) for psi, s in p.factors[i + 1:j]]
        p = p.with_factors(list(p.factors[:i]) + mid + list(p.factors[j + 1:]))
        p, _ = make_admissible(p)


def minimize(p: Presentation) -> tuple[Presentation, int]:
    """make_admissible then reduce_pairs; returns (presentation, rounds of the first pass)."""
    p, rounds = make_admissible(p)
    return reduce_pairs(p), rounds


def random_conjugator(F, rng: random.Random, conj_len: int, degree_cap: int = 1) -> ReducedWord:
    """A reduced word with up to conj_len transversal syllables and a random core."""
    a_keys = [("A", lam) for lam in F.elements()]
    b_keys = [("B", R) for R in _b_transversals(F, degree_cap)]
    length = rng.randint(0, conj_len)
    side = rng.choice("AB")
    reps = []
    for _ in range(length):
        reps.append(rng.choice(a_keys if side == "A" else b_keys))
        side = "B" if side == "A" else "A"
    cores = core_elements(F)
    return ReducedWord(F, tuple(reps), CORE_ID).mul_core(rng.choice(cores))


def random_presentation(seed: int, m: int, conj_len: int, params: CancellationParams) -> Presentation:
    if m < 1:
        raise ValueError("m must be at least 1")
    rng = random.Random(seed)
    F = params.g.field
    factors = [(random_conjugator(F, rng, conj_len), rng.choice((1, -1))) for _ in range(m)]
    return Presentation(ID_A, tuple(factors), params)


# ---------------------------------------------------------------------------
# configurations


@dataclass(frozen=True)
class Segment:
    kind: str  # "neutral" or "relator"
    support: int | None = None  # 0-based factor index for relators


@dataclass
class Configuration:
    points: list  # c_{-1}, c_0, ..., c_{k+1}
    labels: list  # labels[i] describes [c_i, c_{i+1}] for i = 0..k
    j: int
    case: str = ""
    monitors: dict = dc_field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.points) - 3

    def to_json(self) -> dict:
        return {
            "order": self.k,
            "case": self.case,
            "labels": [lab.kind if lab.support is None else f"relator:h{lab.support + 1}" for lab in self.labels],
        }


def _between(u: Vertex, w: Vertex, v: Vertex) -> bool:
    """w lies on [u, v]."""
    return distance(u, w) + distance(w, v) == distance(u, v)


def extract_configuration(p: Presentation, j: int, chain: Chain | None = None) -> Configuration:
    """Configuration of order k for [x₀, x_j], built factor by factor."""
    if not 1 <= j <= p.m:
        raise ValueError("j out of range")
    chain = chain or compute_chain(p)
    if _bad_indices(p, chain):
        raise NotAdmissible("presentation is not admissible")
    B = p.params.B
    ell = p.params.ell
    x0 = chain.x[0]
    conf = Configuration([x0, chain.a[0], chain.b[0], chain.x[1]], [Segment("relator", 0), Segment("neutral")], 1, "base")
    for jj in range(1, j):
        xj, xn = chain.x[jj], chain.x[jj + 1]
        a, b = chain.a[jj], chain.b[jj]
        pt = median(x0, xj, xn)
        c0 = conf.points[1]
        diag = {"j": jj + 1, "order": conf.k}
        # c0 sits before the branch point with room to spare; b sits beyond it
        mon_c0 = _between(x0, c0, pt) and c0 != pt and distance(c0, pt) > 2 * B
        mon_b = _between(xn, b, pt) and b != pt and 3 * distance(b, pt) > ell
        conf.monitors = {"c0_before_branch": mon_c0, "b_beyond_branch": mon_b}
        if not (mon_c0 and mon_b):
            raise ConfigurationError("branch-point monitor failed", {**diag, **conf.monitors})
        if _between(xn, a, pt):
            conf = Configuration([x0, a, b, xn], [Segment("relator", jj), Segment("neutral")], jj + 1, "a")
            continue
        if not (_between(pt, a, xj) and a != pt):
            raise ConfigurationError("a_{j+1} is off the tripod", diag)
        if distance(pt, a) <= 2 * B:
            conf = Configuration([x0, pt, b, xn], [Segment("relator", jj), Segment("neutral")], jj + 1, "b")
            continue
        # case (c): p ∈ ]c_i, c_{i+1}]
        pts = conf.points
        d_p = distance(x0, pt)
        idx = None
        for i in range(0, len(pts) - 2):
            lo, hi = distance(x0, pts[i + 1]), distance(x0, pts[i + 2])
            if lo < d_p <= hi:
                idx = i
                break
        if idx is None:
            raise ConfigurationError("branch point not inside the configuration", diag)
        kept = pts[: idx + 2] + [pt, b, xn]
        labels = conf.labels[: idx + 1] + [Segment("relator", jj), Segment("neutral")]
        conf = Configuration(kept, labels, jj + 1, "c0" if idx == 0 else "c")
    if j >= 2 and conf.k == 1:
        far = distance(x0, conf.points[1]) > 2 * B
        conf.monitors["initial_segment_long"] = far
        if not far:
            raise ConfigurationError("order-1 configuration with a short initial segment", {"j": j})
    return conf


def _oriented_on_axis(h: ReducedWord, u: Vertex, v: Vertex) -> bool:
    """[u, v] ⊂ axe(h) and h translates from u toward v."""
    ax = Axis(h)
    if not (ax.contains(u) and ax.contains(v)):
        return False
    return ax.position(u) < ax.position(v)


def validate_configuration(c: Configuration, p: Presentation, j: int, chain: Chain | None = None) -> bool:
    """Re-check the configuration axioms from scratch."""
    return not configuration_violations(c, p, j, chain)


def configuration_violations(c: Configuration, p: Presentation, j: int, chain: Chain | None = None) -> list[str]:
    chain = chain or compute_chain(p)
    B, ell = p.params.B, p.params.ell
    pts, labels = c.points, c.labels
    out = []
    k = len(pts) - 3
    if k < 1:
        out.append("order below 1")
    if len(labels) != k + 1:
        out.append("label count")
        return out
    x0, xj = chain.x[0], chain.x[j]
    if pts[0] != x0 or pts[-1] != xj:
        out.append("endpoints")
    dists = [distance(x0, q) for q in pts]
    if any(not _between(x0, q, xj) for q in pts) or dists != sorted(dists):
        out.append("monotone")
    hs = p.elements()[:j]
    sizes = []
    for i, lab in enumerate(labels):
        u, v = pts[i + 1], pts[i + 2]
        sizes.append(distance(u, v))
        if lab.kind == "neutral":
            if not is_neutral(geodesic(u, v), p.params):
                out.append(f"segment {i} not neutral")
        elif lab.kind == "relator":
            if not any(_oriented_on_axis(h, u, v) for h in hs):
                out.append(f"segment {i} has no supporting factor")
        else:
            out.append(f"segment {i} unlabeled")
    for i in range(k):
        if labels[i].kind == "neutral" and labels[i + 1].kind == "neutral":
            out.append(f"consecutive neutrals at {i}")
    if labels[-1].kind != "neutral":
        out.append("last segment not neutral")
    if labels[0].kind != "relator":
        out.append("second segment not a relator")
    else:
        need = ell - 2 * B if labels[1].kind == "neutral" else ell - 3 * B
        if sizes[0] < need:
            out.append("second segment too short")
    for i in range(1, k + 1):
        if labels[i].kind == "relator":
            nxt = labels[i + 1].kind if i + 1 <= k else "neutral"
            need = 4 * B if nxt == "neutral" else 3 * B
            if sizes[i] <= need:
                out.append(f"relator {i} too short")
    return out


# ---------------------------------------------------------------------------
# the verifier


@dataclass
class SampleResult:
    seed: int
    m_initial: int
    m_final: int
    rewrite_rounds: int
    ell_h: int | None
    verdict: str  # PASS, FAIL, SKIP or FALSIFY
    conjugate_witness: str | None = None
    config_orders: list = dc_field(default_factory=list)
    config_bound: int | None = None
    problems: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "seed": self.seed,
            "m_initial": self.m_initial,
            "m_final": self.m_final,
            "rewrite_rounds": self.rewrite_rounds,
            "ell_h": self.ell_h,
            "verdict": self.verdict,
            "config_orders": self.config_orders,
            "config_bound": self.config_bound,
        }
        if self.conjugate_witness is not None:
            out["conjugate_witness"] = self.conjugate_witness
        if self.problems:
            out["problems"] = self.problems
        return out


def _config_bound(conf: Configuration, m: int, ell: int) -> int:
    """Lower bound on ℓ(h) forced by the final configuration."""
    if conf.k >= 2 or m >= 2:
        return ell + 1
    return ell


def sct_sample(seed: int, m: int, conj_len: int, params: CancellationParams) -> SampleResult:
    p0 = random_presentation(seed, m, conj_len, params)
    h = p0.element()
    g = params.g
    if h.is_identity():
        return SampleResult(seed, m, 0, 0, 0, "SKIP")
    ell_h = translation_length(h)
    problems = []
    if ell_h == 0:
        # the normal closure should contain no nontrivial elliptic element
        return SampleResult(seed, m, m, 0, 0, "FALSIFY", problems=["nontrivial elliptic element"])
    x0 = Axis(h).project(ID_A)
    p, rounds = make_admissible(p0.with_base(x0))
    p = reduce_pairs(p)
    if p.element() != h:
        problems.append("rewriting changed the element")
    chain = compute_chain(p)
    if distance(chain.x[0], chain.x[-1]) != ell_h:
        problems.append("d(x0, x_m) differs from the translation length")
    orders = []
    conf = None
    for j in range(1, p.m + 1):
        try:
            conf = extract_configuration(p, j, chain)
        except (ConfigurationError, NotAdmissible) as exc:
            problems.append(f"extraction j={j}: {exc}")
            break
        orders.append(conf.k)
        bad = configuration_violations(conf, p, j, chain)
        if bad:
            problems.append(f"invalid configuration j={j}: {bad}")
    bound = _config_bound(conf, p.m, params.ell) if conf is not None else None
    if bound is not None and bound > ell_h:
        problems.append("configuration bound exceeds the translation length")
    witness = None
    if ell_h <= params.ell:
        for s in (1, -1):
            w = are_conjugate(h, _power(params, s))
            if w is not None:
                witness = w.describe()
                break
    if h == g or h == g.inverse():
        problems.append("h equals g")
    ok = (ell_h > params.ell or witness is not None) and not problems
    return SampleResult(
        seed, m, p.m, rounds, ell_h, "PASS" if ok else "FAIL", witness, orders, bound, problems
    )


def sct_verify(params: CancellationParams, samples: int, seed: int, m_max: int = 4, conj_len: int = 3) -> list[SampleResult]:
    """Run the pipeline on seeded presentations; child seeds are derived per sample."""
    from .seeds import child_seed

    out = []
    for i in range(samples):
        s = child_seed(seed, i)
        m = random.Random(s).randint(1, m_max)
        out.append(sct_sample(s, m, conj_len, params))
    return out
