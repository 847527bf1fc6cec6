"""Finite fields F_{p^k} and sparse bivariate polynomials over them.

Field elements are plain ints in ``range(q)``: the base-p digits of the int are
the coefficient vector with respect to the power basis of the fixed modulus.
Everything here is immutable and deterministic.
"""
from __future__ import annotations

import functools
import re
from typing import Iterable, Iterator, Mapping

__all__ = [
    "MODULI",
    "Field",
    "get_field",
    "BiPoly",
    "poly_substitute",
    "poly_degree",
    "parse_poly",
    "FieldError",
]


class FieldError(ValueError):
    """Domain error in field or polynomial arithmetic."""


# Lexicographically first monic irreducible of each degree, coefficients low -> high.
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (0, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 0, 1, 1),
    (3, 1): (0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 0, 2, 1),
    (5, 1): (0, 1),
    (5, 2): (1, 1, 1),
    (5, 3): (1, 0, 1, 1),
    (7, 1): (0, 1),
    (7, 2): (1, 0, 1),
    (7, 3): (1, 0, 1, 1),
    (11, 1): (0, 1),
    (11, 2): (1, 0, 1),
    (11, 3): (1, 0, 4, 1),
    (13, 1): (0, 1),
    (13, 2): (1, 3, 1),
    (13, 3): (1, 0, 4, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _has_root(poly: tuple[int, ...], p: int) -> bool:
    return any(sum(c * pow(r, i, p) for i, c in enumerate(poly)) % p == 0 for r in range(p))


class Field:
    """The finite field F_{p^k} with elements encoded as ints in ``range(q)``.

    Arithmetic methods are bound per instance so that the prime-field case
    stays a single modular operation.
    """

    def __init__(self, p: int, k: int = 1):
        if not (2 <= p < 2**16) or not _is_prime(p):
            raise FieldError(f"p={p} is not a prime in [2, 2^16)")
        if k < 1:
            raise FieldError(f"extension degree must be >= 1, got {k}")
        if k == 1:
            modulus = (0, 1)
        elif (p, k) in MODULI:
            modulus = MODULI[(p, k)]
        else:
            raise FieldError(f"no shipped modulus for F_{p}^{k}")
        if k in (2, 3) and _has_root(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        if k == 1:
            self._setup_prime()
        else:
            self._setup_extension()

    # -- construction -------------------------------------------------------
    def _setup_prime(self) -> None:
        p = self.p
        self.add = lambda a, b: (a + b) % p
        self.sub = lambda a, b: (a - b) % p
        self.mul = lambda a, b: (a * b) % p
        self.neg = lambda a: (-a) % p

        if p <= 4096:
            table = [0] + [pow(a, p - 2, p) for a in range(1, p)]

            def inv(a: int) -> int:
                a %= p
                if a == 0:
                    raise FieldError("inversion of zero")
                return table[a]
        else:
            def inv(a: int) -> int:
                if a % p == 0:
                    raise FieldError("inversion of zero")
                return pow(a, p - 2, p)

        self.inv = inv

    def _vec_mul(self, u: list[int], v: list[int]) -> list[int]:
        p, k, mod = self.p, self.k, self.modulus
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    prod[i + j] = (prod[i + j] + a * b) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
        return prod[:k]

    def _setup_extension(self) -> None:
        p, k, q = self.p, self.k, self.q
        to_vec = self.to_vector
        from_vec = self.from_vector
        # find a primitive element and build log/exp tables
        exp: list[int] = []
        for cand in range(2, q):
            table = [1]
            cv = to_vec(cand)
            cur = [1] + [0] * (k - 1)
            for _ in range(q - 2):
                cur = self._vec_mul(cur, cv)
                table.append(from_vec(cur))
            if len(set(table)) == q - 1:
                exp = table
                break
        if not exp:  # pragma: no cover - a primitive element always exists
            raise FieldError("no primitive element found")
        log = [0] * q
        for i, e in enumerate(exp):
            log[e] = i
        self._exp, self._log = exp, log
        pw = [p**i for i in range(k)]

        def add(a: int, b: int) -> int:
            r = 0
            for w in pw:
                r += ((a // w + b // w) % p) * w
            return r

        def neg(a: int) -> int:
            r = 0
            for w in pw:
                r += ((-(a // w)) % p) * w
            return r

        if q <= 1024:
            addt = [[add(a, b) for b in range(q)] for a in range(q)]
            negt = [neg(a) for a in range(q)]
            self.add = lambda a, b: addt[a][b]
            self.neg = lambda a: negt[a]
            self.sub = lambda a, b: addt[a][negt[b]]
        else:
            self.add = add
            self.neg = neg
            self.sub = lambda a, b: add(a, neg(b))
        qm1 = q - 1

        def mul(a: int, b: int) -> int:
            if a == 0 or b == 0:
                return 0
            return exp[(log[a] + log[b]) % qm1]

        def inv(a: int) -> int:
            if a == 0:
                raise FieldError("inversion of zero")
            return exp[(-log[a]) % qm1]

        self.mul = mul
        self.inv = inv

    # -- helpers -------------------------------------------------------------
    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def to_vector(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_vector(self, v: Iterable[int]) -> int:
        r, w = 0, 1
        for c in v:
            r += (c % self.p) * w
            w *= self.p
        return r

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        return "[" + ",".join(map(str, self.to_vector(a))) + "]"

    def __repr__(self) -> str:
        return f"Field(p={self.p}, k={self.k})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __reduce__(self):
        return (get_field, (self.p, self.k))


@functools.lru_cache(maxsize=None)
def get_field(p: int, k: int = 1) -> Field:
    return Field(p, k)


def _term_order(key: tuple[int, int]) -> tuple[int, int]:
    # graded lex with x > y: higher total degree first, then higher x-exponent
    i, j = key
    return (-(i + j), -i)


class BiPoly:
    """Sparse polynomial in x, y over a finite field.

    Terms are kept in canonical graded-lex order (x > y) with no zero
    coefficients, so structural equality is polynomial equality.
    """

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field: Field, terms: Mapping[tuple[int, int], int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], int] = {}
        add = field.add
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise FieldError("negative exponent")
            acc[(i, j)] = add(acc.get((i, j), 0), c)
        self.field = field
        self.terms: tuple[tuple[tuple[int, int], int], ...] = tuple(
            sorted(((e, c) for e, c in acc.items() if c), key=lambda t: _term_order(t[0]))
        )
        self._hash = None

    # -- constructors --------------------------------------------------------
    @classmethod
    def _from_dict(cls, field: Field, d: dict[tuple[int, int], int]) -> "BiPoly":
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = tuple(sorted(((e, c) for e, c in d.items() if c), key=lambda t: _term_order(t[0])))
        obj._hash = None
        return obj

    @classmethod
    def const(cls, field: Field, c: int) -> "BiPoly":
        return cls._from_dict(field, {(0, 0): c})

    @classmethod
    def x(cls, field: Field) -> "BiPoly":
        return cls._from_dict(field, {(1, 0): 1})

    @classmethod
    def y(cls, field: Field) -> "BiPoly":
        return cls._from_dict(field, {(0, 1): 1})

    @classmethod
    def univariate_y(cls, field: Field, coeffs: Iterable[int]) -> "BiPoly":
        return cls._from_dict(field, {(0, j): c for j, c in enumerate(coeffs) if c})

    # -- basic protocol ------------------------------------------------------
    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.p, self.field.k, self.terms))
        return self._hash

    def __repr__(self) -> str:
        return f"BiPoly({self})"

    def _check(self, other: "BiPoly") -> None:
        if self.field != other.field:
            raise FieldError("field mismatch")

    def __add__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        add = self.field.add
        d = dict(self.terms)
        for e, c in other.terms:
            d[e] = add(d.get(e, 0), c)
        return BiPoly._from_dict(self.field, d)

    def __neg__(self) -> "BiPoly":
        neg = self.field.neg
        return BiPoly._from_dict(self.field, {e: neg(c) for e, c in self.terms})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly | int") -> "BiPoly":
        F = self.field
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        add, mul = F.add, F.mul
        d: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.terms:
            for (i2, j2), c2 in other.terms:
                e = (i1 + i2, j1 + j2)
                d[e] = add(d.get(e, 0), mul(c1, c2))
        return BiPoly._from_dict(F, d)

    def scale(self, c: int) -> "BiPoly":
        mul = self.field.mul
        return BiPoly._from_dict(self.field, {e: mul(c, v) for e, v in self.terms})

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise FieldError("negative power of a polynomial")
        result = BiPoly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def degree(self) -> int:
        if not self.terms:
            raise FieldError("degree of the zero polynomial")
        return max(i + j for (i, j), _ in self.terms)

    def degree_in(self, var: str) -> int:
        idx = 0 if var == "x" else 1
        return max((e[idx] for e, _ in self.terms), default=-1)

    def leading_form(self) -> "BiPoly":
        d = self.degree()
        return BiPoly._from_dict(self.field, {e: c for e, c in self.terms if e[0] + e[1] == d})

    def coeff(self, i: int, j: int) -> int:
        for e, c in self.terms:
            if e == (i, j):
                return c
        return 0

    def y_coeffs(self) -> list[int]:
        """Coefficient list (low -> high) of a polynomial in y alone."""
        if any(i for (i, _), _ in self.terms):
            raise FieldError("polynomial depends on x")
        out = [0] * (self.degree_in("y") + 1 if self.terms else 0)
        for (_, j), c in self.terms:
            out[j] = c
        return out

    def substitute(self, fx: "BiPoly", fy: "BiPoly") -> "BiPoly":
        return poly_substitute(self, fx, fy)

    # -- serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        F = self.field
        return {"terms": [[i, j, F.to_vector(c)] for (i, j), c in self.terms]}

    @classmethod
    def from_json(cls, field: Field, data: Mapping) -> "BiPoly":
        return cls(field, (((int(i), int(j)), field.from_vector(c)) for i, j, c in data["terms"]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        F = self.field
        parts: list[str] = []
        for (i, j), c in self.terms:
            mono = "*".join(
                s for s in (
                    ("x" if i == 1 else f"x^{i}") if i else "",
                    ("y" if j == 1 else f"y^{j}") if j else "",
                ) if s
            )
            if F.k == 1:
                # print p-1 as a subtraction for readability
                if c == F.p - 1 and F.p > 2:
                    sign, mag = "-", "1"
                else:
                    sign, mag = "+", str(c)
            else:
                sign, mag = "+", F.format(c)
            if mono:
                body = mono if mag == "1" else f"{mag}*{mono}"
            else:
                body = mag
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def poly_substitute(P: BiPoly, fx: BiPoly, fy: BiPoly) -> BiPoly:
    """P(fx, fy), fully expanded."""
    F = P.field
    if fx.field != F or fy.field != F:
        raise FieldError("field mismatch")
    if not P.terms:
        return P
    max_i = max(e[0] for e, _ in P.terms)
    max_j = max(e[1] for e, _ in P.terms)
    one = BiPoly.const(F, 1)
    xp = [one]
    for _ in range(max_i):
        xp.append(xp[-1] * fx)
    yp = [one]
    for _ in range(max_j):
        yp.append(yp[-1] * fy)
    add, mul = F.add, F.mul
    acc: dict[tuple[int, int], int] = {}
    for (i, j), c in P.terms:
        prod = xp[i] * yp[j]
        for e, v in prod.terms:
            acc[e] = add(acc.get(e, 0), mul(c, v))
    return BiPoly._from_dict(F, acc)


def poly_degree(P: BiPoly) -> int:
    return P.degree()


# -- text grammar -------------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(\d+)|(\[[^\]]*\])|([xy])|(\*\*|[-+*^()]))")


def _tokenize(text: str) -> Iterator[str]:
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FieldError(f"cannot parse polynomial near {text[pos:]!r}")
        pos = m.end()
        tok = next(g for g in m.groups() if g is not None)
        yield "^" if tok == "**" else tok


class _Parser:
    def __init__(self, field: Field, text: str):
        self.F = field
        self.toks = list(_tokenize(text))
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise FieldError("unexpected end of polynomial")
        self.i += 1
        return tok

    def parse(self) -> BiPoly:
        out = self.expr()
        if self.peek() is not None:
            raise FieldError(f"trailing input {self.peek()!r}")
        return out

    def expr(self) -> BiPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> BiPoly:
        acc = self.power()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                acc = acc * self.power()
            elif tok is not None and (tok in ("x", "y", "(") or tok[0].isdigit() or tok[0] == "["):
                acc = acc * self.power()  # implicit multiplication
            else:
                return acc

    def power(self) -> BiPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            e = self.take()
            if not e.isdigit():
                raise FieldError(f"bad exponent {e!r}")
            base = base ** int(e)
        return base

    def atom(self) -> BiPoly:
        F = self.F
        tok = self.take()
        if tok == "x":
            return BiPoly.x(F)
        if tok == "y":
            return BiPoly.y(F)
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise FieldError("unbalanced parenthesis")
            return inner
        if tok == "-":
            return -self.power()
        if tok[0].isdigit():
            return BiPoly.const(F, F.from_int(int(tok)))
        if tok[0] == "[":
            body = tok[1:-1].strip()
            vec = [int(s) for s in body.split(",")] if body else []
            if len(vec) > F.k:
                raise FieldError(f"coefficient vector {tok} longer than k={F.k}")
            return BiPoly.const(F, F.from_vector(vec))
        raise FieldError(f"unexpected token {tok!r}")


def parse_poly(field: Field, text: str) -> BiPoly:
    """Parse text such as ``x^2 - y`` or ``[0,1]*x + 3``."""
    return _Parser(field, text).parse()
