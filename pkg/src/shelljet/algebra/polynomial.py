"""Sparse multivariate polynomials over the rationals.

Monomials are exponent tuples.  Every monomial order is realised as an
integer sort key that is *linear* in the exponent vector, so the key of a
product is the sum of the keys; the Groebner engine relies on this to avoid
recomputing keys inside the reduction loop.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from functools import lru_cache
from operator import add, sub

from gmpy2 import mpq

__all__ = [
    "ORDERS",
    "QQ",
    "Ring",
    "Polynomial",
    "RingMismatchError",
    "order_key",
    "parse_polynomial",
]

QQ = mpq
ORDERS = ("grevlex", "grlex", "lex")

# bits per packed field; bounds every exponent and total degree by 2**20
_FIELD_BITS = 20


class RingMismatchError(ValueError):
    """Raised when polynomials from different rings are combined."""


def _to_qq(c) -> mpq:
    if isinstance(c, str):
        return mpq(c)
    return mpq(c)


@lru_cache(maxsize=None)
def order_key(order: str, nvars: int):
    """Return ``exp -> int`` whose integer order matches ``order``.

    grevlex packs ``(deg, e1+..+e_{n-1}, ..., e1)``: with equal degree a
    smaller last exponent gives a larger prefix sum.
    """
    w = _FIELD_BITS
    if order == "lex":

        def key(exp):
            k = 0
            for e in exp:
                k = (k << w) | e
            return k

    elif order == "grlex":

        def key(exp):
            k = sum(exp)
            for e in exp:
                k = (k << w) | e
            return k

    elif order == "grevlex":

        def key(exp):
            partial = 0
            prefix = []
            for e in exp[:-1]:
                partial += e
                prefix.append(partial)
            k = partial + (exp[-1] if exp else 0)
            for p in reversed(prefix):
                k = (k << w) | p
            return k

    else:
        raise ValueError(f"unknown monomial order {order!r}; expected one of {ORDERS}")
    return key


class Ring:
    """Polynomial ring QQ[names] with an active monomial order."""

    __slots__ = ("names", "order", "_index")

    def __init__(self, names: Sequence[str], order: str = "grevlex"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.names = names
        self.order = order
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Ring({list(self.names)!r}, order={self.order!r})"

    def with_order(self, order: str) -> Ring:
        return Ring(self.names, order)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not in ring") from None

    def key(self, order: str | None = None):
        return order_key(order or self.order, self.nvars)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> Polynomial:
        exp = [0] * self.nvars
        exp[self.index(name)] = 1
        return Polynomial(self, {tuple(exp): 1})

    def gens(self) -> list[Polynomial]:
        return [self.var(n) for n in self.names]

    def monomial(self, exp: Sequence[int], coeff=1) -> Polynomial:
        return Polynomial(self, {tuple(exp): coeff})

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(self, text)


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero mpq."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple, object], *, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self._terms = terms
        else:
            n = ring.nvars
            clean = {}
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n:
                    raise ValueError(f"monomial {exp} has wrong length for {n} variables")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = _to_qq(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
            self._terms = clean
        self._hash = None

    # -- basic access -------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self, order: str | None = None) -> list[tuple[tuple, mpq]]:
        """Terms sorted from largest to smallest monomial."""
        key = self.ring.key(order)
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def leading_term(self, order: str | None = None) -> tuple[tuple, mpq]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.key(order)
        exp = max(self._terms, key=key)
        return exp, self._terms[exp]

    def leading_monomial(self, order: str | None = None) -> tuple:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: str | None = None) -> mpq:
        return self.leading_term(order)[1]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def constant_term(self) -> mpq:
        return self._terms.get((0,) * self.ring.nvars, mpq(0))

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def variables(self) -> set[str]:
        used = set()
        for exp in self._terms:
            used.update(self.ring.names[i] for i, e in enumerate(exp) if e)
        return used

    def monic(self, order: str | None = None) -> Polynomial:
        if not self._terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring.names} vs {other.ring.names}")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp)
            if v is None:
                out[exp] = c
            else:
                v = v + c
                if v:
                    out[exp] = v
                else:
                    del out[exp]
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _to_qq(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {e: v * c for e, v in self._terms.items()}, _trusted=True)
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(map(add, e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, exp: Sequence[int], coeff=1) -> Polynomial:
        c = _to_qq(coeff)
        exp = tuple(exp)
        return Polynomial(
            self.ring,
            {tuple(map(add, e, exp)): v * c for e, v in self._terms.items()} if c else {},
            _trusted=True,
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        try:
            return self == self.ring.constant(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self._terms.items())))
        return self._hash

    # -- calculus / evaluation -----------------------------------------
    def derivative(self, name: str) -> Polynomial:
        i = self.ring.index(name)
        out = {}
        for exp, c in self._terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                out[tuple(e)] = c * exp[i]
        return Polynomial(self.ring, out, _trusted=True)

    def evaluate(self, point: Mapping[str, object] | Sequence) -> mpq:
        """Exact value at a rational point (sequence in ring order or name map)."""
        if isinstance(point, Mapping):
            vals = [_to_qq(point[n]) for n in self.ring.names]
        else:
            if len(point) != self.ring.nvars:
                raise ValueError("point has wrong dimension")
            vals = [_to_qq(v) for v in point]
        total = mpq(0)
        for exp, c in self._terms.items():
            t = c
            for v, e in zip(vals, exp):
                if e:
                    t *= v**e
            total += t
        return total

    def substitute(self, values: Mapping[str, Polynomial | object]) -> Polynomial:
        """Replace variables by polynomials of the same ring (or constants)."""
        ring = self.ring
        idx = {ring.index(n): (v if isinstance(v, Polynomial) else ring.constant(v)) for n, v in values.items()}
        result = ring.zero()
        for exp, c in self._terms.items():
            rest = list(exp)
            term = ring.constant(c)
            for i, p in idx.items():
                if exp[i]:
                    term = term * p ** exp[i]
                    rest[i] = 0
            result = result + term.mul_monomial(rest)
        return result

    def to_ring(self, ring: Ring, mapping: Mapping[str, str] | None = None) -> Polynomial:
        """Re-embed into ``ring`` by variable name (optionally renamed)."""
        mapping = mapping or {}
        pos = [ring.index(mapping.get(n, n)) for n in self.ring.names]
        out = {}
        for exp, c in self._terms.items():
            e = [0] * ring.nvars
            for i, k in enumerate(exp):
                if k:
                    e[pos[i]] += k
            out[tuple(e)] = c
        return Polynomial(ring, out, _trusted=True)

    # -- text ----------------------------------------------------------
    def to_str(self, order: str | None = None) -> str:
        if not self._terms:
            return "0"
        names = self.ring.names
        parts = []
        for exp, c in self.items(order):
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exp) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{_qq_str(a)}*{mono}"
            else:
                body = _qq_str(a)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_str

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"


def _qq_str(c: mpq) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


_TOKEN = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    """Parse the plain-text format written by :meth:`Polynomial.to_str`.

    Terms are ``[coeff*]var[^k]*...`` joined by ``+``/``-``.
    """
    text = text.strip()
    if not text or text == "0":
        return ring.zero()
    terms: dict = {}
    pos = 0
    n = ring.nvars
    for m in _TOKEN.finditer(text):
        if m.start() != pos and text[pos : m.start()].strip():
            raise ValueError(f"cannot parse {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = mpq(sign)
        exp = [0] * n
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor[0].isdigit():
                coeff *= mpq(factor)
                continue
            name, _, power = factor.partition("^")
            exp[ring.index(name.strip())] += int(power) if power else 1
        exp = tuple(exp)
        terms[exp] = terms.get(exp, 0) + coeff
    if pos != len(text):
        raise ValueError(f"cannot parse {text!r}")
    return Polynomial(ring, terms)


def monomial_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(map(max, a, b))


def monomial_divides(a: tuple, b: tuple) -> bool:
    return all(map(int.__le__, a, b))


def monomial_quotient(b: tuple, a: tuple) -> tuple:
    return tuple(map(sub, b, a))


def polys_from(ring: Ring, items: Iterable[str | Polynomial]) -> list[Polynomial]:
    return [p if isinstance(p, Polynomial) else ring.parse(p) for p in items]
