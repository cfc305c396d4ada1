"""Sparse multivariate polynomials with unbounded integer coefficients."""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence

from weightedproj import _kernels

Exponent = tuple[int, ...]


class PolynomialError(ValueError):
    pass


def _grlex_key(exp: Exponent) -> tuple[int, Exponent]:
    return (sum(exp), exp)


class Polynomial:
    """An immutable polynomial in ``arity`` variables over the integers.

    ``terms`` maps exponent tuples to nonzero coefficients. Never mutate it.
    """

    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[Exponent, int] | None = None):
        if arity < 0:
            raise PolynomialError("arity must be nonnegative")
        clean: dict[Exponent, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != arity or any(e < 0 for e in exp):
                raise PolynomialError(f"bad exponent {exp} for arity {arity}")
            c = int(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.arity = arity
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, arity: int, terms: dict[Exponent, int]) -> Polynomial:
        # trusted constructor for kernel output
        p = cls.__new__(cls)
        p.arity = arity
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, arity: int) -> Polynomial:
        return cls._raw(arity, {})

    @classmethod
    def constant(cls, c: int, arity: int) -> Polynomial:
        return cls._raw(arity, {(0,) * arity: c} if c else {})

    @classmethod
    def variable(cls, i: int, arity: int) -> Polynomial:
        if not 0 <= i < arity:
            raise PolynomialError(f"variable index {i} out of range")
        return cls._raw(arity, {tuple(int(k == i) for k in range(arity)): 1})

    @classmethod
    def linear(cls, coeffs: Sequence[int]) -> Polynomial:
        """The linear form ``sum(coeffs[i] * x_i)``."""
        n = len(coeffs)
        return cls._raw(
            n,
            {tuple(int(k == i) for k in range(n)): int(c) for i, c in enumerate(coeffs) if c},
        )

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def linear_coefficients(self) -> tuple[int, ...]:
        """Coefficient vector of a homogeneous linear polynomial."""
        if self.degree() > 1 or not self.is_homogeneous():
            raise PolynomialError("not a linear form")
        out = [0] * self.arity
        for exp, c in self.terms.items():
            out[exp.index(1)] = c
        return tuple(out)

    def _check(self, other: Polynomial) -> None:
        if self.arity != other.arity:
            raise PolynomialError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: Polynomial) -> Polynomial:
        if isinstance(other, int):
            other = Polynomial.constant(other, self.arity)
        self._check(other)
        return Polynomial._raw(self.arity, _kernels.add_terms(self.terms, other.terms, 1))

    def __sub__(self, other: Polynomial) -> Polynomial:
        if isinstance(other, int):
            other = Polynomial.constant(other, self.arity)
        self._check(other)
        return Polynomial._raw(self.arity, _kernels.add_terms(self.terms, other.terms, -1))

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.arity, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: Polynomial | int) -> Polynomial:
        if isinstance(other, int):
            if other == 0:
                return Polynomial.zero(self.arity)
            return Polynomial._raw(self.arity, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        return Polynomial._raw(self.arity, _kernels.mul_terms(self.terms, other.terms, self.arity))

    __radd__ = __add__
    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        out = Polynomial.constant(1, self.arity)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self.terms.items())))
        return self._hash

    def content(self) -> int:
        """gcd of all coefficients (0 for the zero polynomial)."""
        return math.gcd(*self.terms.values()) if self.terms else 0

    def exact_div(self, d: int) -> Polynomial:
        if d == 0:
            raise PolynomialError("division by zero")
        out = {}
        for e, c in self.terms.items():
            q, r = divmod(c, d)
            if r:
                raise PolynomialError(f"not divisible: coefficient {c} by {d}")
            out[e] = q
        return Polynomial._raw(self.arity, out)

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.arity:
            raise PolynomialError("point has wrong dimension")
        total = 0
        for exp, c in self.terms.items():
            term = c
            for x, e in zip(point, exp):
                if e:
                    term *= x**e
            total += term
        return total

    def compose_linear(self, images: Sequence[Polynomial], arity: int) -> Polynomial:
        """Substitute polynomial ``images[i]`` for variable ``i``."""
        if len(images) != self.arity:
            raise PolynomialError("need one image per variable")
        powers: list[list[Polynomial]] = [[Polynomial.constant(1, arity)] for _ in images]
        total: dict[Exponent, int] = {}
        for exp, c in self.terms.items():
            term = Polynomial.constant(c, arity)
            for i, e in enumerate(exp):
                if not e:
                    continue
                cache = powers[i]
                while len(cache) <= e:
                    cache.append(cache[-1] * images[i])
                term = term * cache[e]
            total = _kernels.add_terms(total, term.terms, 1)
        return Polynomial._raw(arity, total)

    def substitute_matrix(self, m: Sequence[Sequence[int]], arity: int) -> Polynomial:
        """Substitute ``x_i = sum_k m[i][k] * t_k`` (precomposition with ``m``)."""
        if len(m) != self.arity:
            raise PolynomialError("matrix row count must equal arity")
        return self.compose_linear([Polynomial.linear(tuple(row)) if row else Polynomial.zero(arity)
                                    for row in m], arity)

    def restrict_to_span(self, basis: Sequence[Sequence[int]]) -> Polynomial:
        """Restriction to the span of ``basis``, in coordinates ``t_k``.

        Evaluates at the generic point ``sum_k t_k * basis[k]``; the result is
        zero exactly when ``self`` vanishes on the span.
        """
        k = len(basis)
        for b in basis:
            if len(b) != self.arity:
                raise PolynomialError("basis vector has wrong dimension")
        rows = [tuple(b[i] for b in basis) for i in range(self.arity)]
        return self.substitute_matrix(rows, k)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Polynomial:
        arity = int(data["arity"])
        terms: dict[Exponent, int] = {}
        for t in data["terms"]:
            exp = tuple(int(e) for e in t["exp"])
            if exp in terms:
                raise PolynomialError(f"duplicate exponent {exp}")
            terms[exp] = int(t["coef"])
        return cls(arity, terms)

    def format(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = default_names(self.arity)
        if not self.terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self.format()!r})"


def default_names(arity: int) -> list[str]:
    if arity <= 3:
        return ["x", "y", "z"][:arity]
    return [f"x{i}" for i in range(arity)]


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if f.arity != g.arity:
        raise PolynomialError(f"arity mismatch: {f.arity} vs {g.arity}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise PolynomialError(f"unknown operation {op!r}")


def content(f: Polynomial) -> int:
    return f.content()


def exact_div(f: Polynomial, d: int) -> Polynomial:
    return f.exact_div(d)


def restrict_to_span(f: Polynomial, basis: Iterable[Sequence[int]]) -> Polynomial:
    return f.restrict_to_span(list(basis))
