"""Integral piecewise polynomials on a weighted-projective fan.

A piecewise polynomial is stored as one polynomial per maximal cone; component
``i`` lives on the cone spanned by every ray except ``v_i``. All geometric
constructions use the fan's normalised weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from weightedproj.fan import Fan, transform_fan
from weightedproj.lattice import (
    LinearForm,
    dot,
    kernel_basis,
    lcm_all,
    mat_vec,
    unimodular_inverse,
    transpose,
)
from weightedproj.polynomial import Polynomial, default_names


class PiecewiseError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PiecewisePolynomial:
    fan: Fan
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.components) != self.fan.size:
            raise PiecewiseError(f"need {self.fan.size} components, got {len(self.components)}")
        if any(c.arity != self.fan.dim for c in self.components):
            raise PiecewiseError("component arity differs from fan dimension")

    @classmethod
    def zero(cls, fan: Fan) -> PiecewisePolynomial:
        return cls(fan, (Polynomial.zero(fan.dim),) * fan.size)

    def _binary(self, other, op) -> PiecewisePolynomial:
        if isinstance(other, int):
            other = PiecewisePolynomial(self.fan, (Polynomial.constant(other, self.fan.dim),) * self.fan.size)
        if other.fan != self.fan:
            raise PiecewiseError("fan mismatch")
        return PiecewisePolynomial(self.fan, tuple(op(f, g) for f, g in zip(self.components, other.components)))

    def __add__(self, other):
        return self._binary(other, lambda f, g: f + g)

    def __sub__(self, other):
        return self._binary(other, lambda f, g: f - g)

    def __mul__(self, other):
        if isinstance(other, int):
            return PiecewisePolynomial(self.fan, tuple(c * other for c in self.components))
        return self._binary(other, lambda f, g: f * g)

    __rmul__ = __mul__

    def __neg__(self):
        return PiecewisePolynomial(self.fan, tuple(-c for c in self.components))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PiecewisePolynomial):
            return NotImplemented
        return self.fan == other.fan and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.fan, self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def is_global(self) -> bool:
        return all(c == self.components[0] for c in self.components)

    def content(self) -> int:
        return math.gcd(*(c.content() for c in self.components))

    def is_reduced(self) -> bool:
        return self.content() == 1

    def exact_div(self, d: int) -> PiecewisePolynomial:
        return PiecewisePolynomial(self.fan, tuple(c.exact_div(d) for c in self.components))

    def is_compatible(self) -> bool:
        """Components agree on every pairwise cone intersection."""
        for i, j in combinations(range(self.fan.size), 2):
            span = [v for k, v in enumerate(self.fan.rays) if k not in (i, j)]
            if not (self.components[i] - self.components[j]).restrict_to_span(span).is_zero():
                return False
        return True

    def value_at_ray(self, k: int) -> int:
        # v_k lies in every cone except sigma_k
        j = 1 if k == 0 else 0
        return self.components[j].evaluate(self.fan.rays[k])

    def vanishes_on_cone(self, i: int) -> bool:
        return self.components[i].is_zero()

    def to_json(self) -> dict:
        return {"fan": self.fan.to_json(), "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, data) -> PiecewisePolynomial:
        fan = Fan.from_json(data["fan"])
        return cls(fan, tuple(Polynomial.from_json(c) for c in data["components"]))

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.fan.dim)
        return "(" + ", ".join(c.format(names) for c in self.components) + ")"

    def __repr__(self) -> str:
        return f"PiecewisePolynomial{self.format()}"


def pp_arith(f: PiecewisePolynomial, g: PiecewisePolynomial, op: str) -> PiecewisePolynomial:
    if f.fan != g.fan:
        raise PiecewiseError("fan mismatch")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise PiecewiseError(f"unknown operation {op!r}")


def pp_content(f: PiecewisePolynomial) -> int:
    return f.content()


def _check_index(fan: Fan, i: int) -> None:
    if not 0 <= i < fan.size:
        raise PiecewiseError(f"index {i} out of range for {fan.size} rays")


@lru_cache(maxsize=4096)
def _b_form_cached(rays, i: int, j: int) -> LinearForm:
    n = len(rays) - 1
    rows = [v for k, v in enumerate(rays) if k not in (i, j)]
    basis = kernel_basis(rows, n)
    if len(basis) != 1:
        raise PiecewiseError("rays are not in general position")
    b = basis[0]
    if dot(b, rays[i]) < 0:
        b = tuple(-x for x in b)
    return b


def b_form(fan: Fan, i: int, j: int) -> LinearForm:
    """Primitive linear form positive on ``v_i`` and zero on ``v_k`` for ``k != i, j``."""
    _check_index(fan, i)
    _check_index(fan, j)
    if i == j:
        raise PiecewiseError("b-form needs two distinct indices")
    b = _b_form_cached(fan.rays, i, j)
    if fan.chi_normalized is not None:
        w = fan.chi_normalized
        expected = w[j] // math.gcd(w[i], w[j])
        if dot(b, fan.rays[i]) != expected:
            raise PiecewiseError(f"b_{i}{j}(v_{i}) = {dot(b, fan.rays[i])}, expected {expected}")
    return b


def global_linear(fan: Fan, form: Sequence[int]) -> PiecewisePolynomial:
    if len(form) != fan.dim:
        raise PiecewiseError("linear form has wrong length")
    p = Polynomial.linear(tuple(form))
    return PiecewisePolynomial(fan, (p,) * fan.size)


def global_polynomial(fan: Fan, p: Polynomial) -> PiecewisePolynomial:
    return PiecewisePolynomial(fan, (p,) * fan.size)


@lru_cache(maxsize=4096)
def courant(fan: Fan, i: int) -> PiecewisePolynomial:
    """Courant function of ray ``v_i`` from the closed formula.

    Component ``j != i`` is ``lcm(chi) / lcm(chi_i, chi_j) * b_ij``. The
    result is checked against the defining properties: reduced, compatible,
    zero on ``sigma_i`` and equal to ``lcm(chi) / chi_i`` at ``v_i``.
    """
    _check_index(fan, i)
    w = fan._weights()
    big = fan.lcm
    comps = []
    for j in range(fan.size):
        if j == i:
            comps.append(Polynomial.zero(fan.dim))
        else:
            comps.append(Polynomial.linear(b_form(fan, i, j)) * (big // math.lcm(w[i], w[j])))
    a = PiecewisePolynomial(fan, tuple(comps))
    if a.content() != 1 or a.value_at_ray(i) != big // w[i] or not a.is_compatible():
        raise PiecewiseError(f"Courant function a_{i} fails its characterisation")
    return a


@lru_cache(maxsize=4096)
def intrinsic_courant(fan: Fan, i: int) -> PiecewisePolynomial:
    """Courant function of ``v_i`` computed from the rays alone.

    Every component ``j != i`` is a multiple of ``b_ij``, and all of them
    take one common value at ``v_i``; the smallest such value is the lcm of
    the ``b_ij(v_i)``.
    """
    _check_index(fan, i)
    forms = {j: _b_form_cached(fan.rays, i, j) for j in range(fan.size) if j != i}
    values = {j: dot(b, fan.rays[i]) for j, b in forms.items()}
    top = lcm_all(values.values())
    comps = tuple(
        Polynomial.zero(fan.dim) if j == i else Polynomial.linear(forms[j]) * (top // values[j])
        for j in range(fan.size)
    )
    return PiecewisePolynomial(fan, comps)


def _check_subset(size: int, subset: Iterable[int]) -> tuple[int, ...]:
    s = tuple(sorted(set(subset)))
    if not s:
        raise PiecewiseError("index subset must be nonempty")
    if s[0] < 0 or s[-1] >= size:
        raise PiecewiseError(f"index subset {s} out of range")
    return s


def divisor_coefficient(chi: Sequence[int], subset: Iterable[int]) -> int:
    """``prod_{i in I} lcm(chi) / lcm({chi_i} + {chi_j : j not in I})``."""
    s = _check_subset(len(chi), subset)
    big = lcm_all(chi)
    rest = [c for k, c in enumerate(chi) if k not in s]
    d = 1
    for i in s:
        d *= big // lcm_all([chi[i], *rest])
    return d


def courant_product(fan: Fan, subset: Iterable[int]) -> PiecewisePolynomial:
    s = _check_subset(fan.size, subset)
    out = courant(fan, s[0])
    for i in s[1:]:
        out = out * courant(fan, i)
    return out


@lru_cache(maxsize=4096)
def _a_subset_cached(fan: Fan, s: tuple[int, ...]) -> PiecewisePolynomial:
    prod = courant_product(fan, s)
    d = divisor_coefficient(fan._weights(), s)
    if prod.content() % d:
        raise PiecewiseError(
            f"product of Courant functions over {s} is not divisible by {d}"
        )
    return prod.exact_div(d)


def a_subset(fan: Fan, subset: Iterable[int]) -> PiecewisePolynomial:
    """``prod_{i in I} a_i`` divided by its guaranteed divisor ``d_I``."""
    return _a_subset_cached(fan, _check_subset(fan.size, subset))


def courant_multiple(f: PiecewisePolynomial, i: int) -> int:
    """The integer ``m`` with ``f - f^(i) == m * a_i`` for piecewise linear ``f``."""
    g = f - global_polynomial(f.fan, f.components[i])
    a = courant(f.fan, i)
    m, r = divmod(g.value_at_ray(i), a.value_at_ray(i))
    if r or g != a * m:
        raise PiecewiseError(f"f - f^({i}) is not an integer multiple of a_{i}")
    return m


def transport(f: PiecewisePolynomial, u: Sequence[Sequence[int]]) -> PiecewisePolynomial:
    """Push ``f`` along the change of basis ``u``: components become ``f o u^-1``."""
    fan = transform_fan(f.fan, u)
    inv = unimodular_inverse(u)
    return PiecewisePolynomial(fan, tuple(c.substitute_matrix(inv, fan.dim) for c in f.components))


def transport_form(form: Sequence[int], u: Sequence[Sequence[int]]) -> LinearForm:
    inv = unimodular_inverse(u)
    return mat_vec(transpose(inv), form)


def stacked_b_forms(fan: Fan) -> list[LinearForm]:
    return [b_form(fan, i, j) for i in range(fan.size) for j in range(fan.size) if i != j]

