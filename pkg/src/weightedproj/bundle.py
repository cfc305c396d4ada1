"""Pull-back to the generalised fan in ``Z^(n+1)`` and the weighted Chern relation.

Cone ``i`` of the pulled-back fan is the preimage of ``sigma_i``; it is spanned
by ``e_k`` for ``k != i`` together with the line through ``u = sum chi_k e_k``.
The coordinate functions ``x_0..x_n`` play the role of ``c_1(L_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from weightedproj.fan import Fan
from weightedproj.lattice import IntegerMatrix, LatticeVector, identity, mat_vec, smith_invariants, transpose
from weightedproj.piecewise import PiecewisePolynomial, courant
from weightedproj.polynomial import Polynomial


class ChernError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PullbackFan:
    base: Fan

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def u(self) -> LatticeVector:
        return self.base._weights()

    @cached_property
    def projection(self) -> IntegerMatrix:
        """``Q`` with ``Q e_i = v_i``; its kernel is spanned by ``u``."""
        q = transpose(self.base.rays)
        assert not any(mat_vec(q, self.u)) and smith_invariants(q) == [1] * self.base.dim
        return q

    @property
    def lcm(self) -> int:
        return self.base.lcm

    def cone_span(self, excluded: tuple[int, ...]) -> list[LatticeVector]:
        e = identity(self.size)
        return [e[k] for k in range(self.size) if k not in excluded] + [self.u]


@dataclass(frozen=True)
class PullbackPP:
    pfan: PullbackFan
    components: tuple[Polynomial, ...]

    def _wrap(self, other, op):
        if other.pfan != self.pfan:
            raise ValueError("pull-back fan mismatch")
        return PullbackPP(self.pfan, tuple(op(a, b) for a, b in zip(self.components, other.components)))

    def __add__(self, other):
        return self._wrap(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._wrap(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._wrap(other, lambda a, b: a * b)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def is_global(self) -> bool:
        return all(c == self.components[0] for c in self.components)

    def is_compatible(self) -> bool:
        for i, j in combinations(range(self.pfan.size), 2):
            diff = self.components[i] - self.components[j]
            if not diff.restrict_to_span(self.pfan.cone_span((i, j))).is_zero():
                return False
        return True

    def to_json(self) -> dict:
        return {
            "base": self.pfan.base.to_json(),
            "components": [c.to_json() for c in self.components],
        }

    def format(self) -> str:
        names = [f"x{i}" for i in range(self.pfan.size)]
        return "(" + ", ".join(c.format(names) for c in self.components) + ")"


def pullback_fan(fan: Fan) -> PullbackFan:
    return PullbackFan(fan)


def pullback(f: PiecewisePolynomial, pfan: PullbackFan | None = None) -> PullbackPP:
    """Compose every component with the projection ``Z^(n+1) -> Z^n``."""
    pfan = pfan or PullbackFan(f.fan)
    if pfan.base != f.fan:
        raise ValueError("pull-back fan built over a different fan")
    q = pfan.projection
    return PullbackPP(pfan, tuple(c.substitute_matrix(q, pfan.size) for c in f.components))


def global_term(pfan: PullbackFan, coeffs) -> PullbackPP:
    p = Polynomial.linear(tuple(coeffs))
    return PullbackPP(pfan, (p,) * pfan.size)


def chern_term(pfan: PullbackFan, i: int) -> PullbackPP:
    """The global linear function ``lcm(chi)/chi_i * x_i``."""
    coeffs = [0] * pfan.size
    coeffs[i] = pfan.lcm // pfan.u[i]
    return global_term(pfan, coeffs)


def xi_class(pfan: PullbackFan) -> PullbackPP:
    """Component ``i`` is ``-(lcm(chi)/chi_i) x_i``; zero on every ``e_i``, ``-lcm`` on ``u``."""
    comps = []
    for i in range(pfan.size):
        coeffs = [0] * pfan.size
        coeffs[i] = -(pfan.lcm // pfan.u[i])
        comps.append(Polynomial.linear(coeffs))
    xi = PullbackPP(pfan, tuple(comps))
    if not xi.is_compatible():
        raise ChernError("xi is not a piecewise polynomial")
    return xi


def chern_factors(pfan: PullbackFan) -> list[PullbackPP]:
    xi = xi_class(pfan)
    return [xi + chern_term(pfan, i) for i in range(pfan.size)]


def chern_product(pfan: PullbackFan) -> PullbackPP:
    """``prod_i (xi + lcm(chi)/chi_i * x_i)``; raises unless it is zero."""
    factors = chern_factors(pfan)
    out = factors[0]
    for f in factors[1:]:
        out = out * f
    if not out.is_zero():
        raise ChernError("Chern relation violated")
    return out


def verify_pullback_identity(pfan: PullbackFan, i: int, xi: PullbackPP | None = None) -> bool:
    """Whether ``pullback(a_i) == lcm(chi)/chi_i * x_i + xi`` on every cone."""
    xi = xi if xi is not None else xi_class(pfan)
    return pullback(courant(pfan.base, i), pfan) == chern_term(pfan, i) + xi
