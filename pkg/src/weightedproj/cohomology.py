"""Structure constants of ordinary cohomology and the ring presentation.

``k_m`` denotes the integer with ``c_1^m = k_m * c_m``. Three independent
closed forms are provided; they must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd, prod
from typing import Iterable, Sequence

from weightedproj.fan import Fan
from weightedproj.lattice import gcd_all, lcm_all, p_content, prime_support
from weightedproj.piecewise import (
    a_subset,
    b_form,
    courant,
    divisor_coefficient,
    global_linear,
)
from weightedproj.weights import check_weights


class CohomologyError(ValueError):
    pass


def _check_degree(chi: Sequence[int], m: int) -> None:
    if not 1 <= m <= len(chi) - 1:
        raise CohomologyError(f"degree m={m} outside 1..{len(chi) - 1}")


def _exact(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise CohomologyError(f"{what}: {num}/{den} is not an integer")
    return q


def coeff_power(chi: Sequence[int], m: int) -> int:
    """``lcm(chi)^m / lcm{prod_{i in I} chi_i : |I| = m}``."""
    chi = check_weights(chi)
    _check_degree(chi, m)
    den = lcm_all(prod(s) for s in combinations(chi, m))
    return _exact(lcm_all(chi) ** m, den, "power formula")


def coeff_kawasaki(chi: Sequence[int], m: int) -> int:
    """Product over primes of ``q_n^m / (q_n q_{n-1} ... q_{n-m+1})``.

    ``q_0 <= ... <= q_n`` are the ``p``-contents of the weights.
    """
    chi = check_weights(chi)
    _check_degree(chi, m)
    k = 1
    for p in prime_support(chi):
        q = sorted(p_content(c, p) for c in chi)
        k *= _exact(q[-1] ** m, prod(q[-m:]), f"p={p} contents")
    return k


def coeff_alamrani(chi: Sequence[int], m: int) -> int:
    """Denominator taken over ``(m+1)``-subsets, each product divided by its gcd."""
    chi = check_weights(chi)
    _check_degree(chi, m)
    den = lcm_all(prod(s) // gcd_all(s) for s in combinations(chi, m + 1))
    return _exact(lcm_all(chi) ** m, den, "(m+1)-subset formula")


def iota_star_coeff(chi: Sequence[int], subset: Iterable[int]) -> int:
    """Multiple of ``c_m`` that ``a_I`` restricts to on a fibre, ``m = |I|``."""
    chi = check_weights(chi)
    s = tuple(sorted(set(subset)))
    if not s or s[0] < 0 or s[-1] >= len(chi):
        raise CohomologyError(f"bad index subset {s}")
    m = len(s)
    _check_degree(chi, m)
    rest = [c for k, c in enumerate(chi) if k not in s]
    num = prod(lcm_all([chi[i], *rest]) for i in s)
    den = lcm_all(prod(t) for t in combinations(chi, m))
    return _exact(num, den, f"restriction coefficient of a_{s}")


FORMULAS = {
    "power": coeff_power,
    "kawasaki": coeff_kawasaki,
    "alamrani": coeff_alamrani,
}


@dataclass(frozen=True)
class StructureConstants:
    chi: tuple[int, ...]
    coeffs: dict[int, int] = field(hash=False)
    by_formula: dict[str, dict[int, int]] = field(default_factory=dict, hash=False, compare=False)

    @property
    def agreement(self) -> bool:
        return all(v == self.coeffs for v in self.by_formula.values())

    def to_json(self) -> dict:
        return {
            "chi": list(self.chi),
            "structure_constants": {str(m): str(k) for m, k in sorted(self.coeffs.items())},
            "formulas": {
                name: {str(m): str(k) for m, k in sorted(v.items())}
                for name, v in self.by_formula.items()
            },
            "agreement": self.agreement,
        }

    @classmethod
    def from_json(cls, data) -> StructureConstants:
        return cls(
            tuple(int(c) for c in data["chi"]),
            {int(m): int(k) for m, k in data["structure_constants"].items()},
            {
                name: {int(m): int(k) for m, k in v.items()}
                for name, v in data.get("formulas", {}).items()
            },
        )


def structure_constants(chi: Sequence[int]) -> StructureConstants:
    """All ``k_m`` by every formula; ``coeffs`` holds the power-formula values."""
    chi = check_weights(chi)
    table = {
        name: {m: f(chi, m) for m in range(1, len(chi))} for name, f in FORMULAS.items()
    }
    return StructureConstants(chi, table["power"], table)


def a_name(subset: Iterable[int]) -> str:
    return "a_{" + ",".join(str(i) for i in subset) + "}"


def b_name(i: int, j: int) -> str:
    return f"b_{{{i},{j}}}"


@dataclass(frozen=True)
class Relation:
    """One defining relation with exact integer coefficient.

    ``product_all``: the product of ``factors`` is zero.
    ``b_linear``: ``coefficient * target == plus - minus``.
    ``a_divisibility``: ``coefficient * target == product of factors``.
    """

    kind: str
    coefficient: int
    target: str = ""
    factors: tuple[str, ...] = ()
    plus: str = ""
    minus: str = ""

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "coefficient": str(self.coefficient)}
        if self.target:
            out["target"] = self.target
        if self.factors:
            out["factors"] = list(self.factors)
        if self.kind == "b_linear":
            out["plus"], out["minus"] = self.plus, self.minus
        return out

    @classmethod
    def from_json(cls, data) -> Relation:
        return cls(
            data["kind"],
            int(data["coefficient"]),
            data.get("target", ""),
            tuple(data.get("factors", ())),
            data.get("plus", ""),
            data.get("minus", ""),
        )

    def format(self) -> str:
        if self.kind == "product_all":
            return "*".join(self.factors) + " = 0"
        lhs = self.target if self.coefficient == 1 else f"{self.coefficient}*{self.target}"
        if self.kind == "b_linear":
            return f"{lhs} = {self.plus} - {self.minus}"
        return f"{lhs} = " + "*".join(self.factors)


@dataclass(frozen=True)
class RingPresentation:
    chi: tuple[int, ...]
    chi_normalized: tuple[int, ...]
    generators: tuple[tuple[str, int], ...]
    relations: tuple[Relation, ...]

    def to_json(self) -> dict:
        # degrees use the doubled (topological) convention
        return {
            "chi": list(self.chi),
            "chi_normalized": list(self.chi_normalized),
            "generators": [{"name": n, "degree": 2 * d} for n, d in self.generators],
            "relations": [r.to_json() for r in self.relations],
        }

    @classmethod
    def from_json(cls, data) -> RingPresentation:
        gens = []
        for g in data["generators"]:
            if g["degree"] % 2:
                raise CohomologyError(f"odd degree for {g['name']}")
            gens.append((g["name"], g["degree"] // 2))
        return cls(
            tuple(data["chi"]),
            tuple(data["chi_normalized"]),
            tuple(gens),
            tuple(Relation.from_json(r) for r in data["relations"]),
        )


def presentation(fan: Fan) -> RingPresentation:
    """Generators ``a_I`` (``1 <= |I| <= n``), ``b_ij`` and their three relation families."""
    w = fan._weights()
    size = fan.size
    big = lcm_all(w)
    gens: list[tuple[str, int]] = []
    for k in range(1, size):
        gens += [(a_name(s), k) for s in combinations(range(size), k)]
    gens += [(b_name(i, j), 1) for i in range(size) for j in range(size) if i != j]
    rels = [Relation("product_all", 1, factors=tuple(a_name((i,)) for i in range(size)))]
    for i in range(size):
        for j in range(size):
            if i != j:
                rels.append(
                    Relation(
                        "b_linear",
                        big // (w[i] * w[j] // gcd(w[i], w[j])),
                        target=b_name(i, j),
                        plus=a_name((i,)),
                        minus=a_name((j,)),
                    )
                )
    for k in range(2, size):
        for s in combinations(range(size), k):
            rels.append(
                Relation(
                    "a_divisibility",
                    divisor_coefficient(w, s),
                    target=a_name(s),
                    factors=tuple(a_name((i,)) for i in s),
                )
            )
    return RingPresentation(fan.chi, w, tuple(gens), tuple(rels))


def _parse_name(name: str) -> tuple[str, tuple[int, ...]]:
    head, _, body = name.partition("_{")
    return head, tuple(int(x) for x in body.rstrip("}").split(","))


def generator_element(fan: Fan, name: str):
    """The piecewise polynomial a generator name refers to."""
    kind, idx = _parse_name(name)
    if kind == "a":
        return a_subset(fan, idx)
    if kind == "b":
        return global_linear(fan, b_form(fan, *idx))
    raise CohomologyError(f"unknown generator {name!r}")


def check_presentation(fan: Fan, pres: RingPresentation) -> list[str]:
    """Evaluate every relation in the piecewise polynomial ring; return the failures."""
    failures = []
    for rel in pres.relations:
        if rel.kind == "product_all":
            elems = [generator_element(fan, f) for f in rel.factors]
            lhs = elems[0]
            for e in elems[1:]:
                lhs = lhs * e
            ok = lhs.is_zero()
        elif rel.kind == "b_linear":
            lhs = generator_element(fan, rel.target) * rel.coefficient
            ok = lhs == generator_element(fan, rel.plus) - generator_element(fan, rel.minus)
        else:
            lhs = generator_element(fan, rel.target) * rel.coefficient
            rhs = courant(fan, _parse_name(rel.factors[0])[1][0])
            for f in rel.factors[1:]:
                rhs = rhs * courant(fan, _parse_name(f)[1][0])
            ok = lhs == rhs
        if not ok:
            failures.append(rel.format())
    return failures
