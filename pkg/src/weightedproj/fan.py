"""The complete simplicial fan of a weighted projective space."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from weightedproj.lattice import (
    LatticeVector,
    determinant,
    gcd_all,
    is_unimodular,
    lcm_all,
    mat_vec,
    quotient_basis,
    smith_invariants,
    transpose,
)
from weightedproj.weights import check_weights, normalize


class FanError(ValueError):
    pass


@dataclass(frozen=True)
class Fan:
    """Rays ``v_0..v_n`` in ``Z^n``; cone ``i`` is spanned by all rays but ``v_i``.

    ``chi`` holds the weights as given and ``chi_normalized`` the normalised
    weights satisfying ``sum(chi_normalized[i] * v_i) == 0`` with primitive
    rays. A fan built by :func:`bare_fan` carries no weights at all.
    """

    rays: tuple[LatticeVector, ...]
    chi: tuple[int, ...] | None = None
    chi_normalized: tuple[int, ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.rays) - 1

    @property
    def size(self) -> int:
        return len(self.rays)

    @property
    def lcm(self) -> int:
        return lcm_all(self._weights())

    def _weights(self) -> tuple[int, ...]:
        if self.chi_normalized is None:
            raise FanError("fan carries no weights")
        return self.chi_normalized

    def cone_rays(self, i: int) -> list[LatticeVector]:
        """Rays spanning the maximal cone ``sigma_i``."""
        return [v for k, v in enumerate(self.rays) if k != i]

    def to_json(self) -> dict:
        out: dict = {}
        if self.chi is not None:
            out["chi"] = list(self.chi)
            out["chi_normalized"] = list(self.chi_normalized)
        out["rays"] = [list(v) for v in self.rays]
        return out

    @classmethod
    def from_json(cls, data) -> Fan:
        rays = [tuple(int(x) for x in v) for v in data["rays"]]
        if "chi" not in data:
            return bare_fan(rays)
        fan = fan_from_rays(rays, data["chi"])
        if "chi_normalized" in data and tuple(data["chi_normalized"]) != fan.chi_normalized:
            raise FanError("chi_normalized does not match chi")
        return fan


def _check_shape(rays: Sequence[Sequence[int]]) -> tuple[LatticeVector, ...]:
    rays = tuple(tuple(int(x) for x in v) for v in rays)
    if len(rays) < 2:
        raise FanError("need at least two rays")
    n = len(rays) - 1
    if any(len(v) != n for v in rays):
        raise FanError(f"expected {n + 1} rays in Z^{n}")
    return rays


def _check_geometry(rays: tuple[LatticeVector, ...]) -> None:
    n = len(rays) - 1
    for subset in combinations(rays, n):
        if determinant(subset) == 0:
            raise FanError("cone not simplicial")
    if smith_invariants(rays) != [1] * n:
        raise FanError("rays do not span lattice")


def bare_fan(rays: Sequence[Sequence[int]]) -> Fan:
    """Validate ray geometry without any weight relation."""
    rays = _check_shape(rays)
    _check_geometry(rays)
    return Fan(rays)


def fan_from_rays(rays: Sequence[Sequence[int]], chi: Iterable[int]) -> Fan:
    """Validate explicit rays against the weights ``chi``.

    Non-primitive rays are allowed when ``chi`` is not normalised; they are
    stored divided by their content, matching the normalised weights.
    """
    rays = _check_shape(rays)
    chi = check_weights(chi)
    if len(chi) != len(rays):
        raise FanError(f"{len(chi)} weights for {len(rays)} rays")
    n = len(rays) - 1
    if any(sum(c * v[k] for c, v in zip(chi, rays)) for k in range(n)):
        raise FanError("weight relation violated")
    _check_geometry(rays)
    w = normalize(chi)
    prim = tuple(tuple(x // gcd_all(v) for x in v) for v in rays)
    if any(sum(c * v[k] for c, v in zip(w, prim)) for k in range(n)):
        raise FanError("rays inconsistent with normalised weights")
    return Fan(prim, chi, w)


def fan_from_weights(chi: Iterable[int]) -> Fan:
    """Deterministic fan for ``chi``: the columns of a lattice quotient by ``chi``."""
    chi = check_weights(chi)
    w = normalize(chi)
    q = quotient_basis(w)
    rays = tuple(transpose(q, len(w)))
    fan_from_rays(rays, w)
    return Fan(rays, chi, w)


def cone_span_basis(fan: Fan, excluded: Iterable[int]) -> list[LatticeVector]:
    """Rays whose index is not in ``excluded``, in index order."""
    excluded = set(excluded)
    if any(not 0 <= i < fan.size for i in excluded):
        raise FanError("cone index out of range")
    return [v for k, v in enumerate(fan.rays) if k not in excluded]


def transform_fan(fan: Fan, u: Sequence[Sequence[int]]) -> Fan:
    """Image of ``fan`` under the unimodular change of basis ``u``."""
    if len(u) != fan.dim or not is_unimodular(u):
        raise FanError("change of basis is not unimodular")
    rays = tuple(mat_vec(u, v) for v in fan.rays)
    if fan.chi is None:
        return bare_fan(rays)
    return Fan(rays, fan.chi, fan.chi_normalized)
