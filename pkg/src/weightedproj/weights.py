"""Weight normalisation and recovery of weights from the cohomology ring."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from weightedproj.lattice import (
    IntegerMatrix,
    LatticeError,
    LatticeVector,
    gcd_all,
    is_unimodular,
    kernel_basis,
    mat_vec,
    p_content,
    prime_support,
    transpose,
)


class RecoveryError(ValueError):
    pass


def check_weights(chi: Sequence[int]) -> tuple[int, ...]:
    """Validate and freeze a weight vector."""
    try:
        out = tuple(int(c) for c in chi)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"weights must be integers: {chi!r}") from exc
    if len(out) < 2:
        raise ValueError("need at least two weights")
    if any(c < 1 for c in out):
        raise ValueError("weights must be positive")
    return out


def normalize(chi: Sequence[int]) -> tuple[int, ...]:
    """Normalised weights, in the original order.

    Divides by the gcd, then repeatedly divides every weight but one by a
    prime ``p`` that divides all weights except that one.
    """
    chi = check_weights(chi)
    g = gcd_all(chi)
    w = [c // g for c in chi]
    changed = True
    while changed:
        changed = False
        for p in prime_support(w):
            free = [i for i, c in enumerate(w) if c % p]
            if len(free) == 1:
                w = [c if i == free[0] else c // p for i, c in enumerate(w)]
                changed = True
    return tuple(w)


def is_normalized(chi: Sequence[int]) -> bool:
    return all(sum(1 for c in chi if c % p) >= 2 for p in prime_support(chi))


@dataclass(frozen=True)
class AnonymizedRing:
    """Rays of a weighted-projective fan with no weight data attached."""

    rays: tuple[LatticeVector, ...]

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays]}

    @classmethod
    def from_json(cls, data) -> AnonymizedRing:
        rays = tuple(tuple(int(x) for x in r) for r in data["rays"])
        if len(rays) < 2 or len({len(r) for r in rays}) != 1 or len(rays[0]) != len(rays) - 1:
            raise RecoveryError("expected n+1 rays in Z^n")
        return cls(rays)


def anonymize(fan, u: Sequence[Sequence[int]], perm: Sequence[int]) -> AnonymizedRing:
    """Apply a change of basis ``u`` and reorder rays so ray ``i`` is old ray ``perm[i]``."""
    if not is_unimodular(u) or len(u) != fan.dim:
        raise LatticeError("change of basis is not unimodular")
    if sorted(perm) != list(range(len(fan.rays))):
        raise ValueError("not a permutation of the cone indices")
    return AnonymizedRing(tuple(mat_vec(u, fan.rays[k]) for k in perm))


def random_unimodular(n: int, rng: random.Random, steps: int = 10, bound: int = 3) -> IntegerMatrix:
    """Product of random elementary matrices, with a random signed permutation."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    if n >= 2:
        for _ in range(rng.randint(1, steps)):
            i, j = rng.sample(range(n), 2)
            c = rng.choice([k for k in range(-bound, bound + 1) if k])
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    order = list(range(n))
    rng.shuffle(order)
    signs = [rng.choice((1, -1)) for _ in range(n)]
    return tuple(tuple(s * x for x in m[k]) for s, k in zip(signs, order))


def ray_relation(rays: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Positive primitive coefficients of the single linear relation among the rays."""
    size = len(rays)
    rel = kernel_basis(transpose(rays, size), size)
    if len(rel) != 1:
        raise RecoveryError("no weight vector consistent with ray relations")
    w = rel[0]
    if w[0] < 0:
        w = tuple(-x for x in w)
    if any(x <= 0 for x in w):
        raise RecoveryError("no weight vector consistent with ray relations")
    return w


def pair_contents(ring: AnonymizedRing) -> dict[tuple[int, int], tuple[int, int]]:
    """Contents of ``f_j - f_k`` and ``f_j + f_k`` for ``j < k``.

    ``f_i`` is the reduced piecewise linear function vanishing on exactly the
    cone ``sigma_i``; it is determined up to sign, so both combinations are
    reported.
    """
    from weightedproj.fan import FanError, bare_fan
    from weightedproj.piecewise import intrinsic_courant

    ray_relation(ring.rays)
    try:
        fan = bare_fan(ring.rays)
    except FanError as exc:
        raise RecoveryError("no weight vector consistent with ray relations") from exc
    fs = [intrinsic_courant(fan, i) for i in range(fan.size)]
    return {
        (j, k): ((fs[j] - fs[k]).content(), (fs[j] + fs[k]).content())
        for j in range(fan.size)
        for k in range(j + 1, fan.size)
    }


def _q_table(contents, p: int) -> dict[tuple[int, int], int]:
    return {pair: max(p_content(c, p) for c in cs) for pair, cs in contents.items()}


def relevant_primes(ring: AnonymizedRing) -> list[int]:
    """Primes ``p`` with some ``q_jk > 1``."""
    contents = pair_contents(ring)
    return prime_support(c for cs in contents.values() for c in cs)


def maximizing_pairs(ring: AnonymizedRing, p: int) -> list[tuple[int, int]]:
    q = _q_table(pair_contents(ring), p)
    best = max(q.values())
    return sorted(pair for pair, v in q.items() if v == best)


def recover_weights(ring: AnonymizedRing, tie_choice: int = 0) -> tuple[int, ...]:
    """Normalised weights, sorted, read off from the piecewise polynomial ring.

    Only divisibility data of the Courant functions is used. For each prime
    ``p``, ``q_jk`` is the larger ``p``-content of ``f_j -+ f_k``, which equals
    that of ``lcm(chi) / lcm(chi_j, chi_k)``. A pair maximising ``q_jk`` has
    both weights prime to ``p``, and then the ``p``-content of ``chi_i`` is
    ``q_jk / q_ik``. ``tie_choice`` selects among maximising pairs in
    lexicographic order; the default is the smallest.
    """
    contents = pair_contents(ring)
    size = len(ring.rays)
    weights = [1] * size
    for p in prime_support(c for cs in contents.values() for c in cs):
        q = _q_table(contents, p)
        best = max(q.values())
        maximisers = sorted(pair for pair, v in q.items() if v == best)
        j, k = maximisers[tie_choice % len(maximisers)]
        for i in range(size):
            other = k if i != k else j
            num, rem = divmod(best, q[min(i, other), max(i, other)])
            if rem:
                raise RecoveryError("no weight vector consistent with ray relations")
            weights[i] *= num
    return tuple(sorted(weights))
