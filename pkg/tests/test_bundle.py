import pytest

from conftest import random_chi
from weightedproj.bundle import (
    ChernError,
    PullbackPP,
    chern_factors,
    chern_product,
    chern_term,
    pullback,
    pullback_fan,
    verify_pullback_identity,
    xi_class,
)
from weightedproj.fan import fan_from_weights
from weightedproj.piecewise import PiecewisePolynomial, a_subset, courant
from weightedproj.polynomial import Polynomial


def test_xi_components():
    pf = pullback_fan(fan_from_weights((1, 2, 3, 4)))
    xi = xi_class(pf)
    assert [c.linear_coefficients() for c in xi.components] == [
        (-12, 0, 0, 0),
        (0, -6, 0, 0),
        (0, 0, -4, 0),
        (0, 0, 0, -3),
    ]


def test_pullback_courant_paper(paper_fan):
    pf = pullback_fan(paper_fan)
    a0 = pullback(courant(paper_fan, 0), pf)
    # -6x = -6 x_1 + 12 x_0 on the rays v_1 = e_1 and v_0 = (-2,-3,-4)
    assert a0.components[1].linear_coefficients() == (12, -6, 0, 0)
    assert pullback(PiecewisePolynomial.zero(paper_fan), pf).is_zero()


@pytest.mark.parametrize("chi", [(1, 2, 3, 4), (1, 1, 1, 1), (2, 3), (1, 1)])
def test_chern_product_examples(chi):
    pf = pullback_fan(fan_from_weights(chi))
    assert chern_product(pf).is_zero()
    assert all(verify_pullback_identity(pf, i) for i in range(pf.size))


def test_classical_case_factors():
    pf = pullback_fan(fan_from_weights((1, 1, 1)))
    for i, f in enumerate(chern_factors(pf)):
        # xi + x_i vanishes on cone i and equals x_i - x_j elsewhere
        assert f.components[i].is_zero()


def test_negative_control(paper_fan):
    pf = pullback_fan(paper_fan)
    bump = PullbackPP(pf, (Polynomial.variable(0, 4),) * 4)
    xi = xi_class(pf) + bump
    assert not any(verify_pullback_identity(pf, i, xi) for i in range(4))


def test_chern_product_raises_on_nonzero(monkeypatch, paper_fan):
    import weightedproj.bundle as bundle

    pf = pullback_fan(paper_fan)
    monkeypatch.setattr(bundle, "chern_term", lambda pfan, i: chern_term(pfan, 0))
    with pytest.raises(ChernError, match="Chern relation violated"):
        bundle.chern_product(pf)


def test_pullback_homomorphism_and_injective(rng):
    for _ in range(20):
        fan = fan_from_weights(random_chi(rng, 4, 30))
        pf = pullback_fan(fan)
        a = [courant(fan, i) for i in range(fan.size)]
        f = a[rng.randrange(fan.size)] * a[rng.randrange(fan.size)]
        g = a[rng.randrange(fan.size)] - a[rng.randrange(fan.size)] * 3
        assert pullback(f * g, pf) == pullback(f, pf) * pullback(g, pf)
        assert pullback(f + g, pf) == pullback(f, pf) + pullback(g, pf)
        s = tuple(range(1, fan.size))
        h = a_subset(fan, s)
        assert pullback(h, pf).is_zero() == h.is_zero()
        assert pullback(h, pf).is_compatible()


def test_random_chern(rng):
    for _ in range(40):
        pf = pullback_fan(fan_from_weights(random_chi(rng, 5, 40)))
        xi = xi_class(pf)
        assert xi.is_compatible()
        assert chern_product(pf).is_zero()
        for i in range(pf.size):
            assert verify_pullback_identity(pf, i, xi)
            assert (xi - pullback(courant(pf.base, i), pf)).is_global()
