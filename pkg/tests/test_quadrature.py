import numpy as np
import pytest

from mbph import quadrature


def test_polynomial_exactness_single_panel():
    # an n-point rule integrates degree 2n-1 exactly
    for order in (2, 4, 8):
        deg = 2 * order - 1
        coeffs = np.arange(1.0, deg + 2)
        exact = np.sum(coeffs / np.arange(1.0, deg + 2))
        got = quadrature.integrate(
            lambda s: np.polynomial.polynomial.polyval(s, coeffs), order=order, panels=1
        )
        assert got == pytest.approx(exact, rel=1e-14)


def test_composite_matches_single_on_smooth():
    fn = lambda s: np.sin(3.0 * s) * np.exp(s)
    a = quadrature.integrate(fn, order=16, panels=1)
    b = quadrature.integrate(fn, order=8, panels=16)
    assert a == pytest.approx(b, rel=1e-13)


def test_vector_valued_integration():
    out = quadrature.integrate(lambda s: np.stack([s, s**2], axis=-1), order=4, panels=2)
    assert out == pytest.approx([0.5, 1.0 / 3.0], rel=1e-14)


def test_l2_inner_and_symmetry():
    f = lambda s: np.stack([s, np.ones_like(s)], axis=-1)
    g = lambda s: np.stack([np.ones_like(s), s**2], axis=-1)
    # integral of s + s^2
    assert quadrature.l2_inner(f, g, 8, 4) == pytest.approx(0.5 + 1.0 / 3.0, rel=1e-14)
    assert quadrature.l2_inner(f, g, 8, 4) == pytest.approx(quadrature.l2_inner(g, f, 8, 4))


def test_invalid_rule_parameters():
    with pytest.raises(ValueError):
        quadrature.gauss_rule(0)
    with pytest.raises(ValueError):
        quadrature.gauss_rule(4, panels=0)
