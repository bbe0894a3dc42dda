import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from toroidal_euler import jets

finite = st.floats(-2.0, 2.0, allow_nan=False)
positive = st.floats(0.2, 3.0)


def _fd_grad_hess(fn, y, h=1e-3):
    """Fourth-order finite-difference gradient and Hessian of a scalar function of three variables."""
    y = np.asarray(y, dtype=float)

    def grad_at(k):
        e = np.eye(3) * k
        return np.array([(-fn(*(y + 2 * e[i])) + 8 * fn(*(y + e[i])) - 8 * fn(*(y - e[i])) + fn(*(y - 2 * e[i])))
                         / (12 * k) for i in range(3)])

    def hess_at(k):
        e = np.eye(3) * k
        hs = np.empty((3, 3))
        for i in range(3):
            for j in range(3):
                hs[i, j] = (fn(*(y + e[i] + e[j])) - fn(*(y + e[i] - e[j])) - fn(*(y - e[i] + e[j]))
                            + fn(*(y - e[i] - e[j]))) / (4 * k * k)
        return hs

    # Richardson extrapolation of the second-order mixed stencil
    return grad_at(h), (4 * hess_at(h) - hess_at(2 * h)) / 3


def _composite(a, b, c, mod=np):
    s = mod.sin if mod is np else jets.sin
    co = mod.cos if mod is np else jets.cos
    sq = mod.sqrt if mod is np else jets.sqrt
    ex = mod.exp if mod is np else jets.exp
    lg = mod.log if mod is np else jets.log
    return s(a * b) * sq(c) + co(b) / c - ex(0.3 * a) * lg(c) + (a - b) ** 3 / (1.0 + c * c)


@given(finite, finite, positive)
def test_composite_matches_finite_differences(a, b, c):
    y = jets.variables(a, b, c)
    out = _composite(*y, mod=jets)
    grad, hess = _fd_grad_hess(lambda *v: _composite(*v), (a, b, c))
    assert out.val == pytest.approx(_composite(a, b, c), rel=1e-14, abs=1e-14)
    np.testing.assert_allclose(out.grad, grad, rtol=1e-6, atol=1e-6)
    np.testing.assert_allclose(out.hess, hess, rtol=1e-5, atol=1e-5)


@given(finite, finite, positive)
def test_hessian_is_exactly_symmetric(a, b, c):
    out = _composite(*jets.variables(a, b, c), mod=jets)
    assert np.array_equal(out.hess, out.hess.T)


def test_known_derivatives_of_sqrt():
    # d/dpsi sqrt(1 - psi) = -1/(2 s), d2 = -1/(4 s^3)
    psi, _, _ = jets.variables(0.75, 0.0, 0.0)
    s = jets.sqrt(1.0 - psi)
    assert s.val == 0.5
    assert s.grad[0] == -1.0
    assert s.hess[0, 0] == -2.0


def test_batched_shapes_and_constants():
    psi, theta, zeta = jets.variables(np.linspace(0, 1, 5), 0.3, np.zeros((2, 1)))
    out = psi * theta + 2.0 - zeta
    assert out.val.shape == (2, 5)
    assert out.grad.shape == (2, 5, 3)
    assert out.hess.shape == (2, 5, 3, 3)
    c = jets.as_jet(1.5, (4,))
    assert np.all(c.grad == 0) and np.all(c.val == 1.5)


@given(positive, st.integers(-3, 4))
def test_integer_power_matches_repeated_product(a, n):
    x, _, _ = jets.variables(a, 0.0, 0.0)
    ref = jets.as_jet(1.0, ())
    for _ in range(abs(n)):
        ref = ref * x
    if n < 0:
        ref = 1.0 / ref
    p = x ** n
    np.testing.assert_allclose(p.val, ref.val, rtol=1e-13)
    np.testing.assert_allclose(p.grad, ref.grad, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(p.hess, ref.hess, rtol=1e-12, atol=1e-12)
