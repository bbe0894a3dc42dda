"""Finite trigonometric polynomials in one angle.

Coefficients are kept as exact :class:`fractions.Fraction` values where the
input allows it, so that the products and antiderivatives used to build the
axis perturbations reproduce closed forms such as ``-1/2, -1/20, 1/28`` exactly
before the final conversion to floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import jets


def _coerce(c):
    if isinstance(c, Rational):
        return Fraction(c)
    return float(c)


@dataclass(frozen=True)
class TrigPoly:
    """``c0 + sum_k a_k cos(k t) + b_k sin(k t)`` with ``a = cos[k]``, ``b = sin[k]``."""

    const: object = 0
    cos: dict = field(default_factory=dict)
    sin: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "const", _coerce(self.const))
        object.__setattr__(self, "cos", {int(k): _coerce(v) for k, v in self.cos.items() if v != 0})
        object.__setattr__(self, "sin", {int(k): _coerce(v) for k, v in self.sin.items() if v != 0})
        if any(k <= 0 for k in (*self.cos, *self.sin)):
            raise ValueError("harmonic numbers must be positive integers")

    @classmethod
    def from_lists(cls, const=0, cos=(), sin=()):
        """Build from coefficient lists indexed by harmonic ``k = 1, 2, ...``."""
        return cls(const, {k + 1: v for k, v in enumerate(cos)}, {k + 1: v for k, v in enumerate(sin)})

    @property
    def degree(self) -> int:
        return max([0, *self.cos, *self.sin])

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        cos = dict(self.cos)
        sin = dict(self.sin)
        for k, v in other.cos.items():
            cos[k] = cos.get(k, 0) + v
        for k, v in other.sin.items():
            sin[k] = sin.get(k, 0) + v
        return TrigPoly(self.const + other.const, cos, sin)

    def scale(self, s) -> "TrigPoly":
        s = _coerce(s)
        return TrigPoly(self.const * s, {k: v * s for k, v in self.cos.items()},
                        {k: v * s for k, v in self.sin.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TrigPoly") -> "TrigPoly":
        """Product, reduced back to a trigonometric polynomial by product-to-sum rules."""
        out = {"c": 0, "cos": {}, "sin": {}}

        def put(kind, k, v):
            if v == 0:
                return
            if k == 0:
                if kind == "cos":
                    out["c"] += v
                return  # sin(0) = 0
            if k < 0:
                k = -k
                if kind == "sin":
                    v = -v
            out[kind][k] = out[kind].get(k, 0) + v

        half = Fraction(1, 2)
        terms_a = [("cos", 0, self.const)] + [("cos", k, v) for k, v in self.cos.items()] \
            + [("sin", k, v) for k, v in self.sin.items()]
        terms_b = [("cos", 0, other.const)] + [("cos", k, v) for k, v in other.cos.items()] \
            + [("sin", k, v) for k, v in other.sin.items()]
        for ka, m, va in terms_a:
            for kb, n, vb in terms_b:
                v = va * vb * half
                if ka == "cos" and kb == "cos":
                    put("cos", m - n, v)
                    put("cos", m + n, v)
                elif ka == "sin" and kb == "sin":
                    put("cos", m - n, v)
                    put("cos", m + n, -v)
                elif ka == "sin" and kb == "cos":
                    put("sin", m + n, v)
                    put("sin", m - n, v)
                else:  # cos(m) sin(n)
                    put("sin", m + n, v)
                    put("sin", n - m, v)
        return TrigPoly(out["c"], out["cos"], out["sin"])

    def derivative(self) -> "TrigPoly":
        return TrigPoly(0, {k: k * v for k, v in self.sin.items()},
                        {k: -k * v for k, v in self.cos.items()})

    def antiderivative(self) -> "TrigPoly":
        """Zero-mean antiderivative; requires a vanishing constant term."""
        if self.const != 0:
            raise ValueError("antiderivative of a trigonometric polynomial with nonzero mean is not periodic")
        return TrigPoly(0, {k: -v / k for k, v in self.sin.items()},
                        {k: v / k for k, v in self.cos.items()})

    def _eval_float(self, t):
        t = np.asarray(t, dtype=float)
        out = np.full(t.shape, float(self.const))
        for k, v in sorted(self.cos.items()):
            out = out + float(v) * np.cos(k * t)
        for k, v in sorted(self.sin.items()):
            out = out + float(v) * np.sin(k * t)
        return out

    def __call__(self, t):
        """Evaluate at ``t``; a :class:`~toroidal_euler.jets.Jet` argument returns a Jet."""
        if isinstance(t, jets.Jet):
            d1 = self.derivative()
            return t.chain(self._eval_float(t.val), d1._eval_float(t.val), d1.derivative()._eval_float(t.val))
        return self._eval_float(t)

    def max_abs_bound(self) -> float:
        """Sum of absolute coefficients; an upper bound on ``max |p|``."""
        return float(abs(self.const) + sum(abs(v) for v in self.cos.values())
                     + sum(abs(v) for v in self.sin.values()))

    def max_abs(self, n: int = 4096) -> float:
        """Sampled maximum of ``|p|`` on a uniform grid fine enough for the degree."""
        n = max(n, 64 * (self.degree + 1))
        t = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
        return float(np.max(np.abs(self._eval_float(t))))


SIN1 = TrigPoly(0, {}, {1: 1})
COS1 = TrigPoly(0, {1: 1}, {})
