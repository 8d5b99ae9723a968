"""Truncated formal power series with float coefficients.

Only what the eigenvalue generating function needs: ring operations,
reciprocal and exponential.  Convolutions are summed with ``math.fsum`` so
each coefficient carries a single rounding.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, NumericalError


class PowerSeries:
    """Coefficients c_0 .. c_{order-1} of a series in t."""

    def __init__(self, coeffs, order=None):
        coeffs = [float(c) for c in coeffs]
        if order is None:
            order = len(coeffs)
        coeffs = coeffs[:order] + [0.0] * max(0, order - len(coeffs))
        self.coeffs = coeffs
        self.order = order

    @classmethod
    def constant(cls, value, order):
        return cls([value], order)

    @classmethod
    def variable(cls, order):
        return cls([0.0, 1.0], order)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return self.order

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:6])
        return f"PowerSeries([{head}{', ...' if self.order > 6 else ''}], order={self.order})"

    def _coerce(self, other):
        if isinstance(other, PowerSeries):
            if other.order != self.order:
                raise DomainError("series orders differ")
            return other
        return PowerSeries.constant(other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        return PowerSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries([other * c for c in self.coeffs])
        a, b = self.coeffs, self._coerce(other).coeffs
        return PowerSeries([math.fsum(a[j] * b[k - j] for j in range(k + 1))
                            for k in range(self.order)])

    __rmul__ = __mul__

    def reciprocal(self) -> "PowerSeries":
        a = self.coeffs
        if a[0] == 0.0:
            raise DomainError("series with zero constant term has no reciprocal")
        out = [1.0 / a[0]]
        for k in range(1, self.order):
            out.append(-math.fsum(a[j] * out[k - j] for j in range(1, k + 1)) / a[0])
        return PowerSeries(out)

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * other.reciprocal()
        return self * (1.0 / other)

    def exp(self) -> "PowerSeries":
        """exp of the series; k c_k = sum_j j a_j c_{k-j} with c_0 = exp(a_0)."""
        a = self.coeffs
        out = [math.exp(a[0])]
        for k in range(1, self.order):
            out.append(math.fsum(j * a[j] * out[k - j] for j in range(1, k + 1)) / k)
        if not all(math.isfinite(c) for c in out):
            raise NumericalError("series exponential overflowed",
                                 index=next(i for i, c in enumerate(out)
                                            if not math.isfinite(c)))
        return PowerSeries(out)

    def to_array(self) -> np.ndarray:
        return np.array(self.coeffs)
