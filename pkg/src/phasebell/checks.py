"""Cross-validation suites behind the ``star-check`` and ``bell-state`` reports."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from . import bell
from .moyal import (PRODUCT_TRIM, dequantize, quantize, star_integral, star_series,
                    star_via_operators)
from .phasespace import Disk, WeylSymbol, characteristic_symbol


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str


def gaussian(center=(0.0, 0.0), width=1.0) -> WeylSymbol:
    """exp(-|x - center|^2 / width) with its analytic gradient."""
    c = np.asarray(center, dtype=float)

    def func(x):
        d = x - c
        return np.exp(-(d[..., 0] ** 2 + d[..., 1] ** 2) / width)

    def gradient(x):
        return (-2.0 / width) * (x - c) * func(x)[..., None]

    return WeylSymbol.analytic(func, gradient=gradient, label=f"g{tuple(c)}")


Q = WeylSymbol.polynomial({(1, 0): 1.0}, label="q")
P = WeylSymbol.polynomial({(0, 1): 1.0}, label="p")

GAUSS_F = gaussian((0.3, -0.2), 1.0)
GAUSS_G = gaussian((-0.1, 0.4), 2.0)
TEST_POINTS = ((0.0, 0.0), (0.5, 0.2), (-0.4, 0.7), (1.0, -0.5), (0.2, 0.9))
SCALING_HBARS = (0.4, 0.2, 0.1)


def hbar_scaling_exponent(f=GAUSS_F, g=GAUSS_G, x=(0.2, 0.1), hbars=SCALING_HBARS):
    """Slope of log|f*g - (fg + i hbar/2 {f,g})| against log hbar."""
    residuals = [abs(star_integral(f, g, x, h) - star_series(f, g, x, h)) for h in hbars]
    slope = np.polyfit(np.log(hbars), np.log(residuals), 1)[0]
    return float(slope), residuals


def chi_cross_at_origin(region, m_max: int = 64) -> complex:
    """(chi_+ * chi_-)(0) evaluated as chi_-(0) - (chi_- * chi_-)(0).

    chi_+ = 1 - chi_- and 1 * g = g, so this is exact algebra.  The shell
    sum for chi_- * chi_- converges absolutely, while the direct product
    chi_+ * chi_- converges only conditionally in the Fock cutoff.
    """
    minus = characteristic_symbol(region, "-")
    F = quantize(minus, m_max)
    square = dequantize(F @ F, (0.0, 0.0), check_tail=False, trim=PRODUCT_TRIM)
    return complex(minus(np.zeros(2))) - square


def star_check_suite(m_max: int = 64) -> list[Check]:
    checks = []
    x = (1.0, 1.0)
    series_qp = star_series(Q, P, x)
    checks.append(Check("q*p series route = qp + i/2 at (1,1)",
                        series_qp == 1.0 + 0.5j, f"{series_qp.real:.12g}{series_qp.imag:+.12g}i"))
    ops_qp = star_via_operators(Q, P, m_max, x)
    checks.append(Check("q*p operator route = qp + i/2 at (1,1)",
                        abs(ops_qp - (1.0 + 0.5j)) < 1e-10,
                        f"{ops_qp.real:.12g}{ops_qp.imag:+.12g}i"))

    worst = 0.0
    for pt in TEST_POINTS:
        worst = max(worst, abs(star_integral(GAUSS_F, GAUSS_G, pt)
                               - star_via_operators(GAUSS_F, GAUSS_G, m_max, pt)))
    checks.append(Check("Gaussian f*g: integral vs operator route (5 points)",
                        worst < 1e-6, f"max diff {worst:.3e}"))

    slope, residuals = hbar_scaling_exponent()
    checks.append(Check("first-order series residual scales as hbar^2",
                        slope >= 1.9, f"exponent {slope:.4f}"))

    disk = Disk(1.0)
    plus = quantize(characteristic_symbol(disk, "+"), m_max)
    minus = quantize(characteristic_symbol(disk, "-"), m_max)
    err = float(np.max(np.abs(plus.data + minus.data - np.eye(m_max + 1))))
    checks.append(Check("quantized chi+ + chi- = identity", err < 1e-10, f"max dev {err:.3e}"))

    cross = chi_cross_at_origin(disk, m_max)
    checks.append(Check("chi+ * chi- at origin is nonzero (disk R=1)",
                        abs(cross) > 0.01, f"{cross.real:.6g}{cross.imag:+.3g}i"))

    lam = bell.lambda_recurrence(3, 1 / math.sqrt(2)).values
    squares = (1.0 - 2.0 * lam) ** 2
    checks.append(Check("B^2 != 1: eigenvalues (1-2 lambda_m)^2, m<=3, R=1/sqrt2",
                        bool(np.any(np.abs(squares - 1.0) > 0.1)),
                        ", ".join(f"{v:.6f}" for v in squares)))
    return checks


class Route(NamedTuple):
    name: str
    value: float
    tolerance: float


def bell_state_routes(tol: float = 1e-10, grid: bool = True, perturb: float = 0.0,
                      grid_n: int | None = None):
    """The Bell-state value by every available route.

    ``perturb`` is added to the first route; it exists to exercise the
    disagreement path of the report.
    """
    tight = min(tol, 1e-8)
    routes = [
        Route("factorized", bell.bell_state_value("factorized", tol) + perturb, tight),
        Route("lambda-quadrature", bell.bell_state_value("lambda", tol), tight),
        Route("generating-series", bell.bell_state_value("series", tol), tight),
        Route("abs-wigner", bell.bell_state_value("abs-wigner", tol), tight),
    ]
    if grid:
        routes.append(Route("4d-grid", bell.bell_state_value("grid", 1e-7, grid_n), 1e-6))
    return routes


def routes_agree(routes) -> tuple[bool, float]:
    ref = routes[1].value
    worst = max(abs(r.value - ref) for r in routes)
    return all(abs(r.value - ref) <= r.tolerance for r in routes), worst
