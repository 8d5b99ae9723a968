"""Bell bounds and violations for dichotomic Weyl symbols.

For a symbol with constant modulus |B| = B0, every local hidden-variable
model obeys |<B>| <= B0.  The quantities here are the disk eigenvalues
lambda_m(R) of the quantized indicator of a disk (three independent
routes), the Bell values 1 - 2 lambda_m(R), the integrals of |W_m|, the
two-mode Bell-state value, and the operator identity behind CHSH.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError, NumericalError
from .phasespace import (Disk, Region, WignerState, bell_symbol, expectation,
                         relative_symbol)
from .series import PowerSeries
from .specfun import integrate_adaptive, laguerre_table, laguerre_zeros

VIOLATION_MARGIN = 1e-12
CIRELSON = math.sqrt(2.0)
LAMBDA_MAX_M = 100


@dataclass(frozen=True)
class EigenvalueSeries:
    R: float
    values: np.ndarray
    method: str

    def __getitem__(self, m):
        return self.values[m]

    def __len__(self):
        return len(self.values)

    @property
    def bell_values(self) -> np.ndarray:
        return 1.0 - 2.0 * self.values


@dataclass(frozen=True)
class BellResult:
    value: float
    lhv_bound: float = 1.0
    violated: bool = False
    ratio: float = 0.0

    @classmethod
    def from_value(cls, value, lhv_bound=1.0):
        value = float(np.real(value))
        return cls(value=value, lhv_bound=lhv_bound,
                   violated=abs(value) > lhv_bound + VIOLATION_MARGIN,
                   ratio=abs(value) / lhv_bound)


def _check_m(m):
    if int(m) != m or m < 0 or m > LAMBDA_MAX_M:
        raise DomainError(f"m must be an integer in 0..{LAMBDA_MAX_M}, got {m}")
    return int(m)


def _fock_integrand(m):
    sign = (-1.0) ** m

    def f(u):
        return sign * laguerre_table(m, 2.0 * u)[m] * np.exp(-u)
    return f


def lambda_interval(m: int, a: float, b: float, tol: float = 1e-13) -> float:
    """int_a^b (-1)^m L_m(2u) e^{-u} du: the weight of W_m where a <= x^2 <= b."""
    m = _check_m(m)
    return float(integrate_adaptive(_fock_integrand(m), a, b, tol=tol).value)


def lambda_quadrature(m: int, R: float, tol: float = 1e-13) -> float:
    """lambda_m(R) = int_0^{R^2} (-1)^m L_m(2u) e^{-u} du by adaptive quadrature."""
    if R < 0:
        raise DomainError("R must be nonnegative")
    return lambda_interval(m, 0.0, R * R, tol)


def lambda_region(m: int, region: Region, tol: float = 1e-13) -> float:
    """Weight of W_m on a radial region, summed over its s-intervals."""
    return sum(lambda_interval(m, lo, hi, tol) for lo, hi in region.intervals())


def lambda_generating(m_max: int, R: float) -> EigenvalueSeries:
    """Taylor coefficients of G(t) = (exp(R^2 (t-1)/(t+1)) - 1) / (t - 1)."""
    m_max = _check_m(m_max)
    order = m_max + 1
    t = PowerSeries.variable(order)
    exponent = (R * R) * ((t - 1.0) / (t + 1.0))
    gen = (exponent.exp() - 1.0) / (t - 1.0)
    values = gen.to_array()
    if not np.all(np.isfinite(values)):
        raise NumericalError(f"generating series overflowed at R={R}")
    return EigenvalueSeries(R=R, values=values, method="generating")


def lambda_recurrence(m_max: int, R: float, check: bool = True) -> EigenvalueSeries:
    """lambda_m = lambda_{m-1} - (-1)^m e^{-R^2} (L_m - L_{m-1})(2 R^2).

    Follows from d/du[e^{-u}(L_m - L_{m-1})(2u)] = -e^{-u}(L_m + L_{m-1})(2u),
    integrated over [0, R^2], starting from lambda_0 = 1 - e^{-R^2}.
    ``check`` compares against quadrature at m = 5 and 20 when in range.
    """
    m_max = _check_m(m_max)
    X = R * R
    decay = math.exp(-X)
    lag = laguerre_table(m_max, 2.0 * X)
    values = np.empty(m_max + 1)
    values[0] = -math.expm1(-X)
    for m in range(1, m_max + 1):
        values[m] = values[m - 1] - (-1) ** m * decay * (lag[m] - lag[m - 1])
    if check:
        for m in (5, 20):
            if m <= m_max:
                ref = lambda_quadrature(m, R)
                if abs(values[m] - ref) > 1e-9 * max(1.0, abs(ref)):
                    raise NumericalError(
                        f"recurrence drifted from quadrature at m={m}", index=m)
    return EigenvalueSeries(R=R, values=values, method="recurrence")


def lambda_series_quadrature(m_max: int, R: float) -> EigenvalueSeries:
    values = np.array([lambda_quadrature(m, R) for m in range(m_max + 1)])
    return EigenvalueSeries(R=R, values=values, method="quadrature")


def bell_value_disk(m: int, R: float) -> BellResult:
    """<1 - 2 chi_disk> in the Fock state |m>, i.e. 1 - 2 lambda_m(R)."""
    m = _check_m(m)
    lam = lambda_recurrence(m, R, check=False)[m]
    return BellResult.from_value(1.0 - 2.0 * lam)


class Figure1Row(NamedTuple):
    m: int
    R: float
    lam: float
    bell_value: float
    abs_bell_value: float
    violated: bool


def figure1_data(m_max: int = 30, R_list: Sequence[float] = (1 / math.sqrt(2), 3.5, 5.5)
                 ) -> list[Figure1Row]:
    """Rows (m, R, lambda, 1 - 2 lambda, |1 - 2 lambda|, violated), sorted by (R, m)."""
    rows = []
    for R in sorted(R_list):
        lam = lambda_recurrence(m_max, R).values
        for m in range(m_max + 1):
            value = 1.0 - 2.0 * lam[m]
            rows.append(Figure1Row(m, R, float(lam[m]), float(value), abs(float(value)),
                                   bool(abs(value) > 1.0 + VIOLATION_MARGIN)))
    return rows


def abs_wigner_integral(m: int, tol: float = 1e-11) -> float:
    """int |W_m| d^2x = int_0^inf |L_m(2u)| e^{-u} du.

    The range is cut at the sign changes u_k = (roots of L_m) / 2 and each
    piece integrated separately, so no sign change can be missed.
    """
    m = _check_m(m)
    f = _fock_integrand(m)
    edges = [0.0]
    if m > 0:
        edges += list(0.5 * laguerre_zeros(m))
    edges.append(math.inf)
    piece_tol = tol / len(edges)
    return math.fsum(abs(integrate_adaptive(f, a, b, tol=piece_tol).value)
                     for a, b in zip(edges[:-1], edges[1:]))


def figure2_data(m_max: int = 30, tol: float = 1e-11) -> list[tuple[int, float]]:
    return [(m, abs_wigner_integral(m, tol)) for m in range(m_max + 1)]


def bell_expectation_general(state: WignerState, region: Region, tol: float = 1e-8,
                             method: str = "auto", n: int | None = None) -> BellResult:
    """Bell value for the dichotomic symbol chi_+ - chi_- of ``region``.

    Single-mode states use the region directly.  For the two-mode Bell
    state the region acts on the relative coordinate; ``method='factorized'``
    integrates out the center of mass (a normalized ground state) and keeps
    the 2D relative integral, ``'grid'`` runs the full 4D product rule.
    """
    symbol = bell_symbol(region)
    if state.modes == 1:
        return BellResult.from_value(expectation(state, symbol, tol), symbol.bound)
    if state.kind != "bell":
        raise DomainError("two-mode Bell values are implemented for the Bell state")
    if method == "auto":
        method = "factorized" if region.radial else "grid"
    if method == "factorized":
        if not region.radial:
            raise DomainError("the factorized route needs a radial region")
        value = expectation(WignerState.fock(1), symbol, tol)
    elif method == "grid":
        value = expectation(state, relative_symbol(symbol), tol, n=n)
    else:
        raise DomainError(f"unknown method {method!r}")
    return BellResult.from_value(value, symbol.bound)


def bell_state_value(route: str = "lambda", tol: float = 1e-10, n: int | None = None) -> float:
    """The Bell-state value |<B>| for the disk R = 1/sqrt2 in the relative plane.

    ``n`` sets the per-axis node count of the 4D grid route.
    """
    R = 1.0 / math.sqrt(2.0)
    if route == "lambda":
        return 1.0 - 2.0 * lambda_quadrature(1, R, tol=min(tol, 1e-13))
    if route == "series":
        return 1.0 - 2.0 * lambda_generating(1, R)[1]
    if route == "abs-wigner":
        return abs_wigner_integral(1, tol=min(tol, 1e-11))
    if route == "factorized":
        return bell_expectation_general(WignerState.bell(), Disk(R), tol, "factorized").value
    if route == "grid":
        return bell_expectation_general(WignerState.bell(), Disk(R), max(tol, 1e-7),
                                        "grid", n=n).value
    raise DomainError(f"unknown route {route!r}")


class CirelsonComparison(NamedTuple):
    ratio: float
    flag: str   # 'exceeds', 'equal' or 'below'


def cirelson_ratio(result: BellResult, band: float = 1e-12) -> CirelsonComparison:
    """|value| / bound against sqrt2, the largest quantum-to-local CHSH ratio."""
    if result.lhv_bound <= 0:
        raise DomainError("the LHV bound must be positive")
    ratio = abs(result.value) / result.lhv_bound
    if abs(ratio - CIRELSON) <= band:
        flag = "equal"
    elif ratio > CIRELSON:
        flag = "exceeds"
    else:
        flag = "below"
    return CirelsonComparison(ratio, flag)


# --------------------------------------------------------------------------
# CHSH operator identity

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def random_dichotomic(rng: np.random.Generator) -> np.ndarray:
    """U diag(1, -1) U^dagger for a Haar-random 2x2 unitary U."""
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    u = q * (np.diag(r) / np.abs(np.diag(r)))
    return u @ PAULI_Z @ u.conj().T


def random_state(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def chsh_operator(X1, Y1, X2, Y2) -> np.ndarray:
    """X1 X2 + X1 Y2 + Y1 X2 - Y1 Y2 on the tensor-product space."""
    return (np.kron(X1, X2) + np.kron(X1, Y2) + np.kron(Y1, X2) - np.kron(Y1, Y2))


def chsh_identity_check(X1, Y1, X2, Y2, state) -> float:
    """|<B^2> - 4 - <[Y1, X1][X2, Y2]>| for dichotomic X_i, Y_i."""
    eye = np.eye(2)
    for name, obs in (("X1", X1), ("Y1", Y1), ("X2", X2), ("Y2", Y2)):
        obs = np.asarray(obs)
        if obs.shape != (2, 2) or np.max(np.abs(obs @ obs - eye)) > 1e-12 \
                or np.max(np.abs(obs - obs.conj().T)) > 1e-12:
            raise DomainError(f"{name} is not a dichotomic Hermitian 2x2 matrix")
    state = np.asarray(state, dtype=complex)
    B = chsh_operator(X1, Y1, X2, Y2)
    comm = np.kron(Y1 @ X1 - X1 @ Y1, X2 @ Y2 - Y2 @ X2)
    lhs = np.vdot(state, B @ B @ state)
    rhs = 4.0 + np.vdot(state, comm @ state)
    return float(abs(lhs - rhs))


def chsh_random_suite(draws: int = 1000, seed: int = 42) -> float:
    """Max identity residual over seeded random observables and states."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        obs = [random_dichotomic(rng) for _ in range(4)]
        worst = max(worst, chsh_identity_check(*obs, random_state(rng)))
    return worst


SINGLET = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2.0)


def _xz_observable(angle):
    return math.cos(angle) * PAULI_Z + math.sin(angle) * PAULI_X


def singlet_chsh_value(angles) -> float:
    a1, b1, a2, b2 = angles
    B = chsh_operator(_xz_observable(a1), _xz_observable(b1),
                      _xz_observable(a2), _xz_observable(b2))
    return float(np.vdot(SINGLET, B @ SINGLET).real)


def optimize_singlet_chsh(seed: int = 42, starts: int = 8) -> tuple[float, np.ndarray]:
    """Maximize |<B>| over measurement angles in the x-z plane (seeded restarts)."""
    from scipy.optimize import minimize
    rng = np.random.default_rng(seed)
    best_value, best_angles = -np.inf, None
    for _ in range(starts):
        x0 = rng.uniform(0, 2 * math.pi, 4)
        res = minimize(lambda a: -abs(singlet_chsh_value(a)), x0, method="BFGS",
                       options={"gtol": 1e-12})
        if -res.fun > best_value:
            best_value, best_angles = -res.fun, res.x
    return float(best_value), best_angles
