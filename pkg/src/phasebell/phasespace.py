"""Phase-space data model: points, grids, regions, Wigner states, Weyl symbols.

Units are dimensionless with hbar = 1 and lengths in ground-state widths.
Points of an n-mode phase space are arrays whose last axis holds
``(q1, p1, ..., qn, pn)``.  States and symbols are vectorized callables on
such arrays; they also carry quadrature hints (radial profile, radial
discontinuities, preferred coordinate frame) that ``expectation`` uses to
pick a rule that converges.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConfigurationError, DomainError, IntegrationError
from .specfun import (composite_gauss_legendre, gauss_legendre, hermite_functions,
                      integrate_adaptive, laguerre_eval)

HBAR = 1.0
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class PhasePoint:
    q: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and math.isfinite(self.p)):
            raise DomainError("phase-space point components must be finite")

    @property
    def s(self) -> float:
        """Squared radius x^2 = q^2 + p^2."""
        return self.q * self.q + self.p * self.p

    def __array__(self, dtype=None, copy=None):
        return np.array([self.q, self.p], dtype=dtype)

    def __add__(self, other):
        return PhasePoint(self.q + other.q, self.p + other.p)

    def __sub__(self, other):
        return PhasePoint(self.q - other.q, self.p - other.p)


ORIGIN = PhasePoint(0.0, 0.0)


def as_points(x, modes: int = 1) -> np.ndarray:
    """Coerce a PhasePoint, a sequence of them, or an array to shape (..., 2n)."""
    if isinstance(x, PhasePoint):
        arr = np.array([x.q, x.p])
    elif isinstance(x, (list, tuple)) and x and isinstance(x[0], PhasePoint):
        arr = np.concatenate([[pt.q, pt.p] for pt in x])
    else:
        arr = np.asarray(x, dtype=float)
    if arr.shape[-1] != 2 * modes:
        raise DomainError(f"expected last axis of length {2 * modes}, got {arr.shape}")
    return arr


def radius2(x: np.ndarray, mode: int = 0) -> np.ndarray:
    q, p = x[..., 2 * mode], x[..., 2 * mode + 1]
    return q * q + p * p


def com_coords(x1: PhasePoint, x2: PhasePoint) -> tuple[PhasePoint, PhasePoint]:
    """Center-of-mass and relative points, ((x1+x2)/sqrt2, (x1-x2)/sqrt2)."""
    xc = PhasePoint((x1.q + x2.q) / SQRT2, (x1.p + x2.p) / SQRT2)
    dx = PhasePoint((x1.q - x2.q) / SQRT2, (x1.p - x2.p) / SQRT2)
    return xc, dx


def com_transform(x: np.ndarray) -> np.ndarray:
    """Two-mode lab array (q1,p1,q2,p2) to frame array (qc,pc,dq,dp).

    The transform is an orthogonal involution, so it also maps back.
    """
    a, b = x[..., :2], x[..., 2:]
    return np.concatenate([(a + b) / SQRT2, (a - b) / SQRT2], axis=-1)


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform grid on [-extent, extent]^(2n) with ``n`` points per axis."""

    extent: float
    n: int = 128
    modes: int = 1

    def __post_init__(self):
        if self.n < 8:
            raise ConfigurationError("a PhaseGrid needs at least 8 points per axis")
        if self.extent <= 0:
            raise ConfigurationError("grid extent must be positive")

    @property
    def axis(self) -> np.ndarray:
        return np.linspace(-self.extent, self.extent, self.n)

    @property
    def spacing(self) -> float:
        return 2.0 * self.extent / (self.n - 1)

    def points(self) -> np.ndarray:
        """All grid points, shape (n, ..., n, 2*modes), row-major axis order."""
        axes = np.meshgrid(*([self.axis] * (2 * self.modes)), indexing="ij")
        return np.stack(axes, axis=-1)

    def sample(self, f: Callable) -> np.ndarray:
        return np.asarray(f(self.points()))

    def trapezoid_weights(self) -> np.ndarray:
        w = np.full(self.n, self.spacing)
        w[[0, -1]] *= 0.5
        out = w
        for _ in range(2 * self.modes - 1):
            out = np.multiply.outer(out, w)
        return out

    def gauss_rule(self) -> tuple[np.ndarray, np.ndarray]:
        """Gauss-Legendre nodes and weights with about ``n`` points on one axis.

        Up to 64 points this is a single rule; beyond, equal panels of 32
        points (``n`` rounded up to a multiple of 32).
        """
        if self.n <= 64:
            rule = gauss_legendre(self.n).mapped(-self.extent, self.extent)
        else:
            panels = -(-self.n // 32)
            rule = composite_gauss_legendre(np.linspace(-self.extent, self.extent, panels + 1),
                                            order=32)
        return rule.nodes, rule.weights


def write_grid_csv(path, grid: PhaseGrid, values) -> None:
    """Columnar debug dump: q, p, value (complex values as re, im)."""
    if grid.modes != 1:
        raise DomainError("CSV export is defined for single-mode grids")
    values = np.asarray(values)
    pts = grid.points().reshape(-1, 2)
    flat = values.reshape(-1)
    is_complex = np.iscomplexobj(flat)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["q", "p", "value"] + (["value_imag"] if is_complex else []))
        for (q, p), v in zip(pts, flat):
            row = [f"{q:.17g}", f"{p:.17g}", f"{v.real:.17g}"]
            if is_complex:
                row.append(f"{v.imag:.17g}")
            writer.writerow(row)


def read_grid_csv(path) -> tuple[PhaseGrid, np.ndarray]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], np.array(rows[1:], dtype=float)
    n = int(round(math.sqrt(len(body))))
    if n * n != len(body):
        raise DomainError("CSV does not hold a square grid")
    grid = PhaseGrid(extent=float(body[:, 0].max()), n=n)
    values = body[:, 2] + (1j * body[:, 3] if len(header) > 3 else 0.0)
    return grid, values.reshape(n, n)


# --------------------------------------------------------------------------
# regions


class Region:
    """Measurable subset of a single-mode phase space."""

    radial = False

    def contains(self, x) -> np.ndarray:
        raise NotImplementedError

    def intervals(self) -> list[tuple[float, float]]:
        """Membership as disjoint intervals in s = x^2 (radial regions only)."""
        raise DomainError(f"{type(self).__name__} is not radial")

    @property
    def breaks(self) -> tuple[float, ...]:
        if not self.radial:
            return ()
        ends = {v for iv in self.intervals() for v in iv if 0 < v < math.inf}
        return tuple(sorted(ends))


@dataclass(frozen=True)
class Disk(Region):
    R: float
    radial = True

    def __post_init__(self):
        if self.R <= 0:
            raise DomainError("disk radius must be positive")

    def contains(self, x):
        return radius2(as_points(x)) <= self.R ** 2

    def intervals(self):
        return [(0.0, self.R ** 2)]


@dataclass(frozen=True)
class Annulus(Region):
    R1: float
    R2: float
    radial = True

    def __post_init__(self):
        if not 0 <= self.R1 < self.R2:
            raise DomainError("annulus requires 0 <= R1 < R2")

    def contains(self, x):
        s = radius2(as_points(x))
        return (s >= self.R1 ** 2) & (s <= self.R2 ** 2)

    def intervals(self):
        return [(self.R1 ** 2, self.R2 ** 2)]


@dataclass(frozen=True)
class HalfPlane(Region):
    """Points whose ``axis`` coordinate ('q' or 'p') is >= threshold."""

    axis: str
    threshold: float = 0.0

    def __post_init__(self):
        if self.axis not in ("q", "p"):
            raise DomainError("half-plane axis must be 'q' or 'p'")

    def contains(self, x):
        x = as_points(x)
        return x[..., 0 if self.axis == "q" else 1] >= self.threshold


@dataclass(frozen=True)
class Complement(Region):
    inner: Region

    @property
    def radial(self):
        return self.inner.radial

    def contains(self, x):
        return ~self.inner.contains(x)

    def intervals(self):
        out, start = [], 0.0
        for lo, hi in self.inner.intervals():
            if lo > start:
                out.append((start, lo))
            start = hi
        if start < math.inf:
            out.append((start, math.inf))
        return out


@dataclass(frozen=True)
class Predicate(Region):
    """Region given by a vectorized boolean function of the point array."""

    fn: Callable = field(compare=False)
    is_radial: bool = False
    radial_intervals: Optional[tuple] = None

    @property
    def radial(self):
        return self.is_radial and self.radial_intervals is not None

    def contains(self, x):
        return np.asarray(self.fn(as_points(x)), dtype=bool)

    def intervals(self):
        if not self.radial:
            return super().intervals()
        return list(self.radial_intervals)


# --------------------------------------------------------------------------
# Weyl symbols


@dataclass(frozen=True)
class WeylSymbol:
    """A phase-space function standing for an operator.

    ``func`` maps a point array (..., 2n) in lab coordinates to complex
    values.  Optional hints:

    ``profile``   function of s = x^2 (single mode) when the symbol is radial
    ``gradient``  analytic gradient, array (..., 2n)
    ``breaks``    per-mode radial discontinuities in s, in ``frame`` coordinates
    ``frame``     'lab' or 'com' (two modes: center-of-mass / relative)
    ``decays``    False for symbols that do not vanish at infinity
    ``coefficients``  monomial map {(mu_1, ..., mu_2n): B} for polynomials
    """

    func: Callable = field(compare=False)
    modes: int = 1
    profile: Optional[Callable] = field(default=None, compare=False)
    gradient: Optional[Callable] = field(default=None, compare=False)
    dichotomic: bool = False
    bound: Optional[float] = None
    breaks: tuple = ()
    frame: str = "lab"
    decays: bool = True
    coefficients: Optional[dict] = field(default=None, compare=False)
    label: str = ""

    def __call__(self, x) -> np.ndarray:
        x = as_points(x, self.modes)
        out = np.asarray(self.func(x), dtype=complex)
        if self.dichotomic and not np.all(np.isin(out, (1.0, -1.0))):
            raise DomainError("dichotomic symbol produced a value outside {+1, -1}")
        return out.item() if out.ndim == 0 else out

    @property
    def radial(self) -> bool:
        return self.profile is not None

    def mode_breaks(self, mode: int) -> tuple:
        return tuple(self.breaks[mode]) if mode < len(self.breaks) else ()

    # construction -----------------------------------------------------

    @classmethod
    def analytic(cls, func, gradient=None, modes=1, decays=True, label=""):
        return cls(func=func, gradient=gradient, modes=modes, decays=decays, label=label)

    @classmethod
    def radial_profile(cls, profile, breaks=(), decays=True, dichotomic=False,
                       bound=None, label=""):
        def func(x):
            return profile(radius2(x))
        return cls(func=func, profile=profile, breaks=(tuple(breaks),),
                   decays=decays, dichotomic=dichotomic,
                   bound=1.0 if dichotomic else bound, label=label)

    @classmethod
    def polynomial(cls, coefficients: dict, modes: int = 1, label=""):
        """Sum of B_mu q1^mu1 p1^mu2 ... (Weyl-ordered operator counterpart)."""
        coefficients = {tuple(k): complex(v) for k, v in coefficients.items()}
        for key in coefficients:
            if len(key) != 2 * modes or min(key) < 0:
                raise DomainError(f"bad monomial exponent {key}")

        def func(x):
            out = np.zeros(x.shape[:-1], dtype=complex)
            for powers, c in coefficients.items():
                term = np.full(x.shape[:-1], c)
                for axis, mu in enumerate(powers):
                    if mu:
                        term = term * x[..., axis] ** mu
                out = out + term
            return out

        def gradient(x):
            out = np.zeros(x.shape, dtype=complex)
            for powers, c in coefficients.items():
                for axis, mu in enumerate(powers):
                    if mu == 0:
                        continue
                    term = np.full(x.shape[:-1], c * mu)
                    for other, nu in enumerate(powers):
                        exponent = nu - 1 if other == axis else nu
                        if exponent:
                            term = term * x[..., other] ** exponent
                    out[..., axis] += term
            return out

        return cls(func=func, gradient=gradient, modes=modes, decays=False,
                   coefficients=coefficients, label=label)

    @classmethod
    def constant(cls, value=1.0, modes=1):
        if modes == 1:
            return cls.radial_profile(lambda s: np.full(np.shape(s), complex(value)),
                                      decays=False, label=f"{value}")
        return cls(func=lambda x: np.full(x.shape[:-1], complex(value)),
                   modes=modes, decays=False, label=f"{value}")

    @classmethod
    def from_grid(cls, grid: PhaseGrid, values):
        """Symbol interpolated (linearly) from single-mode grid samples."""
        from scipy.interpolate import RegularGridInterpolator
        if grid.modes != 1:
            raise DomainError("grid symbols are single-mode")
        values = np.asarray(values, dtype=complex)
        interp = RegularGridInterpolator((grid.axis, grid.axis), values,
                                         bounds_error=False, fill_value=0.0)
        return cls(func=lambda x: interp(x.reshape(-1, 2)).reshape(x.shape[:-1]),
                   label="grid")

    # algebra ----------------------------------------------------------

    def conj(self) -> "WeylSymbol":
        f = self.func
        prof = self.profile
        grad = self.gradient
        return replace(self, func=lambda x: np.conj(f(x)),
                       profile=None if prof is None else (lambda s: np.conj(prof(s))),
                       gradient=None if grad is None else (lambda x: np.conj(grad(x))),
                       coefficients=None if self.coefficients is None else
                       {k: np.conj(v) for k, v in self.coefficients.items()})

    def shifted(self, x0) -> "WeylSymbol":
        """y -> symbol(y + x0); the symbol of D(x0)^dagger A D(x0)."""
        x0 = as_points(x0, self.modes)
        if not np.any(x0):
            return self
        f, grad = self.func, self.gradient
        return WeylSymbol(func=lambda y: f(y + x0),
                          gradient=None if grad is None else (lambda y: grad(y + x0)),
                          modes=self.modes, dichotomic=self.dichotomic,
                          bound=self.bound, decays=self.decays, label=self.label)

    def _combine(self, other, op, name):
        if not isinstance(other, WeylSymbol):
            other = WeylSymbol.constant(other, self.modes)
        if other.modes != self.modes:
            raise DomainError("cannot combine symbols on different mode counts")
        f, g = self.func, other.func
        profile = None
        if self.profile is not None and other.profile is not None:
            fp, gp = self.profile, other.profile
            profile = lambda s: op(fp(s), gp(s))  # noqa: E731
        gradient = None
        if self.gradient is not None and other.gradient is not None and name in "+-":
            fg, gg = self.gradient, other.gradient
            gradient = lambda x: op(fg(x), gg(x))  # noqa: E731
        if self.frame == other.frame:
            frame = self.frame
            breaks = tuple(tuple(sorted(set(self.mode_breaks(i)) | set(other.mode_breaks(i))))
                           for i in range(self.modes))
        else:
            # a break-free lab symbol is smooth in any frame
            lab, com = (self, other) if self.frame == "lab" else (other, self)
            if any(lab.breaks):
                raise DomainError("cannot merge radial breaks from different frames")
            frame, breaks = "com", com.breaks
        return WeylSymbol(func=lambda x: op(f(x), g(x)), modes=self.modes,
                          profile=profile, gradient=gradient, breaks=breaks,
                          frame=frame, decays=self.decays and other.decays,
                          label=f"({self.label}{name}{other.label})")

    def __add__(self, other):
        return self._combine(other, np.add, "+")

    def __sub__(self, other):
        return self._combine(other, np.subtract, "-")

    def __mul__(self, other):
        if np.isscalar(other):
            c = complex(other)
            f, prof, grad = self.func, self.profile, self.gradient
            return replace(self, func=lambda x: c * f(x),
                           profile=None if prof is None else (lambda s: c * prof(s)),
                           gradient=None if grad is None else (lambda x: c * grad(x)),
                           dichotomic=False, bound=None if self.bound is None
                           else abs(c) * self.bound, coefficients=None)
        return self._combine(other, np.multiply, "*")

    __rmul__ = __mul__


def characteristic_symbol(region: Region, sign) -> WeylSymbol:
    """Indicator symbol chi_+ (complement of ``region``) or chi_- (``region``).

    ``region`` plays the part of the negativity set E_-; ``sign`` is '+' or
    '-' (or +1 / -1).  Boundary points count as inside the region.
    """
    sign = {"+": 1, "-": -1}.get(sign, sign)
    if sign not in (1, -1):
        raise DomainError("sign must be '+' or '-'")
    target = region if sign == -1 else Complement(region)
    label = f"chi{'+' if sign == 1 else '-'}"
    if region.radial:
        ivals = target.intervals()

        def profile(s):
            s = np.asarray(s, dtype=float)
            inside = np.zeros(s.shape, dtype=bool)
            for lo, hi in ivals:
                inside |= (s >= lo) & (s <= hi)
            # region boundary belongs to the region, not to its complement
            if sign == 1:
                for edge in region.breaks:
                    inside &= s != edge
            return inside.astype(complex)

        return WeylSymbol.radial_profile(profile, breaks=region.breaks,
                                         decays=(sign == -1 and math.isfinite(
                                             max(hi for _, hi in ivals))),
                                         label=label)
    return WeylSymbol(func=lambda x: target.contains(x).astype(complex),
                      decays=False, label=label)


def bell_symbol(region: Region) -> WeylSymbol:
    """Dichotomic symbol chi_+ - chi_- = 1 - 2 chi_- with bound 1."""
    minus = characteristic_symbol(region, "-")
    f, prof = minus.func, minus.profile
    out = WeylSymbol(func=lambda x: 1.0 - 2.0 * f(x), modes=1,
                     profile=None if prof is None else (lambda s: 1.0 - 2.0 * prof(s)),
                     breaks=minus.breaks, dichotomic=True, bound=1.0,
                     decays=False, label="B")
    return out


def relative_symbol(symbol: WeylSymbol) -> WeylSymbol:
    """Lift a single-mode symbol to two modes, acting on dx = (x1 - x2)/sqrt2."""
    if symbol.modes != 1:
        raise DomainError("relative_symbol lifts single-mode symbols")
    f = symbol.func
    return WeylSymbol(func=lambda x: f(com_transform(x)[..., 2:]), modes=2,
                      breaks=((), symbol.mode_breaks(0)), frame="com",
                      dichotomic=symbol.dichotomic, bound=symbol.bound,
                      decays=False, label=f"rel[{symbol.label}]")


# --------------------------------------------------------------------------
# Wigner states


def wigner_fock(m: int, x) -> np.ndarray:
    """W_m(x) = (-1)^m L_m(2 x^2) exp(-x^2) / pi."""
    return _result(wigner_fock_radial(m, radius2(as_points(x))))


def wigner_fock_radial(m: int, s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    return (-1) ** m * np.asarray(laguerre_eval(m, 2.0 * s)) * np.exp(-s) / math.pi


def wigner_bell(xc, dx) -> np.ndarray:
    """Two-mode singlet-like state in center-of-mass coordinates.

    pi^-2 exp(-(xc^2 + dx^2)) (2 dx^2 - 1)
    """
    sc = radius2(as_points(xc))
    sd = radius2(as_points(dx))
    return _result(np.exp(-(sc + sd)) * (2.0 * sd - 1.0) / math.pi ** 2)


def _result(value):
    value = np.asarray(value)
    return value.item() if value.ndim == 0 else value


@dataclass(frozen=True)
class WignerState:
    """Wigner function of a (pure or mixed) state on ``modes`` modes."""

    kind: str
    func: Callable = field(compare=False)
    modes: int = 1
    profile: Optional[Callable] = field(default=None, compare=False)
    frame: str = "lab"
    extent: float = 6.0
    params: tuple = ()
    grid: Optional[PhaseGrid] = field(default=None, compare=False)
    values: Optional[np.ndarray] = field(default=None, compare=False)

    def __call__(self, x):
        return _result(self.func(as_points(x, self.modes)))

    @property
    def radial(self) -> bool:
        return self.profile is not None

    @classmethod
    def fock(cls, m: int) -> "WignerState":
        if m < 0:
            raise DomainError("Fock index must be nonnegative")
        return cls(kind="fock", func=lambda x: wigner_fock_radial(m, radius2(x)),
                   profile=lambda s: wigner_fock_radial(m, s),
                   extent=max(6.0, math.sqrt(2 * m + 1) + 5.0), params=(m,))

    @classmethod
    def bell(cls) -> "WignerState":
        """(|0>|1> - |1>|0>)/sqrt2 for two oscillators."""
        def func(x):
            y = com_transform(x)
            return wigner_bell(y[..., :2], y[..., 2:])
        return cls(kind="bell", func=func, modes=2, frame="com", extent=6.0)

    @classmethod
    def product(cls, states: Sequence["WignerState"]) -> "WignerState":
        states = list(states)
        if any(st.modes != 1 for st in states):
            raise DomainError("product states are built from single-mode factors")

        def func(x):
            out = np.ones(x.shape[:-1])
            for i, st in enumerate(states):
                out = out * st.func(x[..., 2 * i:2 * i + 2])
            return out
        return cls(kind="product", func=func, modes=len(states),
                   extent=max(st.extent for st in states),
                   params=tuple(st.params for st in states))

    @classmethod
    def from_grid(cls, grid: PhaseGrid, values) -> "WignerState":
        values = np.asarray(values, dtype=float)
        sym = WeylSymbol.from_grid(grid, values)
        return cls(kind="grid", func=lambda x: np.real(sym.func(x)),
                   extent=grid.extent, grid=grid, values=values)


# --------------------------------------------------------------------------
# expectation values


def _mode_rule(extent: float, breaks: tuple, n: int):
    """2D product rule for one mode: polar if the mode has radial breaks."""
    if not breaks:
        rule = gauss_legendre(n).mapped(-extent, extent)
        q, p = np.meshgrid(rule.nodes, rule.nodes, indexing="ij")
        w = np.outer(rule.weights, rule.weights)
        return np.stack([q.ravel(), p.ravel()], axis=-1), w.ravel()
    r_edges = [0.0] + [math.sqrt(b) for b in breaks if b < extent ** 2] + [extent * SQRT2]
    r_rule = composite_gauss_legendre(r_edges, order=max(8, n // 3), panel=2.0)
    n_theta = max(16, n // 2)
    theta = 2 * math.pi * np.arange(n_theta) / n_theta
    r, th = np.meshgrid(r_rule.nodes, theta, indexing="ij")
    w = np.outer(r_rule.weights * r_rule.nodes, np.full(n_theta, 2 * math.pi / n_theta))
    pts = np.stack([(r * np.cos(th)).ravel(), (r * np.sin(th)).ravel()], axis=-1)
    return pts, w.ravel()


def _tensor_integral(state, symbol, n, extent, frame, chunk=2 ** 20):
    rules = [_mode_rule(extent, symbol.mode_breaks(i) if symbol.frame == frame else (), n)
             for i in range(state.modes)]
    if state.modes == 1:
        pts, w = rules[0]
        return np.sum(w * state.func(pts) * symbol.func(pts))
    (p0, w0), (p1, w1) = rules
    total = 0.0 + 0.0j
    rows = max(1, chunk // len(p1))
    for start in range(0, len(p0), rows):
        a = p0[start:start + rows]
        pts = np.concatenate([np.repeat(a, len(p1), axis=0),
                              np.tile(p1, (len(a), 1))], axis=-1)
        if frame == "com":
            pts = com_transform(pts)
        ww = np.outer(w0[start:start + rows], w1).ravel()
        total += np.sum(ww * state.func(pts) * symbol.func(pts))
    return total


def expectation(state: WignerState, symbol: WeylSymbol, tol: float = 1e-8,
                n: Optional[int] = None) -> complex:
    """<A> = integral of W * Smb[A] over phase space.

    Single-mode radial pairs reduce to pi * int_0^inf W(s) A(s) ds, split at
    the symbol's radial discontinuities.  Everything else uses a tensor
    product rule on the truncated box (Gauss-Legendre per axis, or polar
    Gauss-Legendre x trapezoid on modes whose symbol has radial breaks),
    evaluated at two resolutions whose difference must stay within ``tol``.
    Two-mode integrals run in center-of-mass coordinates when the state or
    symbol declares that frame.
    """
    if state.modes != symbol.modes:
        raise DomainError("state and symbol live on different mode counts")
    if state.kind == "grid":
        grid = state.grid
        return complex(np.sum(grid.trapezoid_weights() * state.values
                              * symbol.func(grid.points())))
    if state.modes == 1 and state.radial and symbol.radial:
        edges = [0.0] + list(symbol.mode_breaks(0)) + [math.inf]
        total = 0.0 + 0.0j
        for lo, hi in zip(edges[:-1], edges[1:]):
            def integrand(s):
                return np.pi * state.profile(s) * symbol.profile(s)
            res = integrate_adaptive(integrand, lo, hi, tol=tol / len(edges))
            total += res.value
        return complex(total)
    if state.modes > 2:
        raise DomainError("expectation supports at most two modes")
    frame = "com" if "com" in (state.frame, symbol.frame) else "lab"
    if n is None:
        # about 16 nodes per unit length resolves Fock oscillations to m = 30
        n = max(128, math.ceil(16 * state.extent)) if state.modes == 1 else 48
    coarse = _tensor_integral(state, symbol, n, state.extent, frame)
    fine = _tensor_integral(state, symbol, n + 16, state.extent, frame)
    if abs(fine - coarse) > tol:
        raise IntegrationError(
            f"tensor quadrature unconverged: |diff| = {abs(fine - coarse):.3g} > {tol:g}",
            estimate=complex(fine))
    return complex(fine)


def weyl_symbol_from_kernel(kernel: Callable, q, p, hbar: float = HBAR,
                            half_width: float = 14.0, n: int = 400) -> np.ndarray:
    """Smb[A](q, p) = 2 int <q - y|A|q + y> exp(2 i p y / hbar) dy, directly.

    ``kernel(q1, q2)`` returns the position-space matrix element.  The
    integral is truncated to |y| <= half_width and done by Gauss-Legendre;
    this is the brute-force definition, used to check closed forms.
    """
    rule = gauss_legendre(n).mapped(-half_width, half_width)
    q = np.asarray(q, dtype=float)[..., None]
    p = np.asarray(p, dtype=float)[..., None]
    y = rule.nodes
    vals = kernel(q - y, q + y) * np.exp(2j * p * y / hbar)
    return _result(2.0 * np.sum(rule.weights * vals, axis=-1))


def fock_projector_kernel(n: int, m: int) -> Callable:
    """<q1| n><m |q2> with real oscillator eigenfunctions."""
    def kernel(q1, q2):
        return (hermite_functions(max(n, m), q1)[n]
                * hermite_functions(max(n, m), q2)[m])
    return kernel
