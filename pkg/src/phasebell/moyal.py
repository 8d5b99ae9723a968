"""Star products of Weyl symbols, three ways.

* ``star_series``: pointwise product plus the first-order Poisson term.
* ``star_integral``: the Groenewold double phase-space integral (one mode).
* ``star_via_operators``: quantize both symbols into the oscillator (Fock)
  basis, multiply the matrices, read the symbol back.  This is the
  reference the other two are checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError, NumericalError, TruncationError
from .phasespace import HBAR, PhaseGrid, WeylSymbol, as_points, radius2
from .specfun import MAX_DEGREE, composite_gauss_legendre, gauss_legendre, \
    laguerre_function_table

DEFAULT_M_MAX = 64
TAIL_RATIO = 1e-8
# shells dropped before summing a product matrix (entries near the cut are
# missing contributions from the discarded basis states)
PRODUCT_TRIM = 4
SMOOTHING_PASSES = 12


def symplectic_matrix(n: int = 1) -> np.ndarray:
    """J for coordinates ordered (q1, p1, ..., qn, pn).

    In block (q..., p...) ordering this is [[0, -I], [I, 0]]; interleaved it
    is a direct sum of [[0, -1], [1, 0]] blocks.
    """
    return np.kron(np.eye(n), np.array([[0.0, -1.0], [1.0, 0.0]]))


@dataclass(frozen=True)
class SymplecticForm:
    n: int = 1

    @property
    def matrix(self) -> np.ndarray:
        return symplectic_matrix(self.n)

    def __call__(self, x, y) -> np.ndarray:
        """x . J y, broadcasting over leading axes."""
        return np.einsum("...i,ij,...j->...", np.asarray(x), self.matrix, np.asarray(y))


# --------------------------------------------------------------------------
# series route


def _gradient(symbol: WeylSymbol, x: np.ndarray) -> np.ndarray:
    if symbol.gradient is not None:
        return np.asarray(symbol.gradient(x), dtype=complex)
    # 4th-order central differences
    h = 1e-5 * (1.0 + np.linalg.norm(x))
    out = np.empty(x.shape, dtype=complex)
    for axis in range(x.shape[-1]):
        e = np.zeros(x.shape[-1])
        e[axis] = h
        vals = [symbol.func(x + k * e) for k in (-2, -1, 1, 2)]
        out[..., axis] = (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * h)
    if not np.all(np.isfinite(out)):
        raise NumericalError("numerical gradient is not finite")
    return out


def poisson_bracket(f: WeylSymbol, g: WeylSymbol, x) -> complex:
    """{f, g} = sum over modes of df/dq dg/dp - df/dp dg/dq."""
    x = as_points(x, f.modes)
    gf, gg = _gradient(f, x), _gradient(g, x)
    total = 0.0
    for k in range(f.modes):
        total = total + gf[..., 2 * k] * gg[..., 2 * k + 1] - gf[..., 2 * k + 1] * gg[..., 2 * k]
    return total


def star_series(f: WeylSymbol, g: WeylSymbol, x, hbar: float = HBAR) -> complex:
    """f g + (i hbar / 2) {f, g}, i.e. the star product to first order in hbar."""
    x = as_points(x, f.modes)
    out = f.func(x) * g.func(x) + 0.5j * hbar * poisson_bracket(f, g, x)
    return complex(out) if np.ndim(out) == 0 else out


# --------------------------------------------------------------------------
# integral route


def star_integral(f: WeylSymbol, g: WeylSymbol, x, hbar: float = HBAR,
                  grid: PhaseGrid | None = None) -> complex:
    """Groenewold integral for one mode, by tensor Gauss-Legendre.

    (f * g)(x) = (pi hbar)^-2 int int f(y) g(z) exp(-2i/hbar (y.Jz + z.Jx + x.Jy))

    with J = [[0, -1], [1, 0]] on (q, p).  The overall minus sign (equivalently
    the opposite orientation of J) is the one for which the first-order term
    is +(i hbar / 2){f, g} and q * p = qp + i hbar / 2; with the other sign the
    integral returns the complex-conjugate product.

    Since y.Jz + z.Jx = z.J(x - y), the inner z integral is a 2D Fourier
    transform of g that factorizes over the z axes, so the whole rule costs
    a few N x N matrix products for N nodes per axis.  ``grid`` supplies the
    box half-width and N; f and g must be negligible outside the box.  The
    inner transform peaks within ~hbar of x, so N well above the hard floor
    8 L / (pi hbar) is needed for accuracy; the default uses 30 L / (pi hbar).
    """
    if f.modes != 1 or g.modes != 1:
        raise DomainError("star_integral is implemented for one mode only")
    if grid is None:
        grid = PhaseGrid(extent=8.0, n=max(96, int(math.ceil(30 * 8.0 / (math.pi * hbar)))))
    needed = 8.0 * grid.extent / (math.pi * hbar)
    if grid.n < needed:
        raise ConfigurationError(
            f"{grid.n} nodes per axis cannot resolve the kernel; need >= {needed:.0f}")
    xq, xp = as_points(x)
    nodes, weights = grid.gauss_rule()
    qq, pp = np.meshgrid(nodes, nodes, indexing="ij")
    pts = np.stack([qq, pp], axis=-1)
    ww = np.outer(weights, weights)
    fv = ww * np.asarray(f.func(pts), dtype=complex)
    gv = ww * np.asarray(g.func(pts), dtype=complex)
    k = -2.0 / hbar
    # z.J(x - y) = -zq (xp - yp) + zp (xq - yq)
    e_q = np.exp(-1j * k * np.outer(nodes, xp - nodes))   # [zq, yp]
    e_p = np.exp(1j * k * np.outer(nodes, xq - nodes))    # [zp, yq]
    inner = e_p.T @ gv.T @ e_q                            # [yq, yp]
    # x.J y = -xq yp + xp yq
    phase = np.exp(1j * k * (-xq * pp + xp * qq))
    return complex(np.sum(fv * phase * inner) / (math.pi * hbar) ** 2)


# --------------------------------------------------------------------------
# operator route


@dataclass(frozen=True)
class FockMatrix:
    """Operator elements <m|A|n> for 0 <= m, n <= m_max."""

    data: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise DomainError("FockMatrix needs a square matrix")
        object.__setattr__(self, "data", data)
        if self.hermitian and np.max(np.abs(data - data.conj().T), initial=0.0) >= 1e-10:
            raise DomainError("matrix flagged hermitian is not")

    @property
    def m_max(self) -> int:
        return self.data.shape[0] - 1

    @classmethod
    def identity(cls, m_max: int) -> "FockMatrix":
        return cls(np.eye(m_max + 1), hermitian=True)

    @classmethod
    def diagonal(cls, values) -> "FockMatrix":
        values = np.asarray(values)
        return cls(np.diag(values), hermitian=bool(np.all(np.isreal(values))))

    def __matmul__(self, other: "FockMatrix") -> "FockMatrix":
        return FockMatrix(self.data @ other.data)

    def __add__(self, other: "FockMatrix") -> "FockMatrix":
        return FockMatrix(self.data + other.data, self.hermitian and other.hermitian)

    def __sub__(self, other: "FockMatrix") -> "FockMatrix":
        return FockMatrix(self.data - other.data, self.hermitian and other.hermitian)

    def scaled(self, c) -> "FockMatrix":
        return FockMatrix(c * self.data, self.hermitian and np.isreal(c))

    def commutator(self, other: "FockMatrix") -> "FockMatrix":
        return FockMatrix(self.data @ other.data - other.data @ self.data)

    def eigvals(self) -> np.ndarray:
        if self.hermitian:
            return np.linalg.eigvalsh(self.data)
        return np.linalg.eigvals(self.data)

    def tail_ratio(self) -> float:
        """Largest of the last two diagonal magnitudes relative to the matrix max."""
        top = np.max(np.abs(self.data))
        if top == 0:
            return 0.0
        return float(np.max(np.abs(np.diag(self.data)[-2:])) / top)

    def check_tail(self, ratio: float = TAIL_RATIO) -> None:
        tail = self.tail_ratio()
        if tail > ratio:
            raise TruncationError(
                f"Fock truncation at m_max={self.m_max} inadequate: tail ratio {tail:.2e}")


def _check_index(m):
    if m < 0 or m > MAX_DEGREE:
        raise DomainError(f"Fock index {m} outside 0..{MAX_DEGREE}")


def _cross_table(m_max: int, x: np.ndarray) -> np.ndarray:
    """S[m, n, ...] = Smb[|n><m|](x) for all 0 <= m, n <= m_max."""
    q, p = x[..., 0], x[..., 1]
    y = 2.0 * (q * q + p * p)
    lag = laguerre_function_table(m_max, y)
    theta = np.arctan2(p, q)
    out = np.empty((m_max + 1, m_max + 1) + q.shape, dtype=complex)
    for k in range(m_max + 1):
        phase = np.exp(1j * k * theta)
        for lo in range(m_max + 1 - k):
            v = 2.0 * (-1) ** lo * lag[k, lo]
            # Smb[|lo><lo+k|] carries e^{+ik theta}; the transpose is its conjugate
            out[lo + k, lo] = v * phase
            out[lo, lo + k] = v * np.conj(phase)
    return out


def symbol_fock_cross(m: int, n: int, x) -> complex:
    """Weyl symbol of |n><m| at ``x``.

    For n <= m it equals 2 (-1)^n sqrt(n!/m!) (sqrt2 (q + i p))^(m-n)
    L_n^(m-n)(2 x^2) exp(-x^2); the other order is the complex conjugate.
    """
    _check_index(m)
    _check_index(n)
    x = as_points(x)
    lo, k = min(m, n), abs(m - n)
    y = 2.0 * radius2(x)
    lag = laguerre_function_table(lo + k, y)[k, lo]
    theta = np.arctan2(x[..., 1], x[..., 0])
    sign = 1 if m >= n else -1
    out = 2.0 * (-1) ** lo * lag * np.exp(1j * sign * k * theta)
    return complex(out) if np.ndim(out) == 0 else out


def symbol_fock_diag(m: int, x) -> np.ndarray:
    """Smb[|m><m|](x) = 2 (-1)^m L_m(2 x^2) exp(-x^2)."""
    return symbol_fock_cross(m, m, x).real


def _s_max(m_max: int) -> float:
    # past this radius^2 every cross symbol up to m_max is below ~1e-17
    return 4.0 * (m_max + 1) + 60.0


def quantize(symbol: WeylSymbol, m_max: int = DEFAULT_M_MAX, check_tail: bool = False,
             n_theta: int | None = None) -> FockMatrix:
    """Fock matrix of the operator whose Weyl symbol is ``symbol``.

    A_mn = (2 pi)^-1 int A(x) Smb[|n><m|](x) d^2x.  Radial symbols give
    diagonal matrices computed by 1D Gauss-Legendre panels split at the
    symbol's radial breaks.  Other symbols are sampled on a polar grid; an
    FFT over the angle isolates the Fourier component each matrix diagonal
    needs, leaving one radial sum per entry.
    """
    if symbol.modes != 1:
        raise DomainError("quantize handles single-mode symbols")
    s_max = _s_max(m_max)
    edges = [0.0] + [b for b in symbol.mode_breaks(0) if b < s_max] + [s_max]
    if symbol.radial:
        rule = composite_gauss_legendre(edges, order=24, panel=2.0)
        s = rule.nodes
        lag = laguerre_function_table(m_max, 2.0 * s)[0]         # [m, node]
        signs = (-1.0) ** np.arange(m_max + 1)
        vals = np.asarray(symbol.profile(s), dtype=complex)
        # A_mm = int_0^inf A(s) (-1)^m L_m(2s) e^{-s} ds
        diag = signs * (lag @ (rule.weights * vals))
        out = FockMatrix(np.diag(diag), hermitian=bool(np.all(np.isreal(vals))))
    else:
        r_edges = [math.sqrt(e) for e in edges]
        rule = composite_gauss_legendre(r_edges, order=24, panel=0.5)
        r = rule.nodes
        if n_theta is None:
            n_theta = 4 * (m_max + 1) + 64
        theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
        pts = np.stack([np.outer(r, np.cos(theta)), np.outer(r, np.sin(theta))], axis=-1)
        vals = np.asarray(symbol.func(pts), dtype=complex)
        coeffs = np.fft.fft(vals, axis=1) / n_theta                # a_k(r), k mod n_theta
        lag = laguerre_function_table(m_max, 2.0 * r * r)         # [k, lo, node]
        w = rule.weights * r
        data = np.empty((m_max + 1, m_max + 1), dtype=complex)
        for k in range(m_max + 1):
            for lo in range(m_max + 1 - k):
                radial = 2.0 * (-1) ** lo * lag[k, lo] * w
                hi = lo + k
                # A_mn = int r dr a_{n-m}(r) R(r)
                data[hi, lo] = np.dot(radial, coeffs[:, (lo - hi) % n_theta])
                data[lo, hi] = np.dot(radial, coeffs[:, (hi - lo) % n_theta])
        out = FockMatrix(data)
    if check_tail:
        out.check_tail()
    return out


def smoothed_sum(terms: np.ndarray, passes: int = SMOOTHING_PASSES) -> complex:
    """Sum a slowly or conditionally convergent series.

    Partial sums are averaged pairwise ``passes`` times (an Euler-type mean).
    Converged series are unaffected; alternating tails such as
    sum (-1)^m (polynomial in m) collapse to their Abel value.
    """
    partial = np.cumsum(terms)
    passes = min(passes, len(partial) - 1)
    for _ in range(passes):
        partial = 0.5 * (partial[1:] + partial[:-1])
    return complex(partial[-1])


def dequantize(A: FockMatrix, x, check_tail: bool = True, trim: int = 0,
               passes: int = SMOOTHING_PASSES) -> complex:
    """Weyl symbol of ``A`` at ``x``: sum_mn A_mn Smb[|m><n|](x).

    Terms are grouped in shells max(m, n) = j and the shell partial sums
    smoothed, so bounded but non-decaying operators (the identity, disk
    projectors) still give sensible point values.  ``trim`` drops the
    outermost shells.
    """
    if check_tail:
        A.check_tail()
    m_eff = A.m_max - trim
    if m_eff < 1:
        raise DomainError("nothing left after trimming")
    data = A.data[:m_eff + 1, :m_eff + 1]
    x = as_points(x)
    if not np.any(x):
        terms = 2.0 * (-1.0) ** np.arange(m_eff + 1) * np.diag(data)
        return smoothed_sum(terms, passes)
    table = _cross_table(m_eff, x)                  # table[n, m] = Smb[|m><n|]
    contrib = data * table.T
    j = np.maximum.outer(np.arange(m_eff + 1), np.arange(m_eff + 1))
    shells = np.bincount(j.ravel(), weights=contrib.real.ravel()) \
        + 1j * np.bincount(j.ravel(), weights=contrib.imag.ravel())
    return smoothed_sum(shells, passes)


def star_via_operators(f: WeylSymbol, g: WeylSymbol, m_max: int = DEFAULT_M_MAX,
                       x=(0.0, 0.0)) -> complex:
    """(f * g)(x) from the matrix product of the quantized symbols.

    Both symbols are first translated so that ``x`` sits at the origin
    (the symbol of D(x)^dagger A D(x) is A(y + x)); the product is then read
    off at the origin, where only diagonal elements contribute.  Decaying
    symbols are tail-checked; banded or bounded ones rely on trimming and
    partial-sum smoothing.
    """
    x = as_points(x)
    fs, gs = f.shifted(x), g.shifted(x)
    F = quantize(fs, m_max, check_tail=f.decays)
    G = quantize(gs, m_max, check_tail=g.decays)
    return dequantize(F @ G, (0.0, 0.0), check_tail=False, trim=PRODUCT_TRIM)


def weyl_ordered_matrix(coefficients: dict, m_max: int) -> FockMatrix:
    """Fock matrix of sum B_ab (q^a p^b)_Weyl via ladder operators.

    Uses (q^a p^b)_Weyl = 2^-a sum_k C(a, k) q^k p^b q^(a-k).  Matrices are
    built in a padded space and cropped, so entries up to m_max are exact.
    """
    degree = max(sum(k) for k in coefficients)
    size = m_max + 1 + degree + 2
    a = np.diag(np.sqrt(np.arange(1, size)), 1)
    qm = (a + a.T) / math.sqrt(2.0)
    pm = (a - a.T) / (1j * math.sqrt(2.0))
    total = np.zeros((size, size), dtype=complex)
    for (na, nb), c in coefficients.items():
        pb = np.linalg.matrix_power(pm, nb)
        term = np.zeros_like(total)
        for k in range(na + 1):
            term += math.comb(na, k) * (np.linalg.matrix_power(qm, k) @ pb
                                        @ np.linalg.matrix_power(qm, na - k))
        total += c * term / 2 ** na
    return FockMatrix(total[:m_max + 1, :m_max + 1])
