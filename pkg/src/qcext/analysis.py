"""Verification mathematics for the extension operators.

Quasisymmetry ratios, the closed-form dilatation of the shear family and its
sigma phase factor, numeric Beltrami quotients by centered differences,
homomorphism and boundary-limit residuals, and the second-order PDE
characterization Tr(A Hess F) = 0 of the family members.

For alpha > 0 the modulus of the Beltrami quotient of F = E_{a,alpha} f is

    |1 - theta| / |1 - e^{i sigma} theta|,
    theta = f'(x - (alpha - a) y) / f'(x + a y),

with the unit-modulus factor e^{i sigma} depending only on (a, alpha).  At
alpha = 0 the quotient degenerates to the limiting closed form

    (1 + a^2) |y f''(u)| / |2 f'(u) + i (1 + a^2) y f''(u)|,  u = x + a y,

whose supremum over the half-plane equals 1 for every non-affine C^2 map:
the alpha = 0 member is a diffeomorphism but never quasiconformal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .extensions import ExtParams, extend_family, require_upper_half
from .realmap import RealMap, compose


# -- grids -------------------------------------------------------------------

def half_plane_grid(x_min: float = -2.0, x_max: float = 2.0,
                    y_min: float = 1e-2, y_max: float = 2.0,
                    nx: int = 20, ny: int = 20) -> np.ndarray:
    """Flat complex grid, linear in x and logarithmic in y (default 20x20
    over [-2, 2] x [1e-2, 2], covering boundary approach and bulk)."""
    if not y_min > 0:
        raise DomainError("grid y_min must be positive")
    if nx < 2 or ny < 2:
        raise DomainError("grid needs nx, ny >= 2")
    xs = np.linspace(x_min, x_max, nx)
    ys = np.geomspace(y_min, y_max, ny)
    return (xs[None, :] + 1j * ys[:, None]).ravel()


# -- quasisymmetry -----------------------------------------------------------

def m_ratio(f: RealMap, x: float, t: float) -> float:
    """The two-sided quasisymmetry ratio (f(x+t) - f(x)) / (f(x) - f(x-t))."""
    if not t > 0:
        raise DomainError("t must be positive")
    num = f(x + t) - f(x)
    den = f(x) - f(x - t)
    if den <= 0:
        raise DomainError("non-positive denominator: map is not increasing")
    return num / den


def estimate_m(f: RealMap, x_range=(-5.0, 5.0), t_range=(1e-3, 5.0),
               grid_n: int = 40) -> float:
    """Grid supremum of max(ratio, 1/ratio); always >= 1.

    For a map with certified slope bounds (b, B) the estimate never exceeds
    B/b (mean-value bound on both increments).
    """
    if grid_n < 2:
        raise DomainError("grid_n must be >= 2")
    if not 0 < t_range[0] <= t_range[1]:
        raise DomainError("t range must be positive and increasing")
    xs = np.linspace(x_range[0], x_range[1], grid_n)
    ts = np.geomspace(t_range[0], t_range[1], grid_n)
    X = xs[:, None]
    T = ts[None, :]
    num = f(X + T) - f(X)
    den = f(X) - f(X - T)
    if np.any(den <= 0):
        raise DomainError("non-positive denominator: map is not increasing")
    r = num / den
    return float(np.max(np.maximum(r, 1.0 / r)))


# -- dilatation --------------------------------------------------------------

def sigma_factor(p: ExtParams) -> complex:
    """Unit-modulus phase (-i + a)(i + a - alpha) / ((i + a)(-i + a - alpha));
    equals 1 exactly when alpha = 0."""
    a, al = p.a, p.alpha
    num = (-1j + a) * (1j + a - al)
    den = (1j + a) * (-1j + a - al)
    return num / den


@dataclass
class DilatationReport:
    """Per-point record of the closed-form and finite-difference dilatation."""

    z: complex
    theta: float
    sigma_factor: complex
    analytic: float
    numeric: float = field(default=math.nan)
    gap: float = field(default=math.nan)

    def __post_init__(self):
        if abs(abs(self.sigma_factor) - 1.0) > 1e-12:
            raise DomainError("sigma factor must have unit modulus")


def _dilatation_values(f: RealMap, p: ExtParams, z):
    """Vectorized closed-form dilatation over points z (alpha >= 0)."""
    require_upper_half(z)
    x, y = np.real(z), np.imag(z)
    a, al = p.a, p.alpha
    if al > 0:
        d1 = f.deriv(x + a * y)
        d2 = f.deriv(x - (al - a) * y)
        if np.any(d1 <= 0) or np.any(d2 < 0):
            raise DomainError("derivative must be positive on evaluation points")
        theta = d2 / d1
        sig = sigma_factor(p)
        return np.abs(1.0 - theta) / np.abs(1.0 - sig * theta), theta
    u = x + a * y
    d1 = f.deriv(u)
    if np.any(d1 <= 0):
        raise DomainError("derivative must be positive on evaluation points")
    d2 = f.second_deriv(u)
    scale = 1.0 + a * a
    val = scale * np.abs(y * d2) / np.abs(2.0 * d1 + 1j * scale * y * d2)
    return val, np.ones_like(np.asarray(val, dtype=float))


def dilatation_analytic(f: RealMap, p: ExtParams, z: complex) -> DilatationReport:
    """Closed-form Beltrami modulus at one point, with theta and the phase."""
    val, theta = _dilatation_values(f, p, complex(z))
    return DilatationReport(z=complex(z), theta=float(theta),
                            sigma_factor=sigma_factor(p), analytic=float(val))


def dilatation_numeric(F, z: complex, h: float) -> float:
    """|d_zbar F / d_z F| by centered differences at step h.

    d_zbar = (d_x + i d_y)/2 and d_z = (d_x - i d_y)/2.  Requires Im z > 2h
    so the stencil stays in the half-plane.
    """
    if not h > 0:
        raise DomainError("h must be positive")
    if not np.imag(z) > 2 * h:
        raise DomainError("need Im z > 2h for the difference stencil")
    fx = (F(z + h) - F(z - h)) / (2.0 * h)
    fy = (F(z + 1j * h) - F(z - 1j * h)) / (2.0 * h)
    dzbar = 0.5 * (fx + 1j * fy)
    dz = 0.5 * (fx - 1j * fy)
    if abs(dz) < 1e-12:
        raise DomainError("degenerate point: |d_z F| below 1e-12")
    return abs(dzbar) / abs(dz)


def compare_dilatation(f: RealMap, p: ExtParams, z: complex, h: float) -> DilatationReport:
    """Analytic and numeric dilatation at z, with their gap."""
    report = dilatation_analytic(f, p, z)
    num = dilatation_numeric(lambda w: extend_family(p, f, w), z, h)
    report.numeric = float(num)
    report.gap = abs(report.analytic - report.numeric)
    return report


def sup_dilatation(f: RealMap, p: ExtParams, grid) -> float:
    """Maximum of the closed-form dilatation over a grid of points."""
    grid = np.asarray(grid)
    if grid.size == 0:
        raise DomainError("grid must be nonempty")
    vals, _ = _dilatation_values(f, p, grid)
    return float(np.max(vals))


def dilatation_bound(p: ExtParams, deriv_lo: float, deriv_hi: float) -> float:
    """Closed-form bound on the dilatation when f' is certified in
    [deriv_lo, deriv_hi]: theta ranges over [lo/hi, hi/lo] and the quotient
    is monotone away from theta = 1, so the endpoints dominate."""
    p.require_group()
    if not 0 < deriv_lo <= deriv_hi:
        raise DomainError("need 0 < deriv_lo <= deriv_hi")
    sig = sigma_factor(p)
    ends = np.array([deriv_lo / deriv_hi, deriv_hi / deriv_lo])
    return float(np.max(np.abs(1.0 - ends) / np.abs(1.0 - sig * ends)))


# -- admissibility residuals ---------------------------------------------------

def homomorphism_residual(p: ExtParams, f: RealMap, g: RealMap, grid) -> float:
    """max over the grid of |E(f o g)(z) - E(f)(E(g)(z))|; exact algebra for
    alpha > 0, so only float noise survives."""
    p.require_group()
    grid = np.asarray(grid)
    lhs = extend_family(p, compose(f, g), grid)
    rhs = extend_family(p, f, extend_family(p, g, grid))
    return float(np.max(np.abs(lhs - rhs)))


def boundary_residual(p: ExtParams, f: RealMap, interval=(-1.0, 1.0),
                      y: float = 1e-2, n: int = 201) -> float:
    """sup over sampled x in the interval of |E f(x + i y) - f(x)|."""
    if not y > 0:
        raise DomainError("y must be positive")
    xs = np.linspace(interval[0], interval[1], n)
    vals = extend_family(p, f, xs + 1j * y)
    return float(np.max(np.abs(vals - f(xs))))


def boundary_constant(p: ExtParams, deriv_hi: float) -> float:
    """Lipschitz constant C with |E f(x + iy) - f(x)| <= C y, alpha > 0:
    C = B (|a| sqrt(1 + (alpha-a)^2) + |alpha-a| sqrt(1 + a^2)) / alpha."""
    p.require_group()
    a, al = p.a, p.alpha
    return deriv_hi * (abs(a) * math.hypot(1.0, al - a)
                       + abs(al - a) * math.hypot(1.0, a)) / al


# -- PDE characterization ------------------------------------------------------

def pde_matrix(p: ExtParams) -> np.ndarray:
    """Symmetric coefficient matrix A of the characteristic equation
    Tr(A Hess F) = 0; A = [[(alpha-a) a, (2a-alpha)/2], [(2a-alpha)/2, -1]]."""
    a, al = p.a, p.alpha
    off = 0.5 * (2.0 * a - al)
    return np.array([[(al - a) * a, off], [off, -1.0]])


def pde_residual(f: RealMap, p: ExtParams, z: complex, h: float | None = None) -> float:
    """|Tr(A Hess F)(z)| with Hessian entries by centered second differences.

    Applies the stencil to the complex values directly (equivalently to the
    real and imaginary parts separately).  Requires a map with a continuous
    second derivative and Im z > 2h.
    """
    if not f.has_second_deriv:
        raise DomainError("PDE residual requires a C^2 map kind")
    z = complex(z)
    y = z.imag
    if h is None:
        h = 1e-3 * y
    if not h > 0:
        raise DomainError("h must be positive")
    if not y > 2 * h:
        raise DomainError("need Im z > 2h for the Hessian stencil")

    def F(w):
        return extend_family(p, f, w)

    h2 = h * h
    fxx = (F(z + h) - 2.0 * F(z) + F(z - h)) / h2
    fyy = (F(z + 1j * h) - 2.0 * F(z) + F(z - 1j * h)) / h2
    fxy = (F(z + h + 1j * h) - F(z + h - 1j * h)
           - F(z - h + 1j * h) + F(z - h - 1j * h)) / (4.0 * h2)
    mat = pde_matrix(p)
    return abs(mat[0, 0] * fxx + 2.0 * mat[0, 1] * fxy + mat[1, 1] * fyy)


# -- special analytic maps -----------------------------------------------------

class CubicMap(RealMap):
    """f(x) = x^3: increasing and C^2 but not bi-Lipschitz (f'(0) = 0).

    The classical witness that the family does not stay quasiconformal off
    the bi-Lipschitz class; admitted by the dilatation and supremum
    operations only.  Construction-gated everywhere a certified positive
    lower slope bound is required.
    """

    kind = "cubic"

    def __init__(self):
        super().__init__(0.0, math.inf, bilipschitz=False)

    def _eval(self, x):
        return x ** 3

    def _deriv(self, x):
        return 3.0 * x ** 2

    @property
    def has_second_deriv(self):
        return True

    def _second(self, x):
        return 6.0 * x

    def to_dict(self):
        return {"kind": self.kind}


def cubic_map() -> CubicMap:
    return CubicMap()


class QuadraticWindowMap(RealMap):
    """Equals x^2 on [window_lo + ramp, window_hi - ramp], with the slope
    ramped C^1-continuously to constants outside, so the map is a C^2
    increasing bi-Lipschitz map that is exactly quadratic on the window.

    Under the (1, 2) member the extension of a quadratic is
    (x^2 + y^2) + 2 i x y, an exact solution of the wave equation, which
    makes this the reference map for the PDE residual.
    """

    kind = "quadratic-window"

    def __init__(self, window_lo: float = 1.0, window_hi: float = 4.0,
                 ramp: float = 0.25):
        if not window_lo > 0:
            raise DomainError("window_lo must be positive")
        if not ramp > 0:
            raise DomainError("ramp must be positive")
        if not window_hi - window_lo > 2 * ramp:
            raise DomainError("window too narrow for the requested ramp")
        super().__init__(2.0 * window_lo, 2.0 * window_hi)
        self.window_lo = float(window_lo)
        self.window_hi = float(window_hi)
        self.ramp = float(ramp)

    @property
    def window(self) -> tuple[float, float]:
        """Interval on which the map is exactly x -> x^2."""
        return (self.window_lo + self.ramp, self.window_hi - self.ramp)

    def _pieces(self, x):
        l, r, s = self.window_lo, self.window_hi, self.ramp
        return [x <= l - s,
                (x > l - s) & (x < l + s),
                (x >= l + s) & (x <= r - s),
                (x > r - s) & (x < r + s),
                x >= r + s]

    def _eval(self, x):
        l, r, s = self.window_lo, self.window_hi, self.ramp
        f_lm = (l - s) ** 2 - 4.0 * s * s / 3.0  # value at l - s
        f_rp = (r + s) ** 2 - 4.0 * s * s / 3.0  # value at r + s
        vals = [
            f_lm + 2.0 * l * (x - (l - s)),
            (l + s) ** 2 - 2.0 * l * (l + s - x)
            - (8.0 * s ** 3 - (x - l + s) ** 3) / (6.0 * s),
            x * x,
            (r - s) ** 2 + 2.0 * r * (x - r + s)
            - (8.0 * s ** 3 - (r + s - x) ** 3) / (6.0 * s),
            f_rp + 2.0 * r * (x - (r + s)),
        ]
        return np.select(self._pieces(x), vals)

    def _deriv(self, x):
        l, r, s = self.window_lo, self.window_hi, self.ramp
        vals = [
            np.full_like(x, 2.0 * l),
            2.0 * l + (x - l + s) ** 2 / (2.0 * s),
            2.0 * x,
            2.0 * r - (r + s - x) ** 2 / (2.0 * s),
            np.full_like(x, 2.0 * r),
        ]
        return np.select(self._pieces(x), vals)

    @property
    def has_second_deriv(self):
        return True

    def _second(self, x):
        l, r, s = self.window_lo, self.window_hi, self.ramp
        vals = [
            np.zeros_like(x),
            (x - l + s) / s,
            np.full_like(x, 2.0),
            (r + s - x) / s,
            np.zeros_like(x),
        ]
        return np.select(self._pieces(x), vals)

    def to_dict(self):
        return {"kind": self.kind, "window_lo": self.window_lo,
                "window_hi": self.window_hi, "ramp": self.ramp}


def quadratic_window_map(window_lo: float = 1.0, window_hi: float = 4.0,
                         ramp: float = 0.25) -> QuadraticWindowMap:
    return QuadraticWindowMap(window_lo, window_hi, ramp)
