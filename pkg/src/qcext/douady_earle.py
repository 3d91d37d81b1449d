"""Douady-Earle (barycentric) extension on the unit disk.

The extension of a circle homeomorphism f evaluated at z is the unique w in
the disk at which the conformal barycenter defect

    int_S (w - f(zeta)) / (1 - conj(w) f(zeta)) |dzeta| / |zeta - z|^2

vanishes.  The defect is discretized by the periodic trapezoid rule (spectral
accuracy for smooth lifts) and the two-real-variable system is solved by a
damped Newton iteration seeded at the Poisson-weighted barycenter of the
boundary values.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import DomainError, NonConvergence, StepOutOfDisk

_TWO_PI = 2.0 * math.pi


class CircleMap:
    """Orientation-preserving circle homeomorphism given by an increasing
    lift L with L(t + 2 pi) = L(t) + 2 pi.

    ``lift`` must be vectorized over ndarrays.  Monotonicity and periodicity
    are checked on a dense sample at construction.
    """

    def __init__(self, lift, label: str = "circle-map", check: bool = True,
                 meta: dict | None = None):
        self.lift = lift
        self.label = label
        self.meta = meta or {}
        if check:
            self._validate()

    def _validate(self, n: int = 2048):
        t = np.linspace(0.0, _TWO_PI, n, endpoint=False)
        lt = np.asarray(self.lift(t), dtype=float)
        if not (np.diff(lt) > 0).all():
            raise DomainError(f"{self.label}: lift is not strictly increasing")
        per = np.asarray(self.lift(t + _TWO_PI), dtype=float) - lt
        if np.max(np.abs(per - _TWO_PI)) > 1e-12:
            raise DomainError(f"{self.label}: lift is not 2*pi-periodic")

    def __call__(self, theta):
        return self.lift(np.asarray(theta, dtype=float))

    def values(self, theta):
        """Boundary values f(e^{i theta}) = e^{i L(theta)}."""
        return np.exp(1j * self(theta))

    @classmethod
    def identity(cls) -> "CircleMap":
        return cls(lambda t: t, "identity", check=False)

    @classmethod
    def rotation(cls, phi: float) -> "CircleMap":
        return cls(lambda t: t + phi, f"rotation({phi:g})", check=False)

    @classmethod
    def from_fourier(cls, rotation: float = 0.0, cos_amps=(), sin_amps=()) -> "CircleMap":
        """L(t) = t + rotation + sum_k a_k cos(k t) + b_k sin(k t)."""
        ca = np.asarray(cos_amps, dtype=float)
        sa = np.asarray(sin_amps, dtype=float)
        kc = np.arange(1, ca.size + 1)
        ks = np.arange(1, sa.size + 1)

        def lift(t):
            t = np.asarray(t, dtype=float)
            out = t + rotation
            if ca.size:
                out = out + np.cos(np.multiply.outer(t, kc)) @ ca
            if sa.size:
                out = out + np.sin(np.multiply.outer(t, ks)) @ sa
            return out

        meta = {"rotation": rotation, "cos": ca.tolist(), "sin": sa.tolist()}
        return cls(lift, "fourier", meta=meta)


def compose_circle(outer: CircleMap, inner: CircleMap) -> CircleMap:
    """Circle map with lift L_outer o L_inner (i.e. outer(inner(zeta)))."""
    return CircleMap(lambda t: outer.lift(inner.lift(t)),
                     f"{outer.label}*{inner.label}", check=False)


class MobiusAutomorphism:
    """Disk automorphism w -> e^{i phi} (w - c) / (1 - conj(c) w), |c| < 1."""

    __slots__ = ("phi", "c")

    def __init__(self, phi: float, c: complex):
        c = complex(c)
        if not abs(c) < 1:
            raise DomainError(f"Mobius center must satisfy |c| < 1, got |c|={abs(c):g}")
        self.phi = float(phi)
        self.c = c

    def __call__(self, w):
        return cmath.exp(1j * self.phi) * (w - self.c) / (1.0 - np.conj(self.c) * w)

    def inverse(self) -> "MobiusAutomorphism":
        return MobiusAutomorphism(-self.phi, -self.c * cmath.exp(1j * self.phi))

    def boundary(self) -> CircleMap:
        """Boundary values as a circle map.

        On |zeta| = 1 the image is e^{i(phi + t - 2 arg(1 - conj(c) e^{it}))};
        the argument stays in (-pi/2, pi/2) because Re(1 - conj(c) e^{it}) > 0,
        so the principal branch gives a continuous monotone lift.
        """
        phi, cbar = self.phi, np.conj(self.c)

        def lift(t):
            t = np.asarray(t, dtype=float)
            return phi + t - 2.0 * np.angle(1.0 - cbar * np.exp(1j * t))

        return CircleMap(lift, "mobius-boundary", check=False,
                         meta={"phi": self.phi, "c": [self.c.real, self.c.imag]})

    def __repr__(self):
        return f"MobiusAutomorphism(phi={self.phi:.6g}, c={self.c:.6g})"


def _require_disk(w: complex, name: str):
    if not abs(w) < 1:
        raise DomainError(f"{name} must lie strictly inside the unit disk")


def de_defect(f: CircleMap, w: complex, z: complex, n_nodes: int = 512) -> complex:
    """Trapezoidal discretization of the barycenter defect integral."""
    if n_nodes < 16:
        raise DomainError("need at least 16 quadrature nodes")
    _require_disk(w, "w")
    _require_disk(z, "z")
    theta = np.arange(n_nodes) * (_TWO_PI / n_nodes)
    zeta = np.exp(1j * theta)
    fv = np.exp(1j * np.asarray(f.lift(theta), dtype=float))
    kernel = 1.0 / np.abs(zeta - z) ** 2
    integrand = (w - fv) / (1.0 - np.conj(w) * fv) * kernel
    return complex(integrand.sum() * (_TWO_PI / n_nodes))


def _poisson_seed(f: CircleMap, z: complex, n_nodes: int) -> complex:
    theta = np.arange(n_nodes) * (_TWO_PI / n_nodes)
    zeta = np.exp(1j * theta)
    fv = np.exp(1j * np.asarray(f.lift(theta), dtype=float))
    kernel = 1.0 / np.abs(zeta - z) ** 2
    return complex((fv * kernel).sum() / kernel.sum())


def extend_de(f: CircleMap, z: complex, tol: float = 1e-10,
              n_nodes: int = 512, max_iter: int = 50) -> complex:
    """Solve the defect equation for w; damped Newton with FD Jacobian.

    The returned point satisfies |de_defect(f, w, z)| <= tol (the defect at
    the accepted iterate is always the independently re-evaluated one).
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    _require_disk(z, "z")

    def defect(w):
        return de_defect(f, w, z, n_nodes)

    w = _poisson_seed(f, z, n_nodes)
    if abs(w) >= 1.0 - 1e-9:  # degenerate seed; retreat toward the origin
        w *= (1.0 - 1e-6) / abs(w)

    g = defect(w)
    fd = 1e-7
    for _ in range(max_iter):
        if abs(g) <= tol:
            return w
        gx_p = defect(w + fd)
        gx_m = defect(w - fd)
        gy_p = defect(w + 1j * fd)
        gy_m = defect(w - 1j * fd)
        dgx = (gx_p - gx_m) / (2.0 * fd)
        dgy = (gy_p - gy_m) / (2.0 * fd)
        jac = np.array([[dgx.real, dgy.real], [dgx.imag, dgy.imag]])
        try:
            sx, sy = np.linalg.solve(jac, [-g.real, -g.imag])
        except np.linalg.LinAlgError as exc:
            raise NonConvergence("singular Jacobian in the disk solve") from exc
        step = complex(sx, sy)

        lam = 1.0
        while abs(w + lam * step) >= 1.0 - 1e-12:
            lam *= 0.5
            if lam < 1e-18:
                raise StepOutOfDisk(
                    "damping cannot keep the iterate inside the unit disk")
        accepted = False
        while lam >= 1e-12:
            w_try = w + lam * step
            g_try = defect(w_try)
            if abs(g_try) < abs(g):
                w, g = w_try, g_try
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            raise NonConvergence(
                f"damped Newton stalled with defect {abs(g):.3g} (tol {tol:g})")
    if abs(g) <= tol:
        return w
    raise NonConvergence(
        f"disk solve did not reach tol={tol:g} in {max_iter} iterations "
        f"(final defect {abs(g):.3g})")


def de_naturality_residual(f: CircleMap, m: MobiusAutomorphism, z: complex,
                           tol: float = 1e-10, n_nodes: int = 512,
                           mode: str = "post") -> float:
    """Conformal-naturality residual against a Mobius automorphism.

    mode="post": | E(m o f)(z) - m(E(f)(z)) |
    mode="pre":  | E(f o m)(z) - E(f)(m(z)) |
    """
    if mode == "post":
        lhs = extend_de(compose_circle(m.boundary(), f), z, tol, n_nodes)
        rhs = m(extend_de(f, z, tol, n_nodes))
    elif mode == "pre":
        lhs = extend_de(compose_circle(f, m.boundary()), z, tol, n_nodes)
        rhs = extend_de(f, m(z), tol, n_nodes)
    else:
        raise DomainError(f"mode must be 'pre' or 'post', got {mode!r}")
    return abs(lhs - rhs)


def circle_map_from_dict(d: dict) -> CircleMap:
    """Circle-map description format used by the CLI (see README)."""
    if not isinstance(d, dict) or "kind" not in d:
        raise DomainError("circle-map description must be an object with 'kind'")
    kind = d["kind"]
    try:
        if kind == "circle-identity":
            return CircleMap.identity()
        if kind == "circle-rotation":
            return CircleMap.rotation(d["angle"])
        if kind == "circle-fourier":
            return CircleMap.from_fourier(d.get("rotation", 0.0),
                                          d.get("cos", ()), d.get("sin", ()))
        if kind == "circle-mobius":
            c = d["center"]
            return MobiusAutomorphism(d.get("angle", 0.0),
                                      complex(c[0], c[1])).boundary()
    except (KeyError, TypeError, IndexError) as exc:
        raise DomainError(f"bad circle-map description for kind '{kind}': {exc}") from exc
    raise DomainError(f"unknown circle-map kind '{kind}'")
