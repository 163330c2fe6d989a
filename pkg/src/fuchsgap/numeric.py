"""Floating-point checks: integration in the complex z-plane, monodromy, Y_{1,2}.

Everything here is an oracle for the exact modules.  The equation is turned
into plain complex callables once (``NumericEquation``) and integrated with
scipy's DOP853 along piecewise paths (segments and arcs), which keeps square
roots and logarithms on a continuous branch without any cut bookkeeping.
"""
from __future__ import annotations

import cmath
import csv
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .fuchsian import FuchsianEquation
from .polys import LZPoly

RTOL = 1e-12
ATOL = 1e-14


class ClearanceError(ValueError):
    """A path comes too close to a singular point or a zero of Psi."""


class IntegrationError(RuntimeError):
    pass


# -- paths

@dataclass
class Segment:
    z0: complex
    z1: complex

    def z(self, t):
        return self.z0 + (self.z1 - self.z0) * t

    def dz(self, t):
        return self.z1 - self.z0

    def distance(self, p: complex) -> float:
        d = self.z1 - self.z0
        t = 0.0 if d == 0 else min(1.0, max(0.0, ((p - self.z0) * d.conjugate()).real / abs(d) ** 2))
        return abs(self.z(t) - p)


@dataclass
class Arc:
    center: complex
    radius: float
    theta0: float
    theta1: float

    def z(self, t):
        th = self.theta0 + (self.theta1 - self.theta0) * t
        return self.center + self.radius * np.exp(1j * th)

    def dz(self, t):
        th = self.theta0 + (self.theta1 - self.theta0) * t
        return 1j * self.radius * np.exp(1j * th) * (self.theta1 - self.theta0)

    def distance(self, p: complex) -> float:
        lo, hi = sorted((self.theta0, self.theta1))
        ends = min(abs(self.z(0.0) - p), abs(self.z(1.0) - p))
        if p == self.center:
            return self.radius
        ang = cmath.phase(p - self.center)
        # is the direction of p swept by the arc?
        k = np.ceil((lo - ang) / (2 * np.pi))
        if ang + 2 * np.pi * k <= hi:
            return abs(abs(p - self.center) - self.radius)
        return ends


@dataclass
class NumericPath:
    """Piecewise path starting at ``base``; ``clearance`` is the minimal allowed distance to singular points."""

    base: complex
    pieces: list = field(default_factory=list)
    clearance: float = 1e-3

    @classmethod
    def polyline(cls, points: Sequence[complex], clearance: float = 1e-3) -> "NumericPath":
        pts = [complex(p) for p in points]
        return cls(pts[0], [Segment(p, q) for p, q in zip(pts, pts[1:])], clearance)

    @classmethod
    def circle(cls, center: complex, radius: float, turns: int = 1, clearance: float = 1e-3) -> "NumericPath":
        center = complex(center)
        return cls(center + radius, [Arc(center, radius, 0.0, 2 * np.pi * turns)], clearance)

    @property
    def end(self) -> complex:
        return complex(self.pieces[-1].z(1.0)) if self.pieces else self.base

    def sample(self, per_piece: int = 200) -> np.ndarray:
        ts = np.linspace(0.0, 1.0, per_piece)
        return np.concatenate([np.asarray(p.z(ts), dtype=complex) for p in self.pieces]) if self.pieces \
            else np.array([self.base])

    def check(self, points: Sequence[complex]):
        for p in points:
            d = min(piece.distance(complex(p)) for piece in self.pieces) if self.pieces else abs(self.base - p)
            if d < self.clearance:
                raise ClearanceError(f"path passes within {d:.2e} of {p}")


# -- the equation in floating point

@dataclass
class NumericEquation:
    """y'' + P y' + Q y = 0 at fixed numeric a, b_k and lambda."""

    m: tuple
    n: tuple
    a: complex
    b: list
    lam: complex
    residues: dict  # point -> residue of P
    points: dict  # label -> position
    q_poly: np.ndarray  # numerator of 4 S Q, highest power first
    S_poly: np.ndarray

    @classmethod
    def from_equation(cls, eq: FuchsianEquation, lam: complex, values: dict | None = None) -> "NumericEquation":
        """``values`` gives numbers for symbols left free in the field (``a``, and ``b`` if not rational)."""
        values = dict(values or {})
        F = eq.field
        if F.a_value not in (None, "symbolic"):
            values.setdefault("a", complex(F.a_value))
        pts = {lab: complex(p.evaluate(values)) for lab, p in eq.points().items()}
        res = {lab: complex(eq.P.residue(lab).evaluate(values)) for lab in pts}
        qn = eq.q_num.numeric_coeffs(values)
        deg = max(j for (_, j) in qn) if qn else 0
        q = np.zeros(deg + 1, dtype=complex)
        for (i, j), c in qn.items():
            q[deg - j] += c * lam**i
        Sn = eq.S.numeric_coeffs(values)
        sdeg = max(j for (_, j) in Sn)
        S = np.zeros(sdeg + 1, dtype=complex)
        for (_, j), c in Sn.items():
            S[sdeg - j] += c
        b = [pts[f"b{k + 1}"] for k in range(eq.chars.M)]
        return cls(eq.chars.m, eq.chars.n, pts["a"], b, complex(lam), res, pts, q, S)

    def P(self, z):
        return sum(r / (z - self.points[lab]) for lab, r in self.residues.items())

    def Q(self, z):
        return np.polyval(self.q_poly, z) / (4 * np.polyval(self.S_poly, z))

    def singular_points(self) -> list[complex]:
        return list(self.points.values())

    def R(self, z):
        """z^m1 (z-1)^m2 (z-a)^m3 prod (z-b_k)^(2 n_k)."""
        m1, m2, m3 = self.m[1:]
        out = z**m1 * (z - 1) ** m2 * (z - self.a) ** m3
        for bk, nk in zip(self.b, self.n):
            out = out * (z - bk) ** (2 * nk)
        return out

    def dlogR(self, z):
        m1, m2, m3 = self.m[1:]
        out = m1 / z + m2 / (z - 1) + m3 / (z - self.a)
        for bk, nk in zip(self.b, self.n):
            out = out + 2 * nk / (z - bk)
        return out

    def cubic(self, z):
        return z * (z - 1) * (z - self.a)


@dataclass
class PathSolution:
    z: np.ndarray
    y: np.ndarray  # shape (k, len(z)): components of the integrated state

    @property
    def final(self) -> np.ndarray:
        return self.y[:, -1]


def _integrate(rhs, path: NumericPath, y0, rtol=RTOL, atol=ATOL, samples: int = 0) -> PathSolution:
    """Integrate dY/dz = rhs(z, Y) along the path pieces."""
    state = np.asarray(y0, dtype=complex)
    zs, ys = [path.base], [state.copy()]
    for piece in path.pieces:
        def f(t, Y, piece=piece):
            z = piece.z(t)
            return rhs(z, Y) * piece.dz(t)

        t_eval = np.linspace(0.0, 1.0, samples + 2)[1:] if samples else None
        sol = solve_ivp(f, (0.0, 1.0), state, method="DOP853", rtol=rtol, atol=atol, t_eval=t_eval)
        if not sol.success:
            raise IntegrationError(sol.message)
        if samples:
            zs.extend(complex(piece.z(t)) for t in sol.t)
            ys.extend(sol.y.T)
        else:
            zs.append(complex(piece.z(1.0)))
            ys.append(sol.y[:, -1])
        state = sol.y[:, -1]
    return PathSolution(np.array(zs), np.array(ys).T)


def integrate_ode(neq: NumericEquation, path: NumericPath, y0: complex, dy0: complex,
                  rtol: float = RTOL, atol: float = ATOL, samples: int = 0) -> PathSolution:
    """Solution of y'' + P y' + Q y = 0 with y(z0) = y0, y'(z0) = dy0 carried along ``path``."""
    path.check(neq.singular_points())

    def rhs(z, Y):
        return np.array([Y[1], -neq.P(z) * Y[1] - neq.Q(z) * Y[0]])

    return _integrate(rhs, path, [y0, dy0], rtol, atol, samples)


def fundamental_matrix(neq: NumericEquation, path: NumericPath, **kw) -> np.ndarray:
    """Columns: (y, y') at the end of the path for the basis with identity data at the base."""
    c1 = integrate_ode(neq, path, 1.0, 0.0, **kw).final
    c2 = integrate_ode(neq, path, 0.0, 1.0, **kw).final
    return np.column_stack([c1, c2])


# -- monodromy

@dataclass
class MonodromyReport:
    matrix: np.ndarray
    deviation: float  # max |M - I|
    log_detected: bool
    det: complex
    det_expected: complex  # exp(-(loop integral of P))

    @property
    def det_error(self) -> float:
        return abs(self.det - self.det_expected)


def monodromy_probe(neq: NumericEquation, center: complex, radius: float | None = None,
                    tol: float = 1e-7, **kw) -> MonodromyReport:
    """Continue a basis once around a small circle about ``center`` (usually a candidate b)."""
    center = complex(center)
    others = [p for p in neq.singular_points() if abs(p - center) > 1e-12]
    dist = min(abs(p - center) for p in others)
    if radius is None:
        radius = min(0.5, dist / 2)
    if radius >= dist:
        raise ClearanceError("monodromy circle encloses another singular point")
    path = NumericPath.circle(center, radius, clearance=min(radius, dist - radius) / 2)
    M = fundamental_matrix(neq, path, **kw)
    inside = [lab for lab, p in neq.points.items() if abs(p - center) < radius]
    det_expected = cmath.exp(-2j * np.pi * sum(neq.residues[lab] for lab in inside))
    dev = float(np.max(np.abs(M - np.eye(2))))
    eig = np.linalg.eigvals(M)
    resonant = bool(np.all(np.abs(eig - 1) < 1e-5))
    return MonodromyReport(M, dev, dev > tol and resonant, complex(np.linalg.det(M)), det_expected)


# -- the finite-gap solutions Y_{1,2}

@dataclass
class NumericPsi:
    """Psi(lambda, z) at fixed lambda as a numpy polynomial in z (highest power first)."""

    coeffs: np.ndarray

    @classmethod
    def from_poly(cls, psi: LZPoly, lam: complex, values: dict) -> "NumericPsi":
        nc = psi.numeric_coeffs(values)
        deg = max(j for (_, j) in nc)
        c = np.zeros(deg + 1, dtype=complex)
        for (i, j), v in nc.items():
            c[deg - j] += v * lam**i
        return cls(c)

    def __call__(self, z):
        return np.polyval(self.coeffs, z)

    def d(self, z, k: int = 1):
        c = self.coeffs
        for _ in range(k):
            c = np.polyder(c)
        return np.polyval(c, z) if len(c) else 0 * z


@dataclass
class YSamples:
    z: np.ndarray
    Y1: np.ndarray
    Y2: np.ndarray
    dY1: np.ndarray
    dY2: np.ndarray
    psi: np.ndarray
    residual1: np.ndarray
    residual2: np.ndarray

    @property
    def product_error(self) -> float:
        return float(np.max(np.abs(self.Y1 * self.Y2 - self.psi)))

    @property
    def max_residual(self) -> float:
        return float(max(np.max(self.residual1), np.max(self.residual2)))


def evaluate_Y(neq: NumericEquation, psi: NumericPsi, nu: complex, path: NumericPath,
               samples: int = 20, rtol: float = RTOL, atol: float = ATOL) -> YSamples:
    """Y_{1,2} = sqrt(Psi) exp(+-(i nu / 2) int R / (Psi sqrt(z(z-1)(z-a))) dz) along ``path``.

    sqrt(Psi) and sqrt(z(z-1)(z-a)) start on the principal branch at the base
    point and are continued by integrating their own logarithmic derivatives.
    The ODE residual is computed from the closed-form logarithmic derivative
    and reported relative to the size of the individual terms.
    """
    path.check(neq.singular_points())
    z0 = path.base
    if abs(psi(z0)) < path.clearance:
        raise ClearanceError("Psi vanishes near the base point")

    def rhs(z, Y):
        s, r, _ = Y
        ps = psi(z)
        return np.array([
            s * (1 / z + 1 / (z - 1) + 1 / (z - neq.a)) / 2,
            r * psi.d(z) / (2 * ps),
            neq.R(z) / (ps * s),
        ])

    sol = _integrate(rhs, path, [cmath.sqrt(neq.cubic(z0)), cmath.sqrt(psi(z0)), 0.0], rtol, atol, samples)
    z = sol.z
    s, r, integral = sol.y
    ps, dps, ddps = psi(z), psi.d(z), psi.d(z, 2)
    if np.min(np.abs(ps)) < path.clearance:
        raise ClearanceError("path crosses a zero of Psi; reroute")
    phase = np.exp(0.5j * nu * integral)
    Y1, Y2 = r * phase, r / phase
    f = neq.R(z) / (ps * s)  # d(integral)/dz
    df = f * (neq.dlogR(z) - dps / ps - (1 / z + 1 / (z - 1) + 1 / (z - neq.a)) / 2)
    P, Q = neq.P(z), neq.Q(z)
    out = []
    for sgn, Y in ((1, Y1), (-1, Y2)):
        L = dps / (2 * ps) + sgn * 0.5j * nu * f
        dL = (ddps * ps - dps**2) / (2 * ps**2) + sgn * 0.5j * nu * df
        ypp, yp = (dL + L * L) * Y, L * Y
        scale = np.abs(ypp) + np.abs(P * yp) + np.abs(Q * Y)
        out.append((yp, np.abs(ypp + P * yp + Q * Y) / scale))
    (dY1, res1), (dY2, res2) = out
    return YSamples(z, Y1, Y2, dY1, dY2, ps, res1, res2)


def squared_wronskian_constant(neq: NumericEquation, psi: NumericPsi, path: NumericPath,
                               samples: int = 8, **kw) -> complex:
    """nu^2 measured from a numeric basis.

    Psi = alpha y1^2 + beta y1 y2 + gamma y2^2 is fitted along ``path`` for the
    basis with identity data at the base z0; then W[Y1, Y2]^2 = beta^2 - 4 alpha gamma
    and the Wronskian shape gives nu^2 = -(beta^2 - 4 alpha gamma) z0(z0-1)(z0-a) / R(z0)^2.
    """
    s1 = integrate_ode(neq, path, 1.0, 0.0, samples=samples, **kw)
    s2 = integrate_ode(neq, path, 0.0, 1.0, samples=samples, **kw)
    y1, y2 = s1.y[0], s2.y[0]
    A = np.column_stack([y1 * y1, y1 * y2, y2 * y2])
    coef, *_ = np.linalg.lstsq(A, psi(s1.z), rcond=None)
    alpha, beta, gamma = coef
    z0 = path.base
    return -(beta * beta - 4 * alpha * gamma) * neq.cubic(z0) / neq.R(z0) ** 2


def wronskian_profile(neq: NumericEquation, path: NumericPath, samples: int = 20, **kw) -> np.ndarray:
    """W[y1, y2] sqrt(z(z-1)(z-a)) / R(z) along the path; constant when the Wronskian has the closed form."""
    s1 = integrate_ode(neq, path, 1.0, 0.0, samples=samples, **kw)
    s2 = integrate_ode(neq, path, 0.0, 1.0, samples=samples, **kw)
    W = s1.y[0] * s2.y[1] - s1.y[1] * s2.y[0]
    z = s1.z
    # continue the square root along the samples
    roots = [cmath.sqrt(neq.cubic(z[0]))]
    for zk in z[1:]:
        r = cmath.sqrt(neq.cubic(zk))
        roots.append(r if abs(r - roots[-1]) <= abs(r + roots[-1]) else -r)
    return W * np.array(roots) / neq.R(z)


def write_csv(path, z: np.ndarray, y: np.ndarray):
    """Columns: re z, im z, re y, im y."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re_z", "im_z", "re_y", "im_y"])
        for zk, yk in zip(z, y):
            w.writerow([f"{zk.real:.17g}", f"{zk.imag:.17g}", f"{yk.real:.17g}", f"{yk.imag:.17g}"])
