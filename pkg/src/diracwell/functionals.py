"""Potential functionals entering the perturbative energy coefficients.

The five multiple integrals

    F1   = int V
    F21  = int int V(y) |x-y| V(x)
    F22  = int int V(y) (x-y)^2 V(x)
    F31  = int int int |x-y| |y-z| V(x) V(y) V(z)
    F32  = int int int sign(x-y) sign(x-z) U(x) V(z) V(y)

are reduced to nested one-dimensional quadratures via the kernels

    T(y) = int |x-y| V(x) dx      (so F21 = int V T, F31 = int V T^2)
    S(x) = int sign(x-y) V(y) dy  (so F32 = int U S^2)

while F22 separates into moments: F22 = 2 (M0 M2 - M1^2), Mn = int x^n V.
Delta atoms contribute in closed form; sign(0) := 0 (principal value), which
makes all atom self-interaction terms vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .potentials import PotentialSpec

__all__ = [
    "FunctionalSet",
    "compute_functionals",
    "f1",
    "f_of_k",
    "f21",
    "f22",
    "f31",
    "f32",
    "QuadratureError",
    "TOL_1D",
    "TOL_NESTED",
]

TOL_1D = 1e-12      # absolute tolerance for single integrals
TOL_NESTED = 1e-9   # absolute tolerance for the nested reductions
_QUAD_LIMIT = 400


class QuadratureError(RuntimeError):
    """Quadrature failed to reach the requested tolerance."""


def _quad(f, lo, hi, points=(), epsabs=TOL_1D):
    pts = sorted(p for p in points if lo < p < hi)
    with np.errstate(all="ignore"):
        val, err = quad(f, lo, hi, points=pts or None, epsabs=epsabs,
                        epsrel=1e-12, limit=_QUAD_LIMIT)
    if not math.isfinite(val):
        raise QuadratureError(f"integral diverged on [{lo}, {hi}]")
    if err > 100 * max(epsabs, 1e-14 * abs(val)):
        raise QuadratureError(
            f"quadrature did not converge: achieved error {err:.3e} on [{lo}, {hi}]"
        )
    return val, err


def _smooth_moment(spec: PotentialSpec, which: str, n: int, epsabs=TOL_1D):
    g = spec.v_smooth if which == "V" else spec.u_smooth
    R = spec.support_radius
    return _quad(lambda x: (x ** n if n else 1.0) * float(g(x)), -R, R,
                 points=spec.quad_points(), epsabs=epsabs)


def _moment(spec: PotentialSpec, which: str, n: int, epsabs=TOL_1D):
    """int x^n V dx (or U), atoms included exactly."""
    val, err = _smooth_moment(spec, which, n, epsabs)
    atoms = spec.v_atoms if which == "V" else spec.u_atoms
    val += sum(w * (x0 ** n if n else 1.0) for x0, w in atoms)
    return val, err


def _kernel_t(spec: PotentialSpec, y: float, epsabs):
    """T(y) = int |x-y| V(x) dx, split at the kink x = y."""
    val, _ = _quad(lambda x: abs(x - y) * float(spec.v_smooth(x)),
                   -spec.support_radius, spec.support_radius,
                   points=(y, *spec.quad_points()), epsabs=epsabs)
    val += sum(w * abs(x0 - y) for x0, w in spec.v_atoms)
    return val


def _kernel_s(spec: PotentialSpec, x: float, epsabs):
    """S(x) = int sign(x-y) V(y) dy with sign(0) = 0."""
    R = spec.support_radius
    lo_val = 0.0
    if x > -R:
        lo_val, _ = _quad(lambda y: float(spec.v_smooth(y)), -R, min(x, R),
                          points=spec.quad_points(), epsabs=epsabs)
    hi_val = 0.0
    if x < R:
        hi_val, _ = _quad(lambda y: float(spec.v_smooth(y)), max(x, -R), R,
                          points=spec.quad_points(), epsabs=epsabs)
    val = lo_val - hi_val
    val += sum(w * np.sign(x - x0) for x0, w in spec.v_atoms)
    return val


def f1(spec: PotentialSpec, epsabs=TOL_1D) -> float:
    """F1 = int V dx (atoms included)."""
    return _moment(spec, "V", 0, epsabs)[0]


def f_of_k(spec: PotentialSpec, m: float, k: float, epsabs=TOL_1D) -> float:
    """F(k) = (1/2) int [(m+k) V + (m-k) U] dx, for k = sqrt(q^2 + m^2) >= m."""
    if not (m > 0 and k >= m):
        raise ValueError("require k >= m > 0")
    iv = _moment(spec, "V", 0, epsabs)[0]
    iu = _moment(spec, "U", 0, epsabs)[0]
    return 0.5 * ((m + k) * iv + (m - k) * iu)


def f21(spec: PotentialSpec, epsabs=TOL_NESTED) -> float:
    """F21 = int V(y) T(y) dy."""
    inner_tol = min(TOL_1D, epsabs / max(1.0, 4 * spec.support_radius))
    val, _ = _quad(lambda y: float(spec.v_smooth(y)) * _kernel_t(spec, y, inner_tol),
                   -spec.support_radius, spec.support_radius,
                   points=spec.quad_points(), epsabs=epsabs)
    val += sum(w * _kernel_t(spec, x0, inner_tol) for x0, w in spec.v_atoms)
    return val


def f22(spec: PotentialSpec, epsabs=TOL_1D) -> float:
    """F22 = 2 (M0 M2 - M1^2) by the moment expansion of (x-y)^2."""
    m0 = _moment(spec, "V", 0, epsabs)[0]
    m1 = _moment(spec, "V", 1, epsabs)[0]
    m2 = _moment(spec, "V", 2, epsabs)[0]
    return 2.0 * (m0 * m2 - m1 * m1)


def f31(spec: PotentialSpec, epsabs=TOL_NESTED) -> float:
    """F31 = int V(y) T(y)^2 dy (x and z integrals factor into T(y))."""
    inner_tol = min(TOL_1D, epsabs / max(1.0, 4 * spec.support_radius))
    val, _ = _quad(lambda y: float(spec.v_smooth(y)) * _kernel_t(spec, y, inner_tol) ** 2,
                   -spec.support_radius, spec.support_radius,
                   points=spec.quad_points(), epsabs=epsabs)
    val += sum(w * _kernel_t(spec, x0, inner_tol) ** 2 for x0, w in spec.v_atoms)
    return val


def f32(spec: PotentialSpec, epsabs=TOL_NESTED) -> float:
    """F32 = int U(x) S(x)^2 dx (y and z integrals factor into S(x)).

    The U/V ordering is exactly the asymmetric one of the defining triple
    integral; no symmetrization is applied.
    """
    inner_tol = min(TOL_1D, epsabs / max(1.0, 4 * spec.support_radius))
    val, _ = _quad(lambda x: float(spec.u_smooth(x)) * _kernel_s(spec, x, inner_tol) ** 2,
                   -spec.support_radius, spec.support_radius,
                   points=spec.quad_points(), epsabs=epsabs)
    val += sum(w * _kernel_s(spec, x0, inner_tol) ** 2 for x0, w in spec.u_atoms)
    return val


def _round_sig(x: float, sig: int = 12) -> float:
    if x == 0:
        return 0.0
    return round(x, sig - 1 - int(math.floor(math.log10(abs(x)))))


@dataclass
class FunctionalSet:
    """Cached functional values for one potential pair.

    ``u1`` is int U dx, needed by F(k); ``errors`` records achieved quadrature
    error estimates per entry.  ``f_of_k`` memoizes on k rounded to 12
    significant digits so that q-scans re-use entries.
    """

    f1: float
    u1: float
    f21: float
    f22: float
    f31: float
    f32: float
    errors: dict = field(default_factory=dict)
    _fk_cache: dict = field(default_factory=dict, repr=False)

    def f_of_k(self, m: float, k: float) -> float:
        if not (m > 0 and k >= m):
            raise ValueError("require k >= m > 0")
        key = (_round_sig(m), _round_sig(k))
        if key not in self._fk_cache:
            self._fk_cache[key] = 0.5 * ((m + k) * self.f1 + (m - k) * self.u1)
        return self._fk_cache[key]

    def as_dict(self) -> dict:
        return {
            "f1": self.f1,
            "f21": self.f21,
            "f22": self.f22,
            "f31": self.f31,
            "f32": self.f32,
            "errors": dict(self.errors),
        }


def compute_functionals(spec: PotentialSpec, tol_1d: float = TOL_1D,
                        tol_nested: float = TOL_NESTED) -> FunctionalSet:
    """Evaluate every functional for ``spec`` in one pass."""
    v0, e_v0 = _moment(spec, "V", 0, tol_1d)
    u0, e_u0 = _moment(spec, "U", 0, tol_1d)
    errors = {"f1": e_v0, "u1": e_u0,
              "f21": tol_nested, "f22": 3 * tol_1d,
              "f31": tol_nested, "f32": tol_nested}
    return FunctionalSet(
        f1=v0,
        u1=u0,
        f21=f21(spec, tol_nested),
        f22=f22(spec, tol_1d),
        f31=f31(spec, tol_nested),
        f32=f32(spec, tol_nested),
        errors=errors,
    )
