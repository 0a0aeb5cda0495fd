"""Pade resummation of the perturbative energy and pole analysis.

The relativistic [2,2] approximant

    E(l) = m + m^2 l^2 F1^4 / [ -2 m F1^2 + 4 m^2 l F1 F21
                                + 2 l^2 ( -2 dE + m^3 (eta4 - 4 F21^2) ) ]

tends to a finite constant as l -> infinity.  Setting dE -> 0 gives the
non-relativistic [2,2]; the simpler non-relativistic [2,1]

    E(l) = m + m l^2 F1^3 / (4 m l F21 - 2 F1)

grows linearly.  (Its binding part m - E equals the published [2,1]
expression; the sign here is fixed so that the small-l expansion reproduces
c2 and c3.)  The [2,2] denominator has no real pole iff

    dE > (m^3 / 2) (eta4 - 3 F21^2)

which for the Gaussian family reduces to the closed form of
``gaussian_region``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functionals import FunctionalSet
from .perturbation import energy_series_1d

__all__ = [
    "PadeModel",
    "pade_relativistic",
    "pade_nonrelativistic",
    "pole_free_condition",
    "gaussian_region",
    "decay_constant_model",
    "DegeneratePadeError",
]


class DegeneratePadeError(ValueError):
    """All denominator coefficients vanish; the approximant is undefined."""


@dataclass(frozen=True)
class PadeModel:
    """Rational model E(l) = m + N(l) / D(l) with polynomial coefficients
    stored in ascending powers of l."""

    kind: str
    m: float
    num: tuple
    den: tuple
    asymptote: float | None
    poles: tuple

    def energy(self, lam):
        lam = np.asarray(lam, dtype=float)
        n = sum(c * lam ** i for i, c in enumerate(self.num))
        d = sum(c * lam ** i for i, c in enumerate(self.den))
        out = self.m + n / d
        return float(out) if out.ndim == 0 else out

    __call__ = energy


def _positive_real_roots(den) -> tuple:
    coeffs = list(den)
    scale = max(abs(c) for c in coeffs)
    if scale == 0:
        raise DegeneratePadeError("Pade denominator is identically zero")
    roots = np.roots(coeffs[::-1])  # np.roots wants descending powers
    out = [float(r.real) for r in roots
           if abs(r.imag) <= 1e-10 * max(1.0, abs(r)) and r.real > 0]
    return tuple(sorted(out))


def _pade22(fs: FunctionalSet, m: float, delta_e: float, kind: str) -> PadeModel:
    series = energy_series_1d(fs, m)
    f1, f21 = fs.f1, fs.f21
    if f1 == 0:
        raise ValueError("Pade resummation requires F1 != 0")
    num = (0.0, 0.0, m * m * f1 ** 4)
    den = (
        -2.0 * m * f1 * f1,
        4.0 * m * m * f1 * f21,
        2.0 * (-2.0 * delta_e + m ** 3 * (series.eta4 - 4.0 * f21 * f21)),
    )
    if max(abs(c) for c in den) == 0:
        raise DegeneratePadeError("Pade denominator is identically zero")
    asymptote = m + num[2] / den[2] if den[2] != 0 else None
    return PadeModel(kind=kind, m=m, num=num, den=den,
                     asymptote=asymptote, poles=_positive_real_roots(den))


def pade_relativistic(fs: FunctionalSet, m: float) -> PadeModel:
    """Diagonal [2,2] approximant of the relativistic fourth-order series."""
    series = energy_series_1d(fs, m)
    return _pade22(fs, m, series.delta_e, kind="relativistic_22")


def pade_nonrelativistic(fs: FunctionalSet, m: float, kind: str = "21") -> PadeModel:
    """Non-relativistic approximants: '22' drops dE, '21' is the linear one."""
    if kind in ("22", "nonrelativistic_22"):
        return _pade22(fs, m, 0.0, kind="nonrelativistic_22")
    if kind not in ("21", "nonrelativistic_21"):
        raise ValueError(f"kind must be '21' or '22', got {kind!r}")
    f1, f21 = fs.f1, fs.f21
    if f1 == 0:
        raise ValueError("Pade resummation requires F1 != 0")
    num = (0.0, 0.0, m * f1 ** 3)
    den = (-2.0 * f1, 4.0 * m * f21)
    return PadeModel(kind="nonrelativistic_21", m=m, num=num, den=den,
                     asymptote=None, poles=_positive_real_roots(den))


def pole_free_condition(fs: FunctionalSet, delta_e: float, m: float) -> bool:
    """True iff the [2,2] denominator has no real pole (strict inequality)."""
    eta4 = energy_series_1d(fs, m).eta4
    return delta_e > 0.5 * m ** 3 * (eta4 - 3.0 * fs.f21 * fs.f21)


def gaussian_region(alpha: float, gamma: float, m: float) -> bool:
    """Closed-form pole-free condition for the Gaussian pair:
    pi alpha (gamma + 5) > 8 (-6 + 3 sqrt(3) + 2 pi) (gamma + 1) m^2."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if abs(gamma) > 1:
        raise ValueError("gamma must lie in [-1, 1]")
    lhs = math.pi * alpha * (gamma + 5.0)
    rhs = 8.0 * (-6.0 + 3.0 * math.sqrt(3.0) + 2.0 * math.pi) * (gamma + 1.0) * m * m
    return lhs > rhs


def decay_constant_model(pade: PadeModel, m: float, lam: float) -> float | None:
    """Gamma(lambda) = sqrt(m^2 - E^2) from the Pade energy.

    Returns None (undefined) when the resummed energy leaves [-m, m], where
    the square root turns imaginary.
    """
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    e = pade.energy(lam)
    if not math.isfinite(e) or abs(e) > m:
        return None
    return math.sqrt(max(m * m - e * e, 0.0))
