"""Perturbative bound-state energy to fourth order.

The 1D energy reads

    E(lambda) = m + c2 l^2 + c3 l^3 + (c4_nr + c4_rel) l^4 + O(l^5)

with

    c2     = -(m/2) F1^2
    c3     = -m^2 F1 F21
    c4_nr  = -(m^3/2) eta4,   eta4 = F1^2 F22 + 2 F1 F31 + F21^2
    c4_rel = dE = (m/2) (kappa4 - F1^4/4),   kappa4 = (F1 F32 + F1^4)/2

c2..c4_nr form the non-relativistic part (a functional of V only); c4_rel is
the leading relativistic correction (depends on U through F32).

The same coefficients arise from E = sqrt(k^2 - Delta) with
Delta = sum_n delta_n l^n; the beta->0 leading delta_n are exposed by
``delta_coefficients`` for the consistency check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .functionals import FunctionalSet, compute_functionals
from .potentials import PotentialSpec

__all__ = [
    "EnergySeries",
    "energy_series_1d",
    "eval_pt4",
    "energy_2d_pt2",
    "delta_coefficients",
]


@dataclass(frozen=True)
class EnergySeries:
    """Coefficients of E = m + c2 l^2 + c3 l^3 + (c4_nr + c4_rel) l^4."""

    m: float
    c2: float
    c3: float
    c4_nr: float
    c4_rel: float
    delta_e: float
    eta4: float
    kappa4: float

    @property
    def c4(self) -> float:
        return self.c4_nr + self.c4_rel


def energy_series_1d(fs: FunctionalSet, m: float) -> EnergySeries:
    """Assemble the fourth-order 1D energy series from cached functionals."""
    if not m > 0:
        raise ValueError("mass m must be positive")
    f1 = fs.f1
    eta4 = f1 * f1 * fs.f22 + 2.0 * f1 * fs.f31 + fs.f21 * fs.f21
    kappa4 = 0.5 * (f1 * fs.f32 + f1 ** 4)
    delta_e = 0.5 * m * (kappa4 - 0.25 * f1 ** 4)
    return EnergySeries(
        m=m,
        c2=-0.5 * m * f1 * f1,
        c3=-(m * m) * f1 * fs.f21,
        c4_nr=-0.5 * m ** 3 * eta4,
        c4_rel=delta_e,
        delta_e=delta_e,
        eta4=eta4,
        kappa4=kappa4,
    )


def eval_pt4(series: EnergySeries, lam: float) -> float:
    """E(lambda) from the truncated fourth-order series."""
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    return series.m + lam ** 2 * (series.c2 + lam * (series.c3 + lam * series.c4))


def energy_2d_pt2(spec: PotentialSpec, m: float, q: float, lam: float,
                  fs: FunctionalSet | None = None) -> float:
    """Second-order quasi-bound energy in 2D: k - (lambda^2 / 2k) F(k)^2.

    Confinement along x with transverse plane-wave momentum q; q = 0 recovers
    the 1D series truncated at lambda^2.
    """
    if not m > 0:
        raise ValueError("mass m must be positive")
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    if fs is None:
        fs = compute_functionals(spec)
    k = math.hypot(q, m)
    fk = fs.f_of_k(m, k)
    return k - (lam * lam / (2.0 * k)) * fk * fk


def delta_coefficients(fs: FunctionalSet, m: float):
    """Leading (beta -> 0) coefficients (d1, d2, d3, d4) of Delta at q = 0.

    d1 -> 0 in the limit; d2 = F(m)^2, d3 = 2 m^3 F1 F21,
    d4 = m^4 eta4 - m^2 kappa4.  Expanding sqrt(m^2 - Delta) reproduces the
    series coefficients through fourth order.
    """
    series = energy_series_1d(fs, m)
    fm = fs.f_of_k(m, m)
    d2 = fm * fm
    d3 = 2.0 * m ** 3 * fs.f1 * fs.f21
    d4 = m ** 4 * series.eta4 - m ** 2 * series.kappa4
    return (0.0, d2, d3, d4)
