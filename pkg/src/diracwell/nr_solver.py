"""Non-relativistic Schrodinger shooting solver for the comparison curves.

Solves -psi''/(2m) + lam V psi = E psi for the even ground state (E < 0) by
inward integration from x = L with psi ~ e^{-kappa x}, kappa = sqrt(-2 m E),
and parity matching psi'(0) = 0.  The kinetic term carries the physical mass
m so that the shallow-well limit reproduces the series coefficient
c2 = -(m/2) F1^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .dirac_solver import NoBoundStateError, SolverConfig
from .functionals import FunctionalSet, compute_functionals
from .potentials import PotentialSpec

__all__ = ["NrSolution", "solve_schrodinger_ground"]


@dataclass(frozen=True)
class NrSolution:
    """Even ground state of the non-relativistic well, normalized to 1."""

    binding: float  # B = -E_nr > 0
    grid: np.ndarray
    psi: np.ndarray
    residual: float

    @property
    def energy(self) -> float:
        return -self.binding


def _shooter(spec, m, lam, L, rtol, atol):
    v = spec.v_smooth

    def rhs(x, y, E):
        p, dp = y
        return (dp, 2.0 * m * (lam * float(v(x)) - E) * p)

    def f(E):
        kappa = math.sqrt(max(-2.0 * m * E, 0.0))
        sol = solve_ivp(rhs, (L, 0.0), (1.0, -kappa), args=(E,),
                        rtol=rtol, atol=atol, method="RK45")
        if not sol.success:
            raise RuntimeError(sol.message)
        return sol.y[1, -1]

    return f


def solve_schrodinger_ground(spec: PotentialSpec, m: float, lam: float,
                             cfg: SolverConfig | None = None,
                             fs: FunctionalSet | None = None) -> NrSolution:
    """Ground state of -psi''/(2m) + lam V psi = E psi for a smooth even V."""
    if spec.has_atoms():
        raise ValueError("shooting solver requires a smooth potential (no delta atoms)")
    if not (m > 0 and lam > 0):
        raise ValueError("require m > 0 and lam > 0")
    cfg = cfg or SolverConfig()
    if fs is None:
        fs = compute_functionals(spec)

    # shallow-well estimate sets the domain so the tail is well resolved
    b_est = 0.5 * m * (lam * fs.f1) ** 2
    kappa_est = math.sqrt(2.0 * m * b_est)
    if cfg.domain_half_length is not None:
        L = cfg.domain_half_length
    else:
        L = spec.support_radius + max(10.0, 8.0 / max(kappa_est, 1e-3))

    xs = np.linspace(-spec.support_radius, spec.support_radius, 2001)
    v_min = float(np.min(spec.v_smooth(xs)))
    if v_min >= 0:
        raise NoBoundStateError("V has no attractive region")
    e_lo = 1.05 * lam * v_min
    e_hi = -1e-12 * m * max(1.0, lam * abs(v_min) / m)

    f_coarse = _shooter(spec, m, lam, L, cfg.coarse_rtol, cfg.coarse_atol)
    f_tight = _shooter(spec, m, lam, L, cfg.rtol, cfg.atol)
    es = np.linspace(e_lo, e_hi, cfg.bracket_points)
    vals = np.array([f_coarse(e) for e in es])
    changes = [i for i in range(len(es) - 1)
               if np.isfinite(vals[i]) and np.isfinite(vals[i + 1])
               and vals[i] * vals[i + 1] < 0]
    if not changes:
        raise NoBoundStateError("no bound state detected (should not occur for lam > 0)")
    i = changes[0]  # ground state: lowest even eigenvalue
    a, b, fa, fb = es[i], es[i + 1], f_tight(es[i]), f_tight(es[i + 1])
    if fa * fb > 0:
        j, k = max(i - 1, 0), min(i + 2, len(es) - 1)
        a, b, fa, fb = es[j], es[k], f_tight(es[j]), f_tight(es[k])
        if fa * fb > 0:
            raise NoBoundStateError("matching-function bracket lost at tight tolerance")
    energy = brentq(f_tight, a, b, xtol=cfg.bisect_tol_factor * m, rtol=8.9e-16)

    # dense pass and parity extension
    def rhs(x, y):
        p, dp = y
        return (dp, 2.0 * m * (lam * float(spec.v_smooth(x)) - energy) * p)

    kappa = math.sqrt(max(-2.0 * m * energy, 0.0))
    xg = np.linspace(0.0, L, cfg.n_samples)
    sol = solve_ivp(rhs, (L, 0.0), (1.0, -kappa), t_eval=xg[::-1],
                    rtol=cfg.rtol, atol=cfg.atol, method="RK45")
    if not sol.success:
        raise RuntimeError(sol.message)
    p = sol.y[0][::-1]
    dp = sol.y[1][::-1]
    residual = abs(dp[0]) / np.max(np.abs(p))
    grid = np.concatenate([-xg[:0:-1], xg])
    psi = np.concatenate([p[:0:-1], p])
    if psi[cfg.n_samples - 1] < 0:
        psi = -psi
    psi = psi / math.sqrt(np.trapezoid(psi ** 2, grid))
    return NrSolution(binding=-energy, grid=grid, psi=psi, residual=residual)
