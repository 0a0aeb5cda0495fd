"""Short-range potential pairs (V, U) for the 1D Dirac well problem.

A potential pair consists of smooth parts (evaluated pointwise) and optional
point "atoms" w * delta(x - x0), which are kept symbolic so that downstream
integrals can treat them exactly.  Built-in families: gaussian, square, delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "PotentialSpec",
    "ModelParams",
    "gaussian_pair",
    "delta_pair",
    "square_well",
    "eval_potential",
    "from_config",
    "EPS_SUPPORT",
]

# Relative tail threshold used to define the effective support radius.
EPS_SUPPORT = 1e-16


@dataclass(frozen=True)
class PotentialSpec:
    """A pair of short-range wells (V, U).

    ``v_smooth``/``u_smooth`` are the pointwise parts (they accept scalars or
    numpy arrays); ``v_atoms``/``u_atoms`` are (position, weight) point masses
    contributing ``w * delta(x - x0)``.  ``support_radius`` is a radius R with
    |V|, |U| below EPS_SUPPORT * max|V| for |x| > R.  ``breakpoints`` marks
    discontinuities of the smooth parts for quadrature splitting.
    """

    v_smooth: Callable
    u_smooth: Callable
    v_atoms: tuple = ()
    u_atoms: tuple = ()
    support_radius: float = 1.0
    breakpoints: tuple = ()
    family: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (self.support_radius > 0 and math.isfinite(self.support_radius)):
            raise ValueError("support_radius must be positive and finite")

    @property
    def atom_positions(self) -> tuple:
        return tuple(x0 for x0, _ in self.v_atoms) + tuple(x0 for x0, _ in self.u_atoms)

    def quad_points(self) -> tuple:
        """Positions where integrands may be non-smooth."""
        return tuple(sorted(set(self.breakpoints) | set(self.atom_positions)))

    def has_atoms(self) -> bool:
        return bool(self.v_atoms or self.u_atoms)


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters in natural units (hbar = c = 1)."""

    m: float
    lam: float = 0.0
    q: float = 0.0

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError("mass m must be positive")
        if self.lam < 0:
            raise ValueError("coupling lambda must be >= 0")

    @property
    def k(self) -> float:
        """Transverse dispersion k(q) = sqrt(q^2 + m^2) >= m."""
        return math.hypot(self.q, self.m)


def _tail_radius(profile: Callable, scale: float, r_lo: float = 0.5) -> float:
    """Smallest R (by bisection) with profile(R) below EPS_SUPPORT * scale.

    ``profile`` must be non-negative and eventually decreasing.
    """
    threshold = EPS_SUPPORT * scale
    r_hi = max(r_lo, 1.0)
    for _ in range(200):
        if profile(r_hi) < threshold:
            break
        r_hi *= 2.0
    else:
        raise ValueError("potential tail does not decay below the support threshold")
    lo, hi = 0.0, r_hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if profile(mid) < threshold:
            hi = mid
        else:
            lo = mid
    return hi


def gaussian_pair(alpha: float, gamma: float) -> PotentialSpec:
    """Gaussian wells V = -(1+gamma) e^{-alpha x^2}, U = -(1-gamma) e^{-alpha x^2}.

    ``gamma`` in [-1, 1] controls the relative depth of V and U; |gamma| > 1
    is rejected (rescale lambda instead).
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if abs(gamma) > 1:
        raise ValueError(
            "gamma must lie in [-1, 1]; deeper asymmetry is equivalent to a rescaled lambda"
        )
    cv = 1.0 + gamma
    cu = 1.0 - gamma
    cmax = max(cv, cu)

    def v_smooth(x, _c=cv, _a=alpha):
        return -_c * np.exp(-_a * np.asarray(x) ** 2)

    def u_smooth(x, _c=cu, _a=alpha):
        return -_c * np.exp(-_a * np.asarray(x) ** 2)

    radius = _tail_radius(lambda r: cmax * math.exp(-alpha * r * r), scale=cmax)
    return PotentialSpec(
        v_smooth=v_smooth,
        u_smooth=u_smooth,
        support_radius=radius,
        family="gaussian",
        params={"alpha": alpha, "gamma": gamma},
    )


def delta_pair(gamma: float) -> PotentialSpec:
    """Pure point wells V = -(1+gamma) delta(x), U = -(1-gamma) delta(x).

    Only gamma = 1 is admitted: for gamma != 1 the U atom makes both spinor
    components discontinuous at the origin and the bound-state problem is not
    well posed in this form.
    """
    if gamma != 1:
        raise ValueError(
            "delta_pair requires gamma = 1: a delta atom in U forces a "
            "discontinuity of both spinor components at the origin"
        )

    def zero(x):
        return np.zeros_like(np.asarray(x, dtype=float))

    return PotentialSpec(
        v_smooth=zero,
        u_smooth=zero,
        v_atoms=((0.0, -2.0),),
        u_atoms=(),
        support_radius=1.0,
        family="delta",
        params={"gamma": gamma},
    )


def square_well(depth: float, half_width: float) -> PotentialSpec:
    """Square well V(x) = U(x) = -depth for |x| <= half_width, 0 otherwise.

    Pure vector coupling convention (U = V); this is the textbook relativistic
    square well, and the choice is recorded in the spec params.
    """
    if not depth > 0:
        raise ValueError("depth must be positive")
    if not half_width > 0:
        raise ValueError("half_width must be positive")

    def well(x, _d=depth, _a=half_width):
        x = np.asarray(x, dtype=float)
        return np.where(np.abs(x) <= _a, -_d, 0.0)

    return PotentialSpec(
        v_smooth=well,
        u_smooth=well,
        support_radius=half_width,
        breakpoints=(-half_width, half_width),
        family="square",
        params={"depth": depth, "half_width": half_width, "coupling": "vector (U = V)"},
    )


def eval_potential(spec: PotentialSpec, which: str, x) -> float:
    """Evaluate the smooth part of V or U at x.  Atoms are never included;
    consumers read them from the atoms lists and handle them analytically."""
    if which == "V":
        return spec.v_smooth(x)
    if which == "U":
        return spec.u_smooth(x)
    raise ValueError(f"which must be 'V' or 'U', got {which!r}")


def from_config(config: dict) -> PotentialSpec:
    """Build a potential pair from a config mapping.

    Recognized forms::

        {"family": "gaussian", "alpha": 1.0, "gamma": 1.0}
        {"family": "square", "depth": 1.0, "half_width": 1.0}
        {"family": "delta", "gamma": 1.0}
    """
    cfg = dict(config)
    family = cfg.pop("family", None)
    try:
        if family == "gaussian":
            return gaussian_pair(alpha=float(cfg.pop("alpha")), gamma=float(cfg.pop("gamma")))
        if family == "square":
            return square_well(depth=float(cfg.pop("depth")), half_width=float(cfg.pop("half_width")))
        if family == "delta":
            return delta_pair(gamma=float(cfg.pop("gamma")))
    except KeyError as exc:
        raise ValueError(f"potential.{exc.args[0]}: missing parameter for family {family!r}") from exc
    raise ValueError(f"potential.family: unknown family {family!r}")
