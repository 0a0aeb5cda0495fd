"""Shared fixtures and independent oracles for the test suite.

The oracles deliberately avoid the nested-kernel reductions used by the
package: the double integrals are done by fixed-order Gauss-Legendre on the
triangle x > y (where the integrands are smooth), the triple integrals by
importance-sampled Monte Carlo, and the square-well energy by root-finding
the interface matching condition.
"""

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from diracwell import (compute_functionals, delta_pair, gaussian_pair,
                       square_well)

CORPUS_BUILDERS = {
    "gauss_a1_g1": lambda: gaussian_pair(1.0, 1.0),
    "gauss_a1_g0": lambda: gaussian_pair(1.0, 0.0),
    "gauss_a2_g05": lambda: gaussian_pair(2.0, 0.5),
    "square_d1_a1": lambda: square_well(1.0, 1.0),
    "delta_g1": lambda: delta_pair(1.0),
}

GAUSSIAN_CORPUS = ["gauss_a1_g1", "gauss_a1_g0", "gauss_a2_g05"]


@pytest.fixture(scope="session")
def corpus():
    return {name: build() for name, build in CORPUS_BUILDERS.items()}


@pytest.fixture(scope="session")
def corpus_fs(corpus):
    return {name: compute_functionals(spec) for name, spec in corpus.items()}


# ---------------------------------------------------------------------------
# brute-force quadrature oracles

def _leggauss(n, a, b):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


def brute_f21(spec, n=200):
    """int int V(y) |x-y| V(x) = 2 int dy V(y) int_{x>y} (x-y) V(x),
    by tensor Gauss-Legendre on the smooth triangle."""
    R = spec.support_radius
    y, wy = _leggauss(n, -R, R)
    total = 0.0
    for yi, wyi in zip(y, wy):
        x, wx = _leggauss(n, yi, R)
        total += 2.0 * wyi * float(spec.v_smooth(yi)) * np.sum(
            wx * (x - yi) * np.asarray(spec.v_smooth(x)))
    return total


def brute_f22(spec, n=200):
    """int int V(y) (x-y)^2 V(x) on the full square (smooth integrand)."""
    R = spec.support_radius
    x, w = _leggauss(n, -R, R)
    vx = np.asarray(spec.v_smooth(x))
    xx, yy = np.meshgrid(x, x)
    return float((w * vx) @ ((xx - yy) ** 2) @ (w * vx).T)


def _gaussian_mc_nodes(alpha, n, seed):
    rng = np.random.default_rng(seed)
    sigma = 1.0 / math.sqrt(2.0 * alpha)
    return rng.normal(0.0, sigma, size=(3, n))


def mc_f31(alpha, gamma, n=2_000_000, seed=20240817):
    """Monte-Carlo estimate of int^3 |x-y||y-z| V V V for the Gaussian pair,
    importance-sampled with the Gaussian profile.  Returns (mean, std_err)."""
    cv = 1.0 + gamma
    x, y, z = _gaussian_mc_nodes(alpha, n, seed)
    samples = np.abs(x - y) * np.abs(y - z)
    prefactor = (-cv) ** 3 * (math.pi / alpha) ** 1.5
    mean = prefactor * samples.mean()
    stderr = abs(prefactor) * samples.std(ddof=1) / math.sqrt(n)
    return mean, stderr


def mc_f32(alpha, gamma, n=2_000_000, seed=20240818):
    """Monte-Carlo estimate of int^3 sign(x-y) sign(x-z) U V V."""
    cv = 1.0 + gamma
    cu = 1.0 - gamma
    x, y, z = _gaussian_mc_nodes(alpha, n, seed)
    samples = np.sign(x - y) * np.sign(x - z)
    prefactor = (-cu) * (-cv) ** 2 * (math.pi / alpha) ** 1.5
    mean = prefactor * samples.mean()
    stderr = abs(prefactor) * samples.std(ddof=1) / math.sqrt(n)
    return mean, stderr


# ---------------------------------------------------------------------------
# square-well matching oracle

def square_well_exact_energy(m, depth, half_width, lam):
    """Ground-state energy of the vector-coupled square well from the
    interface matching condition

        K tan(K a) / (E + m - V0) = Gamma / (E + m),

    with V0 = lam * depth, K = sqrt(E^2 - (m - V0)^2) inside and
    Gamma = sqrt(m^2 - E^2) outside."""
    v0 = lam * depth
    a = half_width

    def g(e):
        ksq = e * e - (m - v0) ** 2
        gsq = m * m - e * e
        k = math.sqrt(max(ksq, 1e-300))
        gam = math.sqrt(max(gsq, 1e-300))
        return k * math.tan(k * a) / (e + m - v0) - gam / (e + m)

    es = np.linspace(max(-m, m - 2.0 * v0) + 1e-9, m - 1e-12, 4000)
    vals = [g(e) for e in es]
    for i in range(len(es) - 2, -1, -1):
        if math.isfinite(vals[i]) and math.isfinite(vals[i + 1]) \
                and vals[i] * vals[i + 1] < 0:
            return brentq(g, es[i], es[i + 1], xtol=1e-15, rtol=8.9e-16)
    raise RuntimeError("no matching root found")
