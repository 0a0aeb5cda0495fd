import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diracwell import (EPS_SUPPORT, ModelParams, delta_pair, eval_potential,
                       from_config, gaussian_pair, square_well)


class TestGaussianPair:
    def test_values(self):
        spec = gaussian_pair(2.0, 0.5)
        assert spec.v_smooth(0.0) == pytest.approx(-1.5)
        assert spec.u_smooth(0.0) == pytest.approx(-0.5)
        assert spec.v_smooth(1.0) == pytest.approx(-1.5 * math.exp(-2.0))

    def test_even(self):
        spec = gaussian_pair(1.0, 1.0)
        x = np.linspace(0.1, 3.0, 7)
        np.testing.assert_allclose(spec.v_smooth(x), spec.v_smooth(-x))
        np.testing.assert_allclose(spec.u_smooth(x), spec.u_smooth(-x))

    def test_support_radius_bounds_tail(self):
        spec = gaussian_pair(1.0, 1.0)
        R = spec.support_radius
        assert abs(float(spec.v_smooth(R + 1e-6))) < EPS_SUPPORT * 2.0
        # R is tight: just inside, the tail is still above the threshold
        assert abs(float(spec.v_smooth(0.99 * R))) > EPS_SUPPORT * 2.0

    def test_no_atoms_no_breakpoints(self):
        spec = gaussian_pair(1.0, 0.0)
        assert not spec.has_atoms()
        assert spec.quad_points() == ()

    def test_validation(self):
        with pytest.raises(ValueError):
            gaussian_pair(0.0, 0.5)
        with pytest.raises(ValueError):
            gaussian_pair(1.0, 1.5)
        with pytest.raises(ValueError):
            gaussian_pair(1.0, -1.5)

    @settings(max_examples=25, deadline=None)
    @given(alpha=st.floats(0.05, 20.0), gamma=st.floats(-1.0, 1.0))
    def test_support_radius_property(self, alpha, gamma):
        spec = gaussian_pair(alpha, gamma)
        R = spec.support_radius
        cmax = max(1.0 + gamma, 1.0 - gamma)
        assert cmax * math.exp(-alpha * R * R) <= EPS_SUPPORT * cmax * (1 + 1e-9)


class TestDeltaPair:
    def test_atoms(self):
        spec = delta_pair(1.0)
        assert spec.v_atoms == ((0.0, -2.0),)
        assert spec.u_atoms == ()
        assert spec.has_atoms()
        assert float(spec.v_smooth(0.3)) == 0.0
        assert float(spec.u_smooth(0.3)) == 0.0

    def test_gamma_restriction(self):
        with pytest.raises(ValueError, match="gamma = 1"):
            delta_pair(0.0)
        with pytest.raises(ValueError):
            delta_pair(0.999)


class TestSquareWell:
    def test_values_and_breakpoints(self):
        spec = square_well(2.0, 0.5)
        assert float(spec.v_smooth(0.0)) == -2.0
        assert float(spec.v_smooth(0.5)) == -2.0
        assert float(spec.v_smooth(0.51)) == 0.0
        assert spec.breakpoints == (-0.5, 0.5)
        assert spec.support_radius == 0.5
        np.testing.assert_array_equal(spec.v_smooth(np.array([0.0, 1.0])),
                                      spec.u_smooth(np.array([0.0, 1.0])))

    def test_validation(self):
        with pytest.raises(ValueError):
            square_well(-1.0, 1.0)
        with pytest.raises(ValueError):
            square_well(1.0, 0.0)


class TestModelParams:
    def test_k_dispersion(self):
        p = ModelParams(m=1.0, q=1.0)
        assert p.k == pytest.approx(math.sqrt(2.0), rel=1e-15)
        assert ModelParams(m=0.3).k == 0.3

    def test_validation(self):
        with pytest.raises(ValueError):
            ModelParams(m=0.0)
        with pytest.raises(ValueError):
            ModelParams(m=1.0, lam=-0.1)


def test_eval_potential_dispatch():
    spec = gaussian_pair(1.0, 0.5)
    assert eval_potential(spec, "V", 0.0) == pytest.approx(-1.5)
    assert eval_potential(spec, "U", 0.0) == pytest.approx(-0.5)
    with pytest.raises(ValueError):
        eval_potential(spec, "W", 0.0)


class TestFromConfig:
    def test_families(self):
        g = from_config({"family": "gaussian", "alpha": 1.0, "gamma": 1.0})
        assert g.family == "gaussian" and g.params["alpha"] == 1.0
        s = from_config({"family": "square", "depth": 1.0, "half_width": 2.0})
        assert s.family == "square" and s.support_radius == 2.0
        d = from_config({"family": "delta", "gamma": 1.0})
        assert d.has_atoms()

    def test_errors(self):
        with pytest.raises(ValueError, match="unknown family"):
            from_config({"family": "morse"})
        with pytest.raises(ValueError, match="missing parameter"):
            from_config({"family": "gaussian", "alpha": 1.0})
