import math

import numpy as np
import pytest

from diracwell import (PotentialSpec, compute_functionals, delta_coefficients,
                       energy_2d_pt2, energy_series_1d, eval_pt4, gaussian_pair)


class TestDeltaWellSeries:
    """The point well is exactly solvable: E = m (1 - l^2) / (1 + l^2),
    whose expansion m (1 - 2 l^2 + 2 l^4 - ...) pins every coefficient."""

    def test_coefficients_m1(self, corpus_fs):
        s = energy_series_1d(corpus_fs["delta_g1"], 1.0)
        assert s.c2 == pytest.approx(-2.0, abs=1e-12)
        assert s.c3 == pytest.approx(0.0, abs=1e-12)
        assert s.c4_nr == pytest.approx(0.0, abs=1e-12)
        assert s.c4_rel == pytest.approx(2.0, abs=1e-12)
        assert s.c4 == pytest.approx(2.0, abs=1e-12)
        assert s.eta4 == pytest.approx(0.0, abs=1e-12)
        assert s.kappa4 == pytest.approx(8.0, abs=1e-12)
        assert s.delta_e == pytest.approx(2.0, abs=1e-12)

    def test_mass_scaling(self, corpus_fs):
        # E/m depends only on lambda, so every coefficient is linear in m
        for m in (0.1, 0.5, 2.0):
            s = energy_series_1d(corpus_fs["delta_g1"], m)
            assert s.c2 == pytest.approx(-2.0 * m, rel=1e-13)
            assert s.c4 == pytest.approx(2.0 * m, rel=1e-13)

    def test_truncation_error_is_sixth_order(self, corpus_fs):
        s = energy_series_1d(corpus_fs["delta_g1"], 1.0)
        lams = np.array([0.01, 0.02, 0.05, 0.1])
        errs = np.array([abs(eval_pt4(s, l) - (1 - l * l) / (1 + l * l))
                         for l in lams])
        slope = np.polyfit(np.log(lams), np.log(errs), 1)[0]
        assert 5.7 <= slope <= 6.3


class TestSeriesStructure:
    def test_gaussian_c2(self, corpus_fs):
        # c2 = -(m/2) F1^2 with F1 = -2 sqrt(pi) for alpha = gamma = 1
        s = energy_series_1d(corpus_fs["gauss_a1_g1"], 0.1)
        assert s.c2 == pytest.approx(-0.05 * 4.0 * math.pi, rel=1e-10)

    def test_nonrelativistic_part_is_independent_of_u(self):
        def v(x):
            return -np.exp(-np.asarray(x) ** 2)

        def zero(x):
            return np.zeros_like(np.asarray(x, dtype=float))

        with_u = PotentialSpec(v_smooth=v, u_smooth=v, support_radius=6.2)
        without_u = PotentialSpec(v_smooth=v, u_smooth=zero, support_radius=6.2)
        s1 = energy_series_1d(compute_functionals(with_u), 0.5)
        s2 = energy_series_1d(compute_functionals(without_u), 0.5)
        assert s1.c2 == pytest.approx(s2.c2, rel=1e-12)
        assert s1.c3 == pytest.approx(s2.c3, rel=1e-10)
        assert s1.c4_nr == pytest.approx(s2.c4_nr, rel=1e-8)
        # the relativistic piece feels U through F32
        assert s1.c4_rel != pytest.approx(s2.c4_rel, rel=1e-3)

    def test_validation(self, corpus_fs):
        with pytest.raises(ValueError):
            energy_series_1d(corpus_fs["delta_g1"], 0.0)
        s = energy_series_1d(corpus_fs["delta_g1"], 1.0)
        with pytest.raises(ValueError):
            eval_pt4(s, -0.1)
        assert eval_pt4(s, 0.0) == 1.0


class TestGapEquationConsistency:
    """Writing E = sqrt(m^2 - Delta) with Delta = d2 l^2 + d3 l^3 + d4 l^4
    must reproduce the direct series: c2 = -d2/2m, c3 = -d3/2m,
    c4 = -d4/2m - d2^2/8m^3."""

    @pytest.mark.parametrize("m", [0.1, 0.5, 1.0])
    def test_all_corpus(self, m, corpus_fs):
        for name, fs in corpus_fs.items():
            s = energy_series_1d(fs, m)
            d1, d2, d3, d4 = delta_coefficients(fs, m)
            assert d1 == 0.0
            scale = max(abs(s.c2), abs(s.c3), abs(s.c4), 1e-30)
            assert abs(s.c2 + d2 / (2 * m)) <= 1e-12 * scale, name
            assert abs(s.c3 + d3 / (2 * m)) <= 1e-12 * scale, name
            assert abs(s.c4 + d4 / (2 * m) + d2 * d2 / (8 * m ** 3)) \
                <= 1e-12 * scale, name

    def test_delta_values(self, corpus_fs):
        assert delta_coefficients(corpus_fs["delta_g1"], 1.0) == \
            pytest.approx((0.0, 4.0, 0.0, -8.0), abs=1e-12)


class TestQuasi2D:
    def test_reduces_to_1d_at_q0(self, corpus, corpus_fs):
        for name, spec in corpus.items():
            fs = corpus_fs[name]
            for m in (0.1, 1.0):
                s = energy_series_1d(fs, m)
                for lam in (0.05, 0.3):
                    e2d = energy_2d_pt2(spec, m, 0.0, lam, fs=fs)
                    e1d = m + s.c2 * lam * lam
                    assert abs(e2d - e1d) <= 1e-12 * max(1.0, abs(e1d)), name

    def test_symmetric_pair_example(self, corpus, corpus_fs):
        # alpha=1, gamma=0, m=1, q=1: F(k) = -sqrt(pi) independent of k,
        # so E = sqrt(2) - (lam^2 / 2 sqrt(2)) pi
        e = energy_2d_pt2(corpus["gauss_a1_g0"], 1.0, 1.0, 0.1,
                          fs=corpus_fs["gauss_a1_g0"])
        ref = math.sqrt(2.0) - (0.005 / math.sqrt(2.0)) * math.pi
        assert e == pytest.approx(ref, abs=1e-12)

    def test_binding_decreases_with_q(self, corpus, corpus_fs):
        # for the symmetric pair F(k) = m F1 is k-independent, so the
        # second-order gap k - E = (lam^2/2k) F(k)^2 falls off with q
        spec, fs = corpus["gauss_a1_g0"], corpus_fs["gauss_a1_g0"]
        m, lam = 0.1, 0.2
        gaps = [math.hypot(q, m) - energy_2d_pt2(spec, m, q, lam, fs=fs)
                for q in (0.0, 0.5, 1.0)]
        assert gaps[0] > gaps[1] > gaps[2] > 0

    def test_validation(self, corpus):
        with pytest.raises(ValueError):
            energy_2d_pt2(corpus["gauss_a1_g1"], -1.0, 0.0, 0.1)
        with pytest.raises(ValueError):
            energy_2d_pt2(corpus["gauss_a1_g1"], 1.0, 0.0, -0.1)
