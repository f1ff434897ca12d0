import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from mmprop import plfit
from mmprop.errors import DegenerateFitError, DomainError
from mmprop.plfit import PlSample

FREQS = [28e9, 73e9, 140e9]
DISTS = [1.0, 2.0, 5.0, 10.0, 20.0, 45.0]


def noisy(model, params, seed=0, shadow=4.0):
    return plfit.synth_samples(model, params, FREQS, DISTS, shadow, seed)


class TestCI:
    def test_free_space_gives_two(self):
        s = [PlSample(f, d, float(oracles.fspl(f, d))) for f in FREQS for d in DISTS]
        p = plfit.fit_ci(s)
        assert p.ple == pytest.approx(2.0, abs=1e-12)
        assert p.sigma == pytest.approx(0.0, abs=1e-9)

    def test_against_oracles(self):
        s = noisy("CI", plfit.CiParams(3.1, 0.0))
        p = plfit.fit_ci(s)
        n, sigma = oracles.ci_lstsq(s)
        assert p.ple == pytest.approx(n, abs=1e-9)
        assert p.ple == pytest.approx(oracles.ci_search(s), abs=1e-6)
        assert p.sigma == pytest.approx(sigma, abs=1e-9)

    def test_d0_other_than_one(self):
        s = plfit.synth_samples("CI", plfit.CiParams(2.7, 0.0, d0=2.0), FREQS, [2.0, 4.0, 9.0], 0.0)
        p = plfit.fit_ci(s, d0=2.0)
        assert p.ple == pytest.approx(2.7, abs=1e-9) and p.d0 == 2.0

    def test_offset_shifts_ple_affinely(self):
        # adding k dB everywhere moves n by k * sum(B) / sum(B^2), not zero
        s = noisy("CI", plfit.CiParams(2.5, 0.0))
        k = 3.0
        shifted = [PlSample(x.frequency_hz, x.distance_m, x.path_loss_db + k) for x in s]
        b = 10 * np.log10([x.distance_m for x in s])
        expected = plfit.fit_ci(s).ple + k * b.sum() / (b @ b)
        assert plfit.fit_ci(shifted).ple == pytest.approx(expected, abs=1e-9)

    def test_all_at_reference_distance(self):
        with pytest.raises(DegenerateFitError):
            plfit.fit_ci([PlSample(140e9, 1.0, 75.0), PlSample(73e9, 1.0, 70.0)])

    def test_below_reference_distance(self):
        with pytest.raises(DomainError):
            plfit.fit_ci([PlSample(140e9, 0.5, 70.0), PlSample(140e9, 3.0, 90.0)])

    def test_empty(self):
        with pytest.raises(DegenerateFitError):
            plfit.fit_ci([])


class TestFI:
    def test_against_oracle(self):
        s = noisy("FI", plfit.FiParams(70.0, 2.4, 0.0), seed=3)
        p = plfit.fit_fi(s)
        a, b, sigma = oracles.fi_lstsq(s)
        assert (p.alpha, p.beta, p.sigma) == pytest.approx((a, b, sigma), abs=1e-9)

    def test_offset_moves_alpha_only(self):
        s = noisy("FI", plfit.FiParams(70.0, 2.4, 0.0), seed=4)
        shifted = [PlSample(x.frequency_hz, x.distance_m, x.path_loss_db + 5.0) for x in s]
        p, q = plfit.fit_fi(s), plfit.fit_fi(shifted)
        assert q.alpha - p.alpha == pytest.approx(5.0, abs=1e-9)
        assert q.beta == pytest.approx(p.beta, abs=1e-9)

    def test_single_distance(self):
        with pytest.raises(DegenerateFitError):
            plfit.fit_fi([PlSample(140e9, 3.0, 90.0), PlSample(73e9, 3.0, 85.0)])

    def test_no_worse_than_ci_at_one_frequency(self):
        # FI nests CI when the anchor is a constant, i.e. one frequency
        for seed in range(20):
            s = plfit.synth_samples("CI", plfit.CiParams(3.0, 0.0), [140e9], DISTS, 6.0, seed)
            assert plfit.fit_fi(s).sigma <= plfit.fit_ci(s).sigma + 1e-12


class TestCIF:
    def test_exact_recovery(self):
        truth = plfit.CifParams(2.8, 0.07, 80e9, 0.0)
        s = noisy("CIF", truth, shadow=0.0)
        p = plfit.fit_cif(s, f0_override=80e9)
        assert (p.ple, p.b) == pytest.approx((2.8, 0.07), abs=1e-9)
        assert p.sigma < 1e-9

    def test_default_f0_is_mean_frequency(self):
        s = noisy("CI", plfit.CiParams(3.0, 0.0))
        assert plfit.fit_cif(s).f0_hz == pytest.approx(np.mean(FREQS))

    def test_against_oracle(self):
        s = noisy("CIF", plfit.CifParams(3.2, -0.05, 90e9, 0.0), seed=8)
        p = plfit.fit_cif(s)
        n, b, sigma = oracles.cif_lstsq(s, p.f0_hz)
        assert (p.ple, p.b, p.sigma) == pytest.approx((n, b, sigma), abs=1e-9)

    @pytest.mark.parametrize("f0", [None, 100e9])
    def test_single_frequency_is_degenerate(self, f0):
        s = plfit.synth_samples("CI", plfit.CiParams(3.0, 0.0), [140e9], DISTS, 2.0)
        with pytest.raises(DegenerateFitError):
            plfit.fit_cif(s, f0)


class TestABG:
    def test_exact_recovery(self):
        truth = plfit.AbgParams(3.3, 19.2, 2.1, 0.0)
        p = plfit.fit_abg(noisy("ABG", truth, shadow=0.0))
        assert (p.alpha, p.beta, p.gamma) == pytest.approx((3.3, 19.2, 2.1), abs=1e-9)

    def test_against_oracle(self):
        s = noisy("ABG", plfit.AbgParams(3.0, 25.0, 2.0, 0.0), seed=2)
        p = plfit.fit_abg(s)
        assert (p.alpha, p.beta, p.gamma, p.sigma) == pytest.approx(oracles.abg_lstsq(s), abs=1e-9)

    def test_single_frequency_names_dimension(self):
        s = plfit.synth_samples("CI", plfit.CiParams(3.0, 0.0), [140e9], DISTS, 2.0)
        with pytest.raises(DegenerateFitError, match="frequency"):
            plfit.fit_abg(s)

    def test_single_distance_names_dimension(self):
        s = plfit.synth_samples("CI", plfit.CiParams(3.0, 0.0), FREQS, [10.0], 2.0)
        with pytest.raises(DegenerateFitError, match="distance"):
            plfit.fit_abg(s)

    def test_collinear_design(self):
        # each frequency at its own distance with d proportional to f
        s = [PlSample(f, f / 1e10, 90.0 + i) for i, f in enumerate(FREQS)]
        with pytest.raises(DegenerateFitError):
            plfit.fit_abg(s)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_all_models_match_lstsq(seed):
    s = oracles.random_instance(np.random.default_rng(seed))
    ci = plfit.fit_ci(s)
    assert ci.ple == pytest.approx(oracles.ci_lstsq(s)[0], abs=1e-6)
    fi = plfit.fit_fi(s)
    assert (fi.alpha, fi.beta) == pytest.approx(oracles.fi_lstsq(s)[:2], abs=1e-6)
    cif = plfit.fit_cif(s)
    assert (cif.ple, cif.b) == pytest.approx(oracles.cif_lstsq(s, cif.f0_hz)[:2], abs=1e-6)
    abg = plfit.fit_abg(s)
    assert (abg.alpha, abg.beta, abg.gamma) == pytest.approx(oracles.abg_lstsq(s)[:3], abs=1e-6)


@settings(max_examples=40, deadline=None)
@given(st.floats(1.5, 5.0), st.floats(-0.2, 0.2), st.floats(20e9, 300e9))
def test_cif_recovers_any_parameters(n, b, f0):
    s = noisy("CIF", plfit.CifParams(n, b, f0, 0.0), shadow=0.0)
    p = plfit.fit_cif(s, f0_override=f0)
    assert p.ple == pytest.approx(n, abs=1e-9)
    assert p.b == pytest.approx(b, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_sigma_is_rms_residual(seed):
    s = oracles.random_instance(np.random.default_rng(seed))
    p = plfit.fit_abg(s)
    resid = [x.path_loss_db - plfit.eval_abg(p, x.frequency_hz, x.distance_m) for x in s]
    assert p.sigma == pytest.approx(math.sqrt(np.mean(np.square(resid))), abs=1e-9)


class TestCompare:
    def test_sorted_by_sigma(self):
        s = noisy("ABG", plfit.AbgParams(3.0, 25.0, 2.0, 0.0), seed=5)
        cmp = plfit.compare_models(s)
        sigmas = [r.sigma for r in cmp.rows]
        assert sigmas == sorted(sigmas)
        assert {r.model for r in cmp.rows} == set(plfit.MODELS)

    def test_single_frequency_skips_cif_and_abg(self):
        s = plfit.synth_samples("CI", plfit.CiParams(3.0, 0.0), [140e9], DISTS, 2.0)
        cmp = plfit.compare_models(s)
        assert [r.model for r in cmp.rows] in (["FI", "CI"], ["CI", "FI"])
        assert set(cmp.skipped) == {"CIF", "ABG"}

    def test_nothing_fittable(self):
        with pytest.raises(DegenerateFitError):
            plfit.compare_models([PlSample(140e9, 1.0, 75.0)])

    def test_unknown_model(self):
        with pytest.raises(DomainError):
            plfit.compare_models(noisy("CI", plfit.CiParams(3.0, 0.0)), ["XYZ"])

    def test_bootstrap_reproducible(self):
        s = noisy("CI", plfit.CiParams(3.0, 0.0), seed=1)
        a = plfit.compare_models(s, ["CI", "FI"], bootstrap=50, seed=3)
        b = plfit.compare_models(s, ["CI", "FI"], bootstrap=50, seed=3)
        assert [r.ple_std for r in a.rows] == [r.ple_std for r in b.rows]
        assert all(r.ple_std > 0 for r in a.rows)
        assert "ple_std" in a.rows[0].as_dict()
