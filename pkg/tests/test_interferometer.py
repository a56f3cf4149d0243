import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whichway import interferometer as mzi
from whichway.qlinalg import PHOTON, SIGMA_X, ValidationError, hermitian_eigenvalues, partial_trace


@st.composite
def blochs(draw):
    theta = draw(st.floats(0, math.pi))
    az = draw(st.floats(0, 2 * math.pi))
    r = draw(st.floats(0, 1))
    return mzi.BlochVector(r * math.sin(theta) * math.cos(az), r * math.sin(theta) * math.sin(az), r * math.cos(theta))


@st.composite
def detectors(draw):
    return mzi.DetectorModel(cmath.rect(draw(st.floats(0, 1)), draw(st.floats(-math.pi, math.pi))))


phases = st.floats(0, 2 * math.pi, exclude_max=True)


def test_beam_splitter_on_basis_states():
    s = 1 / math.sqrt(2)
    assert np.allclose(mzi.beam_splitter_map([1, 0]), [s, s])
    assert np.allclose(mzi.beam_splitter_map([0, 1]), [s, -s])


def test_beam_splitter_involution():
    s = 1 / math.sqrt(2)
    assert np.allclose(mzi.beam_splitter_map([s, s]), [1, 0])


def test_photon_initial_state_examples():
    assert np.allclose(mzi.photon_initial_state(mzi.BlochVector(0, 0, 1)), [[1, 0], [0, 0]])
    assert np.allclose(mzi.photon_initial_state(mzi.BlochVector(0, 0, 0)), np.eye(2) / 2)


def test_photon_initial_state_pure_on_sphere():
    th = math.pi / 3
    rho = mzi.photon_initial_state(mzi.BlochVector(0, -math.sin(th), math.cos(th)))
    assert np.allclose(rho @ rho, rho)
    assert np.allclose(hermitian_eigenvalues(rho), [0, 1], atol=1e-12)


def test_bloch_norm_validated():
    with pytest.raises(ValidationError):
        mzi.BlochVector(1, 1, 0)
    with pytest.raises(ValidationError):
        mzi.DetectorModel(1.1)


def test_decoupled_detector_gives_pure_product():
    cfg = mzi.Configuration(mzi.BlochVector(0, 0, 1), mzi.DetectorModel(1.0), 0.0)
    rho = mzi.evolve_joint(cfg)
    assert np.allclose(rho @ rho, rho)
    rho_q = partial_trace(rho, PHOTON)
    assert np.allclose(rho_q @ rho_q, rho_q)
    b, d = cfg.bloch, cfg.detector
    assert mzi.scanned_visibility(b, d) == pytest.approx(1.0, abs=1e-9)


def test_orthogonal_pointers_erase_coherence():
    cfg = mzi.Configuration(mzi.BlochVector(0, 0, 1), mzi.DetectorModel(0.0), 0.0)
    assert np.allclose(partial_trace(mzi.evolve_joint(cfg), PHOTON), np.eye(2) / 2)


def test_full_predictability_has_no_coherence_terms():
    det = mzi.DetectorModel(0.3 + 0.4j)
    for phi in (0.0, 1.0, 4.0):
        cfg = mzi.Configuration(mzi.BlochVector(1, 0, 0), det, phi)
        expected = 0.25 * 2 * np.kron(np.eye(2) - SIGMA_X, det.rho_flagged)
        assert np.allclose(mzi.evolve_joint(cfg), expected, atol=1e-15)


@settings(max_examples=300)
@given(blochs(), detectors(), phases)
def test_joint_state_is_a_state(b, d, phi):
    rho = mzi.evolve_joint(mzi.Configuration(b, d, phi))
    assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
    assert abs(np.trace(rho) - 1) <= 1e-12
    assert hermitian_eigenvalues(rho)[0] >= -1e-9


@settings(max_examples=300)
@given(blochs(), detectors(), phases)
def test_reduced_state_routes_agree(b, d, phi):
    cfg = mzi.Configuration(b, d, phi)
    direct = mzi.reduced_photon_state(cfg)
    traced = mzi.reduced_photon_state(cfg, route="partial_trace")
    assert np.max(np.abs(direct - traced)) <= 1e-10


def test_reduced_state_c06_amplitude():
    cfg = mzi.Configuration(mzi.BlochVector(0, 0, 1), mzi.DetectorModel(0.6), 0.0)
    rho_q = mzi.reduced_photon_state(cfg)
    assert np.allclose(rho_q, mzi.reduced_photon_state(cfg, route="partial_trace"))
    # P^a = 1/2 - (1/2) 0.6 cos(0)
    assert rho_q[0, 0].real == pytest.approx(0.5 - 0.5 * 0.6)


def test_no_fringe_without_overlap():
    det = mzi.DetectorModel(0.0)
    for phi in np.linspace(0, 2 * math.pi, 7):
        cfg = mzi.Configuration(mzi.BlochVector(0, 0.6, 0.8), det, phi)
        assert mzi.reduced_photon_state(cfg)[0, 0].real == pytest.approx(0.5)
        assert mzi.output_probability(cfg) == pytest.approx(0.5)


def test_output_probability_examples():
    cfg = mzi.Configuration(mzi.BlochVector(0, 0, 1), mzi.DetectorModel(0.6), 0.0)
    assert mzi.output_probability(cfg) == pytest.approx(0.2)
    cfg = mzi.Configuration(mzi.BlochVector(0, 0, 1), mzi.DetectorModel(1.0), math.pi)
    assert mzi.output_probability(cfg) == pytest.approx(1.0)


@settings(max_examples=200)
@given(blochs(), detectors(), phases)
def test_output_probability_matches_traced_state(b, d, phi):
    cfg = mzi.Configuration(b, d, phi)
    traced = mzi.reduced_photon_state(cfg, route="partial_trace")[0, 0].real
    assert mzi.output_probability(cfg) == pytest.approx(traced, abs=1e-12)
    assert 0 <= mzi.output_probability(cfg) <= 1


def test_visibility_examples():
    assert mzi.fringe_visibility(mzi.BlochVector(0, 0, 1), mzi.DetectorModel(0.6)) == pytest.approx(0.6)
    assert mzi.fringe_visibility(mzi.BlochVector(0, 0.6, 0.8), mzi.DetectorModel(0)) == 0
    assert mzi.fringe_visibility(mzi.BlochVector(1, 0, 0), mzi.DetectorModel(0.7j)) == 0


@settings(max_examples=25, deadline=None)
@given(blochs(), detectors())
def test_visibility_formula_matches_scan(b, d):
    assert abs(mzi.fringe_visibility(b, d) - mzi.scanned_visibility(b, d)) <= 1e-6


def test_detector_final_state_examples():
    b0 = mzi.BlochVector(0, 0, 1)
    assert np.allclose(mzi.detector_final_state(b0, mzi.DetectorModel(0)), np.eye(2) / 2)
    det = mzi.DetectorModel(0.3 - 0.2j)
    assert np.allclose(mzi.detector_final_state(mzi.BlochVector(1, 0, 0), det), det.rho_flagged)
    lam = hermitian_eigenvalues(mzi.detector_final_state(b0, mzi.DetectorModel(0.6)))
    assert np.allclose(lam, [0.2, 0.8])


def test_mixed_detector_final_state_and_distinguishability():
    det = mzi.DetectorModel(0.0)
    rho_in = np.diag([0.7, 0.3]).astype(complex)
    b = mzi.BlochVector(0, 0, 1)
    out = mzi.detector_final_state(b, det, rho_in)
    assert np.trace(out) == pytest.approx(1)
    # |d> -> |d_perp> swaps the populations of a diagonal state
    assert np.allclose(out, np.eye(2) / 2)
    assert mzi.distinguishability(b, det, rho_in) == pytest.approx(0.4)


@pytest.mark.parametrize("c, expected", [(0.6, 0.8), (1.0, 0.0), (0.0, 1.0)])
def test_distinguishability_examples(c, expected):
    assert mzi.distinguishability(mzi.BlochVector(0, 0, 1), mzi.DetectorModel(c)) == pytest.approx(
        expected, abs=1e-12
    )


@settings(max_examples=200)
@given(detectors())
def test_distinguishability_pure_detector(d):
    got = mzi.distinguishability(mzi.BlochVector(0, 0, 0), d)
    assert abs(got - math.sqrt(1 - abs(d.overlap) ** 2)) <= 1e-10


@given(st.floats(0, 1), st.floats(-math.pi, math.pi))
def test_duality_saturated(r, arg):
    rep = mzi.duality_check(mzi.BlochVector(0, 0, 1), mzi.DetectorModel(cmath.rect(r, arg)))
    assert abs(rep.lhs - 1) <= 1e-9
    assert rep.holds


def test_duality_orthogonal_pointers():
    b = mzi.BlochVector(0.3, 0.4, 0.1)
    rep = mzi.duality_check(b, mzi.DetectorModel(0))
    assert rep.lhs == pytest.approx(mzi.distinguishability(b, mzi.DetectorModel(0)) ** 2)
    assert rep.lhs <= 1


def test_duality_undefined_without_a_priori_visibility():
    rep = mzi.duality_check(mzi.BlochVector(0.5, 0, 0), mzi.DetectorModel(0.5))
    assert rep.lhs is None and rep.holds is None
    assert rep.preparation_lhs == pytest.approx(0.25)
    assert rep.preparation_holds


@settings(max_examples=500)
@given(blochs(), detectors())
def test_duality_bound_holds(b, d):
    rep = mzi.duality_check(b, d)
    assert rep.preparation_holds
    if rep.lhs is not None:
        assert rep.lhs <= 1 + 1e-9
