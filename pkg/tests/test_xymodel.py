"""Tests for the model layer: dispersion, labels, Pauli terms, closed forms."""

import numpy as np
import pytest

from xychain import xymodel
from xychain.xymodel import ModelParams, PauliString


def test_model_params_validation():
    with pytest.raises(ValueError):
        ModelParams(6, 1.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        ModelParams(2, 1.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        ModelParams(4, float("nan"), 1.0, 0.5)
    params = ModelParams(8, -1.0, 0.25, 2.0)
    assert (params.n, params.j, params.gamma, params.lam) == (8, -1.0, 0.25, 2.0)


def test_mode_table_pairs_conjugate_momenta():
    assert xymodel.mode_table(4) == (0, 2, 1, -1)
    assert xymodel.mode_table(8) == (0, 4, 1, -1, 2, -2, 3, -3)


def test_dispersion_unpaired_modes_have_zero_angle():
    params = ModelParams(4, 1.0, 1.0, 0.5)
    top = xymodel.dispersion(params, 0)
    assert top.eps == pytest.approx(1.5)
    assert top.delta == 0.0
    assert top.theta == 0.0
    assert top.e == pytest.approx(1.5)
    bottom = xymodel.dispersion(params, 2)
    assert bottom.eps == pytest.approx(-0.5)
    assert bottom.delta == 0.0  # sin(pi) snaps exactly to zero
    assert bottom.theta == 0.0
    assert bottom.e == pytest.approx(-0.5)


def test_dispersion_signed_quasienergy_and_angle():
    params = ModelParams(4, 1.0, 1.0, 0.5)
    plus = xymodel.dispersion(params, 1)
    assert plus.eps == pytest.approx(0.5)
    assert plus.delta == pytest.approx(1.0)
    assert plus.big_e == pytest.approx(np.sqrt(1.25))
    assert plus.e == pytest.approx(np.sqrt(1.25))
    assert plus.theta == pytest.approx(np.arctan(2.0))
    minus = xymodel.dispersion(params, -1)
    assert minus.delta == pytest.approx(-1.0)
    assert minus.theta == pytest.approx(-np.arctan(2.0))
    assert minus.e == pytest.approx(np.sqrt(1.25))


def test_dispersion_zero_splitting_edge_cases():
    # eps == 0 with a nonzero pairing amplitude: angle saturates at pi/2
    params = ModelParams(4, 1.0, 1.0, 0.0)
    mode = xymodel.dispersion(params, 1)
    assert mode.eps == 0.0
    assert mode.theta == pytest.approx(np.pi / 2)
    assert mode.e == pytest.approx(1.0)
    # eps == 0 and delta == 0: the mode is exactly at the crossing
    critical = xymodel.dispersion(ModelParams(4, 1.0, 1.0, 1.0), 2)
    assert critical.e == 0.0
    assert critical.theta == 0.0


def test_dispersion_rejects_out_of_range_momenta():
    params = ModelParams(4, 1.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        xymodel.dispersion(params, 3)
    with pytest.raises(ValueError):
        xymodel.dispersion(params, -2)


def test_eigen_energy_known_values():
    params = ModelParams(4, 1.0, 1.0, 0.5)
    assert xymodel.eigen_energy("0100", params) == pytest.approx(-2 - np.sqrt(5))
    # flipping the occupied mode costs its splitting 2|e| = 1
    assert xymodel.eigen_energy("0000", params) == pytest.approx(-1 - np.sqrt(5))
    with pytest.raises(ValueError):
        xymodel.eigen_energy("010", params)
    with pytest.raises(ValueError):
        xymodel.eigen_energy("012 ", params)


def test_eigen_energy_matches_dense_ground_energy():
    for lam in (0.0, 0.7, 1.3):
        for gamma in (0.0, 0.6, 1.0):
            params = ModelParams(4, 1.0, gamma, lam)
            dense_min = np.linalg.eigvalsh(xymodel.dense_hamiltonian(params)).min()
            bits = xymodel.ground_bitstring(params)
            assert xymodel.eigen_energy(bits, params) == pytest.approx(
                dense_min, abs=1e-10
            )


def test_free_fermion_energy_equals_eigen_energy_when_pairing_vanishes():
    params = ModelParams(8, 1.0, 0.0, 0.8)
    rng = np.random.default_rng(5)
    for _ in range(10):
        bits = "".join(rng.choice(["0", "1"], size=8))
        assert xymodel.free_fermion_energy(bits, params) == pytest.approx(
            xymodel.eigen_energy(bits, params), abs=1e-12
        )


def test_ground_bitstring_occupies_negative_modes():
    assert xymodel.ground_bitstring(ModelParams(4, 1.0, 1.0, 0.5)) == "0100"
    assert xymodel.ground_bitstring(ModelParams(4, 1.0, 1.0, 2.0)) == "0000"
    assert not xymodel.ground_degenerate(ModelParams(4, 1.0, 1.0, 0.5))


def test_ground_bitstring_at_the_crossing_prefers_the_smallest_label():
    params = ModelParams(4, 1.0, 1.0, 1.0)
    assert xymodel.ground_degenerate(params)
    assert xymodel.ground_bitstring(params) == "0000"
    # both labels carry the same energy at the crossing
    assert xymodel.eigen_energy("0000", params) == pytest.approx(
        xymodel.eigen_energy("0100", params), abs=1e-12
    )


def test_first_excited_flips_the_cheapest_mode():
    params = ModelParams(4, 1.0, 1.0, 0.5)
    assert xymodel.first_excited_bitstring(params) == "0000"
    gap = xymodel.eigen_energy("0000", params) - xymodel.eigen_energy("0100", params)
    assert gap == pytest.approx(1.0)


def test_pauli_string_support_and_validation():
    term = PauliString(0.5, "XZZX")
    assert term.support == (0, 1, 2, 3)
    assert PauliString(1.0, "IZII").support == (1,)
    with pytest.raises(ValueError):
        PauliString(1.0, "XQ")
    with pytest.raises(ValueError):
        PauliString(float("inf"), "XX")


def test_pauli_matrix_orders_qubit_zero_first():
    np.testing.assert_array_equal(
        xymodel.pauli_matrix("ZI"), np.diag([1, 1, -1, -1])
    )
    np.testing.assert_array_equal(
        xymodel.pauli_matrix("IZ"), np.diag([1, -1, 1, -1])
    )
    np.testing.assert_array_equal(
        xymodel.pauli_matrix("XX"),
        np.fliplr(np.eye(4)),
    )


def test_pauli_matrix_enforces_the_dense_size_cap():
    with pytest.raises(ValueError):
        xymodel.pauli_matrix("Z" * 13)


def test_hamiltonian_terms_at_the_fully_anisotropic_point():
    params = ModelParams(4, 1.0, 1.0, 0.5)
    terms = {t.letters: t.coefficient for t in xymodel.hamiltonian_pauli_terms(params)}
    assert terms == pytest.approx(
        {
            "XXII": 1.0,
            "IXXI": 1.0,
            "IIXX": 1.0,
            "ZIII": 0.5,
            "IZII": 0.5,
            "IIZI": 0.5,
            "IIIZ": 0.5,
            "YZZY": 1.0,
        }
    )


def test_hamiltonian_terms_include_both_couplings_and_both_strings():
    params = ModelParams(4, 1.0, 0.5, 0.5)
    terms = {t.letters: t.coefficient for t in xymodel.hamiltonian_pauli_terms(params)}
    assert terms["XXII"] == pytest.approx(0.75)
    assert terms["YYII"] == pytest.approx(0.25)
    # the boundary strings carry swapped coupling strengths
    assert terms["YZZY"] == pytest.approx(0.75)
    assert terms["XZZX"] == pytest.approx(0.25)
    assert len(terms) == 12


def test_dense_hamiltonian_is_hermitian_and_traceless():
    params = ModelParams(4, -1.0, 0.3, 1.1)
    dense = xymodel.dense_hamiltonian(params)
    np.testing.assert_allclose(dense, dense.conj().T, atol=1e-14)
    assert abs(np.trace(dense)) < 1e-12


def test_gs_mz_closed_form_branches_at_the_crossing():
    assert xymodel.gs_mz_closed_form(0.0) == pytest.approx(0.0)
    assert xymodel.gs_mz_closed_form(0.5) == pytest.approx(-0.5 / (2 * np.sqrt(1.25)))
    # the crossing point itself sits on the strong-field branch
    assert xymodel.gs_mz_closed_form(1.0) == pytest.approx(-0.5 - 1 / (2 * np.sqrt(2)))
    jump = xymodel.gs_mz_closed_form(1.0) - xymodel.gs_mz_closed_form(1.0 - 1e-12)
    assert jump == pytest.approx(-0.5, abs=1e-9)


def test_mz_time_closed_form_oscillates_between_known_extremes():
    lam = 0.5
    omega = 4 * np.sqrt(1 + lam**2)
    assert xymodel.mz_time_closed_form(lam, 0.0) == pytest.approx(1.0)
    trough = xymodel.mz_time_closed_form(lam, np.pi / omega)
    assert trough == pytest.approx(lam**2 / (1 + lam**2))
    assert xymodel.mz_time_closed_form(lam, 2 * np.pi / omega) == pytest.approx(1.0)
