"""Numeric oracle: mutual information, conditional entropy, discord."""

import numpy as np
import pytest

from discordant.discord import (
    DiscordResult,
    MeasurementBasis,
    OptimizerConfig,
    classical_correlation,
    conditional_entropy,
    discord,
    mutual_information,
)
from discordant.errors import InvalidMeasurement
from discordant.linalg import random_unitary
from discordant.states import (
    circulant_state,
    max_entangled_projector,
    werner_state,
)

from test_blocks import classical_x_spec

CFG2 = OptimizerConfig(seed=0)
CFG3 = OptimizerConfig(starts=8, seed=0)


def computational_basis(d):
    return MeasurementBasis(d, np.eye(d, dtype=complex))


def test_mutual_information_oracles():
    assert mutual_information(np.eye(4, dtype=complex) / 4, 2) == pytest.approx(
        0.0, abs=1e-12
    )
    assert mutual_information(max_entangled_projector(2), 2) == pytest.approx(
        2.0, abs=1e-12
    )
    assert mutual_information(max_entangled_projector(3), 3) == pytest.approx(
        2 * np.log2(3), abs=1e-12
    )
    # classically correlated bit pair carries 1 bit
    rho = np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
    assert mutual_information(rho, 2) == pytest.approx(1.0, abs=1e-12)


def test_conditional_entropy_oracles():
    basis = computational_basis(2)
    assert conditional_entropy(
        np.eye(4, dtype=complex) / 4, 2, basis, "A"
    ) == pytest.approx(1.0, abs=1e-12)
    # measuring A of P+ in any basis collapses B to a pure state
    assert conditional_entropy(
        max_entangled_projector(2), 2, basis, "A"
    ) == pytest.approx(0.0, abs=1e-12)
    # correlated bits measured in the ± basis stay fully mixed
    plus_minus = MeasurementBasis(
        2, np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    )
    rho = np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
    assert conditional_entropy(rho, 2, plus_minus, "A") == pytest.approx(
        1.0, abs=1e-12
    )
    assert conditional_entropy(rho, 2, basis, "A") == pytest.approx(0.0, abs=1e-12)


def test_conditional_entropy_rejects_bad_basis():
    skew = MeasurementBasis(2, np.array([[1, 1], [0, 1]], dtype=complex))
    with pytest.raises(InvalidMeasurement):
        conditional_entropy(np.eye(4, dtype=complex) / 4, 2, skew, "A")


def test_classical_correlation_product_state():
    rho = np.kron(np.diag([0.7, 0.3]), np.diag([0.6, 0.4])).astype(complex)
    value, basis = classical_correlation(rho, 2, "A", CFG2)
    assert value == pytest.approx(0.0, abs=1e-9)
    basis.validate()


def test_classical_correlation_bell_pair():
    value, _ = classical_correlation(max_entangled_projector(2), 2, "A", CFG2)
    assert value == pytest.approx(1.0, abs=1e-9)


def test_classical_x_state_has_zero_discord():
    rho = circulant_state(classical_x_spec(), validate=True)
    res = discord(rho, 2, "A", CFG2)
    assert res.discord == 0.0
    assert res.classical_correlation == pytest.approx(
        res.mutual_information, abs=1e-9
    )


def test_pure_state_discord_is_entanglement_entropy():
    for d, cfg in ((2, CFG2), (3, CFG3)):
        res = discord(max_entangled_projector(d), d, "A", cfg)
        assert res.mutual_information == pytest.approx(2 * np.log2(d), abs=1e-9)
        assert res.discord == pytest.approx(np.log2(d), abs=1e-5)


def test_werner_half_is_discordant():
    rho = circulant_state(werner_state(2, -0.5), validate=True)
    res = discord(rho, 2, "A", CFG2)
    assert res.discord > 1e-3
    assert res.classical_correlation <= res.mutual_information + 1e-9


def test_discord_deterministic():
    rho = circulant_state(werner_state(3, 0.2), validate=True)
    r1 = discord(rho, 3, "A", CFG3)
    r2 = discord(rho, 3, "A", CFG3)
    assert r1.discord == r2.discord
    assert r1.classical_correlation == r2.classical_correlation
    np.testing.assert_array_equal(
        r1.best_measurement.vectors, r2.best_measurement.vectors
    )


def test_discord_local_unitary_invariance():
    rng = np.random.default_rng(9)
    rho = circulant_state(werner_state(2, 0.25), validate=True)
    U = np.kron(random_unitary(2, rng), random_unitary(2, rng))
    rotated = U @ rho @ U.conj().T
    d1 = discord(rho, 2, "A", CFG2).discord
    d2 = discord(rotated, 2, "A", CFG2).discord
    assert abs(d1 - d2) <= 2e-6


def test_discord_nonnegative_and_bounded():
    rng = np.random.default_rng(10)
    for _ in range(5):
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = m @ m.conj().T
        rho /= np.trace(rho).real
        res = discord(rho, 2, "B", CFG2)
        assert res.discord >= 0.0
        assert res.classical_correlation <= res.mutual_information + 1e-9


def test_discord_result_json():
    res = discord(max_entangled_projector(2), 2, "A", CFG2)
    obj = res.to_json()
    assert set(obj) == {"I", "C", "D", "side", "basis", "starts_converged"}
    assert obj["side"] == "A"
    assert len(obj["basis"]) == 2
    assert len(obj["basis"][0]) == 2 and len(obj["basis"][0][0]) == 2
    assert isinstance(res, DiscordResult)


def test_optimizer_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(starts=0)
    with pytest.raises(ValueError):
        OptimizerConfig(f_tol=0.0)
    with pytest.raises(ValueError):
        OptimizerConfig(grid_shape=(1, 10))


def test_general_path_matches_grid_at_d2():
    rho = circulant_state(werner_state(2, 0.3), validate=True)
    via_grid = discord(rho, 2, "A", OptimizerConfig(seed=1)).discord
    via_general = discord(
        rho, 2, "A", OptimizerConfig(seed=1, grid_2d=False, starts=12)
    ).discord
    assert abs(via_grid - via_general) <= 2e-6
