from pathlib import Path
from typing import Tuple
from unittest.mock import PropertyMock, patch

import numpy as np
import pytest

from anomalous_actions.anomaly import (
    COHERENCE_FAMILIES,
    SETUP_FAMILIES,
    AnomalySetup,
    chi_tilde,
    full_report,
    induced_functor,
    modification_data,
    omega_mod,
    pseudonatural_data,
    psi_tilde,
    validate_setup,
    verify_modification,
    verify_modification_one_cell,
    verify_monoidal,
    verify_pentagonator,
    verify_pseudonatural,
)
from anomalous_actions.cochains import Cochain, differential, pullback
from anomalous_actions.errors import InvalidArgumentError
from anomalous_actions.models.options_model import VerificationOptions
from anomalous_actions.pipeline import build_cup_scenario
from anomalous_actions.pointed import PointedGAction
from anomalous_actions.scalars import ZERO, UnitScalar
from anomalous_actions.scenario import load_scenario

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"
HALF = UnitScalar.of(1, 2)


def load_setup(name: str) -> AnomalySetup:
    return build_cup_scenario(load_scenario(SCENARIOS / f"{name}.json"))


def random_coherent_action(setup: AnomalySetup, modulus: int, seed: int) -> PointedGAction:
    """psi^g = d(eta_g) and chi_{g,h} = eta_g + eta_h - eta_gh for random normalized eta."""
    rng = np.random.default_rng(seed)
    G, A = setup.G, setup.category.objects
    eta = rng.integers(0, modulus, size=(G.order, A.order))
    eta[G.identity] = 0
    eta[:, A.identity] = 0
    psi = eta[:, None, :] - eta[:, A.mult] + eta[:, :, None]
    g = np.arange(G.order)[:, None]
    h = np.arange(G.order)[None, :]
    chi = eta[g] + eta[h] - eta[G.mult[g, h]]
    return setup.action.with_tables(psi=psi, chi=chi, modulus=modulus)


@pytest.fixture(scope="module")
def flagship() -> AnomalySetup:
    return load_setup("flagship")


@pytest.fixture(scope="module")
def flagship_vec() -> AnomalySetup:
    return load_setup("flagship_vec_z2")


class TestAnomalySetup:

    def test_flagship_structure(self, flagship: AnomalySetup) -> None:
        assert flagship.G.order == 4
        assert flagship.K.order == 2
        assert flagship.objects.order == 2
        assert flagship.modulus == 2
        assert flagship.crossed is not None
        assert flagship.pi.value(1, 1, 1, 1) == HALF

    def test_object_index_accepts_pairs(self, flagship_vec: AnomalySetup) -> None:
        assert flagship_vec.object_index((1, 1)) == 3
        assert flagship_vec.object_index(2) == 2

    def test_rejects_mismatched_inputs(self, flagship: AnomalySetup) -> None:
        with pytest.raises(InvalidArgumentError, match="pi"):
            flagship.with_changes(pi=flagship.omega)

    def test_with_changes_rebuilds_derived_data(self, flagship: AnomalySetup) -> None:
        changed = flagship.with_changes(omega=flagship.omega.with_entry((2, 2, 2), "1/2"))
        assert changed.omega_K.value(1, 1, 1) == HALF
        assert flagship.omega_K.value(1, 1, 1) == ZERO


class TestFlagship:

    def test_all_families_pass(self, flagship: AnomalySetup) -> None:
        report = full_report(flagship, name="flagship")
        assert [f.family for f in report.families] == [*SETUP_FAMILIES, *COHERENCE_FAMILIES]
        assert report.passed
        assert report.coefficient_modulus == 2

    def test_psi_tilde_vanishes(self, flagship: AnomalySetup) -> None:
        assert not flagship.psi_tilde_table.any()
        assert psi_tilde(flagship, 1, 1, 1) == ZERO
        assert not flagship.phi.any()

    def test_chi_tilde_values(self, flagship: AnomalySetup) -> None:
        assert chi_tilde(flagship, 1, 1, 1) == HALF
        assert chi_tilde(flagship, 1, 1, (0, 1)) == HALF
        nonzero = {tuple(int(x) for x in slot) for slot in np.argwhere(flagship.chi_tilde_table)}
        assert nonzero == {(1, 1, 1)}

    def test_omega_mod_on_lifts(self, flagship: AnomalySetup) -> None:
        assert omega_mod(flagship, 1, 1, 1) == ZERO
        assert modification_data(flagship, 1, 1, 1).scalar == ZERO

    def test_induced_and_pseudonatural_data(self, flagship: AnomalySetup) -> None:
        functor = induced_functor(flagship, 1)
        assert functor.is_bijective()
        assert functor.object_map.tolist() == [0, 1]
        data = pseudonatural_data(flagship, 1, 1)
        assert data.unit == 1
        assert data.value(1) == HALF
        assert pseudonatural_data(flagship, 0, 1).unit == 0

    def test_single_verifiers(self, flagship: AnomalySetup) -> None:
        assert verify_monoidal(flagship, q=1).checked == 8
        assert verify_pseudonatural(flagship, 1, 1).passed
        assert verify_modification(flagship).checked == 16
        assert verify_modification_one_cell(flagship).passed
        assert verify_pentagonator(flagship, 1, 1, 1, 1).passed

    def test_nontrivial_category(self, flagship_vec: AnomalySetup) -> None:
        report = full_report(flagship_vec)
        assert report.passed
        assert flagship_vec.objects.order == 4

    @pytest.mark.parametrize("seed", [3, 5])
    def test_random_coherent_action_passes(self, flagship_vec: AnomalySetup, seed: int) -> None:
        setup = flagship_vec.with_changes(action=random_coherent_action(flagship_vec, 4, seed))
        report = full_report(setup, VerificationOptions(workers=2))
        assert report.passed, report.summary_frame().to_string()


class TestMutations:

    def test_every_single_slot_omega_mutation_is_caught(self, flagship: AnomalySetup) -> None:
        G = flagship.G
        others = [g for g in G.elements() if g != G.identity]
        for slot in [(x, y, z) for x in others for y in others for z in others]:
            mutated = flagship.omega.with_entry(slot, flagship.omega.value(*slot) + HALF)
            reports = {r.family: r for r in validate_setup(flagship.with_changes(omega=mutated))}
            assert not reports["omega_trivializes_pi"].passed, slot

    def test_pi_mutation_is_caught(self, flagship: AnomalySetup) -> None:
        pi = flagship.pi.with_entry((1, 1, 1, 1), flagship.pi.value(1, 1, 1, 1) + HALF)
        report = full_report(flagship.with_changes(pi=pi))
        assert not report.family("omega_trivializes_pi").passed
        assert not report.family("pentagonator").passed
        assert report.family("pentagonator").witnesses[0].args == [1, 1, 1, 1]

    def test_gamma_mutation_is_caught(self, flagship: AnomalySetup) -> None:
        gamma = np.array(flagship.ext.gamma)
        gamma[1, 1] = 0
        report = full_report(flagship.with_changes(ext=flagship.ext.with_gamma(gamma)))
        assert not report.family("extension_gamma").passed
        assert not report.passed

    def test_psi_mutation_fails_compatibility(self, flagship_vec: AnomalySetup) -> None:
        psi = np.zeros((4, 2, 2), dtype=np.int64)
        psi[1, 1, 1] = 1
        setup = flagship_vec.with_changes(action=flagship_vec.action.with_tables(psi=psi, modulus=4))
        report = full_report(setup)
        assert not report.family("action_chi_psi_compatibility").passed
        assert report.family("action_tensor_structure").passed

    def test_chi_mutation_fails_cocycle_check(self, flagship_vec: AnomalySetup) -> None:
        chi = np.zeros((4, 4, 2), dtype=np.int64)
        chi[1, 1, 1] = 1
        setup = flagship_vec.with_changes(action=flagship_vec.action.with_tables(chi=chi, modulus=2))
        report = full_report(setup)
        assert not report.family("action_chi_cocycle").passed
        assert not report.passed


class TestPentagonatorProperties:

    @pytest.mark.parametrize("slot", [(1, 1, 1), (1, 2, 3), (3, 3, 2), (2, 1, 1)])
    def test_failures_match_obstruction_on_lifts(self, flagship: AnomalySetup, slot: Tuple[int, int, int]) -> None:
        omega = flagship.omega.with_entry(slot, flagship.omega.value(*slot) + HALF)
        setup = flagship.with_changes(omega=omega)
        obstruction = differential(omega) - pullback(setup.ext.rho, setup.pi)
        lift = setup.ext.section.lift
        on_lifts = obstruction.data[np.ix_(lift, lift, lift, lift)]
        report = verify_pentagonator(setup, options=VerificationOptions(witness_cap=100))
        assert report.failed == int(np.count_nonzero(on_lifts))
        for witness in report.witnesses:
            assert on_lifts[tuple(witness.args)] != 0

    @pytest.mark.parametrize("seed", range(20))
    def test_random_setups(self, flagship: AnomalySetup, seed: int) -> None:
        """Even seeds change omega by a coboundary, odd seeds by an arbitrary normalized 3-cochain."""
        rng = np.random.default_rng(seed)
        G = flagship.G
        degree = 2 if seed % 2 == 0 else 3
        data = rng.integers(0, 2, size=(G.order,) * degree)
        for axis in range(degree):
            index = [slice(None)] * degree
            index[axis] = G.identity
            data[tuple(index)] = 0
        change = Cochain(G, degree, 2, data)
        omega = flagship.omega + (differential(change) if degree == 2 else change)
        setup = flagship.with_changes(omega=omega)

        obstruction = differential(omega) - pullback(setup.ext.rho, setup.pi)
        lift = setup.ext.section.lift
        on_lifts = obstruction.data[np.ix_(lift, lift, lift, lift)]
        report = verify_pentagonator(setup, options=VerificationOptions(witness_cap=100))
        assert report.failed == int(np.count_nonzero(on_lifts))
        reports = {r.family: r for r in validate_setup(setup)}
        assert reports["omega_trivializes_pi"].passed == obstruction.is_zero()
        if degree == 2:
            assert report.passed

    def test_modification_ignores_omega_on_lift_triples(self, flagship: AnomalySetup) -> None:
        lift = flagship.ext.lift
        slot = (lift(1), lift(1), lift(1))
        omega = flagship.omega.with_entry(slot, flagship.omega.value(*slot) + HALF)
        changed = flagship.with_changes(omega=omega)

        before, after = verify_modification(flagship), verify_modification(changed)
        assert (before.checked, before.failed) == (after.checked, after.failed)
        assert np.array_equal(flagship.psi_tilde_table, changed.psi_tilde_table)
        assert np.array_equal(flagship.chi_tilde_table, changed.chi_tilde_table)
        assert modification_data(changed, 1, 1, 1).scalar == HALF
        assert modification_data(flagship, 1, 1, 1).scalar == ZERO


class TestCoherenceNegativeControls:
    """Each table is bumped by 1/2 in one slot; the expected failures follow from the diagrams on the flagship."""

    @staticmethod
    def bumped(table: np.ndarray, slot: Tuple[int, ...]) -> np.ndarray:
        table = np.array(table)
        table[slot] = (table[slot] + 1) % 2
        return table

    def test_monoidal_catches_psi_tilde(self, flagship: AnomalySetup) -> None:
        setup = flagship.with_changes()
        table = self.bumped(flagship.psi_tilde_table, (1, 0, 1))
        with patch.object(AnomalySetup, "psi_tilde_table", new_callable=PropertyMock, return_value=table):
            report = verify_monoidal(setup)
        assert (report.checked, report.failed) == (16, 4)
        assert report.witnesses[0].args == [1, 0, 0, 1]
        assert all(w.args[0] == 1 for w in report.witnesses)

    def test_pseudonatural_catches_chi_tilde(self, flagship: AnomalySetup) -> None:
        setup = flagship.with_changes()
        table = self.bumped(flagship.chi_tilde_table, (0, 1, 0))
        with patch.object(AnomalySetup, "chi_tilde_table", new_callable=PropertyMock, return_value=table):
            report = verify_pseudonatural(setup)
            assert verify_monoidal(setup).passed
        assert (report.checked, report.failed) == (16, 4)
        assert [w.args for w in report.witnesses] == [[0, 1, 0, 0], [0, 1, 0, 1], [0, 1, 1, 0], [0, 1, 1, 1]]

    def test_modification_catches_chi_tilde(self, flagship: AnomalySetup) -> None:
        setup = flagship.with_changes()
        table = self.bumped(flagship.chi_tilde_table, (0, 1, 0))
        with patch.object(AnomalySetup, "chi_tilde_table", new_callable=PropertyMock, return_value=table):
            report = verify_modification(setup)
            assert verify_modification_one_cell(setup).passed
        assert (report.checked, report.failed) == (16, 4)
        assert [w.args for w in report.witnesses] == [[0, 0, 1, 0], [0, 1, 1, 0], [1, 0, 1, 0], [1, 1, 1, 0]]
