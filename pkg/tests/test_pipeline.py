import json
from pathlib import Path
from typing import Any, Dict
from unittest.mock import MagicMock

import pytest

from anomalous_actions.drivers.abstract_driver import AbstractDriver
from anomalous_actions.errors import ResourceLimitError, ScenarioError
from anomalous_actions.local_data_store import LocalDataStore
from anomalous_actions.models.options_model import VerificationOptions
from anomalous_actions.models.scenario_model import ScenarioModel
from anomalous_actions.pipeline import (
    EXIT_FAIL,
    EXIT_PASS,
    EXIT_USAGE,
    build_cup_scenario,
    fiber_cochain,
    run_scenario,
    verification_table_size,
    verify_scenario,
)
from anomalous_actions.scalars import UnitScalar
from anomalous_actions.scenario import load_scenario

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def flagship_data(**changes: Any) -> Dict[str, Any]:
    data = json.loads((SCENARIOS / "flagship.json").read_text())
    data.update(changes)
    return data


@pytest.fixture
def store(tmp_path: Path) -> LocalDataStore:
    return LocalDataStore(tmp_path / "reports")


class TestBuildCupScenario:

    def test_fiber_cochain(self) -> None:
        assert fiber_cochain(4, 2, 2).tolist() == [0, 0, 1, 1]
        assert fiber_cochain(6, 2, 3).tolist() == [0, 0, 2, 2, 1, 1]

    def test_guardrail_comes_from_options(self) -> None:
        scenario = load_scenario(SCENARIOS / "flagship.json")
        with pytest.raises(ResourceLimitError):
            build_cup_scenario(scenario, VerificationOptions(guardrail=63))
        assert build_cup_scenario(scenario, VerificationOptions(guardrail=64)).G.order == 4

    def test_perturbation_is_applied(self) -> None:
        scenario = ScenarioModel.model_validate(flagship_data(omega_perturbation={"1,1,1": "1/2"}))
        plain = build_cup_scenario(load_scenario(SCENARIOS / "flagship.json"))
        perturbed = build_cup_scenario(scenario)
        assert (perturbed.omega - plain.omega).entries() == {(1, 1, 1): UnitScalar.of(1, 2)}

    def test_table_size_counts_objects(self) -> None:
        assert verification_table_size(2, 2, 1) == 64
        # Vec(Z2) crossed with K = Z2 has 4 objects, so its pentagon needs 4^4 entries
        assert verification_table_size(2, 2, 2) == 256
        scenario = load_scenario(SCENARIOS / "flagship_vec_z2.json")
        with pytest.raises(ResourceLimitError, match="256"):
            build_cup_scenario(scenario, VerificationOptions(guardrail=255))
        assert build_cup_scenario(scenario, VerificationOptions(guardrail=256)).objects.order == 4

    @pytest.mark.parametrize("slot,message", [("9,9,9", "outside G"), ("1,1", "three elements"), ("1,1,1,1", "got 4")])
    def test_malformed_perturbation_slot(self, slot: str, message: str) -> None:
        scenario = ScenarioModel.model_validate(flagship_data(omega_perturbation={slot: "1/2"}))
        with pytest.raises(ScenarioError, match=message):
            build_cup_scenario(scenario)
        outcome = verify_scenario(scenario)
        assert outcome.exit_code == EXIT_USAGE
        assert outcome.report is None


class TestRunScenario:

    def test_flagship_passes_and_writes_reports(self, store: LocalDataStore) -> None:
        outcome = run_scenario(SCENARIOS / "flagship.json", store=store)
        assert outcome.exit_code == EXIT_PASS
        assert "Overall: PASS" in outcome.message
        assert outcome.report is not None and outcome.report.finished_at is not None
        for suffix in ("report.json", "report.txt", "summary.csv", "witnesses.csv"):
            assert (store.store_dir / f"flagship_{suffix}").exists()
        saved = json.loads((store.store_dir / "flagship_report.json").read_text())
        assert saved["overall"] == "pass"
        assert saved["_id"] == outcome.report.run_id

    def test_perturbed_omega_fails_with_witnesses(self) -> None:
        scenario = ScenarioModel.model_validate(flagship_data(omega_perturbation={"1,1,1": "1/2"}))
        outcome = verify_scenario(scenario)
        assert outcome.exit_code == EXIT_FAIL
        assert outcome.report is not None
        assert not outcome.report.family("omega_trivializes_pi").passed
        assert "Witnesses:" in outcome.message

    def test_malformed_file(self, tmp_path: Path) -> None:
        path = tmp_path / "broken.json"
        path.write_text("{ not json")
        outcome = run_scenario(path)
        assert outcome.exit_code == EXIT_USAGE
        assert "line 1" in outcome.message
        assert outcome.report is None

    @pytest.mark.parametrize("name", ["flagship_vec_z2", "z2xz2_cup"])
    def test_shipped_scenarios_pass(self, name: str) -> None:
        assert run_scenario(SCENARIOS / f"{name}.json").exit_code == EXIT_PASS

    def test_vanishing_anomaly_passes(self) -> None:
        scenario = ScenarioModel.model_validate(flagship_data(c_prime={"kind": "zero", "degree": 2}))
        outcome = verify_scenario(scenario)
        assert outcome.exit_code == EXIT_PASS

    def test_template_hits_guardrail(self) -> None:
        outcome = run_scenario(SCENARIOS / "s4_template.json")
        assert outcome.exit_code == EXIT_USAGE
        assert "guardrail" in outcome.message

    def test_options_override_file(self) -> None:
        outcome = run_scenario(SCENARIOS / "flagship.json", options=VerificationOptions(guardrail=10))
        assert outcome.exit_code == EXIT_USAGE

    def test_non_cocycle_is_rejected(self) -> None:
        c = {"kind": "entries", "degree": 2, "modulus": 4, "entries": {"1,1": "1/4"}}
        scenario = ScenarioModel.model_validate(flagship_data(quotient="cyclic:4", modulus=4, c=c))
        outcome = verify_scenario(scenario)
        assert outcome.exit_code == EXIT_USAGE
        assert "2-cocycle" in outcome.message

    def test_values_outside_fiber(self) -> None:
        scenario = ScenarioModel.model_validate(flagship_data(quotient="cyclic:4"))
        outcome = verify_scenario(scenario)
        assert outcome.exit_code == EXIT_USAGE
        assert "outside" in outcome.message

    def test_driver_receives_report_and_table(self) -> None:
        driver = MagicMock(spec=AbstractDriver)
        outcome = run_scenario(SCENARIOS / "flagship.json", driver=driver)
        assert outcome.report is not None
        driver.save_report.assert_called_once_with(outcome.report)
        run_id, frame = driver.save_dataframe.call_args.args
        assert run_id == outcome.report.run_id
        assert list(frame["family"]) == [f.family for f in outcome.report.families]
