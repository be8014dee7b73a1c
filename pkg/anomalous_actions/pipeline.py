"""Cup-product anomalies: build the setup, verify it, write the reports.

For 2-cocycles c, c' on Q with values in (1/n)Z/Z the anomaly is pi = c cup c'. It dies on the central
extension G = Z_n x_c Q: with c0(a, q) = -a/n one has d(c0) = rho^*(c), so omega = c0 cup rho^*(c') has
d(omega) = rho^*(pi).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from anomalous_actions.anomaly import AnomalySetup, full_report
from anomalous_actions.cochains import Cochain, cup, differential, is_cocycle, pullback
from anomalous_actions.drivers.abstract_driver import AbstractDriver
from anomalous_actions.errors import (
    ConstructionInvariantError,
    InvalidArgumentError,
    PreconditionViolation,
    ResourceLimitError,
    ScenarioError,
)
from anomalous_actions.extensions import central_extension
from anomalous_actions.local_data_store import LocalDataStore
from anomalous_actions.models.options_model import VerificationOptions
from anomalous_actions.models.report_model import FullReport
from anomalous_actions.models.scenario_model import ScenarioModel, parse_slot
from anomalous_actions.scenario import load_scenario, resolve_category, resolve_cochain, resolve_group
from anomalous_actions.scalars import UnitScalar

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def fiber_cochain(ext_order: int, quotient_order: int, n: int) -> np.ndarray:
    """Residues of c0(a, q) = -a/n for elements indexed a |Q| + q."""
    return (-(np.arange(ext_order) // quotient_order)) % n


def verification_table_size(quotient_order: int, n: int, objects_order: int) -> int:
    """Entries of the largest table built for a scenario.

    Covers omega and the action checks on G, the crossed-product pentagon on A x K, and the
    coherence families over Q and the crossed-product objects.
    """
    g, q, a = n * quotient_order, quotient_order, objects_order
    o = a * n
    return max(g**3 * a, g * a**3, o**4, q * o**3, q**2 * o**2, q**3 * o, q**4)


def _perturbation_slot(key: str, group_order: int) -> Tuple[int, ...]:
    args = parse_slot(key)
    if len(args) != 3:
        raise ScenarioError(f"omega_perturbation slot '{key}' must name three elements of G, got {len(args)}.")
    if any(not 0 <= x < group_order for x in args):
        raise ScenarioError(f"omega_perturbation slot '{key}' is outside G, whose elements are 0..{group_order - 1}.")
    return args


def build_cup_scenario(scenario: ScenarioModel, options: Optional[VerificationOptions] = None) -> AnomalySetup:
    """Build the setup of a cup-product scenario and check the two identities it rests on.

    Raises:
        PreconditionViolation: c or c' is not a 2-cocycle.
        ResourceLimitError: a verification table exceeds the guardrail.
        ScenarioError: an omega_perturbation slot is not a triple of elements of G.
        ConstructionInvariantError: d(c0) = rho^*(c) or d(omega) = rho^*(pi) fails.
    """
    options = options or scenario.options
    Q = resolve_group(scenario.quotient)
    n = scenario.modulus
    c = resolve_cochain(scenario.c, Q)
    c_prime = resolve_cochain(scenario.c_prime, Q)
    for label, cochain in (("c", c), ("c'", c_prime)):
        if cochain.degree != 2:
            raise InvalidArgumentError(f"{label} must be a 2-cochain, got degree {cochain.degree}.")
        if n % cochain.modulus:
            raise InvalidArgumentError(f"{label} has values outside (1/{n})Z/Z.")
        if not is_cocycle(cochain):
            logger.error("%s is not a 2-cocycle on %s", label, Q.name)
            raise PreconditionViolation(f"{label} is not a 2-cocycle on {Q.name}.")

    objects_order = 1 if isinstance(scenario.category, str) else resolve_group(scenario.category.objects).order
    table_size = verification_table_size(Q.order, n, objects_order)
    if table_size > options.guardrail:
        logger.error(
            "Extension of order %d with %d objects needs %d table entries", n * Q.order, objects_order, table_size
        )
        raise ResourceLimitError(f"Verification tables need {table_size} entries (guardrail {options.guardrail}).")

    pi = cup(c, c_prime)
    ext = central_extension(Q, n, c)
    G, rho = ext.G, ext.rho
    c0 = Cochain(G, 1, n, fiber_cochain(G.order, Q.order, n))
    if differential(c0) != pullback(rho, c):
        logger.error("d(c0) differs from rho^*(c) on %s", G.name)
        raise ConstructionInvariantError("d(c0) = rho^*(c) failed.")
    omega = cup(c0, pullback(rho, c_prime))
    if differential(omega) != pullback(rho, pi):
        logger.error("d(omega) differs from rho^*(pi) on %s", G.name)
        raise ConstructionInvariantError("d(omega) = rho^*(pi) failed.")

    for key, value in (scenario.omega_perturbation or {}).items():
        args = _perturbation_slot(key, G.order)
        omega = omega.with_entry(args, omega.value(*args) + UnitScalar.parse(value))
    if scenario.omega_perturbation:
        logger.info("Applied %d omega perturbations", len(scenario.omega_perturbation))

    category, action = resolve_category(scenario.category, G)
    setup = AnomalySetup.assemble(Q=Q, pi=pi, ext=ext, omega=omega, category=category, action=action)
    logger.info("Built scenario '%s': Q=%s, G=%s, modulus %d", scenario.name, Q.name, G.name, setup.modulus)
    return setup


@dataclass
class ScenarioOutcome:
    exit_code: int
    message: str
    report: Optional[FullReport] = None


def render_text(report: FullReport) -> str:
    """Family table followed by the witnesses of failing families."""
    lines = [
        f"Scenario: {report.name}",
        f"Overall: {report.overall.upper()}",
        f"Coefficients: (1/{report.coefficient_modulus})Z/Z",
        "",
        report.summary_frame().to_string(index=False),
    ]
    witnesses = report.witness_frame()
    if not witnesses.empty:
        lines += ["", "Witnesses:", witnesses.to_string(index=False)]
    return "\n".join(lines) + "\n"


def run_scenario(
    path: Union[str, Path],
    options: Optional[VerificationOptions] = None,
    store: Optional[LocalDataStore] = None,
    driver: Optional[AbstractDriver] = None,
) -> ScenarioOutcome:
    """Load, build and verify a scenario file; exit code 0 on pass, 1 on fail, 2 on usage or resource errors.

    ``options`` replaces the options embedded in the file.
    """
    try:
        scenario = load_scenario(path)
    except ScenarioError as e:
        return ScenarioOutcome(exit_code=EXIT_USAGE, message=str(e))
    return verify_scenario(scenario, options, store, driver)


def verify_scenario(
    scenario: ScenarioModel,
    options: Optional[VerificationOptions] = None,
    store: Optional[LocalDataStore] = None,
    driver: Optional[AbstractDriver] = None,
) -> ScenarioOutcome:
    effective = options or scenario.options
    try:
        setup = build_cup_scenario(scenario, effective)
    except (ScenarioError, InvalidArgumentError, PreconditionViolation, ResourceLimitError) as e:
        logger.error("Scenario %s rejected: %s", scenario.name, e)
        return ScenarioOutcome(exit_code=EXIT_USAGE, message=str(e))

    report = full_report(setup, effective, scenario.name)
    text = render_text(report)
    if store is not None:
        store.save_report(report, text)
    if driver is not None:
        driver.save_report(report)
        driver.save_dataframe(report.run_id, report.summary_frame())
    exit_code = EXIT_PASS if report.passed else EXIT_FAIL
    return ScenarioOutcome(exit_code=exit_code, message=text, report=report)
