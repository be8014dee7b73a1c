"""Command line entry point: ``anomalous-actions <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Union

from pymongo import errors as mongo_errors

from anomalous_actions.cochains import Cochain
from anomalous_actions.cohomology import coboundary_solve, cohomology
from anomalous_actions.drivers.abstract_driver import DBConfig
from anomalous_actions.drivers.mongodb import MongoDBDriver
from anomalous_actions.errors import InvalidArgumentError, PreconditionViolation, ResourceLimitError, ScenarioError
from anomalous_actions.local_data_store import LocalDataStore
from anomalous_actions.models.options_model import VerificationOptions
from anomalous_actions.models.report_model import FamilyReport
from anomalous_actions.models.scenario_model import CategorySpec
from anomalous_actions.pipeline import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, ScenarioOutcome, verify_scenario
from anomalous_actions.pointed import check_crossed_pentagon, check_pentagon, crossed_product, vec
from anomalous_actions.scenario import (
    load_category_file,
    load_cochain,
    load_scenario,
    parse_scenario,
    read_json,
    resolve_action,
    resolve_cochain,
    resolve_group,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    common.add_argument("--workers", type=int, default=None, help="worker threads per verifier family")
    common.add_argument("--witness-cap", type=int, default=None, help="failing tuples kept per family")
    common.add_argument("--guardrail", type=int, default=None, help="maximum number of unknowns or table entries")
    return common


def _report_parser() -> argparse.ArgumentParser:
    reports = argparse.ArgumentParser(add_help=False)
    reports.add_argument("--output-dir", type=Path, default=Path("reports"), help="directory for report files")
    reports.add_argument("--archive-db", default=None, help="MongoDB database that archives the report")
    reports.add_argument("--db-host", default="localhost")
    reports.add_argument("--db-port", type=int, default=27017)
    reports.add_argument("--db-user", default="root")
    reports.add_argument("--db-password", default="password")
    return reports


def build_parser() -> argparse.ArgumentParser:
    common, reports = _common_parser(), _report_parser()
    parser = argparse.ArgumentParser(
        prog="anomalous-actions", description="Build and verify anomalous actions on twisted crossed products."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", parents=[common], help="invariant factors of H^k(G, Z/N)")
    p.add_argument("--group", required=True, help="e.g. cyclic:4, symmetric:3, cyclic:2xcyclic:2 or JSON")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("trivialize", parents=[common], help="solve d(beta) = phi")
    p.add_argument("--group", required=True)
    p.add_argument("--cochain", type=Path, required=True, help="cochain file")
    p.add_argument("--modulus", type=int, required=True)

    p = sub.add_parser("pipeline", help="scenario recipes")
    recipes = p.add_subparsers(dest="recipe", required=True)
    cup_parser = recipes.add_parser("cup", parents=[common, reports], help="cup-product anomaly c cup c'")
    cup_parser.add_argument("--Q", dest="quotient", required=True)
    cup_parser.add_argument("--modulus", type=int, required=True)
    cup_parser.add_argument("--c", dest="c", type=Path, required=True)
    cup_parser.add_argument("--cprime", dest="cprime", type=Path, required=True)
    cup_parser.add_argument("--category", type=Path, default=None)
    cup_parser.add_argument("--name", default="cup")

    p = sub.add_parser("verify", parents=[common, reports], help="run a scenario file")
    p.add_argument("scenario", type=Path)

    p = sub.add_parser("pentagon", parents=[common], help="pentagon of a pointed category or crossed product")
    p.add_argument("--category", type=Path, required=True)
    return parser


def _options(args: argparse.Namespace, base: Optional[VerificationOptions] = None) -> VerificationOptions:
    return (base or VerificationOptions()).overridden(
        workers=args.workers, witness_cap=args.witness_cap, guardrail=args.guardrail
    )


def _driver(args: argparse.Namespace) -> Optional[MongoDBDriver]:
    if not args.archive_db:
        return None
    config = DBConfig(
        database=args.archive_db,
        host=args.db_host,
        port=args.db_port,
        username=args.db_user,
        password=args.db_password,
    )
    return MongoDBDriver(config)


def _print_family(report: FamilyReport) -> None:
    status = "pass" if report.passed else "fail"
    print(f"{report.family}: {status} ({report.checked} checked, {report.failed} failed)")
    for witness in report.witnesses:
        print(f"  args={witness.args} lhs={witness.lhs} rhs={witness.rhs}")


def cmd_cohomology(args: argparse.Namespace) -> int:
    group = resolve_group(args.group)
    print(cohomology(group, args.modulus, args.degree, _options(args).guardrail))
    return EXIT_PASS


def cmd_trivialize(args: argparse.Namespace) -> int:
    group = resolve_group(args.group)
    phi = load_cochain(args.cochain, group)
    beta = coboundary_solve(phi, args.modulus, _options(args).guardrail)
    if beta is None:
        print("not a coboundary")
        return EXIT_FAIL
    print(f"beta: degree {beta.degree} on {group.name}")
    for slot, value in beta.entries().items():
        print(f"  {','.join(group.label(g) for g in slot)} -> {value}")
    return EXIT_PASS


def _finish(outcome: ScenarioOutcome) -> int:
    stream = sys.stdout if outcome.report is not None else sys.stderr
    print(outcome.message, file=stream, end="" if outcome.message.endswith("\n") else "\n")
    return outcome.exit_code


def _pipeline_category(path: Optional[Path]) -> Union[str, CategorySpec]:
    if path is None:
        return "trivial"
    spec = load_category_file(path)
    if spec.twisting_group is not None:
        logger.warning("Ignoring twisting_group in %s; the extension group acts on the category.", path)
    return spec.category


def cmd_pipeline_cup(args: argparse.Namespace) -> int:
    data = {
        "schema": "1",
        "name": args.name,
        "quotient": args.quotient,
        "modulus": args.modulus,
        "c": read_json(args.c),
        "c_prime": read_json(args.cprime),
        "category": _pipeline_category(args.category),
    }
    scenario = parse_scenario(data, source="pipeline cup")
    options = _options(args, scenario.options)
    outcome = verify_scenario(scenario, options, LocalDataStore(args.output_dir), _driver(args))
    return _finish(outcome)


def cmd_verify(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    options = _options(args, scenario.options)
    outcome = verify_scenario(scenario, options, LocalDataStore(args.output_dir), _driver(args))
    return _finish(outcome)


def cmd_pentagon(args: argparse.Namespace) -> int:
    spec = load_category_file(args.category)
    options = _options(args)
    objects = resolve_group(spec.category.objects)
    assoc = resolve_cochain(spec.category.assoc, objects) if spec.category.assoc is not None else None
    category = vec(objects, assoc)
    if spec.twisting_group is None:
        report = check_pentagon(category, options)
    else:
        K = resolve_group(spec.twisting_group)
        action = resolve_action(spec.category.action, K, category)
        twist = resolve_cochain(spec.twist, K) if spec.twist is not None else Cochain.zero(K, 3)
        report = check_crossed_pentagon(crossed_product(category, K, action, twist, validate=False), options)
    _print_family(report)
    return EXIT_PASS if report.passed else EXIT_FAIL


COMMANDS = {
    "cohomology": cmd_cohomology,
    "trivialize": cmd_trivialize,
    "pipeline": cmd_pipeline_cup,
    "verify": cmd_verify,
    "pentagon": cmd_pentagon,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT)
    try:
        return COMMANDS[args.command](args)
    except (ScenarioError, InvalidArgumentError, PreconditionViolation, ResourceLimitError) as e:
        logger.error("%s failed: %s", args.command, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except mongo_errors.PyMongoError as e:
        logger.error("Report archive unavailable: %s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
