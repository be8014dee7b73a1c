"""Exhaustive table comparison with witness collection and worker partitioning."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from anomalous_actions.models.options_model import VerificationOptions
from anomalous_actions.models.report_model import FamilyReport, Witness

logger = logging.getLogger(__name__)

Render = Callable[[int], str]
# receives the values of the leading arguments and returns both sides over the full argument grid
Evaluator = Callable[[Sequence[np.ndarray]], Tuple[np.ndarray, np.ndarray]]


def scalar_render(modulus: int) -> Render:
    """Residues r are shown as the fraction r/modulus."""
    return lambda r: str(Fraction(int(r) % modulus, modulus))


def compare_tables(
    family: str,
    lhs: np.ndarray,
    rhs: np.ndarray,
    witness_cap: int = 10,
    modulus: Optional[int] = None,
    render: Render = str,
    axis_values: Sequence[np.ndarray] = (),
) -> FamilyReport:
    """Compare two tables slot by slot.

    With ``modulus`` both tables are read as residues and compared mod ``modulus``. Witness arguments are
    table indices in lexicographic order; ``axis_values[i]`` translates the index along leading axis i.
    """
    lhs, rhs = np.broadcast_arrays(np.asarray(lhs), np.asarray(rhs))
    if modulus is not None:
        lhs, rhs = lhs % modulus, rhs % modulus
        render = scalar_render(modulus)
    failing = lhs != rhs
    witnesses: List[Witness] = []
    if failing.any() and witness_cap:
        for args in np.argwhere(failing)[:witness_cap]:
            index = tuple(int(x) for x in args)
            shown = [int(values[i]) for values, i in zip(axis_values, index)] + list(index[len(axis_values) :])
            witnesses.append(Witness(args=shown, lhs=render(lhs[index]), rhs=render(rhs[index])))
    return FamilyReport(family=family, checked=int(failing.size), failed=int(failing.sum()), witnesses=witnesses)


def merge_reports(family: str, reports: Sequence[FamilyReport], witness_cap: int) -> FamilyReport:
    merged = FamilyReport(family=family)
    for report in reports:
        merged = merged.merged(report, witness_cap)
    return merged


def run_family(
    family: str,
    evaluate: Evaluator,
    axis_values: Sequence[np.ndarray],
    options: VerificationOptions,
    modulus: Optional[int] = None,
    render: Render = str,
) -> FamilyReport:
    """Evaluate a family over its argument grid, splitting the first argument across workers.

    Chunks are merged in increasing order of the first argument, so witnesses stay lexicographic
    whatever the worker count.
    """
    leading = [np.asarray(values, dtype=np.int64) for values in axis_values]
    first, rest = leading[0], leading[1:]
    chunks = [c for c in np.array_split(first, min(options.workers, max(first.size, 1))) if c.size]

    def check(chunk: np.ndarray) -> FamilyReport:
        axes = [chunk, *rest]
        lhs, rhs = evaluate(axes)
        return compare_tables(family, lhs, rhs, options.witness_cap, modulus, render, axis_values=axes)

    if options.workers > 1 and len(chunks) > 1:
        logger.debug("Family %s: %d chunks over %d workers", family, len(chunks), options.workers)
        with ThreadPoolExecutor(max_workers=options.workers) as pool:
            reports = list(pool.map(check, chunks))
    else:
        reports = [check(chunk) for chunk in chunks]
    report = merge_reports(family, reports, options.witness_cap)
    logger.info("Family %s: checked %d, failed %d", family, report.checked, report.failed)
    return report
