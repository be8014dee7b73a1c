"""Turning scenario, group, cochain and category descriptions into library objects."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import TypeAdapter, ValidationError

from anomalous_actions.cochains import Cochain, cup, pullback
from anomalous_actions.errors import InvalidArgumentError, ScenarioError
from anomalous_actions.extensions import central_extension
from anomalous_actions.groups import (
    FiniteGroup,
    GroupHom,
    direct_product,
    make_cyclic,
    make_symmetric,
    make_table_group,
    projection,
)
from anomalous_actions.models.scenario_model import (
    ActionSpec,
    CarryCochainSpec,
    CategoryFile,
    CategorySpec,
    CentralExtensionGroupSpec,
    CharacterCochainSpec,
    CochainSpec,
    CupCochainSpec,
    CyclicGroupSpec,
    Entries,
    EntriesCochainSpec,
    GroupLike,
    GroupSpec,
    ProductGroupSpec,
    ProjectionHomSpec,
    PullbackCochainSpec,
    ScenarioModel,
    SymmetricGroupSpec,
    TableGroupSpec,
    ZeroCochainSpec,
    parse_slot,
)
from anomalous_actions.pointed import PointedCategory, PointedGAction, trivial_action, trivial_category, vec
from anomalous_actions.scalars import UnitScalar

logger = logging.getLogger(__name__)

_group_adapter: TypeAdapter[Any] = TypeAdapter(GroupSpec)
_cochain_adapter: TypeAdapter[Any] = TypeAdapter(CochainSpec)


def _describe(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(x) for x in item["loc"]) or "<root>"
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)


def read_json(path: Union[str, Path]) -> Any:
    """Load a JSON file; syntax errors carry the line and column."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ScenarioError(f"Cannot read {path}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        logger.error("Malformed JSON in %s at line %d column %d", path, e.lineno, e.colno)
        raise ScenarioError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from e


# scenarios


def parse_scenario(data: Any, source: str = "<scenario>") -> ScenarioModel:
    try:
        return ScenarioModel.model_validate(data)
    except ValidationError as e:
        logger.error("Invalid scenario %s: %s", source, _describe(e))
        raise ScenarioError(f"{source}: {_describe(e)}") from e


def load_scenario(path: Union[str, Path]) -> ScenarioModel:
    return parse_scenario(read_json(path), str(path))


def save_scenario(scenario: ScenarioModel, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(scenario.canonical_json())
    logger.info("Scenario '%s' written to %s", scenario.name, path)
    return path


# groups


def parse_group_shorthand(text: str) -> GroupSpec:
    """``cyclic:4``, ``symmetric:3`` or a product such as ``cyclic:2xcyclic:2``."""
    factors: List[Union[CyclicGroupSpec, SymmetricGroupSpec]] = []
    for part in text.strip().split("x"):
        kind, _, order = part.strip().partition(":")
        if not order.isdigit():
            raise ScenarioError(f"Cannot parse group '{text}': expected kind:order, got '{part}'.")
        if kind == "cyclic":
            factors.append(CyclicGroupSpec(n=int(order)))
        elif kind == "symmetric":
            factors.append(SymmetricGroupSpec(n=int(order)))
        else:
            raise ScenarioError(f"Unknown group kind '{kind}' in '{text}'.")
    if len(factors) == 1:
        return factors[0]
    return ProductGroupSpec(factors=list(factors))


def _group_spec(spec: Union[GroupLike, Dict[str, Any]]) -> GroupSpec:
    if isinstance(spec, dict):
        return _validate_group(spec)
    if not isinstance(spec, str):
        return spec
    text = spec.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ScenarioError(f"Invalid group JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    elif text.endswith(".json"):
        data = read_json(text)
    else:
        return parse_group_shorthand(text)
    return _validate_group(data)


def _validate_group(data: Any) -> GroupSpec:
    try:
        return _group_adapter.validate_python(data)
    except ValidationError as e:
        raise ScenarioError(f"Invalid group: {_describe(e)}") from e


def resolve_group(spec: Union[GroupLike, Dict[str, Any]]) -> FiniteGroup:
    """Build a group from a shorthand string, a JSON literal or file, or a structured spec."""
    group_spec = _group_spec(spec)
    if isinstance(group_spec, CyclicGroupSpec):
        return make_cyclic(group_spec.n)
    if isinstance(group_spec, SymmetricGroupSpec):
        return make_symmetric(group_spec.n)
    if isinstance(group_spec, ProductGroupSpec):
        return direct_product(*(resolve_group(factor) for factor in group_spec.factors))
    if isinstance(group_spec, TableGroupSpec):
        return make_table_group(group_spec.mult, group_spec.labels, name=group_spec.name)
    if isinstance(group_spec, CentralExtensionGroupSpec):
        quotient = resolve_group(group_spec.quotient)
        sigma = resolve_cochain(group_spec.sigma, quotient)
        return central_extension(quotient, group_spec.modulus, sigma).G
    raise ScenarioError(f"Unsupported group spec {group_spec!r}.")


def resolve_hom(spec: Union[ProjectionHomSpec, Any], source: FiniteGroup) -> GroupHom:
    if isinstance(spec, ProjectionHomSpec):
        return projection(source, spec.factor)
    return GroupHom(source=source, target=resolve_group(spec.target), map=np.asarray(spec.map, dtype=np.int64))


# cochains


def _entries(entries: Entries) -> Dict[Tuple[int, ...], str]:
    return {parse_slot(key): value for key, value in entries.items()}


def resolve_cochain(spec: Any, group: FiniteGroup) -> Cochain:
    """Build a cochain on ``group``; pullbacks resolve their inner cochain on the target of the hom."""
    if isinstance(spec, EntriesCochainSpec):
        if spec.group is not None and not resolve_group(spec.group).is_same(group):
            raise ScenarioError(f"Cochain is declared on another group than {group.name}.")
        return Cochain.from_entries(group, spec.degree, spec.modulus, _entries(spec.entries))
    if isinstance(spec, ZeroCochainSpec):
        return Cochain.zero(group, spec.degree)
    if isinstance(spec, (CarryCochainSpec, CharacterCochainSpec)):
        if spec.n is not None and spec.n != group.order:
            raise ScenarioError(f"A {spec.kind} cochain of Z{spec.n} cannot live on {group.name}.")
        return Cochain.carry(group) if isinstance(spec, CarryCochainSpec) else Cochain.character(group)
    if isinstance(spec, CupCochainSpec):
        return cup(resolve_cochain(spec.left, group), resolve_cochain(spec.right, group))
    if isinstance(spec, PullbackCochainSpec):
        hom = resolve_hom(spec.hom, group)
        return pullback(hom, resolve_cochain(spec.of, hom.target))
    raise ScenarioError(f"Unsupported cochain spec {spec!r}.")


def parse_cochain_spec(data: Any) -> Any:
    try:
        return _cochain_adapter.validate_python(data)
    except ValidationError as e:
        raise ScenarioError(f"Invalid cochain: {_describe(e)}") from e


def load_cochain(path: Union[str, Path], group: FiniteGroup) -> Cochain:
    """Read a cochain file (a bare cochain spec) and resolve it on ``group``."""
    return resolve_cochain(parse_cochain_spec(read_json(path)), group)


# categories


def _residue_table(entries: Entries, shape: Tuple[int, ...], modulus: int, what: str) -> np.ndarray:
    table = np.zeros(shape, dtype=np.int64)
    for slot, value in _entries(entries).items():
        if len(slot) != len(shape) or any(not 0 <= x < n for x, n in zip(slot, shape)):
            raise ScenarioError(f"{what} entry {slot} is out of range for shape {shape}.")
        try:
            table[slot] = UnitScalar.parse(value).residue(modulus)
        except InvalidArgumentError as e:
            raise ScenarioError(f"{what} entry {slot}: {e}") from e
    return table


def resolve_action(spec: Optional[ActionSpec], acting: FiniteGroup, category: PointedCategory) -> PointedGAction:
    if spec is None:
        return trivial_action(acting, category)
    G, A = acting, category.objects
    if spec.object_act is None:
        object_act = np.tile(np.arange(A.order), (G.order, 1))
    else:
        object_act = np.asarray(spec.object_act, dtype=np.int64)
    return PointedGAction(
        acting=G,
        objects=A,
        object_act=object_act,
        psi=_residue_table(spec.psi, (G.order, A.order, A.order), spec.modulus, "psi"),
        chi=_residue_table(spec.chi, (G.order, G.order, A.order), spec.modulus, "chi"),
        modulus=spec.modulus,
    )


def resolve_category(
    spec: Union[str, CategorySpec], acting: FiniteGroup
) -> Tuple[PointedCategory, PointedGAction]:
    """The pointed category and its action by ``acting``; "trivial" is Vec of the trivial group."""
    if isinstance(spec, str):
        if spec != "trivial":
            raise ScenarioError(f"Unknown category '{spec}'.")
        category = trivial_category()
        return category, trivial_action(acting, category)
    objects = resolve_group(spec.objects)
    category = vec(objects, resolve_cochain(spec.assoc, objects) if spec.assoc is not None else None)
    return category, resolve_action(spec.action, acting, category)


def load_category_file(path: Union[str, Path]) -> CategoryFile:
    try:
        return CategoryFile.model_validate(read_json(path))
    except ValidationError as e:
        raise ScenarioError(f"{path}: {_describe(e)}") from e
