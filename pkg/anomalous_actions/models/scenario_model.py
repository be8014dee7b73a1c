from __future__ import annotations

import json
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Discriminator, Field, Tag, field_validator

from anomalous_actions.errors import InvalidArgumentError
from anomalous_actions.models.options_model import VerificationOptions
from anomalous_actions.scalars import UnitScalar

SCHEMA_VERSION = "1"


class SpecModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


def parse_slot(key: str) -> Tuple[int, ...]:
    """"1,0,2" -> (1, 0, 2); the empty string is the slot of a 0-cochain."""
    if not key.strip():
        return ()
    try:
        return tuple(int(part) for part in key.split(","))
    except ValueError as e:
        raise ValueError(f"Slot '{key}' is not a comma separated list of element indices.") from e


def canonical_entries(entries: Dict[str, Any]) -> Dict[str, str]:
    """Keys as "i,j,k", values as reduced fractions in [0, 1)."""
    canonical: Dict[str, str] = {}
    for key, value in entries.items():
        slot = parse_slot(str(key))
        try:
            canonical[",".join(str(g) for g in slot)] = str(UnitScalar.parse(str(value)))
        except InvalidArgumentError as e:
            raise ValueError(str(e)) from e
    return canonical


# "i,j,k" -> "p/q"; omitted slots are 0
Entries = Dict[str, str]


# groups


class CyclicGroupSpec(SpecModel):
    kind: Literal["cyclic"] = "cyclic"
    n: int = Field(ge=1)


class SymmetricGroupSpec(SpecModel):
    kind: Literal["symmetric"] = "symmetric"
    n: int = Field(ge=1, le=5)


class ProductGroupSpec(SpecModel):
    kind: Literal["product"] = "product"
    factors: List[GroupLike] = Field(min_length=1)


class TableGroupSpec(SpecModel):
    kind: Literal["table"] = "table"
    name: str = "table"
    mult: List[List[int]]
    labels: List[str] = Field(default_factory=list)


class CentralExtensionGroupSpec(SpecModel):
    """Z_modulus x_sigma quotient, with sigma a normalized 2-cocycle on the quotient."""

    kind: Literal["central_extension"] = "central_extension"
    quotient: GroupLike
    modulus: int = Field(ge=1)
    sigma: CochainSpec


GroupSpec = Annotated[
    Union[CyclicGroupSpec, SymmetricGroupSpec, ProductGroupSpec, TableGroupSpec, CentralExtensionGroupSpec],
    Field(discriminator="kind"),
]
# a shorthand string such as "cyclic:4" or "cyclic:2xcyclic:2", or a structured spec
GroupLike = Union[str, GroupSpec]


# homomorphisms


class ProjectionHomSpec(SpecModel):
    """Projection of a direct product onto one factor."""

    kind: Literal["projection"] = "projection"
    factor: int = Field(ge=0)


class TableHomSpec(SpecModel):
    kind: Literal["table"] = "table"
    target: GroupLike
    map: List[int]


HomSpec = Annotated[Union[ProjectionHomSpec, TableHomSpec], Field(discriminator="kind")]


# cochains


class EntriesCochainSpec(SpecModel):
    """Explicit non-zero values; ``group`` defaults to the group the cochain is resolved on."""

    kind: Literal["entries"] = "entries"
    group: Optional[GroupLike] = None
    degree: int = Field(ge=0)
    modulus: int = Field(default=1, ge=1)
    entries: Entries = Field(default_factory=dict)

    @field_validator("entries", mode="before")
    def validate_entries(cls, entries: Any) -> Dict[str, str]:
        if not isinstance(entries, dict):
            raise ValueError("entries must map 'i,j,k' slots to fractions.")
        return canonical_entries(entries)


class ZeroCochainSpec(SpecModel):
    kind: Literal["zero"] = "zero"
    degree: int = Field(ge=0)


class CarryCochainSpec(SpecModel):
    """The carry 2-cocycle of Z_n; ``n`` must match the group when given."""

    kind: Literal["carry"] = "carry"
    n: Optional[int] = Field(default=None, ge=1)


class CharacterCochainSpec(SpecModel):
    kind: Literal["character"] = "character"
    n: Optional[int] = Field(default=None, ge=1)


class CupCochainSpec(SpecModel):
    kind: Literal["cup"] = "cup"
    left: CochainSpec
    right: CochainSpec


class PullbackCochainSpec(SpecModel):
    """hom^*(of), where ``of`` lives on the target of ``hom``."""

    kind: Literal["pullback"] = "pullback"
    hom: HomSpec
    of: CochainSpec


def cochain_kind(value: Any) -> str:
    if isinstance(value, dict):
        return value.get("kind", "entries")
    return getattr(value, "kind", "entries")


CochainSpec = Annotated[
    Union[
        Annotated[EntriesCochainSpec, Tag("entries")],
        Annotated[ZeroCochainSpec, Tag("zero")],
        Annotated[CarryCochainSpec, Tag("carry")],
        Annotated[CharacterCochainSpec, Tag("character")],
        Annotated[CupCochainSpec, Tag("cup")],
        Annotated[PullbackCochainSpec, Tag("pullback")],
    ],
    Discriminator(cochain_kind),
]


# categories


class ActionSpec(SpecModel):
    """A G-action; element indices refer to G and to the object group.

    ``object_act`` rows default to the identity permutation; psi slots are "g,a,b", chi slots "g,h,a".
    """

    object_act: Optional[List[List[int]]] = None
    modulus: int = Field(default=1, ge=1)
    psi: Entries = Field(default_factory=dict)
    chi: Entries = Field(default_factory=dict)

    @field_validator("psi", "chi", mode="before")
    def validate_tables(cls, entries: Any) -> Dict[str, str]:
        if not isinstance(entries, dict):
            raise ValueError("psi and chi must map slots to fractions.")
        return canonical_entries(entries)


class CategorySpec(SpecModel):
    objects: GroupLike
    assoc: Optional[CochainSpec] = None
    action: Optional[ActionSpec] = None


class CategoryFile(SpecModel):
    """Top level of a standalone category file; with ``twisting_group`` it describes a crossed product."""

    category: CategorySpec
    twisting_group: Optional[GroupLike] = None
    twist: Optional[CochainSpec] = None


# scenarios


class ScenarioModel(SpecModel):
    schema_version: Literal["1"] = Field(default=SCHEMA_VERSION, alias="schema")
    name: str
    description: Optional[str] = None
    quotient: GroupLike
    modulus: int = Field(ge=1)
    c: CochainSpec
    c_prime: CochainSpec
    category: Union[Literal["trivial"], CategorySpec] = "trivial"
    omega_perturbation: Optional[Entries] = None
    options: VerificationOptions = Field(default_factory=VerificationOptions)

    @field_validator("name")
    def validate_name(cls, name: str) -> str:
        if not name.strip():
            raise ValueError("Scenario name cannot be empty.")
        return name

    @field_validator("omega_perturbation", mode="before")
    def validate_perturbation(cls, entries: Any) -> Optional[Dict[str, str]]:
        if entries is None:
            return None
        if not isinstance(entries, dict):
            raise ValueError("omega_perturbation must map 'x,y,z' slots of G to fractions.")
        return canonical_entries(entries)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)

    def canonical_json(self) -> str:
        """Canonical file form; loading and saving it again reproduces it byte for byte."""
        return json.dumps(self.to_dict(), indent=4) + "\n"


CentralExtensionGroupSpec.model_rebuild()
ProductGroupSpec.model_rebuild()
TableHomSpec.model_rebuild()
CupCochainSpec.model_rebuild()
PullbackCochainSpec.model_rebuild()
