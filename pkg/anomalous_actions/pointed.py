"""Skeletal pointed tensor categories, group actions on them and twisted crossed products.

All structure is scalar: an associator is a 3-cochain on the group of simple objects, and the monoidal
structure of an action is a pair of residue tables (psi, chi) over a common modulus.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from anomalous_actions.cochains import Cochain, is_cocycle
from anomalous_actions.errors import InvalidArgumentError, PreconditionViolation
from anomalous_actions.groups import FiniteGroup, GroupHom, make_cyclic
from anomalous_actions.models.options_model import VerificationOptions
from anomalous_actions.models.report_model import FamilyReport
from anomalous_actions.scalars import UnitScalar
from anomalous_actions.verification import run_family

logger = logging.getLogger(__name__)

ACTION_FAMILIES = ("action_law", "action_chi_cocycle", "action_tensor_structure", "action_chi_psi_compatibility")


@dataclass(frozen=True, eq=False)
class PointedCategory:
    """Vec(A, alpha): simple objects are the elements of A, alpha is the associator.

    alpha is not required to be closed here; ``check_pentagon`` reports where it is not.
    """

    objects: FiniteGroup
    assoc: Cochain

    def __post_init__(self) -> None:
        if not self.assoc.group.is_same(self.objects) or self.assoc.degree != 3:
            raise InvalidArgumentError(f"The associator must be a 3-cochain on {self.objects.name}.")


@dataclass(frozen=True, eq=False)
class PointedGAction:
    """A strictly unital action of ``acting`` on a pointed category with object group ``objects``.

    ``object_act[g]`` is the automorphism a -> g.a of A, ``psi[g, a, b]`` and ``chi[g, h, a]`` are residues
    mod ``modulus``. The identity functor's unit isomorphism is the identity.
    """

    acting: FiniteGroup
    objects: FiniteGroup
    object_act: np.ndarray
    psi: np.ndarray
    chi: np.ndarray
    modulus: int = 1

    def __post_init__(self) -> None:
        G, A = self.acting, self.objects
        if self.modulus < 1:
            raise InvalidArgumentError(f"Action modulus must be positive, got {self.modulus}.")
        act = np.array(self.object_act, dtype=np.int64)
        psi = np.array(self.psi, dtype=np.int64) % self.modulus
        chi = np.array(self.chi, dtype=np.int64) % self.modulus
        if act.shape != (G.order, A.order):
            raise InvalidArgumentError(f"object_act needs shape {(G.order, A.order)}, got {act.shape}.")
        if psi.shape != (G.order, A.order, A.order):
            raise InvalidArgumentError(f"psi needs shape {(G.order, A.order, A.order)}, got {psi.shape}.")
        if chi.shape != (G.order, G.order, A.order):
            raise InvalidArgumentError(f"chi needs shape {(G.order, G.order, A.order)}, got {chi.shape}.")

        for g in G.elements():
            perm = act[g]
            if sorted(perm.tolist()) != list(A.elements()):
                raise InvalidArgumentError(f"object_act[{G.label(g)}] is not a permutation of {A.name}.")
            # g.(ab) = (g.a)(g.b)
            if not np.array_equal(perm[A.mult], A.mult[perm[:, None], perm[None, :]]):
                raise InvalidArgumentError(f"object_act[{G.label(g)}] is not an automorphism of {A.name}.")
        if not np.array_equal(act[G.identity], np.arange(A.order)):
            raise InvalidArgumentError("The identity of the acting group must act as the identity functor.")

        e, a0 = G.identity, A.identity
        if psi[e].any() or chi[e].any() or chi[:, e].any():
            raise PreconditionViolation("Action is not strictly unital: psi^e or an identity-indexed chi is non-zero.")
        if psi[:, a0, :].any() or psi[:, :, a0].any() or chi[:, :, a0].any():
            raise PreconditionViolation("Action tables are not normalized on the unit object.")

        for name, table in (("object_act", act), ("psi", psi), ("chi", chi)):
            table.flags.writeable = False
            object.__setattr__(self, name, table)

    def psi_cochain(self, g: int) -> Cochain:
        return Cochain(self.objects, 2, self.modulus, self.psi[g])

    def chi_cochain(self, g: int, h: int) -> Cochain:
        return Cochain(self.objects, 1, self.modulus, self.chi[g, h])

    def psi_value(self, g: int, a: int, b: int) -> UnitScalar:
        return UnitScalar.of(int(self.psi[g, a, b]), self.modulus)

    def chi_value(self, g: int, h: int, a: int) -> UnitScalar:
        return UnitScalar.of(int(self.chi[g, h, a]), self.modulus)

    def rescaled(self, modulus: int) -> Tuple[np.ndarray, np.ndarray]:
        """psi and chi as residues mod a multiple of the action modulus."""
        if modulus % self.modulus:
            raise InvalidArgumentError(f"Cannot rescale a modulus-{self.modulus} action to modulus {modulus}.")
        factor = modulus // self.modulus
        return self.psi * factor, self.chi * factor

    def with_tables(
        self, psi: Optional[np.ndarray] = None, chi: Optional[np.ndarray] = None, modulus: int = 0
    ) -> PointedGAction:
        """Copy with replaced psi/chi tables (residues mod ``modulus``, default: unchanged)."""
        modulus = modulus or self.modulus
        old_psi, old_chi = self.rescaled(modulus) if modulus != self.modulus else (self.psi, self.chi)
        return PointedGAction(
            acting=self.acting,
            objects=self.objects,
            object_act=self.object_act,
            psi=old_psi if psi is None else psi,
            chi=old_chi if chi is None else chi,
            modulus=modulus,
        )


def trivial_category() -> PointedCategory:
    """Vec of the trivial group."""
    group = make_cyclic(1)
    return PointedCategory(group, Cochain.zero(group, 3))


def vec(objects: FiniteGroup, alpha: Optional[Cochain] = None) -> PointedCategory:
    return PointedCategory(objects, alpha if alpha is not None else Cochain.zero(objects, 3))


def trivial_action(acting: FiniteGroup, category: PointedCategory, modulus: int = 1) -> PointedGAction:
    """Every g acts as the identity functor with trivial monoidal structure."""
    A = category.objects
    return PointedGAction(
        acting=acting,
        objects=A,
        object_act=np.tile(np.arange(A.order), (acting.order, 1)),
        psi=np.zeros((acting.order, A.order, A.order), dtype=np.int64),
        chi=np.zeros((acting.order, acting.order, A.order), dtype=np.int64),
        modulus=modulus,
    )


def restrict_action(action: PointedGAction, hom: GroupHom) -> PointedGAction:
    """Pull an action of G back along hom: K -> G."""
    if not hom.target.is_same(action.acting):
        raise InvalidArgumentError(
            f"Cannot restrict an action of {action.acting.name} along a map into {hom.target.name}."
        )
    m = hom.map
    return PointedGAction(
        acting=hom.source,
        objects=action.objects,
        object_act=action.object_act[m],
        psi=action.psi[m],
        chi=action.chi[np.ix_(m, m)],
        modulus=action.modulus,
    )


def check_pentagon(
    category: PointedCategory, options: Optional[VerificationOptions] = None, family: str = "category_pentagon"
) -> FamilyReport:
    """alpha(b,c,d) + alpha(a,bc,d) + alpha(a,b,c) = alpha(a,b,cd) + alpha(ab,c,d) over A^4."""
    options = options or VerificationOptions()
    A, alpha = category.objects, category.assoc.data
    n = A.order
    b, c, d = np.ix_(np.arange(n), np.arange(n), np.arange(n))

    def evaluate(axes: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
        chunk = axes[0]
        a = chunk[:, None, None, None]
        bb, cc, dd = b[None], c[None], d[None]
        lhs = alpha[bb, cc, dd] + alpha[a, A.mult[bb, cc], dd] + alpha[a, bb, cc]
        rhs = alpha[a, bb, A.mult[cc, dd]] + alpha[A.mult[a, bb], cc, dd]
        return lhs, rhs

    return run_family(family, evaluate, [np.arange(n)], options, modulus=category.assoc.modulus)


def check_action_axioms(
    category: PointedCategory, action: PointedGAction, options: Optional[VerificationOptions] = None
) -> List[FamilyReport]:
    """Reports for the action law and the three coherence equations of a G-action, in that order."""
    options = options or VerificationOptions()
    G, A = action.acting, action.objects
    if not A.is_same(category.objects):
        raise InvalidArgumentError(f"Action is on {A.name}, category objects are {category.objects.name}.")
    L = math.lcm(category.assoc.modulus, action.modulus)
    alpha = category.assoc.rescaled(L).data
    psi, chi = action.rescaled(L)
    act, gm, am = action.object_act, G.mult, A.mult
    nG, nA = G.order, A.order
    grid_a = np.arange(nA)
    grid_g = np.arange(nG)

    def action_law(axes: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
        chunk = axes[0]
        g, h, a = chunk[:, None, None], grid_g[None, :, None], grid_a[None, None, :]
        return act[g, act[h, a]], act[gm[g, h], a]

    def chi_cocycle(axes: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
        chunk = axes[0]
        g = chunk[:, None, None, None]
        h, j, a = grid_g[None, :, None, None], grid_g[None, None, :, None], grid_a[None, None, None, :]
        lhs = chi[g, h, act[j, a]] + chi[gm[g, h], j, a]
        rhs = chi[h, j, a] + chi[g, gm[h, j], a]
        return lhs, rhs

    def tensor_structure(axes: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
        chunk = axes[0]
        g = chunk[:, None, None, None]
        a, b, c = grid_a[None, :, None, None], grid_a[None, None, :, None], grid_a[None, None, None, :]
        lhs = alpha[act[g, a], act[g, b], act[g, c]] + psi[g, a, b] + psi[g, am[a, b], c]
        rhs = psi[g, b, c] + psi[g, a, am[b, c]] + alpha[a, b, c]
        return lhs, rhs

    def chi_psi_compatibility(axes: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
        chunk = axes[0]
        g = chunk[:, None, None, None]
        h, a, b = grid_g[None, :, None, None], grid_a[None, None, :, None], grid_a[None, None, None, :]
        lhs = psi[g, act[h, a], act[h, b]] + psi[h, a, b] + chi[g, h, am[a, b]]
        rhs = chi[g, h, a] + chi[g, h, b] + psi[gm[g, h], a, b]
        return lhs, rhs

    return [
        run_family("action_law", action_law, [grid_g], options, render=A.label),
        run_family("action_chi_cocycle", chi_cocycle, [grid_g], options, modulus=L),
        run_family("action_tensor_structure", tensor_structure, [grid_g], options, modulus=L),
        run_family("action_chi_psi_compatibility", chi_psi_compatibility, [grid_g], options, modulus=L),
    ]


def semidirect_table(A: FiniteGroup, K: FiniteGroup, object_act: np.ndarray) -> np.ndarray:
    """(a,k)(b,l) = (a (k.b), kl) with (a,k) at index a |K| + k."""
    nA, nK = A.order, K.order
    a = np.arange(nA)[:, None, None, None]
    k = np.arange(nK)[None, :, None, None]
    b = np.arange(nA)[None, None, :, None]
    l = np.arange(nK)[None, None, None, :]
    return (A.mult[a, object_act[k, b]] * nK + K.mult[k, l]).reshape(nA * nK, nA * nK)


@dataclass(frozen=True, eq=False)
class CrossedProductCategory:
    """C x_omega K: objects (a, k), tensor (a,k)(b,l) = (a (k.b), kl).

    The associator of ((a,k),(b,l),(c,m)) is
    omega(k,l,m) + alpha(a, k.b, kl.c) + chi_{k,l}(c) - psi^k(b, l.c).
    """

    base: PointedCategory
    twisting_group: FiniteGroup
    action: PointedGAction
    twist: Cochain
    objects_group: FiniteGroup = field(init=False)
    assoc: Cochain = field(init=False)

    def __post_init__(self) -> None:
        A, K = self.base.objects, self.twisting_group
        if not self.twist.group.is_same(K) or self.twist.degree != 3:
            raise InvalidArgumentError(f"The twist must be a 3-cochain on {K.name}.")
        if not self.action.acting.is_same(K) or not self.action.objects.is_same(A):
            raise InvalidArgumentError("The action must be an action of the twisting group on the base category.")

        labels = [f"[{A.label(a)},{K.label(k)}]" for a in A.elements() for k in K.elements()]
        H = FiniteGroup(
            name=f"{A.name}x{K.name}", mult=semidirect_table(A, K, self.action.object_act), labels=tuple(labels)
        )

        L = math.lcm(self.twist.modulus, self.base.assoc.modulus, self.action.modulus)
        omega = self.twist.rescaled(L).data
        alpha = self.base.assoc.rescaled(L).data
        psi, chi = self.action.rescaled(L)
        act = self.action.object_act
        nA, nK = A.order, K.order
        a, k, b, l, c, m = np.ix_(*(np.arange(n) for n in (nA, nK, nA, nK, nA, nK)))
        phi = (
            omega[k, l, m]
            + alpha[a, act[k, b], act[K.mult[k, l], c]]
            + chi[k, l, c]
            - psi[k, b, act[l, c]]
        )
        data = np.broadcast_to(phi, (nA, nK) * 3).reshape((nA * nK,) * 3)
        object.__setattr__(self, "objects_group", H)
        object.__setattr__(self, "assoc", Cochain(H, 3, L, data))

    def index(self, a: int, k: int) -> int:
        return a * self.twisting_group.order + k

    def pair(self, x: int) -> Tuple[int, int]:
        return divmod(x, self.twisting_group.order)

    def tensor(self, x: int, y: int) -> int:
        return self.objects_group.mul(x, y)

    def assoc_scalar(self, x: int, y: int, z: int) -> UnitScalar:
        return self.assoc.value(x, y, z)

    def as_pointed(self) -> PointedCategory:
        return PointedCategory(self.objects_group, self.assoc)


def crossed_product(
    category: PointedCategory,
    K: FiniteGroup,
    action: PointedGAction,
    omega_K: Cochain,
    validate: bool = True,
) -> CrossedProductCategory:
    """Build C x_omega K; with ``validate`` the twist must be closed and the action coherent."""
    if validate:
        if not is_cocycle(omega_K):
            logger.error("Twist on %s is not a 3-cocycle.", K.name)
            raise PreconditionViolation(f"The twist on {K.name} is not a 3-cocycle.")
        for report in check_action_axioms(category, action):
            if not report.passed:
                logger.error("Action of %s fails %s.", K.name, report.family)
                raise PreconditionViolation(f"The action of {K.name} fails {report.family}.")
    return CrossedProductCategory(base=category, twisting_group=K, action=action, twist=omega_K)


def check_crossed_pentagon(
    crossed: CrossedProductCategory, options: Optional[VerificationOptions] = None
) -> FamilyReport:
    """Pentagon of the crossed product over (A x K)^4."""
    return check_pentagon(crossed.as_pointed(), options, family="crossed_pentagon")
