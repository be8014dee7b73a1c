"""Anomalous actions of Q on a twisted crossed product C x_omega K.

Given G -> Q with kernel K, a section q -> q_hat, a 3-cochain omega on G with d(omega) = rho^*(pi) and a
G-action on a pointed category C, every q in Q induces a monoidal autoequivalence q_* of C x_omega K.
The composites q_* r_* and (qr)_* are related by pseudonatural isomorphisms, those by modifications, and
the only obstruction left is the pentagonator equation, which holds up to pi.

Scalars are handled as residues modulo ``AnomalySetup.modulus``, the lcm of every input modulus.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from anomalous_actions.cochains import Cochain, differential, pullback, restrict
from anomalous_actions.diagram import CoherenceDiagram, Context, Step
from anomalous_actions.errors import InvalidArgumentError, PreconditionViolation
from anomalous_actions.extensions import ExtensionData
from anomalous_actions.groups import FiniteGroup
from anomalous_actions.models.options_model import VerificationOptions
from anomalous_actions.models.report_model import FamilyReport, FullReport
from anomalous_actions.pointed import (
    ACTION_FAMILIES,
    CrossedProductCategory,
    PointedCategory,
    PointedGAction,
    check_action_axioms,
    check_crossed_pentagon,
    check_pentagon,
    restrict_action,
)
from anomalous_actions.scalars import UnitScalar
from anomalous_actions.verification import compare_tables, merge_reports, run_family

logger = logging.getLogger(__name__)

Object = Union[int, Tuple[int, int]]

SETUP_FAMILIES = (
    "extension_section",
    "extension_kernel",
    "extension_gamma",
    "gamma_identity",
    "pi_cocycle",
    "omega_trivializes_pi",
    "omega_k_cocycle",
    "category_pentagon",
    *ACTION_FAMILIES,
    "crossed_pentagon",
)
COHERENCE_FAMILIES = ("monoidal", "pseudonatural", "modification", "modification_one_cell", "pentagonator")


@dataclass(frozen=True, eq=False)
class AnomalySetup:
    """Input bundle of the construction plus the derived restriction to K and crossed product.

    Coherence of the inputs is not enforced here; ``validate_setup`` reports it. Derived data that cannot
    be formed at all (for instance when the object action is not an action) leaves ``crossed`` unset and
    records the reason in ``crossed_error``.
    """

    Q: FiniteGroup
    pi: Cochain
    ext: ExtensionData
    omega: Cochain
    category: PointedCategory
    action: PointedGAction
    omega_K: Cochain = field(init=False)
    action_K: Optional[PointedGAction] = field(init=False)
    crossed: Optional[CrossedProductCategory] = field(init=False)
    crossed_error: Optional[str] = field(init=False)
    modulus: int = field(init=False)

    def __post_init__(self) -> None:
        if not self.ext.Q.is_same(self.Q):
            raise InvalidArgumentError(f"Extension quotient {self.ext.Q.name} is not {self.Q.name}.")
        if not self.pi.group.is_same(self.Q) or self.pi.degree != 4:
            raise InvalidArgumentError(f"pi must be a 4-cochain on {self.Q.name}.")
        if not self.omega.group.is_same(self.ext.G) or self.omega.degree != 3:
            raise InvalidArgumentError(f"omega must be a 3-cochain on {self.ext.G.name}.")
        if not self.action.acting.is_same(self.ext.G) or not self.action.objects.is_same(self.category.objects):
            raise InvalidArgumentError("The action must be a G-action on the given category.")

        omega_K = restrict(self.omega, self.ext)
        crossed: Optional[CrossedProductCategory] = None
        action_K: Optional[PointedGAction] = None
        error: Optional[str] = None
        try:
            action_K = restrict_action(self.action, self.ext.kernel_embedding)
            crossed = CrossedProductCategory(
                base=self.category, twisting_group=self.ext.kernel_group, action=action_K, twist=omega_K
            )
        except (InvalidArgumentError, PreconditionViolation) as e:
            logger.error("Cannot form the crossed product: %s", e)
            error = str(e)
        if crossed is not None and (self.ext.kernel_index[self._conjugation] < 0).any():
            crossed, error = None, "K is not normal in G"

        modulus = math.lcm(self.pi.modulus, self.omega.modulus, self.category.assoc.modulus, self.action.modulus)
        object.__setattr__(self, "omega_K", omega_K)
        object.__setattr__(self, "action_K", action_K)
        object.__setattr__(self, "crossed", crossed)
        object.__setattr__(self, "crossed_error", error)
        object.__setattr__(self, "modulus", modulus)

    @classmethod
    def assemble(
        cls,
        Q: FiniteGroup,
        pi: Cochain,
        ext: ExtensionData,
        omega: Cochain,
        category: PointedCategory,
        action: PointedGAction,
    ) -> AnomalySetup:
        return cls(Q=Q, pi=pi, ext=ext, omega=omega, category=category, action=action)

    def with_changes(self, **changes: object) -> AnomalySetup:
        """Copy with replaced inputs (pi, ext, omega, category, action); derived data is rebuilt."""
        return replace(self, **changes)  # type: ignore[arg-type]

    # lookup tables

    @property
    def G(self) -> FiniteGroup:
        return self.ext.G

    @property
    def K(self) -> FiniteGroup:
        return self.ext.kernel_group

    @property
    def objects(self) -> FiniteGroup:
        """The object group A x K of the crossed product."""
        return self._crossed.objects_group

    @property
    def _crossed(self) -> CrossedProductCategory:
        if self.crossed is None:
            raise PreconditionViolation(f"The crossed product is not available: {self.crossed_error}.")
        return self.crossed

    @cached_property
    def _conjugation(self) -> np.ndarray:
        """conj[g, k] = g k g^-1 as an element of G, for k indexing K."""
        G, emb = self.G, self.ext.kernel_embedding.map
        return G.mult[G.mult[np.arange(G.order)[:, None], emb[None, :]], G.inverse[:, None]]

    @cached_property
    def omega_residues(self) -> np.ndarray:
        return self.omega.rescaled(self.modulus).data

    @cached_property
    def pi_residues(self) -> np.ndarray:
        return self.pi.rescaled(self.modulus).data

    @cached_property
    def _action_tables(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.action.rescaled(self.modulus)

    @cached_property
    def phi(self) -> np.ndarray:
        """Associator of the crossed product as residues."""
        return self._crossed.assoc.rescaled(self.modulus).data

    @cached_property
    def theta(self) -> np.ndarray:
        """theta[q, X]: the object q_*(X)."""
        nA, nK = self.category.objects.order, self.K.order
        lift = self.ext.section.lift
        g = lift[:, None, None]
        a = np.arange(nA)[None, :, None]
        k = np.arange(nK)[None, None, :]
        conj_k = self.ext.kernel_index[self._conjugation]
        table = self.action.object_act[g, a] * nK + conj_k[g, k]
        return table.reshape(self.Q.order, nA * nK)

    @cached_property
    def psi_tilde_table(self) -> np.ndarray:
        """psi~[q, X, Y] for X = (a,k), Y = (b,l) and g = q_hat, k' = g k g^-1, l' = g l g^-1:

        psi^g(a, k.b) - chi_{g,k}(b) + chi_{k',g}(b) + omega(k',g,l) - omega(k',l',g) - omega(g,k,l).
        """
        nA, nK, nQ = self.category.objects.order, self.K.order, self.Q.order
        W = self.omega_residues
        psi, chi = self._action_tables
        act, emb, conj = self.action.object_act, self.ext.kernel_embedding.map, self._conjugation
        g = self.ext.section.lift[:, None, None, None, None]
        a = np.arange(nA)[None, :, None, None, None]
        k = np.arange(nK)[None, None, :, None, None]
        b = np.arange(nA)[None, None, None, :, None]
        l = np.arange(nK)[None, None, None, None, :]
        kg, lg, kp, lp = emb[k], emb[l], conj[g, k], conj[g, l]
        table = (
            psi[g, a, act[kg, b]]
            - chi[g, kg, b]
            + chi[kp, g, b]
            + W[kp, g, lg]
            - W[kp, lp, g]
            - W[g, kg, lg]
        )
        return np.broadcast_to(table, (nQ, nA, nK, nA, nK)).reshape(nQ, nA * nK, nA * nK) % self.modulus

    @cached_property
    def chi_tilde_table(self) -> np.ndarray:
        """chi~[q, r, X] for X = (a,k), g = q_hat, h = r_hat, p = (qr)_hat, c = gamma(q,r):

        M_{g,h}(k) - M_{c,p}(k) + chi_{g,h}(a) - chi_{c,p}(a) with
        M_{x,y}(k) = omega(xy k (xy)^-1, x, y) - omega(x, y k y^-1, y) + omega(x, y, k).
        """
        G, Q = self.G, self.Q
        nA, nK, nQ = self.category.objects.order, self.K.order, Q.order
        W = self.omega_residues
        _, chi = self._action_tables
        emb, conj, lift = self.ext.kernel_embedding.map, self._conjugation, self.ext.section.lift
        q = np.arange(nQ)[:, None, None, None]
        r = np.arange(nQ)[None, :, None, None]
        a = np.arange(nA)[None, None, :, None]
        k = np.arange(nK)[None, None, None, :]
        g, h = lift[q], lift[r]
        p = lift[Q.mult[q, r]]
        c = self.ext.gamma_elements()[q, r]

        def m(x: np.ndarray, y: np.ndarray) -> np.ndarray:
            return W[conj[G.mult[x, y], k], x, y] - W[x, conj[y, k], y] + W[x, y, emb[k]]

        table = m(g, h) - m(c, p) + chi[g, h, a] - chi[c, p, a]
        return np.broadcast_to(table, (nQ, nQ, nA, nK)).reshape(nQ, nQ, nA * nK) % self.modulus

    @cached_property
    def unit_table(self) -> np.ndarray:
        """U[q, r] = (e_A, gamma(q, r)) as an object index."""
        return self.category.objects.identity * self.K.order + self.ext.gamma

    def object_index(self, x: Object) -> int:
        if isinstance(x, tuple):
            return self._crossed.index(*x)
        return int(x)


@dataclass(frozen=True)
class InducedFunctor:
    """q_*: (a,k) -> (q_hat.a, q_hat k q_hat^-1) with monoidal structure psi~^q."""

    q: int
    object_map: np.ndarray
    psi_tilde: np.ndarray
    modulus: int

    def is_bijective(self) -> bool:
        return len(np.unique(self.object_map)) == len(self.object_map)

    def value(self, x: int, y: int) -> UnitScalar:
        return UnitScalar.of(int(self.psi_tilde[x, y]), self.modulus)


@dataclass(frozen=True)
class PseudoNatData:
    """The isomorphism q_* r_* => (qr)_*: tensoring with U_{q,r} and the scalars chi~_{q,r}."""

    q: int
    r: int
    unit: int
    chi_tilde: np.ndarray
    modulus: int

    def value(self, x: int) -> UnitScalar:
        return UnitScalar.of(int(self.chi_tilde[x]), self.modulus)


@dataclass(frozen=True)
class ModificationData:
    q: int
    r: int
    s: int
    scalar: UnitScalar


def psi_tilde(setup: AnomalySetup, q: int, x: Object, y: Object) -> UnitScalar:
    table = setup.psi_tilde_table
    return UnitScalar.of(int(table[q, setup.object_index(x), setup.object_index(y)]), setup.modulus)


def chi_tilde(setup: AnomalySetup, q: int, r: int, x: Object) -> UnitScalar:
    return UnitScalar.of(int(setup.chi_tilde_table[q, r, setup.object_index(x)]), setup.modulus)


def omega_mod(setup: AnomalySetup, q: int, r: int, s: int) -> UnitScalar:
    """Scalar of the pentagonator modification: omega(q_hat, r_hat, s_hat)."""
    lift = setup.ext.lift
    return setup.omega.value(lift(q), lift(r), lift(s))


def induced_functor(setup: AnomalySetup, q: int) -> InducedFunctor:
    return InducedFunctor(
        q=q, object_map=setup.theta[q], psi_tilde=setup.psi_tilde_table[q], modulus=setup.modulus
    )


def pseudonatural_data(setup: AnomalySetup, q: int, r: int) -> PseudoNatData:
    return PseudoNatData(
        q=q,
        r=r,
        unit=int(setup.unit_table[q, r]),
        chi_tilde=setup.chi_tilde_table[q, r],
        modulus=setup.modulus,
    )


def modification_data(setup: AnomalySetup, q: int, r: int, s: int) -> ModificationData:
    return ModificationData(q=q, r=r, s=s, scalar=omega_mod(setup, q, r, s))


# diagrams


def _monoidal_diagram(setup: AnomalySetup) -> CoherenceDiagram:
    """q_* is monoidal: the hexagon relating alpha^omega and psi~^q."""
    Hm, phi, pt, theta = setup.objects.mult, setup.phi, setup.psi_tilde_table, setup.theta

    diagram = CoherenceDiagram("monoidal")
    diagram.add_path(
        "source_associator_first",
        [
            Step("alpha(X,Y,Z)", 1, lambda c: phi[c["X"], c["Y"], c["Z"]]),
            Step("psi~(X,YZ)", 1, lambda c: pt[c["q"], c["X"], Hm[c["Y"], c["Z"]]]),
            Step("psi~(Y,Z)", 1, lambda c: pt[c["q"], c["Y"], c["Z"]]),
        ],
    )
    diagram.add_path(
        "target_associator_last",
        [
            Step("psi~(XY,Z)", 1, lambda c: pt[c["q"], Hm[c["X"], c["Y"]], c["Z"]]),
            Step("psi~(X,Y)", 1, lambda c: pt[c["q"], c["X"], c["Y"]]),
            Step(
                "alpha(qX,qY,qZ)",
                1,
                lambda c: phi[theta[c["q"], c["X"]], theta[c["q"], c["Y"]], theta[c["q"], c["Z"]]],
            ),
        ],
    )
    return diagram


def _pseudonatural_diagram(setup: AnomalySetup) -> CoherenceDiagram:
    """chi~_{q,r} is a monoidal natural isomorphism q_* r_* => (qr)_*.

    Context keys: F = q_* r_* on X and Y, Fp = (qr)_* on X and Y, U = U_{q,r}, rX/rY = r_* of X and Y.
    """
    phi, pt, ct, Hm = setup.phi, setup.psi_tilde_table, setup.chi_tilde_table, setup.objects.mult

    diagram = CoherenceDiagram("pseudonatural")
    diagram.add_path(
        "unit_moved_through",
        [
            Step("alpha(FX,FY,U)", -1, lambda c: phi[c["FX"], c["FY"], c["U"]]),
            Step("id x chi~(Y)", 1, lambda c: ct[c["q"], c["r"], c["Y"]]),
            Step("alpha(FX,U,F'Y)", 1, lambda c: phi[c["FX"], c["U"], c["FpY"]]),
            Step("chi~(X) x id", 1, lambda c: ct[c["q"], c["r"], c["X"]]),
            Step("alpha(U,F'X,F'Y)", -1, lambda c: phi[c["U"], c["FpX"], c["FpY"]]),
            Step("id x psi~^(qr)(X,Y)", 1, lambda c: pt[c["qr"], c["X"], c["Y"]]),
        ],
    )
    diagram.add_path(
        "composite_structure_first",
        [
            Step("psi~^q(rX,rY)", 1, lambda c: pt[c["q"], c["rX"], c["rY"]]),
            Step("psi~^r(X,Y)", 1, lambda c: pt[c["r"], c["X"], c["Y"]]),
            Step("chi~(XY)", 1, lambda c: ct[c["q"], c["r"], Hm[c["X"], c["Y"]]]),
        ],
    )
    return diagram


def _modification_diagram(setup: AnomalySetup) -> CoherenceDiagram:
    """The two ways of moving q_* r_* s_* X past the units to (qrs)_* X.

    Context keys: FX = q_* r_* s_* X, HX = (qrs)_* X, Urs = U_{r,s}, U1 = q_*(U_{r,s}), U2 = U_{q,rs},
    V1 = U_{q,r}, V2 = U_{qr,s}, rsX = r_* s_* X, Gp = q_* (rs)_* X, Gpp = (qr)_* s_* X, sX = s_* X,
    RSX = (rs)_* X.
    """
    phi, pt, ct = setup.phi, setup.psi_tilde_table, setup.chi_tilde_table

    diagram = CoherenceDiagram("modification")
    diagram.add_path(
        "through_q_of_U_rs",
        [
            Step("alpha(FX,U1,U2)", 1, lambda c: phi[c["FX"], c["U1"], c["U2"]]),
            Step("psi~^q(rsX,U_rs)", 1, lambda c: pt[c["q"], c["rsX"], c["Urs"]]),
            Step("q(chi~_{r,s}(X))", 1, lambda c: ct[c["r"], c["s"], c["X"]]),
            Step("psi~^q(U_rs,(rs)X)", -1, lambda c: pt[c["q"], c["Urs"], c["RSX"]]),
            Step("alpha(U1,G'X,U2)", -1, lambda c: phi[c["U1"], c["Gp"], c["U2"]]),
            Step("chi~_{q,rs}(X)", 1, lambda c: ct[c["q"], c["rs"], c["X"]]),
            Step("alpha(U1,U2,HX)", 1, lambda c: phi[c["U1"], c["U2"], c["HX"]]),
        ],
    )
    diagram.add_path(
        "through_U_qr",
        [
            Step("alpha(FX,V1,V2)", 1, lambda c: phi[c["FX"], c["V1"], c["V2"]]),
            Step("chi~_{q,r}(sX)", 1, lambda c: ct[c["q"], c["r"], c["sX"]]),
            Step("alpha(V1,G''X,V2)", -1, lambda c: phi[c["V1"], c["Gpp"], c["V2"]]),
            Step("chi~_{qr,s}(X)", 1, lambda c: ct[c["qr"], c["s"], c["X"]]),
            Step("alpha(V1,V2,HX)", 1, lambda c: phi[c["V1"], c["V2"], c["HX"]]),
        ],
    )
    return diagram


# verifiers


def _q_axis(setup: AnomalySetup, value: Optional[int]) -> np.ndarray:
    return np.arange(setup.Q.order) if value is None else np.array([value], dtype=np.int64)


def _objects_axis(setup: AnomalySetup) -> np.ndarray:
    return np.arange(setup.objects.order)


def verify_monoidal(
    setup: AnomalySetup, q: Optional[int] = None, options: Optional[VerificationOptions] = None
) -> FamilyReport:
    """Exhaustive check over object triples; witness arguments are (q, X, Y, Z)."""
    options = options or VerificationOptions()
    diagram = _monoidal_diagram(setup)
    objects = _objects_axis(setup)

    def evaluate(axes: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
        context: Context = {
            "q": axes[0][:, None, None, None],
            "X": axes[1][None, :, None, None],
            "Y": axes[2][None, None, :, None],
            "Z": axes[3][None, None, None, :],
        }
        return diagram.check(context)

    return run_family("monoidal", evaluate, [_q_axis(setup, q), objects, objects, objects], options, setup.modulus)


def verify_pseudonatural(
    setup: AnomalySetup,
    q: Optional[int] = None,
    r: Optional[int] = None,
    options: Optional[VerificationOptions] = None,
) -> FamilyReport:
    """Exhaustive check over object pairs; witness arguments are (q, r, X, Y)."""
    options = options or VerificationOptions()
    diagram = _pseudonatural_diagram(setup)
    theta, units, Qm = setup.theta, setup.unit_table, setup.Q.mult
    objects = _objects_axis(setup)

    def evaluate(axes: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
        qs = axes[0][:, None, None, None]
        rs = axes[1][None, :, None, None]
        X = axes[2][None, None, :, None]
        Y = axes[3][None, None, None, :]
        qr = Qm[qs, rs]
        context: Context = {
            "q": qs,
            "r": rs,
            "qr": qr,
            "X": X,
            "Y": Y,
            "rX": theta[rs, X],
            "rY": theta[rs, Y],
            "FX": theta[qs, theta[rs, X]],
            "FY": theta[qs, theta[rs, Y]],
            "FpX": theta[qr, X],
            "FpY": theta[qr, Y],
            "U": units[qs, rs],
        }
        return diagram.check(context)

    axes = [_q_axis(setup, q), _q_axis(setup, r), objects, objects]
    return run_family("pseudonatural", evaluate, axes, options, setup.modulus)


def verify_modification(
    setup: AnomalySetup,
    q: Optional[int] = None,
    r: Optional[int] = None,
    s: Optional[int] = None,
    options: Optional[VerificationOptions] = None,
) -> FamilyReport:
    """Exhaustive check over objects; witness arguments are (q, r, s, X). The pentagonator scalar is not used."""
    options = options or VerificationOptions()
    diagram = _modification_diagram(setup)
    theta, units, Qm = setup.theta, setup.unit_table, setup.Q.mult

    def evaluate(axes: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
        qs = axes[0][:, None, None, None]
        rs = axes[1][None, :, None, None]
        ss = axes[2][None, None, :, None]
        X = axes[3][None, None, None, :]
        qr, r_s = Qm[qs, rs], Qm[rs, ss]
        u_rs = units[rs, ss]
        context: Context = {
            "q": qs,
            "r": rs,
            "s": ss,
            "qr": qr,
            "rs": r_s,
            "X": X,
            "sX": theta[ss, X],
            "rsX": theta[rs, theta[ss, X]],
            "RSX": theta[r_s, X],
            "FX": theta[qs, theta[rs, theta[ss, X]]],
            "HX": theta[Qm[qs, r_s], X],
            "Gp": theta[qs, theta[r_s, X]],
            "Gpp": theta[qr, theta[ss, X]],
            "Urs": u_rs,
            "U1": theta[qs, u_rs],
            "U2": units[qs, r_s],
            "V1": units[qs, rs],
            "V2": units[qr, ss],
        }
        return diagram.check(context)

    axes = [_q_axis(setup, q), _q_axis(setup, r), _q_axis(setup, s), _objects_axis(setup)]
    return run_family("modification", evaluate, axes, options, setup.modulus)


def verify_modification_one_cell(
    setup: AnomalySetup,
    q: Optional[int] = None,
    r: Optional[int] = None,
    s: Optional[int] = None,
    options: Optional[VerificationOptions] = None,
) -> FamilyReport:
    """q_*(U_{r,s}) U_{q,rs} = U_{q,r} U_{qr,s} as objects; witness arguments are (q, r, s)."""
    options = options or VerificationOptions()
    theta, units, Qm, Hm = setup.theta, setup.unit_table, setup.Q.mult, setup.objects.mult

    def evaluate(axes: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
        qs = axes[0][:, None, None]
        rs = axes[1][None, :, None]
        ss = axes[2][None, None, :]
        lhs = Hm[theta[qs, units[rs, ss]], units[qs, Qm[rs, ss]]]
        rhs = Hm[units[qs, rs], units[Qm[qs, rs], ss]]
        return lhs, rhs

    axes = [_q_axis(setup, q), _q_axis(setup, r), _q_axis(setup, s)]
    return run_family("modification_one_cell", evaluate, axes, options, render=setup.objects.label)


def verify_pentagonator(
    setup: AnomalySetup,
    q: Optional[int] = None,
    r: Optional[int] = None,
    s: Optional[int] = None,
    t: Optional[int] = None,
    options: Optional[VerificationOptions] = None,
) -> FamilyReport:
    """omega(r,s,t) + omega(q,rs,t) + omega(q,r,s) = pi(q,r,s,t) + omega(q,r,st) + omega(qr,s,t) on lifts.

    Products such as rs are taken in G between lifts, not lifts of products.
    """
    options = options or VerificationOptions()
    W, P = setup.omega_residues, setup.pi_residues
    Gm, lift = setup.G.mult, setup.ext.section.lift

    def evaluate(axes: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
        qq = axes[0][:, None, None, None]
        rr = axes[1][None, :, None, None]
        ss = axes[2][None, None, :, None]
        tt = axes[3][None, None, None, :]
        gq, gr, gs, gt = lift[qq], lift[rr], lift[ss], lift[tt]
        lhs = W[gr, gs, gt] + W[gq, Gm[gr, gs], gt] + W[gq, gr, gs]
        rhs = P[qq, rr, ss, tt] + W[gq, gr, Gm[gs, gt]] + W[Gm[gq, gr], gs, gt]
        return lhs, rhs

    axes = [_q_axis(setup, q), _q_axis(setup, r), _q_axis(setup, s), _q_axis(setup, t)]
    return run_family("pentagonator", evaluate, axes, options, setup.modulus)


# reports


def _cochain_family(family: str, lhs: Cochain, rhs: Cochain, witness_cap: int) -> FamilyReport:
    modulus = math.lcm(lhs.modulus, rhs.modulus)
    return compare_tables(family, lhs.rescaled(modulus).data, rhs.rescaled(modulus).data, witness_cap, modulus)


def validate_setup(setup: AnomalySetup, options: Optional[VerificationOptions] = None) -> List[FamilyReport]:
    """Reports for every hypothesis of the construction, in ``SETUP_FAMILIES`` order."""
    options = options or VerificationOptions()
    cap = options.witness_cap
    reports: List[FamilyReport] = []
    for family, pairs in setup.ext.invariant_tables().items():
        parts = [compare_tables(family, lhs, rhs, cap) for lhs, rhs in pairs]
        reports.append(merge_reports(family, parts, cap))

    d_pi = differential(setup.pi)
    reports.append(_cochain_family("pi_cocycle", d_pi, Cochain.zero(setup.Q, 5), cap))
    pulled = pullback(setup.ext.rho, setup.pi)
    reports.append(_cochain_family("omega_trivializes_pi", differential(setup.omega), pulled, cap))
    reports.append(_cochain_family("omega_k_cocycle", differential(setup.omega_K), Cochain.zero(setup.K, 4), cap))

    reports.append(check_pentagon(setup.category, options))
    reports.extend(check_action_axioms(setup.category, setup.action, options))
    if setup.crossed is None:
        reports.append(FamilyReport.skipped("crossed_pentagon", setup.crossed_error or "crossed product unavailable"))
    else:
        reports.append(check_crossed_pentagon(setup.crossed, options))
    return reports


def full_report(
    setup: AnomalySetup, options: Optional[VerificationOptions] = None, name: str = "scenario"
) -> FullReport:
    """Run every family; failures are recorded as data, never raised."""
    options = options or VerificationOptions()
    report = FullReport(name=name, coefficient_modulus=setup.modulus)
    for family_report in validate_setup(setup, options):
        report.add(family_report)

    if setup.crossed is None:
        reason = setup.crossed_error or "crossed product unavailable"
        for family in COHERENCE_FAMILIES[:-1]:
            report.add(FamilyReport.skipped(family, reason))
    else:
        report.add(verify_monoidal(setup, options=options))
        report.add(verify_pseudonatural(setup, options=options))
        report.add(verify_modification(setup, options=options))
        report.add(verify_modification_one_cell(setup, options=options))
    report.add(verify_pentagonator(setup, options=options))
    report.finish()
    logger.info("Report %s: %s (%d failing checks)", name, report.overall, report.total_failed)
    return report
