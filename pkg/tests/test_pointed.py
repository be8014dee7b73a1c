import numpy as np
import pytest

from anomalous_actions.cochains import Cochain, cup, differential
from anomalous_actions.errors import InvalidArgumentError, PreconditionViolation
from anomalous_actions.groups import FiniteGroup, GroupHom, make_cyclic
from anomalous_actions.models.options_model import VerificationOptions
from anomalous_actions.pointed import (
    PointedGAction,
    check_action_axioms,
    check_crossed_pentagon,
    check_pentagon,
    crossed_product,
    restrict_action,
    trivial_action,
    vec,
)
from anomalous_actions.scalars import UnitScalar


def cohomological_action(
    acting: FiniteGroup, objects: FiniteGroup, modulus: int, rng: np.random.Generator
) -> PointedGAction:
    """A coherent action with trivial object action: psi^g = d(eta_g), chi_{g,h} = eta_g + eta_h - eta_gh."""
    eta = rng.integers(0, modulus, size=(acting.order, objects.order))
    eta[acting.identity] = 0
    eta[:, objects.identity] = 0
    psi = eta[:, None, :] - eta[:, objects.mult] + eta[:, :, None]
    g = np.arange(acting.order)[:, None]
    h = np.arange(acting.order)[None, :]
    chi = eta[g] + eta[h] - eta[acting.mult[g, h]]
    return PointedGAction(
        acting=acting,
        objects=objects,
        object_act=np.tile(np.arange(objects.order), (acting.order, 1)),
        psi=psi,
        chi=chi,
        modulus=modulus,
    )


def random_normalized(group: FiniteGroup, degree: int, modulus: int, rng: np.random.Generator) -> np.ndarray:
    data = rng.integers(0, modulus, size=(group.order,) * degree)
    for axis in range(degree):
        index = [slice(None)] * degree
        index[axis] = group.identity
        data[tuple(index)] = 0
    return data


def z3_inversion_action(z2: FiniteGroup, z3: FiniteGroup) -> PointedGAction:
    return PointedGAction(
        acting=z2,
        objects=z3,
        object_act=np.array([[0, 1, 2], [0, 2, 1]]),
        psi=np.zeros((2, 3, 3), dtype=np.int64),
        chi=np.zeros((2, 2, 3), dtype=np.int64),
    )


@pytest.fixture
def z2() -> FiniteGroup:
    return make_cyclic(2)


@pytest.fixture
def z3() -> FiniteGroup:
    return make_cyclic(3)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(31)


class TestPentagon:

    def test_vec_with_generator_passes(self, z2: FiniteGroup) -> None:
        category = vec(z2, cup(Cochain.character(z2), Cochain.carry(z2)))
        report = check_pentagon(category)
        assert report.passed
        assert report.checked == 16

    def test_non_closed_associator_fails(self, z2: FiniteGroup) -> None:
        category = vec(z2, Cochain.from_entries(z2, 3, 4, {(1, 1, 1): "1/4"}))
        report = check_pentagon(category)
        assert report.failed == 1
        witness = report.witnesses[0]
        assert witness.args == [1, 1, 1, 1]
        assert (witness.lhs, witness.rhs) == ("1/2", "0")

    def test_worker_count_does_not_change_result(self, z3: FiniteGroup) -> None:
        category = vec(z3, Cochain.from_entries(z3, 3, 9, {(1, 1, 1): "1/9", (2, 1, 2): "4/9"}))
        single = check_pentagon(category, VerificationOptions(workers=1, witness_cap=50))
        several = check_pentagon(category, VerificationOptions(workers=3, witness_cap=50))
        assert single.failed == several.failed > 0
        assert [w.args for w in single.witnesses] == [w.args for w in several.witnesses]

    def test_associator_must_live_on_objects(self, z2: FiniteGroup, z3: FiniteGroup) -> None:
        with pytest.raises(InvalidArgumentError):
            vec(z2, Cochain.zero(z3, 3))


class TestPointedGAction:

    def test_cohomological_action_is_coherent(self, z3: FiniteGroup, rng: np.random.Generator) -> None:
        action = cohomological_action(make_cyclic(4), z3, 6, rng)
        category = vec(z3, cup(Cochain.character(z3), Cochain.carry(z3)))
        reports = check_action_axioms(category, action)
        assert [r.family for r in reports] == [
            "action_law",
            "action_chi_cocycle",
            "action_tensor_structure",
            "action_chi_psi_compatibility",
        ]
        assert all(r.passed for r in reports)

    def test_rejects_non_automorphism(self, z2: FiniteGroup, z3: FiniteGroup) -> None:
        with pytest.raises(InvalidArgumentError, match="automorphism"):
            PointedGAction(
                acting=z2,
                objects=z3,
                object_act=np.array([[0, 1, 2], [1, 0, 2]]),
                psi=np.zeros((2, 3, 3), dtype=np.int64),
                chi=np.zeros((2, 2, 3), dtype=np.int64),
            )

    def test_rejects_non_unital_tables(self, z2: FiniteGroup) -> None:
        psi = np.zeros((2, 2, 2), dtype=np.int64)
        psi[0, 1, 1] = 1
        with pytest.raises(PreconditionViolation, match="unital"):
            PointedGAction(
                acting=z2,
                objects=z2,
                object_act=np.tile(np.arange(2), (2, 1)),
                psi=psi,
                chi=np.zeros((2, 2, 2), dtype=np.int64),
                modulus=2,
            )

    def test_psi_that_is_not_multiplicative_in_g_fails_compatibility(self) -> None:
        z4, z2 = make_cyclic(4), make_cyclic(2)
        category = vec(z2, cup(Cochain.character(z2), Cochain.carry(z2)))
        psi = np.zeros((4, 2, 2), dtype=np.int64)
        psi[1, 1, 1] = 1
        action = trivial_action(z4, category).with_tables(psi=psi, modulus=4)
        reports = {r.family: r for r in check_action_axioms(category, action)}
        assert reports["action_tensor_structure"].passed
        assert not reports["action_chi_psi_compatibility"].passed

    def test_chi_that_is_not_a_cocycle_fails_cocycle_check(self) -> None:
        z4, z2 = make_cyclic(4), make_cyclic(2)
        category = vec(z2, cup(Cochain.character(z2), Cochain.carry(z2)))
        chi = np.zeros((4, 4, 2), dtype=np.int64)
        chi[1, 1, 1] = 1
        action = trivial_action(z4, category).with_tables(chi=chi, modulus=2)
        reports = {r.family: r for r in check_action_axioms(category, action)}
        assert reports["action_chi_psi_compatibility"].passed
        assert not reports["action_chi_cocycle"].passed

    def test_restrict_action(self, z3: FiniteGroup, rng: np.random.Generator) -> None:
        z4, z2 = make_cyclic(4), make_cyclic(2)
        action = cohomological_action(z4, z3, 6, rng)
        restricted = restrict_action(action, GroupHom(source=z2, target=z4, map=np.array([0, 2])))
        assert restricted.acting is z2
        assert np.array_equal(restricted.psi[1], action.psi[2])
        assert restricted.chi_value(1, 1, 1) == action.chi_value(2, 2, 1)


class TestCrossedProduct:

    def test_random_coherent_data_passes(self, z2: FiniteGroup, z3: FiniteGroup) -> None:
        rng = np.random.default_rng(50)
        category = vec(z3, cup(Cochain.character(z3), Cochain.carry(z3)))
        acting = [z2, z3, make_cyclic(4)]
        for _ in range(50):
            K = acting[rng.integers(len(acting))]
            action = cohomological_action(K, z3, 6, rng)
            twist = cup(Cochain.character(K), Cochain.carry(K))
            if rng.integers(2):
                twist = twist + differential(Cochain(K, 2, 6, random_normalized(K, 2, 6, rng)))
            crossed = crossed_product(category, K, action, twist)
            assert crossed.objects_group.order == 3 * K.order
            assert check_crossed_pentagon(crossed).passed

    def test_semidirect_objects(self, z2: FiniteGroup, z3: FiniteGroup) -> None:
        crossed = crossed_product(vec(z3), z2, z3_inversion_action(z2, z3), Cochain.zero(z2, 3))
        H = crossed.objects_group
        assert not H.is_abelian()
        # (0,1)(1,0) = (0 + 1.1, 1) = (2, 1)
        assert crossed.pair(crossed.tensor(crossed.index(0, 1), crossed.index(1, 0))) == (2, 1)
        assert check_crossed_pentagon(crossed).passed

    def test_twist_enters_associator(self, z2: FiniteGroup) -> None:
        twist = cup(Cochain.character(z2), Cochain.carry(z2))
        crossed = crossed_product(vec(make_cyclic(1)), z2, trivial_action(z2, vec(make_cyclic(1))), twist)
        assert crossed.assoc_scalar(1, 1, 1) == UnitScalar.of(1, 2)
        assert crossed.as_pointed().objects is crossed.objects_group

    def test_non_closed_twist_is_rejected(self, z2: FiniteGroup, z3: FiniteGroup) -> None:
        twist = Cochain.from_entries(z2, 3, 4, {(1, 1, 1): "1/4"})
        action = z3_inversion_action(z2, z3)
        with pytest.raises(PreconditionViolation, match="3-cocycle"):
            crossed_product(vec(z3), z2, action, twist)
        crossed = crossed_product(vec(z3), z2, action, twist, validate=False)
        report = check_crossed_pentagon(crossed)
        assert report.family == "crossed_pentagon"
        assert not report.passed

    def test_incoherent_action_is_rejected(self) -> None:
        z4, z2 = make_cyclic(4), make_cyclic(2)
        category = vec(z2)
        chi = np.zeros((4, 4, 2), dtype=np.int64)
        chi[1, 1, 1] = 1
        action = trivial_action(z4, category).with_tables(chi=chi, modulus=2)
        with pytest.raises(PreconditionViolation, match="action_chi_cocycle"):
            crossed_product(category, z4, action, Cochain.zero(z4, 3))
