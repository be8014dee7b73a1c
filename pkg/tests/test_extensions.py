import numpy as np
import pytest

from anomalous_actions.cochains import Cochain, cup, differential, pullback
from anomalous_actions.errors import InvalidArgumentError, PreconditionViolation
from anomalous_actions.extensions import ExtensionData, Section, central_extension, gamma_of
from anomalous_actions.groups import (
    FiniteGroup,
    GroupHom,
    direct_product,
    element_order,
    make_cyclic,
    make_symmetric,
    projection,
)


def sign(s3: FiniteGroup) -> GroupHom:
    return GroupHom(source=s3, target=make_cyclic(2), map=np.array([0, 1, 1, 0, 0, 1]))


def klein_bilinear() -> Cochain:
    z2 = make_cyclic(2)
    v4 = direct_product(z2, z2)
    first = pullback(projection(v4, 0), Cochain.character(z2))
    second = pullback(projection(v4, 1), Cochain.character(z2))
    return cup(first, second)


def central_cases():
    z2, z4, s3 = make_cyclic(2), make_cyclic(4), make_symmetric(3)
    return [
        (z2, 2, Cochain.carry(z2)),
        (z4, 4, Cochain.carry(z4)),
        (klein_bilinear().group, 2, klein_bilinear()),
        (s3, 2, pullback(sign(s3), Cochain.carry(z2))),
    ]


class TestCentralExtension:

    def test_flagship_extension_is_z4(self) -> None:
        z2 = make_cyclic(2)
        ext = central_extension(z2, 2, Cochain.carry(z2))
        assert ext.G.order == 4
        assert element_order(ext.G, ext.lift(1)) == 4
        assert ext.kernel_elems == (0, 2)
        assert int(ext.gamma[1, 1]) == 1
        assert gamma_of(ext, 1, 1) == 2
        assert ext.defects() == []

    @pytest.mark.parametrize("Q,N,sigma", central_cases())
    def test_invariants_hold(self, Q: FiniteGroup, N: int, sigma: Cochain) -> None:
        ext = central_extension(Q, N, sigma)
        assert ext.G.order == N * Q.order
        assert ext.kernel_group.order == N
        assert ext.rho.is_surjective()
        assert ext.defects() == []

    def test_bilinear_cocycle_gives_non_abelian_group(self) -> None:
        sigma = klein_bilinear()
        ext = central_extension(sigma.group, 2, sigma)
        assert not ext.G.is_abelian()

    def test_rejects_non_cocycle(self) -> None:
        z4 = make_cyclic(4)
        with pytest.raises(PreconditionViolation):
            central_extension(z4, 4, Cochain.from_entries(z4, 2, 4, {(1, 1): "1/4"}))

    def test_rejects_values_outside_fiber(self) -> None:
        z4 = make_cyclic(4)
        with pytest.raises(InvalidArgumentError, match="outside"):
            central_extension(z4, 2, Cochain.carry(z4))


class TestExtensionData:

    @pytest.fixture
    def s3_over_z2(self) -> ExtensionData:
        rho = sign(make_symmetric(3))
        return ExtensionData.from_section(rho, Section(surjection=rho, lift=np.array([0, 1])))

    def test_sign_extension(self, s3_over_z2: ExtensionData) -> None:
        assert s3_over_z2.kernel_elems == (0, 3, 4)
        assert s3_over_z2.kernel_index[1] == -1
        # the lift of the odd class is an involution
        assert gamma_of(s3_over_z2, 1, 1) == 0
        assert s3_over_z2.defects() == []

    def test_altered_gamma_is_reported(self, s3_over_z2: ExtensionData) -> None:
        gamma = np.array(s3_over_z2.gamma)
        gamma[1, 1] = 1
        defects = s3_over_z2.with_gamma(gamma).defects()
        assert "extension_gamma" in defects
        assert "extension_section" not in defects

    def test_section_in_wrong_fibers(self) -> None:
        z4 = make_cyclic(4)
        rho = GroupHom(source=z4, target=make_cyclic(2), map=np.array([0, 1, 0, 1]))
        ext = ExtensionData.from_section(rho, Section(surjection=rho, lift=np.array([0, 2])))
        assert "extension_section" in ext.defects()

    def test_section_shape(self) -> None:
        z4 = make_cyclic(4)
        rho = GroupHom(source=z4, target=make_cyclic(2), map=np.array([0, 1, 0, 1]))
        with pytest.raises(InvalidArgumentError, match="lifts"):
            Section(surjection=rho, lift=np.array([0, 1, 2]))

    def test_section_of_another_surjection(self) -> None:
        z4 = make_cyclic(4)
        rho = GroupHom(source=z4, target=make_cyclic(2), map=np.array([0, 1, 0, 1]))
        other = GroupHom(source=z4, target=make_cyclic(2), map=np.array([0, 1, 0, 1]))
        with pytest.raises(InvalidArgumentError, match="Section"):
            ExtensionData.from_section(rho, Section(surjection=other, lift=np.array([0, 1])))

    def test_not_surjective(self) -> None:
        z2 = make_cyclic(2)
        rho = GroupHom(source=z2, target=make_cyclic(4), map=np.array([0, 2]))
        with pytest.raises(InvalidArgumentError, match="not surjective"):
            ExtensionData.from_section(rho, Section(surjection=rho, lift=np.array([0, 1, 0, 1])))


class TestGammaIdentitySample:

    @pytest.mark.parametrize("case", range(4))
    def test_cohomologous_cocycles(self, case: int) -> None:
        """Each base cocycle plus six random coboundaries: 28 extensions in total."""
        Q, N, base = central_cases()[case]
        rng = np.random.default_rng(100 + case)
        for _ in range(7):
            data = rng.integers(0, N, size=Q.order)
            data[Q.identity] = 0
            sigma = base + differential(Cochain(Q, 1, N, data))
            ext = central_extension(Q, N, sigma)
            assert ext.defects() == []
            for q in Q.elements():
                for r in Q.elements():
                    for s in Q.elements():
                        left = ext.G.mul(gamma_of(ext, q, r), gamma_of(ext, Q.mul(q, r), s))
                        right = ext.G.product(
                            ext.G.mul(ext.G.mul(ext.lift(q), gamma_of(ext, r, s)), ext.G.inv(ext.lift(q))),
                            gamma_of(ext, q, Q.mul(r, s)),
                        )
                        assert left == right, (q, r, s)
