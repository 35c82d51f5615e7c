"""
=============================================================================
 TESTS — involutions, Cartan maps, Cartan decomposition
 Run: pytest tests/test_symmetric_spaces.py -v
=============================================================================
"""
import numpy as np
import pytest

from core.calculus import (
    conformality, conformality_on_image, conformality_restricted, coordinate_field,
    pullback_by_cartan, tension, tension_on_image, tension_restricted,
)
from core.groups import algebra_basis, sample_points
from core.jets import frobenius_inner, jet_curve, mat_exp, value_of
from core.models import DomainError, GroupFamily, SpaceFamily, SpaceSpec
from core.symmetric_spaces import (
    cartan_identity_residuals, cartan_map, cartan_map_unchecked, differential_closed_form,
    differential_of_cartan, expected_dimension, involution, involution_differential, k_basis, p_basis,
)

F = SpaceFamily

SPACES = [
    SpaceSpec(F.COMPLEX_GRASSMANNIAN, n=1, m=1),
    SpaceSpec(F.COMPLEX_GRASSMANNIAN, n=2, m=1),
    SpaceSpec(F.COMPLEX_GRASSMANNIAN, n=2, m=2),
    SpaceSpec(F.REAL_GRASSMANNIAN, n=1, m=2),
    SpaceSpec(F.REAL_GRASSMANNIAN, n=2, m=2),
    SpaceSpec(F.QUATERNIONIC_GRASSMANNIAN, n=1, m=1),
    SpaceSpec(F.QUATERNIONIC_GRASSMANNIAN, n=2, m=1),
    SpaceSpec(F.SU_SO, n=2),
    SpaceSpec(F.SU_SO, n=3),
    SpaceSpec(F.SO2N_UN, n=2),
    SpaceSpec(F.SO2N_UN, n=3),
    SpaceSpec(F.SP_U, n=1),
    SpaceSpec(F.SP_U, n=2),
    SpaceSpec(F.SU2N_SP, n=2),
    SpaceSpec(F.GROUP_TYPE, n=2, group=GroupFamily.SU),
    SpaceSpec(F.GROUP_TYPE, n=3, group=GroupFamily.SO),
]
IDS = [s.label for s in SPACES]


# ═══════════════════════════════════════════════════════════
#  TEST: CARTAN DECOMPOSITION
# ═══════════════════════════════════════════════════════════

class TestCartanDecomposition:
    """Тесты разложения g = k ⊕ p"""

    @pytest.mark.parametrize("space", SPACES, ids=IDS)
    def test_p_dimension(self, space):
        """dim p = dim G/K из замкнутой формулы"""
        assert len(p_basis(space)) == expected_dimension(space)

    @pytest.mark.parametrize("space", SPACES, ids=IDS)
    def test_p_orthonormal_and_anti_fixed(self, space):
        """p-базис ортонормирован и dσ(X) = −X"""
        basis = p_basis(space)
        gram = np.array([[frobenius_inner(a, b) for b in basis] for a in basis])
        assert np.max(np.abs(gram - np.eye(len(basis)))) < 1e-12
        for X in basis:
            assert np.max(np.abs(involution_differential(space, X) + X)) < 1e-12

    @pytest.mark.parametrize("space", SPACES, ids=IDS)
    def test_k_complements_p(self, space):
        """dim k + dim p = dim g и k ⊥ p"""
        k, p = k_basis(space), p_basis(space)
        assert len(k) + len(p) == space.ambient.algebra_dim
        for A in k:
            for B in p:
                assert abs(frobenius_inner(A, B)) < 1e-12

    def test_dimension_table(self):
        """Примеры из таблицы размерностей"""
        assert expected_dimension(SpaceSpec(F.COMPLEX_GRASSMANNIAN, n=3, m=2)) == 12
        assert expected_dimension(SpaceSpec(F.SU_SO, n=4)) == 9
        assert expected_dimension(SpaceSpec(F.SU2N_SP, n=3)) == 14
        assert expected_dimension(SpaceSpec(F.GROUP_TYPE, n=2, group=GroupFamily.SP)) == 10


# ═══════════════════════════════════════════════════════════
#  TEST: INVOLUTION & CARTAN MAP
# ═══════════════════════════════════════════════════════════

class TestCartanMap:
    """Тесты инволюций и отображения Картана"""

    @pytest.mark.parametrize("space", SPACES, ids=IDS)
    def test_involution_is_involutive(self, space, points):
        """σ(σ(p)) = p и σ(p) остаётся в G"""
        from core.groups import membership_residual

        for p in points(space.ambient, 5):
            s = involution(space, p)
            assert membership_residual(space.ambient, s) < 1e-10
            assert np.allclose(involution(space, s), p, atol=1e-12)

    @pytest.mark.parametrize("space", SPACES, ids=IDS)
    def test_cartan_identities(self, space):
        """σ(Φ(p)) = Φ(p)⁻¹ и Φ(p)Φ(q)Φ(p) = Φ(Φ(p)q)"""
        ps = sample_points(space.ambient, 1, 100)
        qs = sample_points(space.ambient, 2, 100)
        worst = max(cartan_identity_residuals(space, p, q).worst for p, q in zip(ps, qs))
        assert worst < 1e-10

    @pytest.mark.parametrize("space", SPACES, ids=IDS)
    def test_conformal_factor_four(self, space, points):
        """‖dΦ_p(pX)‖² = 4 для единичного X ∈ p"""
        for p in points(space.ambient, 20):
            for X in p_basis(space):
                dphi = differential_of_cartan(space, p, X)
                assert frobenius_inner(dphi, dphi) == pytest.approx(4.0, abs=1e-9)

    @pytest.mark.parametrize("space", SPACES[:6], ids=IDS[:6])
    def test_differential_closed_form(self, space, points):
        """Jet-дифференциал = pXσ(p⁻¹) − p·dσ(X)·σ(p⁻¹)"""
        p = points(space.ambient, 1)[0]
        for X in algebra_basis(space.ambient):
            assert np.allclose(differential_of_cartan(space, p, X),
                               differential_closed_form(space, p, X), atol=1e-12)

    def test_identity_maps_to_identity(self):
        """Φ(e) = e"""
        space = SpaceSpec(F.SO2N_UN, n=2)
        assert np.allclose(cartan_map(space, np.eye(4)), np.eye(4))

    def test_non_member_rejected(self):
        """Φ от не-элемента группы → DomainError"""
        space = SpaceSpec(F.SU_SO, n=2)
        with pytest.raises(DomainError):
            cartan_map(space, 2 * np.eye(2))

    def test_k_elements_are_fixed(self, rng):
        """exp элемента k неподвижен под σ"""
        space = SpaceSpec(F.SU2N_SP, n=2)
        K = k_basis(space)
        k = mat_exp(np.tensordot(rng.standard_normal(len(K)), K, axes=1))
        assert np.allclose(involution(space, k), k, atol=1e-12)

    @pytest.mark.parametrize("space", SPACES, ids=IDS)
    def test_exp_of_p_doubles(self, space, rng):
        """Φ(exp X) = exp(2X) для X ∈ p"""
        P = p_basis(space)
        for _ in range(3):
            X = np.tensordot(0.5 * rng.standard_normal(len(P)), P.elements, axes=1)
            assert np.max(np.abs(cartan_map(space, mat_exp(X)) - mat_exp(2 * X))) < 1e-10

    @pytest.mark.parametrize("space", SPACES, ids=IDS)
    def test_constant_on_k_cosets(self, space, points):
        """Φ(p·exp Y) = Φ(p) для Y ∈ k"""
        K = k_basis(space)
        for p in points(space.ambient, 3):
            for Y in K:
                assert np.max(np.abs(cartan_map(space, p @ mat_exp(0.7 * Y)) - cartan_map(space, p))) < 1e-10

    def test_projective_line(self, points):
        """U(2)/U(1)×U(1): σ меняет знак внедиагональных элементов, Φ([[0, 1], [−1, 0]]) = −I₂"""
        space = SpaceSpec(F.COMPLEX_GRASSMANNIAN, n=1, m=1)
        for p in points(space.ambient, 3):
            s = involution(space, p)
            assert np.allclose(np.diag(s), np.diag(p), atol=1e-14)
            assert np.allclose([s[0, 1], s[1, 0]], [-p[0, 1], -p[1, 0]], atol=1e-14)
        swap = np.array([[0, 1], [-1, 0]], dtype=complex)
        assert np.allclose(cartan_map(space, swap), -np.eye(2), atol=1e-14)

    @pytest.mark.parametrize("space", SPACES, ids=IDS)
    def test_unchecked_map_on_jets(self, space, points):
        """Значение Φ на джете совпадает с Φ(p)"""
        p = points(space.ambient, 1)[0]
        for X in p_basis(space):
            curve_image = cartan_map_unchecked(space, jet_curve(p, X))
            assert np.allclose(value_of(curve_image), cartan_map(space, p), atol=1e-12)


# ═══════════════════════════════════════════════════════════
#  TEST: COMPOSITION RELATIONS
# ═══════════════════════════════════════════════════════════

class TestCompositionRelations:
    """Тесты композиции с Φ"""

    @pytest.mark.parametrize("space", SPACES, ids=IDS)
    def test_full_basis_equals_restricted(self, space, points):
        """τ(f∘Φ) по g = сумма по p-базису"""
        f = coordinate_field(space.ambient, 0, 1)
        pulled = pullback_by_cartan(f, space)
        for p in points(space.ambient, 20):
            full = tension(pulled, space.ambient, p)
            assert abs(full - tension_restricted(f, space, p)) < 1e-9

    @pytest.mark.parametrize("space", SPACES, ids=IDS)
    def test_factor_four_on_image(self, space, points):
        """τ(f∘Φ) = 4·τ_N(f) and κ(f∘Φ, h∘Φ) = 4·κ_N(f, h)"""
        f = coordinate_field(space.ambient, 0, 0)
        h = coordinate_field(space.ambient, 1, 0, conjugate=True)
        for p in points(space.ambient, 3):
            assert abs(tension_restricted(f, space, p) - 4 * tension_on_image(f, space, p)) < 1e-9
            assert abs(conformality_restricted(f, h, space, p)
                       - 4 * conformality_on_image(f, h, space, p)) < 1e-9

    def test_conformality_pullback(self, points):
        """κ(f∘Φ, h∘Φ) по g = сумма по p-базису"""
        space = SpaceSpec(F.QUATERNIONIC_GRASSMANNIAN, n=1, m=1)
        f = coordinate_field(space.ambient, 0, 2)
        h = coordinate_field(space.ambient, 3, 1, conjugate=True)
        for p in points(space.ambient, 3):
            full = conformality(pullback_by_cartan(f, space), pullback_by_cartan(h, space), space.ambient, p)
            assert abs(full - conformality_restricted(f, h, space, p)) < 1e-9

    def test_space_constants_are_copies(self):
        """Изменение возвращённых матриц не влияет на σ"""
        from core.symmetric_spaces import space_constants

        space = SpaceSpec(F.COMPLEX_GRASSMANNIAN, n=2, m=1)
        consts = space_constants(space)
        assert np.allclose(consts["I_mn"], np.diag([1.0, -1.0, -1.0]))
        consts["I_mn"][:] = 0
        assert np.allclose(involution(space, np.eye(3)), np.eye(3))
