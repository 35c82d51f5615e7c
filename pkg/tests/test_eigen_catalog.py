"""
=============================================================================
 TESTS — eigenfunction and eigenfamily catalog
 Run: pytest tests/test_eigen_catalog.py -v
=============================================================================
"""
import numpy as np
import pytest
import sympy

from core.calculus import conformality, tension
from core.eigen_catalog import (
    catalog_for_space, complex_grassmannian_family, complex_grassmannian_function,
    find_candidate, grassmannian_polynomial, isotropic_plane, isotropic_vector,
    quaternionic_blocks, quaternionic_grassmannian_family, quaternionic_grassmannian_function,
    real_grassmannian_eigenfunction, real_grassmannian_function, so2n_un_eigenfunction,
    spn_un_eigenfunction, su2n_spn_eigenfunction, su_so_eigenfunction,
)
from core.groups import sample_points
from core.jets import mat_exp
from core.models import (
    DegeneracyError, DomainError, IsotropicVector, SpaceFamily, SpaceSpec, UsageError,
)
from core.symmetric_spaces import k_basis
from core.verification import verify_candidates

F = SpaceFamily

ACCEPTANCE = [
    SpaceSpec(F.COMPLEX_GRASSMANNIAN, n=1, m=1),
    SpaceSpec(F.COMPLEX_GRASSMANNIAN, n=2, m=1),
    SpaceSpec(F.COMPLEX_GRASSMANNIAN, n=2, m=2),
    SpaceSpec(F.REAL_GRASSMANNIAN, n=1, m=2),
    SpaceSpec(F.REAL_GRASSMANNIAN, n=2, m=2),
    SpaceSpec(F.REAL_GRASSMANNIAN, n=2, m=3),
    SpaceSpec(F.QUATERNIONIC_GRASSMANNIAN, n=1, m=1),
    SpaceSpec(F.QUATERNIONIC_GRASSMANNIAN, n=2, m=1),
    SpaceSpec(F.SU_SO, n=2),
    SpaceSpec(F.SU_SO, n=3),
    SpaceSpec(F.SU_SO, n=4),
    SpaceSpec(F.SO2N_UN, n=2),
    SpaceSpec(F.SO2N_UN, n=3),
    SpaceSpec(F.SP_U, n=1),
    SpaceSpec(F.SP_U, n=2),
    SpaceSpec(F.SP_U, n=3),
    SpaceSpec(F.SU2N_SP, n=2),
    SpaceSpec(F.SU2N_SP, n=3),
]
IDS = [s.label for s in ACCEPTANCE]


# ═══════════════════════════════════════════════════════════
#  TEST: EIGEN-RESIDUALS
# ═══════════════════════════════════════════════════════════

class TestEigenResiduals:
    """Тесты невязок каталога"""

    @pytest.mark.parametrize("space", ACCEPTANCE, ids=IDS)
    def test_catalog_passes(self, space):
        """τψ = λψ, κ(ψ,ψ) = μψ² (и перекрёстные члены семейства) в seeded точках"""
        report = verify_candidates(catalog_for_space(space, seed=3), space.label,
                                   samples=100, seed=11, tol=1e-8)
        assert report.passed, report

    @pytest.mark.parametrize("space", ACCEPTANCE, ids=IDS)
    def test_k_invariance(self, space, rng):
        """ψ(p·k) = ψ(p) для k из неподвижной подгруппы"""
        K = k_basis(space)
        candidates = catalog_for_space(space, seed=5)
        for p in sample_points(space.ambient, 9, 3):
            for _ in range(3):
                k = mat_exp(np.tensordot(rng.standard_normal(len(K)), K, axes=1))
                for c in candidates:
                    assert abs(c.field(p @ k) - c.field(p)) < 1e-9

    def test_wrong_eigenvalue_fails(self):
        """Кандидат со сдвинутым λ не проходит"""
        import dataclasses

        c = su_so_eigenfunction(3, [1, 0, 0])
        bad = dataclasses.replace(c, lam=c.lam + 0.5)
        report = verify_candidates([bad], "su-so", samples=5, seed=1, tol=1e-8)
        assert not report.passed
        assert report.max_tau_residual > 1e-3

    @pytest.mark.parametrize("samples", [0, -3])
    def test_needs_sample_points(self, samples):
        """Ноль точек даёт DomainError, а не «пройдено»"""
        with pytest.raises(DomainError):
            verify_candidates([su_so_eigenfunction(3, [1, 0, 0])], "su-so", samples=samples, seed=1, tol=1e-8)


# ═══════════════════════════════════════════════════════════
#  TEST: CLAIMED EIGENVALUES
# ═══════════════════════════════════════════════════════════

class TestClaimedEigenvalues:
    """Тесты заявленных (λ, μ)"""

    def test_complex_grassmannian(self):
        """(1,1): λ = −4, μ = −2, один член"""
        family = complex_grassmannian_family(1, 1, 0)
        assert len(family) == 1
        assert (family[0].lam, family[0].mu) == (-4, -2)
        assert family[0].name == "psi_1_0"

    def test_real_grassmannian(self):
        """(2,1), v = (1, i, 0): λ = −3, μ = −2 and ψ_v(I) = 0"""
        c = real_grassmannian_eigenfunction(2, 1, [1, 1j, 0])
        assert (c.lam, c.mu) == (-3, -2)
        assert abs(c.field(np.eye(3))) < 1e-15

    def test_quaternionic_grassmannian(self):
        """(1,1): λ = −4, μ = −1, 2(m+n) − 1 членов"""
        family = quaternionic_grassmannian_family(1, 1, 2)
        assert len(family) == 3
        assert (family[0].lam, family[0].mu) == (-4, -1)

    def test_su_so_exact(self):
        """n = 3: λ = −20/3, μ = −8/3 хранятся точно"""
        c = su_so_eigenfunction(3, [1, 0, 0])
        assert c.exact == (sympy.Rational(-20, 3), sympy.Rational(-8, 3))
        assert su_so_eigenfunction(2, [1, 2]).lam == -4

    def test_su_so_ratio(self):
        """n = 3, a = e₁: τ(φ)/φ = −20/3"""
        c = su_so_eigenfunction(3, [1, 0, 0])
        for p in sample_points(c.group, 4, 3):
            assert tension(c.field, c.group, p) / c.field(p) == pytest.approx(-20 / 3, rel=1e-8)

    def test_sp_u(self):
        """n = 1: λ = −4, μ = −2; φ(e) = Σ a_j²"""
        c = spn_un_eigenfunction(1, [1, 1j])
        assert (c.lam, c.mu) == (-4, -2)
        assert c.field(np.eye(2)) == pytest.approx(0)
        for p in sample_points(c.group, 2, 3):
            ratio = conformality(c.field, c.field, c.group, p) / c.field(p) ** 2
            assert ratio == pytest.approx(-2, rel=1e-8)

    def test_so2n_un(self):
        """n = 2: λ = −2, μ = −1; a ↔ b меняет знак поля"""
        a, b = [1, 0, 1j, 0], [0, 1, 0, 1j]
        c = so2n_un_eigenfunction(2, a, b)
        swapped = so2n_un_eigenfunction(2, b, a)
        assert (c.lam, c.mu) == (-2, -1)
        assert c.field(np.eye(4)) == pytest.approx(0)
        for p in sample_points(c.group, 3, 3):
            assert swapped.field(p) == pytest.approx(-c.field(p))

    def test_su2n_spn(self):
        """n = 2: λ = −5, μ = −1"""
        c = su2n_spn_eigenfunction(2, [1, 2, 0, 1j], [0, 1, 1, 0])
        assert (c.lam, c.mu) == (-5, -1)

    def test_su2n_spn_degenerate(self):
        """SU(2)/Sp(1) есть точка"""
        with pytest.raises(DegeneracyError):
            su2n_spn_eigenfunction(1, [1, 0], [0, 1])

    def test_vanishes_at_identity_off_diagonal(self):
        """ψ_jα(I) = 0 при j ≠ α"""
        for c in complex_grassmannian_family(1, 2, 1) + quaternionic_grassmannian_family(1, 1, 0):
            assert abs(c.field(np.eye(c.group.matrix_size))) < 1e-15


# ═══════════════════════════════════════════════════════════
#  TEST: WORKED EXAMPLE & POLYNOMIAL FORMS
# ═══════════════════════════════════════════════════════════

class TestPolynomialForms:
    """Тесты полиномиальных форм"""

    def test_worked_example(self):
        """z = [[1,1],[−1,1]]/√2: ψ₀₁(z) = −1/2 и τ(ψ₀₁)(z) = 2"""
        from core.models import GroupFamily, GroupSpec

        z = np.array([[1, 1], [-1, 1]], dtype=complex) / np.sqrt(2)
        f = complex_grassmannian_function(1, 1, 0, 1)
        assert f(z) == pytest.approx(-0.5)
        assert tension(f, GroupSpec(GroupFamily.U, 2), z) == pytest.approx(2.0)

    def test_complex_polynomial_form(self, points):
        """½(zI_{m,n}z̄ᵗ + I)_jα = Σ_{r<m} z_jr z̄_αr"""
        f = complex_grassmannian_function(2, 1, 2, 0)
        for z in points(f.group, 3):
            assert f(z) == pytest.approx(grassmannian_polynomial(z, 2, 0, 2))

    def test_real_polynomial_form(self, points):
        """ψ_jα(x) = Σ_{r<m} x_jr x_αr"""
        f = real_grassmannian_function(2, 2, 3, 1)
        for x in points(f.group, 3):
            assert f(x) == pytest.approx(x[3, 0] * x[1, 0] + x[3, 1] * x[1, 1])

    def test_quaternionic_blocks(self, points):
        """ψ_jα = f_jα and ψ_{j,α+m+n} = g_jα"""
        m, n = 1, 2
        k = m + n
        for q in points(quaternionic_grassmannian_function(m, n, 0, 0).group, 3):
            f, g = quaternionic_blocks(q, m, n)
            for j in range(k):
                for a in range(k):
                    assert abs(quaternionic_grassmannian_function(m, n, j, a)(q) - f[j, a]) < 1e-12
                    assert abs(quaternionic_grassmannian_function(m, n, j, a + k)(q) - g[j, a]) < 1e-12


# ═══════════════════════════════════════════════════════════
#  TEST: DIAGONAL TERMS
# ═══════════════════════════════════════════════════════════

class TestDiagonalTerms:
    """τψ_jj = λψ_jj + c, т.к. Σ_j ψ_jj постоянна."""

    def test_complex_grassmannian(self, points):
        """c = 2m"""
        m, n = 1, 2
        f = complex_grassmannian_function(m, n, 0, 0)
        for p in points(f.group, 3):
            assert tension(f, f.group, p) == pytest.approx(-2 * (m + n) * f(p) + 2 * m)

    def test_real_grassmannian(self, points):
        """c = m"""
        m, n = 2, 1
        f = real_grassmannian_function(m, n, 1, 1)
        for p in points(f.group, 3):
            assert tension(f, f.group, p) == pytest.approx(-(m + n) * f(p) + m)

    def test_quaternionic_grassmannian(self, points):
        """c = 2m"""
        m, n = 1, 1
        f = quaternionic_grassmannian_function(m, n, 1, 1)
        for p in points(f.group, 3):
            assert tension(f, f.group, p) == pytest.approx(-2 * (m + n) * f(p) + 2 * m)


# ═══════════════════════════════════════════════════════════
#  TEST: ISOTROPIC VECTORS & INPUT CHECKS
# ═══════════════════════════════════════════════════════════

class TestIsotropic:
    """Тесты изотропных векторов и плоскостей"""

    def test_canonical_vector(self):
        """dim 2, канонический: (1, i)/√2"""
        v = isotropic_vector(2).entries
        assert np.allclose(v, np.array([1, 1j]) / np.sqrt(2))

    def test_pythagorean_vector(self):
        """(3, 4, 5i) изотропен"""
        v = IsotropicVector(np.array([3, 4, 5j]) / np.sqrt(50))
        assert abs(np.sum(v.entries ** 2)) < 1e-15

    @pytest.mark.parametrize("seed", [0, 1, 2, 17, 123])
    def test_seeded_vector(self, seed):
        """Единичная норма и Σv² ≈ 0 при любом seed"""
        v = isotropic_vector(5, seed).entries
        assert abs(np.sum(v * v)) < 1e-14
        assert np.linalg.norm(v) == pytest.approx(1.0)

    @pytest.mark.parametrize("seed", [None, 0, 4, 99])
    def test_plane(self, seed):
        """Три билинейных произведения = 0, ранг пары = 2"""
        a, b = (x.entries for x in isotropic_plane(6, seed))
        assert max(abs(a @ a), abs(b @ b), abs(a @ b)) < 1e-13
        assert np.linalg.matrix_rank(np.vstack([a, b])) == 2

    def test_canonical_plane(self):
        """dim 4: (1,0,i,0)/√2 and (0,1,0,i)/√2"""
        a, b = isotropic_plane(4)
        assert np.allclose(a.entries, np.array([1, 0, 1j, 0]) / np.sqrt(2))
        assert np.allclose(b.entries, np.array([0, 1, 0, 1j]) / np.sqrt(2))

    def test_small_dimensions_rejected(self):
        """dim < 2 (вектор) и dim < 4 (плоскость) → ошибка"""
        with pytest.raises(DomainError):
            isotropic_vector(1)
        with pytest.raises(DomainError):
            isotropic_plane(3)

    def test_non_isotropic_rejected(self):
        """(1, 0, 0) не изотропен"""
        with pytest.raises(DomainError):
            real_grassmannian_eigenfunction(2, 1, [1, 0, 0])

    def test_non_isotropic_plane_rejected(self):
        """a, b должны натягивать изотропную плоскость"""
        with pytest.raises(DomainError):
            so2n_un_eigenfunction(2, [1, 0, 1j, 0], [0, 1, 0, 1])

    def test_dependent_pair_rejected(self):
        """b = 2a линейно зависим"""
        with pytest.raises(DomainError):
            su2n_spn_eigenfunction(2, [1, 2, 3, 4], [2, 4, 6, 8])

    def test_zero_vector_rejected(self):
        """a = 0 не даёт собственной функции"""
        with pytest.raises(DomainError):
            su_so_eigenfunction(3, [0, 0, 0])

    def test_alpha_out_of_range(self):
        """α должен быть номером строки"""
        with pytest.raises(DomainError):
            complex_grassmannian_family(1, 1, 2)


class TestCatalogLookup:
    """Тесты поиска по каталогу"""

    def test_find_candidate(self):
        """Кандидаты ищутся по имени"""
        space = SpaceSpec(F.COMPLEX_GRASSMANNIAN, n=2, m=1)
        names = [c.name for c in catalog_for_space(space)]
        assert names == ["psi_1_0", "psi_2_0"]
        assert find_candidate(catalog_for_space(space), "psi_2_0").name == "psi_2_0"

    def test_unknown_candidate(self):
        """Неизвестное имя → UsageError"""
        with pytest.raises(UsageError):
            find_candidate(catalog_for_space(SpaceSpec(F.SP_U, n=1)), "psi_1_0")

    def test_group_type_has_no_catalog(self):
        """У G x G / Δ нет каталога собственных функций"""
        from core.models import GroupFamily

        with pytest.raises(UsageError):
            catalog_for_space(SpaceSpec(F.GROUP_TYPE, n=2, group=GroupFamily.SU))
