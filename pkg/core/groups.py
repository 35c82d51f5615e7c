"""
=============================================================================
 SYMMETRIC SPACE LAB — CLASSICAL GROUPS

 Компактные классические группы SO(n), U(n), SU(n), Sp(n) и их алгебры Ли:
   - ортонормированные базисы из элементарных матриц
       Y_rs = (E_rs − E_sr)/√2,  X_rs = (E_rs + E_sr)/√2,  D_t = E_tt
   - невязки принадлежности и seeded сэмплинг через exp элементов алгебры
   - формы Киллинга: замкнутые формулы и brute force (trace ad_X ∘ ad_Y)

 Sp(n) всегда в комплексном представлении 2n x 2n
   q = [[z, w], [−w̄, z̄]],  J q = q̄ J,  J = [[0, I], [−I, 0]].
 Индексы с 0.
=============================================================================
"""
import logging
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from config.settings import numerics_config
from core.jets import frobenius_inner, mat_exp
from core.models import (
    AlgebraBasis, AnyGroup, DimensionError, DomainError, GroupFamily, GroupSpec,
    ProductGroupSpec,
)

logger = logging.getLogger(__name__)

SQRT2 = np.sqrt(2.0)


# ═══════════════════════════════════════════════════════════
#  ELEMENTARY MATRICES
# ═══════════════════════════════════════════════════════════

def unit_matrix(n: int, r: int, s: int) -> np.ndarray:
    E = np.zeros((n, n), dtype=complex)
    E[r, s] = 1.0
    return E


def Y_matrix(n: int, r: int, s: int) -> np.ndarray:
    return (unit_matrix(n, r, s) - unit_matrix(n, s, r)) / SQRT2


def X_matrix(n: int, r: int, s: int) -> np.ndarray:
    return (unit_matrix(n, r, s) + unit_matrix(n, s, r)) / SQRT2


def D_matrix(n: int, t: int) -> np.ndarray:
    return unit_matrix(n, t, t)


def J_matrix(n: int) -> np.ndarray:
    """J_n = [[0, I_n], [−I_n, 0]]."""
    I = np.eye(n)
    Z = np.zeros((n, n))
    return np.block([[Z, I], [-I, Z]]).astype(complex)


def I_mn(m: int, n: int) -> np.ndarray:
    """I_{m,n} = diag(I_m, −I_n)."""
    return np.diag(np.concatenate([np.ones(m), -np.ones(n)])).astype(complex)


def _pairs(n: int) -> List[Tuple[int, int]]:
    return [(r, s) for r in range(n) for s in range(r + 1, n)]


def _blocks(a, b, c, d) -> np.ndarray:
    return np.block([[a, b], [c, d]])


def bracket(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return X @ Y - Y @ X


def adjoint_action(p: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Ad_p X = p X p⁻¹."""
    return p @ X @ np.linalg.inv(p)


# ═══════════════════════════════════════════════════════════
#  GRAM–SCHMIDT
# ═══════════════════════════════════════════════════════════

def gram_schmidt(vectors, tol: float = None) -> List[np.ndarray]:
    """Модифицированный Gram–Schmidt по frobenius_inner, нулевые направления выбрасываются."""
    tol = numerics_config.GRAM_SCHMIDT_TOL if tol is None else tol
    out: List[np.ndarray] = []
    for v in vectors:
        w = np.array(v, dtype=complex)
        for e in out:
            w = w - frobenius_inner(e, w) * e
        norm = np.sqrt(frobenius_inner(w, w))
        if norm > tol:
            out.append(w / norm)
    return out


# ═══════════════════════════════════════════════════════════
#  ALGEBRA BASES
# ═══════════════════════════════════════════════════════════

def _so_basis(n: int) -> List[np.ndarray]:
    return [Y_matrix(n, r, s) for r, s in _pairs(n)]


def _u_basis(n: int) -> List[np.ndarray]:
    return (
        [Y_matrix(n, r, s) for r, s in _pairs(n)]
        + [1j * X_matrix(n, r, s) for r, s in _pairs(n)]
        + [1j * D_matrix(n, t) for t in range(n)]
    )


def _su_basis(n: int) -> List[np.ndarray]:
    # проекция базиса u(n) вдоль iI/√n, затем снова ортонормируем
    centre = 1j * np.eye(n) / np.sqrt(n)
    projected = [X - frobenius_inner(centre, X) * centre for X in _u_basis(n)]
    return gram_schmidt(projected)


def _sp_basis(n: int) -> List[np.ndarray]:
    Z = np.zeros((n, n), dtype=complex)
    Ys = [Y_matrix(n, r, s) for r, s in _pairs(n)]
    Xs = [X_matrix(n, r, s) for r, s in _pairs(n)]
    Ds = [D_matrix(n, t) for t in range(n)]
    elements = (
        [_blocks(Y, Z, Z, Y) for Y in Ys]
        + [_blocks(1j * X, Z, Z, -1j * X) for X in Xs]
        + [_blocks(1j * D, Z, Z, -1j * D) for D in Ds]
        + [_blocks(Z, X, -X, Z) for X in Xs]
        + [_blocks(Z, 1j * X, 1j * X, Z) for X in Xs]
        + [_blocks(Z, D, -D, Z) for D in Ds]
        + [_blocks(Z, 1j * D, 1j * D, Z) for D in Ds]
    )
    return [E / SQRT2 for E in elements]


@lru_cache(maxsize=None)
def algebra_basis(g: AnyGroup) -> AlgebraBasis:
    """Ортонормированный базис алгебры Ли группы g в фиксированном порядке."""
    if isinstance(g, ProductGroupSpec):
        left, right = algebra_basis(g.left), algebra_basis(g.right)
        a, b = g.left.matrix_size, g.right.matrix_size
        Za, Zb = np.zeros((a, b)), np.zeros((b, a))
        elements = (
            [_blocks(X, Za, Zb, np.zeros((b, b))) for X in left]
            + [_blocks(np.zeros((a, a)), Za, Zb, Y) for Y in right]
        )
        return AlgebraBasis(np.array(elements, dtype=complex), g)

    n = g.n
    if g.family in (GroupFamily.SO, GroupFamily.SU) and n < 2:
        raise DomainError(f"{g.label} has a trivial Lie algebra; need n >= 2")

    builder = {
        GroupFamily.SO: _so_basis,
        GroupFamily.U: _u_basis,
        GroupFamily.SU: _su_basis,
        GroupFamily.SP: _sp_basis,
    }[g.family]
    elements = builder(n)
    if len(elements) != g.algebra_dim:
        raise DomainError(f"{g.label}: built {len(elements)} basis elements, expected {g.algebra_dim}")
    N = g.matrix_size
    return AlgebraBasis(np.array(elements, dtype=complex).reshape(-1, N, N), g)


def basis_coefficients(basis: AlgebraBasis, Z: np.ndarray) -> np.ndarray:
    return np.array([frobenius_inner(E, Z) for E in basis])


def expand(basis: AlgebraBasis, coefficients) -> np.ndarray:
    return np.tensordot(np.asarray(coefficients, dtype=float), basis.elements, axes=1)


def square_sum_identities(n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(Σ Y_rs², Σ X_rs², Σ D_t²) = (−(n−1)/2·I, (n−1)/2·I, I)."""
    if n < 2:
        raise DomainError("square-sum identities need n >= 2")
    ys = sum(Y_matrix(n, r, s) @ Y_matrix(n, r, s) for r, s in _pairs(n))
    xs = sum(X_matrix(n, r, s) @ X_matrix(n, r, s) for r, s in _pairs(n))
    ds = sum(D_matrix(n, t) @ D_matrix(n, t) for t in range(n))
    return ys, xs, ds


def coordinate_tension_constant(g: GroupSpec) -> float:
    """c такое, что Σ_k X_k² = c·I, т.е. τ(z_jα) = c·z_jα на g."""
    n = g.n
    return {
        GroupFamily.SO: -(n - 1) / 2,
        GroupFamily.U: -float(n),
        GroupFamily.SU: -(n * n - 1) / n,
        GroupFamily.SP: -(2 * n + 1) / 2,
    }[g.family]


# ═══════════════════════════════════════════════════════════
#  MEMBERSHIP
# ═══════════════════════════════════════════════════════════

def _check_shape(g: AnyGroup, M: np.ndarray):
    N = g.matrix_size
    if M.shape != (N, N):
        raise DimensionError(f"{g.label} needs a {N}x{N} matrix, got {M.shape}")


def _max_abs(A: np.ndarray) -> float:
    return float(np.max(np.abs(A))) if A.size else 0.0


def membership_residual(g: AnyGroup, M) -> float:
    """Максимальная невязка определяющих уравнений g; 0 значит элемент группы."""
    M = np.asarray(M, dtype=complex)
    _check_shape(g, M)

    if isinstance(g, ProductGroupSpec):
        a = g.left.matrix_size
        return max(
            membership_residual(g.left, M[:a, :a]),
            membership_residual(g.right, M[a:, a:]),
            _max_abs(M[:a, a:]),
            _max_abs(M[a:, :a]),
        )

    I = np.eye(M.shape[0])
    if g.family is GroupFamily.SO:
        residuals = [_max_abs(M.T @ M - I), abs(np.linalg.det(M) - 1), _max_abs(M.imag)]
    else:
        residuals = [_max_abs(M.conj().T @ M - I)]
        if g.family is GroupFamily.SU:
            residuals.append(abs(np.linalg.det(M) - 1))
        if g.family is GroupFamily.SP:
            J = J_matrix(g.n)
            residuals.append(_max_abs(J @ M - M.conj() @ J))
    return float(max(residuals))


def algebra_residual(g: GroupSpec, X) -> float:
    """Максимальная невязка линейных условий, задающих алгебру Ли g."""
    X = np.asarray(X, dtype=complex)
    _check_shape(g, X)
    residuals = [_max_abs(X.conj().T + X)]
    if g.family is GroupFamily.SO:
        residuals.append(_max_abs(X.imag))
    elif g.family is GroupFamily.SU:
        residuals.append(abs(np.trace(X)))
    elif g.family is GroupFamily.SP:
        J = J_matrix(g.n)
        residuals.append(_max_abs(J @ X - X.conj() @ J))
    return float(max(residuals))


def require_member(g: AnyGroup, M, what: str = "point"):
    res = membership_residual(g, M)
    if res > numerics_config.MEMBERSHIP_TOL:
        raise DomainError(f"{what} is not in {g.label} (residual {res:.3e})")


# ═══════════════════════════════════════════════════════════
#  SAMPLING
# ═══════════════════════════════════════════════════════════

def random_algebra_element(g: AnyGroup, rng: np.random.Generator, scale: float = None) -> np.ndarray:
    scale = numerics_config.SAMPLE_SCALE if scale is None else scale
    basis = algebra_basis(g)
    return expand(basis, scale * rng.standard_normal(len(basis)))


def sample_group_element(g: AnyGroup, seed: int, scale: float = None) -> np.ndarray:
    """exp гауссовского элемента алгебры; детерминирован по `seed`."""
    rng = np.random.default_rng(seed)
    return mat_exp(random_algebra_element(g, rng, scale))


def sample_points(g: AnyGroup, seed: int, count: int) -> List[np.ndarray]:
    """`count` независимых seeded элементов (по spawned seed на точку)."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [sample_group_element(g, int(c.generate_state(1)[0])) for c in children]


# ═══════════════════════════════════════════════════════════
#  KILLING FORMS
# ═══════════════════════════════════════════════════════════

def _require_algebra(g: GroupSpec, *elements):
    for X in elements:
        res = algebra_residual(g, X)
        if res > numerics_config.ALGEBRA_TOL:
            raise DomainError(f"input is not in the Lie algebra of {g.label} (residual {res:.3e})")


def killing_form(g: GroupSpec, X, Y) -> float:
    """Замкнутые формулы:
        so(n): (n−2)·tr(XY)
        u(n):  2n·tr(XY) − 2·tr X·tr Y
        su(n): 2n·tr(XY)
        sp(n): 2(n+1)·tr(XY)   (комплексное представление 2n x 2n)
    """
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    _require_algebra(g, X, Y)
    n = g.n
    tr = np.trace(X @ Y)
    if g.family is GroupFamily.SO:
        value = (n - 2) * tr
    elif g.family is GroupFamily.U:
        value = 2 * n * tr - 2 * np.trace(X) * np.trace(Y)
    elif g.family is GroupFamily.SU:
        value = 2 * n * tr
    else:
        value = 2 * (n + 1) * tr
    return float(np.real(value))


def killing_form_bruteforce(g: GroupSpec, X, Y) -> float:
    """trace(ad_X ∘ ad_Y) в ортонормированном базисе алгебры."""
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    _require_algebra(g, X, Y)
    basis = algebra_basis(g)
    return float(sum(frobenius_inner(E, bracket(X, bracket(Y, E))) for E in basis))
