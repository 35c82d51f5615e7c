"""
=============================================================================
 SYMMETRIC SPACE LAB — SYMMETRIC SPACES & CARTAN MAPS

 Семь классических компактных семейств плюс групповой тип G x G / Δ:

   family                      ambient     σ
   ─────────────────────────   ─────────   ─────────────────────
   complex Grassmannian        U(m+n)      I_{m,n} z I_{m,n}
   real Grassmannian           SO(m+n)     I_{m,n} x I_{m,n}
   quaternionic Grassmannian   Sp(m+n)     Ĩ q Ĩ,  Ĩ = diag(I_{m,n}, I_{m,n})
   SU(n)/SO(n)                 SU(n)       z̄
   SO(2n)/U(n)                 SO(2n)      J x Jᵗ
   Sp(n)/U(n)                  Sp(n)       q̄
   SU(2n)/Sp(n)                SU(2n)      J z̄ Jᵗ
   G x G / Δ                   G x G       (p, q) ↦ (q, p)

 Отображение Картана Φ(p) = p·σ(p⁻¹). Каждая σ выше вещественно-линейна на
 матрицах, значит dσ = σ, и один и тот же код считает на массивах и джетах.
=============================================================================
"""
import logging
from functools import lru_cache
from typing import Dict

import numpy as np

from core.groups import I_mn, J_matrix, algebra_basis, gram_schmidt, require_member
from core.jets import Jet, jet_curve, value_of
from core.models import CartanResiduals, PBasis, SpaceFamily, SpaceSpec

logger = logging.getLogger(__name__)


# ═══════════════════════════════════════════════════════════
#  CONSTANTS
# ═══════════════════════════════════════════════════════════

@lru_cache(maxsize=None)
def _constants(space: SpaceSpec) -> Dict[str, np.ndarray]:
    fam, m, n = space.family, space.m, space.n
    if fam in (SpaceFamily.COMPLEX_GRASSMANNIAN, SpaceFamily.REAL_GRASSMANNIAN):
        return {"I_mn": I_mn(m, n)}
    if fam is SpaceFamily.QUATERNIONIC_GRASSMANNIAN:
        block = I_mn(m, n)
        Z = np.zeros_like(block)
        return {"I_mn": block, "I_tilde": np.block([[block, Z], [Z, block]])}
    if fam in (SpaceFamily.SO2N_UN, SpaceFamily.SU2N_SP):
        return {"J": J_matrix(n)}
    if fam is SpaceFamily.GROUP_TYPE:
        N = space.ambient.left.matrix_size
        I = np.eye(N)
        Z = np.zeros((N, N))
        return {"swap": np.block([[Z, I], [I, Z]]).astype(complex)}
    return {}


def space_constants(space: SpaceSpec) -> Dict[str, np.ndarray]:
    """Фиксированные матрицы, которыми сопрягает инволюция (копии)."""
    return {k: v.copy() for k, v in _constants(space).items()}


def expected_dimension(space: SpaceSpec) -> int:
    m, n = space.m, space.n
    if space.family is SpaceFamily.GROUP_TYPE:
        return space.ambient.left.algebra_dim
    return {
        SpaceFamily.COMPLEX_GRASSMANNIAN: 2 * m * n,
        SpaceFamily.REAL_GRASSMANNIAN: m * n,
        SpaceFamily.QUATERNIONIC_GRASSMANNIAN: 4 * m * n,
        SpaceFamily.SU_SO: (n - 1) * (n + 2) // 2,
        SpaceFamily.SO2N_UN: n * (n - 1),
        SpaceFamily.SP_U: n * (n + 1),
        SpaceFamily.SU2N_SP: 2 * n * n - n - 1,
    }[space.family]


# ═══════════════════════════════════════════════════════════
#  INVOLUTION
# ═══════════════════════════════════════════════════════════

def _sigma(space: SpaceSpec, M):
    """σ без проверки принадлежности; M может быть массивом или Jet."""
    fam = space.family
    c = _constants(space)
    if fam in (SpaceFamily.COMPLEX_GRASSMANNIAN, SpaceFamily.REAL_GRASSMANNIAN):
        return c["I_mn"] @ M @ c["I_mn"]
    if fam is SpaceFamily.QUATERNIONIC_GRASSMANNIAN:
        return c["I_tilde"] @ M @ c["I_tilde"]
    if fam in (SpaceFamily.SU_SO, SpaceFamily.SP_U):
        return M.conj()
    if fam is SpaceFamily.SO2N_UN:
        return c["J"] @ M @ c["J"].T
    if fam is SpaceFamily.SU2N_SP:
        return c["J"] @ M.conj() @ c["J"].T
    return c["swap"] @ M @ c["swap"]


def _inverse(M):
    # элементы группы унитарны; на jet-кривой p(I + tX + t²X²/2) с
    # косоэрмитовой X сопряжённая транспонированная обратна до порядка t²
    return M.conj().T


def cartan_map_unchecked(space: SpaceSpec, M):
    """Φ без проверки принадлежности; через неё идут jet-кривые."""
    return M @ _sigma(space, _inverse(M))


def involution(space: SpaceSpec, p):
    require_member(space.ambient, value_of(p))
    return _sigma(space, p)


def involution_differential(space: SpaceSpec, X) -> np.ndarray:
    """dσ(X); σ вещественно-линейна на матрицах, поэтому это σ(X)."""
    return _sigma(space, np.asarray(X, dtype=complex))


def cartan_map(space: SpaceSpec, p):
    """Φ(p) = p·σ(p⁻¹). Принимает массивы и jet-матрицы."""
    require_member(space.ambient, value_of(p))
    return cartan_map_unchecked(space, p)


# ═══════════════════════════════════════════════════════════
#  CARTAN DECOMPOSITION
# ═══════════════════════════════════════════════════════════

def _eigenspace(space: SpaceSpec, sign: int) -> np.ndarray:
    basis = algebra_basis(space.ambient)
    projected = [0.5 * (X + sign * involution_differential(space, X)) for X in basis]
    elements = gram_schmidt(projected)
    N = space.ambient.matrix_size
    if not elements:
        return np.zeros((0, N, N), dtype=complex)
    return np.array(elements, dtype=complex)


@lru_cache(maxsize=None)
def p_basis(space: SpaceSpec) -> PBasis:
    """Ортонормированный базис p = {X : dσ(X) = −X} в порядке объемлющего базиса."""
    elements = _eigenspace(space, -1)
    expected = expected_dimension(space)
    if len(elements) != expected:
        logger.warning(f"{space.label}: p-basis has {len(elements)} elements, expected {expected}")
    if not len(elements):
        logger.info(f"{space.label}: degenerate space, empty p-basis")
    return PBasis(elements, space)


@lru_cache(maxsize=None)
def k_basis(space: SpaceSpec) -> np.ndarray:
    """Ортонормированный базис неподвижной подалгебры k = {X : dσ(X) = X}."""
    return _eigenspace(space, +1)


# ═══════════════════════════════════════════════════════════
#  IDENTITIES & DIFFERENTIAL
# ═══════════════════════════════════════════════════════════

def _max_abs(A) -> float:
    return float(np.max(np.abs(A)))


def cartan_identity_residuals(space: SpaceSpec, p, q) -> CartanResiduals:
    """σ(Φ(p)) = Φ(σ(p)) = Φ(p)⁻¹ and Φ(p)Φ(q)Φ(p) = Φ(Φ(p)q)."""
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    require_member(space.ambient, p, "p")
    require_member(space.ambient, q, "q")

    phi_p = cartan_map_unchecked(space, p)
    phi_p_inv = np.linalg.inv(phi_p)
    inversion = max(
        _max_abs(_sigma(space, phi_p) - phi_p_inv),
        _max_abs(cartan_map_unchecked(space, _sigma(space, p)) - phi_p_inv),
    )
    squaring = _max_abs(
        phi_p @ cartan_map_unchecked(space, q) @ phi_p - cartan_map_unchecked(space, phi_p @ q)
    )
    return CartanResiduals(inversion=inversion, squaring=squaring)


def differential_of_cartan(space: SpaceSpec, p, X) -> np.ndarray:
    """dΦ_p(pX): первый коэффициент джета t ↦ Φ(p·exp(tX))."""
    p = np.asarray(p, dtype=complex)
    require_member(space.ambient, p)
    return cartan_map_unchecked(space, jet_curve(p, X)).first_derivative()


def differential_closed_form(space: SpaceSpec, p, X) -> np.ndarray:
    """p·X·σ(p⁻¹) − p·dσ(X)·σ(p⁻¹)."""
    p = np.asarray(p, dtype=complex)
    X = np.asarray(X, dtype=complex)
    tail = _sigma(space, _inverse(p))
    return p @ X @ tail - p @ involution_differential(space, X) @ tail


def image_curve(space: SpaceSpec, p, X) -> Jet:
    """Геодезическая s ↦ p·exp(sX)·σ(p⁻¹) образа Картана через Φ(p)."""
    p = np.asarray(p, dtype=complex)
    return jet_curve(p, X) @ _sigma(space, _inverse(p))
