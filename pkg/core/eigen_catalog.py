"""
=============================================================================
 SYMMETRIC SPACE LAB — EIGEN CATALOG

 K-инвариантные собственные функции и семейства на классических
 симметрических пространствах, реализованные на объемлющей группе G.
 Кандидат несёт заявленные (λ, μ): τ(ψ) = λψ, κ(ψ, ψ) = μψ² (и
 κ(ψ, ψ') = μψψ' внутри семейства). Заявка хранится как данные, из поля она
 не вычисляется.

   space                        λ                    μ
   ──────────────────────────   ──────────────────   ───────────
   U(m+n)/U(m)xU(n)             −2(m+n)              −2
   SO(m+n)/SO(m)xSO(n)          −(m+n)               −2
   Sp(m+n)/Sp(m)xSp(n)          −2(m+n)              −1
   SU(n)/SO(n)                  −2(n²+n−2)/n         −4(n−1)/n
   SO(2n)/U(n)                  −2(n−1)              −1
   Sp(n)/U(n)                   −2(n+1)              −2
   SU(2n)/Sp(n)                 −2(2n²−n−1)/n        −2(n−1)/n
=============================================================================
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy

from config.settings import numerics_config
from core.groups import I_mn, J_matrix
from core.models import (
    DegeneracyError, DimensionError, DomainError, EigenCandidate, IsotropicVector,
    ScalarField, SpaceFamily, SpaceSpec, UsageError,
)

logger = logging.getLogger(__name__)


def _candidate(field: ScalarField, lam, mu, space: SpaceSpec, tag: str, name: str) -> EigenCandidate:
    lam, mu = sympy.nsimplify(lam), sympy.nsimplify(mu)
    return EigenCandidate(
        field=field,
        lam=complex(lam),
        mu=complex(mu),
        space=space,
        family_tag=tag,
        k_invariant=True,
        name=name,
        exact=(lam, mu),
    )


def _vector(a, length: int, what: str) -> np.ndarray:
    a = np.asarray(a.entries if isinstance(a, IsotropicVector) else a, dtype=complex)
    if a.shape != (length,):
        raise DimensionError(f"{what} must have length {length}, got shape {a.shape}")
    return a


def _require_nonzero(a: np.ndarray, what: str):
    if not np.any(a):
        raise DomainError(f"{what} must be non-zero")


def _require_independent(a: np.ndarray, b: np.ndarray):
    if np.linalg.matrix_rank(np.vstack([a, b]), tol=1e-10) < 2:
        raise DomainError("vectors a and b must be linearly independent")


def skew_from_pair(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """A = Σ_{r,s} a_r b_s Y_rs = (a bᵗ − b aᵗ)/√2."""
    return (np.outer(a, b) - np.outer(b, a)) / np.sqrt(2.0)


# ═══════════════════════════════════════════════════════════
#  GRASSMANNIANS
# ═══════════════════════════════════════════════════════════

def grassmannian_polynomial(z, j: int, alpha: int, m: int):
    """Σ_{r<m} z_jr z̄_αr, полиномиальная форма комплексных грассманиановых функций."""
    return (z[j, :m] * z.conj()[alpha, :m]).sum()


def _check_alpha(alpha: int, size: int):
    if not 0 <= alpha < size:
        raise DomainError(f"alpha must lie in [0, {size}), got {alpha}")


def complex_grassmannian_function(m: int, n: int, j: int, alpha: int) -> ScalarField:
    """ψ_jα(z) = ½(z I_{m,n} z̄ᵗ + I)_jα на U(m+n)."""
    space = SpaceSpec(SpaceFamily.COMPLEX_GRASSMANNIAN, n=n, m=m)
    C = I_mn(m, n)
    I = np.eye(m + n)
    return ScalarField(lambda z: 0.5 * (z @ C @ z.conj().T + I)[j, alpha],
                       space.ambient, f"psi[{j},{alpha}]")


def complex_grassmannian_family(m: int, n: int, alpha: int) -> List[EigenCandidate]:
    """E_α = {ψ_jα : j ≠ α}, собственное семейство, λ = −2(m+n), μ = −2."""
    space = SpaceSpec(SpaceFamily.COMPLEX_GRASSMANNIAN, n=n, m=m)
    _check_alpha(alpha, m + n)
    lam, mu = -2 * (m + n), -2
    return [
        _candidate(complex_grassmannian_function(m, n, j, alpha), lam, mu, space,
                   "complex-grassmannian", f"psi_{j}_{alpha}")
        for j in range(m + n) if j != alpha
    ]


def real_grassmannian_function(m: int, n: int, j: int, alpha: int) -> ScalarField:
    """ψ_jα(x) = Σ_{r<m} x_jr x_αr на SO(m+n)."""
    space = SpaceSpec(SpaceFamily.REAL_GRASSMANNIAN, n=n, m=m)
    P = np.diag(np.concatenate([np.ones(m), np.zeros(n)]))
    return ScalarField(lambda x: (x @ P @ x.T)[j, alpha], space.ambient, f"psi[{j},{alpha}]")


def real_grassmannian_eigenfunction(m: int, n: int, v) -> EigenCandidate:
    """ψ_v = Σ v_j v_α ψ_jα для изотропного v; λ = −(m+n), μ = −2."""
    space = SpaceSpec(SpaceFamily.REAL_GRASSMANNIAN, n=n, m=m)
    v = IsotropicVector(_vector(v, m + n, "v")).entries
    P = np.diag(np.concatenate([np.ones(m), np.zeros(n)]))
    field = ScalarField(lambda x: v @ (x @ P @ x.T) @ v, space.ambient, "psi_v")
    return _candidate(field, -(m + n), -2, space, "real-grassmannian", "psi_v")


def quaternionic_grassmannian_function(m: int, n: int, j: int, alpha: int) -> ScalarField:
    """ψ_jα(q) = ½(q Ĩ q̄ᵗ + I)_jα на Sp(m+n) (комплексные 2(m+n) x 2(m+n))."""
    space = SpaceSpec(SpaceFamily.QUATERNIONIC_GRASSMANNIAN, n=n, m=m)
    block = I_mn(m, n)
    Z = np.zeros_like(block)
    C = np.block([[block, Z], [Z, block]])
    I = np.eye(2 * (m + n))
    return ScalarField(lambda q: 0.5 * (q @ C @ q.conj().T + I)[j, alpha],
                       space.ambient, f"psi[{j},{alpha}]")


def quaternionic_blocks(q, m: int, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """(f, g), где f_jα = Σ_{r<m} z_jr z̄_αr + w_jr w̄_αr, g_jα = Σ_{r<m} w_jr z_αr − z_jr w_αr,
    а q = [[z, w], [−w̄, z̄]]."""
    q = np.asarray(q, dtype=complex)
    k = m + n
    z, w = q[:k, :k], q[:k, k:]
    zm, wm = z[:, :m], w[:, :m]
    f = zm @ zm.conj().T + wm @ wm.conj().T
    g = wm @ zm.T - zm @ wm.T
    return f, g


def quaternionic_grassmannian_family(m: int, n: int, alpha: int) -> List[EigenCandidate]:
    """E_α = {ψ_jα : j ≠ α}, 0 ≤ j < 2(m+n); λ = −2(m+n), μ = −1."""
    space = SpaceSpec(SpaceFamily.QUATERNIONIC_GRASSMANNIAN, n=n, m=m)
    size = 2 * (m + n)
    _check_alpha(alpha, size)
    lam, mu = -2 * (m + n), -1
    return [
        _candidate(quaternionic_grassmannian_function(m, n, j, alpha), lam, mu, space,
                   "quaternionic-grassmannian", f"psi_{j}_{alpha}")
        for j in range(size) if j != alpha
    ]


# ═══════════════════════════════════════════════════════════
#  SU(n)/SO(n), Sp(n)/U(n)
# ═══════════════════════════════════════════════════════════

def su_so_eigenfunction(n: int, a) -> EigenCandidate:
    """φ(z) = trace(aᵗa · z zᵗ) на SU(n)."""
    space = SpaceSpec(SpaceFamily.SU_SO, n=n)
    a = _vector(a, n, "a")
    _require_nonzero(a, "a")
    field = ScalarField(lambda z: a @ z @ z.T @ a, space.ambient, "phi")
    lam = sympy.Rational(-2 * (n * n + n - 2), n)
    mu = sympy.Rational(-4 * (n - 1), n)
    return _candidate(field, lam, mu, space, "su-so", "phi")


def spn_un_eigenfunction(n: int, a) -> EigenCandidate:
    """φ(q) = trace(aᵗa · q qᵗ) на Sp(n)."""
    space = SpaceSpec(SpaceFamily.SP_U, n=n)
    a = _vector(a, 2 * n, "a")
    _require_nonzero(a, "a")
    field = ScalarField(lambda q: a @ q @ q.T @ a, space.ambient, "phi")
    return _candidate(field, -2 * (n + 1), -2, space, "sp-u", "phi")


# ═══════════════════════════════════════════════════════════
#  SO(2n)/U(n), SU(2n)/Sp(n)
# ═══════════════════════════════════════════════════════════

def _skew_pair_field(space: SpaceSpec, A: np.ndarray) -> ScalarField:
    J = J_matrix(space.n)
    return ScalarField(lambda x: -(A * (x @ J @ x.T)).sum(), space.ambient, "psi")


def so2n_un_eigenfunction(n: int, a, b) -> EigenCandidate:
    """ψ(x) = −Σ A_jα (x J xᵗ)_jα, A строится по изотропной паре (a, b)."""
    space = SpaceSpec(SpaceFamily.SO2N_UN, n=n)
    a = _vector(a, 2 * n, "a")
    b = _vector(b, 2 * n, "b")
    _require_independent(a, b)
    scale = np.linalg.norm(a) * np.linalg.norm(b)
    for label, value in (("<a,a>", a @ a), ("<b,b>", b @ b), ("<a,b>", a @ b)):
        if abs(value) > numerics_config.ISOTROPY_TOL * scale:
            raise DomainError(f"a, b do not span an isotropic plane: {label} = {value:.3e}")
    field = _skew_pair_field(space, skew_from_pair(a, b))
    return _candidate(field, -2 * (n - 1), -1, space, "so2n-u", "psi")


def su2n_spn_eigenfunction(n: int, a, b) -> EigenCandidate:
    """ψ(z) = −Σ A_jα (z J zᵗ)_jα на SU(2n), n ≥ 2."""
    if n == 1:
        raise DegeneracyError("SU(2)/Sp(1) is a point (SU(2) = Sp(1)); need n >= 2")
    space = SpaceSpec(SpaceFamily.SU2N_SP, n=n)
    a = _vector(a, 2 * n, "a")
    b = _vector(b, 2 * n, "b")
    _require_independent(a, b)
    field = _skew_pair_field(space, skew_from_pair(a, b))
    lam = sympy.Rational(-2 * (2 * n * n - n - 1), n)
    mu = sympy.Rational(-2 * (n - 1), n)
    return _candidate(field, lam, mu, space, "su2n-sp", "psi")


# ═══════════════════════════════════════════════════════════
#  ISOTROPIC GENERATORS
# ═══════════════════════════════════════════════════════════

def isotropic_vector(dim: int, seed: Optional[int] = None) -> IsotropicVector:
    """Единичный v с Σ v_j² = 0; при seed = None канонический (1, i, 0, ...)/√2."""
    if dim < 2:
        raise DomainError("isotropic vectors need dim >= 2")
    if seed is None:
        v = np.zeros(dim, dtype=complex)
        v[0], v[1] = 1.0, 1j
        return IsotropicVector(v / np.sqrt(2.0))
    rng = np.random.default_rng(seed)
    u = rng.standard_normal(dim)
    w = rng.standard_normal(dim)
    u /= np.linalg.norm(u)
    w -= (w @ u) * u
    w /= np.linalg.norm(w)
    # |u| = |w|, u ⊥ w  ⇒  (u + iw)·(u + iw) = 0
    return IsotropicVector((u + 1j * w) / np.sqrt(2.0))


def isotropic_plane(dim: int, seed: Optional[int] = None) -> Tuple[IsotropicVector, IsotropicVector]:
    """Независимые a, b с <a,a> = <b,b> = <a,b> = 0 (билинейно)."""
    if dim < 4:
        raise DomainError("isotropic planes need dim >= 4")
    if seed is None:
        frame = np.eye(dim)[:, [0, 1, 2, 3]]
    else:
        rng = np.random.default_rng(seed)
        frame, _ = np.linalg.qr(rng.standard_normal((dim, 4)))
    u1, u2, w1, w2 = frame.T
    a = (u1 + 1j * w1) / np.sqrt(2.0)
    b = (u2 + 1j * w2) / np.sqrt(2.0)
    return IsotropicVector(a), IsotropicVector(b)


# ═══════════════════════════════════════════════════════════
#  CATALOG LOOKUP
# ═══════════════════════════════════════════════════════════

def _seeded_complex(dim: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)


def catalog_for_space(space: SpaceSpec, seed: int = 0, alpha: int = 0) -> List[EigenCandidate]:
    """Кандидаты для verify и export по `space`; векторы тянутся из `seed`."""
    fam, m, n = space.family, space.m, space.n
    if fam is SpaceFamily.COMPLEX_GRASSMANNIAN:
        return complex_grassmannian_family(m, n, alpha)
    if fam is SpaceFamily.QUATERNIONIC_GRASSMANNIAN:
        return quaternionic_grassmannian_family(m, n, alpha)
    if fam is SpaceFamily.REAL_GRASSMANNIAN:
        return [real_grassmannian_eigenfunction(m, n, isotropic_vector(m + n, seed))]
    if fam is SpaceFamily.SU_SO:
        if n < 2:
            raise DomainError("SU(n)/SO(n) needs n >= 2")
        return [su_so_eigenfunction(n, _seeded_complex(n, seed))]
    if fam is SpaceFamily.SP_U:
        return [spn_un_eigenfunction(n, _seeded_complex(2 * n, seed))]
    if fam is SpaceFamily.SO2N_UN:
        return [so2n_un_eigenfunction(n, *isotropic_plane(2 * n, seed))]
    if fam is SpaceFamily.SU2N_SP:
        a = _seeded_complex(2 * n, seed)
        b = _seeded_complex(2 * n, seed + 1)
        return [su2n_spn_eigenfunction(n, a, b)]
    raise UsageError(f"no eigen catalog for {space.label}")


def find_candidate(candidates: Sequence[EigenCandidate], name: str) -> EigenCandidate:
    for c in candidates:
        if c.name == name:
            return c
    known = ", ".join(c.name for c in candidates)
    raise UsageError(f"unknown candidate '{name}' (available: {known})")
