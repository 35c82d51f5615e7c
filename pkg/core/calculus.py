"""
=============================================================================
 SYMMETRIC SPACE LAB — TENSION FIELD & CONFORMALITY OPERATOR

 На компактной группе с биинвариантной метрикой и ортонормированным базисом
 алгебры {X_k} левоинвариантные поля дают ∇_X X = 0, поэтому

   τ(f)(p)    = Σ_k d²/dt²|₀ f(p·exp(tX_k))
   κ(f, h)(p) = Σ_k d/dt|₀ f(p·exp(tX_k)) · d/dt|₀ h(p·exp(tX_k))

 Оба читаются с 2-джетов вдоль p(I + tX + t²X²/2). Restricted-версии
 суммируют по p-базису для f∘Φ; *_on_image считают τ_N, κ_N на образе
 Картана, вдоль его геодезических через Φ(p).
=============================================================================
"""
import logging
from typing import Callable, Iterable, Optional

import numpy as np

from core.groups import algebra_basis, require_member
from core.jets import Jet, jet_curve
from core.models import (
    AnyGroup, DomainError, EvaluationError, ScalarField, SingularPointError, SpaceSpec,
)
from core.symmetric_spaces import cartan_map_unchecked, image_curve, p_basis

logger = logging.getLogger(__name__)


# ═══════════════════════════════════════════════════════════
#  FIELD HELPERS
# ═══════════════════════════════════════════════════════════

def constant_field(group: AnyGroup, value: complex = 1.0) -> ScalarField:
    return ScalarField(lambda M: complex(value), group, f"const({value})")


def coordinate_field(group: AnyGroup, j: int, alpha: int, conjugate: bool = False) -> ScalarField:
    """z_jα, либо z̄_jα при `conjugate`."""
    if conjugate:
        return ScalarField(lambda M: M.conj()[j, alpha], group, f"conj(z[{j},{alpha}])")
    return ScalarField(lambda M: M[j, alpha], group, f"z[{j},{alpha}]")


def pullback_by_cartan(f: ScalarField, space: SpaceSpec) -> ScalarField:
    """f∘Φ как поле на объемлющей группе."""
    return ScalarField(lambda M: f.evaluator(cartan_map_unchecked(space, M)), space.ambient,
                       f"{f.description}∘Φ")


def _jet_of(f: ScalarField, curve: Jet, direction: int) -> Jet:
    try:
        value = f.evaluator(curve)
    except EvaluationError as e:
        raise type(e)(f"{f.description}: {e}", direction=direction) from e
    except (ZeroDivisionError, FloatingPointError) as e:
        raise SingularPointError(f"{f.description}: {e}", direction=direction) from e
    return Jet.lift(value)


def _check_group(f: ScalarField, group: AnyGroup):
    if f.group != group:
        raise DomainError(f"field '{f.description}' lives on {f.group.label}, not {group.label}")


def _directions(group: AnyGroup, basis: Optional[Iterable[np.ndarray]]):
    return algebra_basis(group).elements if basis is None else basis


def _sum_second(f: ScalarField, curves: Callable[[np.ndarray], Jet], directions) -> complex:
    total = 0j
    for k, X in enumerate(directions):
        total += complex(_jet_of(f, curves(X), k).second_derivative())
    return total


def _sum_first_products(f, h, curves, directions) -> complex:
    total = 0j
    for k, X in enumerate(directions):
        curve = curves(X)
        total += complex(_jet_of(f, curve, k).v1) * complex(_jet_of(h, curve, k).v1)
    return total


# ═══════════════════════════════════════════════════════════
#  FULL-BASIS OPERATORS
# ═══════════════════════════════════════════════════════════

def tension(f: ScalarField, group: AnyGroup, p, basis=None) -> complex:
    """τ(f)(p) по ортонормированному базису алгебры (или по явно заданному)."""
    _check_group(f, group)
    p = np.asarray(p, dtype=complex)
    require_member(group, p)
    return _sum_second(f, lambda X: jet_curve(p, X), _directions(group, basis))


def conformality(f: ScalarField, h: ScalarField, group: AnyGroup, p, basis=None) -> complex:
    """κ(f, h)(p); симметричен и билинеен."""
    _check_group(f, group)
    _check_group(h, group)
    p = np.asarray(p, dtype=complex)
    require_member(group, p)
    return _sum_first_products(f, h, lambda X: jet_curve(p, X), _directions(group, basis))


# ═══════════════════════════════════════════════════════════
#  RESTRICTED OPERATORS
# ═══════════════════════════════════════════════════════════

def tension_restricted(f: ScalarField, space: SpaceSpec, p) -> complex:
    """Σ по p-базису d²/dt² f(Φ(p·exp(tX))); совпадает с τ(f∘Φ)(p)."""
    p = np.asarray(p, dtype=complex)
    require_member(space.ambient, p)
    return _sum_second(f, lambda X: cartan_map_unchecked(space, jet_curve(p, X)),
                       p_basis(space))


def conformality_restricted(f: ScalarField, h: ScalarField, space: SpaceSpec, p) -> complex:
    p = np.asarray(p, dtype=complex)
    require_member(space.ambient, p)
    return _sum_first_products(f, h, lambda X: cartan_map_unchecked(space, jet_curve(p, X)),
                               p_basis(space))


def tension_on_image(f: ScalarField, space: SpaceSpec, p) -> complex:
    """τ_N(f) в точке Φ(p); по композиции τ(f∘Φ)(p) = 4·τ_N(f)(Φ(p))."""
    p = np.asarray(p, dtype=complex)
    require_member(space.ambient, p)
    return _sum_second(f, lambda X: image_curve(space, p, X), p_basis(space))


def conformality_on_image(f: ScalarField, h: ScalarField, space: SpaceSpec, p) -> complex:
    p = np.asarray(p, dtype=complex)
    require_member(space.ambient, p)
    return _sum_first_products(f, h, lambda X: image_curve(space, p, X), p_basis(space))


# ═══════════════════════════════════════════════════════════
#  PRODUCT IDENTITIES
# ═══════════════════════════════════════════════════════════

def product_rule_residual(f: ScalarField, h: ScalarField, group: AnyGroup, p) -> float:
    """|τ(fh) − fτ(h) − 2κ(f,h) − τ(f)h| в точке p."""
    p = np.asarray(p, dtype=complex)
    fp, hp = f(p), h(p)
    lhs = tension(f * h, group, p)
    rhs = fp * tension(h, group, p) + 2 * conformality(f, h, group, p) + tension(f, group, p) * hp
    return float(abs(lhs - rhs))


def kappa_product_residual(phi: ScalarField, psi: ScalarField, f: ScalarField,
                           g: ScalarField, group: AnyGroup, p) -> float:
    """|κ(φψ, fg) − φf·κ(ψ,g) − φg·κ(ψ,f) − ψf·κ(φ,g) − ψg·κ(φ,f)| в точке p."""
    p = np.asarray(p, dtype=complex)
    a, b, c, d = phi(p), psi(p), f(p), g(p)
    lhs = conformality(phi * psi, f * g, group, p)
    rhs = (
        a * c * conformality(psi, g, group, p)
        + a * d * conformality(psi, f, group, p)
        + b * c * conformality(phi, g, group, p)
        + b * d * conformality(phi, f, group, p)
    )
    return float(abs(lhs - rhs))


def rotated_basis(group: AnyGroup, rng: np.random.Generator) -> np.ndarray:
    """Ортонормированный базис, перемешанный случайной вещественной ортогональной матрицей."""
    elements = algebra_basis(group).elements
    Q, _ = np.linalg.qr(rng.standard_normal((len(elements), len(elements))))
    return np.tensordot(Q, elements, axes=1)
