"""
=============================================================================
 SYMMETRIC SPACE LAB — ORDER-2 JETS

 Jet хранит a0 + a1·t + a2·t² для комплексного массива a(t) вдоль вещественного
 параметра t, с обрезкой после t². Арифметика по усечённому произведению:

   (a·b)1 = a0·b1 + a1·b0
   (a·b)2 = a0·b2 + a1·b1 + a2·b0

 поэтому d/dt|₀ = a1 и d²/dt²|₀ = 2·a2 точны с точностью до округления. Джеты
 свободно смешиваются с numpy-массивами и скалярами, и один evaluator поля
 работает и на обычных матрицах, и на jet-матрицах.
=============================================================================
"""
from typing import Callable, Union

import numpy as np
from scipy.linalg import expm

from core.models import DimensionError, SingularPointError

ArrayLike = Union[np.ndarray, complex, float, int]


class Jet:
    __slots__ = ("v0", "v1", "v2")

    # numpy operators return NotImplemented so the reflected Jet method runs
    __array_ufunc__ = None

    def __init__(self, v0, v1=None, v2=None):
        self.v0 = np.asarray(v0, dtype=complex)
        self.v1 = np.zeros_like(self.v0) if v1 is None else np.asarray(v1, dtype=complex)
        self.v2 = np.zeros_like(self.v0) if v2 is None else np.asarray(v2, dtype=complex)

    @classmethod
    def constant(cls, value) -> "Jet":
        return cls(value)

    @staticmethod
    def lift(value) -> "Jet":
        return value if isinstance(value, Jet) else Jet(value)

    # ═══════════════════════════════════════════════════════
    #  SHAPE
    # ═══════════════════════════════════════════════════════

    @property
    def shape(self):
        return self.v0.shape

    @property
    def ndim(self) -> int:
        return self.v0.ndim

    @property
    def T(self) -> "Jet":
        return Jet(self.v0.T, self.v1.T, self.v2.T)

    def __getitem__(self, idx) -> "Jet":
        return Jet(self.v0[idx], self.v1[idx], self.v2[idx])

    def __len__(self) -> int:
        return len(self.v0)

    def __repr__(self) -> str:
        if self.v0.ndim == 0:
            return f"Jet({complex(self.v0)}, {complex(self.v1)}, {complex(self.v2)})"
        return f"Jet(shape={self.shape})"

    # ═══════════════════════════════════════════════════════
    #  DERIVATIVES
    # ═══════════════════════════════════════════════════════

    @property
    def value(self) -> np.ndarray:
        return self.v0

    def first_derivative(self) -> np.ndarray:
        return self.v1

    def second_derivative(self) -> np.ndarray:
        return 2.0 * self.v2

    # ═══════════════════════════════════════════════════════
    #  RING OPERATIONS
    # ═══════════════════════════════════════════════════════

    def conj(self) -> "Jet":
        # t вещественно: conj покоэффициентно
        return Jet(self.v0.conj(), self.v1.conj(), self.v2.conj())

    conjugate = conj

    def __neg__(self) -> "Jet":
        return Jet(-self.v0, -self.v1, -self.v2)

    def __pos__(self) -> "Jet":
        return self

    def __add__(self, other) -> "Jet":
        o = Jet.lift(other)
        return Jet(self.v0 + o.v0, self.v1 + o.v1, self.v2 + o.v2)

    __radd__ = __add__

    def __sub__(self, other) -> "Jet":
        o = Jet.lift(other)
        return Jet(self.v0 - o.v0, self.v1 - o.v1, self.v2 - o.v2)

    def __rsub__(self, other) -> "Jet":
        return Jet.lift(other) - self

    @staticmethod
    def _truncated(a: "Jet", b: "Jet", op: Callable) -> "Jet":
        return Jet(
            op(a.v0, b.v0),
            op(a.v0, b.v1) + op(a.v1, b.v0),
            op(a.v0, b.v2) + op(a.v1, b.v1) + op(a.v2, b.v0),
        )

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            c = np.asarray(other, dtype=complex)
            return Jet(self.v0 * c, self.v1 * c, self.v2 * c)
        return Jet._truncated(self, other, np.multiply)

    def __rmul__(self, other) -> "Jet":
        c = np.asarray(other, dtype=complex)
        return Jet(c * self.v0, c * self.v1, c * self.v2)

    def __matmul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            c = np.asarray(other, dtype=complex)
            return Jet(self.v0 @ c, self.v1 @ c, self.v2 @ c)
        return Jet._truncated(self, other, np.matmul)

    def __rmatmul__(self, other) -> "Jet":
        c = np.asarray(other, dtype=complex)
        return Jet(c @ self.v0, c @ self.v1, c @ self.v2)

    def reciprocal(self) -> "Jet":
        if np.any(self.v0 == 0):
            raise SingularPointError("jet division by a zero value")
        r0 = 1.0 / self.v0
        r1 = -self.v1 * r0 * r0
        r2 = -(self.v2 * r0 + self.v1 * r1) * r0
        return Jet(r0, r1, r2)

    def __truediv__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            c = np.asarray(other, dtype=complex)
            if np.any(c == 0):
                raise SingularPointError("jet division by zero")
            return Jet(self.v0 / c, self.v1 / c, self.v2 / c)
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "Jet":
        return Jet.lift(other) * self.reciprocal()

    def __pow__(self, k: int) -> "Jet":
        if not isinstance(k, (int, np.integer)) or k < 0:
            return jet_power(self, k)
        result = Jet(np.ones_like(self.v0))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ═══════════════════════════════════════════════════════
    #  REDUCTIONS
    # ═══════════════════════════════════════════════════════

    def sum(self) -> "Jet":
        return Jet(self.v0.sum(), self.v1.sum(), self.v2.sum())

    def trace(self) -> "Jet":
        return Jet(np.trace(self.v0), np.trace(self.v1), np.trace(self.v2))


TruncatedScalar = Jet  # the 0-dimensional case


# ═══════════════════════════════════════════════════════════
#  ELEMENTARY FUNCTIONS (chain rule to order 2)
# ═══════════════════════════════════════════════════════════

def _compose(x: Jet, f0, f1, f2) -> Jet:
    """f(x(t)) для f со значением f0, f' = f1, f'' = f2 в x.v0."""
    return Jet(f0, f1 * x.v1, f1 * x.v2 + 0.5 * f2 * x.v1 * x.v1)


def jet_log(x):
    """Логарифм (главная ветвь) от джета, массива или числа."""
    if not isinstance(x, Jet):
        return np.log(np.asarray(x, dtype=complex))
    if np.any(x.v0 == 0):
        raise SingularPointError("logarithm of zero")
    inv = 1.0 / x.v0
    return _compose(x, np.log(x.v0), inv, -inv * inv)


def jet_power(x, s):
    """x**s на главной ветви для комплексного s."""
    s = complex(s)
    if not isinstance(x, Jet):
        return np.power(np.asarray(x, dtype=complex), s)
    if s == 0:
        return Jet(np.ones_like(x.v0))
    if np.any(x.v0 == 0):
        raise SingularPointError("power of zero with complex exponent")
    f0 = np.power(x.v0, s)
    inv = 1.0 / x.v0
    return _compose(x, f0, s * f0 * inv, s * (s - 1) * f0 * inv * inv)


# ═══════════════════════════════════════════════════════════
#  MATRIX SUBSTRATE
# ═══════════════════════════════════════════════════════════

def _require_square(A: np.ndarray, what: str = "matrix"):
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"{what} must be square, got shape {A.shape}")


def mat_exp(A: ArrayLike) -> np.ndarray:
    """Матричная экспонента e^A (Padé scaling-and-squaring из scipy)."""
    A = np.asarray(A, dtype=complex)
    _require_square(A)
    if not np.all(np.isfinite(A)):
        raise DimensionError("matrix exponential needs finite entries")
    return expm(A)


def frobenius_inner(X: ArrayLike, Y: ArrayLike) -> float:
    """Re trace(X̄ᵗ Y), стандартное биинвариантное скалярное произведение."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape != Y.shape:
        raise DimensionError(f"shape mismatch {X.shape} vs {Y.shape}")
    return float(np.real(np.vdot(X, Y)))


def jet_curve(p: ArrayLike, X: ArrayLike) -> Jet:
    """Кривая t ↦ p·exp(tX), обрезанная до p(I + tX + t²X²/2)."""
    p = np.asarray(p, dtype=complex)
    X = np.asarray(X, dtype=complex)
    _require_square(p, "group element")
    _require_square(X, "algebra element")
    if p.shape != X.shape:
        raise DimensionError(f"shape mismatch {p.shape} vs {X.shape}")
    pX = p @ X
    return Jet(p, pX, 0.5 * (pX @ X))


def value_of(x) -> np.ndarray:
    """Значение джета, либо сам вход."""
    return x.v0 if isinstance(x, Jet) else np.asarray(x)
