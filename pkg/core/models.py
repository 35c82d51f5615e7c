"""
=============================================================================
 SYMMETRIC SPACE LAB — DOMAIN MODELS
 Дескрипторы групп и пространств, базисы, поля, кандидаты, отчёты, ошибки
=============================================================================
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Iterator, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict


# ═══════════════════════════════════════════════════════════
#  ERRORS
# ═══════════════════════════════════════════════════════════

class SymSpaceError(Exception):
    """Базовый класс всех ошибок пакета."""


class DimensionError(SymSpaceError, ValueError):
    pass


class DomainError(SymSpaceError, ValueError):
    pass


class DegeneracyError(DomainError):
    pass


class EvaluationError(SymSpaceError, ArithmeticError):
    """Поле не вычислилось; `direction` задаёт индекс базисного направления, если известен."""

    def __init__(self, message: str, direction: Optional[int] = None):
        super().__init__(message)
        self.direction = direction


class SingularPointError(EvaluationError):
    pass


class UsageError(SymSpaceError):
    pass


# ═══════════════════════════════════════════════════════════
#  FAMILIES
# ═══════════════════════════════════════════════════════════

class GroupFamily(str, Enum):
    SO = "so"
    U = "u"
    SU = "su"
    SP = "sp"


class SpaceFamily(str, Enum):
    COMPLEX_GRASSMANNIAN = "complex-grassmannian"
    REAL_GRASSMANNIAN = "real-grassmannian"
    QUATERNIONIC_GRASSMANNIAN = "quaternionic-grassmannian"
    SU_SO = "su-so"
    SO2N_UN = "so2n-u"
    SP_U = "sp-u"
    SU2N_SP = "su2n-sp"
    GROUP_TYPE = "group-type"


# Семейства с параметрами (m, n); остальным нужен только n
GRASSMANNIANS = (
    SpaceFamily.COMPLEX_GRASSMANNIAN,
    SpaceFamily.REAL_GRASSMANNIAN,
    SpaceFamily.QUATERNIONIC_GRASSMANNIAN,
)


# ═══════════════════════════════════════════════════════════
#  GROUPS
# ═══════════════════════════════════════════════════════════

@dataclass(frozen=True)
class GroupSpec:
    family: GroupFamily
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"group size must be positive, got n={self.n}")

    @property
    def matrix_size(self) -> int:
        # Sp(n) в комплексном представлении 2n x 2n
        return 2 * self.n if self.family is GroupFamily.SP else self.n

    @property
    def algebra_dim(self) -> int:
        n = self.n
        return {
            GroupFamily.SO: n * (n - 1) // 2,
            GroupFamily.U: n * n,
            GroupFamily.SU: n * n - 1,
            GroupFamily.SP: n * (2 * n + 1),
        }[self.family]

    @property
    def label(self) -> str:
        return f"{self.family.value.upper()}({self.n})"


@dataclass(frozen=True)
class ProductGroupSpec:
    """G1 x G2 как блочно-диагональные матрицы diag(p, q)."""
    left: GroupSpec
    right: GroupSpec

    @property
    def matrix_size(self) -> int:
        return self.left.matrix_size + self.right.matrix_size

    @property
    def algebra_dim(self) -> int:
        return self.left.algebra_dim + self.right.algebra_dim

    @property
    def label(self) -> str:
        return f"{self.left.label}x{self.right.label}"


AnyGroup = Union[GroupSpec, ProductGroupSpec]


@dataclass(frozen=True, eq=False)
class AlgebraBasis:
    """Ортонормированный базис алгебры Ли, сложенный в (dim, N, N)."""
    elements: np.ndarray
    group: AnyGroup

    def __len__(self) -> int:
        return self.elements.shape[0]

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.elements)

    def __getitem__(self, idx: int) -> np.ndarray:
        return self.elements[idx]


# ═══════════════════════════════════════════════════════════
#  SYMMETRIC SPACES
# ═══════════════════════════════════════════════════════════

@dataclass(frozen=True)
class SpaceSpec:
    family: SpaceFamily
    n: int
    m: int = 0
    group: Optional[GroupFamily] = None  # только для GROUP_TYPE

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"size parameter must be positive, got n={self.n}")
        if self.family in GRASSMANNIANS and self.m < 1:
            raise DomainError(f"{self.family.value} needs m >= 1, got m={self.m}")
        if self.family is SpaceFamily.GROUP_TYPE and self.group is None:
            raise DomainError("group-type space needs a group family")

    @property
    def ambient(self) -> AnyGroup:
        m, n = self.m, self.n
        fam = self.family
        if fam is SpaceFamily.COMPLEX_GRASSMANNIAN:
            return GroupSpec(GroupFamily.U, m + n)
        if fam is SpaceFamily.REAL_GRASSMANNIAN:
            return GroupSpec(GroupFamily.SO, m + n)
        if fam is SpaceFamily.QUATERNIONIC_GRASSMANNIAN:
            return GroupSpec(GroupFamily.SP, m + n)
        if fam is SpaceFamily.SU_SO:
            return GroupSpec(GroupFamily.SU, n)
        if fam is SpaceFamily.SO2N_UN:
            return GroupSpec(GroupFamily.SO, 2 * n)
        if fam is SpaceFamily.SP_U:
            return GroupSpec(GroupFamily.SP, n)
        if fam is SpaceFamily.SU2N_SP:
            return GroupSpec(GroupFamily.SU, 2 * n)
        g = GroupSpec(self.group, n)
        return ProductGroupSpec(g, g)

    @property
    def label(self) -> str:
        if self.family in GRASSMANNIANS:
            return f"{self.family.value}(m={self.m}, n={self.n})"
        if self.family is SpaceFamily.GROUP_TYPE:
            return f"{self.family.value}({self.group.value}, n={self.n})"
        return f"{self.family.value}(n={self.n})"


@dataclass(frozen=True, eq=False)
class PBasis:
    """Ортонормированный базис −1-собственного подпространства dσ."""
    elements: np.ndarray
    space: SpaceSpec

    def __len__(self) -> int:
        return self.elements.shape[0]

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.elements)

    def __getitem__(self, idx: int) -> np.ndarray:
        return self.elements[idx]


@dataclass(frozen=True)
class CartanResiduals:
    inversion: float  # max of |σ(Φ(p)) − Φ(p)⁻¹|, |Φ(σ(p)) − Φ(p)⁻¹|
    squaring: float   # |Φ(p)Φ(q)Φ(p) − Φ(Φ(p)q)|

    @property
    def worst(self) -> float:
        return max(self.inversion, self.squaring)


# ═══════════════════════════════════════════════════════════
#  FIELDS & CANDIDATES
# ═══════════════════════════════════════════════════════════

@dataclass(frozen=True, eq=False)
class ScalarField:
    """Комплексная функция на матричной группе; вычисляется на массивах и на джетах."""
    evaluator: Callable[[Any], Any]
    group: AnyGroup
    description: str = ""

    def __call__(self, point):
        value = self.evaluator(point)
        if isinstance(point, np.ndarray):
            return complex(value)
        return value

    def __add__(self, other: "ScalarField") -> "ScalarField":
        return ScalarField(
            lambda M: self.evaluator(M) + other.evaluator(M),
            self.group,
            f"({self.description} + {other.description})",
        )

    def __mul__(self, other) -> "ScalarField":
        if isinstance(other, ScalarField):
            return ScalarField(
                lambda M: self.evaluator(M) * other.evaluator(M),
                self.group,
                f"({self.description} * {other.description})",
            )
        c = complex(other)
        return ScalarField(lambda M: self.evaluator(M) * c, self.group,
                           f"{c} * {self.description}")

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class EigenCandidate:
    field: ScalarField
    lam: complex
    mu: complex
    space: Optional[SpaceSpec]
    family_tag: str
    k_invariant: bool = True
    name: str = "phi"
    exact: Optional[Tuple[Any, Any]] = None  # sympy (λ, μ)

    @property
    def group(self) -> AnyGroup:
        return self.field.group


@dataclass(frozen=True, eq=False)
class IsotropicVector:
    entries: np.ndarray

    def __post_init__(self):
        from config.settings import numerics_config

        v = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", v)
        if v.ndim != 1 or v.size < 2:
            raise DimensionError("isotropic vector must be 1-D with at least 2 entries")
        norm = np.linalg.norm(v)
        if norm == 0:
            raise DomainError("isotropic vector must be non-zero")
        if abs(np.sum(v * v)) > numerics_config.ISOTROPY_TOL * norm ** 2:
            raise DomainError(f"vector is not isotropic: sum of squares = {np.sum(v * v):.3e}")

    def __len__(self) -> int:
        return self.entries.size


# ═══════════════════════════════════════════════════════════
#  REPORTS
# ═══════════════════════════════════════════════════════════

class VerificationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    space: str
    candidate: str
    samples: int
    tolerance: float
    max_tau_residual: float
    max_kappa_residual: float
    max_cross_residual: float
    seed: int
    passed: bool
    wall_time_ms: int = 0


class KillingReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    group: str
    n: int
    pairs: int
    seed: int
    tolerance: float
    max_relative_deviation: float
    passed: bool


class PHarmonicReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    lam: str
    mu: str
    p: int
    case: str
    expression: str
    trace: list[str] = []
    proper: bool


class ExportSummary(BaseModel):
    space: str
    candidate: str
    points: int
    seed: int
    out: str
