"""
=============================================================================
 SYMMETRIC SPACE LAB — HARMONIC BUILDERS

 Построения поверх собственных функций и семейств:
   - произведения  φ₁(p₁)φ₂(p₂) на G₁ x G₂, собственные значения складываются
   - многочлены    однородные P(φ₁..φₙ) степени d: (dλ + d(d−1)μ, d²μ)
   - частные       P/Q одной степени, гармонический морфизм там, где Q ≠ 0
   - p-гармонич.   log-степенные композиции E(φ) с τ^p(E(φ)) = 0

 Для композиции F(φ) с собственной функцией τ(F∘φ) = λφF′(φ) + μφ²F″(φ).
 На члене x^s·log^k x это даёт

   [λs + μs(s−1)]·x^s·log^k + k[λ + μ(2s−1)]·x^s·log^{k−1} + μk(k−1)·x^s·log^{k−2}

 и редуктор ниже применяет это точно, на sympy.
=============================================================================
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import numpy as np
import sympy
from scipy.linalg import block_diag

from config.settings import numerics_config, verify_config
from core.groups import require_member, sample_group_element
from core.jets import jet_log, jet_power, value_of
from core.models import (
    AnyGroup, DimensionError, DomainError, EigenCandidate, EvaluationError,
    ProductGroupSpec, ScalarField, SingularPointError,
)

logger = logging.getLogger(__name__)

Number = Union[int, float, complex, sympy.Basic]


def to_exact(value: Number) -> sympy.Expr:
    """Точная sympy-форма числа; float идёт через десятичный repr."""
    if isinstance(value, sympy.Basic):
        return value
    if isinstance(value, (int, np.integer)):
        return sympy.Integer(int(value))
    z = complex(value)
    re = sympy.Rational(str(z.real))
    im = sympy.Rational(str(z.imag))
    return re + sympy.I * im


def _is_zero(expr: sympy.Expr) -> bool:
    return sympy.simplify(sympy.expand(expr)) == 0


# ═══════════════════════════════════════════════════════════
#  LOG-POWER EXPRESSIONS
# ═══════════════════════════════════════════════════════════

@dataclass(frozen=True)
class LogTerm:
    coefficient: sympy.Expr
    s: sympy.Expr  # степень x
    k: int         # степень log x


@dataclass(frozen=True)
class LogPowerExpression:
    """Конечная сумма Σ c·x^s·log^k x, слияние по (s, k), нулевые члены выброшены."""
    terms: Tuple[LogTerm, ...] = ()

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Number, Number, int]]) -> "LogPowerExpression":
        merged: Dict[Tuple[sympy.Expr, int], sympy.Expr] = {}
        for c, s, k in terms:
            if int(k) < 0:
                raise DomainError(f"log power must be nonnegative, got {k}")
            key = (sympy.simplify(to_exact(s)), int(k))
            merged[key] = merged.get(key, sympy.Integer(0)) + to_exact(c)
        kept = [
            LogTerm(sympy.simplify(c), s, k)
            for (s, k), c in merged.items()
            if not _is_zero(c)
        ]
        kept.sort(key=lambda t: (sympy.default_sort_key(t.s), t.k))
        return cls(tuple(kept))

    @classmethod
    def power(cls, s: Number = 1, k: int = 0, coefficient: Number = 1) -> "LogPowerExpression":
        return cls.from_terms([(coefficient, s, k)])

    def __add__(self, other: "LogPowerExpression") -> "LogPowerExpression":
        return LogPowerExpression.from_terms(
            [(t.coefficient, t.s, t.k) for t in self.terms + other.terms]
        )

    def scaled(self, c: Number) -> "LogPowerExpression":
        c = to_exact(c)
        return LogPowerExpression.from_terms([(c * t.coefficient, t.s, t.k) for t in self.terms])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def log_degree(self) -> int:
        return max((t.k for t in self.terms), default=-1)

    def as_sympy(self, x: sympy.Symbol = None) -> sympy.Expr:
        x = sympy.Symbol("phi") if x is None else x
        return sum((t.coefficient * x ** t.s * sympy.log(x) ** t.k for t in self.terms), sympy.Integer(0))

    def __str__(self) -> str:
        return str(self.as_sympy()) if self.terms else "0"


def tension_reduce(expr: LogPowerExpression, lam: Number, mu: Number) -> LogPowerExpression:
    """τ от E(φ) для собственной функции φ с (λ, μ), точно."""
    lam, mu = to_exact(lam), to_exact(mu)
    out = []
    for t in expr.terms:
        c, s, k = t.coefficient, t.s, t.k
        out.append((c * (lam * s + mu * s * (s - 1)), s, k))
        if k >= 1:
            out.append((c * k * (lam + mu * (2 * s - 1)), s, k - 1))
        if k >= 2:
            out.append((c * mu * k * (k - 1), s, k - 2))
    return LogPowerExpression.from_terms(out)


def reduction_trace(expr: LogPowerExpression, lam: Number, mu: Number, p: int) -> List[LogPowerExpression]:
    """[τ(E), τ²(E), ..., τ^p(E)]."""
    trace, current = [], expr
    for _ in range(p):
        current = tension_reduce(current, lam, mu)
        trace.append(current)
    return trace


def is_proper_p_harmonic(expr: LogPowerExpression, lam: Number, mu: Number, p: int) -> bool:
    """τ^p(E) = 0 и τ^{p−1}(E) ≠ 0."""
    trace = reduction_trace(expr, lam, mu, p)
    previous = trace[-2] if p > 1 else expr
    return trace[-1].is_zero and not previous.is_zero


def p_harmonic_case(lam: Number, mu: Number) -> str:
    lam, mu = to_exact(lam), to_exact(mu)
    if _is_zero(lam) and _is_zero(mu):
        raise DomainError("λ and μ cannot both vanish")
    if _is_zero(mu):
        return "mu-zero"
    if _is_zero(lam - mu):
        return "lambda-equals-mu"
    return "generic"


def p_harmonic_function(lam: Number, mu: Number, p: int,
                        c1: Number = 1, c2: Number = 0) -> LogPowerExpression:
    """Log-степень E, для которой E(φ) собственно p-гармонична:

        μ = 0:          c₁·log^{p−1}φ
        λ = μ ≠ 0:      c₁·log^{2p−1}φ + c₂·log^{2p−2}φ
        μ ≠ 0, λ ≠ μ:   c₁·φ^{1−λ/μ}·log^{p−1}φ + c₂·log^{p−1}φ
    """
    if int(p) != p or p < 1:
        raise DomainError(f"p must be a positive integer, got {p}")
    p = int(p)
    case = p_harmonic_case(lam, mu)
    lam, mu = to_exact(lam), to_exact(mu)
    c1, c2 = to_exact(c1), to_exact(c2)
    if _is_zero(c1) and _is_zero(c2):
        raise DomainError("c1 and c2 cannot both vanish")

    if case == "mu-zero":
        if _is_zero(c1):
            raise DomainError("c1 must be non-zero when μ = 0")
        return LogPowerExpression.from_terms([(c1, 0, p - 1)])
    if case == "lambda-equals-mu":
        return LogPowerExpression.from_terms([(c1, 0, 2 * p - 1), (c2, 0, 2 * p - 2)])
    s = sympy.simplify(1 - lam / mu)
    return LogPowerExpression.from_terms([(c1, s, p - 1), (c2, 0, p - 1)])


# ═══════════════════════════════════════════════════════════
#  EVALUATION ON FIELDS
# ═══════════════════════════════════════════════════════════

def _numeric(value: sympy.Expr) -> complex:
    try:
        return complex(sympy.N(value))
    except TypeError as e:
        raise DomainError(f"expression is symbolic, cannot evaluate: {value}") from e


def _check_branch(phi):
    v = complex(np.asarray(value_of(phi)).reshape(()))
    if v.real <= 0 and abs(v.imag) <= numerics_config.BRANCH_CUT_TOL:
        raise DomainError(f"φ = {v:.6g} lies on the branch cut (−∞, 0]")


def log_power_field(expr: LogPowerExpression, base: ScalarField) -> ScalarField:
    """E(φ) как поле; главная ветвь, не определено при φ ∈ (−∞, 0]."""
    terms = [(_numeric(t.coefficient), _numeric(t.s), t.k) for t in expr.terms]

    def evaluate(M):
        phi = base.evaluator(M)
        _check_branch(phi)
        total = 0j
        for c, s, k in terms:
            term = c * (jet_power(phi, s) if s != 0 else 1.0)
            if k:
                term = term * jet_log(phi) ** k
            total = term + total
        return total

    return ScalarField(evaluate, base.group, f"{expr}[phi := {base.description}]")


def evaluate_log_power(expr: LogPowerExpression, base: EigenCandidate, point) -> complex:
    point = np.asarray(point, dtype=complex)
    require_member(base.group, point)
    return complex(log_power_field(expr, base.field)(point))


# ═══════════════════════════════════════════════════════════
#  PRODUCTS
# ═══════════════════════════════════════════════════════════

@dataclass(frozen=True, eq=False)
class ProductPoint:
    left: np.ndarray
    right: np.ndarray

    def matrix(self, group: ProductGroupSpec) -> np.ndarray:
        require_member(group.left, self.left, "left factor")
        require_member(group.right, self.right, "right factor")
        return block_diag(np.asarray(self.left, dtype=complex), np.asarray(self.right, dtype=complex))


def _exact_sum(a: EigenCandidate, b: EigenCandidate):
    if a.exact is None or b.exact is None:
        return None
    return (a.exact[0] + b.exact[0], a.exact[1] + b.exact[1])


def product_eigenfunction(c1: EigenCandidate, c2: EigenCandidate) -> EigenCandidate:
    """ψ(diag(p₁, p₂)) = φ₁(p₁)φ₂(p₂) с (λ₁+λ₂, μ₁+μ₂)."""
    group = ProductGroupSpec(c1.group, c2.group)
    a = c1.group.matrix_size
    f1, f2 = c1.field.evaluator, c2.field.evaluator
    field = ScalarField(
        lambda M: f1(M[:a, :a]) * f2(M[a:, a:]),
        group,
        f"{c1.field.description} x {c2.field.description}",
    )
    return EigenCandidate(
        field=field,
        lam=c1.lam + c2.lam,
        mu=c1.mu + c2.mu,
        space=None,
        family_tag=f"{c1.family_tag} x {c2.family_tag}",
        k_invariant=c1.k_invariant and c2.k_invariant,
        name=f"{c1.name}*{c2.name}",
        exact=_exact_sum(c1, c2),
    )


def _shared_eigenvalues(family: Sequence[EigenCandidate]) -> Tuple[complex, complex]:
    if not family:
        raise DomainError("family is empty")
    lam, mu = family[0].lam, family[0].mu
    for c in family[1:]:
        if not (np.isclose(c.lam, lam) and np.isclose(c.mu, mu)):
            raise DomainError(f"family mixes eigenvalues ({lam}, {mu}) and ({c.lam}, {c.mu})")
        if c.group != family[0].group:
            raise DomainError("family members live on different groups")
    return lam, mu


def product_family(F1: Sequence[EigenCandidate], F2: Sequence[EigenCandidate]) -> List[EigenCandidate]:
    """{φ_i·ψ_j}: собственное семейство на G₁ x G₂ с (λ₁+λ₂, μ₁+μ₂)."""
    _shared_eigenvalues(F1)
    _shared_eigenvalues(F2)
    return [product_eigenfunction(a, b) for a in F1 for b in F2]


def constant_candidate(group: AnyGroup, value: complex = 1.0) -> EigenCandidate:
    field = ScalarField(lambda M: complex(value), group, f"const({value})")
    return EigenCandidate(field, 0j, 0j, None, "constant", name="const",
                          exact=(sympy.Integer(0), sympy.Integer(0)))


# ═══════════════════════════════════════════════════════════
#  HOMOGENEOUS POLYNOMIALS
# ═══════════════════════════════════════════════════════════

Monomial = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class HomogeneousPolynomial:
    """Σ c_e·Π x_i^{e_i}, у каждого |e| степень одна и та же."""
    coefficients: Mapping[Monomial, complex]

    def __post_init__(self):
        if not self.coefficients:
            raise DomainError("polynomial has no monomials")
        lengths = {len(e) for e in self.coefficients}
        degrees = {sum(e) for e in self.coefficients}
        if len(lengths) != 1:
            raise DimensionError("monomials have different numbers of variables")
        if len(degrees) != 1:
            raise DomainError(f"polynomial is not homogeneous: degrees {sorted(degrees)}")
        if any(x < 0 for e in self.coefficients for x in e):
            raise DomainError("monomial exponents must be nonnegative")

    @classmethod
    def monomial(cls, exponents: Monomial, coefficient: complex = 1.0) -> "HomogeneousPolynomial":
        return cls({tuple(exponents): coefficient})

    @property
    def degree(self) -> int:
        return sum(next(iter(self.coefficients)))

    @property
    def variables(self) -> int:
        return len(next(iter(self.coefficients)))

    def __call__(self, values: Sequence):
        total = 0j
        for exponents, c in self.coefficients.items():
            term = complex(c)
            for v, e in zip(values, exponents):
                if e:
                    term = term * v ** e
            total = term + total
        return total

    def is_proportional_to(self, other: "HomogeneousPolynomial") -> bool:
        keys = sorted(set(self.coefficients) | set(other.coefficients))
        a = np.array([complex(self.coefficients.get(k, 0)) for k in keys])
        b = np.array([complex(other.coefficients.get(k, 0)) for k in keys])
        return np.linalg.matrix_rank(np.vstack([a, b]), tol=1e-12) < 2


def _family_values(family: Sequence[EigenCandidate], M) -> List:
    return [c.field.evaluator(M) for c in family]


def _check_variables(P: HomogeneousPolynomial, family: Sequence[EigenCandidate]):
    if P.variables != len(family):
        raise DimensionError(f"polynomial in {P.variables} variables, family has {len(family)} members")


def homogeneous_polynomial(family: Sequence[EigenCandidate], P: HomogeneousPolynomial,
                           name: str = "P") -> EigenCandidate:
    """P(φ₁, ..., φₙ) с собственными значениями (dλ + d(d−1)μ, d²μ)."""
    lam, mu = _shared_eigenvalues(family)
    _check_variables(P, family)
    d = P.degree
    if d < 1:
        raise DomainError("degree must be positive")
    members = list(family)
    field = ScalarField(lambda M: P(_family_values(members, M)), members[0].group,
                        f"{name}({members[0].family_tag})")
    exact = None
    if members[0].exact is not None:
        el, em = members[0].exact
        exact = (d * el + d * (d - 1) * em, d * d * em)
    return EigenCandidate(
        field=field,
        lam=d * lam + d * (d - 1) * mu,
        mu=d * d * mu,
        space=members[0].space,
        family_tag=f"{members[0].family_tag}^{d}",
        k_invariant=all(c.k_invariant for c in members),
        name=name,
        exact=exact,
    )


def homogeneous_family(family: Sequence[EigenCandidate], d: int,
                       monomials: Sequence[Monomial]) -> List[EigenCandidate]:
    """По одному моному степени d на мультииндекс; снова собственное семейство."""
    out = []
    for e in monomials:
        if sum(e) != d:
            raise DomainError(f"monomial {tuple(e)} has degree {sum(e)}, expected {d}")
        label = "m_" + "".join(str(x) for x in e)
        out.append(homogeneous_polynomial(family, HomogeneousPolynomial.monomial(e), label))
    return out


# ═══════════════════════════════════════════════════════════
#  HARMONIC MORPHISMS
# ═══════════════════════════════════════════════════════════

def harmonic_morphism_ratio(family: Sequence[EigenCandidate], P: HomogeneousPolynomial,
                            Q: HomogeneousPolynomial, floor: float = None) -> ScalarField:
    """P(φ)/Q(φ), определено где |Q(φ)| > floor; там τ = κ = 0."""
    floor = verify_config.QUOTIENT_FLOOR if floor is None else floor
    _shared_eigenvalues(family)
    _check_variables(P, family)
    _check_variables(Q, family)
    if P.degree != Q.degree:
        raise DomainError(f"P has degree {P.degree}, Q has degree {Q.degree}")
    if P.is_proportional_to(Q):
        logger.warning("P and Q are proportional; the quotient is constant")
    members = list(family)

    def evaluate(M):
        values = _family_values(members, M)
        q = Q(values)
        if abs(complex(np.asarray(value_of(q)).reshape(()))) <= floor:
            raise SingularPointError(f"|Q| below the quotient floor {floor}")
        return P(values) / q

    return ScalarField(evaluate, members[0].group, "P/Q")


def admissible_points(field: ScalarField, seed: int, count: int) -> List[np.ndarray]:
    """Seeded точки группы, где `field` вычисляется; после MAX_RESAMPLES на точку сдаёмся."""
    limit = max(count, 1) * verify_config.MAX_RESAMPLES
    children = np.random.SeedSequence(seed).spawn(limit)
    points = []
    for child in children:
        if len(points) == count:
            break
        p = sample_group_element(field.group, int(child.generate_state(1)[0]))
        try:
            field(p)
        except (EvaluationError, DomainError):
            continue
        points.append(p)
    if len(points) < count:
        raise EvaluationError(f"found {len(points)} of {count} admissible points in {limit} draws")
    return points
