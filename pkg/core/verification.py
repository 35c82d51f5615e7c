"""
=============================================================================
 SYMMETRIC SPACE LAB — VERIFICATION RUNS

 Задачи за каждой подкомандой CLI. Каждая детерминирована по seed и
 возвращает pydantic-отчёт; в stdout здесь ничего не пишется.

   verify     невязки кандидатов каталога в seeded точках
   killing    замкнутая форма Киллинга vs brute force на seeded парах
   pharmonic  символьный след редукций τ¹..τ^p для p-гармонического генератора
   export     значения кандидата в seeded точках, через TAB
=============================================================================
"""
import itertools
import logging
import time
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from config.settings import verify_config
from core.calculus import conformality, tension
from core.eigen_catalog import catalog_for_space, find_candidate
from core.groups import algebra_basis, killing_form, killing_form_bruteforce, random_algebra_element, sample_points
from core.harmonic import (
    is_proper_p_harmonic, p_harmonic_case, p_harmonic_function, reduction_trace, to_exact,
)
from core.models import (
    DomainError, EigenCandidate, ExportSummary, GroupSpec, KillingReport, PHarmonicReport,
    SpaceSpec, VerificationReport,
)

logger = logging.getLogger(__name__)


# ═══════════════════════════════════════════════════════════
#  RESIDUALS
# ═══════════════════════════════════════════════════════════

def tau_residual(c: EigenCandidate, p: np.ndarray) -> float:
    """|τψ − λψ| / (1 + |ψ|)."""
    psi = c.field(p)
    return abs(tension(c.field, c.group, p) - c.lam * psi) / (1 + abs(psi))


def kappa_residual(c: EigenCandidate, p: np.ndarray) -> float:
    """|κ(ψ,ψ) − μψ²| / (1 + |ψ|²)."""
    psi = c.field(p)
    return abs(conformality(c.field, c.field, c.group, p) - c.mu * psi * psi) / (1 + abs(psi) ** 2)


def cross_residual(c1: EigenCandidate, c2: EigenCandidate, p: np.ndarray) -> float:
    """|κ(ψ_j,ψ_k) − μψ_jψ_k| / (1 + |ψ_jψ_k|)."""
    prod = c1.field(p) * c2.field(p)
    return abs(conformality(c1.field, c2.field, c1.group, p) - c1.mu * prod) / (1 + abs(prod))


def verify_candidates(candidates: Sequence[EigenCandidate], space_label: str, *, samples: int,
                      seed: int, tol: float, candidate_label: str = "all") -> VerificationReport:
    """Максимумы невязок по `samples` seeded точкам; пройдено, если все ≤ tol."""
    if samples < 1:
        raise DomainError(f"need at least one sample point, got {samples}")
    started = time.perf_counter()
    group = candidates[0].group
    points = sample_points(group, seed, samples)
    pairs = list(itertools.combinations(candidates, 2))

    worst_tau = worst_kappa = worst_cross = 0.0
    for p in tqdm(points, desc=space_label, disable=not verify_config.SHOW_PROGRESS, leave=False):
        for c in candidates:
            worst_tau = max(worst_tau, tau_residual(c, p))
            worst_kappa = max(worst_kappa, kappa_residual(c, p))
        for c1, c2 in pairs:
            worst_cross = max(worst_cross, cross_residual(c1, c2, p))

    passed = max(worst_tau, worst_kappa, worst_cross) <= tol
    elapsed = int(round((time.perf_counter() - started) * 1000))
    log = logger.info if passed else logger.warning
    log(f"{space_label} [{candidate_label}]: tau={worst_tau:.2e} kappa={worst_kappa:.2e} "
        f"cross={worst_cross:.2e} tol={tol:.0e} passed={passed} ({elapsed} ms)")

    return VerificationReport(
        space=space_label,
        candidate=candidate_label,
        samples=samples,
        tolerance=tol,
        max_tau_residual=float(worst_tau),
        max_kappa_residual=float(worst_kappa),
        max_cross_residual=float(worst_cross),
        seed=seed,
        passed=passed,
        wall_time_ms=elapsed if verify_config.RECORD_WALL_TIME else 0,
    )


def verify_space(space: SpaceSpec, samples: int = None, seed: int = None, tol: float = None,
                 candidate: Optional[str] = None) -> VerificationReport:
    samples = verify_config.DEFAULT_SAMPLES if samples is None else samples
    seed = verify_config.DEFAULT_SEED if seed is None else seed
    tol = verify_config.DEFAULT_TOLERANCE if tol is None else tol

    candidates = catalog_for_space(space, seed)
    if candidate is not None:
        candidates = [find_candidate(candidates, candidate)]
    label = candidate if candidate is not None else "all"
    return verify_candidates(candidates, space.family.value, samples=samples, seed=seed,
                             tol=tol, candidate_label=label)


# ═══════════════════════════════════════════════════════════
#  KILLING FORM
# ═══════════════════════════════════════════════════════════

def verify_killing(group: GroupSpec, pairs: int = None, seed: int = None,
                   tol: float = None) -> KillingReport:
    """Относительное отклонение |B − B_ad| / max(1, |B_ad|) по seeded парам алгебры."""
    pairs = verify_config.KILLING_PAIRS if pairs is None else pairs
    seed = verify_config.DEFAULT_SEED if seed is None else seed
    tol = verify_config.KILLING_TOLERANCE if tol is None else tol
    if pairs < 1:
        raise DomainError(f"need at least one algebra pair, got {pairs}")
    algebra_basis(group)  # тривиальные алгебры падают здесь

    worst = 0.0
    for child in np.random.SeedSequence(seed).spawn(pairs):
        rng = np.random.default_rng(child)
        X = random_algebra_element(group, rng)
        Y = random_algebra_element(group, rng)
        closed = killing_form(group, X, Y)
        brute = killing_form_bruteforce(group, X, Y)
        worst = max(worst, abs(closed - brute) / max(1.0, abs(brute)))

    passed = worst <= tol
    logger.info(f"killing {group.label}: max relative deviation {worst:.2e} over {pairs} pairs")
    return KillingReport(group=group.family.value, n=group.n, pairs=pairs, seed=seed,
                         tolerance=tol, max_relative_deviation=float(worst), passed=passed)


# ═══════════════════════════════════════════════════════════
#  P-HARMONIC
# ═══════════════════════════════════════════════════════════

def pharmonic_report(lam: complex, mu: complex, p: int, c1: complex = 1, c2: complex = 0) -> PHarmonicReport:
    case = p_harmonic_case(lam, mu)
    expr = p_harmonic_function(lam, mu, p, c1, c2)
    trace = reduction_trace(expr, lam, mu, p)
    proper = is_proper_p_harmonic(expr, lam, mu, p)
    logger.info(f"p-harmonic case={case} p={p}: E = {expr}, proper={proper}")
    return PHarmonicReport(
        lam=str(to_exact(lam)),
        mu=str(to_exact(mu)),
        p=p,
        case=case,
        expression=str(expr),
        trace=[str(t) for t in trace],
        proper=proper,
    )


# ═══════════════════════════════════════════════════════════
#  EXPORT
# ═══════════════════════════════════════════════════════════

def sample_values(candidate: EigenCandidate, points: int, seed: int) -> pd.DataFrame:
    values = [candidate.field(p) for p in sample_points(candidate.group, seed, points)]
    return pd.DataFrame({
        "index": np.arange(len(values), dtype=int),
        "re": [v.real for v in values],
        "im": [v.imag for v in values],
    })


def export_samples(space: SpaceSpec, candidate: str, points: int, seed: int, out: str) -> ExportSummary:
    """Заголовок `# <space> <candidate> <seed>`, далее index, re, im построчно."""
    chosen = find_candidate(catalog_for_space(space, seed), candidate)
    frame = sample_values(chosen, points, seed)

    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# {space.family.value} {candidate} {seed}\n")
        if len(frame):
            frame.to_csv(fh, sep="\t", header=False, index=False, float_format="%.17g")

    logger.info(f"exported {len(frame)} values of {candidate} on {space.label} to {path}")
    return ExportSummary(space=space.family.value, candidate=candidate, points=len(frame),
                         seed=seed, out=str(path))


def read_export(path: str) -> pd.DataFrame:
    """Разбор export-файла обратно в frame с колонками index, re, im."""
    return pd.read_csv(path, sep="\t", comment="#", header=None, names=["index", "re", "im"])

