"""
=============================================================================
 SYMMETRIC SPACE LAB — CONFIGURATION
 Допуски, параметры проверок и логирование, переопределяются через .env
=============================================================================
"""
import os
from dataclasses import dataclass

from dotenv import load_dotenv

load_dotenv()


def _flag(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


# ═══════════════════════════════════════════════════════════
#  NUMERICS
# ═══════════════════════════════════════════════════════════
@dataclass
class NumericsConfig:
    MEMBERSHIP_TOL: float = float(os.getenv("MEMBERSHIP_TOL", "1e-8"))    # вход в группу
    ALGEBRA_TOL: float = float(os.getenv("ALGEBRA_TOL", "1e-8"))          # Killing-form inputs
    ISOTROPY_TOL: float = float(os.getenv("ISOTROPY_TOL", "1e-10"))
    GRAM_SCHMIDT_TOL: float = 1e-10     # порог отбрасывания при ортонормировании
    BRANCH_CUT_TOL: float = 1e-12       # |Im φ| не больше этого считается нулём
    SAMPLE_SCALE: float = float(os.getenv("SAMPLE_SCALE", "1.0"))  # std коэффициентов алгебры


# ═══════════════════════════════════════════════════════════
#  VERIFICATION HARNESS
# ═══════════════════════════════════════════════════════════
@dataclass
class VerificationConfig:
    DEFAULT_TOLERANCE: float = float(os.getenv("VERIFY_TOLERANCE", "1e-8"))
    DEFAULT_SAMPLES: int = int(os.getenv("VERIFY_SAMPLES", "100"))
    DEFAULT_SEED: int = int(os.getenv("VERIFY_SEED", "42"))

    # --- Killing forms ---
    KILLING_PAIRS: int = 50
    KILLING_TOLERANCE: float = 1e-9     # относительное, |B − B_brute| / max(1, |B_brute|)

    # --- Quotients / log-power fields ---
    QUOTIENT_FLOOR: float = float(os.getenv("QUOTIENT_FLOOR", "0.1"))
    MAX_RESAMPLES: int = 25             # на точку, потом сдаёмся

    # --- Output ---
    RECORD_WALL_TIME: bool = _flag("RECORD_WALL_TIME", "0")  # при 0 отчёты побайтно одинаковые
    SHOW_PROGRESS: bool = _flag("SHOW_PROGRESS", "1")


# ═══════════════════════════════════════════════════════════
#  LOGGING
# ═══════════════════════════════════════════════════════════
@dataclass
class LoggingConfig:
    LOG_FORMAT: str = os.getenv("LOG_FORMAT", "TEXT").upper()   # TEXT | JSON
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO").upper()
    LOG_FILE: str = os.getenv("LOG_FILE", "logs/symspace.json")


# ═══════════════════════════════════════════════════════════
#  SINGLETONS
# ═══════════════════════════════════════════════════════════
numerics_config = NumericsConfig()
verify_config = VerificationConfig()
log_config = LoggingConfig()
