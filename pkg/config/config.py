"""
Configuration for domainlab.
Loads overrides from .env and defines all tunable limits.
"""

import os
from dotenv import load_dotenv

load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip().replace("_", "")
    return int(raw) if raw else default


# ─── Evaluation Budget ──────────────────────────────────────
# Counted in domain-profile evaluations / search nodes, never seconds
EVAL_BUDGET = _env_int("DOMAINLAB_BUDGET", 100_000_000)

# ─── Search Caps ────────────────────────────────────────────
TREE_ENUM_CAP = _env_int("DOMAINLAB_TREE_CAP", 8)          # 8^6 = 262,144 labeled trees
FAMILY_GEN_CAP = _env_int("DOMAINLAB_GEN_CAP", 8)          # 8! = 40,320 orders
ENUM_MAX_M = _env_int("DOMAINLAB_ENUM_MAX_M", 6)
ENUM_MAX_DOMAIN = _env_int("DOMAINLAB_ENUM_MAX_DOMAIN", 60)
FULL_TABLE_CAP = _env_int("DOMAINLAB_FULL_TABLE_CAP", 1_000_000)
MICRO_PROFILE_CAP = _env_int("DOMAINLAB_MICRO_CAP", 100_000)

# ─── Parallelism ────────────────────────────────────────────
# Only affects speed: every search merges worker results by a fixed key
N_JOBS = _env_int("DOMAINLAB_THREADS", 1)

# ─── Rules ──────────────────────────────────────────────────
DEFAULT_PNT_VOTERS = (0, 1)

# ─── Reports ────────────────────────────────────────────────
SCHEMA_VERSION = 1
