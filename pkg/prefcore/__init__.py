"""
domainlab preference core
=========================
Alternatives, preferences, domains, profiles and elementary order queries.

Layers
------
  preferences — Alternative / Preference / Domain / Profile + order queries
  io          — domain-file parsing and serialisation
  budget      — shared evaluation counter for exhaustive searches
  parallel    — deterministic joblib fan-out
  errors      — DomainError, BudgetExceeded, VerificationFailed
"""

from prefcore.errors import BudgetExceeded, DomainError, VerificationFailed
from prefcore.budget import Budget, ensure_budget
from prefcore.preferences import (
    Alternative, Domain, Preference, Profile,
    best_in, default_labels, is_complete_reversal, rank_of, restrict,
    seconds_set, universal_domain, worst_in,
)
from prefcore.parallel import run_chunks, split
from prefcore.io import domain_to_dict, dump_domain, load_domain, parse_domain, parse_domain_json

__all__ = [
    "Alternative", "Budget", "BudgetExceeded", "Domain", "DomainError", "VerificationFailed",
    "Preference", "Profile", "best_in", "default_labels", "domain_to_dict",
    "dump_domain", "ensure_budget", "is_complete_reversal", "load_domain",
    "parse_domain", "parse_domain_json", "rank_of", "restrict", "run_chunks", "split",
    "seconds_set", "universal_domain", "worst_in",
]
