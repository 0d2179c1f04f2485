"""
domainlab enumeration
=====================
Brute-force oracles behind the classification.

Layers
------
  search    — every two-voter tops-only strategy-proof rule (peak tables)
  decompose — match peak tables to projection / hybrid / dictatorship rules
  micro     — every strategy-proof rule on tiny domains (full tables)
"""

from enumeration.search import PeakTableCandidate, enum_topsonly_sp_rules, fill_order, weak_dominance
from enumeration.decompose import CrossCheck, Decomposition, RuleCheck, cross_check, decompose_rule, tree_bank
from enumeration.micro import enum_all_sp_rules_micro

__all__ = [
    "CrossCheck", "Decomposition", "PeakTableCandidate", "RuleCheck", "cross_check",
    "decompose_rule", "enum_all_sp_rules_micro", "enum_topsonly_sp_rules", "fill_order",
    "tree_bank", "weak_dominance",
]
