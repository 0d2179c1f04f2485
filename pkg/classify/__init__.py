"""
domainlab classify
==================
End-to-end domain classification and critical-spot analysis.

Layers
------
  pipeline — classify(d) → Verdict
  spots    — critical spots, the spot criterion, verified PNT rules
"""

from classify.spots import CriticalSpot, build_verified_pnt, find_critical_spots, spot_at, verify_prop1
from classify.pipeline import ConstructedRule, Verdict, classify

__all__ = [
    "ConstructedRule", "CriticalSpot", "Verdict", "build_verified_pnt", "classify",
    "find_critical_spots", "spot_at", "verify_prop1",
]
