"""
domainlab command-line layer
============================
  commands — RunConfig and one handler per subcommand
  report   — versioned JSON reports, pandas text rendering

main.py at the repository root builds the argparse tree and maps errors to
exit codes.
"""

from cli.commands import Outcome, RunConfig
from cli.report import build_report, load_report, save_report, to_json

__all__ = ["Outcome", "RunConfig", "build_report", "load_report", "save_report", "to_json"]
