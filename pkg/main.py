"""
domainlab — Main CLI Entry Point.
Classifies finite preference domains, builds and verifies strategy-proof
rules, and cross-checks the classification by enumeration.

Usage:
    python main.py check datasets/domains/ssp6.dom
    python main.py classify datasets/domains/cyclic4.dom --json out/cyclic4.json
    python main.py classify-family datasets/domains/ssp6.dom --family SSP
    python main.py gen --family SSP --tree datasets/trees/line4.tree --m 4 --threshold a2
    python main.py graph datasets/domains/ssp6.dom --dot
    python main.py rule verify --rule datasets/rules/projection_ssp6.json --domain datasets/domains/ssp6.dom
    python main.py enum datasets/domains/cyclic4.dom --decompose
    python main.py spots datasets/domains/ssp6.dom --tree datasets/trees/ssp6.tree --build-pnt
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from cli.commands import (
    Outcome, RunConfig, cmd_check, cmd_classify, cmd_classify_family, cmd_enum,
    cmd_gen, cmd_graph, cmd_rule_decompose, cmd_rule_verify, cmd_spots,
)
from cli.report import save_report, to_json
from config import EVAL_BUDGET, N_JOBS
from prefcore.errors import BudgetExceeded, DomainError, VerificationFailed

# Natural output per subcommand when --format is not given
_DEFAULT_FORMAT = {
    "check":           "json",
    "classify":        "json",
    "classify-family": "json",
    "gen":             "text",
    "graph":           "text",
    "rule":            "json",
    "enum":            "json",
    "spots":           "json",
}

_FAMILIES = {"sp": "SP", "hybrid": "Hybrid", "ssp": "SSP", "sh": "SH"}


def _family(value: str) -> str:
    try:
        return _FAMILIES[value.lower()]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown family '{value}' (choose SP, Hybrid, SSP or SH)") from None


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=EVAL_BUDGET,
                        help=f"Evaluation / search-node budget (default: {EVAL_BUDGET:,})")
    common.add_argument("--threads", type=int, default=N_JOBS,
                        help=f"Worker threads; affects speed only (default: {N_JOBS})")
    common.add_argument("--format", dest="output", choices=["text", "json", "dot"], default=None,
                        help="Output format on stdout")
    common.add_argument("--json", dest="json_path", type=str, default=None,
                        help="Also save the JSON report to this file")
    common.add_argument("-v", "--verbose", action="store_true",
                        help="Progress lines on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="domainlab",
        description="domainlab — classification of non-dictatorial unidimensional preference domains",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="Richness / unidimensionality report")
    p.add_argument("domain", help="Domain file")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("classify", parents=[common], help="Full classification verdict")
    p.add_argument("domain", help="Domain file")
    p.add_argument("--pnt-voters", type=int, nargs=2, default=None, metavar=("I", "J"),
                   help="0-based voters (i, j) of the constructed PNT rule")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("classify-family", parents=[common], help="Certify one family")
    p.add_argument("domain", help="Domain file")
    p.add_argument("--family", type=_family, default="SSP", help="SP | Hybrid | SSP | SH (default: SSP)")
    p.add_argument("--exhaustive", action="store_true",
                   help="Search every labeled tree instead of the structural candidates")
    p.set_defaults(handler=cmd_classify_family)

    p = sub.add_parser("gen", parents=[common], help="Generate a full family domain")
    p.add_argument("--family", type=_family, required=True, help="SP | Hybrid | SSP | SH")
    p.add_argument("--tree", required=True, help="Tree file (edge: <label> <label>)")
    labels = p.add_mutually_exclusive_group(required=True)
    labels.add_argument("--alternatives", help="Comma-separated labels, e.g. a,b,c,d")
    labels.add_argument("--m", type=int, help="Use default labels a1..am")
    p.add_argument("--threshold", default=None, help="SSP threshold label")
    p.add_argument("--thresholds", nargs=2, default=None, metavar=("A", "B"),
                   help="Hybrid / SH dual-threshold labels")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("graph", parents=[common], help="Adjacency graph of a domain")
    p.add_argument("domain", help="Domain file")
    p.add_argument("--dot", action="store_true", help="Shorthand for --format dot")
    p.add_argument("--weak", action="store_true", help="Weak adjacency (ignore tail agreement)")
    p.set_defaults(handler=cmd_graph)

    p = sub.add_parser("rule", help="Rule tools")
    rule_sub = p.add_subparsers(dest="rule_command", required=True)
    v = rule_sub.add_parser("verify", parents=[common], help="Check axioms of a rule on a domain")
    v.add_argument("--rule", required=True, help="Rule spec JSON file")
    v.add_argument("--domain", required=True, help="Domain file")
    v.add_argument("--axioms", default=None, help="Comma list of unanimity,sp,topsonly,anon,inv (default: all)")
    v.add_argument("--strict-invariance", action="store_true",
                   help="Check invariance on every completely reversed pair")
    v.set_defaults(handler=cmd_rule_verify)
    dc = rule_sub.add_parser("decompose", parents=[common], help="Match a two-voter peak table against canonical rules")
    dc.add_argument("--rule", required=True, help="Rule spec JSON file (peak_table)")
    dc.add_argument("--domain", required=True, help="Domain file")
    dc.set_defaults(handler=cmd_rule_decompose)

    p = sub.add_parser("enum", parents=[common], help="Enumerate tops-only strategy-proof rules")
    p.add_argument("domain", help="Domain file")
    p.add_argument("--decompose", action="store_true", help="Decompose each rule and cross-check")
    p.add_argument("--micro", action="store_true",
                   help="All strategy-proof rules (not only tops-only) as full tables; tiny domains only")
    p.add_argument("--n", type=int, default=2, help="Voters for --micro (default: 2)")
    p.set_defaults(handler=cmd_enum)

    p = sub.add_parser("spots", parents=[common], help="Critical spots on a tree")
    p.add_argument("domain", help="Domain file")
    p.add_argument("--tree", required=True, help="Tree file")
    p.add_argument("--build-pnt", action="store_true", help="Build and verify a PNT rule on the first spot")
    p.add_argument("--voters", type=int, nargs=2, default=[0, 1], metavar=("I", "J"))
    p.add_argument("--n", type=int, default=2, help="Number of voters (default: 2)")
    p.set_defaults(handler=cmd_spots)

    return parser


def _emit(cfg: RunConfig, out: Outcome) -> None:
    if cfg.output == "json":
        sys.stdout.write(to_json(out.report))
    else:
        sys.stdout.write(out.text)
    if cfg.json_path:
        path = save_report(out.report, cfg.json_path)
        print(f"[CLI] report saved to {path}", file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    output = args.output or ("dot" if getattr(args, "dot", False) else _DEFAULT_FORMAT[args.command])

    try:
        cfg = RunConfig(
            command=args.command,
            inputs=[v for k, v in vars(args).items() if k in ("domain", "tree", "rule") and v],
            budget=args.budget,
            output=output,
            threads=args.threads,
            verbose=args.verbose,
            json_path=args.json_path,
        )
        out = args.handler(cfg, args)
    except BudgetExceeded as exc:
        print(f"[CLI] {exc}", file=sys.stderr)
        return 2
    except VerificationFailed as exc:
        print(f"[CLI] {exc}", file=sys.stderr)
        return 1
    except (DomainError, ValueError, OSError) as exc:
        print(f"[CLI] {exc}", file=sys.stderr)
        return 1

    _emit(cfg, out)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
