"""Command-line front end.

Exit status is the machine contract: 0 success, 1 malformed input,
2 a certificate or lemma check failed, 3 a witness expansion stalled.
Every λ, t and width is read as an exact rational ("47/100" or "0.47").
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import coverage, thresholds, witness
from .cantor import BasicInterval, check_address, check_lambda, enumerate_rank
from .exactmath import format_fraction, to_rational
from .images import (
    all_hold,
    check_cover,
    check_double_cover,
    decompose_f,
    decompose_fk,
    double_cover_window,
    lemma_2_2_hypotheses,
    lemma_2_3_hypotheses,
    lemma_3_1_hypotheses,
)

EXIT_OK, EXIT_MALFORMED, EXIT_FAILED, EXIT_STALLED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for failed checks here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    lam: Optional[Fraction] = None
    k: Optional[int] = None
    rank: int = 0
    depth: int = 1
    t: Optional[Fraction] = None
    width: Fraction = thresholds.DEFAULT_WIDTH
    format: str = "text"
    rank_limit: int = coverage.DEFAULT_RANK_LIMIT

    def __post_init__(self):
        if self.lam is not None:
            check_lambda(self.lam)
        if self.rank > self.rank_limit:
            raise UsageError(f"rank {self.rank} exceeds the rank limit {self.rank_limit}")
        if self.rank < 0:
            raise UsageError("rank must be nonnegative")
        if self.width <= 0:
            raise UsageError("width must be positive")


def _rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _address(text: str) -> str:
    try:
        return check_address("" if text in ("e", "ε") else text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _config(args) -> RunConfig:
    return RunConfig(
        lam=getattr(args, "lam", None),
        k=getattr(args, "k", None),
        rank=getattr(args, "rank", 0) or 0,
        depth=getattr(args, "depth", 1),
        t=getattr(args, "t", None),
        width=getattr(args, "width", None) or thresholds.DEFAULT_WIDTH,
        format=args.format,
        rank_limit=args.rank_limit,
    )


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _opt(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else format_fraction(x)


# ---------------------------------------------------------------------------
# subcommands; each returns (exit status, text)


def cmd_thresholds(cfg: RunConfig, args) -> tuple[int, str]:
    rows = thresholds.threshold_table(cfg.width)
    if cfg.format == "json":
        return EXIT_OK, _dump([{
            "id": r["id"], "label": r["label"], "polynomial": r["polynomial"],
            "bracket": r["bracket"].to_dict(), "midpoint": format_fraction(r["midpoint"]),
            "printed": _opt(r["printed"]), "delta": _opt(r["delta"]),
        } for r in rows])
    if cfg.format == "csv":
        return EXIT_OK, _csv(
            ["id", "label", "polynomial", "lo", "hi", "midpoint", "printed", "delta"],
            [[r["id"], r["label"], r["polynomial"], format_fraction(r["bracket"].lo),
              format_fraction(r["bracket"].hi), f"{float(r['midpoint']):.6f}",
              "" if r["printed"] is None else f"{float(r['printed']):g}",
              "" if r["delta"] is None else f"{float(r['delta']):.2e}"] for r in rows],
        )
    lines = [f"{'id':<20} {'midpoint':>9} {'printed':>7} {'|Δ|':>9}  label / bracket"]
    for r in rows:
        printed = "" if r["printed"] is None else f"{float(r['printed']):g}"
        delta = "" if r["delta"] is None else f"{float(r['delta']):.2e}"
        b = r["bracket"]
        lines.append(f"{r['id']:<20} {float(r['midpoint']):9.6f} {printed:>7} {delta:>9}  {r['label']}")
        lines.append(f"{'':<49}[{b.lo}, {b.hi}]  root of {r['polynomial']}")
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_lambda_k(cfg: RunConfig, args) -> tuple[int, str]:
    k = cfg.k
    if k is None or k < 2:
        raise UsageError("--k must be an integer >= 2")
    lk, rk, xk = thresholds.lambda_k(k, cfg.width), thresholds.r_k(k, cfg.width), thresholds.x_k(k)
    xk_ok = thresholds.check_xk_below_lambda_k(k)
    if cfg.format == "json":
        return EXIT_OK, _dump({
            "k": k, "lambda_k": lk.to_dict(), "r_k": rk.to_dict(),
            "x_k": format_fraction(xk), "x_k_below_lambda_k": xk_ok,
            "h_k_at_x_k": format_fraction(thresholds.h_k(k, xk)),
        })
    if cfg.format == "csv":
        return EXIT_OK, _csv(["name", "lo", "hi", "midpoint"], [
            [f"lambda_{k}", format_fraction(lk.lo), format_fraction(lk.hi), f"{float(lk.midpoint):.9f}"],
            [f"r_{k}", format_fraction(rk.lo), format_fraction(rk.hi), f"{float(rk.midpoint):.9f}"],
        ])
    return EXIT_OK, (
        f"λ_{k} ≈ {float(lk.midpoint):.6f}  in [{lk.lo}, {lk.hi}]  root of {thresholds.lambda_k_entry(k).poly}\n"
        f"r_{k} ≈ {float(rk.midpoint):.6f}  in [{rk.lo}, {rk.hi}]  root of (1-λ)^{k + 1} = λ\n"
        f"x_{k} = {xk}; h_{k}(x_{k}) = {thresholds.h_k(k, xk)}; x_k < λ_k for k <= {k}: {xk_ok}\n"
    )


def cmd_certify(cfg: RunConfig, args) -> tuple[int, str]:
    if args.kind == "fk" and cfg.k is None:
        raise UsageError("certify fk needs --k")
    cert = coverage.certify(args.kind, cfg.lam, cfg.k if args.kind == "fk" else None)
    status = EXIT_OK if cert.passed else EXIT_FAILED
    if cfg.format == "json":
        return status, cert.to_json()
    if cfg.format == "csv":
        return status, _csv(["label", "lhs", "relation", "rhs", "holds"], [
            [c.label, format_fraction(c.lhs), c.relation, format_fraction(c.rhs), c.holds] for c in cert.checks
        ])
    return status, cert.summary() + "\n"


def cmd_gaps(cfg: RunConfig, args) -> tuple[int, str]:
    if cfg.k is None or cfg.k < 1:
        raise UsageError("--k must be a positive integer")
    report = coverage.gap_report(cfg.k, cfg.lam, cfg.rank, rank_limit=cfg.rank_limit, workers=args.workers)
    if cfg.format == "json":
        return EXIT_OK, _dump(report.to_dict())
    if cfg.format == "csv":
        return EXIT_OK, report.to_csv()
    lines = [f"f_{cfg.k}(A_{cfg.rank}, A_{cfg.rank}) at λ = {cfg.lam}: {len(report.union)} part(s)"]
    lines += [f"  part [{p.lo}, {p.hi}]" for p in report.union]
    lines += [f"  gap  ({g.lo}, {g.hi})  ≈ ({float(g.lo):.6f}, {float(g.hi):.6f})" for g in report.gaps]
    if not report.has_gaps:
        lines.append("  no gaps at this rank")
    lines.append(f"note: {report.note}")
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_witness(cfg: RunConfig, args) -> tuple[int, str]:
    if cfg.t is None:
        raise UsageError("--t is required")
    if cfg.depth < 1:
        raise UsageError("--depth must be at least 1")
    tree = witness.build_witness_tree(cfg.lam, cfg.t, cfg.depth, rank_scan=args.rank_scan)
    ok = witness.verify_tree(tree)
    status = EXIT_OK if ok else EXIT_FAILED
    if args.leaves_only or cfg.format == "csv":
        return status, tree.leaves_csv()
    if cfg.format == "json":
        return status, tree.to_json()
    leaves = tree.leaves()
    diag = witness.diagonal_counts(tree)
    lines = [
        f"witness tree for xy = {cfg.t} at λ = {cfg.lam}",
        f"  scale prefix {tree.scale_prefix} (target in window: {tree.t_scaled})",
        f"  root pair ({tree.root.address_i}, {tree.root.address_j})",
        f"  depth {tree.depth}, {len(leaves)} leaves, {len({l.pair for l in leaves})} distinct leaf pairs",
        f"  leaf ranks {min(l.rank for l in leaves)}..{max(l.rank for l in leaves)}",
        f"  diagonal nodes per branch: max {max(diag)}",
        f"  verify_tree: {ok}",
    ]
    return status, "\n".join(lines) + "\n"


def cmd_enumerate(cfg: RunConfig, args) -> tuple[int, str]:
    rows = enumerate_rank(cfg.rank, cfg.lam)
    if cfg.format == "json":
        return EXIT_OK, _dump([{"address": b.address, "interval": iv.to_pair()} for b, iv in rows])
    if cfg.format == "csv":
        return EXIT_OK, _csv(["address", "lo", "hi"], [[b.address, *iv.to_pair()] for b, iv in rows])
    return EXIT_OK, "".join(f"{str(b):>{max(cfg.rank, 1)}}  [{iv.lo}, {iv.hi}]\n" for b, iv in rows)


def cmd_check_lemma(cfg: RunConfig, args) -> tuple[int, str]:
    I, J = BasicInterval(args.i), BasicInterval(args.j)
    if I.rank != J.rank:
        raise UsageError(f"--i and --j must have the same rank ({I.rank} vs {J.rank})")
    lemma = args.lemma
    window = None
    if lemma == "3.1":
        if cfg.k is None or cfg.k < 2:
            raise UsageError("lemma 3.1 needs --k >= 2")
        hyps = lemma_3_1_hypotheses(cfg.k, I, J, cfg.lam)
        dec = decompose_fk(cfg.k, I, J, cfg.lam)
    else:
        hyps = (lemma_2_2_hypotheses if lemma == "2.2" else lemma_2_3_hypotheses)(I, J, cfg.lam)
        dec = decompose_f(I, J, cfg.lam)
    cover, double = check_cover(dec), check_double_cover(dec)
    if lemma == "2.3" and I <= J:
        a, b = I.interval(cfg.lam).lo, J.interval(cfg.lam).lo
        window = double_cover_window(I.rank, a, b, cfg.lam)
    hyp_ok = all_hold(hyps)
    concluded = double if lemma == "2.3" else cover
    status = EXIT_OK if hyp_ok and concluded else EXIT_FAILED
    payload = {
        "lemma": lemma,
        "lambda": format_fraction(cfg.lam),
        "k": cfg.k if lemma == "3.1" else None,
        "I": I.address,
        "J": J.address,
        "hypotheses": [c.to_dict() for c in hyps],
        "hypotheses_hold": hyp_ok,
        "decomposition": dec.to_list(),
        "cover": cover,
        "double_cover": double,
        "double_cover_window": None if window is None else window.to_pair(),
    }
    if cfg.format == "json":
        return status, _dump(payload)
    if cfg.format == "csv":
        rows = [[c.label, format_fraction(c.lhs), c.relation, format_fraction(c.rhs), c.holds] for c in hyps]
        rows += [["cover", "", "", "", cover], ["double_cover", "", "", "", double]]
        return status, _csv(["label", "lhs", "relation", "rhs", "holds"], rows)
    lines = [f"Lemma {lemma} at λ = {cfg.lam}, I = {I}, J = {J}" + (f", k = {cfg.k}" if lemma == "3.1" else "")]
    for c in hyps:
        lines.append(f"  [{'ok  ' if c.holds else 'FAIL'}] {c.label}")
    for name, iv in zip(("LL", "LR", "RL", "RR"), dec):
        lines.append(f"  {name}: [{iv.lo}, {iv.hi}]")
    lines.append(f"  cover: {cover}")
    lines.append(f"  double cover: {double}")
    if window is not None:
        lines.append(f"  double-cover window: ({window.lo}, {window.hi})")
    return status, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument(
        "--rank-limit", type=int, default=coverage.DEFAULT_RANK_LIMIT,
        help="largest rank accepted (default from CANTORCERT_RANK_LIMIT, else 10)",
    )

    parser = _Parser(prog="cantorcert", description="Exact checks for arithmetic on middle Cantor sets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("thresholds", parents=[common], help="catalog of λ thresholds")
    p.add_argument("--width", type=_rational)
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("lambda-k", parents=[common], help="λ_k and r_k brackets")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--width", type=_rational)
    p.set_defaults(func=cmd_lambda_k)

    p = sub.add_parser("certify", parents=[common], help="exact certificate for a theorem at λ")
    p.add_argument("kind", choices=("st", "fk", "circle"))
    p.add_argument("--lambda", dest="lam", type=_rational, required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("gaps", parents=[common], help="gaps of the finite-rank image union")
    p.add_argument("--lambda", dest="lam", type=_rational, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("witness", parents=[common], help="binary witness tree for xy = t")
    p.add_argument("--lambda", dest="lam", type=_rational, required=True)
    p.add_argument("--t", type=_rational, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--rank-scan", type=int, default=witness.DEFAULT_RANK_SCAN)
    p.add_argument("--leaves-only", action="store_true", help="emit the leaf pairs as CSV")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("enumerate", parents=[common], help="basic intervals of one rank")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_rational, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check-lemma", parents=[common], help="decompose a pair and test a lemma")
    p.add_argument("lemma", choices=("2.2", "2.3", "3.1"))
    p.add_argument("--lambda", dest="lam", type=_rational, required=True)
    p.add_argument("--i", type=_address, required=True)
    p.add_argument("--j", type=_address, required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_check_lemma)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        status, text = args.func(cfg, args)
    except witness.ExpansionStalled as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STALLED
    except (witness.NotCertified, witness.NoWindow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (UsageError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    out.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
