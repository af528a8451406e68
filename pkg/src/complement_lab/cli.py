"""Command-line front end: ``complement-lab <command> [options]``.

Exit codes: 0 success, 1 usage or I/O error, 2 a failed exact check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field

from .complements import (
    ComplementSet,
    coverage_report,
    greedy_complement,
    load_complement,
    save_complement,
    schedule_complement,
)
from .errors import ComplementLabError, IntegrityError, RangeError
from .powers import build_powers
from .proofcheck.audit import AuditReport, inequality_audit
from .proofcheck.constants import constants_table, optimal_K
from .repcount import crosscheck_identity, dump_f, representation_counts

COMMANDS = ("build", "coverage", "repcount", "audit", "constants", "sweep")
GAPS_SHOWN = 20


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    r: int = 2
    k: int | None = None
    method: str = "greedy"
    alpha: float = math.pi**2 / 16
    n0: int = 0
    in_path: str | None = None
    out: str | None = None
    format: str | None = None
    workers: int | None = None
    deterministic: bool = False
    k_grid: list[int] = field(default_factory=list)
    n_grid: list[int] = field(default_factory=list)
    dump_f: str | None = None


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int(s: str) -> int:
    """Integers, also accepting exact scientific notation like 1e6."""
    try:
        return int(s)
    except ValueError:
        pass
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if not v.is_integer():
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    return int(v)


def _int_list(s: str) -> list[int]:
    return [_int(x.strip()) for x in s.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="complement-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=_int, help="range limit N")
        p.add_argument("--r", type=int, default=2, help="power exponent (default 2)")
        p.add_argument("--k", type=_int, help="bucket count K (default floor(e^(1+2pi))+1)")
        p.add_argument("--method", choices=("greedy", "schedule"), default="greedy")
        p.add_argument("--alpha", type=float, default=math.pi**2 / 16, help="schedule coefficient")
        p.add_argument("--n0", type=_int, default=0, help="gaps at n <= n0 are forgiven")
        p.add_argument("--in", dest="in_path", help="read the complement from a set file")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("text", "binary", "json", "csv"))
        p.add_argument("--workers", type=int, help="worker threads (env COMPLEMENT_LAB_THREADS)")
        p.add_argument("--deterministic", action="store_true", help="omit the timestamp")
        if name == "sweep":
            p.add_argument("--k-grid", type=_int_list, default=[])
            p.add_argument("--n-grid", type=_int_list, default=[])
        if name == "repcount":
            p.add_argument("--dump-f", help="write f(1..N) as an ACF1 binary dump")
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__})
    if cfg.workers is not None and cfg.workers < 1:
        raise UsageError("--workers must be a positive integer")
    if cfg.r < 2:
        raise UsageError("--r must be >= 2")
    if cfg.command not in ("constants", "sweep") and cfg.n is None and cfg.in_path is None:
        raise UsageError(f"{cfg.command}: --n or --in is required")
    return cfg


def _complement(cfg: RunConfig, n: int | None = None) -> tuple[ComplementSet, int]:
    """The configured complement and the N to work at."""
    n = cfg.n if n is None else n
    if cfg.in_path:
        W = load_complement(cfg.in_path)
        n = W.limit if n is None else n
        if n > W.limit:
            raise RangeError(f"--n {n} exceeds the limit {W.limit} of {cfg.in_path}")
        return W, n
    if cfg.method == "greedy":
        return greedy_complement(cfg.r, n), n
    return schedule_complement(cfg.alpha, n), n


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _envelope(cfg: RunConfig, payload: dict) -> dict:
    payload["config"] = asdict(cfg)
    if not cfg.deterministic:
        payload["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
    return payload


def _dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def cmd_build(cfg: RunConfig) -> int:
    if not cfg.out:
        raise UsageError("build: --out is required")
    W, n = _complement(cfg)
    fmt = cfg.format or "binary"
    if fmt not in ("text", "binary"):
        raise UsageError("build: --format must be text or binary")
    save_complement(W, cfg.out, fmt)
    print(f"wrote {len(W)} elements over [0, {W.limit}] to {cfg.out} ({fmt})")
    return 0


def cmd_coverage(cfg: RunConfig) -> int:
    W, n = _complement(cfg)
    rep = coverage_report(W, build_powers(cfg.r, n), n, cfg.n0, workers=cfg.workers)
    gaps = rep.uncovered[:GAPS_SHOWN].tolist()
    if cfg.format == "json":
        _emit(cfg, _dumps(_envelope(cfg, {"n": n, "n0": cfg.n0, "uncovered_count": rep.uncovered_count, "first_gaps": gaps})))
    else:
        _emit(cfg, f"uncovered_count: {rep.uncovered_count}\nfirst_gaps: {' '.join(map(str, gaps))}\n")
    return 0


def cmd_repcount(cfg: RunConfig) -> int:
    W, n = _complement(cfg)
    ps = build_powers(cfg.r, n)
    prof = representation_counts(W, ps, n, n0=cfg.n0, workers=cfg.workers)
    ident = crosscheck_identity(W, ps, n, profile=prof)
    if cfg.dump_f:
        dump_f(prof, cfg.dump_f)
    summary = {
        "n": n,
        "r": cfg.r,
        "n0": cfg.n0,
        "set_size": len(W),
        "total": prof.total,
        "identity_rhs": ident.rhs,
        "raw_excess": prof.raw_excess,
        "adjusted_excess": prof.adjusted_excess,
        "excess_ratio": prof.adjusted_excess / n,
        "uncovered_count": prof.uncovered_count,
    }
    if cfg.format in (None, "json"):
        _emit(cfg, _dumps(_envelope(cfg, summary)))
    else:
        _emit(cfg, "".join(f"{k}: {v}\n" for k, v in summary.items()))
    return 0


def _audit(cfg: RunConfig, n: int | None = None, k: int | None = None) -> AuditReport:
    W, n = _complement(cfg, n)
    K = k if k is not None else cfg.k if cfg.k is not None else optimal_K()
    ps = build_powers(cfg.r, n)
    prof = representation_counts(W, ps, n, n0=cfg.n0, workers=cfg.workers)
    return inequality_audit(W, ps, n, K, prof, workers=cfg.workers)


def _audit_text(report: AuditReport) -> str:
    lines = [f"N={report.N} r={report.r} K={report.K} n0={report.n0}"]
    for s in report.steps:
        lines.append(f"{'PASS' if s.verdict else 'FAIL'}  {s.cls:<25} {s.name:<26} lhs={s.lhs} rhs={s.rhs}")
    return "\n".join(lines) + "\n"


def cmd_audit(cfg: RunConfig) -> int:
    code = 0
    try:
        report = _audit(cfg)
    except IntegrityError as exc:
        report = getattr(exc, "report", None)
        print(f"integrity error: {exc}", file=sys.stderr)
        if report is None:
            return 2
        code = 2
    if cfg.format == "text":
        _emit(cfg, _audit_text(report))
    else:
        _emit(cfg, _dumps(_envelope(cfg, report.to_dict())))
    return code


def cmd_constants(cfg: RunConfig) -> int:
    table = constants_table(cfg.r).as_dict()
    if cfg.format == "json":
        _emit(cfg, _dumps(table))
    else:
        _emit(cfg, "".join(f"{k}: {v!r}\n" for k, v in table.items()))
    return 0


def cmd_sweep(cfg: RunConfig) -> int:
    n_grid = cfg.n_grid or ([cfg.n] if cfg.n else [])
    k_grid = cfg.k_grid or [cfg.k or optimal_K()]
    if not n_grid and not cfg.in_path:
        raise UsageError("sweep: give --n, --n-grid or --in")
    n_grid = n_grid or [None]
    buf = io.StringIO()
    writer = None
    code = 0
    for n in n_grid:
        for k in k_grid:
            try:
                rep = _audit(cfg, n, k)
            except IntegrityError as exc:
                rep = exc.report
                code = 2
            row = {
                "n": rep.N,
                "k": rep.K,
                "r": rep.r,
                "n0": rep.n0,
                "uncovered_count": rep.uncovered_count,
                "raw_excess": rep.raw_excess,
                "adjusted_excess": rep.adjusted_excess,
            }
            for s in rep.steps:
                row[s.name] = s.lhs
                row[f"{s.name}_rhs"] = s.rhs
                row[f"{s.name}_verdict"] = "pass" if s.verdict else "fail"
            if writer is None:
                writer = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
                writer.writeheader()
            writer.writerow(row)
    _emit(cfg, buf.getvalue())
    return code


HANDLERS = {
    "build": cmd_build,
    "coverage": cmd_coverage,
    "repcount": cmd_repcount,
    "audit": cmd_audit,
    "constants": cmd_constants,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        return HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return 2
    except (ComplementLabError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
