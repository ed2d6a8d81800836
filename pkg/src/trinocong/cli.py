"""Command-line front end.

Subcommands: list-claims, verify, identities, oracle, all.  Records go to
``--out`` (default stdout); the pass/fail/inapplicable summary goes to stderr.
Exit status is 0 with no failures, 1 with any failure, 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

from . import claims as claims_mod
from .claims import CATALOG, DEFAULT_M_SET, default_param_sets, evaluate_lhs, sweep
from .exact import ORACLE_CLAIMS, GridBounds, identity_grids, oracle_claim
from .modring import primes_between
from .report import (
    FORMATS,
    congruence_record,
    identity_record,
    oracle_record,
    write_records,
)

SUBCOMMANDS = ("list-claims", "verify", "identities", "oracle", "all")
# Options whose values may start with '-' (negative ranges such as -10..10).
_RANGE_OPTIONS = {"--m-set", "--bc", "--primes"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    claims: list[str] = field(default_factory=lambda: sorted(CATALOG))
    primes: tuple[int, int] = (5, 3000)
    m_set: tuple[int, ...] = DEFAULT_M_SET
    bc: tuple[int, ...] = (-2, -1, 0, 1, 2)
    sun_n_max: int = 40
    bounds: GridBounds = field(default_factory=GridBounds)
    threads: int = 1
    out: str | None = None
    fmt: str = "jsonl"
    include_small_primes: bool = False
    oracle_max_p: int = 97
    timings: bool = False
    perturb: dict = field(default_factory=dict)
    thm3_direct: bool = False

    def __post_init__(self):
        lo, hi = self.primes
        if lo < 2 or hi < lo:
            raise UsageError(f"prime range {lo}..{hi} needs 2 <= lo <= hi")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")
        if self.fmt not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)}")
        unknown = [c for c in self.claims if c not in CATALOG]
        if unknown:
            raise UsageError(f"unknown claim(s): {', '.join(unknown)}")


def parse_int_set(text: str) -> tuple[int, ...]:
    """``"a..b"`` ranges and comma lists, e.g. ``-10..10`` or ``-3,2,5..7``."""
    values: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            values.extend(range(int(lo), int(hi) + 1))
        else:
            values.append(int(part))
    return tuple(dict.fromkeys(values))


def parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def _join_range_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _RANGE_OPTIONS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trinocong",
        description="Verify central trinomial coefficient congruences over prime sweeps.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("list-claims", help="print the claim catalog")
    for name, help_text in [
        ("verify", "congruence sweep over primes"),
        ("identities", "exact identity grids"),
        ("oracle", "modular pipeline vs exact-rational oracle"),
        ("all", "identities, verify and oracle in one report"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--claims", default=None, help="comma-separated claim ids (default: all)")
        p.add_argument("--primes", default="5..3000", help="prime range lo..hi")
        p.add_argument("--m-set", default="-10..10", help="m values for thm3; 0 and 1 are dropped")
        p.add_argument("--bc", default="-2..2", help="b and c values for sunN2 and identity grids")
        p.add_argument("--sun-n-max", type=int, default=40)
        p.add_argument("--lemma-n", type=int, default=GridBounds.lemma_n)
        p.add_argument("--th3id-n", type=int, default=GridBounds.th3id_n)
        p.add_argument("--certificate-n", type=int, default=GridBounds.certificate_n)
        p.add_argument("--forms-n", type=int, default=GridBounds.forms_n)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out", default=None, help="report path (default stdout)")
        p.add_argument("--format", dest="fmt", default="jsonl", choices=FORMATS)
        p.add_argument("--include-small-primes", action="store_true",
                       help="evaluate claims below their stated prime bound")
        p.add_argument("--oracle-max-p", type=int, default=97)
        p.add_argument("--timings", action="store_true",
                       help="record elapsed microseconds (reports are then not byte-stable)")
        p.add_argument("--thm3-direct", action="store_true",
                       help="use the O(p^2) double sum for thm3")
        p.add_argument("--perturb-rhs", action="append", default=[], metavar="ID=DELTA",
                       help=argparse.SUPPRESS)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if ns.subcommand == "list-claims":
        return RunConfig("list-claims")
    perturb = {}
    for item in ns.perturb_rhs:
        key, _, delta = item.partition("=")
        perturb[key] = int(delta or 1)
    bc = parse_int_set(ns.bc)
    if not bc:
        raise UsageError("--bc is empty")
    return RunConfig(
        subcommand=ns.subcommand,
        claims=sorted(CATALOG) if ns.claims is None else [c for c in ns.claims.split(",") if c],
        primes=parse_range(ns.primes),
        m_set=tuple(m for m in parse_int_set(ns.m_set) if m not in (0, 1)),
        bc=bc,
        sun_n_max=ns.sun_n_max,
        bounds=GridBounds(ns.lemma_n, ns.th3id_n, ns.certificate_n, ns.forms_n, min(bc), max(bc)),
        threads=ns.threads,
        out=ns.out,
        fmt=ns.fmt,
        include_small_primes=ns.include_small_primes,
        oracle_max_p=ns.oracle_max_p,
        timings=ns.timings,
        perturb=perturb,
        thm3_direct=ns.thm3_direct,
    )


@dataclass
class Tally:
    passed: int = 0
    failed: int = 0
    inapplicable: int = 0

    def add(self, ok: bool) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1


def _param_sets(cfg: RunConfig) -> dict:
    return {
        c: default_param_sets(c, m_set=cfg.m_set, n_max=cfg.sun_n_max, bc_range=cfg.bc)
        for c in cfg.claims
    }


def run_identities(cfg: RunConfig, tally: Tally) -> list[dict]:
    records = []
    for r in identity_grids(cfg.bounds):
        tally.add(r.passed)
        records.append(identity_record(r, timings=cfg.timings))
    return records


def run_verify(cfg: RunConfig, tally: Tally) -> list[dict]:
    lo, hi = cfg.primes
    outcome = sweep(
        cfg.claims,
        primes_between(lo, hi),
        _param_sets(cfg),
        include_small_primes=cfg.include_small_primes,
        threads=cfg.threads,
        perturb=cfg.perturb,
        direct_double_sum=cfg.thm3_direct,
    )
    tally.inapplicable += len(outcome.skipped)
    for r in outcome.results:
        tally.add(r.passed)
        if not r.passed:
            print(f"FAIL {r.claim_id} p={r.p} {r.params} {r.modulus}: {r.detail}", file=sys.stderr)
    return [congruence_record(r, timings=cfg.timings) for r in outcome.results]


def run_oracle(cfg: RunConfig, tally: Tally) -> list[dict]:
    lo, hi = cfg.primes
    primes = primes_between(lo, min(hi, cfg.oracle_max_p))
    param_sets = _param_sets(cfg)
    records = []
    for claim_id in sorted(c for c in cfg.claims if c in ORACLE_CLAIMS):
        claim = CATALOG[claim_id]
        for p in primes:
            ws = None
            for params in param_sets[claim_id]:
                if claim.applicability(p, params, cfg.include_small_primes) is not None:
                    tally.inapplicable += 1
                    continue
                if ws is None:
                    ws = claims_mod.PrimeWorkspace(p)
                start = time.perf_counter_ns()
                try:
                    pipeline = evaluate_lhs(claim_id, p, params, workspace=ws,
                                            include_small_primes=cfg.include_small_primes).value
                    oracle = oracle_claim(claim_id, p, params).value
                    ok = pipeline == oracle
                except (ArithmeticError, ValueError) as exc:
                    pipeline = oracle = None
                    ok = False
                    print(f"FAIL oracle {claim_id} p={p} {params}: {exc}", file=sys.stderr)
                micros = (time.perf_counter_ns() - start) // 1000 if cfg.timings else 0
                tally.add(ok)
                modulus = f"{p}^{claim.modulus_exponent}"
                records.append(oracle_record(claim_id, p, params, modulus, pipeline, oracle, ok, micros))
    return records


def _list_claims(out) -> None:
    for c in CATALOG.values():
        base = "p" if c.prime_indexed else "n"
        out.write(f"{c.id:<9} mod {base}^{c.modulus_exponent:<2} [{c.hypothesis}] "
                  f"{c.statement}  ({c.anchor})\n")


def execute(cfg: RunConfig) -> int:
    if cfg.subcommand == "list-claims":
        _list_claims(sys.stdout)
        return 0
    tally = Tally()
    records: list[dict] = []
    if cfg.subcommand in ("identities", "all"):
        records += run_identities(cfg, tally)
    if cfg.subcommand in ("verify", "all"):
        records += run_verify(cfg, tally)
    if cfg.subcommand in ("oracle", "all"):
        records += run_oracle(cfg, tally)
    try:
        if cfg.out is None:
            write_records(records, sys.stdout, cfg.fmt)
        else:
            with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
                write_records(records, fh, cfg.fmt)
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return 2
    print(
        f"{cfg.subcommand}: {tally.passed} pass, {tally.failed} fail, "
        f"{tally.inapplicable} inapplicable",
        file=sys.stderr,
    )
    return 1 if tally.failed else 0


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(_join_range_values(argv))
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = config_from_args(ns)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return execute(cfg)


def main() -> None:
    sys.exit(run())
