"""Command-line front end.

    pseudohomfly compute --word "1 p1"
    pseudohomfly verify markov --trials 200 --seed 7

Exit codes: 0 success, 1 verification failures, 2 bad arguments or
unparsable word, 3 state budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .braid_words import ParseError, PseudoWord, StrandIndexError, parse_word
from .coeff_ring import ExtScalar
from .hecke import PseudoLetterPresent
from .invariant import (
    DEFAULT_STATE_CAP,
    StateBudgetExceeded,
    classical_H,
    induced_trace,
    invariant_P,
    skein_evaluate,
    state_sum_P,
)
from .verify import SUITES, SuiteConfig, run_suite

WORD_COMMANDS = ("compute", "trace", "homfly", "statesum", "skein-eval")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class CliConfig:
    command: str
    word: str | None = None
    strands: int | None = None
    seed: int = 0
    trials: int = 100
    max_strands: int | None = None
    max_len: int | None = None
    max_pseudo: int | None = None
    format: str = "text"
    state_cap: int = DEFAULT_STATE_CAP
    suite: str | None = None
    backend: str | None = None
    timing: bool = False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pseudohomfly", description="HOMFLYPT-type invariant of pseudo links")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--backend", choices=("dense", "exact"), default=None)
    common.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)

    helps = {
        "compute": "the invariant P of the closure",
        "trace": "the induced trace T_n",
        "homfly": "the classical invariant H (classical words only)",
        "statesum": "P via the state sum over classical resolutions",
        "skein-eval": "P via recursive pseudo skein resolution",
    }
    for name in WORD_COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        p.add_argument("--word", required=True, help='braid word, e.g. "1 -2 p1"')
        p.add_argument("--strands", type=int, default=None)

    v = sub.add_parser("verify", parents=[common], help="run a randomized verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--max-strands", type=int, default=None)
    v.add_argument("--max-len", type=int, default=None)
    v.add_argument("--max-pseudo", type=int, default=None)
    v.add_argument("--timing", action="store_true", help="include elapsed_ms (makes output run-dependent)")
    return parser


def parse_config(argv: list[str] | None = None) -> CliConfig:
    ns = build_parser().parse_args(argv)
    cfg = CliConfig(
        command=ns.command,
        format=ns.format,
        backend=ns.backend,
        state_cap=ns.state_cap,
    )
    if ns.command == "verify":
        cfg.suite = ns.suite
        cfg.seed = ns.seed
        cfg.trials = ns.trials
        cfg.max_strands = ns.max_strands
        cfg.max_len = ns.max_len
        cfg.max_pseudo = ns.max_pseudo
        cfg.timing = ns.timing
    else:
        cfg.word = ns.word
        cfg.strands = ns.strands
    return cfg


def _emit(value: ExtScalar, fmt: str) -> str:
    value = value.reduced()
    if fmt == "json":
        return json.dumps(value.to_json())
    return str(value)


def _evaluate(cfg: CliConfig, w: PseudoWord) -> ExtScalar:
    if cfg.command == "compute":
        return invariant_P(w, cfg.backend)
    if cfg.command == "trace":
        return induced_trace(w, cfg.backend)
    if cfg.command == "homfly":
        return classical_H(w, cfg.backend)
    if cfg.command == "statesum":
        return state_sum_P(w, cfg.state_cap, cfg.backend)
    return skein_evaluate(w, "left", cfg.backend)


def run(cfg: CliConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if cfg.command == "verify":
        return _run_verify(cfg, out)
    try:
        w = parse_word(cfg.word or "", cfg.strands)
    except ParseError as exc:
        print(f"error: {exc} (offending token: {exc.token!r})", file=err)
        return EXIT_USAGE
    except (StrandIndexError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    try:
        value = _evaluate(cfg, w)
    except StateBudgetExceeded as exc:
        print(f"error: {exc}", file=err)
        return EXIT_BUDGET
    except PseudoLetterPresent as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    print(_emit(value, cfg.format), file=out)
    return EXIT_OK


def _run_verify(cfg: CliConfig, out) -> int:
    scfg = SuiteConfig(
        seed=cfg.seed,
        trials=cfg.trials,
        max_strands=cfg.max_strands,
        max_len=cfg.max_len,
        max_pseudo=cfg.max_pseudo,
        state_cap=cfg.state_cap,
        backend=cfg.backend,
    )
    result = run_suite(cfg.suite, scfg)
    reports = result if isinstance(result, list) else [result]
    failures = [dict(f, check=r.check) for r in reports for f in r.failures]
    if isinstance(result, list):
        payload = {
            "check": "all",
            "instances": sum(r.instances for r in reports),
            "failures": failures,
            "elapsed_ms": round(sum(r.elapsed_ms for r in reports), 3) if cfg.timing else None,
            "suites": [r.to_json(cfg.timing) for r in reports],
        }
    else:
        payload = result.to_json(cfg.timing)
    if cfg.format == "json":
        print(json.dumps(payload, indent=2), file=out)
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.check}: {r.instances} instances, {len(r.failures)} failures", file=out)
        for f in failures:
            print(f"  failure: {json.dumps(f)}", file=out)
    return EXIT_OK if not failures else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
