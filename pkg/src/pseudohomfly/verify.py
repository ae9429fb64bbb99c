"""
Seeded randomized verification suites.

Each suite returns a ``Report``; every failure records the suite seed, the
trial index and the offending word so it can be replayed exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .braid_words import Letter, PseudoWord, conjugate, commute, destabilize, random_word, stabilize
from .coeff_ring import Z
from .invariant import (
    DEFAULT_STATE_CAP,
    Report,
    _clock,
    classical_skein_check,
    constants,
    induced_trace,
    invariant_P,
    pseudo_skein_check,
    rho_relation_check,
    skein_evaluate,
    state_sum_P,
)

SUITES = ("markov", "rho", "trace-props", "statesum", "pseudo-skein", "classical-skein")

# (max_strands, max_len, max_pseudo) per suite
DEFAULT_BOUNDS = {
    "markov": (5, 8, 4),
    "rho": (5, 0, 0),
    "trace-props": (5, 8, 4),
    "statesum": (4, 8, 6),
    "pseudo-skein": (4, 8, 4),
    "classical-skein": (4, 8, 0),
}


@dataclass
class SuiteConfig:
    seed: int = 0
    trials: int = 100
    max_strands: int | None = None
    max_len: int | None = None
    max_pseudo: int | None = None
    state_cap: int = DEFAULT_STATE_CAP
    backend: str | None = None

    def bounds(self, suite: str) -> tuple[int, int, int]:
        n, length, d = DEFAULT_BOUNDS[suite]
        return (
            self.max_strands if self.max_strands is not None else n,
            self.max_len if self.max_len is not None else length,
            self.max_pseudo if self.max_pseudo is not None else d,
        )


def trial_rng(seed: int, suite: str, trial: int) -> random.Random:
    return random.Random(f"{seed}:{suite}:{trial}")


def _failure(cfg: SuiteConfig, trial: int, w: PseudoWord, move: str, **extra) -> dict:
    out = {"seed": cfg.seed, "trial": trial, "word": str(w), "strands": w.strands, "move": move}
    out.update(extra)
    return out


def _random_pseudo_word(rng: random.Random, lo: int, hi: int, max_len: int, max_pseudo: int) -> PseudoWord:
    n = rng.randint(lo, max(lo, hi))
    return random_word(n, rng.randint(0, max_len), max_pseudo, rng)


def sampled_words(suite: str, cfg: SuiteConfig) -> list[PseudoWord]:
    """Replay the base word of every trial of the markov or statesum suite."""
    if suite not in ("markov", "statesum"):
        raise ValueError(f"no replayable base words for {suite!r}")
    max_n, max_len, max_d = cfg.bounds(suite)
    return [
        _random_pseudo_word(trial_rng(cfg.seed, suite, t), 2, max_n, max_len, max_d) for t in range(cfg.trials)
    ]


def run_markov(cfg: SuiteConfig) -> Report:
    """P is unchanged by conjugation, commuting, and the three stabilizations."""
    start = _clock()
    max_n, max_len, max_d = cfg.bounds("markov")
    rep = Report("markov")
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, "markov", t)
        w = _random_pseudo_word(rng, 2, max_n, max_len, max_d)
        base = invariant_P(w, cfg.backend)
        beta = random_word(w.strands, rng.randint(1, 4), 0, rng)
        split = rng.randint(0, len(w))
        moved = {
            f"conjugate[{beta}]": conjugate(w, beta),
            f"commute[{split}]": commute(w, split),
            "stab_pos": stabilize(w, "pos"),
            "stab_neg": stabilize(w, "neg"),
            "stab_pseudo": stabilize(w, "pseudo"),
        }
        for move, w2 in moved.items():
            rep.instances += 1
            if move.startswith("stab") and destabilize(w2) != w:
                rep.failures.append(_failure(cfg, t, w, move, reason="destabilization"))
            elif invariant_P(w2, cfg.backend) != base:
                rep.failures.append(_failure(cfg, t, w, move))
    rep.elapsed_ms = _clock() - start
    return rep


def run_rho(cfg: SuiteConfig) -> Report:
    start = _clock()
    max_n, _, _ = cfg.bounds("rho")
    rep = Report("rho")
    for n in range(2, max_n + 1):
        sub = rho_relation_check(n)
        rep.instances += sub.instances
        for f in sub.failures:
            rep.failures.append({"seed": cfg.seed, "strands": n, **f})
    rep.elapsed_ms = _clock() - start
    return rep


def run_trace_props(cfg: SuiteConfig) -> Report:
    """Cyclicity, inclusion, and the g_n, g_n^-1, p_n stabilization rules for T_n."""
    start = _clock()
    max_n, max_len, max_d = cfg.bounds("trace-props")
    k = constants()
    rep = Report("trace-props")
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, "trace-props", t)
        n = rng.randint(1, max(1, max_n - 1))
        a = random_word(n, rng.randint(0, max_len), max_d, rng)
        b = random_word(n, rng.randint(0, max_len // 2), max_d // 2, rng)
        t_a = induced_trace(a, cfg.backend)
        up = a.with_strands(n + 1)
        checks = {
            "cyclic": (induced_trace(a + b, cfg.backend), induced_trace(b + a, cfg.backend)),
            "inclusion": (induced_trace(up, cfg.backend), t_a),
            "stab_pos": (induced_trace(stabilize(a, "pos"), cfg.backend), t_a * Z),
            "stab_neg": (induced_trace(stabilize(a, "neg"), cfg.backend), t_a * k.z_minus),
            "stab_pseudo": (induced_trace(stabilize(a, "pseudo"), cfg.backend), t_a * k.pseudo_factor),
        }
        for name, (lhs, rhs) in checks.items():
            rep.instances += 1
            if lhs != rhs:
                rep.failures.append(_failure(cfg, t, a, name, other=str(b)))
    rep.elapsed_ms = _clock() - start
    return rep


def run_statesum(cfg: SuiteConfig) -> Report:
    """invariant_P, state_sum_P and skein_evaluate agree."""
    start = _clock()
    max_n, max_len, max_d = cfg.bounds("statesum")
    rep = Report("statesum")
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, "statesum", t)
        w = _random_pseudo_word(rng, 2, max_n, max_len, max_d)
        direct = invariant_P(w, cfg.backend)
        rep.instances += 1
        if state_sum_P(w, cfg.state_cap, cfg.backend) != direct:
            rep.failures.append(_failure(cfg, t, w, "state_sum"))
        rep.instances += 1
        if skein_evaluate(w, "left", cfg.backend) != direct:
            rep.failures.append(_failure(cfg, t, w, "skein_evaluate"))
    rep.elapsed_ms = _clock() - start
    return rep


def run_pseudo_skein(cfg: SuiteConfig) -> Report:
    start = _clock()
    max_n, max_len, max_d = cfg.bounds("pseudo-skein")
    rep = Report("pseudo-skein")
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, "pseudo-skein", t)
        w = _random_pseudo_word(rng, 2, max_n, max(max_len - 1, 0), max(max_d - 1, 0))
        pos = rng.randint(0, len(w))
        w = PseudoWord(w.strands, w.letters[:pos] + (Letter.p(rng.randint(1, w.strands - 1)),) + w.letters[pos:])
        mark = rng.choice(w.pseudo_positions())
        sub = pseudo_skein_check(w, mark, cfg.backend)
        rep.instances += 1
        if not sub.passed:
            rep.failures.append(_failure(cfg, t, w, f"mark[{mark}]"))
    rep.elapsed_ms = _clock() - start
    return rep


def run_classical_skein(cfg: SuiteConfig) -> Report:
    start = _clock()
    max_n, max_len, _ = cfg.bounds("classical-skein")
    rep = Report("classical-skein")
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, "classical-skein", t)
        n = rng.randint(2, max(2, max_n))
        w = random_word(n, rng.randint(0, max_len), 0, rng)
        pos = rng.randint(0, len(w))
        idx = rng.randint(1, n - 1)
        sub = classical_skein_check(w, pos, idx, cfg.backend)
        rep.instances += 1
        if not sub.passed:
            rep.failures.append(_failure(cfg, t, w, f"insert[{pos}:{idx}]"))
    rep.elapsed_ms = _clock() - start
    return rep


RUNNERS = {
    "markov": run_markov,
    "rho": run_rho,
    "trace-props": run_trace_props,
    "statesum": run_statesum,
    "pseudo-skein": run_pseudo_skein,
    "classical-skein": run_classical_skein,
}


def run_suite(name: str, cfg: SuiteConfig) -> Report | list[Report]:
    if name == "all":
        return [RUNNERS[s](cfg) for s in SUITES]
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    return RUNNERS[name](cfg)
