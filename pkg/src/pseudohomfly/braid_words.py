"""
Pseudo braid words: parsing, degree statistics, defining relations of the
pseudo braid monoid, Markov moves and random generation.

Text grammar: whitespace-separated tokens; a nonzero signed integer ``k`` is
sigma_|k| ^ sign(k), and ``pK`` is the pseudo generator p_K.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

CLASSICAL = "classical"
PSEUDO = "pseudo"


class ParseError(ValueError):
    def __init__(self, message: str, token: str | None = None):
        super().__init__(message)
        self.token = token


class ZeroIndexError(ParseError):
    pass


class StrandIndexError(IndexError):
    pass


class NoMatch(ValueError):
    pass


class IllegalConjugator(ValueError):
    pass


class IllegalDestab(ValueError):
    pass


@dataclass(frozen=True)
class Letter:
    kind: str
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.kind not in (CLASSICAL, PSEUDO):
            raise ValueError(f"unknown letter kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("letter index must be positive")
        if self.kind == PSEUDO and self.sign != 1:
            raise ValueError("pseudo letters carry no sign")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def sigma(cls, index: int, sign: int = 1) -> Letter:
        return cls(CLASSICAL, index, sign)

    @classmethod
    def p(cls, index: int) -> Letter:
        return cls(PSEUDO, index)

    @property
    def is_pseudo(self) -> bool:
        return self.kind == PSEUDO

    def inverse(self) -> Letter:
        if self.is_pseudo:
            raise ValueError("pseudo letters are not invertible")
        return Letter(CLASSICAL, self.index, -self.sign)

    def shifted(self, k: int) -> Letter:
        return Letter(self.kind, self.index + k, self.sign)

    def __str__(self) -> str:
        if self.is_pseudo:
            return f"p{self.index}"
        return str(self.sign * self.index)


def _letters(seq: Iterable[Letter | str | int]) -> tuple[Letter, ...]:
    out = []
    for item in seq:
        if isinstance(item, Letter):
            out.append(item)
        else:
            out.append(_parse_token(str(item)))
    return tuple(out)


@dataclass(frozen=True)
class PseudoWord:
    """A word in the pseudo braid monoid on ``strands`` strands."""

    strands: int
    letters: tuple[Letter, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "letters", _letters(self.letters))
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for let in self.letters:
            if let.index >= self.strands:
                raise StrandIndexError(
                    f"letter {let} needs {let.index + 1} strands, word has {self.strands}"
                )

    @property
    def e(self) -> int:
        """Exponent sum of the classical letters."""
        return sum(let.sign for let in self.letters if not let.is_pseudo)

    @property
    def d(self) -> int:
        """Number of pseudo letters."""
        return sum(1 for let in self.letters if let.is_pseudo)

    @property
    def is_classical(self) -> bool:
        return all(not let.is_pseudo for let in self.letters)

    def pseudo_positions(self) -> list[int]:
        return [i for i, let in enumerate(self.letters) if let.is_pseudo]

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __add__(self, other: PseudoWord) -> PseudoWord:
        return PseudoWord(max(self.strands, other.strands), self.letters + other.letters)

    def replace(self, pos: int, new: Sequence[Letter]) -> PseudoWord:
        """Replace the letter at ``pos`` by the letters ``new``."""
        return PseudoWord(self.strands, self.letters[:pos] + tuple(new) + self.letters[pos + 1 :])

    def with_strands(self, n: int) -> PseudoWord:
        return PseudoWord(n, self.letters)

    def inverse(self) -> PseudoWord:
        """Reversed, sign-flipped word; defined for classical words only."""
        return PseudoWord(self.strands, tuple(let.inverse() for let in reversed(self.letters)))

    def __str__(self) -> str:
        return " ".join(str(let) for let in self.letters)

    def to_json(self) -> dict:
        return {"strands": self.strands, "word": str(self)}

    @classmethod
    def from_json(cls, data: dict) -> PseudoWord:
        return parse_word(data.get("word", ""), data.get("strands"))


def _parse_token(tok: str) -> Letter:
    if tok.startswith(("p", "P")):
        body = tok[1:]
        if not body.isdigit():
            raise ParseError(f"malformed pseudo token {tok!r}", tok)
        k = int(body)
        if k == 0:
            raise ZeroIndexError(f"generator index 0 in token {tok!r}", tok)
        return Letter.p(k)
    try:
        k = int(tok)
    except ValueError:
        raise ParseError(f"malformed token {tok!r}", tok) from None
    if k == 0:
        raise ZeroIndexError("token '0' names no generator", tok)
    return Letter.sigma(abs(k), 1 if k > 0 else -1)


def parse_word(text: str, strands: int | None = None) -> PseudoWord:
    """Parse a braid word; with no ``strands`` the word lives on 1 + max index strands."""
    letters = tuple(_parse_token(tok) for tok in text.split())
    if strands is None:
        strands = 1 + max((let.index for let in letters), default=0)
    return PseudoWord(strands, letters)


def degree_stats(w: PseudoWord) -> tuple[int, int]:
    return w.e, w.d


def free_reduce(w: PseudoWord) -> PseudoWord:
    """Cancel adjacent classical pairs sigma_i^e sigma_i^-e until none remain."""
    stack: list[Letter] = []
    for let in w.letters:
        if (
            stack
            and not let.is_pseudo
            and not stack[-1].is_pseudo
            and stack[-1].index == let.index
            and stack[-1].sign == -let.sign
        ):
            stack.pop()
        else:
            stack.append(let)
    return PseudoWord(w.strands, tuple(stack))


# defining relations

RULES = (
    "braid-comm",
    "braid-yang-baxter",
    "pp-comm",
    "ps-far-comm",
    "ps-adjacent-comm",
    "mixed-left",
    "mixed-right",
    "free-inverse",
)

# Length of the forward left-hand side of each rule.
_LHS_LEN = {
    "braid-comm": 2,
    "braid-yang-baxter": 3,
    "pp-comm": 2,
    "ps-far-comm": 2,
    "ps-adjacent-comm": 2,
    "mixed-left": 3,
    "mixed-right": 3,
    "free-inverse": 2,
}


@dataclass(frozen=True)
class RelationInstance:
    """A rule applied at ``position``.

    ``forward`` rewrites the rule's left side into its right side.  Inserting a
    cancelling pair (free-inverse backward) also needs ``index`` and ``sign``.
    """

    rule: str
    position: int
    direction: str = "forward"
    index: int | None = None
    sign: int = 1

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.direction not in ("forward", "backward"):
            raise ValueError("direction is 'forward' or 'backward'")


def _c(i: int, s: int = 1) -> Letter:
    return Letter.sigma(i, s)


def _p(i: int) -> Letter:
    return Letter.p(i)


def _rewrite(rule: str, sub: Sequence[Letter], forward: bool) -> tuple[Letter, ...] | None:
    """Rewrite ``sub`` by ``rule``; None when the pattern does not match."""
    if rule == "braid-comm":
        a, b = sub
        if not a.is_pseudo and not b.is_pseudo and abs(a.index - b.index) >= 2:
            return (b, a)
        return None
    if rule == "pp-comm":
        a, b = sub
        if a.is_pseudo and b.is_pseudo and abs(a.index - b.index) >= 2:
            return (b, a)
        return None
    if rule in ("ps-far-comm", "ps-adjacent-comm"):
        a, b = sub
        pl, cl = (a, b) if forward else (b, a)
        if not pl.is_pseudo or cl.is_pseudo:
            return None
        gap = abs(pl.index - cl.index)
        if (rule == "ps-far-comm" and gap >= 2) or (rule == "ps-adjacent-comm" and gap == 0):
            return (b, a)
        return None
    if rule == "braid-yang-baxter":
        a, b, c = sub
        if any(let.is_pseudo for let in sub) or not (a.sign == b.sign == c.sign):
            return None
        if a.index != c.index:
            return None
        step = 1 if forward else -1
        if b.index != a.index + step:
            return None
        return (b, a, b)
    if rule in ("mixed-left", "mixed-right"):
        # mixed-left:  s_i s_{i+1} p_i     = p_{i+1} s_i s_{i+1}
        # mixed-right: s_{i+1} s_i p_{i+1} = p_i s_{i+1} s_i
        lead = 1 if rule == "mixed-left" else -1
        if forward:
            a, b, c = sub
            if a.is_pseudo or b.is_pseudo or not c.is_pseudo:
                return None
            if a.sign != 1 or b.sign != 1 or b.index != a.index + lead or c.index != a.index:
                return None
            return (_p(b.index), a, b)
        c, a, b = sub
        if not c.is_pseudo or a.is_pseudo or b.is_pseudo:
            return None
        if a.sign != 1 or b.sign != 1 or b.index != a.index + lead or c.index != b.index:
            return None
        return (a, b, _p(a.index))
    if rule == "free-inverse":
        a, b = sub
        if a.is_pseudo or b.is_pseudo or a.index != b.index or a.sign != -b.sign:
            return None
        return ()
    raise ValueError(f"unknown rule {rule!r}")


def _match_length(rule: str, forward: bool) -> int:
    if rule == "free-inverse" and not forward:
        return 0
    return _LHS_LEN[rule]


def apply_relation(w: PseudoWord, r: RelationInstance) -> PseudoWord:
    forward = r.direction == "forward"
    pos = r.position
    if r.rule == "free-inverse" and not forward:
        if r.index is None or not 1 <= r.index < w.strands or not 0 <= pos <= len(w):
            raise NoMatch("free-inverse insertion needs a valid index and position")
        new = (_c(r.index, r.sign), _c(r.index, -r.sign))
        return PseudoWord(w.strands, w.letters[:pos] + new + w.letters[pos:])
    k = _match_length(r.rule, forward)
    if pos < 0 or pos + k > len(w):
        raise NoMatch(f"{r.rule} needs {k} letters at position {pos}")
    out = _rewrite(r.rule, w.letters[pos : pos + k], forward)
    if out is None:
        raise NoMatch(f"{r.rule} ({r.direction}) does not match at position {pos}")
    return PseudoWord(w.strands, w.letters[:pos] + out + w.letters[pos + k :])


def find_matches(w: PseudoWord, rule: str, direction: str = "forward") -> list[RelationInstance]:
    forward = direction == "forward"
    k = _match_length(rule, forward)
    found = []
    for pos in range(len(w) - k + 1):
        if k and _rewrite(rule, w.letters[pos : pos + k], forward) is not None:
            found.append(RelationInstance(rule, pos, direction))
    return found


def relation_pairs(n: int) -> Iterator[tuple[str, tuple, PseudoWord, PseudoWord]]:
    """Every defining relation of PM_n with every admissible index choice.

    Yields ``(rule, params, lhs, rhs)``.
    """
    idx = range(1, n)
    signs = (1, -1)

    def word(*letters):
        return PseudoWord(n, letters)

    for i in idx:
        for j in idx:
            if abs(i - j) < 2:
                continue
            for s in signs:
                for t in signs:
                    yield "braid-comm", (i, s, j, t), word(_c(i, s), _c(j, t)), word(_c(j, t), _c(i, s))
            yield "pp-comm", (i, j), word(_p(i), _p(j)), word(_p(j), _p(i))
            for s in signs:
                yield "ps-far-comm", (i, j, s), word(_p(i), _c(j, s)), word(_c(j, s), _p(i))
    for i in idx:
        for s in signs:
            yield "ps-adjacent-comm", (i, s), word(_p(i), _c(i, s)), word(_c(i, s), _p(i))
            yield "free-inverse", (i, s), word(_c(i, s), _c(i, -s)), word()
    for i in range(1, n - 1):
        for s in signs:
            yield (
                "braid-yang-baxter",
                (i, s),
                word(_c(i, s), _c(i + 1, s), _c(i, s)),
                word(_c(i + 1, s), _c(i, s), _c(i + 1, s)),
            )
        yield "mixed-left", (i,), word(_c(i), _c(i + 1), _p(i)), word(_p(i + 1), _c(i), _c(i + 1))
        yield "mixed-right", (i,), word(_c(i + 1), _c(i), _p(i + 1)), word(_p(i), _c(i + 1), _c(i))


# Markov moves

def conjugate(w: PseudoWord, beta: PseudoWord | Sequence[Letter]) -> PseudoWord:
    """beta^-1 w beta for a classical braid beta."""
    if not isinstance(beta, PseudoWord):
        beta = PseudoWord(w.strands, tuple(beta))
    if not beta.is_classical:
        raise IllegalConjugator("conjugating braid must be classical")
    n = max(w.strands, beta.strands)
    return PseudoWord(n, beta.inverse().letters + w.letters + beta.letters)


def commute(w: PseudoWord, k: int) -> PseudoWord:
    """Rotate ``alpha beta`` into ``beta alpha`` where ``alpha`` is the first k letters."""
    if not 0 <= k <= len(w):
        raise ValueError(f"split point {k} outside word of length {len(w)}")
    return PseudoWord(w.strands, w.letters[k:] + w.letters[:k])


def stabilize(w: PseudoWord, kind: str) -> PseudoWord:
    """Append sigma_n, sigma_n^-1 or p_n, adding a strand."""
    n = w.strands
    new = {"pos": _c(n, 1), "neg": _c(n, -1), "pseudo": _p(n)}.get(kind)
    if new is None:
        raise ValueError(f"unknown stabilization {kind!r}")
    return PseudoWord(n + 1, w.letters + (new,))


def destabilize(w: PseudoWord) -> PseudoWord:
    """Drop a trailing stabilization letter on the last strand pair."""
    n = w.strands
    if n < 2 or not w.letters:
        raise IllegalDestab("nothing to destabilize")
    last = w.letters[-1]
    if last.index != n - 1:
        raise IllegalDestab("last letter does not act on the last strand pair")
    if any(let.index == n - 1 for let in w.letters[:-1]):
        raise IllegalDestab(f"index {n - 1} occurs before the final letter")
    return PseudoWord(n - 1, w.letters[:-1])


MOVES = ("conjugate", "commute", "stab_pos", "stab_neg", "stab_pseudo", "destab")


def markov_move(w: PseudoWord, move: str, arg=None) -> PseudoWord:
    if move == "conjugate":
        return conjugate(w, arg)
    if move == "commute":
        return commute(w, arg)
    if move in ("stab_pos", "stab_neg", "stab_pseudo"):
        return stabilize(w, move[5:])
    if move == "destab":
        return destabilize(w)
    raise ValueError(f"unknown Markov move {move!r}")


# random instances

def random_word(
    n: int,
    length: int,
    d_max: int,
    seed: int | random.Random = 0,
    classical_only: bool = False,
) -> PseudoWord:
    """Seeded random word: letters uniform over sigma_i^{+-1}, p_i until d_max pseudo letters are used."""
    if n < 1 or length < 0:
        raise ValueError("need n >= 1 and length >= 0")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if n == 1:
        return PseudoWord(1)
    classical = [_c(i, s) for i in range(1, n) for s in (1, -1)]
    full = classical + [_p(i) for i in range(1, n)]
    letters = []
    d = 0
    for _ in range(length):
        alphabet = classical if classical_only or d >= d_max else full
        let = rng.choice(alphabet)
        d += let.is_pseudo
        letters.append(let)
    return PseudoWord(n, tuple(letters))


def random_relation_instance(rule: str, n: int, rng: random.Random, pad: int = 3) -> tuple[PseudoWord, RelationInstance]:
    """A random word containing the left side of ``rule`` with random padding.

    The direction is chosen at random; ``n`` must allow the rule.
    """
    choices = [(lhs, rhs) for r, _, lhs, rhs in relation_pairs(n) if r == rule]
    if not choices:
        raise ValueError(f"rule {rule} has no instance on {n} strands")
    lhs, rhs = rng.choice(choices)
    forward = rng.random() < 0.5 or rule == "free-inverse"
    core = lhs if forward else rhs
    left = random_word(n, rng.randint(0, pad), 2, rng)
    right = random_word(n, rng.randint(0, pad), 2, rng)
    w = PseudoWord(n, left.letters + core.letters + right.letters)
    return w, RelationInstance(rule, len(left), "forward" if forward else "backward")
