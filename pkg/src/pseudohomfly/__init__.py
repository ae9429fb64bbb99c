"""Exact HOMFLYPT-type invariant of pseudo links from pseudo braid words."""

from .braid_words import PseudoWord, Letter, parse_word
from .coeff_ring import ExtScalar, MultiPoly, RationalFn
from .hecke import HeckeElement, Permutation, ocneanu_trace, word_to_element
from .invariant import (
    classical_H,
    constants,
    induced_trace,
    invariant_P,
    resolve,
    skein_evaluate,
    state_sum_P,
)

__all__ = [
    "ExtScalar",
    "HeckeElement",
    "Letter",
    "MultiPoly",
    "Permutation",
    "PseudoWord",
    "RationalFn",
    "classical_H",
    "constants",
    "induced_trace",
    "invariant_P",
    "ocneanu_trace",
    "parse_word",
    "resolve",
    "skein_evaluate",
    "state_sum_P",
    "word_to_element",
]
