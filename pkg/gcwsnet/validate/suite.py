"""
Default validation suite.

Suites: ``t1`` full-pair collisions, ``t2`` b-bit collisions through the uniform
pair map, ``0bit`` i*-only collisions, ``cs`` count-sketch estimator, ``nrff``
normalized random Fourier features. ``all`` runs every suite.
"""

from __future__ import annotations

import dataclasses
import logging
from typing import Iterable, List, Optional, Sequence, Tuple

from gcwsnet.core.errors import InvalidParameterError
from gcwsnet.core.random import Stream, keyed_generator
from gcwsnet.core.vectors import SparseVector
from gcwsnet.validate.checks import (
    check_bbit_collision,
    check_countsketch,
    check_countsketch_conditional,
    check_exact_collision,
    check_nrff,
    check_zero_bit,
)
from gcwsnet.validate.models import McReport, MeanCriterion, family_se_band
from gcwsnet.validate.pairs import random_pair

logger = logging.getLogger(__name__)

SUITES = ("t1", "t2", "0bit", "cs", "nrff")

EXACT_P = (0.5, 1.0, 2.0, 80.0)
ZERO_BIT_P = (0.5, 1.0, 2.0)
BBIT_B = (1, 2, 4, 8)
CS_GRID = [(256, 4, J, m) for J in (0.2, 0.5, 0.8) for m in (4, 16)]
CS_CONDITIONAL_GRID = [(64, 0, 256), (64, 32, 256), (256, 100, 1024)]
NRFF_GRID = [(rho, gamma) for rho in (0.0, 0.5, 0.9) for gamma in (1.0, 5.0)] + [(1.0, 1.0)]

_PAIRS_TAG = 100
_ZERO_BIT_PAIRS_TAG = 101


def anchor_pair() -> Tuple[SparseVector, SparseVector]:
    """(1, 2) and (2, 1): GMM 0.5."""
    return SparseVector.from_dense([1.0, 2.0]), SparseVector.from_dense([2.0, 1.0])


def make_pairs(
    n: int, seed: int, zero_bit: bool = False
) -> List[Tuple[SparseVector, SparseVector]]:
    """The anchor pair, except for the i*-only check, followed by ``n`` random pairs.

    Pairs meant for the i*-only check keep shared coordinates within half a
    percent of each other and redraw only where the first vector is empty. They
    leave out the anchor pair: its shared coordinates differ by a factor of two,
    where i*-only collisions run well above the kernel.
    """
    pairs = [] if zero_bit else [anchor_pair()]
    tag = _ZERO_BIT_PAIRS_TAG if zero_bit else _PAIRS_TAG
    for i in range(n):
        rng = keyed_generator(seed, Stream.VALIDATE, tag, i)
        if zero_bit:
            pairs.append(random_pair(rng, perturb=0.005, exclusive=True))
        else:
            pairs.append(random_pair(rng))
    return pairs


def resolve_suites(names: Iterable[str]) -> List[str]:
    out: List[str] = []
    for name in names:
        if name == "all":
            return list(SUITES)
        if name not in SUITES:
            raise InvalidParameterError(f"unknown suite {name!r}; choose from {SUITES} or all")
        if name not in out:
            out.append(name)
    return out


def with_family_band(reports: Sequence[McReport]) -> List[McReport]:
    """Judge the SE-criterion reports of one suite against the Bonferroni band."""
    n = sum(1 for r in reports if r.criterion == MeanCriterion.SE)
    band = family_se_band(n)
    return [
        dataclasses.replace(r, se_band=band) if r.criterion == MeanCriterion.SE else r
        for r in reports
    ]


def run_suite(
    suites: Sequence[str] = ("all",),
    trials: int = 100_000,
    variance_trials: int = 10_000,
    seed: int = 0,
    n_pairs: int = 20,
    nrff_k: int = 4096,
    workers: Optional[int] = None,
) -> List[McReport]:
    names = resolve_suites(suites)
    families: List[List[McReport]] = []
    pairs = make_pairs(n_pairs, seed) if {"t1", "t2"} & set(names) else []

    if "t1" in names:
        families.append(
            [
                check_exact_collision(u, v, p, trials, seed, workers)
                for p in EXACT_P
                for u, v in pairs
            ]
        )
    if "t2" in names:
        families.append(
            [
                check_bbit_collision(u, v, 1.0, b, trials, seed, workers)
                for b in BBIT_B
                for u, v in pairs
            ]
        )
    if "0bit" in names:
        zero_bit_pairs = make_pairs(n_pairs, seed, zero_bit=True)
        families.append(
            [
                check_zero_bit(u, v, p, trials, seed, workers=workers)
                for p in ZERO_BIT_P
                for u, v in zero_bit_pairs
            ]
        )
    if "cs" in names:
        families.append(
            [
                check_countsketch(k, b, J, m, variance_trials, seed, workers)
                for k, b, J, m in CS_GRID
            ]
            + [
                check_countsketch_conditional(k, a, B, variance_trials, seed, workers)
                for k, a, B in CS_CONDITIONAL_GRID
            ]
        )
    if "nrff" in names:
        families.append(
            [
                check_nrff(rho, gamma, nrff_k, variance_trials, seed, workers)
                for rho, gamma in NRFF_GRID
            ]
        )

    reports: List[McReport] = []
    for family in families:
        reports.extend(with_family_band(family))

    failed = sum(1 for r in reports if not r.passed)
    logger.info("validation: %d reports, %d failed", len(reports), failed)
    return reports


__all__ = [
    "SUITES",
    "anchor_pair",
    "make_pairs",
    "resolve_suites",
    "run_suite",
    "with_family_band",
]
