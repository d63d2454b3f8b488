"""Exact frequency-inference computations for repeated two-outcome measurements.

An agent who measures n independent copies of a two-outcome state and bets
only when the observed frequency clears a hedged threshold gets an exactly
computable expected utility: the acceptance region is a binomial tail, and
every term is an exact rational.  The normal-curve shortcut for that tail
is provided as the one floating-point surface of the whole library, and it
is quarantined here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateBetError, DomainMismatchError, InvalidGameError


@dataclass(frozen=True)
class RepeatedMeasurement:
    """n repetitions, weight p of outcome "0", payoffs x and y, hedge epsilon."""

    n: int
    p: Fraction
    x: Fraction
    y: Fraction
    epsilon: Fraction

    def __post_init__(self):
        if self.n < 1:
            raise InvalidGameError("n must be a positive integer")
        p = Fraction(self.p)
        if not (0 <= p <= 1):
            raise InvalidGameError(f"p must lie in [0, 1], got {p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))

    @property
    def q(self) -> Fraction:
        return 1 - self.p


def branch_weight(n: int, m: int, p: Fraction) -> Fraction:
    """Combined weight of the branches showing outcome "0" exactly m times."""
    if not 0 <= m <= n:
        raise DomainMismatchError(f"m must lie in [0, {n}], got {m}")
    p = Fraction(p)
    return math.comb(n, m) * p**m * (1 - p) ** (n - m)


def acceptance_threshold(rm: RepeatedMeasurement) -> Fraction:
    """Frequency p0 at which the hedged bet breaks even: p0*x + (1-p0)*y = epsilon."""
    if rm.x == rm.y:
        raise DegenerateBetError("equal payoffs leave the acceptance threshold undefined")
    return (rm.epsilon - rm.y) / (rm.x - rm.y)


def acceptance_weight(rm: RepeatedMeasurement) -> Fraction:
    """Total weight of the branches in which the bet is accepted.

    Acceptance is the non-strict rule m/n >= p0, with the tie included.
    """
    p0 = acceptance_threshold(rm)
    return sum(
        (branch_weight(rm.n, m, rm.p) for m in range(rm.n + 1) if Fraction(m) >= p0 * rm.n),
        Fraction(0),
    )


def strategy_eu(rm: RepeatedMeasurement) -> Fraction:
    """Exact expected utility of the frequency-betting strategy.

    In every accepted branch the agent takes a bet worth p*x + q*y, so the
    strategy is worth that stake times the acceptance weight.
    """
    return (rm.p * rm.x + rm.q * rm.y) * acceptance_weight(rm)


def gaussian_approx(rm: RepeatedMeasurement) -> float:
    """Normal-curve estimate of the strategy's expected utility.

    Evaluates (px+qy) * (1/2) * erfc(x0) with x0 = sqrt(n/2pq) * (p0 - p).
    This is the only floating-point computation in the library.
    """
    if rm.p in (Fraction(0), Fraction(1)):
        raise DegenerateBetError("the normal approximation needs 0 < p < 1")
    p0 = acceptance_threshold(rm)
    x0 = math.sqrt(rm.n / (2 * float(rm.p * rm.q))) * float(p0 - rm.p)
    stake = float(rm.p * rm.x + rm.q * rm.y)
    return stake * 0.5 * math.erfc(x0)
