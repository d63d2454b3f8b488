"""Additive value functions built from qualitative preference oracles.

Given only a comparison, an addition, and a zero element, the ratio of any
element's value to a chosen unit is pinned down by queries of the form
"do n copies of y beat m copies of the unit?".  The set of ratios m/n that
lose is a cut of the rationals, and bisection narrows it to any requested
dyadic width.  The construction never produces a float: the answer is a
certified interval around the true ratio.

n-fold sums are assembled by doubling, so a depth-d cut costs O(d) oracle
additions per query rather than O(2^d).

The companion construction recovers probabilities from an additive act
valuation: the value of the act paying one unit on a single state, divided
by the value of the unit, is that state's probability.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

from .errors import (
    AxiomViolationError,
    OracleInconsistencyError,
    PreconditionError,
)
from .exact import format_rational
from .ordering import Ordering, compare

MAX_DOUBLINGS = 64


@dataclass(frozen=True)
class PreferenceOracle:
    """A weak order with an addition: ``compare``, ``add``, and a ``zero``.

    ``compare(a, b)`` returns an ``Ordering``; ``add`` must be associative
    and commutative up to indifference with ``zero`` as identity.  These
    laws are spot-checked on the elements a run actually touches, never
    proved globally.
    """

    compare: Callable[[Any, Any], Ordering]
    add: Callable[[Any, Any], Any]
    zero: Any


def integer_oracle() -> PreferenceOracle:
    """Exact integers under the usual order and addition."""
    return PreferenceOracle(compare=compare, add=lambda a, b: a + b, zero=0)


def money_oracle() -> PreferenceOracle:
    """Exact rational amounts under the usual order and addition."""
    return PreferenceOracle(compare=compare, add=lambda a, b: a + b, zero=Fraction(0))


class _FoldCache:
    """n-fold sums of one element, assembled by doubling."""

    def __init__(self, oracle: PreferenceOracle, element):
        self.oracle = oracle
        self.powers = [element]  # powers[k] holds (2^k)-fold sum

    def n_fold(self, n: int):
        if n <= 0:
            return self.oracle.zero
        k = 0
        while (1 << (k + 1)) <= n:
            k += 1
        while len(self.powers) <= k:
            top = self.powers[-1]
            self.powers.append(self.oracle.add(top, top))
        total = None
        bit = 0
        remaining = n
        while remaining:
            if remaining & 1:
                part = self.powers[bit]
                total = part if total is None else self.oracle.add(total, part)
            remaining >>= 1
            bit += 1
        return total


@dataclass(frozen=True)
class ValueCut:
    """A certified interval around V(y)/V(unit)."""

    lower: Fraction
    upper: Fraction
    unit: Any

    def width(self) -> Fraction:
        return self.upper - self.lower

    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def __str__(self) -> str:
        return f"[{format_rational(self.lower)}, {format_rational(self.upper)}]"


def _spot_check_axioms(oracle: PreferenceOracle, elements: Sequence) -> None:
    """Sampled instances of the additive-order laws on the touched elements."""
    cmp, add, zero = oracle.compare, oracle.add, oracle.zero
    for e in elements:
        if cmp(add(e, zero), e) is not Ordering.EQUIV:
            raise AxiomViolationError(
                "identity law failed: e + 0 is not indifferent to e"
            )
    for a in elements:
        for b in elements:
            if cmp(add(a, b), add(b, a)) is not Ordering.EQUIV:
                raise AxiomViolationError(
                    "commutativity failed: a + b is not indifferent to b + a"
                )
            # translation invariance of the order
            for c in elements[:2]:
                if cmp(a, b) is not cmp(add(a, c), add(b, c)):
                    raise AxiomViolationError(
                        "translation invariance failed: adding c flipped the order of a, b"
                    )
    if len(elements) >= 3:
        a, b, c = elements[0], elements[1], elements[2]
        if cmp(add(add(a, b), c), add(a, add(b, c))) is not Ordering.EQUIV:
            raise AxiomViolationError("associativity failed on a sampled triple")


def _bracket_integer(member: Callable[[int], bool], what: str) -> tuple:
    """Find consecutive integers [lo, lo+1] with member(lo) and not member(lo+1).

    ``member(m)`` must eventually turn false as m grows; a run of doublings
    that never falsifies it means the element has no finite bound, which is
    exactly an archimedean-law violation.
    """
    if not member(1):
        return 0, 1
    hi = 1
    for _ in range(MAX_DOUBLINGS):
        if not member(hi * 2):
            break
        hi *= 2
    else:
        raise AxiomViolationError(
            f"archimedean law failed: no integer bound found for {what} "
            f"after {MAX_DOUBLINGS} doublings"
        )
    lo = hi
    hi = hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if member(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


def build_value(oracle: PreferenceOracle, unit, y, depth: int) -> ValueCut:
    """Bracket V(y)/V(unit) to width 2^(1-depth) by membership bisection.

    The unit must beat zero.  For y above zero the membership test is
    "n-fold y beats m-fold unit"; below zero the test mirrors to
    "zero beats n-fold y plus m-fold unit" and the interval is negated.
    """
    if depth <= 0:
        raise ValueError("depth must be positive")
    if oracle.compare(unit, oracle.zero) is not Ordering.MORE:
        raise PreconditionError("the unit element must be strictly above zero")
    _spot_check_axioms(oracle, [oracle.zero, unit, y])

    side = oracle.compare(y, oracle.zero)
    if side is Ordering.EQUIV:
        return ValueCut(Fraction(0), Fraction(0), unit)

    y_folds = _FoldCache(oracle, y)
    unit_folds = _FoldCache(oracle, unit)

    if side is Ordering.MORE:
        def member(q: Fraction) -> bool:
            # q = m/n is below the ratio iff n-fold y beats m-fold unit
            n, m = q.denominator, q.numerator
            return oracle.compare(y_folds.n_fold(n), unit_folds.n_fold(m)) is Ordering.MORE
    else:
        def member(q: Fraction) -> bool:
            # mirrored cut for elements below zero
            n, m = q.denominator, q.numerator
            total = oracle.add(y_folds.n_fold(n), unit_folds.n_fold(m))
            return oracle.compare(oracle.zero, total) is Ordering.MORE

    lo_int, hi_int = _bracket_integer(lambda m: member(Fraction(m)), "the target element")
    lo, hi = Fraction(lo_int), Fraction(hi_int)
    for _ in range(depth - 1):
        mid = (lo + hi) / 2
        if member(mid):
            lo = mid
        else:
            hi = mid

    if side is Ordering.MORE:
        return ValueCut(lo, hi, unit)
    return ValueCut(-hi, -lo, unit)


def _indicator(states: Sequence, i: int, amount: Fraction) -> dict:
    act = {s: Fraction(0) for s in states}
    act[states[i]] = amount
    return act


def derive_act_probabilities(
    states: Sequence,
    valued_act_oracle: Callable[[Mapping], Fraction],
    unit_value: Fraction,
) -> list:
    """Recover state probabilities from an additive act valuation.

    An act maps each state to a numeric consequence value.  The probability
    of state i is the value of the act paying one unit on state i alone,
    divided by the unit's value.  The returned vector is validated against
    additivity, dominance, and unit independence on sampled acts; any
    failure raises instead of returning a best effort.
    """
    states = list(states)
    if not states:
        raise PreconditionError("at least one state is needed")
    unit_value = Fraction(unit_value)
    if unit_value <= 0:
        raise PreconditionError("the unit consequence must have positive value")

    probs = []
    for i in range(len(states)):
        v = Fraction(valued_act_oracle(_indicator(states, i, unit_value)))
        if v < 0:
            raise OracleInconsistencyError(
                f"indicator act on state {states[i]!r} has negative value "
                f"{format_rational(v)}; dominance over the zero act fails"
            )
        probs.append(v / unit_value)

    total = sum(probs, Fraction(0))
    if total != 1:
        raise OracleInconsistencyError(
            f"indicator-act values sum to {format_rational(total * unit_value)}, "
            f"not the constant act's value {format_rational(unit_value)}"
        )

    # additivity spot checks: a ramp act, an alternating act, and a constant
    samples = [
        {s: Fraction(j + 1) for j, s in enumerate(states)},
        {s: Fraction(1) if j % 2 == 0 else Fraction(-1) for j, s in enumerate(states)},
        {s: Fraction(7) for s in states},
    ]
    for act in samples:
        claimed = Fraction(valued_act_oracle(act))
        expected = sum((p * act[s] for p, s in zip(probs, states)), Fraction(0))
        if claimed != expected:
            raise OracleInconsistencyError(
                f"act valuation {format_rational(claimed)} disagrees with the "
                f"probability mixture {format_rational(expected)}"
            )

    # dominance spot check: raising one state's payoff cannot lower the value
    base = {s: Fraction(0) for s in states}
    raised = _indicator(states, 0, Fraction(1))
    if Fraction(valued_act_oracle(raised)) < Fraction(valued_act_oracle(base)):
        raise OracleInconsistencyError("dominance failed: a raised payoff lowered the value")

    # unit independence: a second unit must recover the same probabilities
    second = unit_value * 2 if unit_value != 2 else Fraction(3)
    for i, p in enumerate(probs):
        v = Fraction(valued_act_oracle(_indicator(states, i, second)))
        if v / second != p:
            raise OracleInconsistencyError(
                f"probability of state {states[i]!r} depends on the unit: "
                f"{format_rational(v / second)} vs {format_rational(p)}"
            )
    return probs
