"""Qualitative probability on measurement events, and its representation.

Events are subsets of the outcomes a measurement can actually produce.
Comparing bets induces an order on events; here that order is computed
directly from branch weights, and the representation claim is verified the
brute-force way: enumerate every candidate outcome-measure with bounded
denominators and check which ones reproduce the order, are additive, and
are normalized.

Within a single measurement the order alone does not pin the measure (an
order-isomorphic impostor can exist), so the search also applies the
cross-measurement comparability constraint: an event of rational weight
k/N must tie exactly with a k-outcome event of an equal-weight companion
measurement, whose measure is forced to 1/N per outcome by symmetry,
additivity, and normalization.  Survivors of both screens are exactly the
weight function whenever the weights are representable within the bound.

The module also hosts a finite-table checker for the mixture-space utility
axioms (weak order, mixture independence, mixture solvability).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (
    DegenerateBetError,
    DomainMismatchError,
    InvalidGameError,
    SizeLimitError,
)
from .exact import format_rational
from .games import Consequence, Game
from .ordering import Ordering, compare

CHECK_SUPPORT_LIMIT = 16
SEARCH_SUPPORT_LIMIT = 6


@dataclass(frozen=True)
class Measurement:
    """A state together with the observable measured on it (no payoff)."""

    state: dict
    observable: Observable

    def __post_init__(self):
        object.__setattr__(self, "state", dict(self.state))
        for i in self.state:
            if i not in self.observable.eigen:
                raise DomainMismatchError(f"state index {i!r} has no eigenvalue")
        total = sum((a.weight for a in self.state.values()), Fraction(0))
        if total != 1:
            raise InvalidGameError(f"branch weights sum to {total}, expected 1")

    def occurring_spectrum(self) -> list:
        return sorted(
            {self.observable.eigenvalue(i) for i, a in self.state.items() if a.weight > 0}
        )

    def weight_of(self, eigenvalue: Fraction) -> Fraction:
        x = Fraction(eigenvalue)
        return sum(
            (a.weight for i, a in self.state.items() if self.observable.eigenvalue(i) == x),
            Fraction(0),
        )

    def weights(self) -> dict:
        return {x: self.weight_of(x) for x in self.occurring_spectrum()}


@dataclass(frozen=True)
class Event:
    """A set of occurring outcomes of one measurement."""

    measurement: Measurement
    members: frozenset

    def __post_init__(self):
        members = frozenset(Fraction(x) for x in self.members)
        occurring = set(self.measurement.occurring_spectrum())
        stray = members - occurring
        if stray:
            raise DomainMismatchError(
                f"event members outside the occurring spectrum: "
                f"{sorted(format_rational(x) for x in stray)}"
            )
        object.__setattr__(self, "members", members)

    def complement(self) -> "Event":
        occurring = frozenset(self.measurement.occurring_spectrum())
        return Event(self.measurement, occurring - self.members)


def event_weight(e: Event) -> Fraction:
    """Total weight of the branches contributing to the event."""
    return sum((e.measurement.weight_of(x) for x in e.members), Fraction(0))


def more_probable(e1: Event, e2: Event) -> Ordering:
    """Order two events by weight; the events may come from different measurements."""
    return compare(event_weight(e1), event_weight(e2))


@dataclass(frozen=True)
class Bet:
    """A game paying ``win`` on the event and ``lose`` off it."""

    event: Event
    win: Consequence
    lose: Consequence

    def __post_init__(self):
        if self.win.value is None or self.lose.value is None:
            raise DegenerateBetError("bet consequences need numeric values")
        if not self.win.value > self.lose.value:
            raise DegenerateBetError("a bet needs win strictly preferred to lose")

    def as_game(self) -> Game:
        m = self.event.measurement
        payoff = {}
        for x in m.occurring_spectrum():
            payoff[x] = self.win if x in self.event.members else self.lose
        return Game(dict(m.state), m.observable, payoff)


@dataclass(frozen=True)
class CandidateMeasure:
    """A per-outcome probability assignment to be tested against the order."""

    assignment: dict

    def __post_init__(self):
        norm = {Fraction(x): Fraction(p) for x, p in self.assignment.items()}
        for x, p in norm.items():
            if not (0 <= p <= 1):
                raise InvalidGameError(
                    f"assignment at {format_rational(x)} is {format_rational(p)}, "
                    "outside [0, 1]"
                )
        object.__setattr__(self, "assignment", norm)

    def event_pr(self, members) -> Fraction:
        total = Fraction(0)
        for x in members:
            if x not in self.assignment:
                raise DomainMismatchError(f"no assignment for outcome {format_rational(x)}")
            total += self.assignment[x]
        return total

    def to_jsonable(self) -> dict:
        return {
            format_rational(x): format_rational(p)
            for x, p in sorted(self.assignment.items())
        }


def weight_measure(m: Measurement) -> CandidateMeasure:
    """The branch-weight function itself, as a candidate."""
    return CandidateMeasure(m.weights())


def power_set_events(m: Measurement) -> list:
    """Every event of the measurement, smallest first; capped at 16 outcomes."""
    occurring = m.occurring_spectrum()
    if len(occurring) > CHECK_SUPPORT_LIMIT:
        raise SizeLimitError(
            f"power-set enumeration supports at most {CHECK_SUPPORT_LIMIT} outcomes, "
            f"got {len(occurring)}"
        )
    events = []
    for r in range(len(occurring) + 1):
        for combo in itertools.combinations(occurring, r):
            events.append(Event(m, frozenset(combo)))
    return events


@dataclass(frozen=True)
class MeasureReport:
    """Which of the three representation conditions a candidate satisfies."""

    order_represented: bool  # (a) Pr ranks events exactly as the weight order does
    additive: bool  # (b) Pr adds over disjoint unions
    normalized: bool  # (c) Pr of the full outcome set is 1
    counterexamples: dict = field(default_factory=dict)

    def all_hold(self) -> bool:
        return self.order_represented and self.additive and self.normalized


def _event_name(members) -> str:
    return "{" + ", ".join(format_rational(x) for x in sorted(members)) + "}"


def check_measure(e_space: Sequence, m: CandidateMeasure) -> MeasureReport:
    """Test a candidate against the full event space of one measurement."""
    if not e_space:
        raise InvalidGameError("empty event space")
    meas = e_space[0].measurement
    for e in e_space:
        if e.measurement != meas:
            raise InvalidGameError("check_measure expects events of a single measurement")
    occurring = meas.occurring_spectrum()
    if len(occurring) > CHECK_SUPPORT_LIMIT:
        raise SizeLimitError(
            f"check_measure supports at most {CHECK_SUPPORT_LIMIT} outcomes"
        )
    member_sets = {e.members for e in e_space}
    if len(member_sets) != 2 ** len(occurring) or len(e_space) != len(member_sets):
        raise InvalidGameError("event space must enumerate the power set exactly once")

    counterexamples: dict = {}

    total = m.event_pr(frozenset(occurring))
    normalized = total == 1
    if not normalized:
        counterexamples["normalized"] = (
            f"Pr(full outcome set) = {format_rational(total)}, expected 1"
        )

    # (a): group events by weight; within a group Pr must be constant, and
    # across groups sorted by weight Pr must strictly increase.
    by_weight: dict = {}
    for e in e_space:
        by_weight.setdefault(event_weight(e), []).append(e)
    order_ok = True
    prev_weight = None
    prev_pr = None
    prev_event = None
    for w in sorted(by_weight):
        group = by_weight[w]
        prs = {m.event_pr(e.members) for e in group}
        if len(prs) > 1:
            order_ok = False
            a, b = group[0], group[-1]
            counterexamples["order_represented"] = (
                f"events {_event_name(a.members)} and {_event_name(b.members)} have equal "
                f"weight {format_rational(w)} but different Pr"
            )
            break
        pr = prs.pop()
        if prev_pr is not None and not pr > prev_pr:
            order_ok = False
            counterexamples["order_represented"] = (
                f"event {_event_name(group[0].members)} outweighs "
                f"{_event_name(prev_event.members)} "
                f"({format_rational(w)} > {format_rational(prev_weight)}) "
                f"but its Pr does not exceed {format_rational(prev_pr)}"
            )
            break
        prev_weight, prev_pr, prev_event = w, pr, group[0]

    # (b): additivity over disjoint pairs; exhaustive for small supports,
    # a deterministic sample beyond that.
    additive = True
    if len(occurring) <= 8:
        pairs = itertools.combinations(range(len(e_space)), 2)
    else:
        rng = random.Random(20201)
        pairs = (
            (rng.randrange(len(e_space)), rng.randrange(len(e_space))) for _ in range(20000)
        )
    for i, j in pairs:
        a, b = e_space[i], e_space[j]
        if a.members & b.members:
            continue
        lhs = m.event_pr(a.members | b.members)
        rhs = m.event_pr(a.members) + m.event_pr(b.members)
        if lhs != rhs:
            additive = False
            counterexamples["additive"] = (
                f"Pr({_event_name(a.members | b.members)}) = {format_rational(lhs)} but the "
                f"disjoint parts sum to {format_rational(rhs)}"
            )
            break

    return MeasureReport(order_ok, additive, normalized, counterexamples)


def _farey(bound: int) -> list:
    """Reduced fractions in (0, 1] with denominator at most ``bound``."""
    out = set()
    for q in range(1, bound + 1):
        for p in range(1, q + 1):
            out.add(Fraction(p, q))
    return sorted(out)


@dataclass(frozen=True)
class UniquenessReport:
    """Outcome of the bounded exhaustive search for representing measures.

    ``measures`` holds the survivors of all screens; ``within_measurement``
    holds candidates that reproduce the single-measurement order but were
    eliminated by cross-measurement comparability.  ``conclusive`` is False
    when the weight function itself is not representable within the bound.
    """

    measures: tuple
    within_measurement: tuple
    candidates_tested: int
    conclusive: bool
    note: str


def uniqueness_search(m: Measurement, denominator_bound: int) -> UniquenessReport:
    """Enumerate bounded-denominator outcome measures that represent the order.

    Candidates are screened by the single-measurement report and then by
    the equal-weight companion comparison, which pins every rational-weight
    event's probability to its weight.
    """
    occurring = m.occurring_spectrum()
    k = len(occurring)
    if k > SEARCH_SUPPORT_LIMIT:
        raise SizeLimitError(
            f"uniqueness search supports at most {SEARCH_SUPPORT_LIMIT} outcomes, got {k}"
        )
    weights = [m.weight_of(x) for x in occurring]
    representable = all(w.denominator <= denominator_bound for w in weights)
    events = power_set_events(m)
    grid = _farey(denominator_bound)
    grid_set = set(grid)

    candidates = []
    tested = 0
    min_mass = grid[0]

    def singleton_consistent(partial: list) -> bool:
        # order on singleton events is necessary for (a); prune early
        j = len(partial) - 1
        for i in range(j):
            if compare(weights[i], weights[j]) is not compare(partial[i], partial[j]):
                return False
        return True

    def extend(idx: int, chosen: list, remaining: Fraction) -> None:
        nonlocal tested
        if idx == k - 1:
            # the last coordinate is forced by normalization
            if remaining in grid_set:
                trial = chosen + [remaining]
                tested += 1
                if singleton_consistent(trial):
                    candidates.append(trial)
            return
        still_needed = (k - 1 - idx) * min_mass
        for value in grid:
            if value + still_needed > remaining:
                break
            trial = chosen + [value]
            tested += 1
            if not singleton_consistent(trial):
                continue
            extend(idx + 1, trial, remaining - value)

    if k == 1:
        if Fraction(1) in grid_set:
            candidates.append([Fraction(1)])
            tested = 1
    else:
        extend(0, [], Fraction(1))

    within = []
    for values in candidates:
        cand = CandidateMeasure(dict(zip(occurring, values)))
        if check_measure(events, cand).all_hold():
            within.append(cand)

    survivors = []
    for cand in within:
        # companion comparability: every event of weight K/N ties with a
        # K-outcome event of the equal-weight N-outcome companion, whose
        # probability is forced to K/N
        if all(cand.event_pr(e.members) == event_weight(e) for e in events):
            survivors.append(cand)

    note = "weight function representable within the bound" if representable else (
        "inconclusive: branch weights need denominators beyond the bound"
    )
    return UniquenessReport(
        measures=tuple(survivors),
        within_measurement=tuple(c for c in within if c not in survivors),
        candidates_tested=tested,
        conclusive=representable,
        note=note,
    )


# ---------------------------------------------------------------------------
# finite checker for the mixture-space utility axioms


@dataclass(frozen=True)
class GambleTable:
    """Valued consequences plus a finite list of probability vectors over them."""

    consequences: tuple
    gambles: tuple

    def __post_init__(self):
        cons = tuple(self.consequences)
        rows = tuple(tuple(Fraction(p) for p in row) for row in self.gambles)
        for c in cons:
            if c.value is None:
                raise InvalidGameError(f"consequence {c.label!r} has no numeric value")
        for row in rows:
            if len(row) != len(cons):
                raise InvalidGameError("gamble length does not match the consequence list")
            if any(p < 0 for p in row):
                raise InvalidGameError("gamble probabilities must be nonnegative")
            if sum(row, Fraction(0)) != 1:
                raise InvalidGameError("gamble probabilities must sum to 1")
        object.__setattr__(self, "consequences", cons)
        object.__setattr__(self, "gambles", rows)

    def eu(self, row: Sequence) -> Fraction:
        return sum(
            (p * c.value for p, c in zip(row, self.consequences)), Fraction(0)
        )


def mix(lam: Fraction, f: Sequence, g: Sequence) -> tuple:
    """Convex combination of two probability vectors."""
    lam = Fraction(lam)
    return tuple(lam * a + (1 - lam) * b for a, b in zip(f, g))


@dataclass(frozen=True)
class VnmReport:
    """Finite-table verdicts for the mixture-space utility axioms."""

    weak_order: bool
    mixture_independence: bool
    mixture_solvability: bool
    unresolved: tuple
    counterexamples: dict

    def all_hold(self) -> bool:
        return self.weak_order and self.mixture_independence and self.mixture_solvability


def _dyadic_grid(depth: int):
    for d in range(1, depth + 1):
        scale = 1 << d
        for num in range(1, scale, 2):
            yield Fraction(num, scale)


def vnm_check(
    t: GambleTable,
    order: Callable[[Sequence, Sequence], Ordering] | None = None,
    grid_depth: int = 10,
) -> VnmReport:
    """Check the mixture-space utility axioms on a finite gamble table.

    ``order`` compares two probability vectors; it defaults to comparison
    of exact expected utilities, under which every axiom holds identically.
    Supplying a different order lets callers probe violations.  The
    solvability search runs over a dyadic grid; triples with no witness at
    the requested depth are reported as unresolved rather than failed.
    """
    if order is None:
        order = lambda a, b: compare(t.eu(a), t.eu(b))  # noqa: E731
    rows = list(t.gambles)
    counterexamples: dict = {}

    weak_order = True
    for a, b in itertools.combinations(rows, 2):
        if order(a, b) is not order(b, a).flipped():
            weak_order = False
            counterexamples["weak_order"] = "comparison is not antisymmetric"
            break
    if weak_order:
        at_least = (Ordering.MORE, Ordering.EQUIV)
        for a, b, c in itertools.permutations(rows, 3):
            ab, bc, ac = order(a, b), order(b, c), order(a, c)
            if ab in at_least and bc in at_least:
                strict = Ordering.MORE in (ab, bc)
                if (strict and ac is not Ordering.MORE) or (
                    not strict and ac is not Ordering.EQUIV
                ):
                    weak_order = False
                    counterexamples["weak_order"] = "comparison is not transitive"
                    break

    hull_samples = list(rows)
    for a, b in itertools.combinations(rows[:3], 2):
        hull_samples.append(mix(Fraction(1, 2), a, b))

    independence = True
    for f, g in itertools.permutations(rows, 2):
        if order(f, g) is not Ordering.MORE:
            continue
        for lam in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            for h in hull_samples:
                if order(mix(lam, f, h), mix(lam, g, h)) is not Ordering.MORE:
                    independence = False
                    counterexamples["mixture_independence"] = (
                        f"mixing with weight {format_rational(lam)} flipped a strict "
                        "preference"
                    )
                    break
            if not independence:
                break
        if not independence:
            break

    unresolved = []
    solvable = True
    for f, g, h in itertools.permutations(rows, 3):
        if order(f, g) is not Ordering.MORE or order(g, h) is not Ordering.MORE:
            continue
        alpha = next(
            (a for a in _dyadic_grid(grid_depth) if order(mix(a, f, h), g) is Ordering.MORE),
            None,
        )
        beta = next(
            (b for b in _dyadic_grid(grid_depth) if order(g, mix(b, f, h)) is Ordering.MORE),
            None,
        )
        if alpha is None or beta is None:
            solvable = False
            unresolved.append(
                f"no mixing weights found at depth {grid_depth} for a strict triple"
            )
    return VnmReport(
        weak_order=weak_order,
        mixture_independence=independence,
        mixture_solvability=solvable,
        unresolved=tuple(unresolved),
        counterexamples=counterexamples,
    )
