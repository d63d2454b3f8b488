"""Betting games over branching measurements, and their canonical forms.

A game is a triple (state, observable, payoff): the observable is measured
on the state and the agent receives, in each branch, the consequence
attached to the eigenvalue recorded there.  The canonical form keeps only
what bets can distinguish: which consequences occur with nonzero weight,
and how much total weight each one carries.  Two games with equal canonical
forms are interchangeable for every operation in this library.

Consequences merge by label.  Numeric values ride along as an optional
valuation; two different labels with equal values stay distinct until a
value-level merge is requested explicitly (see the derivation module).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .errors import (
    DomainMismatchError,
    EmptyGameError,
    InvalidGameError,
    UnvaluedConsequenceError,
)
from .exact import UNIT_AMPLITUDE, Amplitude, amp_mul, format_rational

ONE = Fraction(1)


@dataclass(frozen=True)
class Consequence:
    """An outcome handed to the agent.

    Identity is the label; ``value`` is an optional numeric utility used by
    the value-level operations.
    """

    label: str
    value: Fraction | None = None

    def to_jsonable(self) -> dict:
        out = {"label": self.label}
        if self.value is not None:
            out["value"] = format_rational(self.value)
        return out


def numeric_consequence(v: Fraction) -> Consequence:
    """Consequence labeled by its own exact value."""
    v = Fraction(v)
    return Consequence(format_rational(v), v)


@dataclass(frozen=True)
class Observable:
    """Assignment of eigenvalues to basis indices; degeneracy is allowed."""

    eigen: dict

    def __post_init__(self):
        object.__setattr__(self, "eigen", {i: Fraction(x) for i, x in self.eigen.items()})

    def eigenvalue(self, index: str) -> Fraction:
        try:
            return self.eigen[index]
        except KeyError:
            raise DomainMismatchError(f"index {index!r} has no eigenvalue") from None

    def spectrum(self) -> set:
        return set(self.eigen.values())

    def indices_for(self, x: Fraction) -> list:
        return sorted(i for i, v in self.eigen.items() if v == x)

    def is_degenerate(self) -> bool:
        return len(self.spectrum()) < len(self.eigen)


PayoffValue = Consequence  # leaf payoffs; composite games widen this below


@dataclass(frozen=True)
class Game:
    """A (state, observable, payoff) triple over a labeled basis.

    ``state`` maps basis indices to amplitudes, ``payoff`` maps eigenvalues
    to consequences.  Construction is permissive; ``validate_game`` (called
    by every operation that needs well-formedness) enforces normalization
    and payoff coverage of the occurring spectrum.
    """

    state: dict
    observable: Observable
    payoff: dict

    def __post_init__(self):
        object.__setattr__(self, "state", dict(self.state))
        object.__setattr__(self, "payoff", {Fraction(x): c for x, c in self.payoff.items()})

    def support(self) -> list:
        return sorted(i for i, a in self.state.items() if a.weight > 0)

    def total_weight(self) -> Fraction:
        return sum((a.weight for a in self.state.values()), Fraction(0))

    def occurring_spectrum(self) -> set:
        return {self.observable.eigenvalue(i) for i in self.support()}

    def consequence_at(self, eigenvalue: Fraction) -> Consequence:
        try:
            return self.payoff[eigenvalue]
        except KeyError:
            raise InvalidGameError(f"no payoff for occurring eigenvalue {eigenvalue}") from None


def validate_game(g: Game) -> None:
    """Raise unless ``g`` satisfies the structural invariants."""
    for i in g.state:
        if i not in g.observable.eigen:
            raise DomainMismatchError(f"state index {i!r} has no eigenvalue in the observable")
    if not g.state:
        raise EmptyGameError("game has no branches")
    total = g.total_weight()
    if total != ONE:
        raise InvalidGameError(f"branch weights sum to {total}, expected 1")
    for x in g.occurring_spectrum():
        if x not in g.payoff:
            raise InvalidGameError(f"no payoff for occurring eigenvalue {format_rational(x)}")


def consequence_weight(g: Game, c: Consequence) -> Fraction:
    """Total weight of the branches whose consequence has ``c``'s label."""
    validate_game(g)
    total = Fraction(0)
    for i in g.support():
        x = g.observable.eigenvalue(i)
        if g.consequence_at(x).label == c.label:
            total += g.state[i].weight
    return total


@dataclass(frozen=True)
class CanonicalGame:
    """The decision-relevant residue of a game.

    Branches pair each occurring consequence with its total weight, sorted
    by consequence label; weights are positive and sum to 1.  Equality of
    canonical games is the library's notion of game equivalence.
    """

    branches: tuple

    def weights(self) -> tuple:
        return tuple(w for _, w in self.branches)

    def consequences(self) -> tuple:
        return tuple(c for c, _ in self.branches)

    def to_game(self) -> Game:
        """Re-embed as a concrete game on a fresh indexed basis.

        Branch ``k`` sits at index ``nk`` with eigenvalue ``k+1``, so the
        construction is deterministic and payoffs are non-degenerate.
        """
        state = {}
        eigen = {}
        payoff = {}
        for k, (c, w) in enumerate(self.branches):
            idx = f"n{k + 1}"
            state[idx] = Amplitude(w)
            eigen[idx] = Fraction(k + 1)
            payoff[Fraction(k + 1)] = c
        return Game(state, Observable(eigen), payoff)

    def to_jsonable(self) -> list:
        out = []
        for c, w in self.branches:
            entry = {"label": c.label, "weight": format_rational(w)}
            entry["value"] = None if c.value is None else format_rational(c.value)
            out.append(entry)
        return out


def canonicalize(g: Game) -> CanonicalGame:
    """Collapse a game to its canonical form.

    Zero-weight branches are dropped (their payoffs are decision
    irrelevant), branches with equal consequence labels merge by summing
    weights, and the result is sorted by label.  A label carrying two
    different numeric values within one game is rejected as ill-formed.
    """
    validate_game(g)
    acc: dict = {}
    for i in g.support():
        x = g.observable.eigenvalue(i)
        c = g.consequence_at(x)
        w = g.state[i].weight
        if c.label in acc:
            prev, pw = acc[c.label]
            if prev.value != c.value:
                raise InvalidGameError(
                    f"consequence {c.label!r} carries conflicting values "
                    f"{prev.value} and {c.value}"
                )
            acc[c.label] = (prev, pw + w)
        else:
            acc[c.label] = (c, w)
    branches = tuple((c, w) for _, (c, w) in sorted(acc.items()))
    return CanonicalGame(branches)


def expected_utility(g: Game) -> Fraction:
    """Weight-average of the numeric consequence values over canonical branches."""
    total = Fraction(0)
    for c, w in canonicalize(g).branches:
        if c.value is None:
            raise UnvaluedConsequenceError(f"consequence {c.label!r} has no numeric value")
        total += w * c.value
    return total


@dataclass(frozen=True)
class CompositeGame:
    """A game whose payoffs may themselves be games, nested finitely.

    Payoff entries are consequences (leaves), plain games, or further
    composite games.
    """

    state: dict
    observable: Observable
    payoff: dict

    def __post_init__(self):
        object.__setattr__(self, "state", dict(self.state))
        object.__setattr__(self, "payoff", {Fraction(x): v for x, v in self.payoff.items()})


NestedPayoff = Union[Consequence, Game, CompositeGame]


def _walk_leaves(node, prefix: str, amp: Amplitude, out: list) -> None:
    total = sum((a.weight for a in node.state.values()), Fraction(0))
    if total != ONE:
        raise InvalidGameError(f"nested branch weights sum to {total}, expected 1")
    for i, a in node.state.items():
        if a.weight == 0:
            continue
        x = node.observable.eigenvalue(i)
        if x not in node.payoff:
            raise InvalidGameError(f"no payoff for occurring eigenvalue {format_rational(x)}")
        entry = node.payoff[x]
        combined = amp_mul(amp, a)
        label = f"{prefix}{i}"
        if isinstance(entry, Consequence):
            out.append((label, combined, entry))
        elif isinstance(entry, (Game, CompositeGame)):
            _walk_leaves(entry, label + ".", combined, out)
        else:
            raise InvalidGameError(f"payoff at {format_rational(x)} is not a consequence or game")


def flatten(cg: CompositeGame | Game) -> Game:
    """Replace nested play by one simple game.

    Each leaf consequence appears on a path-labeled basis index whose
    amplitude is the product of the amplitudes along its nesting path, so
    the canonical weight of a consequence is the merged path-product weight.
    """
    leaves: list = []
    _walk_leaves(cg, "", UNIT_AMPLITUDE, leaves)
    if not leaves:
        raise EmptyGameError("composite game has no branches")
    paths = [p for p, _, _ in leaves]
    if len(set(paths)) != len(paths):
        raise InvalidGameError("nesting paths collide; use index labels without '.'")

    by_label: dict = {}
    for _, _, c in leaves:
        if c.label in by_label and by_label[c.label].value != c.value:
            raise InvalidGameError(
                f"consequence {c.label!r} carries conflicting values across branches"
            )
        by_label[c.label] = c
    eigen_of = {label: Fraction(k) for k, label in enumerate(sorted(by_label))}

    state = {}
    eigen = {}
    payoff = {eigen_of[label]: by_label[label] for label in by_label}
    for path, a, c in leaves:
        state[path] = a
        eigen[path] = eigen_of[c.label]
    return Game(state, Observable(eigen), payoff)
