"""Exact arithmetic foundation: rationals, amplitudes, generalized permutations.

An amplitude is stored as a (weight, phase) pair: ``weight`` is the squared
modulus and ``phase`` a rational fraction of a full turn.  Every
transformation used elsewhere in the library (permutations of basis labels,
diagonal phase shifts, products of amplitudes along nesting paths) is closed
in this representation, so branch weights stay exact rationals and no square
root is ever materialized.

Amplitude *addition* is deliberately not provided.  A construction that
would collide two amplitudes onto one basis vector is a caller bug, and
keeping addition out of the vocabulary makes such collisions impossible to
express.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import DomainMismatchError

Rational = Fraction
"""Exact rational number.

The stdlib Fraction already guarantees lowest terms and a positive
denominator, and all of its arithmetic is exact, which is everything the
rest of the library relies on.
"""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into an exact rational.

    Decimal notation is rejected on purpose: every number entering the
    system must be exact.
    """
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(r: Fraction) -> str:
    """Render exactly: ``"p/q"``, or just ``"p"`` when the denominator is 1."""
    return str(r)


@dataclass(frozen=True)
class Amplitude:
    """A branch amplitude as (squared-modulus weight, phase in turns).

    ``weight`` is nonnegative and *is* the squared modulus, so it can be
    compared and summed exactly.  ``phase`` is normalized into [0, 1);
    weight 0 forces phase 0 so the zero amplitude has one representation.
    """

    weight: Fraction
    phase: Fraction = Fraction(0)

    def __post_init__(self):
        w = Fraction(self.weight)
        if w < 0:
            raise ValueError(f"amplitude weight must be nonnegative, got {w}")
        ph = Fraction(self.phase) % 1 if w != 0 else Fraction(0)
        object.__setattr__(self, "weight", w)
        object.__setattr__(self, "phase", ph)

    def __mul__(self, other: "Amplitude") -> "Amplitude":
        return amp_mul(self, other)

    def shifted(self, turns: Fraction) -> "Amplitude":
        """Same weight, phase advanced by ``turns`` (mod 1)."""
        return Amplitude(self.weight, self.phase + turns)


ZERO_AMPLITUDE = Amplitude(Fraction(0))
UNIT_AMPLITUDE = Amplitude(Fraction(1))


def amp_mul(a: Amplitude, b: Amplitude) -> Amplitude:
    """Product of amplitudes: weights multiply, phases add modulo one turn."""
    return Amplitude(a.weight * b.weight, a.phase + b.phase)


@dataclass(frozen=True)
class GeneralizedPermutation:
    """A bijection of basis indices together with a per-index phase shift.

    Applying one to a state moves the amplitude at index ``i`` to
    ``target[i]`` and advances its phase by ``phases.get(i, 0)`` turns.  The
    multiset of weights is conserved by construction, and composition stays
    inside the class.
    """

    target: dict
    phases: dict = field(default_factory=dict)

    def __post_init__(self):
        keys = set(self.target)
        values = set(self.target.values())
        if len(values) != len(self.target) or values != keys:
            raise ValueError("target must be a bijection of its own index set")
        extra = set(self.phases) - keys
        if extra:
            raise ValueError(f"phases defined outside the index set: {sorted(extra)}")
        norm = {}
        for i, p in self.phases.items():
            ph = Fraction(p) % 1
            if ph != 0:
                norm[i] = ph
        object.__setattr__(self, "target", dict(self.target))
        object.__setattr__(self, "phases", norm)

    @classmethod
    def identity(cls, indices) -> "GeneralizedPermutation":
        return cls({i: i for i in indices})

    def domain(self) -> set:
        return set(self.target)

    def __call__(self, index: str) -> str:
        try:
            return self.target[index]
        except KeyError:
            raise DomainMismatchError(f"index {index!r} outside permutation domain") from None

    def phase_at(self, index: str) -> Fraction:
        return self.phases.get(index, Fraction(0))

    def compose(self, inner: "GeneralizedPermutation") -> "GeneralizedPermutation":
        """Return self after inner (``inner`` applied first); index sets must match."""
        if self.domain() != inner.domain():
            raise DomainMismatchError("composition requires identical index sets")
        target = {i: self.target[inner.target[i]] for i in inner.target}
        phases = {i: inner.phase_at(i) + self.phase_at(inner.target[i]) for i in inner.target}
        return GeneralizedPermutation(target, phases)

    def inverse(self) -> "GeneralizedPermutation":
        target = {j: i for i, j in self.target.items()}
        phases = {j: -self.phase_at(i) for i, j in self.target.items()}
        return GeneralizedPermutation(target, phases)

    def to_jsonable(self) -> dict:
        return {
            "target": {i: self.target[i] for i in sorted(self.target)},
            "phases": {i: format_rational(p) for i, p in sorted(self.phases.items())},
        }


def apply_gperm(u: GeneralizedPermutation, state: Mapping[str, Amplitude]) -> dict:
    """Permute a state's amplitudes and apply the per-index phase shifts."""
    missing = [i for i in state if i not in u.target]
    if missing:
        raise DomainMismatchError(f"state indices outside permutation domain: {sorted(missing)}")
    return {u.target[i]: a.shifted(u.phase_at(i)) for i, a in state.items()}
