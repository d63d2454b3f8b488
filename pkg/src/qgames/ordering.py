"""Three-way comparison outcomes shared by the preference and probability orders."""

from __future__ import annotations

import enum


class Ordering(enum.Enum):
    """Result of comparing two items under a weak order."""

    MORE = "≻"
    LESS = "≺"
    EQUIV = "≃"

    def flipped(self) -> "Ordering":
        if self is Ordering.MORE:
            return Ordering.LESS
        if self is Ordering.LESS:
            return Ordering.MORE
        return Ordering.EQUIV

    def __str__(self) -> str:
        return self.value


def compare(a, b) -> Ordering:
    """Order two exactly comparable values (rationals, integers)."""
    if a > b:
        return Ordering.MORE
    if a < b:
        return Ordering.LESS
    return Ordering.EQUIV
