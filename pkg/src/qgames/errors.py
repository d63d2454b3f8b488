"""Exception types shared across the library."""


class QGamesError(Exception):
    """Base class for all library errors."""


class DomainMismatchError(QGamesError):
    """An index or eigenvalue fell outside the domain it was looked up in."""


class InvalidGameError(QGamesError):
    """A game violates a structural invariant (normalization, payoff coverage)."""


class SchemaError(QGamesError):
    """A JSON document does not match the game schema; names the offending field."""


class PreconditionError(QGamesError):
    """An admissibility condition of a rewrite or derivation failed."""


class SoundnessError(QGamesError):
    """A rewrite whose preconditions passed changed the canonical form.

    This indicates a bug in the rewrite engine itself, never in caller input.
    """


class UnvaluedConsequenceError(QGamesError):
    """A numeric value was required for a consequence that has none."""


class EmptyGameError(QGamesError):
    """An operation received a game with no branches."""


class SizeLimitError(QGamesError):
    """An exhaustive check was asked to run beyond its supported size."""


class DegenerateBetError(QGamesError):
    """A bet's parameters cannot define the quantity asked for."""


class AxiomViolationError(QGamesError):
    """A preference oracle failed a sampled instance of the additive-order axioms."""


class OracleInconsistencyError(QGamesError):
    """An act-valuation oracle returned values inconsistent with additivity or dominance."""
