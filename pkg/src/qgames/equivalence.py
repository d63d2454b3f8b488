"""Checked equivalence rewrites on games.

Each rewrite rule validates its admissibility conditions, constructs the
transformed game, and then asserts that the canonical form is unchanged.
A returned ``RewriteStep`` is therefore a machine-checked certificate that
the two games are interchangeable for decision purposes, and any step can
be replayed later from its stored parameters.

The rules cover payoff relabeling through a spectrum function (PET),
eigensubspace permutation with a matching state transformation (MET), the
two symmetry specializations of MET (operator- and state-side), off-support
replacement of observable and payoff (OET), and relabeling of the basis
into a fresh index space (SET).  Unitaries that mix eigensubspaces while
preserving weights are deliberately rejected: everything here stays inside
the generalized-permutation class, where checks are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import PreconditionError, SoundnessError
from .exact import GeneralizedPermutation, apply_gperm, format_rational
from .games import (
    Consequence,
    Game,
    Observable,
    canonicalize,
    validate_game,
)

RULE_PET = "PET"
RULE_MET = "MET"
RULE_OP_SYMMETRY = "OpSymmetry"
RULE_STATE_SYMMETRY = "StateSymmetry"
RULE_OET = "OET"
RULE_SET = "SET"

RULES = (RULE_PET, RULE_MET, RULE_OP_SYMMETRY, RULE_STATE_SYMMETRY, RULE_OET, RULE_SET)


@dataclass(frozen=True)
class RewriteStep:
    """One checked rewrite: rule name, parameters, and the two games.

    Canonical equality of ``before`` and ``after`` is asserted at
    construction time and can be re-established later with ``replay``.
    """

    rule: str
    params: dict
    before: Game
    after: Game

    def to_jsonable(self) -> dict:
        return {
            "kind": "rewrite",
            "rule": self.rule,
            "params": _params_jsonable(self.rule, self.params),
            "before": canonicalize(self.before).to_jsonable(),
            "after": canonicalize(self.after).to_jsonable(),
        }


def _params_jsonable(rule: str, params: dict) -> dict:
    out = {}
    for key, value in params.items():
        if isinstance(value, GeneralizedPermutation):
            out[key] = value.to_jsonable()
        elif isinstance(value, Observable):
            out[key] = {i: format_rational(x) for i, x in sorted(value.eigen.items())}
        elif isinstance(value, Mapping):
            rendered = {}
            for k, v in value.items():
                kk = format_rational(k) if isinstance(k, Fraction) else str(k)
                if isinstance(v, Fraction):
                    rendered[kk] = format_rational(v)
                elif isinstance(v, Consequence):
                    rendered[kk] = v.to_jsonable()
                else:
                    rendered[kk] = str(v)
            out[key] = rendered
        else:
            out[key] = str(value)
    return out


def _finish(rule: str, params: dict, before: Game, after: Game) -> RewriteStep:
    if canonicalize(before) != canonicalize(after):
        raise SoundnessError(f"{rule} rewrite changed the canonical form")
    return RewriteStep(rule, params, before, after)


def equivalent(g1: Game, g2: Game) -> bool:
    """True iff the two games have identical canonical forms."""
    return canonicalize(g1) == canonicalize(g2)


def apply_pet(g: Game, f: Mapping[Fraction, Fraction]) -> RewriteStep:
    """Relabel the measured spectrum through ``f`` and recompose the payoff.

    ``f`` must cover the occurring spectrum, and wherever it merges two
    occurring eigenvalues their payoffs must already agree; the after-game
    measures f(X) with payoff composed through a section of f.  Off the
    occurring spectrum, missing entries of ``f`` extend as the identity.
    """
    validate_game(g)
    f = {Fraction(a): Fraction(b) for a, b in f.items()}
    occurring = g.occurring_spectrum()
    missing = sorted(occurring - set(f))
    if missing:
        raise PreconditionError(
            f"f undefined on occurring eigenvalues {[format_rational(x) for x in missing]}"
        )
    payoff_of = {x: g.consequence_at(x) for x in occurring}
    by_target: dict = {}
    for x in sorted(occurring):
        y = f[x]
        if y in by_target and by_target[y].label != payoff_of[x].label:
            raise PreconditionError(
                f"f merges eigenvalues {format_rational(x)} and its partner "
                f"onto {format_rational(y)} but their payoffs differ"
            )
        by_target.setdefault(y, payoff_of[x])

    f_full = dict(f)
    for x in g.observable.spectrum():
        f_full.setdefault(x, x)
    new_eigen = {i: f_full[x] for i, x in g.observable.eigen.items()}
    after = Game(dict(g.state), Observable(new_eigen), by_target)
    return _finish(RULE_PET, {"f": f}, g, after)


def apply_met(
    g: Game,
    u: GeneralizedPermutation,
    pi: Mapping[Fraction, Fraction],
) -> RewriteStep:
    """Transform the state by ``u`` while the observable's eigenvalues are
    pulled back through the spectrum permutation ``pi``.

    ``u`` must carry each eigensubspace of the observable onto the
    pi-image subspace; unitarity then forces the subspace dimensions to
    match, which is checked explicitly.  The payoff is untouched.
    """
    validate_game(g)
    pi = {Fraction(a): Fraction(b) for a, b in pi.items()}
    spectrum = g.observable.spectrum()
    if set(pi) != spectrum or set(pi.values()) != spectrum:
        raise PreconditionError("pi must be a permutation of the observable's spectrum")
    if u.domain() != set(g.observable.eigen):
        raise PreconditionError("u must be a permutation of the observable's index set")
    for x in sorted(spectrum):
        d_from = len(g.observable.indices_for(x))
        d_to = len(g.observable.indices_for(pi[x]))
        if d_from != d_to:
            raise PreconditionError(
                f"dimension mismatch: eigenspace of {format_rational(x)} has dimension "
                f"{d_from} but its image eigenspace has dimension {d_to}"
            )
    for i, x in g.observable.eigen.items():
        if g.observable.eigenvalue(u(i)) != pi[x]:
            raise PreconditionError(
                f"u sends index {i!r} outside the image eigensubspace of {format_rational(x)}"
            )
    pi_inv = {b: a for a, b in pi.items()}
    new_state = apply_gperm(u, g.state)
    new_eigen = {i: pi_inv[x] for i, x in g.observable.eigen.items()}
    after = Game(new_state, Observable(new_eigen), dict(g.payoff))
    return _finish(RULE_MET, {"u": u, "pi": pi}, g, after)


def apply_op_symmetry(g: Game, u: GeneralizedPermutation) -> RewriteStep:
    """Transform the state by a permutation that fixes every eigensubspace.

    Observable and payoff are untouched; per-eigenvalue weight totals are
    preserved, so the canonical form cannot move.
    """
    validate_game(g)
    if u.domain() != set(g.observable.eigen):
        raise PreconditionError("u must be a permutation of the observable's index set")
    for i in g.observable.eigen:
        if g.observable.eigenvalue(u(i)) != g.observable.eigenvalue(i):
            raise PreconditionError(f"u moves index {i!r} across eigensubspaces")
    after = Game(apply_gperm(u, g.state), g.observable, dict(g.payoff))
    return _finish(RULE_OP_SYMMETRY, {"u": u}, g, after)


def apply_state_symmetry(g: Game, f: Mapping[Fraction, Fraction]) -> RewriteStep:
    """Relabel the measured observable through a symmetry of the state.

    Requires a non-degenerate observable and exact invariance of the state
    (weights and phases) under the basis relabeling induced by ``f``.  The
    after-game measures f(X) with the same state and payoff.
    """
    validate_game(g)
    if g.observable.is_degenerate():
        raise PreconditionError("state-symmetry rewrites need a non-degenerate observable")
    f = {Fraction(a): Fraction(b) for a, b in f.items()}
    spectrum = g.observable.spectrum()
    if set(f) != spectrum or set(f.values()) != spectrum:
        raise PreconditionError("f must be a permutation of the observable's spectrum")
    index_of = {x: g.observable.indices_for(x)[0] for x in spectrum}
    for x in sorted(spectrum):
        src = g.state.get(index_of[x])
        dst = g.state.get(index_of[f[x]])
        src_w = src.weight if src is not None else Fraction(0)
        dst_w = dst.weight if dst is not None else Fraction(0)
        same = (src_w == dst_w == 0) or (src == dst)
        if not same:
            raise PreconditionError(
                f"state is not invariant: amplitude at eigenvalue {format_rational(x)} "
                f"differs from the amplitude at {format_rational(f[x])}"
            )
    new_eigen = {i: f[x] for i, x in g.observable.eigen.items()}
    after = Game(dict(g.state), Observable(new_eigen), dict(g.payoff))
    return _finish(RULE_STATE_SYMMETRY, {"f": f}, g, after)


def apply_oet(g: Game, x_new: Observable, p_new: Mapping[Fraction, Consequence]) -> RewriteStep:
    """Replace observable and payoff off the support of the state.

    ``x_new`` must agree with the current observable on every supported
    index, and ``p_new`` with the current payoff on every occurring
    eigenvalue; beyond that both may change arbitrarily.
    """
    validate_game(g)
    p_new = {Fraction(x): c for x, c in p_new.items()}
    for i in g.state:
        if i not in x_new.eigen:
            raise PreconditionError(f"replacement observable drops state index {i!r}")
    for i in g.support():
        if x_new.eigenvalue(i) != g.observable.eigenvalue(i):
            raise PreconditionError(
                f"replacement observable disagrees on supported index {i!r}"
            )
    for x in sorted(g.occurring_spectrum()):
        if x not in p_new or p_new[x] != g.consequence_at(x):
            raise PreconditionError(
                f"replacement payoff disagrees on occurring eigenvalue {format_rational(x)}"
            )
    after = Game(dict(g.state), x_new, p_new)
    return _finish(RULE_OET, {"x_new": x_new, "p_new": p_new}, g, after)


def apply_set(g: Game, relabel: Mapping[str, str]) -> RewriteStep:
    """Move the game onto a fresh index space by an injective relabeling.

    Eigenvalue assignments and payoffs are carried along unchanged, so the
    amplitude multiset per eigenvalue is exactly preserved.
    """
    validate_game(g)
    relabel = dict(relabel)
    if len(set(relabel.values())) != len(relabel):
        raise PreconditionError("relabeling must be injective")
    support = set(g.support())
    missing = sorted(support - set(relabel))
    if missing:
        raise PreconditionError(f"relabeling drops supported indices {missing}")
    unknown = sorted(set(relabel) - set(g.observable.eigen))
    if unknown:
        raise PreconditionError(f"relabeling names unknown indices {unknown}")
    new_state = {relabel[i]: a for i, a in g.state.items() if i in relabel}
    new_eigen = {relabel[i]: g.observable.eigenvalue(i) for i in relabel}
    after = Game(new_state, Observable(new_eigen), dict(g.payoff))
    return _finish(RULE_SET, {"relabel": relabel}, g, after)


def replay(step: RewriteStep) -> RewriteStep:
    """Re-run a step from its stored parameters; raises if anything moved."""
    rule = step.rule
    if rule == RULE_PET:
        redone = apply_pet(step.before, step.params["f"])
    elif rule == RULE_MET:
        redone = apply_met(step.before, step.params["u"], step.params["pi"])
    elif rule == RULE_OP_SYMMETRY:
        redone = apply_op_symmetry(step.before, step.params["u"])
    elif rule == RULE_STATE_SYMMETRY:
        redone = apply_state_symmetry(step.before, step.params["f"])
    elif rule == RULE_OET:
        redone = apply_oet(step.before, step.params["x_new"], step.params["p_new"])
    elif rule == RULE_SET:
        redone = apply_set(step.before, step.params["relabel"])
    else:
        raise PreconditionError(f"unknown rewrite rule {rule!r}")
    if redone.after != step.after:
        raise SoundnessError(f"replayed {rule} step produced a different game")
    return redone
