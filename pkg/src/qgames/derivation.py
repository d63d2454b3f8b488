"""Value derivations replayed as machine-checkable traces.

The derivations compute the value of a game from qualitative axioms rather
than by fiat: payoff-shift and sign-flip arguments fix two-branch
equal-weight games, a permutation-average argument fixes any equal-weight
game, common-denominator fan-out extends that to all rational weights, and
a dominance sandwich brackets the value to arbitrary precision before the
exact rational computation closes the interval.

A ``DerivationTrace`` records each move either as a checked rewrite (see
the equivalence module) or as an ``AxiomUse`` whose side conditions are
validated from the recorded parameters.  ``validate_trace`` replays every
step, so a trace is evidence, not narration.

Axiom vocabulary:

* ``Additivity``       value of a payoff-sum game is the sum of values
* ``ZeroSum``          negating every payoff negates the value
* ``Dominance``        branchwise-better payoffs are worth at least as much;
                       also covers the merge of equal-valued consequences
* ``Substitutivity``   replacing a consequence by a game of equal value
                       leaves a compound game's value unchanged
* ``AdditivityLemma``  adding a constant to every payoff adds it to the value
* ``PermutationAverage`` the n! payoff-permuted copies of an equal-weight
                       game share one canonical form and sum to a constant
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    EmptyGameError,
    InvalidGameError,
    PreconditionError,
    UnvaluedConsequenceError,
)
from .exact import Amplitude, GeneralizedPermutation, format_rational
from .games import (
    CompositeGame,
    Consequence,
    Game,
    Observable,
    canonicalize,
    expected_utility,
    flatten,
    numeric_consequence,
    validate_game,
)
from .equivalence import (
    RewriteStep,
    apply_oet,
    apply_op_symmetry,
    apply_pet,
    apply_state_symmetry,
    apply_set,
    replay,
)

AXIOMS = (
    "Additivity",
    "ZeroSum",
    "Dominance",
    "Substitutivity",
    "AdditivityLemma",
    "PermutationAverage",
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class AxiomUse:
    """A non-rewrite derivation move with validatable side conditions."""

    axiom: str
    claim: str
    params: dict

    def to_jsonable(self) -> dict:
        summary = {}
        for key, value in self.params.items():
            if isinstance(value, Game):
                summary[key] = canonicalize(value).to_jsonable()
            elif isinstance(value, CompositeGame):
                summary[key] = canonicalize(flatten(value)).to_jsonable()
            elif isinstance(value, Fraction):
                summary[key] = format_rational(value)
            elif isinstance(value, tuple):
                summary[key] = [
                    format_rational(v) if isinstance(v, Fraction) else str(v) for v in value
                ]
            else:
                summary[key] = str(value)
        return {"kind": "axiom", "axiom": self.axiom, "claim": self.claim, "params": summary}


@dataclass(frozen=True)
class DerivationTrace:
    """Ordered derivation steps plus the concluded value statement."""

    steps: tuple
    conclusion: str

    def to_jsonable(self) -> dict:
        return {
            "conclusion": self.conclusion,
            "steps": [step.to_jsonable() for step in self.steps],
        }


@dataclass(frozen=True)
class Precision:
    """Positive tolerance for the sandwich stage of a value derivation."""

    epsilon: Fraction

    def __post_init__(self):
        eps = Fraction(self.epsilon)
        if eps <= 0:
            raise ValueError("epsilon must be positive")
        object.__setattr__(self, "epsilon", eps)


def _value_of(c: Consequence) -> Fraction:
    if c.value is None:
        raise UnvaluedConsequenceError(f"consequence {c.label!r} has no numeric value")
    return c.value


def value_profile(g: Game) -> tuple:
    """Canonical branches merged by numeric value: sorted ((value, weight), ...)."""
    acc: dict = {}
    for c, w in canonicalize(g).branches:
        v = _value_of(c)
        acc[v] = acc.get(v, Fraction(0)) + w
    return tuple(sorted(acc.items()))


# ---------------------------------------------------------------------------
# axiom side-condition validators


def _occurring_values(g: Game) -> dict:
    return {x: _value_of(g.consequence_at(x)) for x in g.occurring_spectrum()}


def _same_measurement(g1: Game, g2: Game, what: str) -> None:
    if g1.state != g2.state or g1.observable != g2.observable:
        raise PreconditionError(f"{what} requires games sharing state and observable")


def _check_additivity(params: dict) -> None:
    g1, g2, total = params["g1"], params["g2"], params["total"]
    for g in (g1, g2, total):
        validate_game(g)
    _same_measurement(g1, g2, "additivity")
    _same_measurement(g1, total, "additivity")
    v1, v2, vt = _occurring_values(g1), _occurring_values(g2), _occurring_values(total)
    for x in v1:
        if vt[x] != v1[x] + v2[x]:
            raise PreconditionError(
                f"payoffs at {format_rational(x)} do not add: "
                f"{vt[x]} != {v1[x]} + {v2[x]}"
            )


def _check_zero_sum(params: dict) -> None:
    g, neg = params["game"], params["negated"]
    validate_game(g)
    validate_game(neg)
    _same_measurement(g, neg, "the zero-sum rule")
    vg, vn = _occurring_values(g), _occurring_values(neg)
    for x in vg:
        if vn[x] != -vg[x]:
            raise PreconditionError(
                f"payoff at {format_rational(x)} is not negated: {vn[x]} != -({vg[x]})"
            )


def _check_additivity_lemma(params: dict) -> None:
    g, shifted, k = params["game"], params["shifted"], Fraction(params["k"])
    validate_game(g)
    validate_game(shifted)
    _same_measurement(g, shifted, "the payoff-shift lemma")
    vg, vs = _occurring_values(g), _occurring_values(shifted)
    for x in vg:
        if vs[x] != vg[x] + k:
            raise PreconditionError(
                f"payoff at {format_rational(x)} is not shifted by {format_rational(k)}"
            )


def _check_dominance(params: dict) -> None:
    mode = params.get("mode", "pointwise")
    if mode == "pointwise":
        better, worse = params["better"], params["worse"]
        validate_game(better)
        validate_game(worse)
        _same_measurement(better, worse, "pointwise dominance")
        vb, vw = _occurring_values(better), _occurring_values(worse)
        strict_seen = False
        for x in vb:
            if vb[x] < vw[x]:
                raise PreconditionError(
                    f"dominance fails at {format_rational(x)}: {vb[x]} < {vw[x]}"
                )
            strict_seen = strict_seen or vb[x] > vw[x]
        if params.get("strict") and not strict_seen:
            raise PreconditionError("strict dominance claimed but payoffs agree everywhere")
    elif mode == "value-profile":
        g1, g2 = params["g1"], params["g2"]
        if value_profile(g1) != value_profile(g2):
            raise PreconditionError("games do not share a value-weight profile")
    else:
        raise PreconditionError(f"unknown dominance mode {mode!r}")


def _check_substitutivity(params: dict) -> None:
    composite, reduced = params["composite"], params["reduced"]
    validate_game(reduced)
    if composite.state != reduced.state or composite.observable != reduced.observable:
        raise PreconditionError("substitutivity requires the same outer measurement")
    for x in reduced.occurring_spectrum():
        entry = composite.payoff.get(x)
        if entry is None:
            raise PreconditionError(f"composite lacks a payoff at {format_rational(x)}")
        if isinstance(entry, Consequence):
            inner_value = _value_of(entry)
        else:
            inner_value = expected_utility(flatten(entry))
        if _value_of(reduced.consequence_at(x)) != inner_value:
            raise PreconditionError(
                f"substituted consequence at {format_rational(x)} is worth "
                f"{_value_of(reduced.consequence_at(x))}, nested play is worth {inner_value}"
            )


def _check_permutation_average(params: dict) -> None:
    g, values, order = params["game"], params["values"], params["order"]
    validate_game(g)
    n = len(values)
    if n == 0:
        raise PreconditionError("permutation average needs at least one branch")
    share = Fraction(1, n)
    support = g.support()
    if len(support) != n:
        raise PreconditionError(f"expected {n} occurring branches, found {len(support)}")
    for i in support:
        if g.state[i].weight != share:
            raise PreconditionError("permutation average needs equal branch weights")
    if sorted(order) != sorted(g.occurring_spectrum()):
        raise PreconditionError("branch order does not list the occurring spectrum")
    for k, x in enumerate(order):
        if _value_of(g.consequence_at(x)) != values[k]:
            raise PreconditionError(
                f"payoff at {format_rational(x)} is {_value_of(g.consequence_at(x))}, "
                f"claimed {values[k]}"
            )
    # All payoff-permuted copies must share one canonical form.  Exhaustive
    # for small n; deterministic sample beyond that.
    if n <= 5:
        import itertools

        perms = list(itertools.permutations(range(n)))
    else:
        rng = random.Random(12345)
        perms = [tuple(range(n)), tuple(reversed(range(n)))]
        for _ in range(4):
            p = list(range(n))
            rng.shuffle(p)
            perms.append(tuple(p))
    reference = canonicalize(g)
    for perm in perms:
        payoff = {order[k]: numeric_consequence(values[perm[k]]) for k in range(n)}
        g_perm = Game(dict(g.state), g.observable, payoff)
        if canonicalize(g_perm) != reference:
            raise PreconditionError("a payoff permutation changed the canonical form")


_AXIOM_VALIDATORS = {
    "Additivity": _check_additivity,
    "ZeroSum": _check_zero_sum,
    "Dominance": _check_dominance,
    "Substitutivity": _check_substitutivity,
    "AdditivityLemma": _check_additivity_lemma,
    "PermutationAverage": _check_permutation_average,
}


def validate_trace(trace: DerivationTrace) -> None:
    """Replay every rewrite and recheck every axiom side condition."""
    for step in trace.steps:
        if isinstance(step, RewriteStep):
            replay(step)
        elif isinstance(step, AxiomUse):
            if step.axiom not in AXIOMS:
                raise PreconditionError(f"unknown axiom {step.axiom!r}")
            _AXIOM_VALIDATORS[step.axiom](step.params)
        else:
            raise PreconditionError(f"unknown trace entry {type(step).__name__}")


# ---------------------------------------------------------------------------
# game builders


def _profile_game(pairs: Sequence, prefix: str = "b") -> Game:
    """Game with branch ``k`` at index ``{prefix}{k}``, eigenvalue ``k``,
    weight ``pairs[k][1]`` and value-labeled consequence ``pairs[k][0]``."""
    state = {}
    eigen = {}
    payoff = {}
    for k, (v, w) in enumerate(pairs):
        idx = f"{prefix}{k}"
        state[idx] = Amplitude(Fraction(w))
        eigen[idx] = Fraction(k)
        payoff[Fraction(k)] = numeric_consequence(v)
    return Game(state, Observable(eigen), payoff)


def _phase_zeroing_step(g: Game):
    """Rotate every branch phase to zero; a diagonal symmetry of the observable."""
    if all(a.phase == 0 for a in g.state.values()):
        return None
    indices = set(g.observable.eigen)
    phases = {i: -g.state[i].phase for i in g.state if g.state[i].phase != 0}
    u = GeneralizedPermutation({i: i for i in indices}, phases)
    return apply_op_symmetry(g, u)


# ---------------------------------------------------------------------------
# derivations


def additivity_lemma(g: Game, k: Fraction) -> DerivationTrace:
    """Shifting every payoff by ``k`` shifts the game's value by ``k``.

    The trace plays the game alongside a constant reward worth ``k`` (one
    act-additivity move), then absorbs the shift into the measured
    observable with a payoff-relabeling rewrite.
    """
    validate_game(g)
    k = Fraction(k)
    occurring = sorted(g.occurring_spectrum())
    values = {x: _value_of(g.consequence_at(x)) for x in occurring}
    base = Game(dict(g.state), g.observable, {x: g.consequence_at(x) for x in occurring})
    const = Game(dict(g.state), g.observable, {x: numeric_consequence(k) for x in occurring})
    shifted = Game(
        dict(g.state), g.observable, {x: numeric_consequence(values[x] + k) for x in occurring}
    )
    eu = expected_utility(base)
    add = AxiomUse(
        "Additivity",
        claim=(
            f"V(shifted) = V(G) + V(constant {format_rational(k)}) "
            f"= V(G) + {format_rational(k)}"
        ),
        params={"g1": base, "g2": const, "total": shifted},
    )
    pet = apply_pet(shifted, {x: x + k for x in occurring})
    conclusion = (
        f"V(payoff + {format_rational(k)}) = V(G) + {format_rational(k)} "
        f"= {format_rational(eu + k)}"
    )
    return DerivationTrace((add, pet), conclusion)


def _fresh_reflected_observable(g: Game, x1: Fraction, x2: Fraction):
    """Replacement observable whose spectrum is closed under x -> x1+x2-x
    and non-degenerate, agreeing with ``g`` on the support."""
    support = g.support()
    off = sorted(i for i in g.observable.eigen if i not in support)
    used = {x1, x2}
    assignments = {}
    pending = list(off)
    if len(pending) % 2 == 1:
        mid = (x1 + x2) / 2
        assignments[pending.pop(0)] = mid
        used.add(mid)
    j = 0
    base = max(x1, x2)
    while pending:
        j += 1
        cand = base + j
        partner = x1 + x2 - cand
        if cand in used or partner in used:
            continue
        assignments[pending.pop(0)] = cand
        used.add(cand)
        if pending:
            assignments[pending.pop(0)] = partner
            used.add(partner)
        else:
            # dangling half of a pair would break closure; retry with the midpoint
            raise PreconditionError("internal pairing error")  # pragma: no cover
    eigen = {i: g.observable.eigenvalue(i) for i in support}
    eigen.update(assignments)
    payoff = {x: g.consequence_at(x) for x in g.occurring_spectrum()}
    for x in assignments.values():
        payoff.setdefault(x, numeric_consequence(x))
    return Observable(eigen), payoff


def derive_stage1_on(g: Game) -> tuple:
    """Replay the reflection derivation on a two-branch equal-weight game.

    The game must pay each occurring eigenvalue its own value.  Returns
    ``(value, trace)`` with value the midpoint of the two eigenvalues.
    """
    validate_game(g)
    support = g.support()
    if len(support) not in (1, 2):
        raise PreconditionError("the reflection derivation needs one or two branches")
    for i in support:
        if g.state[i].weight != Fraction(1, len(support)):
            raise PreconditionError("the reflection derivation needs equal branch weights")
    for x in g.occurring_spectrum():
        c = g.consequence_at(x)
        if c.value != x:
            raise PreconditionError("payoffs must equal the measured eigenvalues")

    occ = sorted(g.occurring_spectrum())
    if len(occ) == 1:
        value = occ[0]
        return value, DerivationTrace(
            (), f"single consequence worth {format_rational(value)}; V(G) = {format_rational(value)}"
        )
    x1, x2 = occ
    k = x1 + x2
    steps = []

    phase_step = _phase_zeroing_step(g)
    g0 = g
    if phase_step is not None:
        steps.append(phase_step)
        g0 = phase_step.after

    spectrum = g0.observable.spectrum()
    closed = not g0.observable.is_degenerate() and all(k - x in spectrum for x in spectrum)
    if not closed:
        x_new, p_new = _fresh_reflected_observable(g0, x1, x2)
        oet = apply_oet(g0, x_new, p_new)
        steps.append(oet)
        g0 = oet.after

    payoff_keys = sorted(g0.occurring_spectrum())
    values = {x: _value_of(g0.payoff[x]) for x in payoff_keys}
    g_neg = Game(
        dict(g0.state), g0.observable, {x: numeric_consequence(-values[x]) for x in payoff_keys}
    )
    g_shift = Game(
        dict(g0.state),
        g0.observable,
        {x: numeric_consequence(-values[x] + k) for x in payoff_keys},
    )
    steps.append(
        AxiomUse(
            "ZeroSum",
            claim="V(negated payoffs) = -V(G)",
            params={"game": g0, "negated": g_neg},
        )
    )
    steps.append(
        AxiomUse(
            "AdditivityLemma",
            claim=f"V(negated + {format_rational(k)}) = -V(G) + {format_rational(k)}",
            params={"game": g_neg, "shifted": g_shift, "k": k},
        )
    )
    reflect = {x: k - x for x in g0.observable.spectrum()}
    pet = apply_pet(g_shift, reflect)
    steps.append(pet)
    sym = apply_state_symmetry(pet.after, reflect)
    steps.append(sym)
    steps.append(
        AxiomUse(
            "Dominance",
            claim="the reflected game and G share one value-weight profile",
            params={"mode": "value-profile", "g1": sym.after, "g2": g0},
        )
    )
    value = k / 2
    conclusion = (
        f"V(G) = -V(G) + {format_rational(k)}, so V(G) = {format_rational(value)}"
    )
    return value, DerivationTrace(tuple(steps), conclusion)


def derive_stage1(x1: Fraction, x2: Fraction) -> tuple:
    """Value of the equal-weight two-outcome game paying its eigenvalues."""
    return derive_stage1_on(_identity_payoff_game([Fraction(x1), Fraction(x2)]))


def _identity_payoff_game(eigenvalues: Sequence) -> Game:
    """Equal-weight game measuring the given eigenvalues and paying them out."""
    xs = [Fraction(x) for x in eigenvalues]
    n = len(xs)
    state = {}
    eigen = {}
    payoff = {}
    for idx, x in enumerate(xs):
        name = f"i{idx + 1}"
        state[name] = Amplitude(Fraction(1, n))
        eigen[name] = x
        payoff[x] = numeric_consequence(x)
    return Game(state, Observable(eigen), payoff)


def derive_equal_weight(n: int, values: Sequence) -> tuple:
    """Value of an equal-weight n-branch game via the permutation average.

    The n! payoff-permuted copies share one canonical form, and summing all
    of them branchwise yields the constant payoff (n-1)! times the value
    total, which forces V(G) to be the plain average.
    """
    if n <= 0:
        raise EmptyGameError("an equal-weight game needs at least one branch")
    values = tuple(Fraction(v) for v in values)
    if len(values) != n:
        raise ValueError(f"expected {n} values, got {len(values)}")
    g = _profile_game([(v, Fraction(1, n)) for v in values])
    mean = sum(values) / n
    total = sum(values)
    entry = AxiomUse(
        "PermutationAverage",
        claim=(
            f"{n}! V(G) = {n - 1}! ({format_rational(total)}), "
            f"so V(G) = {format_rational(mean)}"
        ),
        params={"game": g, "values": values, "order": tuple(sorted(g.occurring_spectrum()))},
    )
    return mean, DerivationTrace((entry,), f"V(G) = {format_rational(mean)}")


def _rational_weight_steps(gv: Game, pairs: Sequence) -> tuple:
    """Fan a value-profile game out over a common denominator.

    Returns ``(value, steps)``: a relabeling into the auxiliary space, the
    permutation average on the fanned-out equal-weight game, the degenerate
    payoff merge, and the profile link back to ``gv``.
    """
    weights = [Fraction(w) for _, w in pairs]
    values = [Fraction(v) for v, _ in pairs]
    n_common = math.lcm(*(w.denominator for w in weights))
    counts = [w * n_common for w in weights]
    offsets = []
    acc = 0
    for m in counts:
        offsets.append(acc)
        acc += int(m)

    relabel = {f"b{k}": f"a{offsets[k]}" for k in range(len(pairs))}
    set_step = apply_set(gv, relabel)

    fanned = []
    for k, m in enumerate(counts):
        fanned.extend([values[k]] * int(m))
    g_fan = _profile_game([(v, Fraction(1, n_common)) for v in fanned], prefix="a")
    mean = sum(fanned, Fraction(0)) / n_common
    perm_entry = AxiomUse(
        "PermutationAverage",
        claim=(
            f"{n_common}! V(fanned) = {n_common - 1}! "
            f"({format_rational(sum(fanned, Fraction(0)))}), "
            f"so V(fanned) = {format_rational(mean)}"
        ),
        params={
            "game": g_fan,
            "values": tuple(fanned),
            "order": tuple(sorted(g_fan.occurring_spectrum())),
        },
    )

    group_of = {}
    for k in range(len(pairs)):
        for slot in range(offsets[k], offsets[k] + int(counts[k])):
            group_of[Fraction(slot)] = Fraction(offsets[k])
    pet_step = apply_pet(g_fan, group_of)

    link = AxiomUse(
        "Dominance",
        claim="the merged fan-out and the original game share one value-weight profile",
        params={"mode": "value-profile", "g1": pet_step.after, "g2": set_step.after},
    )
    return mean, [set_step, perm_entry, pet_step, link]


def derive_rational_weights(weights: Sequence, values: Sequence) -> tuple:
    """Value of a game with arbitrary positive rational weights.

    Writes every weight as m/N over the common denominator N, fans each
    branch into m equal sub-branches of the N-branch equal-weight game, and
    merges them back with a degenerate payoff relabeling.
    """
    weights = [Fraction(w) for w in weights]
    values = [Fraction(v) for v in values]
    if len(weights) != len(values):
        raise ValueError("weights and values must have equal length")
    if not weights:
        raise EmptyGameError("a game needs at least one branch")
    if any(w <= 0 for w in weights):
        raise InvalidGameError("weights must be positive")
    total = sum(weights, Fraction(0))
    if total != 1:
        raise InvalidGameError(f"weights sum to {total}, expected 1")
    pairs = list(zip(values, weights))
    gv = _profile_game(pairs)
    value, steps = _rational_weight_steps(gv, pairs)
    conclusion = f"V(G) = {format_rational(value)}"
    return value, DerivationTrace(tuple(steps), conclusion)


def _sandwich_level(gv: Game, pairs: Sequence, depth: int) -> tuple:
    """Dominance bracket at dyadic depth ``depth``.

    Splits each branch into its dyadic floor and a residue, then bounds the
    game between the copies whose residues pay the extreme values.
    Returns (lower, upper, entries).
    """
    values = [v for v, _ in pairs]
    v_min, v_max = min(values), max(values)
    scale = 1 << depth
    state = {}
    eigen = {}
    base_payoff = {}
    low_payoff = {}
    high_payoff = {}
    floor_eu = Fraction(0)
    residue_total = Fraction(0)
    for k, (v, w) in enumerate(pairs):
        f = Fraction(math.floor(w * scale), scale)
        r = w - f
        floor_eu += f * v
        residue_total += r
        main, rest = f"m{k}", f"r{k}"
        state[main] = Amplitude(f)
        state[rest] = Amplitude(r)
        eigen[main] = Fraction(2 * k)
        eigen[rest] = Fraction(2 * k + 1)
        base_payoff[Fraction(2 * k)] = numeric_consequence(v)
        base_payoff[Fraction(2 * k + 1)] = numeric_consequence(v)
        low_payoff[Fraction(2 * k)] = numeric_consequence(v)
        low_payoff[Fraction(2 * k + 1)] = numeric_consequence(v_min)
        high_payoff[Fraction(2 * k)] = numeric_consequence(v)
        high_payoff[Fraction(2 * k + 1)] = numeric_consequence(v_max)
    obs = Observable(eigen)
    base = Game(dict(state), obs, base_payoff)
    low = Game(dict(state), obs, low_payoff)
    high = Game(dict(state), obs, high_payoff)
    lower = floor_eu + residue_total * v_min
    upper = floor_eu + residue_total * v_max
    entries = (
        AxiomUse(
            "Dominance",
            claim=(
                f"refining at depth {depth} does not change the profile; "
                f"V(refined) = V(G)"
            ),
            params={"mode": "value-profile", "g1": base, "g2": gv},
        ),
        AxiomUse(
            "Dominance",
            claim=f"V(G) >= {format_rational(lower)} (residues demoted to the worst value)",
            params={"mode": "pointwise", "better": base, "worse": low},
        ),
        AxiomUse(
            "Dominance",
            claim=f"V(G) <= {format_rational(upper)} (residues promoted to the best value)",
            params={"mode": "pointwise", "better": high, "worse": base},
        ),
    )
    return lower, upper, entries


def derive_value(g: Game, prec: Precision) -> tuple:
    """Bracket and then pin the value of a valued game.

    Emits a dominance sandwich narrowing the value to within
    ``prec.epsilon`` and closes with the exact common-denominator
    derivation, so the returned interval is ``[EU, EU]``.
    Returns ``((lower, upper), trace)``.
    """
    validate_game(g)
    steps = []
    g0 = g
    phase_step = _phase_zeroing_step(g)
    if phase_step is not None:
        steps.append(phase_step)
        g0 = phase_step.after

    pairs = value_profile(g0)
    gv = _profile_game(pairs)
    steps.append(
        AxiomUse(
            "Dominance",
            claim="equal-valued consequences merge into the value profile",
            params={"mode": "value-profile", "g1": g0, "g2": gv},
        )
    )

    eu = sum((v * w for v, w in pairs), Fraction(0))
    if len(pairs) > 1:
        values = [v for v, _ in pairs]
        spread = max(values) - min(values)
        branches = len(pairs)
        depth = 1
        while branches * spread > prec.epsilon * (1 << depth):
            depth += 1
        for d in sorted({1, (1 + depth) // 2, depth}):
            lower, upper, entries = _sandwich_level(gv, pairs, d)
            steps.extend(entries)
            width = upper - lower
        if width > prec.epsilon:  # pragma: no cover - the depth bound rules this out
            raise PreconditionError("sandwich failed to reach the requested width")

    exact_value, rw_steps = _rational_weight_steps(gv, pairs)
    steps.extend(rw_steps)
    assert exact_value == eu
    conclusion = (
        f"V(G) = {format_rational(eu)} exactly; interval "
        f"[{format_rational(eu)}, {format_rational(eu)}] within {format_rational(prec.epsilon)}"
    )
    return (eu, eu), DerivationTrace(tuple(steps), conclusion)


def truncate_bounds(
    g: Game, n: int, v_min: Fraction, v_max: Fraction
) -> tuple:
    """Bracket the value of a game by truncating to its heaviest branches.

    Keeps the ``n`` largest-weight canonical branches and assigns the
    entire remaining tail weight the floor value (for the lower bound) or
    the ceiling value (for the upper bound).  The bracket always contains
    the exact value and collapses once ``n`` reaches the branch count.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    v_min, v_max = Fraction(v_min), Fraction(v_max)
    branches = canonicalize(g).branches
    valued = [(_value_of(c), w, c.label) for c, w in branches]
    for v, _, label in valued:
        if not (v_min <= v <= v_max):
            raise PreconditionError(
                f"consequence {label!r} worth {format_rational(v)} lies outside "
                f"[{format_rational(v_min)}, {format_rational(v_max)}]"
            )
    ordered = sorted(valued, key=lambda t: (-t[1], t[2]))
    head = ordered[:n]
    tail_weight = sum((w for _, w, _ in ordered[n:]), Fraction(0))
    head_eu = sum((v * w for v, w, _ in head), Fraction(0))
    return head_eu + tail_weight * v_min, head_eu + tail_weight * v_max
