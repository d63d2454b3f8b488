"""Seeded random games and random admissible rewrite parameters.

Shared by the property tests and the acceptance suite.  Everything is
driven by a caller-supplied ``random.Random`` so failures replay exactly.
"""

from __future__ import annotations

import random
from fractions import Fraction

from qgames import (
    Amplitude,
    Consequence,
    Game,
    GeneralizedPermutation,
    Observable,
    apply_met,
    apply_oet,
    apply_op_symmetry,
    apply_pet,
    apply_set,
    apply_state_symmetry,
)

DYADIC_PHASES = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1, 8)]


def random_weights(rng: random.Random, k: int, max_den: int = 16) -> list:
    """k positive rationals summing to 1 with a common denominator <= max_den."""
    if k == 1:
        return [Fraction(1)]
    den = rng.randint(k, max_den)
    cuts = sorted(rng.sample(range(1, den), k - 1))
    edges = [0] + cuts + [den]
    return [Fraction(edges[i + 1] - edges[i], den) for i in range(k)]


def random_game(
    rng: random.Random,
    max_branches: int = 5,
    max_den: int = 16,
    valued: bool = True,
    allow_phases: bool = True,
    allow_degenerate: bool = True,
    allow_off_support: bool = True,
    force_equal_pair: bool = True,
    label_prefix: str = "c",
) -> Game:
    k = rng.randint(1, max_branches)
    weights = random_weights(rng, k, max_den)
    if force_equal_pair and k >= 2 and rng.random() < 0.4:
        # force an equal-weight pair so symmetry rewrites have material
        weights[1] = weights[0]
        rest = 1 - weights[0] * 2
        if rest < 0 or (k == 2 and rest != 0):
            weights = [Fraction(1, 2), Fraction(1, 2)] + [Fraction(0)] * (k - 2)
            weights = [w for w in weights if w > 0]
            k = len(weights)
        elif k > 2:
            tail = random_weights(rng, k - 2, max_den)
            weights = [weights[0], weights[1]] + [t * rest for t in tail]

    eigen_pool = [Fraction(v) for v in rng.sample(range(-6, 30), 18)]
    eigenvalues = []
    for i in range(k):
        if allow_degenerate and eigenvalues and rng.random() < 0.2:
            eigenvalues.append(rng.choice(eigenvalues))
        else:
            eigenvalues.append(eigen_pool.pop())

    label_pool = [f"{label_prefix}{j}" for j in range(k + 2)]
    value_of_label = {
        lab: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for lab in label_pool
    }
    payoff = {}
    for x in set(eigenvalues):
        lab = rng.choice(label_pool)
        payoff[x] = Consequence(lab, value_of_label[lab] if valued else None)

    state = {}
    eigen = {}
    for i, (w, x) in enumerate(zip(weights, eigenvalues)):
        idx = f"b{i}"
        phase = rng.choice(DYADIC_PHASES) if allow_phases and rng.random() < 0.3 else Fraction(0)
        state[idx] = Amplitude(w, phase)
        eigen[idx] = x

    if allow_off_support and rng.random() < 0.4:
        for j in range(rng.randint(1, 2)):
            idx = f"z{j}"
            x = eigen_pool.pop()
            eigen[idx] = x
            if rng.random() < 0.5:
                state[idx] = Amplitude(Fraction(0))
            if rng.random() < 0.5:
                lab = rng.choice(label_pool)
                payoff[x] = Consequence(lab, value_of_label[lab] if valued else None)

    return Game(state, Observable(eigen), payoff)


# --------------------------------------------------------------------------
# admissible random rewrite parameters

_FRESH = [0]


def _fresh_values(n: int) -> list:
    _FRESH[0] += 1
    base = 1000 * _FRESH[0]
    return [Fraction(base + 7 * j) for j in range(n)]


def random_pet_step(rng: random.Random, g: Game):
    occurring = sorted(g.occurring_spectrum())
    groups: dict = {}
    for x in occurring:
        groups.setdefault(g.payoff[x].label, []).append(x)
    f = {}
    targets = iter(_fresh_values(len(occurring) + 1))
    for _, xs in sorted(groups.items()):
        rng.shuffle(xs)
        # split the group into one or two collapse classes
        if len(xs) > 1 and rng.random() < 0.5:
            pivot = rng.randint(1, len(xs) - 1)
            chunks = [xs[:pivot], xs[pivot:]]
        else:
            chunks = [xs]
        for chunk in chunks:
            target = next(targets) if rng.random() < 0.7 else chunk[0]
            for x in chunk:
                f[x] = target
    # distinct collapse classes must not collide on a target
    seen: dict = {}
    for x, y in f.items():
        lab = g.payoff[x].label
        if y in seen and seen[y] != lab:
            return None
        seen[y] = lab
    return apply_pet(g, f)


def random_met_step(rng: random.Random, g: Game):
    by_dim: dict = {}
    for x in g.observable.spectrum():
        by_dim.setdefault(len(g.observable.indices_for(x)), []).append(x)
    pi = {}
    u_target = {}
    for _, xs in sorted(by_dim.items()):
        xs = sorted(xs)
        image = list(xs)
        rng.shuffle(image)
        for x, y in zip(xs, image):
            pi[x] = y
            src = g.observable.indices_for(x)
            dst = list(g.observable.indices_for(y))
            rng.shuffle(dst)
            for i, j in zip(src, dst):
                u_target[i] = j
    phases = {
        i: rng.choice(DYADIC_PHASES) for i in u_target if rng.random() < 0.3
    }
    u = GeneralizedPermutation(u_target, phases)
    return apply_met(g, u, pi)


def random_op_symmetry_step(rng: random.Random, g: Game):
    u_target = {}
    for x in g.observable.spectrum():
        src = g.observable.indices_for(x)
        dst = list(src)
        rng.shuffle(dst)
        for i, j in zip(src, dst):
            u_target[i] = j
    phases = {i: rng.choice(DYADIC_PHASES) for i in u_target if rng.random() < 0.4}
    u = GeneralizedPermutation(u_target, phases)
    return apply_op_symmetry(g, u)


def random_state_symmetry_step(rng: random.Random, g: Game):
    if g.observable.is_degenerate():
        return None
    spectrum = sorted(g.observable.spectrum())
    amp_of = {}
    for x in spectrum:
        idx = g.observable.indices_for(x)[0]
        amp_of[x] = g.state.get(idx, Amplitude(Fraction(0)))
    by_amp: dict = {}
    for x in spectrum:
        a = amp_of[x]
        by_amp.setdefault((a.weight, a.phase), []).append(x)
    f = {x: x for x in spectrum}
    for _, xs in sorted(by_amp.items()):
        if len(xs) >= 2 and rng.random() < 0.8:
            image = list(xs)
            rng.shuffle(image)
            for x, y in zip(xs, image):
                f[x] = y
    return apply_state_symmetry(g, f)


def random_oet_step(rng: random.Random, g: Game):
    # keep every state index, rebuild the observable-only part from scratch
    eigen = {i: g.observable.eigenvalue(i) for i in g.state}
    payoff = {x: g.payoff[x] for x in g.occurring_spectrum()}
    fresh = _fresh_values(3)
    tag = _FRESH[0]
    for j in range(rng.randint(0, 2)):
        eigen[f"w{tag}_{j}"] = fresh[j]
        if rng.random() < 0.5:
            payoff[fresh[j]] = Consequence(f"pad{j}", Fraction(j))
    return apply_oet(g, Observable(eigen), payoff)


def random_set_step(rng: random.Random, g: Game):
    _FRESH[0] += 1
    tag = _FRESH[0]
    relabel = {i: f"s{tag}_{i}" for i in g.observable.eigen}
    return apply_set(g, relabel)


STEP_MAKERS = (
    random_pet_step,
    random_met_step,
    random_op_symmetry_step,
    random_state_symmetry_step,
    random_oet_step,
    random_set_step,
)


def random_rewrite_step(rng: random.Random, g: Game):
    """One admissible random rewrite of g; never returns None."""
    makers = list(STEP_MAKERS)
    rng.shuffle(makers)
    for maker in makers:
        step = maker(rng, g)
        if step is not None:
            return step
    raise AssertionError("no rewrite applicable")  # pragma: no cover
