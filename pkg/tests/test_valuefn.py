"""Value construction from preference oracles, and act probabilities."""

import random
from fractions import Fraction

import pytest

from qgames import (
    AxiomViolationError,
    Ordering,
    OracleInconsistencyError,
    PreconditionError,
    PreferenceOracle,
    build_value,
    derive_act_probabilities,
    integer_oracle,
    money_oracle,
)

F = Fraction


class TestBuildValue:
    def test_unit_brackets_one(self):
        cut = build_value(integer_oracle(), 1, 1, 8)
        assert cut.lower <= 1 <= cut.upper
        assert cut.width() <= F(1, 2 ** 7)

    def test_zero_element(self):
        cut = build_value(integer_oracle(), 1, 0, 8)
        assert cut.lower == cut.upper == 0

    def test_integer_seven_at_depth_ten(self):
        cut = build_value(integer_oracle(), 1, 7, 10)
        assert cut.lower <= 7 <= cut.upper
        assert cut.width() <= F(1, 2 ** 9)

    def test_negative_element(self):
        cut = build_value(integer_oracle(), 1, -5, 10)
        assert cut.lower <= -5 <= cut.upper
        assert cut.width() <= F(1, 2 ** 9)

    def test_rational_money(self):
        cut = build_value(money_oracle(), F(1), F(22, 7), 12)
        assert cut.lower <= F(22, 7) <= cut.upper
        assert cut.width() <= F(1, 2 ** 11)

    def test_nonunit_reference(self):
        # ratio against unit 3: V(7)/V(3) = 7/3
        cut = build_value(integer_oracle(), 3, 7, 12)
        assert cut.lower <= F(7, 3) <= cut.upper

    def test_unit_must_beat_zero(self):
        with pytest.raises(PreconditionError):
            build_value(integer_oracle(), 0, 5, 4)
        with pytest.raises(PreconditionError):
            build_value(integer_oracle(), -1, 5, 4)

    def test_monotone_refinement(self):
        rng = random.Random(79)
        for _ in range(40):
            y = rng.randint(-60, 60)
            shallow = build_value(integer_oracle(), 1, y, 4)
            deep = build_value(integer_oracle(), 1, y, 9)
            assert shallow.lower <= deep.lower <= deep.upper <= shallow.upper

    def test_cuts_separate_ordered_elements(self):
        # V(c1) > V(c2) iff c1 > c2, witnessed at sufficient depth
        rng = random.Random(83)
        for _ in range(30):
            a = rng.randint(-40, 40)
            b = rng.randint(-40, 40)
            if a == b:
                continue
            hi, lo = max(a, b), min(a, b)
            cut_hi = build_value(integer_oracle(), 1, hi, 10)
            cut_lo = build_value(integer_oracle(), 1, lo, 10)
            assert cut_hi.lower > cut_lo.upper

    def test_additivity_of_constructed_values(self):
        rng = random.Random(89)
        for _ in range(30):
            a = rng.randint(-30, 30)
            b = rng.randint(-30, 30)
            cut_a = build_value(integer_oracle(), 1, a, 10)
            cut_b = build_value(integer_oracle(), 1, b, 10)
            cut_sum = build_value(integer_oracle(), 1, a + b, 10)
            lo = cut_a.lower + cut_b.lower - cut_sum.width()
            hi = cut_a.upper + cut_b.upper + cut_sum.width()
            assert lo <= cut_sum.midpoint() <= hi
            # midpoints agree within the combined widths
            combined = cut_a.width() + cut_b.width() + cut_sum.width()
            assert abs(cut_sum.midpoint() - (cut_a.midpoint() + cut_b.midpoint())) <= combined

    def test_unit_invariance_after_rescaling(self):
        rng = random.Random(97)
        for _ in range(20):
            y = rng.randint(1, 50)
            base = build_value(integer_oracle(), 1, y, 12)
            other = build_value(integer_oracle(), 5, y, 12)
            scale = build_value(integer_oracle(), 1, 5, 12)
            # V(y)/V(1) should equal (V(y)/V(5)) * (V(5)/V(1)) within widths
            rescaled = other.midpoint() * scale.midpoint()
            tolerance = (
                base.width()
                + other.width() * scale.upper
                + scale.width() * (other.upper + 1)
            )
            assert abs(base.midpoint() - rescaled) <= tolerance

    def test_axiom_violation_is_named(self):
        # a non-commutative addition is caught by the sampled law instances
        def cmp(a, b):
            if a > b:
                return Ordering.MORE
            if a < b:
                return Ordering.LESS
            return Ordering.EQUIV

        broken = PreferenceOracle(compare=cmp, add=lambda a, b: a - b, zero=0)
        with pytest.raises(AxiomViolationError) as exc:
            build_value(broken, 1, 7, 6)
        assert "commutativity" in str(exc.value) or "identity" in str(exc.value)

    def test_unbounded_element_reported(self):
        class Infinite:
            pass

        top = Infinite()

        def cmp(a, b):
            if isinstance(a, Infinite) and isinstance(b, Infinite):
                return Ordering.EQUIV
            if isinstance(a, Infinite):
                return Ordering.MORE
            if isinstance(b, Infinite):
                return Ordering.LESS
            if a > b:
                return Ordering.MORE
            if a < b:
                return Ordering.LESS
            return Ordering.EQUIV

        def add(a, b):
            if isinstance(a, Infinite) or isinstance(b, Infinite):
                return top
            return a + b

        oracle = PreferenceOracle(compare=cmp, add=add, zero=0)
        with pytest.raises(AxiomViolationError):
            build_value(oracle, 1, top, 4)


class TestActProbabilities:
    def _eu_oracle(self, weights):
        def oracle(act):
            return sum((w * act[s] for s, w in weights.items()), F(0))

        return oracle

    def test_symmetric_pair(self):
        weights = {"s1": F(1, 2), "s2": F(1, 2)}
        probs = derive_act_probabilities(["s1", "s2"], self._eu_oracle(weights), F(1))
        assert probs == [F(1, 2), F(1, 2)]

    def test_three_state_recovery(self):
        weights = {"s1": F(1, 6), "s2": F(1, 3), "s3": F(1, 2)}
        probs = derive_act_probabilities(
            ["s1", "s2", "s3"], self._eu_oracle(weights), F(1)
        )
        assert probs == [F(1, 6), F(1, 3), F(1, 2)]

    def test_unit_value_scales_out(self):
        weights = {"a": F(2, 5), "b": F(3, 5)}
        probs = derive_act_probabilities(["a", "b"], self._eu_oracle(weights), F(7, 3))
        assert probs == [F(2, 5), F(3, 5)]

    def test_negative_indicator_value_rejected(self):
        def oracle(act):
            return -act["a"] + act["b"]

        with pytest.raises(OracleInconsistencyError):
            derive_act_probabilities(["a", "b"], oracle, F(1))

    def test_unnormalized_oracle_rejected(self):
        def oracle(act):
            return act["a"] + act["b"]  # indicator values sum to 2 units

        with pytest.raises(OracleInconsistencyError):
            derive_act_probabilities(["a", "b"], oracle, F(1))

    def test_nonadditive_oracle_rejected(self):
        def oracle(act):
            total = act["a"] / 2 + act["b"] / 2
            return total * total  # breaks additivity on sampled acts

        with pytest.raises(OracleInconsistencyError):
            derive_act_probabilities(["a", "b"], oracle, F(1))

    def test_random_eu_oracles(self):
        rng = random.Random(101)
        for _ in range(100):
            k = rng.randint(1, 5)
            den = rng.randint(k, 24)
            cuts = sorted(rng.sample(range(1, den), k - 1)) if k > 1 else []
            edges = [0] + cuts + [den]
            ws = [F(edges[i + 1] - edges[i], den) for i in range(k)]
            states = [f"s{j}" for j in range(k)]
            weights = dict(zip(states, ws))
            probs = derive_act_probabilities(states, self._eu_oracle(weights), F(1))
            assert probs == ws
