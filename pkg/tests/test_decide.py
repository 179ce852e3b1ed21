import random

import pytest

from waringeq.decide import Stage, decide_equiv, decide_full_slices, error_bounds
from waringeq.exactla import FieldMode
from waringeq.oracle import from_poly, from_power_sum
from waringeq.parsing import parse
from waringeq.randcheck import SampleConfig
from waringeq.scalarpoly import Poly, sum_of_powers
from conftest import random_invertible

C, R = FieldMode.COMPLEX, FieldMode.REAL


def test_sum_of_cubes_accepts():
    rep = decide_equiv(from_poly(sum_of_powers(3, 3)), C)
    assert rep.verdict == "accept" and rep.stage is Stage.ACCEPTED


@pytest.mark.parametrize("mode", [C, R])
def test_two_cubes_example_accepts(mode):
    rep = decide_equiv(parse("2*x1^3 + 12*x1*x2^2"), mode)
    assert rep.accepted and rep.stage is Stage.ACCEPTED


def test_non_diagonalizable_rejects():
    rep = decide_equiv(parse("x1^2*x2"), C)
    assert rep.verdict == "reject" and rep.stage is Stage.NONDIAGONALIZABLE


def test_report_fields():
    cfg = SampleConfig(set_size=1000, seed=3, trials=1)
    rep = decide_equiv(sum_of_powers(4, 5), R, cfg)
    assert rep.seed == 3 and rep.set_size == 1000 and rep.trials == 1
    assert rep.error_bound_positive == pytest.approx(4 * 4 / 1000)
    assert rep.error_bound_negative == pytest.approx(2 * 3 / 1000)
    assert rep.mode is R
    assert 0 < rep.oracle_calls <= 10 * 16 * 5 + 3
    assert rep.to_dict()["stage"] == "accepted"


def test_error_bounds_clip_and_d3():
    assert error_bounds(3, 3, 2**31) == (3 * 2 / 2**31, 2 / 2**31)
    assert error_bounds(100, 100, 2) == (1.0, 1.0)


def test_degree_guard():
    with pytest.raises(ValueError):
        decide_equiv(parse("x1^2 + x2^2"))


def test_zero_polynomial_rejected_with_note():
    rep = decide_equiv(from_poly(Poly(3), degree=4))
    assert rep.stage is Stage.SINGULAR_T1
    assert "zero" in rep.note


def test_weakly_singular_rejected():
    rep = decide_equiv(parse("x1^4", n=3))
    assert rep.stage is Stage.SINGULAR_T1
    assert rep.note == ""


def test_one_variable():
    assert decide_equiv(parse("-3*x1^4"), R).accepted
    assert decide_equiv(parse("5*x1^3")).accepted


def test_real_versus_complex():
    # Re((x1 + i x2)^3): two complex cubes, three real ones
    p = parse("x1^3 - 3*x1*x2^2")
    assert decide_equiv(p, C).accepted
    rep = decide_equiv(p, R)
    assert rep.stage is Stage.NONDIAGONALIZABLE


def test_binary_quartic_needs_third_slice():
    # generic binary quartic: slices span all symmetric 2x2 matrices
    p = parse("x1^4 + x1^3*x2 + 3*x1^2*x2^2 + x2^4")
    assert decide_full_slices(p).stage is Stage.NONCOMMUTING
    assert decide_equiv(p).stage is Stage.NONCOMMUTING


def test_majority_vote_and_trial_stages():
    cfg = SampleConfig(seed=1, trials=5)
    rep = decide_equiv(parse("x1^2*x2"), C, cfg)
    assert rep.trial_stages == [Stage.NONDIAGONALIZABLE] * 5
    assert rep.stage is Stage.NONDIAGONALIZABLE


def test_tiny_set_size_can_err_but_majority_recovers():
    p = sum_of_powers(3, 4)
    cfg = SampleConfig(set_size=3, seed=0, trials=15)
    rep = decide_equiv(p, C, cfg)
    assert len(rep.trial_stages) == 15
    assert rep.accepted == (sum(s is Stage.ACCEPTED for s in rep.trial_stages) > 7)


def test_deterministic_given_seed():
    p = parse("x1^3 + 2*x2^3 - x1*x2*x3 + x3^3")
    a = decide_equiv(p, C, SampleConfig(seed=11)).to_dict()
    b = decide_equiv(p, C, SampleConfig(seed=11)).to_dict()
    assert a == b


# -- deterministic reference ---------------------------------------------------


@pytest.mark.parametrize("n,d", [(1, 3), (2, 4), (3, 3), (3, 5), (4, 4), (2, 6)])
def test_full_slices_accepts_power_sums(n, d):
    assert decide_full_slices(sum_of_powers(n, d), R).stage is Stage.ACCEPTED


def test_full_slices_examples():
    assert decide_full_slices(parse("x1^2*x2")).stage is Stage.NONDIAGONALIZABLE
    assert decide_full_slices(parse("x1^3", n=2)).stage is Stage.SINGULAR_T1
    assert decide_full_slices(Poly(2), degree=3).stage is Stage.SINGULAR_T1


def test_full_slices_guard():
    with pytest.raises(ValueError):
        decide_full_slices(sum_of_powers(5, 3))
    with pytest.raises(ValueError):
        decide_full_slices(sum_of_powers(2, 7))


def test_full_slices_scaling_invariance():
    rng = random.Random(4)
    for text in ["x1^2*x2", "x1^3 + x2^3 + x1*x2*x3", "x1^4 - 2*x2^4 + x3^4", "x1^3 - 3*x1*x2^2"]:
        p = parse(text)
        for mode in (C, R):
            base = decide_full_slices(p, mode).stage
            for c in (rng.randint(2, 9), -rng.randint(2, 9)):
                assert decide_full_slices(p * c, mode).stage is base


def test_full_slices_invariant_under_change_of_variables():
    rng = random.Random(8)
    for _ in range(6):
        a = random_invertible(rng, 3, -2, 2)
        p = parse("x1^3 - x2^3 + 2*x3^3").substitute_linear(a)
        assert decide_full_slices(p, R).accepted
        q = parse("x1^2*x2 + x3^3").substitute_linear(a)
        assert not decide_full_slices(q, C).accepted


def test_blackbox_power_sum_positive():
    rng = random.Random(3)
    for _ in range(10):
        n, d = rng.randint(2, 5), rng.randint(3, 6)
        a = random_invertible(rng, n)
        alphas = [rng.choice([-2, -1, 1, 3]) for _ in range(n)]
        assert decide_equiv(from_power_sum(alphas, a, d), R, SampleConfig(seed=rng.randrange(2**32))).accepted
