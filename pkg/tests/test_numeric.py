from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

from planarweb.errors import OnCut
from planarweb.hyperlog.numeric import WordEvaluator, eval_word
from planarweb.hyperlog.words import STANDARD


def test_li2_half_against_direct_series():
    # oracle: direct series summation of Li2(1/2)
    mp.dps = 60
    s = mpf(0)
    term = mpf(1)
    for n in range(1, 200):
        term /= 2
        s += term / n**2
    got = eval_word(("x0", "x1"), mpf(1) / 2, dps=50)
    assert abs(got.value - s) < mpf(10) ** -49
    closed = mp.pi**2 / 12 - mp.log(2) ** 2 / 2
    assert abs(got.value - closed) < mpf(10) ** -49
    assert got.digits >= 50


def test_weight_one_values():
    got = eval_word(("x1",), mpf(1) / 2, dps=50)
    assert abs(got.value - mp.log(2)) < mpf(10) ** -49
    got = eval_word(("x0",), 1, dps=50)
    assert abs(got.value) < mpf(10) ** -49


def test_li2_at_one():
    got = eval_word(("x0", "x1"), 1, dps=50)
    assert abs(got.value - mp.pi**2 / 6) < mpf(10) ** -48


def test_divergent_at_letter_raises():
    with pytest.raises(OnCut):
        eval_word(("x1",), 1, dps=30)


def test_on_cut_detection():
    ev = WordEvaluator(STANDARD, [("x0",)], dps=30)
    assert ev.on_cut(ev.mp.mpc(0, -1))
    assert ev.on_cut(ev.mp.mpc(1, 2))
    assert ev.on_cut(ev.mp.mpc(-1, -3))
    assert not ev.on_cut(ev.mp.mpc(0, 1))
    assert not ev.on_cut(ev.mp.mpc(2, 0))
    with pytest.raises(OnCut):
        eval_word(("x0",), ev.mp.mpc(0, -2), dps=30)


def test_polylog_agreement_many_points():
    ev = WordEvaluator(STANDARD, [("x0", "x0", "x1"), ("x0", "x1")], dps=45)
    pts = [mpf(1) / 3, mpf(3) / 8, mpf(-3) / 2, mpf(-1) / 4, ev.mp.mpc("0.3", "0.7"),
           ev.mp.mpc("-0.4", "0.2")]
    for z in pts:
        vals = ev.value_vector(z)
        assert abs(vals[("x0", "x1")] - ev.mp.polylog(2, z)) < mpf(10) ** -40
        assert abs(vals[("x0", "x0", "x1")] - ev.mp.polylog(3, z)) < mpf(10) ** -40


def test_branch_beyond_one_is_lower_cut():
    # the cut at 1 points upward, so real points beyond 1 carry the branch
    # continued below the cut
    ev = WordEvaluator(STANDARD, [("x0", "x1")], dps=40)
    got = ev.value_vector(mpf(2))[("x0", "x1")]
    ref = ev.mp.polylog(2, ev.mp.mpc(2, mpf(10) ** -50))
    assert abs(got - ev.mp.conj(ref)) < mpf(10) ** -35


def test_precision_doubling_validation():
    v30 = eval_word(("x0", "x1"), mpf(2) / 3, dps=30)
    v60 = eval_word(("x0", "x1"), mpf(2) / 3, dps=60)
    assert abs(v30.value - v60.value) < v30.error


def test_regularized_values_weight_two():
    words = [("x0",), ("x1",), ("x-1",), ("x0", "x1"), ("x1", "x0"), ("x-1", "x1")]
    ev = WordEvaluator(STANDARD, words, dps=45)
    reg1 = ev.regularized_values_at(1)
    mpl = ev.mp
    assert abs(reg1[("x1",)]) < mpf(10) ** -40
    assert abs(reg1[("x0", "x1")] - mpl.pi**2 / 6) < mpf(10) ** -40
    assert abs(reg1[("x1", "x0")] + mpl.pi**2 / 6) < mpf(10) ** -40
    assert abs(reg1[("x-1", "x1")] - (mpl.pi**2 / 12 - mpl.log(2) ** 2 / 2)) < mpf(10) ** -40
    regm1 = ev.regularized_values_at(-1)
    assert abs(regm1[("x0",)] - mpl.mpc(0, 1) * mpl.pi) < mpf(10) ** -40
    assert abs(regm1[("x1",)] + mpl.log(2)) < mpf(10) ** -40


def test_shuffle_evaluation_homomorphism():
    from planarweb.hyperlog.numeric import eval_expr
    from planarweb.hyperlog.words import shuffle

    ev = WordEvaluator(
        STANDARD,
        [("x0", "x1"), ("x1", "x0"), ("x0",), ("x1",), ("x0", "x0"), ("x1", "x1")],
        dps=40,
    )
    mpl = ev.mp
    for z in (mpf(1) / 3, mpf(2) / 3, mpl.mpc("0.2", "0.4")):
        vals = ev.value_vector(z)
        prod = vals[("x0",)] * vals[("x1",)]
        sh = shuffle(("x0",), ("x1",))
        total = mpl.mpc(0)
        for w, c in sh.terms.items():
            total += c.numeric(mpl) * vals[w]
        assert abs(prod - total) < mpf(10) ** -35
