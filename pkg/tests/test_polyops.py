import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loewner_lab.errors import ArityMismatch, LemmaViolation
from loewner_lab.polyops import (
    ONE,
    X,
    InterlacedPair,
    RealPoly,
    apply_operator,
    divide_step,
    from_roots,
    is_interlaced,
    random_interlaced_pair,
    verify_division_lemma,
)
from loewner_lab.trigpoly import TrigPoly, random_trigpoly

SIN = TrigPoly.harmonic(1, sin=1.0)


def long_division(p, q):
    """Schoolbook division over the rationals: returns quotient and remainder, ascending coefficients."""
    num = [Fraction(v) for v in p]
    den = [Fraction(v) for v in q]
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        quot[shift] = factor
        for i, d in enumerate(den):
            num[shift + i] -= factor * d
        num.pop()
    return quot, num


# from_roots


def test_from_roots_pm1():
    assert from_roots([-1.0, 1.0]) == RealPoly([-1.0, 0.0, 1.0])


def test_from_roots_empty():
    assert from_roots([]) == ONE


def test_from_roots_123():
    # (x-1)(x-2)(x-3) expanded by hand
    assert from_roots([1, 2, 3]) == RealPoly([-6, 11, -6, 1])


def test_from_roots_rejects_nonfinite():
    with pytest.raises(ValueError):
        from_roots([0.0, float("nan")])


# is_interlaced


def test_interlaced_symmetric():
    assert is_interlaced([-1, 1], [0])


def test_interlaced_outside_span():
    assert not is_interlaced([0, 1], [2])


def test_interlaced_strict():
    assert not is_interlaced([0, 1], [0])


def test_interlaced_arity():
    with pytest.raises(ArityMismatch):
        is_interlaced([0, 1], [0.5, 0.7])


def test_pair_rejects_non_interlaced():
    with pytest.raises(ValueError):
        InterlacedPair.from_roots([0, 1], [2])


# divide_step


def test_divide_x2_minus_1_by_x():
    c, r = divide_step(InterlacedPair.from_roots([-1, 1], [0]))
    assert c == 0.0
    assert r == ONE


def test_divide_cubic_matches_long_division():
    pair = InterlacedPair.from_roots([-1, 0, 1], [-0.5, 0.5])
    c, r = divide_step(pair)
    quot, rem = long_division([0, -1, 0, 1], [Fraction(-1, 4), 0, 1])
    assert quot == [Fraction(0), Fraction(1)]  # x - c with c = 0
    # p = (x - c) q - r, so r = -remainder
    assert c == 0.0
    assert r == RealPoly([-float(v) for v in rem])
    assert r == RealPoly([0.0, 0.75])


def test_divide_base_case():
    c, r = divide_step(InterlacedPair.from_roots([0.3], []))
    assert c == 0.3
    assert r.is_zero()


def test_divide_matches_long_division_random():
    for seed in range(20):
        pair = random_interlaced_pair(seed, 6)
        c, r = divide_step(pair)
        quot, rem = long_division(pair.p.coeffs.tolist(), pair.q.coeffs.tolist())
        assert float(quot[1]) == 1.0
        assert -float(quot[0]) == pytest.approx(c, abs=1e-12)
        assert np.allclose(r.coeffs, [-float(v) for v in rem][: r.coeffs.size], atol=1e-12)


# verify_division_lemma


def test_lemma_cubic():
    rep = verify_division_lemma(InterlacedPair.from_roots([-1, 0, 1], [-0.5, 0.5]))
    assert rep.passed
    assert rep.r == RealPoly([0.0, 0.75])
    assert rep.r_roots == (0.0,)
    assert -0.5 < rep.r_roots[0] < 0.5
    assert rep.interlaced


def test_lemma_quadratic_vacuous():
    rep = verify_division_lemma(InterlacedPair.from_roots([-1, 1], [0]))
    assert rep.passed
    assert rep.r == ONE and rep.r.degree == 0
    assert rep.r_roots == ()


def test_lemma_needs_n2():
    with pytest.raises(ValueError):
        verify_division_lemma(InterlacedPair.from_roots([1.0], []))


def test_lemma_violation_carries_witness(monkeypatch):
    import loewner_lab.polyops as po

    pair = InterlacedPair.from_roots([-1, 0, 1], [-0.5, 0.5])
    # a wrong c breaks reconstruction and the degree of r
    monkeypatch.setattr(po, "divide_step", lambda p: (0.1, RealPoly([0.0, 0.75])))
    with pytest.raises(LemmaViolation) as err:
        po.verify_division_lemma(pair)
    assert err.value.witness["pair"] == pair.to_json()


def test_lemma_random_pairs():
    for seed in range(200):
        n = 2 + seed % 11
        assert verify_division_lemma(random_interlaced_pair(seed, n)).passed


# apply_operator


def test_operator_x_is_derivative():
    assert apply_operator(X, SIN).allclose(TrigPoly.harmonic(1, cos=1.0))


def test_operator_x2_minus_1_on_sin():
    assert apply_operator(RealPoly([-1, 0, 1]), SIN).allclose(SIN * -2.0)


def test_operator_composition_matches_expansion():
    a, b = 0.7, -1.3
    f = random_trigpoly(4, 8)
    composed = apply_operator(RealPoly([-a, 1]), apply_operator(RealPoly([-b, 1]), f))
    direct = apply_operator(from_roots([a, b]), f)
    assert np.allclose(composed.coeffs, direct.coeffs, atol=1e-12)
    assert composed.mean == pytest.approx(direct.mean, abs=1e-12)


def test_operator_constant_scales():
    f = random_trigpoly(2, 5)
    assert apply_operator(RealPoly([2.5]), f).allclose(f * 2.5)


# random_interlaced_pair


def test_random_pair_n1():
    pair = random_interlaced_pair(7, 1, 1.0)
    assert pair.p.degree == 1 and pair.q == ONE


def test_random_pair_deterministic():
    assert random_interlaced_pair(7, 5) == random_interlaced_pair(7, 5)


def test_pair_json_round_trip():
    pair = random_interlaced_pair(3, 4)
    assert InterlacedPair.from_json(json.loads(json.dumps(pair.to_json()))) == pair


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 12), st.floats(0.1, 10.0))
def test_random_pair_always_interlaced(seed, n, spread):
    pair = random_interlaced_pair(seed, n, spread)
    assert is_interlaced(pair.p_roots, pair.q_roots)
    assert pair.p.is_monic() and pair.q.is_monic()


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 12))
def test_division_reconstructs(seed, n):
    pair = random_interlaced_pair(seed, n)
    c, r = divide_step(pair)
    assert pair.p.relative_error(RealPoly([-c, 1]) * pair.q - r) < 1e-9
    assert r.degree == n - 2 and r.leading > 0


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=0, max_size=5), st.floats(-2, 2))
def test_from_roots_vanishes_at_roots(roots, x):
    p = from_roots(roots)
    for r in roots:
        assert abs(p(r)) <= 1e-9 * max(1.0, np.abs(p.coeffs).sum())
    assert p.degree == len(roots)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.floats(-2, 2), min_size=1, max_size=5),
    st.lists(st.floats(-2, 2), min_size=1, max_size=5),
    st.integers(0, 10_000),
    st.integers(1, 10),
)
def test_operator_homomorphism(p, q, seed, degree):
    P, Q = RealPoly(p), RealPoly(q)
    f = random_trigpoly(seed, degree)
    lhs = apply_operator(P * Q, f)
    rhs = apply_operator(P, apply_operator(Q, f))
    scale = max(1.0, float(np.abs(lhs.coeffs).max(initial=0.0)))
    assert np.allclose(lhs.coeffs, rhs.coeffs, rtol=0, atol=1e-10 * scale)
    assert abs(lhs.mean - rhs.mean) <= 1e-10 * scale


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 10))
def test_operator_x_is_derivative_exactly(seed, degree):
    f = random_trigpoly(seed, degree)
    assert apply_operator(X, f) == f.derivative()
