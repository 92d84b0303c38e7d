from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from secdet.linmat import LinearMatrix, minors_ideal
from secdet.resolutions import (
    BettiTable,
    en_betti,
    hilbert_numerator_from_betti,
    is_linear_shape,
    numerator_degree,
    numerator_vanishing_order,
    resolution_check,
    resolution_consistency,
)
from secdet.secant import min_degree, presentation
from secdet.varieties import make_scroll, make_veronese


def _oracle_numerator(q, e):
    """(1 - t)^e times the h-vector C(e-1+k, k), k = 0..q, of a linear weight-(q+1) resolution."""
    h = np.array([comb(e - 1 + k, k) for k in range(q + 1)], dtype=object)
    one_minus_t = np.array([1, -1], dtype=object)
    out = h
    for _ in range(e):
        out = np.convolve(out, one_minus_t)
    out = list(out)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(int(x) for x in out)


def test_en_betti_examples():
    B = en_betti(1, 2)
    assert B.entries == ((0, 2, 3), (1, 3, 2))
    assert en_betti(3, 1).entries == ((0, 4, 1),)
    assert en_betti(2, 3).ranks()[0] == 10
    assert en_betti(2, 3).as_json()[0] == {"i": 0, "twist": 3, "rank": 10}
    with pytest.raises(ValueError):
        en_betti(0, 2)


def test_numerator_examples():
    assert hilbert_numerator_from_betti(en_betti(1, 2)) == (1, 0, -3, 2)
    assert hilbert_numerator_from_betti(en_betti(3, 1)) == (1, 0, 0, 0, -1)
    assert hilbert_numerator_from_betti(en_betti(2, 3)) == (1, 0, 0, -10, 15, -6)
    assert hilbert_numerator_from_betti(en_betti(2, 4)) == (1, 0, 0, -20, 45, -36, 10)


def test_table_validation():
    with pytest.raises(ValueError):
        BettiTable(((0, 2, 0),))
    with pytest.raises(ValueError):
        BettiTable(((0, 2, 1), (0, 3, 1)))


@given(st.integers(1, 4), st.integers(1, 5))
def test_en_matches_linear_oracle(q, e):
    num = hilbert_numerator_from_betti(en_betti(q, e))
    assert num == _oracle_numerator(q, e)
    assert sum(num) == 0
    assert numerator_vanishing_order(num) == e
    assert numerator_degree(num, e) == min_degree(e, q)
    assert is_linear_shape(num, q)
    assert en_betti(q, e).length == e


def test_numerator_degree_rejects_wrong_order():
    with pytest.raises(ValueError):
        numerator_degree((1, 0, -3, 2), 3)


@pytest.mark.parametrize("build,q", [(lambda: make_scroll(3), 1), (lambda: make_scroll(3, 4), 2),
                                     (lambda: make_veronese(2, 3), 2)])
def test_gb_numerator_equals_en(build, q):
    V = build()
    M = presentation(V, q)
    e = M.b - q
    chk = resolution_check(M, q, e)
    assert chk.kind == "scroll" and chk.consistent
    assert chk.gb_numerator == chk.expected == _oracle_numerator(q, e)
    assert chk.as_dict()["consistent"] is True


def test_veronese_hankel_check():
    V = make_scroll(6)
    M = LinearMatrix.hankel(V.ring, 4, 4)
    chk = resolution_check(M, 2, 3)
    assert chk.kind == "veronese" and chk.consistent
    assert (chk.codimension, chk.degree) == (3, 10)
    assert chk.gb_numerator[:4] == (1, 0, 0, -10)


def test_wrong_e_inconsistent():
    V = make_scroll(3, 4)
    M = presentation(V, 2)
    hd = minors_ideal(M, 3).hilbert_data()
    assert resolution_consistency(M, 2, 3, hd=hd)
    assert not resolution_consistency(M, 2, 2, hd=hd)
