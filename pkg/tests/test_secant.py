import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from secdet.gluing import direct_presentation
from secdet.linmat import LinearMatrix, gl_equivalent, minors, minors_ideal, random_gl_action
from secdet.secant import (
    FactorizationError,
    PresentationError,
    SecantProfile,
    certify_presentation,
    classify,
    decomposition,
    factor_presentation,
    matrix_from_multiplication,
    min_degree,
    presentation,
    rank_bound_check,
    sample_secant_point,
    sample_secant_points,
    secant_ideal_tiny,
    secant_profile,
    secant_ranks,
    terracini,
)
from secdet.symkernel import GF32003, ideal_equal
from secdet.varieties import (
    ParamVariety,
    forms_vanishing,
    implicitize,
    make_delpezzo_blowup,
    make_scroll,
    make_segre,
    make_veronese,
)

F = GF32003
seeds = st.integers(0, 2**32 - 1)


def unit(k, n):
    return tuple(1 if i == k else 0 for i in range(n))


# ---------------------------------------------------------------------------
# minimal degree

def test_min_degree_examples():
    assert min_degree(2, 1) == 3
    assert min_degree(4, 2) == 15
    assert min_degree(3, 2) == 10
    with pytest.raises(ValueError):
        min_degree(1, 0)


@given(st.integers(1, 30), st.integers(1, 30))
def test_min_degree_symmetry(e, q):
    assert min_degree(e, q) == min_degree(q, e)
    assert min_degree(e, 1) == e + 1


# ---------------------------------------------------------------------------
# sampling and Terracini

def test_secant_samples_rnc(rng):
    C4 = make_scroll(4)
    H33 = LinearMatrix.hankel(C4.ring, 3, 3)
    (det,) = minors(H33, 3)
    for p in sample_secant_points(C4, 2, 20, rng):
        assert det.eval(p.coords) == 0
    p = sample_secant_point(C4, 1, rng)
    assert all(g.eval(p.coords) == 0 for g in forms_vanishing(C4, 2))
    C6 = make_scroll(6)
    H44 = LinearMatrix.hankel(C6.ring, 4, 4)
    ranks = secant_ranks(H44, sample_secant_points(C6, 2, 200, rng))
    assert ranks.max() == 2


def test_terracini_examples(rng):
    assert terracini(make_veronese(3, 2), 2, rng) == (6, 3)
    assert terracini(make_scroll(3), 2, rng) == (3, 0)
    assert terracini(make_scroll(3, 4), 2, rng) == (5, 3)
    assert terracini(make_veronese(2, 3), 2, rng) == (5, 4)
    with pytest.raises(ValueError):
        terracini(make_scroll(3), 1, rng, trials=0)


@given(seeds)
def test_terracini_gl_invariant_and_monotone(seed):
    rng = np.random.default_rng(seed)
    V = make_scroll(2, 3)
    A = [[F.random(rng) for _ in range(V.r + 1)] for _ in range(V.r + 1)]
    secs = [sum((s.scale(A[i][k]) for k, s in enumerate(V.sections) if A[i][k]), V.pring.zero())
            for i in range(V.r + 1)]
    gV = ParamVariety(V.pring, secs, meta={"weighted": True})
    if not gV.is_independent():
        return
    d1, _ = terracini(V, 1, rng)
    d2, e2 = terracini(V, 2, rng)
    assert terracini(gV, 2, rng) == (d2, e2)
    assert d2 >= d1


def test_profile_target():
    P = SecantProfile(make_scroll(3, 4), 2, 5, 3)
    assert P.minimal_degree_target == 10
    assert P.as_dict()["e"] == 3


# ---------------------------------------------------------------------------
# multiplication maps

def test_generic_symmetric_from_multiplication():
    for n in (2, 3):
        V = make_veronese(n, 2)
        T = V.pring.gens()
        M = matrix_from_multiplication(V, T, T)
        assert M.symmetric and M.shape == (n + 1, n + 1)
        assert M == direct_presentation(V, 2)


def test_veronese_cubic_three_by_six():
    V = make_veronese(2, 3)
    M = presentation(V, 2)
    assert M.shape == (3, 6) and not M.symmetric
    # every entry is a single coordinate (a monomial section)
    assert all(sum(1 for x in v if x) == 1 for row in M.coeffs for v in row)


def test_scroll_with_base_section():
    V = make_scroll(1, 5)
    R = V.pring
    s, t, l2 = R.gen("s"), R.gen("t"), R.gen("l2")
    S1 = [s**2, s * t, t**2]
    S2 = [s**3, s**2 * t, s * t**2, t**3]
    M = matrix_from_multiplication(V, S1, S2, l2)
    assert M.shape == (3, 4)
    assert M == LinearMatrix(V.ring, [[unit(2 + i + j, 8) for j in range(4)] for i in range(3)])
    with pytest.raises(PresentationError):
        matrix_from_multiplication(V, [s**3], [s**3], l2)


def test_no_recipe_for_custom():
    from secdet.varieties import custom_variety

    with pytest.raises(PresentationError):
        decomposition(custom_variety(["s", "t"], ["s^2", "s*t", "t^2"]), 1)


# ---------------------------------------------------------------------------
# certification

def test_certify_rnc6_veronese(rng):
    V = make_scroll(6)
    M = LinearMatrix.hankel(V.ring, 4, 4)
    prof = secant_profile(V, 2, rng)
    v = certify_presentation(M, V, 2, prof, rng)
    assert v.kind == "veronese" and v.certified and all(v.checks.values())
    assert prof.measured_degree == 10


def test_certify_delpezzo_scroll(rng):
    V = make_delpezzo_blowup([(0, 0, 1)])
    M = presentation(V, 2)
    assert M.shape == (3, 5)
    prof = secant_profile(V, 2, rng)
    assert prof.e == 3
    v = certify_presentation(M, V, 2, prof, rng, samples=50)
    assert v.kind == "scroll" and v.data["hilbert"]["degree"] == 10


def test_certify_zeroed_hankel(rng):
    V = make_scroll(3)
    M = LinearMatrix.hankel(V.ring, 2, 3)
    co = [list(r) for r in M.coeffs]
    co[0][2] = (0, 0, 0, 0)
    Z = LinearMatrix(V.ring, co)
    v = certify_presentation(Z, V, 1, secant_profile(V, 1, rng), rng, samples=20)
    assert not v.certified and "one_generic" in v.failing()


@given(seeds)
def test_certify_gl_invariant(seed):
    rng = np.random.default_rng(seed)
    V = make_scroll(2, 2)
    M = presentation(V, 1)
    prof = secant_profile(V, 1, rng)
    base = certify_presentation(M, V, 1, prof, rng, samples=10)
    _, M2 = random_gl_action(M, rng)
    other = certify_presentation(M2, V, 1, prof, rng, samples=10)
    assert base.kind == other.kind == "scroll"
    assert base.checks == other.checks


def test_rank_bounds(rng):
    V = make_veronese(3, 2)
    M = presentation(V, 2)
    ranks = secant_ranks(M, sample_secant_points(V, 2, 50, rng))
    assert set(ranks.tolist()) == {2}
    assert rank_bound_check(M, V, 2, 50, rng)
    assert rank_bound_check(M, V, 1, 20, rng)
    W = make_veronese(2, 3)
    assert rank_bound_check(presentation(W, 2), W, 2, 200, rng)


@pytest.mark.parametrize("V,q", [(make_scroll(3), 1), (make_scroll(3, 4), 2), (make_veronese(3, 2), 2)])
def test_minor_generators_have_degree_q_plus_one(V, q):
    M = presentation(V, q)
    assert all(f.degree == q + 1 for f in minors(M, q + 1))


# ---------------------------------------------------------------------------
# factorization

def test_factor_generic_symmetric():
    V = make_veronese(3, 2)
    fac = factor_presentation(presentation(V, 2), V)
    assert fac.s == fac.t == list(V.pring.gens())
    assert fac.alpha == 1 and fac.u.is_constant()


def test_factor_segre():
    V = make_segre(1, 2)
    fac = factor_presentation(presentation(V, 1), V)
    R = V.pring
    assert fac.s == [R.gen("s0"), R.gen("s1")]
    assert fac.t == [R.gen(f"t{j}") for j in range(3)]
    assert fac.u == R.one()


def test_factor_base_section():
    V = make_scroll(1, 5)
    R = V.pring
    s, t, l2 = R.gen("s"), R.gen("t"), R.gen("l2")
    M = matrix_from_multiplication(V, [s**2, s * t, t**2], [s**3, s**2 * t, s * t**2, t**3], l2)
    fac = factor_presentation(M, V)
    assert fac.u == l2
    assert fac.s == [s**2, s * t, t**2]
    assert fac.t == [s**3, s**2 * t, s * t**2, t**3]


def test_factor_rejects_zero_entry():
    V = make_scroll(3)
    co = [list(r) for r in LinearMatrix.hankel(V.ring, 2, 3).coeffs]
    co[0][0] = (0, 0, 0, 0)
    with pytest.raises(FactorizationError):
        factor_presentation(LinearMatrix(V.ring, co), V)


@given(seeds)
def test_factor_reconstruction_equivalent(seed):
    rng = np.random.default_rng(seed)
    V = make_scroll(2, 3)
    _, M = random_gl_action(presentation(V, 2), rng)
    fac = factor_presentation(M, V)
    M2 = matrix_from_multiplication(V, fac.s, fac.t, fac.u)
    assert gl_equivalent(M, M2, rng) is not None


# ---------------------------------------------------------------------------
# tiny secant oracle and classification

def test_tiny_oracle_examples(rng):
    C4 = make_scroll(4)
    I = secant_ideal_tiny(C4, 2, 3, rng)
    assert len(I.generators) == 1
    assert ideal_equal(I, minors_ideal(LinearMatrix.hankel(C4.ring, 3, 3), 3))
    C5 = make_scroll(5)
    J = secant_ideal_tiny(C5, 2, 3, rng)
    # the four maximal minors of the 3 x 4 catalecticant; codim 2 and degree C(4, 2) = 6
    assert len(J.generators) == 4 and all(g.degree == 3 for g in J.generators)
    assert ideal_equal(J, minors_ideal(LinearMatrix.hankel(C5.ring, 3, 4), 3))
    hd = J.hilbert_data()
    assert (hd.codimension, hd.degree) == (2, 6)
    assert ideal_equal(secant_ideal_tiny(C4, 1, 2, rng), implicitize(C4, 2))
    with pytest.raises(ValueError):
        secant_ideal_tiny(make_veronese(2, 3), 2, 3, rng)


def test_classify(rng):
    assert classify(make_scroll(3, 4), 2, rng, samples=20)["type"] == "scroll"
    assert classify(make_scroll(6), 2, rng, samples=20)["type"] == "veronese"
    out = classify(make_veronese(4, 2), 2, rng, samples=20)
    assert out["type"] == "neither" and not out["tangential"]["minimal"]
