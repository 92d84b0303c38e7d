import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from secdet.linmat import LinearMatrix, minors_ideal
from secdet.symkernel import GF32003, QQ, ambient_ring, ideal_equal, linalg as la, poly_parse
from secdet.varieties import (
    ParamVariety,
    VarietyError,
    custom_variety,
    forms_vanishing,
    implicitize,
    inner_projection,
    load_variety,
    make_delpezzo_blowup,
    make_p1p1_22,
    make_scroll,
    make_segre,
    make_veronese,
    random_gamma,
    sample_point,
    sample_points,
    tangent_space,
    tangential_projection,
    variety_to_text,
)

F = GF32003
seeds = st.integers(0, 2**32 - 1)


# ---------------------------------------------------------------------------
# families

def test_scroll_sections():
    C = make_scroll(3)
    assert [str(s) for s in C.sections] == ["s^3", "s^2*t", "s*t^2", "t^3"]
    assert make_scroll(1, 2).r == 4
    S = make_scroll(3, 4)
    assert S.r == 8 and S.is_independent()
    with pytest.raises(VarietyError):
        make_scroll(0, 0)


def test_veronese_and_segre_sections():
    assert make_veronese(2, 2).r == 5
    assert make_veronese(2, 3).r == 9
    V14, C4 = make_veronese(1, 4), make_scroll(4)
    assert {next(iter(s.termdict)) for s in V14.sections} == {next(iter(s.termdict)) for s in C4.sections}
    assert make_segre(1, 1).r == 3 and make_segre(2, 2).r == 8
    P = make_p1p1_22()
    assert P.r == 8 and P.is_independent()
    assert all(s.degree == 4 for s in P.sections)


def test_delpezzo_sections():
    assert make_delpezzo_blowup([]).r == 9
    D1 = make_delpezzo_blowup([(0, 0, 1)])
    assert D1.r == 8
    # every section vanishes at (0:0:1), so none involves t2^3
    assert all(s.eval((0, 0, 1)) == 0 for s in D1.sections)
    D6 = make_delpezzo_blowup(random_gamma(6, F, np.random.default_rng(3)))
    assert D6.r == 3
    with pytest.raises(VarietyError):
        make_delpezzo_blowup([(1, 0, 0), (0, 1, 0), (1, 1, 0)])      # collinear
    with pytest.raises(VarietyError):
        make_delpezzo_blowup([(1, 0, 0), (1, 0, 0)])
    with pytest.raises(VarietyError):
        make_delpezzo_blowup(random_gamma(7, F, np.random.default_rng(3)))


def test_delpezzo_six_on_a_conic_rejected():
    # six points on x*z = y^2
    pts = [(1, t, t * t) for t in range(1, 7)]
    with pytest.raises(VarietyError):
        make_delpezzo_blowup(pts)


# ---------------------------------------------------------------------------
# sampling and tangent spaces

def test_sample_at_parameter_over_q():
    C = make_scroll(3, field=QQ)
    p = sample_point(C, None, params=(1, 2))
    assert p.coords == (1, 2, 4, 8)


def test_tangent_space_twisted_cubic():
    C = make_scroll(3)
    T = tangent_space(C, (1, 0))
    assert T.dim == 1
    assert la.row_space([list(r) for r in T.rows], F) == [[1, 0, 0, 0], [0, 1, 0, 0]]
    assert la.row_space([list(c) for c in T.cutting], F) == [[0, 0, 1, 0], [0, 0, 0, 1]]
    V = make_veronese(2, 2)
    assert tangent_space(V, (1, 0, 0)).dim == 2
    with pytest.raises(VarietyError):
        tangent_space(C, (0, 0))


@given(seeds)
def test_tangent_cutting_annihilates_point(seed):
    rng = np.random.default_rng(seed)
    V = make_veronese(2, 2)
    p = sample_point(V, rng)
    T = tangent_space(V, p.params)
    for c in T.cutting:
        assert F.norm(sum(a * b for a, b in zip(c, p.coords))) == 0
        for r in T.rows:
            assert F.norm(sum(a * b for a, b in zip(c, r))) == 0


def test_distinct_samples_independent(rng):
    pts = sample_points(make_scroll(3), 2, rng)
    assert la.rank([list(p.coords) for p in pts], F) == 2


# ---------------------------------------------------------------------------
# implicitization

def test_implicitize_counts():
    C = make_scroll(3)
    assert len(forms_vanishing(C, 2)) == 3
    H = LinearMatrix.hankel(C.ring, 2, 3)
    assert ideal_equal(implicitize(C, 2), minors_ideal(H, 2))
    quad = forms_vanishing(make_segre(1, 1), 2)
    assert len(quad) == 1
    assert quad[0].monic() == poly_parse("x0*x3 - x1*x2", quad[0].ring).monic()
    assert len(forms_vanishing(make_veronese(2, 2), 2)) == 6
    assert forms_vanishing(C, 1) == []
    with pytest.raises(VarietyError):
        implicitize(C, 0)


@given(seeds)
def test_sampled_points_satisfy_equations(seed):
    rng = np.random.default_rng(seed)
    V = make_scroll(1, 2)
    gens = forms_vanishing(V, 2)
    for p in sample_points(V, 3, rng):
        assert all(g.eval(p.coords) == 0 for g in gens)


def _random_invertible(n, rng):
    while True:
        A = [[F.random(rng) for _ in range(n)] for _ in range(n)]
        if la.rank(A, F) == n:
            return A


@given(seeds)
def test_implicitize_gl_equivariant(seed):
    rng = np.random.default_rng(seed)
    V = make_scroll(1, 2)
    A = _random_invertible(V.r + 1, rng)
    secs = [sum((s.scale(A[i][k]) for k, s in enumerate(V.sections) if A[i][k]), V.pring.zero())
            for i in range(V.r + 1)]
    gV = ParamVariety(V.pring, secs)
    # f vanishes on gV iff f(A x) vanishes on V
    R = V.ring
    images = [R.linear_form(A[i]) for i in range(V.r + 1)]
    pulled = [f.pullback(images, R) for f in forms_vanishing(gV, 2)]
    assert ideal_equal(implicitize(V, 2), type(implicitize(V, 2))(R, pulled))


@given(seeds)
def test_tangent_rows_first_order(seed):
    rng = np.random.default_rng(seed)
    V = make_veronese(2, 2)
    p = sample_point(V, rng)
    T = tangent_space(V, p.params)
    for g in forms_vanishing(V, 2):
        grad = [g.diff(k).eval(p.coords) for k in range(V.r + 1)]
        for r in T.rows:
            assert F.norm(sum(a * b for a, b in zip(grad, r))) == 0


# ---------------------------------------------------------------------------
# projections

def test_inner_projection_rnc():
    d = 5
    V = make_scroll(d)
    z = sample_point(V, None, params=(1, 0))
    W = inner_projection(V, z).target
    assert W.r == d - 1
    assert len(forms_vanishing(W, 2)) == len(forms_vanishing(make_scroll(d - 1), 2))


def test_tangential_projection_of_quadric_veronese():
    V = make_veronese(3, 2)
    T = tangent_space(V, (1, 2, 3, 5))
    W = tangential_projection(V, T).target
    assert len(W.sections) == 6
    hw = implicitize(W, 2).hilbert_data()
    hv = implicitize(make_veronese(2, 2), 2).hilbert_data()
    assert (hw.codimension, hw.degree) == (hv.codimension, hv.degree) == (3, 4)
    assert len(forms_vanishing(W, 2)) == 6


@given(seeds)
def test_projection_lift_roundtrip(seed):
    rng = np.random.default_rng(seed)
    V = make_scroll(4)
    z = sample_point(V, rng)
    pr = inner_projection(V, z)
    c = [F.random(rng) for _ in range(pr.target.r + 1)]
    f = pr.lift_form(c)
    assert F.norm(sum(a * b for a, b in zip(f, z.coords))) == 0
    assert list(pr.push_form(f)) == c


@given(seeds)
def test_projected_ideal_embeds(seed):
    rng = np.random.default_rng(seed)
    V = make_scroll(5)
    pr = inner_projection(V, sample_point(V, rng))
    R = V.ring
    images = [R.linear_form(row) for row in pr.P]
    IX = implicitize(V, 2)
    for g in forms_vanishing(pr.target, 2):
        assert IX.contains(g.pullback(images, R))


# ---------------------------------------------------------------------------
# spec files

def test_variety_text_roundtrip():
    for V in (make_scroll(3, 4), make_veronese(2, 3), make_segre(1, 2), make_p1p1_22(),
              make_delpezzo_blowup([(0, 0, 1)])):
        W = load_variety(variety_to_text(V))
        assert W.sections == V.sections
    C = load_variety("family = custom\nvariables = s t\nsections = [s^2, s*t, t^2]\nfield = q\n")
    assert C.field == QQ and C.r == 2
    with pytest.raises(VarietyError):
        load_variety("family = nope\n")
    assert custom_variety(["s", "t"], ["s^2", "s*t", "t^2"]).r == 2
