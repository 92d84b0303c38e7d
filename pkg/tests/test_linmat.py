import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from secdet.linmat import (
    GLWitness,
    LinearMatrix,
    MatrixError,
    column_dependence,
    gamma_regular,
    gl_equivalent,
    is_normalized_at,
    is_one_generic,
    minors,
    minors_ideal,
    normalize_at_point,
    parse_linmat,
    project_partial,
    project_pi,
    project_pi_T,
    random_gl_action,
)
from secdet.symkernel import GF32003, QQ, PolyRing, ambient_ring, ideal_equal, linalg as la, poly_parse
from secdet.varieties import make_veronese, tangent_space

F = GF32003
R4 = ambient_ring(4, F)
H23 = LinearMatrix.hankel(R4, 2, 3)


def generic_symmetric(n, field=F):
    """The generic symmetric n x n matrix in the C(n+1, 2) coordinates of nu_2(P^{n-1})."""
    V = make_veronese(n - 1, 2, field=field)
    from secdet.gluing import direct_presentation

    return V, direct_presentation(V, 2)


def unit(k, n=4):
    return tuple(1 if i == k else 0 for i in range(n))


seeds = st.integers(0, 2**32 - 1)


# ---------------------------------------------------------------------------
# construction and text format

def test_hankel_and_text_roundtrip():
    assert H23.shape == (2, 3)
    assert str(H23.entry(1, 2)) == "x3"
    text = H23.to_text()
    assert text.splitlines()[0] == "linmat 2 3"
    assert parse_linmat(text, R4) == H23
    S = LinearMatrix.hankel(R4, 2, 2)
    assert S.symmetric and parse_linmat(S.to_text(), R4).symmetric


def test_nonlinear_entry_rejected():
    with pytest.raises(Exception):
        LinearMatrix.from_entries(R4, [["x0^2", "x1"]])


# ---------------------------------------------------------------------------
# minors

def test_minors_examples():
    m = minors(H23, 2)
    want = {poly_parse(t, R4).monic() for t in ("x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2")}
    assert {p.monic() for p in m} == want
    assert minors(H23, 1) == [H23.entry(i, j) for i in range(2) for j in range(3)]
    R9 = ambient_ring(9, F)
    M35 = LinearMatrix.from_entries(R9, [[f"x{i + j}" for j in range(5)] for i in range(3)])
    assert len(minors(M35, 3)) == 10


@given(seeds)
def test_minor_ideal_gl_invariant(seed):
    rng = np.random.default_rng(seed)
    _, M2 = random_gl_action(H23, rng)
    assert ideal_equal(minors_ideal(H23, 2), minors_ideal(M2, 2))


# ---------------------------------------------------------------------------
# 1-genericity

def _bilinear_zero(M, res):
    v, w = res.witness
    return any(v) and any(w) and not any(M.bilinear(v, w))


def test_one_generic_examples():
    assert is_one_generic(H23).generic
    R = PolyRing(("x", "y"), F)
    X = LinearMatrix.from_entries(R, [["x", "y"], ["y", "x"]])
    res = is_one_generic(X)
    assert not res.generic and _bilinear_zero(X, res)
    # hand-checkable witness from the description: v = (1, -1), w = (1, 1)
    assert not any(X.bilinear((1, F.norm(-1)), (1, 1)))
    Z = LinearMatrix.from_entries(R4, [["x0", "0", "x2"], ["x1", "x2", "x3"]])
    res = is_one_generic(Z)
    assert not res.generic and res.witness == ((1, 0), (0, 1, 0))


def test_one_generic_over_q():
    R = PolyRing(("x", "y"), QQ)
    X = LinearMatrix.from_entries(R, [["x", "y"], ["y", "x"]])
    res = is_one_generic(X)
    assert not res.generic and _bilinear_zero(X, res)
    assert is_one_generic(LinearMatrix.hankel(ambient_ring(4, QQ), 2, 3)).generic


@given(seeds)
def test_one_generic_gl_invariant(seed):
    rng = np.random.default_rng(seed)
    _, M2 = random_gl_action(H23, rng)
    assert is_one_generic(M2).generic
    R = PolyRing(("x", "y"), F)
    X = LinearMatrix.from_entries(R, [["x", "y"], ["y", "x"]])
    _, X2 = random_gl_action(X, rng)
    res = is_one_generic(X2)
    assert not res.generic and _bilinear_zero(X2, res)


# ---------------------------------------------------------------------------
# Gamma-regularity

def test_gamma_regular_examples():
    assert gamma_regular(H23, [unit(0), unit(3)])
    assert gamma_regular(H23, [])
    assert not gamma_regular(H23, [unit(0), unit(0)])
    with pytest.raises(MatrixError):
        gamma_regular(H23, [(1, 1, 1, 0)])  # rank 2 there


@given(seeds, st.permutations(range(2)))
def test_gamma_regular_invariances(seed, perm):
    rng = np.random.default_rng(seed)
    pts = [(1, 1, 1, 1), (1, 2, 4, 8)]
    base = gamma_regular(H23, pts)
    assert base
    _, M2 = random_gl_action(H23, rng)
    assert gamma_regular(M2, [pts[i] for i in perm]) == base
    assert gamma_regular(M2, pts, transpose=True) == gamma_regular(H23, pts, transpose=True)


# ---------------------------------------------------------------------------
# normalization and projections

def test_normalize_examples():
    W, M = normalize_at_point(H23, unit(0))
    assert W == GLWitness.identity(2, 3, F)
    assert M == H23
    W, M = normalize_at_point(H23, unit(3))
    assert M.evaluate(unit(3)) == [[1, 0, 0], [0, 0, 0]]
    V, S = generic_symmetric(3)
    z = unit(0, 6)
    W, M = normalize_at_point(S, z)
    assert M.symmetric and W.A == W.B
    assert M.evaluate(z)[0][0] == 1 and is_normalized_at(M, z)


def _twisted_points(k, rng):
    out = []
    for _ in range(k):
        s, t = (int(x) for x in rng.integers(1, 1000, size=2))
        out.append(tuple(F.norm(s ** (3 - i) * t**i) for i in range(4)))
    return out


@given(seeds)
def test_normalize_postconditions(seed):
    rng = np.random.default_rng(seed)
    _, M = random_gl_action(H23, rng)
    (z,) = _twisted_points(1, rng)
    W, Mp = normalize_at_point(M, z, rng)
    assert Mp.evaluate(z) == [[1, 0, 0], [0, 0, 0]]
    assert W.inverse(F).apply(Mp) == M
    for P in (project_pi(Mp, z), project_partial(Mp, z)):
        assert all(x == 0 for row in P.evaluate(z) for x in row)


@given(seeds)
def test_normalize_symmetric_postconditions(seed):
    rng = np.random.default_rng(seed)
    V, S = generic_symmetric(4)
    _, M = random_gl_action(S, rng)
    from secdet.varieties import sample_point

    z = sample_point(V, rng).coords
    W, Mp = normalize_at_point(M, z, rng)
    assert is_normalized_at(Mp, z) and Mp.symmetric
    assert W.inverse(F).apply(Mp) == M
    P = project_partial(Mp, z)
    assert P.symmetric and P == P.transpose()
    assert all(x == 0 for row in P.evaluate(z) for x in row)


def test_project_pi_rnc():
    d = 5
    R = ambient_ring(d + 1, F)
    H = LinearMatrix.hankel(R, 2, d)
    P = project_pi(H, unit(0, d + 1))
    assert P.shape == (2, d - 1)
    assert P == LinearMatrix.hankel(R, 2, d - 1, offset=1)
    assert project_pi_T(H, unit(0, d + 1)).shape == (d - 1, 2)


def test_projection_sizes():
    R9 = ambient_ring(9, F)
    M = LinearMatrix.from_entries(R9, [["x0", "x1", "x2", "x4", "x5"], ["x1", "x2", "x3", "x5", "x6"],
                                       ["x2", "x3", "x4", "x6", "x7"]])
    z = unit(0, 9)
    assert project_pi(M, z).shape == (3, 4)
    assert project_partial(M, z).shape == (2, 4)
    with pytest.raises(MatrixError):
        project_pi(M, unit(2, 9))


def test_partial_of_generic_symmetric():
    V, S = generic_symmetric(4)
    z = V.evaluate((1, 0, 0, 0))
    _, M = normalize_at_point(S, z)
    P = project_partial(M, z)
    assert P.shape == (3, 3) and P.symmetric
    T = tangent_space(V, (1, 0, 0, 0))
    # every surviving entry vanishes on the tangent space
    for i in range(3):
        for j in range(3):
            for row in T.rows:
                assert F.norm(sum(c * x for c, x in zip(P.coeffs[i][j], row))) == 0
    # and the 6 entries are independent forms (generic symmetric 3x3)
    forms = {P.coeffs[i][j] for i in range(3) for j in range(i, 3)}
    assert la.rank([list(f) for f in forms], F) == 6


# ---------------------------------------------------------------------------
# column dependence and GL-equivalence

def test_column_dependence_examples():
    col = lambda j: [H23.coeffs[i][j] for i in range(2)]
    assert column_dependence(col(0), H23) == [1, 0, 0]
    combo = [tuple(F.norm(2 * a - b) for a, b in zip(x, y)) for x, y in zip(col(0), col(1))]
    assert column_dependence(combo, H23) == [2, F.norm(-1), 0]
    R5 = ambient_ring(5, F)
    H = LinearMatrix.hankel(R5, 2, 3)
    assert column_dependence([unit(4, 5), unit(4, 5)], H) is None


def test_gl_equivalent_examples(rng):
    W = gl_equivalent(H23, H23)
    assert W is not None and W.apply(H23) == H23
    swapped = LinearMatrix(R4, [H23.coeffs[1], H23.coeffs[0]])
    W = gl_equivalent(H23, swapped)
    assert W is not None and W.apply(H23) == swapped
    # 2x3 matrices of random linear forms in 4 variables are not in the orbit of the Hankel matrix:
    # the orbit has dimension 4 + 9 - 1 = 12 inside a 24-dimensional space.
    G = LinearMatrix(R4, [[tuple(F.random(rng) for _ in range(4)) for _ in range(3)] for _ in range(2)])
    assert gl_equivalent(H23, G) is None
    assert gl_equivalent(H23, H23.transpose()) is None


@given(seeds)
def test_gl_equivalence_relation(seed):
    rng = np.random.default_rng(seed)
    _, M1 = random_gl_action(H23, rng)
    _, M2 = random_gl_action(H23, rng)
    W01 = gl_equivalent(H23, M1, rng)
    W12 = gl_equivalent(M1, M2, rng)
    assert W01.apply(H23) == M1
    assert W01.inverse(F).apply(M1) == H23              # symmetric via the inverse witness
    assert W01.compose(W12, F).apply(H23) == M2        # transitive via composition


@given(seeds)
def test_gl_equivalent_symmetric_congruence(seed):
    rng = np.random.default_rng(seed)
    _, S = generic_symmetric(3)
    _, S2 = random_gl_action(S, rng)
    W = gl_equivalent(S, S2, rng)
    assert W is not None
    mu = W.congruence_scale(F)
    assert mu is not None
    assert W.apply(S) == S2
