from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from innerideals.exact import Subspace
from innerideals.liealg import eigenspace_grading, is_abelian, is_extremal, is_inner_ideal
from innerideals.structurable import (
    CD_PARAMS,
    CompositionAlgebra,
    albert_form,
    composition_algebra,
    cs_idempotents,
    h3_element,
    h3_six_dim_inner_ideal,
    half_plus_skew_inner_ideal,
    identify_signature,
    instr,
    is_jordan_inner_ideal,
    isotropic_inner_ideal,
    jordan_U,
    jordan_h3,
    jordan_u_int,
    maximal_isotropic,
    tensor_structurable,
    witt_index,
)

from _shared import kantor_h3, kantor_tensor


def unit(n, i):
    return [Fraction(int(i == k)) for k in range(n)]


@pytest.mark.parametrize("name, dim", [("R", 1), ("C", 2), ("Cs", 2), ("H", 4), ("Hs", 4), ("O", 8), ("Os", 8)])
def test_composition_algebras(name, dim):
    c = composition_algebra(name)
    assert c.dim == dim
    assert c.product(unit(dim, 0), unit(dim, dim - 1)) == unit(dim, dim - 1)


def test_norm_signatures():
    assert set(composition_algebra("O").norm_diag) == {1}
    assert sorted(composition_algebra("Os").norm_diag).count(-1) == 4
    assert sorted(composition_algebra("Hs").norm_diag).count(-1) == 2


def test_broken_table_fails_multiplicativity():
    o = composition_algebra("O")
    mul = o.mul.copy()
    mul[1, 2] = -mul[1, 2]
    with pytest.raises(AssertionError):
        CompositionAlgebra("bad", o.cd_params, mul, o.conj).check()


def test_cs_idempotents():
    cs = composition_algebra("Cs")
    e1, e2 = cs_idempotents()
    assert cs.product(e1, e1) == e1 and cs.product(e2, e2) == e2
    assert cs.product(e1, e2) == [0, 0]
    assert cs.bar(e1) == e2


def test_unknown_composition_algebra():
    with pytest.raises(ValueError):
        composition_algebra("P")


@settings(max_examples=30)
@given(st.sampled_from(sorted(CD_PARAMS)), st.data())
def test_norm_is_multiplicative(name, data):
    c = composition_algebra(name)
    vec = st.lists(st.integers(-3, 3), min_size=c.dim, max_size=c.dim)
    x, y = data.draw(vec), data.draw(vec)
    assert c.norm(c.product(x, y)) == c.norm(x) * c.norm(y)
    assert c.product(x, c.bar(x)) == [c.norm(x)] + [0] * (c.dim - 1)


@pytest.mark.parametrize(
    "c1, c2, dim, skew", [("R", "O", 8, 7), ("O", "O", 64, 14), ("H", "Os", 32, 10), ("C", "Cs", 4, 2), ("R", "R", 1, 0)]
)
def test_tensor_dims(c1, c2, dim, skew):
    a = tensor_structurable(c1, c2)
    assert a.dim == dim and a.skew.dim == skew
    assert a.skew.dim + a.herm.dim == a.dim


def test_structurable_identity_exhaustive_small():
    tensor_structurable("C", "H").check_structurable()
    tensor_structurable("O", "Cs").check_structurable()
    tensor_structurable("O", "O").check_structurable(samples=200, seed=3)


@pytest.mark.parametrize("c, dim", [("R", 6), ("C", 9), ("O", 27), ("Os", 27)])
def test_h3(c, dim):
    j = jordan_h3(c)
    assert j.dim == dim and j.skew.dim == 0 and j.is_jordan


def test_v11_is_identity():
    for a in (jordan_h3("O"), tensor_structurable("H", "Cs")):
        v = a.v_operator(a.one, a.one)
        assert v == [unit(a.dim, i) for i in range(a.dim)]


@settings(max_examples=25)
@given(st.integers(0, 26), st.integers(0, 26), st.integers(0, 26))
def test_v_equals_linearized_u_on_albert_algebra(a, b, c):
    j = jordan_h3("O")
    n = j.dim
    v = j.v_operator(unit(n, b), unit(n, c))
    u, den = jordan_u_int(j, unit(n, b), unit(n, a))
    assert [row[a] for row in v] == [Fraction(int(x), den) for x in u[:, c]]


@pytest.mark.parametrize("name, dim", [(("O", "O"), 92), (("R", "O"), 22), (("R", "R"), 1)])
def test_instr_dims(name, dim):
    assert instr(tensor_structurable(*name)).dim == dim


def test_instr_albert():
    assert instr(jordan_h3("O")).dim == 79


@pytest.mark.parametrize("c1, c2", [("R", "O"), ("C", "Os"), ("H", "O"), ("Cs", "Cs"), ("R", "C")])
def test_kantor_dimension_identity(c1, c2):
    k = kantor_tensor(c1, c2)
    a = k.algebra
    assert k.lie.dim == 2 * a.dim + 2 * a.skew.dim + k.instr.dim


def test_kantor_grading_element():
    k = kantor_tensor("R", "O")
    spaces = eigenspace_grading(k.lie, k.grading_element)
    assert {d: s.dim for d, s in spaces.items()} == {d: n for d, n in k.sizes.items() if n}
    for d, s in spaces.items():
        assert all(k.lie.grading[i] == d for i in s.pivots)


def test_kantor_small_jacobi():
    for c1, c2 in [("R", "C"), ("C", "Cs"), ("Cs", "H")]:
        assert kantor_tensor(c1, c2).lie.verify_jacobi() is None


def test_albert_form_requires_tensor():
    with pytest.raises(ValueError):
        albert_form(jordan_h3("R"))


@pytest.mark.parametrize(
    "c1, c2, sig", [("O", "Hs", (9, 1, 0)), ("Os", "H", (3, 7, 0)), ("O", "H", (7, 3, 0)), ("O", "Cs", (8, 0, 0))]
)
def test_albert_signatures(c1, c2, sig):
    assert albert_form(tensor_structurable(c1, c2)).signature() == sig


@pytest.mark.parametrize("c1, c2, w", [("Os", "Os", 7), ("O", "O", 7), ("Os", "Cs", 4), ("O", "Cs", 0), ("O", "Os", 3)])
def test_witt_indices(c1, c2, w):
    assert witt_index(albert_form(tensor_structurable(c1, c2))) == w


def test_witt_index_degenerate():
    from innerideals.liealg import QuadraticForm

    with pytest.raises(ValueError):
        witt_index(QuadraticForm.diagonal([1, 0]))


def test_isotropic_inner_ideal_errors():
    k = kantor_tensor("O", "C")
    q = albert_form(k.algebra)
    with pytest.raises(ValueError):
        isotropic_inner_ideal(k, Subspace.zero(q.dim))
    v = [1] + [0] * (q.dim - 1)
    assert q(v) != 0
    with pytest.raises(ValueError):
        isotropic_inner_ideal(k, Subspace.span([v], q.dim))


def test_isotropic_lines_are_extremal():
    k = kantor_tensor("Os", "C")
    q = albert_form(k.algebra)
    m = maximal_isotropic(q)
    for row in m.basis:
        B = isotropic_inner_ideal(k, Subspace.span([row], q.dim))
        assert is_abelian(k.lie, B) and is_extremal(k.lie, list(B.basis[0]))


def test_k2_inner_ideals_iff_isotropic_or_everything():
    """Coordinate subspaces of a hyperbolic basis, plus random lines."""
    k = kantor_tensor("Os", "Cs")
    q = albert_form(k.algebra)
    n = q.dim
    d = [q.gram[i][i] for i in range(n)]
    pos = [i for i in range(n) if d[i] > 0]
    neg = [i for i in range(n) if d[i] < 0]
    hyper = []
    for i, j in zip(pos, neg):
        u = [0] * n
        w = [0] * n
        u[i], u[j] = 1, 1
        w[i], w[j] = 1, -1
        hyper += [u, w]
    full = Subspace.span([unit(n, i) for i in range(n)], n)
    for r in range(1, n + 1):
        for sub in combinations(range(n), r):
            if r not in (1, 2, n - 1, n) and len(sub) % 3:
                continue
            I = Subspace.span([hyper[t] for t in sub], n)
            B = k.embed_subspace(2, I)
            assert is_inner_ideal(k.lie, B) == (q.is_isotropic(I) or I == full)
    rng = np.random.default_rng(7)
    for _ in range(10):
        v = [int(x) for x in rng.integers(-2, 3, n)]
        if any(v):
            I = Subspace.span([v], n)
            assert is_inner_ideal(k.lie, k.embed_subspace(2, I)) == (q(v) == 0)


@pytest.mark.parametrize("c1, dim", [("O", 16), ("Os", 16), ("R", 2), ("H", 8)])
def test_half_plus_skew(c1, dim):
    k, B = half_plus_skew_inner_ideal(c1, kantor_tensor(c1, "Cs"))
    assert B.dim == dim
    assert is_inner_ideal(k.lie, B) and is_abelian(k.lie, B)


def test_half_plus_skew_wrong_factor():
    with pytest.raises(ValueError):
        half_plus_skew_inner_ideal("O", kantor_tensor("O", "C"))


def test_jordan_inner_ideals_basic():
    j = jordan_h3("O")
    e11 = Subspace.span([h3_element(j, {(0, 0): 1})], j.dim)
    assert is_jordan_inner_ideal(j, e11)
    everything = Subspace.span([unit(j.dim, i) for i in range(j.dim)], j.dim)
    assert is_jordan_inner_ideal(j, everything)
    diag = Subspace.span([h3_element(j, {(0, 0): 1}), h3_element(j, {(1, 1): 1})], j.dim)
    assert not is_jordan_inner_ideal(j, diag)


def test_jordan_u_formula():
    j = jordan_h3("R")
    x = h3_element(j, {(0, 0): 2, (0, 1): [1]})
    u = jordan_U(j, x)
    # U_x y = 2 x(xy) - x^2 y
    y = h3_element(j, {(1, 2): [1]})
    xy = j.product(x, y)
    expect = [2 * a - b for a, b in zip(j.product(x, xy), j.product(j.product(x, x), y))]
    assert [sum(r[c] * y[c] for c in range(j.dim)) for r in u] == expect


def test_non_jordan_rejected():
    with pytest.raises(ValueError):
        is_jordan_inner_ideal(tensor_structurable("C", "C"), Subspace.zero(4))


def test_jordan_and_kantor_inner_ideals_agree_on_panel():
    j = jordan_h3("Os")
    k = kantor_h3("Os")
    n = j.dim
    e = h3_element
    panel = [
        Subspace.span([e(j, {(0, 0): 1})], n),
        h3_six_dim_inner_ideal(j),
        Subspace.span([unit(n, i) for i in range(n)], n),
        Subspace.span([e(j, {(0, 0): 1}), e(j, {(1, 1): 1})], n),
        Subspace.span([e(j, {(0, 1): unit(8, 0)})], n),
        Subspace.span([e(j, {(0, 0): 1, (1, 1): 1})], n),
        Subspace.span([e(j, {(0, 0): 1}), e(j, {(0, 1): unit(8, 3)})], n),
    ]
    rng = np.random.default_rng(11)
    for _ in range(3):
        panel.append(Subspace.span([[int(x) for x in rng.integers(-1, 2, n)] for _ in range(2)], n))
    verdicts = []
    for B in panel:
        jb = is_jordan_inner_ideal(j, B)
        kb = is_inner_ideal(k.lie, k.embed_subspace(1, B))
        assert jb == kb
        verdicts.append(jb)
    assert True in verdicts and False in verdicts


def test_six_dim_inner_ideal():
    j = jordan_h3("Os")
    B = h3_six_dim_inner_ideal(j)
    assert B.dim == 6 and is_jordan_inner_ideal(j, B)
    with pytest.raises(ValueError):
        h3_six_dim_inner_ideal(jordan_h3("O"))


@pytest.mark.parametrize("dim, sig, name", [(78, -14, "e6,-14"), (248, 8, "e8,8"), (52, -52, "F4,compact"), (133, -5, "e7,5"), (14, 2, "g2,2")])
def test_identify_signature(dim, sig, name):
    assert identify_signature(dim, sig).name == name


def test_identify_unknown():
    with pytest.raises(ValueError, match="78, 3"):
        identify_signature(78, 3)
