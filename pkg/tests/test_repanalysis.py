import random

import pytest
import sympy as sp
from conftest import hw_of, series, unit

from yangrep.exactlin import HALF, rat, subspace_closure
from yangrep.liealg import build_gl2, build_glN, build_spin
from yangrep.repanalysis import (
    all_operators,
    analyze,
    cyclic_span,
    extract_hw,
    hw_vector,
    irreducible_quotient,
    is_irreducible,
    singular_space,
    singular_vectors,
    weight_spaces,
)
from yangrep.twistact import PLUS, restrict_S, twisted_eval
from yangrep.yangact import eval_module, tensor_action, trivial


def L(a, b, symmetric=False):
    return eval_module(build_gl2(a, b), symmetric=symmetric)


def _sympy_singular_dim(pairs):
    """Independent oracle for two evaluation factors: kernel of the u^-1 and u^-2 coefficients of t_12."""

    def gl2(a, b):
        m = a - b
        d = m + 1
        E12 = sp.zeros(d)
        for r in range(1, d):
            E12[r - 1, r] = r * (m - r + 1)
        return sp.diag(*[a - r for r in range(d)]), sp.diag(*[b + r for r in range(d)]), E12

    (A11, A22, A12), (B11, B22, B12) = (gl2(*p) for p in pairs)
    I1, I2 = sp.eye(A11.rows), sp.eye(B11.rows)
    c1 = sp.kronecker_product(A12, I2) + sp.kronecker_product(I1, B12)
    c2 = sp.kronecker_product(A11, B12) + sp.kronecker_product(A12, B22)
    return len(sp.Matrix.vstack(c1, c2).nullspace())


@pytest.mark.parametrize("pairs", [((1, 0), (1, 0)), ((2, 0), (1, -1)), ((1, -1), (2, 0)), ((2, 1), (1, 0)), ((3, 0), (1, 0))])
def test_singular_space_matches_oracle(pairs):
    x = tensor_action([L(*p) for p in pairs])
    assert singular_space(x).dim == _sympy_singular_dim(pairs)


def test_singular_dims():
    assert singular_space(tensor_action([L(1, 0), L(1, 0)])).dim == 1
    # first factor on the left of the coproduct; the reversed order has two singular lines
    assert singular_space(tensor_action([L(2, 0), L(1, -1)])).dim == 1
    assert singular_space(tensor_action([L(1, -1), L(2, 0)])).dim == 2
    assert singular_space(trivial(2)).dim == 1


def test_extract_hw():
    x = restrict_S(L(rat(3, 2), rat(-1, 2), True), "minus")
    assert hw_of(x) == [series((rat(-3, 2), 1), (rat(-1, 2), 1))]
    assert hw_of(trivial(3)) == [series()] * 3
    a = rat(3, 2)
    y = restrict_S(eval_module(build_glN((a, a, -HALF)), True), PLUS)
    assert hw_of(y) == [series((-a, 1), (a, 1)), series((-a, 1), (-HALF, 1))]


def test_extract_hw_rejects_bad_vectors():
    x = tensor_action([L(1, 0), L(1, 0)])
    with pytest.raises(ValueError):
        extract_hw(x, tuple(rat(0) for _ in range(x.dim)))
    with pytest.raises(ValueError):
        extract_hw(x, unit(x, 3))


def test_singular_vectors_mixture_resolved():
    x = tensor_action([L(1, -1), L(2, 0)])
    sv = singular_vectors(x)
    assert len(sv) == 2
    hws = [extract_hw(x, v) for _, v in sv]
    assert hws[0] != hws[1]


def test_cyclic_spans():
    x = tensor_action([L(1, 0), L(1, 0)])
    assert cyclic_span(x, unit(x)).dim == x.dim
    y = tensor_action([L(2, 0), L(1, -1)])
    assert cyclic_span(y, unit(y)).dim == 8 < y.dim


def test_is_irreducible_examples():
    assert is_irreducible(tensor_action([L(1, 0), L(1, 0)]))
    assert not is_irreducible(tensor_action([L(2, 0), L(1, -1)]))
    assert not is_irreducible(restrict_S(L(rat(3, 2), rat(-1, 2), True), PLUS))


def test_irreducible_implies_every_vector_generates():
    x = tensor_action([L(2, 1), L(rat(1, 2), rat(-1, 2))])
    assert is_irreducible(x)
    rng = random.Random(3)
    ops = all_operators(x)
    for _ in range(10):
        v = tuple(rat(rng.randint(-3, 3)) for _ in range(x.dim))
        if any(v):
            assert subspace_closure([v], ops, x.dim).dim == x.dim


def test_irreducible_quotients():
    y = tensor_action([L(2, 0), L(1, -1)])
    q, d = irreducible_quotient(y, unit(y))
    assert d == 8 and is_irreducible(q)
    assert hw_of(q) == hw_of(tensor_action([L(1, 0), L(2, -1)]))
    x = tensor_action([L(1, 0), L(1, 0)])
    assert irreducible_quotient(x, unit(x))[1] == x.dim
    z = restrict_S(L(rat(3, 2), rat(-1, 2), True), PLUS)
    q, d = irreducible_quotient(z, hw_vector(z))
    assert d == 1 and is_irreducible(q)


def test_irreducible_quotient_rejects_non_singular():
    x = tensor_action([L(1, 0), L(1, 0)])
    with pytest.raises(ValueError):
        irreducible_quotient(x, unit(x, 3))


def test_weight_spaces():
    ws = weight_spaces(L(1, 0))
    assert ws == {(1, 0): 1, (0, 1): 1}
    assert weight_spaces(tensor_action([L(1, 0), L(1, 0)]))[(1, 1)] == 2
    spin = twisted_eval(build_spin(3), PLUS)
    assert sorted(weight_spaces(spin)) == [(-HALF,), (HALF,)]


def test_analysis_report():
    rep = analyze(tensor_action([L(1, 0), L(1, 0)]))
    d = rep.to_json()
    assert d["irreducible"] and d["singular_dim"] == 1 and d["quotient_dim"] == d["dim"] == 4
    rep = analyze(tensor_action([L(2, 0), L(1, -1)]))
    assert not rep.irreducible and rep.quotient_dim == 8
    t = analyze(trivial(2)).to_json()
    assert [c["ratfunc"] for c in t["hw"]["components"]] == [{"num": ["1"], "den": ["1"]}] * 2
