import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from yangrep.exactlin import (
    InterpolationError,
    PolyU,
    RatFuncMat,
    RatFuncU,
    RatParseError,
    SparseMat,
    Subspace,
    intersect_kernels,
    interpolate_ratfunc,
    kernel,
    rank,
    rat,
    rat_str,
    subspace_closure,
    unit,
)

rats = st.builds(lambda p, q: rat(p, q), st.integers(-20, 20), st.integers(1, 7))


def sym(m):
    return sympy.Matrix([[sympy.Rational(int(v.numerator), int(v.denominator)) for v in row] for row in m.to_dense()])


def test_rat_parse_and_print():
    assert rat("-3/2") == rat(-3) / 2
    assert rat_str(rat("4/2")) == "2"
    assert rat_str(rat("-6/4")) == "-3/2"
    for bad in ["1/0", "a", "1/2/3", ""]:
        with pytest.raises(RatParseError):
            rat(bad)


def test_kernel_examples():
    assert kernel(SparseMat.from_dense([[1, 1], [1, 1]])) == [(rat(-1), rat(1))]
    assert kernel(SparseMat.identity(3)) == []
    assert kernel(SparseMat.from_dense([[0]])) == [(rat(1),)]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 6), st.data())
def test_kernel_against_sympy(nr, nc, data):
    m = SparseMat.from_dense([[data.draw(st.sampled_from([0, 0, 1, -1, 2, rat(1, 2)])) for _ in range(nc)] for _ in range(nr)])
    ker = kernel(m)
    assert len(ker) + rank(m) == nc
    assert rank(m) == sym(m).rank()
    for v in ker:
        assert not any(m.apply(v))
    assert Subspace(nc, ker).dim == len(ker)


def test_intersect_kernels_examples():
    assert intersect_kernels([SparseMat.identity(3)]).dim == 0
    assert intersect_kernels([SparseMat.zero(3), SparseMat.zero(3)]).dim == 3


def test_closure_examples():
    shift = SparseMat.from_entries(3, 3, {(1, 0): 1, (2, 1): 1})
    assert subspace_closure([unit(3, 0)], [shift]).dim == 3
    assert subspace_closure([unit(3, 0)], []).basis == (unit(3, 0),)
    with pytest.raises(ValueError):
        subspace_closure([unit(3, 0)], [SparseMat.identity(2)])


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_closure_idempotent_and_monotone(data):
    n = 4
    ops = [SparseMat.from_dense([[data.draw(st.sampled_from([0, 0, 0, 1, -1])) for _ in range(n)] for _ in range(n)]) for _ in range(2)]
    seeds = [tuple(rat(data.draw(st.integers(-2, 2))) for _ in range(n)) for _ in range(2)]
    a = subspace_closure(seeds[:1], ops, n)
    b = subspace_closure(seeds, ops, n)
    assert subspace_closure(list(a.basis), ops, n) == a
    assert all(b.contains(v) for v in a.basis)
    assert all(a.is_invariant(op) for op in ops)


def test_interpolation_examples():
    f = RatFuncU(PolyU((1, 1)), PolyU((0, 1)))
    g = interpolate_ratfunc([(x, f(x)) for x in (1, 2, 3, 4)], 1, 1)
    assert g.num == PolyU((1, 1)) and g.den == PolyU((0, 1))
    assert interpolate_ratfunc([(x, 1) for x in (1, 2, 3)], 0, 0) == RatFuncU(1)
    with pytest.raises(InterpolationError):
        interpolate_ratfunc([(1, 1), (2, 5), (3, 2)], 0, 0)
    with pytest.raises(InterpolationError):
        interpolate_ratfunc([(1, 1)], 1, 1)


def test_interpolation_round_trip():
    rng = random.Random(7)
    for _ in range(100):
        nd, dd = rng.randint(0, 4), rng.randint(0, 4)
        num = PolyU([rat(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(nd)] + [rat(rng.choice([1, 2, -3]))])
        den = PolyU([rat(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(dd)] + [rat(1)])
        f = RatFuncU(num, den)
        pts = [x for x in range(1, 200) if den(x) != 0][: nd + dd + 3]
        g = interpolate_ratfunc([(x, f(x)) for x in pts], nd, dd)
        assert g == f


@settings(max_examples=60, deadline=None)
@given(rats, rats, rats, rats)
def test_exact_arithmetic(a, b, c, d):
    assert (a + b) - b == a
    p, q = PolyU((a, b, 1)), PolyU((c, d))
    assert (p + q) - q == p
    f, g = RatFuncU(p, PolyU((c, 1))), RatFuncU(q, PolyU((d, 1)))
    assert (f + g) - g == f
    if not q.is_zero():
        assert (f * g) / g == f
    qq, rr = p.divmod(PolyU((c, 1)))
    assert qq * PolyU((c, 1)) + rr == p


def test_poly_shift_and_neg():
    p = PolyU((1, 2, 3))
    assert p.shift(2)(5) == p(7)
    assert p.neg_var()(3) == p(-3)
    assert p.shift(rat(-1, 2)).shift(rat(1, 2)) == p


def random_ratmat(rng, n=3):
    num = [SparseMat.from_dense([[rng.choice([0, 0, 1, -2, rat(1, 3)]) for _ in range(n)] for _ in range(n)]) for _ in range(3)]
    den = {rat(rng.randint(-2, 2)): 1, rat(1, 2): rng.randint(0, 1)}
    return RatFuncMat(n, n, num, den)


def test_ratmat_ops_match_pointwise():
    rng = random.Random(3)
    for _ in range(20):
        a, b = random_ratmat(rng), random_ratmat(rng)
        for x in (rat(7), rat(-13, 3)):
            assert (a + b)(x) == a(x) + b(x)
            assert (a @ b)(x) == a(x) @ b(x)
            assert a.kron(b)(x) == a(x).kron(b(x))
            assert a.shift(rat(5, 2))(x) == a(x + rat(5, 2))
            assert a.neg_var()(x) == a(-x)
        assert (a - a).is_zero()
        assert a.shift(1).shift(-1) == a
        assert a.neg_var().neg_var() == a


def test_ratmat_cancellation_is_canonical():
    e = SparseMat.identity(2)
    # (u - 1) I / (u - 1) == I
    m = RatFuncMat(2, 2, [e.scale(-1), e], {rat(1): 1})
    assert m == RatFuncMat.identity(2)
    assert m.entry(0, 0) == RatFuncU(1)


def test_series_coeffs():
    e = SparseMat.from_entries(2, 2, {(1, 0): 1})
    # delta + E/u : t_21 has c_1 = E, c_2 = 0
    t = RatFuncMat(2, 2, [e, SparseMat.zero(2)], {rat(0): 1})
    c = t.series_coeffs(3)
    assert c[1] == e and c[2].is_zero() and c[0].is_zero()
    # 1/(u - 2) = u^-1 + 2 u^-2 + 4 u^-3
    f = RatFuncMat(1, 1, [SparseMat.identity(1)], {rat(2): 1})
    assert [m.get(0, 0) for m in f.series_coeffs(3)] == [0, 1, 2, 4]
