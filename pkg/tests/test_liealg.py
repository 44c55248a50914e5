import pytest

from yangrep.exactlin import rat
from yangrep.liealg import (
    GL,
    O,
    IndexScheme,
    build_g_rank1,
    build_gl2,
    build_glN,
    build_spin,
    g_antisymmetry_defects,
    g_commutator_defects,
    gl_commutator_defects,
    tensor_power,
    vector_rep,
    weyl_dim,
)


def test_gl2_vector_module():
    m = build_gl2(1, 0)
    assert m.dim == 2
    # E_12 xi_1 = xi_0
    assert m.gen(0, 1).to_dense()[0][1] == 1


def test_gl2_trivial_weight():
    m = build_gl2(0, 0)
    assert m.dim == 1
    assert m.gen(0, 1).is_zero() and m.gen(1, 0).is_zero()


def test_gl2_half_integral():
    m = build_gl2(rat(3, 2), rat(-1, 2))
    assert m.dim == 3
    assert m.gen(0, 1).to_dense()[1][2] == 2
    assert gl_commutator_defects(m) == []


def test_gl2_rejects_non_dominant():
    with pytest.raises(ValueError):
        build_gl2(rat(1, 2), 0)


@pytest.mark.parametrize("lam", [(1, 1, 0), (2, 1, 0), (2, 2, 0), (3, 3, 1), ("5/2", "5/2", "1/2"), (1, 0, 0, -1)])
def test_glN_weyl_dimension_and_commutators(lam):
    m = build_glN(lam)
    assert m.dim == weyl_dim(lam)
    assert gl_commutator_defects(m) == []
    for p in range(m.N):
        d = m.gen(p, p).to_dense()
        assert all(d[i][j] == 0 for i in range(m.dim) for j in range(m.dim) if i != j)
        assert [d[i][i] for i in range(m.dim)] == [w[p] for w in m.weights]


@pytest.mark.parametrize("m_", [0, 1, 2, 3])
def test_glN_aab_dimension(m_):
    assert build_glN((m_, m_, 0)).dim == (m_ + 1) * (m_ + 2) // 2


def _trace(m):
    d = m.to_dense()
    return sum(d[i][i] for i in range(len(d)))


def test_glN_matches_gl2():
    a, b = build_glN((1, 0)), build_gl2(1, 0)
    assert sorted(a.weights) == sorted(b.weights)
    for k in a.gens:
        for l in a.gens:
            assert _trace(a.gens[k] @ a.gens[l]) == _trace(b.gens[k] @ b.gens[l])


@pytest.mark.parametrize("N,dim", [(3, 2), (4, 2), (5, 4)])
def test_spin_dimensions(N, dim):
    m = build_spin(N)
    assert m.dim == dim
    assert g_antisymmetry_defects(m) == []
    assert g_commutator_defects(m) == []


def test_spin3_weights():
    m = build_spin(3)
    p = IndexScheme(3).pos(1)
    assert sorted(w[p] for w in m.weights) == [rat(-1, 2), rat(1, 2)]
    assert m.hw[p] == rat(-1, 2)


def test_rank1_modules():
    sp = build_g_rank1("sp2", -1)
    assert sp.dim == 2 and g_commutator_defects(sp) == [] and g_antisymmetry_defects(sp) == []
    o2 = build_g_rank1("o2", rat(5, 2))
    assert o2.dim == 1
    assert o2.gen(1, 1).to_dense() == [[rat(5, 2)]]
    o3 = build_g_rank1("o3", rat(-1, 2))
    assert sorted(o3.weights) == sorted(build_spin(3).weights)


def test_tensor_power_of_vector_rep():
    m = tensor_power(vector_rep(3), 2)
    assert m.algebra == GL and m.dim == 9
    assert gl_commutator_defects(m) == []


def test_index_scheme():
    s = IndexScheme(3)
    assert s.labels() == [-1, 0, 1]
    assert [s.neg(p) for p in range(3)] == [2, 1, 0]
    assert IndexScheme(4).labels() == [-2, -1, 1, 2]
    assert IndexScheme(2, symmetric=False).labels() == [1, 2]
    assert O == "o"
