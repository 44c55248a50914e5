import random

import pytest

from yangrep.classify import (
    FactoredSeries,
    RootMultiset,
    StringAB,
    arrow,
    crit_strings,
    fd_Y,
    fd_Yminus,
    fd_Yplus3,
    fd_Yplus_even,
    fd_Yplus_odd,
    gamma_solver,
    gamma_solver_all,
    general_position,
    is_symmetric,
    reorder,
    sharp_weight,
    shift_ratio,
    similar,
    sym_arrow,
    plus3_weights,
)
from yangrep.exactlin import HALF, rat

F = FactoredSeries
R = RootMultiset


def fs(*pairs):
    return F([(rat(c), e) for c, e in pairs])


# ------------------------------------------------------------------ strings


def test_general_position_examples():
    assert general_position(StringAB(1, 0), StringAB(1, 0))
    assert not general_position(StringAB(2, 0), StringAB(0, -1))
    assert general_position(StringAB(3, 3), StringAB(2, 0))
    assert general_position(StringAB(5, 0), StringAB(3, 1))
    assert general_position(StringAB(1, 0), StringAB(4, 3))


def test_string_validation():
    with pytest.raises(ValueError):
        StringAB(HALF, 0)
    assert StringAB(2, 0).elements() == {0, 1}


def test_crit_strings_examples():
    assert crit_strings("2.11", [(1, 0), (1, 0)])
    assert not crit_strings("2.11", [(2, 0), (0, -1)])
    # L(3/2,-1/2) x V(1/2): gamma = -1/2 lies in the string
    assert not crit_strings("5.6", ([rat(3, 2), HALF], -HALF))


def test_trivial_onedim_criterion_reduces_to_minus_criterion():
    # V(1/2) is trivial: gamma = -1/2 must be outside every string for irreducibility
    for gs in ([1, 0, 2, -1], [rat(3, 2), rat(-1, 2), 1, 1]):
        gs = [rat(g) for g in gs]
        excluded = any(-HALF in StringAB(gs[i], -gs[i + 1]) or -HALF in StringAB(gs[i + 1], -gs[i]) for i in (0, 2))
        assert crit_strings("5.6", (gs, -HALF)) == (crit_strings("4.7", gs) and not excluded)


def test_reorder():
    assert reorder("2.19", [2, 1], [0, -1]) == ([1, 2], [0, -1])
    assert reorder("2.19", [3], [1]) == ([3], [1])
    out = reorder("4.14", [HALF, rat(3, 2), HALF, rat(5, 2)])
    assert out[:2] == [HALF, HALF]


# ------------------------------------------------------------------ solvers


def test_arrow_examples():
    assert arrow(fs((1, 1)), F()) == R({0: 1})
    assert arrow(fs((3, 1)), fs((3, 1))) == R()
    assert arrow(fs((HALF, 1)), F()) is None


def test_sym_arrow_examples():
    P = sym_arrow(fs((-1, 1)))
    assert P == R({0: 1, -1: 1})
    assert is_symmetric(P)
    assert sym_arrow(F()) == R()
    P = sym_arrow(fs((-HALF, 2)))
    assert P is not None and is_symmetric(P)
    assert shift_ratio(P) == fs((-HALF, 2)).neg_var().ratfunc() / fs((-HALF, 2)).ratfunc()


def test_gamma_solver_examples():
    assert gamma_solver(fs((1, 1), (HALF, -1))) == (R(), rat(-1))
    assert gamma_solver(F()) == (R(), -HALF)
    mu = fs((rat(-3, 2), 1), (-HALF, 1), (-1, 1), (HALF, -1))
    assert gamma_solver(mu) is not None


def test_sharp_weight_examples():
    assert sharp_weight([rat(-1)]) == fs((0, 1), (HALF, -1))
    assert sharp_weight([-HALF]) == fs((HALF, 1), (HALF, -1))
    assert sharp_weight([rat(3, 2), HALF, 1]) == fs((rat(-3, 2), 1), (-HALF, 1), (2, 1), (HALF, -1))


def test_similar():
    mu = fs((1, 1), (2, -1))
    assert similar(mu, mu * fs((3, 1), (-3, 1)))
    assert not similar(mu, mu * fs((3, 1)))


def _rand_rat(rng):
    return rat(rng.randint(-8, 8), rng.choice([1, 1, 2, 3]))


def _rand_series(rng, n):
    return F([(_rand_rat(rng), rng.choice([1, -1])) for _ in range(n)])


def _from_roots(P):
    """P(u+1)/P(u) as a FactoredSeries."""
    out = []
    for c, m in P.m.items():
        out += [(c + 1, m), (c, -m)]
    return F(out)


def _even(rng):
    return F([(c, 1) for c in (_rand_rat(rng) for _ in range(rng.randint(0, 2))) for c in (c, -c)])


def _sym_part(deltas):
    """A series with mu(-u)/mu(u) = P(u+1)/P(u) for P(u) = prod (u+δ)(u-δ-1)."""
    return F([(d, 1) for d in deltas] + [(-(d + 1), 1) for d in deltas])


def test_arrow_round_trips():
    rng = random.Random(20261016)
    for _ in range(200):
        P = R({_rand_rat(rng): rng.randint(1, 2) for _ in range(rng.randint(0, 4))})
        l2 = _rand_series(rng, rng.randint(0, 3))
        l1 = l2 * _from_roots(P)
        assert arrow(l1, l2) == P
        if P.m:
            c = next(iter(P.m))
            assert shift_ratio(R({**P.m, c: P.m[c] + 1})) != l1.ratfunc() / l2.ratfunc()


def test_sym_arrow_round_trips():
    rng = random.Random(7)
    for _ in range(200):
        deltas = [_rand_rat(rng) for _ in range(rng.randint(0, 3))]
        P = R({})
        for d in deltas:
            for c in (d, -d - 1):
                P.m[c] = P.m.get(c, 0) + 1
        mu = _sym_part(deltas) * _even(rng)
        got = sym_arrow(mu)
        assert got == P
        assert all(got.m.get(c, 0) == got.m.get(-1 - c, 0) for c in got.m)


def test_gamma_solver_round_trips():
    rng = random.Random(11)
    done = 0
    while done < 200:
        deltas = [_rand_rat(rng) for _ in range(rng.randint(0, 2))]
        gamma = _rand_rat(rng)
        P = {}
        for d in deltas:
            for c in (d, -d - 1):
                P[c] = P.get(c, 0) + 1
        if gamma in P:
            continue
        mu = _sym_part(deltas) * F([(-gamma, 1), (HALF, -1)]) * _even(rng)
        assert gamma_solver(mu) == (R(P), gamma)
        assert len(gamma_solver_all(mu)) == 1
        done += 1


# ------------------------------------------------------------------ predicates


def test_fd_Y_examples():
    r = fd_Y([fs((1, 1)), F(), F()])
    assert r.finite_dim and r.witnesses == [R({0: 1}), R()]
    assert fd_Y([fs((2, 1))] * 3).witnesses == [R(), R()]
    assert not fd_Y([fs((HALF, 1)), F()]).finite_dim


def test_fd_Yminus_examples():
    r = fd_Yminus([fs((-1, 1))])
    assert r.finite_dim and r.witnesses == [R({0: 1, -1: 1})]
    assert r.to_json() == {"finite_dim": True, "P": [{"roots": {"-1": 1, "0": 1}}]}
    assert fd_Yminus([F()]).witnesses == [R()]
    assert not fd_Yminus([fs((rat(-1, 4), 1))]).finite_dim


def test_fd_Yplus_even_examples():
    even = fs((2, 1), (-2, 1))
    r = fd_Yplus_even([even, even])
    assert r.finite_dim and r.epsilon == 1 and r.witnesses[0] == R()
    assert not fd_Yplus_even([fs((rat(1, 4), 1)), F()]).finite_dim


def test_fd_Yplus_even_epsilon_two():
    # mu^sharp-free case where only the (2u-1)/(2u+1)-scaled condition holds
    found = False
    for g in [rat(k, 2) for k in range(-5, 6)]:
        mu = fs((-g, 1), (HALF, -1))
        r = fd_Yplus_even([mu, mu])
        if r.finite_dim and r.epsilon == 2:
            found = True
    assert found


def test_fd_Yplus3_examples():
    r, pairs = fd_Yplus3([1], [0])
    assert r.finite_dim and r.branch == "all-integral"
    r, pairs = fd_Yplus3([HALF], [0])
    assert r.finite_dim and r.branch == "half-integral-last"
    assert not fd_Yplus3([rat(1, 4)], [0])[0].finite_dim


def test_fd_Yplus_odd_examples():
    r = fd_Yplus_odd([fs((1, 1), (-1, 1)), fs((-1, 1))])
    assert r.finite_dim and r.epsilon == 1
    assert fd_Yplus_odd([F(), F(), F()]).witnesses == [R(), R()]
    r = fd_Yplus_odd(list(plus3_weights([HALF], [0])))
    assert r.finite_dim and r.epsilon == 2
    with pytest.raises(ValueError):
        fd_Yplus_odd([fs((1, 1)), F()])


@pytest.mark.parametrize("a", [rat(k, 2) for k in range(-2, 4)])
@pytest.mark.parametrize("b", [rat(k, 2) for k in range(-2, 4)])
def test_fd_Yplus3_matches_odd(a, b):
    assert fd_Yplus3([a], [b])[0].finite_dim == fd_Yplus_odd(list(plus3_weights([a], [b]))).finite_dim


def test_series_json_round_trip():
    mu = fs((HALF, 2), (-3, -1))
    assert F.from_json(mu.to_json()) == mu
    P = R({HALF: 2, -1: 1})
    assert R.from_json(P.to_json()) == P
