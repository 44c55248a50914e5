import pytest

from yangrep.exactlin import HALF, rat
from yangrep.verify import (
    catalog,
    corrupt,
    sweep_point,
    verify_defining,
    verify_example57,
    verify_prop62,
    verify_qdet_sdet,
    verify_sharp,
    sharp_cases,
    verify_star_hw,
)


def _by_name(name):
    return next(e for e in catalog() if e.name == name)


def test_catalog_size_and_coverage():
    names = [e.name for e in catalog()]
    assert len(names) >= 12
    for prefix in ("Y2 ", "Y3 ", "Y-2 ", "Y+2 ", "Y+3 ", "Y-2 sp(2)", "Y+3 o(3) spin"):
        assert any(n.startswith(prefix) for n in names), prefix


def test_corrupted_module_fails_with_counterexample():
    x = corrupt(_by_name("Y2 L(1,0)xL(1,0)").build())
    rep = verify_defining(x)
    assert not rep.passed
    assert any(c["counterexample"] for c in rep.failures())


def test_qdet_sdet_single_module():
    assert verify_qdet_sdet(_by_name("Y-2 L(3/2,-1/2)").build()).passed
    assert verify_qdet_sdet(_by_name("Y+3 L(1,1,0)").build()).passed


@pytest.mark.parametrize("ab", [([2], [0]), ([rat(5, 2)], [HALF])])
def test_star_hw(ab):
    assert verify_star_hw(*ab).passed


def test_star_eta_identities_one_instance():
    rep = verify_prop62(rat(2), rat(0), p_max=2)
    assert rep.passed and len(rep.checks) > 4


@pytest.mark.parametrize("g", [(HALF, HALF), (rat(3, 2), HALF)])
def test_plus_minus_tensor_small(g):
    assert verify_example57(*g).passed


def test_plus_minus_tensor_precondition():
    with pytest.raises(ValueError):
        verify_example57(rat(1), rat(0))


def test_sharp_subset():
    assert verify_sharp(sharp_cases(limit=12)).passed


def test_sweep_point():
    assert sweep_point("2.11", ((rat(1), rat(0)), (rat(1), rat(0)))) == (True, True)
    assert sweep_point("2.11", ((rat(2), rat(0)), (rat(0), rat(-1)))) == (False, False)


def test_reports_are_deterministic():
    a = verify_example57(rat(3, 2), HALF).dumps()
    b = verify_example57(rat(3, 2), HALF).dumps()
    assert a == b
