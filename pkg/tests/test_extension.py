import itertools
import random

import pytest

from lwr.catalog import BAD, BAD_CONDITIONS, VALID, direct_sum, heisenberg, n4_algebra, nonabelian2, twist_bases
from lwr.extension import (ExtensionAlgebra, InvalidFactorSet, NotAnIdeal, ProjectionLeak, build_extension,
                           cocycle_residual, compat_residual, extract_factor_set, twist_extension,
                           validate_extension_data, validate_factor_set)
from lwr.lie import LieAlgebra, validate_lie
from lwr.scalars import QQ


def test_heisenberg_is_valid():
    assert validate_extension_data(heisenberg()).ok


def test_compat_bad_reports_c():
    rep = validate_factor_set(BAD["compat-bad"](QQ))
    assert [(v.condition, v.instance, v.residual) for v in rep.violations] == [("c", (0, 0, 1), {0: 1})]


def test_cocycle_bad_reports_b():
    rep = validate_factor_set(BAD["cocycle-bad"](QQ))
    assert [(v.condition, v.instance, v.residual) for v in rep.violations] == [("b", (0, 1, 2), {0: 1})]


@pytest.mark.parametrize("name", sorted(BAD))
def test_bad_fixtures_fail_their_condition(name):
    rep = validate_extension_data(BAD[name](QQ))
    assert BAD_CONDITIONS[name] in rep.conditions()
    with pytest.raises(InvalidFactorSet):
        build_extension(BAD[name](QQ))


@pytest.mark.parametrize("name", sorted(VALID))
def test_valid_fixtures_build_lie_algebras(name):
    d = VALID[name](QQ)
    assert validate_extension_data(d).ok
    assert validate_lie(build_extension(d).N).ok


def test_heisenberg_build_is_h3():
    N = build_extension(heisenberg()).N
    assert N.basis == ("z", "e1", "e2")
    assert N.sc == {(1, 2): {0: 1}}


def test_trivial_g_gives_direct_sum():
    d = direct_sum()
    N = build_extension(d).N
    assert N.sc == {(0, 1): {0: 1}, (2, 3): {3: 1}}


def test_nonabelian2_build():
    N = build_extension(nonabelian2()).N
    assert N.bracket(N.e(0), N.e(1)) == {0: 1}


def test_extract_h3():
    N = LieAlgebra.from_brackets(["z", "a", "b"], {("a", "b"): {"z": 1}})
    d = extract_factor_set(N, 1)
    assert d.M.is_abelian() and d.L.is_abelian()
    assert d.action.is_trivial()
    assert d.g_basis(0, 1) == {0: 1} and d.g_basis(1, 0) == {0: -1}


def test_extract_direct_sum_round_trip():
    d = direct_sum()
    back = extract_factor_set(build_extension(d).N, 2)
    assert back.M == d.M and back.L == d.L and back.action == d.action and back.g == d.g


def test_extract_n4():
    ext = n4_algebra()
    d = extract_factor_set(ext.N, 3)
    assert d.M.is_abelian()
    assert build_extension(d).N == ext.N


@pytest.mark.parametrize("seed", range(20))
def test_random_twist_round_trip(seed):
    rng = random.Random(seed)
    base = twist_bases()[seed % 6]
    twisted = twist_extension(base, rng)
    assert validate_lie(twisted.N).ok
    d = extract_factor_set(twisted.N, twisted.m_dim)
    assert build_extension(d).N == twisted.N


def test_m_is_ideal_and_quotient_is_L():
    for name, make in VALID.items():
        d = make(QQ)
        ext = build_extension(d)
        m = ext.m_dim
        for a in range(m):
            for b in range(ext.N.dim):
                assert all(k < m for k in ext.N.bracket_basis(a, b)), name
        for u, v in itertools.combinations(range(d.L.dim), 2):
            _, top = ext.split(ext.N.bracket_basis(m + u, m + v))
            assert top == d.L.bracket_basis(u, v)


def test_cocycle_residual_cyclic():
    rng = random.Random(7)
    d = BAD["cocycle-bad"](QQ)
    for _ in range(5):
        g = {(u, v): {0: QQ(rng.randint(-3, 3))} for u, v in itertools.combinations(range(3), 2)}
        dd = type(d)(d.M, d.L, d.action, g)
        r = cocycle_residual(dd, 0, 1, 2)
        assert cocycle_residual(dd, 1, 2, 0) == r
        assert cocycle_residual(dd, 2, 0, 1) == r


def test_compat_residual_zero_on_valid():
    for make in VALID.values():
        d = make(QQ)
        for q in range(d.M.dim):
            for u, v in itertools.combinations(range(d.L.dim), 2):
                assert not compat_residual(d, q, u, v)


def test_not_an_ideal():
    N = LieAlgebra.from_brackets(["a", "b", "c"], {("a", "b"): {"c": 1}})
    with pytest.raises(NotAnIdeal):
        extract_factor_set(N, 2)


def test_projection_leak():
    N = LieAlgebra.from_brackets(["a", "b", "c"], {("a", "b"): {"c": 1}})
    with pytest.raises(ProjectionLeak):
        extract_factor_set(N, 1)


def test_invalid_factor_set_carries_report():
    with pytest.raises(InvalidFactorSet) as info:
        build_extension(BAD["cocycle-bad"](QQ))
    assert not info.value.report.ok


def test_extension_algebra_pair_split():
    ext = ExtensionAlgebra(build_extension(heisenberg()).N, 1)
    n = ext.pair({0: QQ(2)}, {1: QQ(-1)})
    assert n == {0: 2, 2: -1}
    assert ext.split(n) == ({0: 2}, {1: -1})
