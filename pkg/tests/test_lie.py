import itertools

import pytest

from lwr.catalog import sl2
from lwr.lie import LieAlgebra, RightAction, jacobi_residual, validate_derivation_action, validate_lie
from lwr.linalg import vadd, vscale
from lwr.scalars import QQ


def rand_vec(rng, dim, span=4):
    return {i: QQ(c) for i in range(dim) if (c := rng.randint(-span, span))}


def test_sl2_brackets(sl2_alg):
    h, e, f = (sl2_alg.e(i) for i in range(3))
    assert sl2_alg.bracket(h, e) == {1: 2}
    assert sl2_alg.bracket(h, f) == {2: -2}
    assert sl2_alg.bracket(e, f) == {0: 1}
    assert sl2_alg.bracket(f, e) == {0: -1}


def test_heisenberg_sign_flip(h3):
    assert h3.bracket(h3.e(2), h3.e(1)) == {0: -1}


def test_bracket_self_is_zero(rng, sl2_alg):
    for _ in range(50):
        x = rand_vec(rng, 3)
        assert sl2_alg.bracket(x, x) == {}


def test_antisymmetry_and_bilinearity(rng, sl2_alg):
    A = sl2_alg
    for _ in range(100):
        x, y, z = (rand_vec(rng, 3) for _ in range(3))
        c = QQ(rng.randint(-5, 5))
        assert A.bracket(x, y) == vscale(A.bracket(y, x), -1)
        assert A.bracket(vadd(x, vscale(z, c)), y) == vadd(A.bracket(x, y), vscale(A.bracket(z, y), c))


def test_validate_lie_examples(sl2_alg, h3):
    assert validate_lie(sl2_alg).ok
    assert validate_lie(h3).ok
    bad = LieAlgebra.from_brackets(
        ["e1", "e2", "e3"],
        {("e1", "e2"): {"e3": 1}, ("e2", "e3"): {"e1": 1}, ("e3", "e1"): {"e1": 1}},
    )
    report = validate_lie(bad)
    assert not report.ok
    (v,) = report.violations
    assert v.instance == (0, 1, 2)
    assert v.residual == {2: 1}


def test_small_dimensions_always_valid(rng):
    for _ in range(20):
        A = LieAlgebra(["a", "b"], {(0, 1): rand_vec(rng, 2)})
        assert validate_lie(A).ok
    assert validate_lie(LieAlgebra(["a"])).ok
    assert validate_lie(LieAlgebra([])).ok


def brute_force_jacobi_ok(A):
    """Independent check over all ordered basis triples, not just i<j<k."""
    for i, j, k in itertools.product(range(A.dim), repeat=3):
        x, y, z = A.e(i), A.e(j), A.e(k)
        total = vadd(A.bracket(x, A.bracket(y, z)), A.bracket(y, A.bracket(z, x)), A.bracket(z, A.bracket(x, y)))
        if total:
            return False
    return True


def test_jacobi_on_random_elements(rng, sl2_alg, h3):
    for A in (sl2_alg, h3):
        assert validate_lie(A).ok
        for _ in range(50):
            x, y, z = (rand_vec(rng, A.dim) for _ in range(3))
            assert jacobi_residual(A, x, y, z) == {}


@pytest.mark.parametrize("name", ["sl2", "h3"])
def test_mutation_detection(name, h3):
    A = sl2(QQ) if name == "sl2" else h3
    for (i, j), v in A.sc.items():
        for k in v:
            mutant = A.with_constant(i, j, k, 1)
            assert validate_lie(mutant).ok == brute_force_jacobi_ok(mutant)
    # h3's single constant is in a nilpotent algebra: any value stays Lie
    if name == "sl2":
        assert not validate_lie(A.with_constant(0, 1, 1, 1)).ok


def test_abelian_action_trivially_derivation(rng):
    M = LieAlgebra.abelian(["x", "y"])
    L = LieAlgebra.abelian(["u"])
    act = RightAction(2, 1, {0: {0: rand_vec(rng, 2), 1: rand_vec(rng, 2)}})
    assert validate_derivation_action(M, act, L).ok


def test_inner_derivation_is_derivation(h3):
    # ad(a) acting on the right: x . u = [x, a]
    L = LieAlgebra.abelian(["u"])
    images = {0: {p: h3.bracket(h3.e(p), h3.e(1)) for p in range(3)}}
    assert validate_derivation_action(h3, RightAction(3, 1, images), L).ok


def test_swap_is_not_derivation(r2):
    L = LieAlgebra.abelian(["u"])
    act = RightAction(2, 1, {0: {0: {1: QQ(1)}, 1: {0: QQ(1)}}})
    report = validate_derivation_action(r2, act, L)
    assert not report.ok
    (v,) = report.violations
    assert v.instance == (0, 1, 0)
    assert v.residual == {1: 1}


def test_action_matrix_orientation():
    # A_u sends z0 -> 2 z1 : column 0 has a 2 in row 1
    act = RightAction.from_matrices({0: [[0, 0], [2, 0]]})
    assert act.act_basis({0: QQ(1)}, 0) == {1: 2}
    assert act.act_basis({1: QQ(1)}, 0) == {}
    assert act.matrix(0, QQ(0)) == [[0, 0], [2, 0]]


def test_constructor_rejects_bad_indices():
    with pytest.raises(ValueError):
        LieAlgebra(["a", "b"], {(1, 0): {0: 1}})
    with pytest.raises(ValueError):
        LieAlgebra(["a", "b"], {(0, 1): {5: 1}})
    with pytest.raises(ValueError):
        LieAlgebra(["a", "a"])
