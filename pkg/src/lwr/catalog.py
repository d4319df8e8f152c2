"""Named fixtures.  Between them they reach every branch of the table recursion.

Each builder takes a :class:`FieldSpec` so the same fixture can be run over
Q or over F_p.  Names ending in ``-bad`` are deliberately invalid.
"""

from __future__ import annotations

import random
from typing import Callable, Dict, List

from .extension import ExtensionAlgebra, ExtensionData, build_extension, extract_factor_set, twist_extension
from .lie import LieAlgebra, RightAction
from .scalars import QQ, FieldSpec

__all__ = ["BAD", "CATALOG", "VALID", "catalog", "random_section_instances", "twist_bases"]


def heisenberg(F: FieldSpec = QQ) -> ExtensionData:
    M = LieAlgebra.abelian(["z"], F)
    L = LieAlgebra.abelian(["e1", "e2"], F)
    return ExtensionData(M, L, RightAction.trivial(1, 2), {(0, 1): {0: F(1)}})


def nonabelian2(F: FieldSpec = QQ) -> ExtensionData:
    M = LieAlgebra.abelian(["x"], F)
    L = LieAlgebra.abelian(["u"], F)
    return ExtensionData(M, L, RightAction(1, 1, {0: {0: {0: F(1)}}}), {})


def direct_sum(F: FieldSpec = QQ) -> ExtensionData:
    M = LieAlgebra.from_brackets(["z1", "z2"], {("z1", "z2"): {"z1": 1}}, F)
    L = LieAlgebra.from_brackets(["e1", "e2"], {("e1", "e2"): {"e2": 1}}, F)
    return ExtensionData(M, L, RightAction.trivial(2, 2), {})


def n4_algebra(F: FieldSpec = QQ) -> ExtensionAlgebra:
    """Strictly upper-triangular 4x4 matrices, derived subalgebra first."""
    names = ["E13", "E14", "E24", "E12", "E23", "E34"]
    pos = {n: (int(n[1]), int(n[2])) for n in names}
    sc = {}
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            (i, j), (k, l) = pos[names[a]], pos[names[b]]
            v = {}
            if j == k:
                v[names.index(f"E{i}{l}")] = F(1)
            if l == i:
                t = names.index(f"E{k}{j}")
                v[t] = v.get(t, F(0)) - 1
            if v:
                sc[(a, b)] = v
    return ExtensionAlgebra(LieAlgebra(names, sc, F), 3)


def n4(F: FieldSpec = QQ) -> ExtensionData:
    ext = n4_algebra(F)
    return extract_factor_set(ext.N, ext.m_dim)


def oscillator_algebra(F: FieldSpec = QQ) -> ExtensionAlgebra:
    N = LieAlgebra.from_brackets(
        ["z", "a", "b", "h"],
        {("a", "b"): {"z": 1}, ("h", "a"): {"a": 1}, ("h", "b"): {"b": -1}},
        F,
    )
    return ExtensionAlgebra(N, 3)


def oscillator(F: FieldSpec = QQ) -> ExtensionData:
    ext = oscillator_algebra(F)
    return extract_factor_set(ext.N, ext.m_dim)


def sl2(F: FieldSpec = QQ, names=("h", "e", "f")) -> LieAlgebra:
    h, e, f = names
    return LieAlgebra.from_brackets(
        list(names), {(h, e): {e: 2}, (h, f): {f: -2}, (e, f): {h: 1}}, F)


def sl2_module_trivial_g(F: FieldSpec = QQ) -> ExtensionData:
    """sl2 acting on its 2-dim standard module (made a right action by negation), g = 0."""
    M = LieAlgebra.abelian(["v1", "v2"], F)
    rho = {
        0: [[1, 0], [0, -1]],
        1: [[0, 1], [0, 0]],
        2: [[0, 0], [1, 0]],
    }
    mats = {u: [[F(-c) for c in row] for row in m] for u, m in rho.items()}
    return ExtensionData(M, sl2(F), RightAction.from_matrices(mats), {})


def cocycle_bad(F: FieldSpec = QQ) -> ExtensionData:
    """Fails condition (b) at (e1, e2, e3)."""
    M = LieAlgebra.abelian(["z"], F)
    L = LieAlgebra.abelian(["e1", "e2", "e3"], F)
    return ExtensionData(M, L, RightAction(1, 3, {2: {0: {0: F(1)}}}), {(0, 1): {0: F(1)}})


def compat_bad(F: FieldSpec = QQ) -> ExtensionData:
    """Fails condition (c) at (z1, e1, e2)."""
    M = LieAlgebra.from_brackets(["z1", "z2"], {("z1", "z2"): {"z1": 1}}, F)
    L = LieAlgebra.abelian(["e1", "e2"], F)
    return ExtensionData(M, L, RightAction.trivial(2, 2), {(0, 1): {1: F(1)}})


def derivation_bad(F: FieldSpec = QQ) -> ExtensionData:
    """The swap action on the 2-dim nonabelian algebra is not a derivation."""
    M = LieAlgebra.from_brackets(["z1", "z2"], {("z1", "z2"): {"z1": 1}}, F)
    L = LieAlgebra.abelian(["u"], F)
    return ExtensionData(M, L, RightAction(2, 1, {0: {0: {1: F(1)}, 1: {0: F(1)}}}), {})


VALID: Dict[str, Callable[[FieldSpec], ExtensionData]] = {
    "heisenberg": heisenberg,
    "nonabelian2": nonabelian2,
    "direct-sum": direct_sum,
    "n4": n4,
    "oscillator": oscillator,
    "sl2-module-trivial-g": sl2_module_trivial_g,
}

BAD: Dict[str, Callable[[FieldSpec], ExtensionData]] = {
    "cocycle-bad": cocycle_bad,
    "compat-bad": compat_bad,
    "derivation-bad": derivation_bad,
}

# condition each bad fixture is documented to fail
BAD_CONDITIONS = {"cocycle-bad": "b", "compat-bad": "c", "derivation-bad": "derivation"}

CATALOG = {**VALID, **BAD}


def catalog(name: str, field: FieldSpec = QQ) -> ExtensionData:
    try:
        return CATALOG[name](field)
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(CATALOG)}") from None


def padded_affine(F: FieldSpec = QQ) -> ExtensionAlgebra:
    """Basis (x, p, u, v): [x,u] = x, [u,v] = v, p central; the first two span an ideal."""
    N = LieAlgebra.from_brackets(["x", "p", "u", "v"], {("x", "u"): {"x": 1}, ("u", "v"): {"v": 1}}, F)
    return ExtensionAlgebra(N, 2)


def twist_bases(F: FieldSpec = QQ) -> List[ExtensionAlgebra]:
    """Extensions of dimension <= 5 used as seeds for random block-preserving basis changes."""
    return [
        build_extension(heisenberg(F)),
        build_extension(nonabelian2(F)),
        build_extension(direct_sum(F)),
        oscillator_algebra(F),
        padded_affine(F),
        build_extension(sl2_module_trivial_g(F)),
    ]


def random_section_instances(count: int, seed: int = 0, F: FieldSpec = QQ, span: int = 2) -> List[ExtensionData]:
    """``count`` valid extension data sets from random changes of basis of :func:`twist_bases`."""
    rng = random.Random(seed)
    bases = twist_bases(F)
    out = []
    for t in range(count):
        twisted = twist_extension(bases[t % len(bases)], rng, span)
        out.append(extract_factor_set(twisted.N, twisted.m_dim))
    return out
