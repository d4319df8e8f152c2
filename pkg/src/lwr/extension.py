"""Factor sets, the extension algebra N = M x L they define, and the inverse extraction.

Coordinates on N put the basis of M first and the basis of L after it.
The bracket on N is

    [(x,u), (y,v)] = ([x,y] + x.v - y.u + g(u,v), [u,v])

with the right action ``x.u`` of L on M.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, Mapping, Tuple

from .lie import LieAlgebra, RightAction, ValidationReport, Violation, validate_derivation_action, validate_lie
from .linalg import Vector, add_into, clean, from_dense, mat_inverse, mat_vec, vscale

__all__ = [
    "ExtensionAlgebra",
    "ExtensionData",
    "InvalidFactorSet",
    "NotAnIdeal",
    "ProjectionLeak",
    "build_extension",
    "direct_sum_data",
    "change_basis",
    "extract_factor_set",
    "twist_extension",
    "validate_extension_data",
    "validate_factor_set",
]


class InvalidFactorSet(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        conds = ", ".join(sorted(report.conditions()))
        super().__init__(f"extension data fails: {conds}")


class NotAnIdeal(ValueError):
    pass


class ProjectionLeak(NotAnIdeal):
    pass


@dataclass(frozen=True)
class ExtensionData:
    """``(M, L, action, g)``; ``g`` stores ``g(e_u, e_v)`` for ``u < v`` only."""

    M: LieAlgebra
    L: LieAlgebra
    action: RightAction
    g: Mapping[Tuple[int, int], Vector] = field(default_factory=dict)

    def __post_init__(self):
        if self.M.field != self.L.field:
            raise ValueError("M and L live over different fields")
        if self.action.m_dim != self.M.dim or self.action.l_dim != self.L.dim:
            raise ValueError("action shape does not match dim M x dim L")
        cleaned = {}
        for (u, v), val in self.g.items():
            if not 0 <= u < v < self.L.dim:
                raise ValueError(f"factor set entry ({u},{v}) must satisfy 0 <= u < v < dim L")
            self.M.check_vector(val)
            val = clean(val)
            if val:
                cleaned[(u, v)] = val
        object.__setattr__(self, "g", cleaned)

    @property
    def field(self):
        return self.M.field

    def g_basis(self, u: int, v: int) -> Vector:
        if u < v:
            return self.g.get((u, v), {})
        if u > v:
            return vscale(self.g.get((v, u), {}), -1)
        return {}

    def g_vec(self, a: Mapping[int, object], b: Mapping[int, object]) -> Vector:
        acc: Vector = {}
        for u, s in a.items():
            for v, t in b.items():
                w = self.g_basis(u, v)
                if w:
                    add_into(acc, w, s * t)
        return acc

    def act(self, x: Mapping[int, object], u: Mapping[int, object]) -> Vector:
        return self.action.act(x, u)

    def with_g_entry(self, u: int, v: int, q: int, delta) -> "ExtensionData":
        g = {k: dict(w) for k, w in self.g.items()}
        w = g.setdefault((u, v), {})
        w[q] = w.get(q, self.field(0)) + delta
        return ExtensionData(self.M, self.L, self.action, g)


def cocycle_residual(d: ExtensionData, u: int, v: int, w: int) -> Vector:
    """Left side of condition (b) at basis elements ``u, v, w`` of L."""
    L = d.L
    acc: Vector = {}
    for a, b, c in ((u, v, w), (v, w, u), (w, u, v)):
        add_into(acc, d.action.act_basis(d.g_basis(a, b), c))
        add_into(acc, d.g_vec(L.bracket_basis(a, b), L.e(c)))
    return acc


def compat_residual(d: ExtensionData, q: int, u: int, v: int) -> Vector:
    """``x.[u,v] + [x, g(u,v)] - (x.u).v + (x.v).u`` at ``x = z_q``."""
    x = d.M.e(q)
    act = d.action
    acc = act.act(x, d.L.bracket_basis(u, v))
    add_into(acc, d.M.bracket(x, d.g_basis(u, v)))
    add_into(acc, act.act_basis(act.act_basis(x, u), v), -1)
    add_into(acc, act.act_basis(act.act_basis(x, v), u))
    return acc


def validate_factor_set(d: ExtensionData) -> ValidationReport:
    """Conditions (b), (c) and the derivation law; (a) holds by storage.

    (b) is alternating in its three arguments, so triples ``u < v < w`` suffice;
    (c) is antisymmetric in ``u, v``, so pairs ``u < v`` suffice.
    """
    report = validate_derivation_action(d.M, d.action, d.L)
    for u, v, w in itertools.combinations(range(d.L.dim), 3):
        report.checked += 1
        r = cocycle_residual(d, u, v, w)
        if r:
            report.violations.append(Violation("b", (u, v, w), r))
    for q in range(d.M.dim):
        for u, v in itertools.combinations(range(d.L.dim), 2):
            report.checked += 1
            r = compat_residual(d, q, u, v)
            if r:
                report.violations.append(Violation("c", (q, u, v), r))
    return report


def validate_extension_data(d: ExtensionData) -> ValidationReport:
    """Jacobi for M and L plus :func:`validate_factor_set`, tagging Jacobi failures by algebra."""
    report = ValidationReport()
    for tag, A in (("M", d.M), ("L", d.L)):
        sub = validate_lie(A)
        report.checked += sub.checked
        report.violations.extend(Violation(f"jacobi-{tag}", v.instance, v.residual) for v in sub.violations)
    return report.extend(validate_factor_set(d))


@dataclass(frozen=True)
class ExtensionAlgebra:
    N: LieAlgebra
    m_dim: int

    @property
    def l_dim(self) -> int:
        return self.N.dim - self.m_dim

    def pair(self, x: Mapping[int, object], u: Mapping[int, object]) -> Vector:
        """The element ``(x, u)`` of N."""
        out = dict(x)
        for i, c in u.items():
            out[self.m_dim + i] = c
        return clean(out)

    def split(self, n: Mapping[int, object]) -> Tuple[Vector, Vector]:
        x = {k: c for k, c in n.items() if k < self.m_dim}
        u = {k - self.m_dim: c for k, c in n.items() if k >= self.m_dim}
        return x, u


def build_extension(d: ExtensionData, check: bool = True) -> ExtensionAlgebra:
    if check:
        report = validate_extension_data(d)
        if not report.ok:
            raise InvalidFactorSet(report)
    m, M, L = d.M.dim, d.M, d.L
    sc: Dict[Tuple[int, int], Vector] = {}
    for p, q in itertools.combinations(range(m), 2):
        sc[(p, q)] = M.bracket_basis(p, q)
    for p in range(m):
        for u in range(L.dim):
            sc[(p, m + u)] = d.action.act_basis(M.e(p), u)
    for u, v in itertools.combinations(range(L.dim), 2):
        top = dict(d.g_basis(u, v))
        for k, c in L.bracket_basis(u, v).items():
            top[m + k] = c
        sc[(m + u, m + v)] = top
    ext = ExtensionAlgebra(LieAlgebra(M.basis + L.basis, sc, d.field), m)
    if check:
        assert validate_lie(ext.N).ok, "extension of validated data failed Jacobi"
    return ext


def extract_factor_set(N: LieAlgebra, m_dim: int, check: bool = True) -> ExtensionData:
    """Read ``(M, L, action, g)`` off N using the coordinate section ``e_u -> (0, e_u)``."""
    if not 0 <= m_dim <= N.dim:
        raise ValueError("m_dim out of range")
    if check and not validate_lie(N).ok:
        raise ValueError("N is not a Lie algebra")
    l_dim = N.dim - m_dim
    F = N.field
    m_sc = {}
    for p, q in itertools.combinations(range(m_dim), 2):
        v = N.bracket_basis(p, q)
        if any(k >= m_dim for k in v):
            raise NotAnIdeal(f"[{N.basis[p]},{N.basis[q]}] leaves the first {m_dim} basis vectors")
        m_sc[(p, q)] = v
    images: Dict[int, Dict[int, Vector]] = {u: {} for u in range(l_dim)}
    for p in range(m_dim):
        for u in range(l_dim):
            v = N.bracket_basis(p, m_dim + u)
            if any(k >= m_dim for k in v):
                raise ProjectionLeak(f"[{N.basis[p]},{N.basis[m_dim + u]}] leaves the M-block")
            images[u][p] = v
    l_sc, g = {}, {}
    for u, v in itertools.combinations(range(l_dim), 2):
        w = N.bracket_basis(m_dim + u, m_dim + v)
        g[(u, v)] = {k: c for k, c in w.items() if k < m_dim}
        l_sc[(u, v)] = {k - m_dim: c for k, c in w.items() if k >= m_dim}
    data = ExtensionData(
        LieAlgebra(N.basis[:m_dim], m_sc, F),
        LieAlgebra(N.basis[m_dim:], l_sc, F),
        RightAction(m_dim, l_dim, images),
        g,
    )
    if check:
        assert validate_extension_data(data).ok, "data extracted from a Lie algebra failed validation"
    return data


def change_basis(N: LieAlgebra, P) -> LieAlgebra:
    """Structure constants of N in the basis given by the columns of ``P``."""
    F = N.field
    n = N.dim
    Pinv = mat_inverse(P, F.zero, F.one)
    cols = [from_dense(P[r][c] for r in range(n)) for c in range(n)]
    sc = {}
    for a, b in itertools.combinations(range(n), 2):
        w = mat_vec(Pinv, N.bracket(cols[a], cols[b]))
        if w:
            sc[(a, b)] = w
    return LieAlgebra(N.basis, sc, F)


def twist_extension(ext: ExtensionAlgebra, rng: random.Random, span: int = 2) -> ExtensionAlgebra:
    """Random block-triangular change of basis of N that keeps the first block an ideal.

    New M-basis vectors are combinations of old M-basis vectors; new L-basis
    vectors mix old L- and M-basis vectors, which amounts to a different section.
    """
    N, m = ext.N, ext.m_dim
    F = N.field
    n = N.dim
    while True:
        P = [[F.zero] * n for _ in range(n)]
        for r in range(n):
            for c in range(n):
                same_block = (r < m) == (c < m)
                if same_block or (r < m <= c):
                    P[r][c] = F(rng.randint(-span, span))
        try:
            mat_inverse(P, F.zero, F.one)
        except ValueError:
            continue
        return ExtensionAlgebra(change_basis(N, P), m)


def direct_sum_data(M: LieAlgebra, L: LieAlgebra) -> ExtensionData:
    return ExtensionData(M, L, RightAction.trivial(M.dim, L.dim), {})
