"""Finite-dimensional Lie algebras given by structure constants.

A :class:`LieAlgebra` stores ``[e_i, e_j] = sum_k c_ij^k e_k`` only for
``i < j``; the remaining entries follow from antisymmetry.  Elements are
sparse vectors (see :mod:`lwr.linalg`).

Validators never raise on bad input.  They return a :class:`ValidationReport`
listing every violated instance with its residual, so malformed presentations
can still be loaded and diagnosed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

from .linalg import Vector, add_into, clean, vscale
from .scalars import QQ, FieldSpec

__all__ = [
    "LieAlgebra",
    "RightAction",
    "ValidationReport",
    "Violation",
    "validate_derivation_action",
    "validate_lie",
]


@dataclass(frozen=True)
class Violation:
    condition: str
    instance: Tuple
    residual: Vector

    def describe(self, names: Sequence[str] | None = None) -> str:
        inst = ",".join(names[i] if names else str(i) for i in self.instance) if self.instance else ""
        return f"{self.condition}({inst})"


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def extend(self, other: "ValidationReport") -> "ValidationReport":
        self.violations.extend(other.violations)
        self.checked += other.checked
        return self

    def conditions(self) -> set:
        return {v.condition for v in self.violations}


class LieAlgebra:
    """A Lie algebra (or candidate; see :func:`validate_lie`) on a named basis.

    ``sc`` maps ``(i, j)`` with ``i < j`` to the sparse vector ``[e_i, e_j]``.
    """

    def __init__(self, basis: Sequence[str], sc: Mapping[Tuple[int, int], Mapping[int, object]] | None = None,
                 field: FieldSpec = QQ):
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        self.field = field
        if len(set(self.basis)) != self.dim:
            raise ValueError(f"duplicate basis names in {self.basis}")
        table: Dict[Tuple[int, int], Vector] = {}
        for (i, j), v in dict(sc or {}).items():
            if not (0 <= i < j < self.dim):
                raise ValueError(f"structure constant index ({i},{j}) must satisfy 0 <= i < j < {self.dim}")
            for k in v:
                if not 0 <= k < self.dim:
                    raise ValueError(f"structure constant target {k} out of range")
            v = clean({k: field(0) + c for k, c in v.items()})
            if v:
                table[(i, j)] = v
        self.sc = table
        self._full = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j), v in table.items():
            self._full[i][j] = v
            self._full[j][i] = vscale(v, -1)

    # construction helpers

    @classmethod
    def abelian(cls, basis: Sequence[str], field: FieldSpec = QQ) -> "LieAlgebra":
        return cls(basis, {}, field)

    @classmethod
    def from_brackets(cls, basis: Sequence[str], brackets: Mapping[Tuple[str, str], Mapping[str, int]],
                      field: FieldSpec = QQ) -> "LieAlgebra":
        """Build from named relations, e.g. ``{("h", "e"): {"e": 2}}``; either order of the pair is accepted."""
        idx = {n: i for i, n in enumerate(basis)}
        sc = {}
        for (a, b), coeffs in brackets.items():
            i, j = idx[a], idx[b]
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            sc[(i, j)] = {idx[k]: field(c) * sign for k, c in coeffs.items()}
        return cls(basis, sc, field)

    def with_constant(self, i: int, j: int, k: int, delta) -> "LieAlgebra":
        """Copy with ``c_ij^k`` shifted by ``delta`` (``i < j``)."""
        sc = {key: dict(v) for key, v in self.sc.items()}
        v = sc.setdefault((i, j), {})
        v[k] = v.get(k, self.field(0)) + delta
        return LieAlgebra(self.basis, sc, self.field)

    # arithmetic

    def zero(self) -> Vector:
        return {}

    def e(self, i: int) -> Vector:
        return {i: self.field.one}

    def vector(self, coeffs: Mapping[str, object]) -> Vector:
        return clean({self.basis.index(n): self.field(0) + c for n, c in coeffs.items()})

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self._full[i][j]

    def bracket(self, x: Mapping[int, object], y: Mapping[int, object]) -> Vector:
        acc: Vector = {}
        for i, a in x.items():
            row = self._full[i]
            for j, b in y.items():
                v = row[j]
                if v:
                    add_into(acc, v, a * b)
        return acc

    def check_vector(self, x: Mapping[int, object]) -> None:
        for k in x:
            if not 0 <= k < self.dim:
                raise ValueError(f"index {k} outside algebra of dimension {self.dim}")

    def is_abelian(self) -> bool:
        return not self.sc

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.basis == other.basis
                and self.field == other.field and self.sc == other.sc)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, basis={list(self.basis)}, field={self.field})"


def jacobi_residual(A: LieAlgebra, x, y, z) -> Vector:
    """``[[x,y],z] + [[y,z],x] + [[z,x],y]``."""
    acc: Vector = {}
    add_into(acc, A.bracket(A.bracket(x, y), z))
    add_into(acc, A.bracket(A.bracket(y, z), x))
    add_into(acc, A.bracket(A.bracket(z, x), y))
    return acc


def validate_lie(A: LieAlgebra) -> ValidationReport:
    """Check the Jacobi identity on every basis triple ``i < j < k``.

    Antisymmetry is structural, and with it Jacobi on distinct sorted triples
    implies Jacobi everywhere by trilinearity.
    """
    report = ValidationReport()
    for i, j, k in itertools.combinations(range(A.dim), 3):
        report.checked += 1
        r = jacobi_residual(A, A.e(i), A.e(j), A.e(k))
        if r:
            report.violations.append(Violation("jacobi", (i, j, k), r))
    return report


class RightAction:
    """A right action of ``L`` on ``M``: ``images[u][p]`` is ``z_p . e_u``.

    In matrix terms ``coords(x . e_u) = A_u @ coords(x)``, so ``images[u][p]``
    is column ``p`` of ``A_u``.
    """

    def __init__(self, m_dim: int, l_dim: int, images: Mapping[int, Mapping[int, Mapping[int, object]]] | None = None):
        self.m_dim = m_dim
        self.l_dim = l_dim
        self.images: List[List[Vector]] = [[{} for _ in range(m_dim)] for _ in range(l_dim)]
        for u, cols in dict(images or {}).items():
            if not 0 <= u < l_dim:
                raise ValueError(f"action generator {u} out of range")
            for p, v in cols.items():
                if not 0 <= p < m_dim or any(not 0 <= r < m_dim for r in v):
                    raise ValueError(f"action matrix entry out of range for generator {u}")
                self.images[u][p] = clean(v)

    @classmethod
    def trivial(cls, m_dim: int, l_dim: int) -> "RightAction":
        return cls(m_dim, l_dim)

    @classmethod
    def from_matrices(cls, matrices: Mapping[int, Sequence[Sequence[object]]]) -> "RightAction":
        """Dense matrices ``A_u`` with ``coords(x.e_u) = A_u @ coords(x)``."""
        mats = dict(matrices)
        m_dim = len(next(iter(mats.values()))) if mats else 0
        l_dim = max(mats) + 1 if mats else 0
        images = {u: {p: {r: a[r][p] for r in range(m_dim) if a[r][p]} for p in range(m_dim)}
                  for u, a in mats.items()}
        return cls(m_dim, l_dim, images)

    def act_basis(self, x: Mapping[int, object], u: int) -> Vector:
        acc: Vector = {}
        cols = self.images[u]
        for p, c in x.items():
            if cols[p]:
                add_into(acc, cols[p], c)
        return acc

    def act(self, x: Mapping[int, object], u: Mapping[int, object]) -> Vector:
        acc: Vector = {}
        for i, c in u.items():
            add_into(acc, self.act_basis(x, i), c)
        return acc

    def matrix(self, u: int, zero) -> List[list]:
        a = [[zero] * self.m_dim for _ in range(self.m_dim)]
        for p, v in enumerate(self.images[u]):
            for r, c in v.items():
                a[r][p] = c
        return a

    def entries(self):
        """Yield ``(u, row, col, value)`` for stored nonzero matrix entries."""
        for u in range(self.l_dim):
            for p, v in enumerate(self.images[u]):
                for r in sorted(v):
                    yield u, r, p, v[r]

    def with_entry(self, u: int, row: int, col: int, delta) -> "RightAction":
        images = {w: {p: dict(v) for p, v in enumerate(cols)} for w, cols in enumerate(self.images)}
        col_v = images[u][col]
        col_v[row] = col_v.get(row, 0) + delta
        return RightAction(self.m_dim, self.l_dim, images)

    def is_trivial(self) -> bool:
        return not any(any(cols) for cols in self.images)

    def __eq__(self, other):
        return isinstance(other, RightAction) and self.images == other.images


def validate_derivation_action(M: LieAlgebra, act: RightAction, L: LieAlgebra) -> ValidationReport:
    """Check ``[x,y]u = [xu,y] + [x,yu]`` on basis pairs ``p < q`` of M and every basis ``u`` of L."""
    report = ValidationReport()
    if act.m_dim != M.dim or act.l_dim != L.dim:
        raise ValueError("action shape does not match the algebras")
    for u in range(L.dim):
        for p, q in itertools.combinations(range(M.dim), 2):
            report.checked += 1
            x, y = M.e(p), M.e(q)
            r = act.act_basis(M.bracket(x, y), u)
            add_into(r, M.bracket(act.act_basis(x, u), y), -1)
            add_into(r, M.bracket(x, act.act_basis(y, u)), -1)
            if r:
                report.violations.append(Violation("derivation", (p, q, u), r))
    return report
