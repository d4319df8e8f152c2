"""Sparse vectors as ``{index: scalar}`` dicts, plus small dense exact matrix helpers.

Vectors never store zero coordinates.  Functions return fresh dicts and
never mutate their arguments, except the ``*_into`` accumulators.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Mapping

Vector = Dict[int, object]


def basis_vector(i: int, one) -> Vector:
    return {i: one}


def add_into(acc: Vector, v: Mapping[int, object], c=1) -> Vector:
    """``acc += c * v`` in place; drops coordinates that cancel."""
    for k, x in v.items():
        y = acc.get(k)
        y = x * c if y is None else y + x * c
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def vadd(*vs: Mapping[int, object]) -> Vector:
    acc: Vector = {}
    for v in vs:
        add_into(acc, v)
    return acc


def vsub(a: Mapping[int, object], b: Mapping[int, object]) -> Vector:
    return add_into(dict(a), b, -1)


def vscale(v: Mapping[int, object], c) -> Vector:
    if not c:
        return {}
    out = {}
    for k, x in v.items():
        y = x * c
        if y:
            out[k] = y
    return out


def vcombine(terms: Iterable[tuple]) -> Vector:
    """Sum of ``c * v`` over ``(c, v)`` pairs."""
    acc: Vector = {}
    for c, v in terms:
        if c:
            add_into(acc, v, c)
    return acc


def clean(v: Mapping[int, object]) -> Vector:
    return {k: x for k, x in v.items() if x}


def to_dense(v: Mapping[int, object], dim: int, zero) -> list:
    return [v.get(i, zero) for i in range(dim)]


def from_dense(xs: Iterable) -> Vector:
    return {i: x for i, x in enumerate(xs) if x}


def identity(n: int, zero, one) -> List[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_vec(a: List[list], v: Mapping[int, object]) -> Vector:
    """Dense matrix times sparse column vector."""
    acc: Vector = {}
    for j, x in v.items():
        for i, row in enumerate(a):
            if row[j]:
                acc[i] = acc.get(i, 0) + row[j] * x
    return clean(acc)


def mat_inverse(a: List[list], zero, one) -> List[list]:
    """Gauss-Jordan inverse over an exact field; raises ``ValueError`` if singular."""
    n = len(a)
    m = [list(row) + identity(n, zero, one)[i] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            raise ValueError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        inv = one / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]
