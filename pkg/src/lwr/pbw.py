"""Standard monomials, PBW straightening in U(L), and the splitting coproduct.

A standard monomial is a nondecreasing tuple of basis indices; ``()`` is the
monomial 1.  Elements of U(L) in normal form are ``{monomial: scalar}``
dicts.  The basis well-order is ascending index order.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Sequence, Tuple

from .lie import LieAlgebra
from .linalg import add_into

__all__ = [
    "Enveloping",
    "Monomial",
    "coproduct",
    "format_monomial",
    "intern",
    "monomials_up_to",
    "multiplicities",
    "parse_monomial",
    "splittings",
]

Monomial = Tuple[int, ...]
UElement = Dict[Monomial, object]

_POOL: Dict[Monomial, Monomial] = {}


def intern(m: Sequence[int]) -> Monomial:
    """Canonical shared tuple for a sorted monomial."""
    t = tuple(m)
    return _POOL.setdefault(t, t)


def multiplicities(E: Monomial) -> List[Tuple[int, int]]:
    return [(i, len(list(g))) for i, g in itertools.groupby(E)]


@lru_cache(maxsize=None)
def _split_table(E: Monomial) -> Tuple[Tuple[Monomial, Monomial, int], ...]:
    groups = multiplicities(E)
    out = []
    for take in itertools.product(*(range(m + 1) for _, m in groups)):
        left: List[int] = []
        right: List[int] = []
        weight = 1
        for (i, m), a in zip(groups, take):
            left.extend([i] * a)
            right.extend([i] * (m - a))
            weight *= comb(m, a)
        out.append((intern(left), intern(right), weight))
    return tuple(out)


def splittings(E: Monomial) -> List[Tuple[Monomial, Monomial]]:
    """Every ordered pair ``(I, J)`` of standard monomials with ``I*J = E`` in S(L), each once."""
    return [(i, j) for i, j, _ in _split_table(intern(E))]


def coproduct(E: Monomial) -> Tuple[Tuple[Monomial, Monomial, int], ...]:
    """The coproduct of U(L) on a PBW monomial, as ``(I, J, weight)`` triples.

    ``Delta(e_a e_b ...) = prod (e_a (x) 1 + 1 (x) e_a)`` splits the factor
    positions into two ordered subwords, so a pair ``(I, J)`` from
    :func:`splittings` occurs ``prod_i binom(m_i, a_i)`` times, where ``m_i``
    and ``a_i`` are the multiplicities of index ``i`` in ``E`` and ``I``.
    """
    return _split_table(intern(E))


def monomials_up_to(dim: int, degree: int) -> List[Monomial]:
    """All standard monomials of degree <= ``degree``, by degree then lexicographically."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    return [intern(c) for d in range(degree + 1)
            for c in itertools.combinations_with_replacement(range(dim), d)]


def format_monomial(E: Monomial, names: Sequence[str]) -> str:
    """``(0, 0, 1)`` with names ``e1, e2`` -> ``e1^2*e2``; ``()`` -> ``1``."""
    if not E:
        return "1"
    parts = []
    for i, m in multiplicities(E):
        parts.append(names[i] if m == 1 else f"{names[i]}^{m}")
    return "*".join(parts)


_FACTOR_RE = re.compile(r"^(.+?)(?:\^(\d+))?$")


def parse_monomial(text: str, names: Sequence[str]) -> Monomial:
    text = text.strip()
    if text == "1":
        return ()
    idx = {n: i for i, n in enumerate(names)}
    out: List[int] = []
    for part in text.split("*"):
        m = _FACTOR_RE.match(part.strip())
        name, power = m.group(1), int(m.group(2) or 1)
        if name not in idx:
            raise ValueError(f"unknown basis name {name!r} in monomial {text!r}")
        out.extend([idx[name]] * power)
    return intern(sorted(out))


class Enveloping:
    """Straightening in U(L) for a fixed (validated) Lie algebra ``L``.

    Rewriting always resolves the leftmost inversion ``e_a e_b`` (``a > b``)
    as ``e_b e_a + [e_a, e_b]``.  Results are memoized per word.  The memo only
    ever gains entries whose values are fixed, so concurrent readers see either
    a miss or the final value.
    """

    def __init__(self, L: LieAlgebra):
        self.L = L
        self.one = L.field.one
        self._memo: Dict[Tuple[int, ...], UElement] = {}

    def _normal(self, w: Tuple[int, ...]) -> UElement:
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        for t in range(len(w) - 1):
            if w[t] > w[t + 1]:
                break
        else:
            res = {intern(w): self.one}
            self._memo[w] = res
            return res
        a, b = w[t], w[t + 1]
        head, tail = w[:t], w[t + 2:]
        res = dict(self._normal(head + (b, a) + tail))
        for k, c in self.L.bracket_basis(a, b).items():
            add_into(res, self._normal(head + (k,) + tail), c)
        self._memo[w] = res
        return res

    def normalize_word(self, w: Iterable[int]) -> UElement:
        w = tuple(w)
        for a in w:
            if not 0 <= a < self.L.dim:
                raise ValueError(f"letter {a} outside L")
        return dict(self._normal(w))

    def left_mul_basis(self, a: int, E: Monomial) -> UElement:
        """``e_a * E`` in normal form; the returned dict is shared and must not be mutated."""
        return self._normal((a,) + tuple(E))

    def left_mul(self, u, E: Monomial) -> UElement:
        """``u * E`` for ``u`` a vector of L."""
        acc: UElement = {}
        for a, c in u.items():
            add_into(acc, self.left_mul_basis(a, E), c)
        return acc

    def multiply(self, x: UElement, y: UElement) -> UElement:
        """General product of normal forms (used by tests and diagnostics)."""
        acc: UElement = {}
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                add_into(acc, self._normal(tuple(m1) + tuple(m2)), c1 * c2)
        return acc
