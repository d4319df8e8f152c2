"""Truncated elements of Hom_K(U(L), M), the convolution bracket, and M Wr L.

A :class:`TruncatedHom` knows its values on every standard monomial up to
``valid_degree``.  The L-action ``(f.u)(E) = f(uE)`` reads one degree
higher than it writes, so every action spends one unit of that budget.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Mapping

from .lie import LieAlgebra
from .linalg import Vector, add_into, vscale
from .pbw import Enveloping, Monomial, coproduct, monomials_up_to

__all__ = ["DegreeBudgetExceeded", "HomSpace", "TruncatedHom", "WreathElement"]


class DegreeBudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class TruncatedHom:
    """A linear map U(L) -> M known on monomials of degree <= ``valid_degree``.

    Absent monomials map to zero.  Stored vectors must not be mutated.
    """

    values: Mapping[Monomial, Vector]
    valid_degree: int

    def __post_init__(self):
        for E in self.values:
            if len(E) > self.valid_degree:
                raise ValueError(f"entry at degree {len(E)} exceeds valid degree {self.valid_degree}")

    def __call__(self, E: Monomial) -> Vector:
        if len(E) > self.valid_degree:
            raise DegreeBudgetExceeded(f"monomial of degree {len(E)} beyond valid degree {self.valid_degree}")
        return self.values.get(E, {})

    def evaluate(self, x: Mapping[Monomial, object]) -> Vector:
        """Value on a normal-form element of U(L), extended linearly."""
        acc: Vector = {}
        for E, c in x.items():
            v = self(E)
            if v:
                add_into(acc, v, c)
        return acc

    def restrict(self, degree: int) -> "TruncatedHom":
        degree = min(degree, self.valid_degree)
        return TruncatedHom({E: v for E, v in self.values.items() if len(E) <= degree}, degree)

    def __add__(self, other: "TruncatedHom") -> "TruncatedHom":
        d = min(self.valid_degree, other.valid_degree)
        acc: Dict[Monomial, Vector] = {}
        for h in (self, other):
            for E, v in h.values.items():
                if len(E) <= d:
                    add_into(acc.setdefault(E, {}), v)
        return TruncatedHom({E: v for E, v in acc.items() if v}, d)

    def scale(self, c) -> "TruncatedHom":
        return TruncatedHom({E: w for E, v in self.values.items() if (w := vscale(v, c))}, self.valid_degree)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "TruncatedHom") -> "TruncatedHom":
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.values.values())

    def same_values(self, other: "TruncatedHom", degree: int | None = None) -> bool:
        """Equality of values on monomials of degree <= ``degree`` (default: common budget)."""
        if degree is None:
            degree = min(self.valid_degree, other.valid_degree)
        keys = {E for E in self.values if len(E) <= degree} | {E for E in other.values if len(E) <= degree}
        return all(self(E) == other(E) for E in keys)


@dataclass(frozen=True)
class WreathElement:
    hom: TruncatedHom
    leg: Vector = field(default_factory=dict)


class HomSpace:
    """Hom_K(U(L), M) truncated at a degree, with its bracket and L-action."""

    def __init__(self, M: LieAlgebra, L: LieAlgebra, enveloping: Enveloping | None = None):
        self.M = M
        self.L = L
        self.U = enveloping or Enveloping(L)

    def monomials(self, degree: int):
        return monomials_up_to(self.L.dim, degree)

    def zero(self, degree: int) -> TruncatedHom:
        return TruncatedHom({}, degree)

    def from_values(self, values: Mapping[Monomial, Vector], degree: int) -> TruncatedHom:
        return TruncatedHom({E: dict(v) for E, v in values.items() if v}, degree)

    def bracket_at(self, f: TruncatedHom, h: TruncatedHom, E: Monomial) -> Vector:
        """``[f, h](E) = sum over coproduct terms of weight * [f(I), h(J)]``."""
        acc: Vector = {}
        for I, J, w in coproduct(E):
            a = f(I)
            if not a:
                continue
            b = h(J)
            if b:
                add_into(acc, self.M.bracket(a, b), w)
        return acc

    def bracket(self, f: TruncatedHom, h: TruncatedHom) -> TruncatedHom:
        d = min(f.valid_degree, h.valid_degree)
        out = {}
        for E in self.monomials(d):
            v = self.bracket_at(f, h, E)
            if v:
                out[E] = v
        return TruncatedHom(out, d)

    def act_at(self, f: TruncatedHom, u: Mapping[int, object], E: Monomial) -> Vector:
        return f.evaluate(self.U.left_mul(u, E))

    def act(self, f: TruncatedHom, u: Mapping[int, object]) -> TruncatedHom:
        """``(f.u)(E) = f(uE)``; the result is valid one degree lower."""
        if f.valid_degree < 1:
            raise DegreeBudgetExceeded("the action needs valid_degree >= 1")
        d = f.valid_degree - 1
        out = {}
        for E in self.monomials(d):
            v = self.act_at(f, u, E)
            if v:
                out[E] = v
        return TruncatedHom(out, d)

    def wreath_bracket(self, a: WreathElement, b: WreathElement) -> WreathElement:
        """``[(f,u),(h,v)] = ([f,h] + f.v - h.u, [u,v])``."""
        d = min(a.hom.valid_degree, b.hom.valid_degree)
        if d < 1:
            raise DegreeBudgetExceeded("wreath bracket needs valid_degree >= 1")
        hom = self.bracket(a.hom, b.hom).restrict(d - 1)
        if b.leg:
            hom = hom + self.act(a.hom, b.leg)
        if a.leg:
            hom = hom - self.act(b.hom, a.leg)
        return WreathElement(hom.restrict(d - 1), self.L.bracket(a.leg, b.leg))

    def random_hom(self, rng: random.Random, degree: int, density: float = 0.6, span: int = 3) -> TruncatedHom:
        F = self.M.field
        out = {}
        for E in self.monomials(degree):
            v = {}
            for q in range(self.M.dim):
                if rng.random() < density:
                    c = rng.randint(-span, span)
                    if c:
                        v[q] = F(c)
            if v:
                out[E] = v
        return TruncatedHom(out, degree)
