"""The embedding of an extension N of M by L into the wreath product M Wr L.

``phi((x, u)) = (f_(x,u), u)`` where ``f_(x,u)`` is linear in ``(x, u)``, so
the whole map is stored as two tables over standard monomials ``E`` of
degree at most ``D``:

* ``fo[i, E] = f_(0, e_i)(E)``
* ``fx[q, E] = f_(z_q, 0)(E)``

Both are defined by recursion on ``deg E``.  Write ``E = e_j R`` with ``e_j``
the least factor and ``e_k`` the least factor of ``R``, and put

    rhs(i, j; A) = f_(g(e_i,e_j),0)(A) + f_(0,[e_i,e_j])(A) - [f_(0,e_i), f_(0,e_j)](A)

Then ``fo[i, E] = rhs(i, j; R) / 2`` when ``i <= k``, and otherwise
``fo[i, E] = rhs(i, j; R) + f_(0,e_j)(e_i R)``.  The product ``e_i R`` is
straightened in U(L); its leading monomial ``e_k G`` falls back into the
first case and the rest have lower degree.  For M the rule is
``fx[q, E] = f_(z_q e_j, 0)(R) - [f_(z_q,0), f_(0,e_j)](R)``.

Certificates then check the three bracket relations that characterise a
homomorphism, the homomorphism property itself on basis pairs, and
injectivity, all exactly and within the degree budget.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from .extension import ExtensionAlgebra, ExtensionData, InvalidFactorSet, build_extension, validate_extension_data
from .hom import HomSpace, TruncatedHom, WreathElement
from .lie import ValidationReport, Violation
from .linalg import Vector, add_into, vsub
from .pbw import Enveloping, Monomial, coproduct, monomials_up_to
from .scalars import CharacteristicTwo

__all__ = [
    "Certificate",
    "EmbeddingTables",
    "TableBuilder",
    "build_tables",
    "check_tables",
    "eval_phi",
    "iter_homomorphism",
    "iter_relations",
    "verify_all",
    "verify_homomorphism",
    "verify_injectivity",
    "verify_relations",
]

Key = Tuple[int, Monomial]


class _Recursion:
    """The defining formulas, evaluated against whatever ``fo``/``fx`` lookups a subclass supplies."""

    def __init__(self, data: ExtensionData, enveloping: Enveloping | None = None):
        self.data = data
        self.M, self.L = data.M, data.L
        self.F = data.field
        self.U = enveloping or Enveloping(data.L)

    def fo(self, i: int, E: Monomial) -> Vector:
        raise NotImplementedError

    def fx(self, q: int, E: Monomial) -> Vector:
        raise NotImplementedError

    def fx_vec(self, x: Mapping[int, object], A: Monomial) -> Vector:
        acc: Vector = {}
        for q, c in x.items():
            add_into(acc, self.fx(q, A), c)
        return acc

    def fo_vec(self, u: Mapping[int, object], A: Monomial) -> Vector:
        acc: Vector = {}
        for i, c in u.items():
            add_into(acc, self.fo(i, A), c)
        return acc

    def _bracket(self, left, right, R: Monomial) -> Vector:
        acc: Vector = {}
        for I, J, w in coproduct(R):
            a = left(I)
            if a:
                b = right(J)
                if b:
                    add_into(acc, self.M.bracket(a, b), w)
        return acc

    def rhs(self, i: int, j: int, R: Monomial) -> Vector:
        acc = self.fx_vec(self.data.g_basis(i, j), R)
        add_into(acc, self.fo_vec(self.L.bracket_basis(i, j), R))
        add_into(acc, self._bracket(lambda I: self.fo(i, I), lambda J: self.fo(j, J), R), -1)
        return acc

    def define_fo(self, i: int, E: Monomial) -> Vector:
        n = len(E)
        if n == 0:
            return {}
        if n == 1:
            return {q: self.F.half(c) for q, c in self.data.g_basis(i, E[0]).items()}
        j, R = E[0], E[1:]
        if i <= R[0]:
            return {q: self.F.half(c) for q, c in self.rhs(i, j, R).items()}
        acc = self.rhs(i, j, R)
        for A, c in self.U.left_mul_basis(i, R).items():
            add_into(acc, self.fo(j, A), c)
        return acc

    def define_fx(self, q: int, E: Monomial) -> Vector:
        if not E:
            return {q: self.F.one}
        j, R = E[0], E[1:]
        acc = self.fx_vec(self.data.action.act_basis(self.M.e(q), j), R)
        add_into(acc, self._bracket(lambda I: self.fx(q, I), lambda J: self.fo(j, J), R), -1)
        return acc


class TableBuilder(_Recursion):
    """Top-down memoized evaluation of the tables; any query order gives the same values."""

    def __init__(self, data: ExtensionData, enveloping: Enveloping | None = None):
        super().__init__(data, enveloping)
        self._fo: Dict[Key, Vector] = {}
        self._fx: Dict[Key, Vector] = {}

    def fo(self, i: int, E: Monomial) -> Vector:
        key = (i, E)
        v = self._fo.get(key)
        if v is None:
            v = self._fo[key] = self.define_fo(i, E)
        return v

    def fx(self, q: int, E: Monomial) -> Vector:
        key = (q, E)
        v = self._fx.get(key)
        if v is None:
            v = self._fx[key] = self.define_fx(q, E)
        return v

    def materialize(self, degree: int) -> "EmbeddingTables":
        fo, fx = {}, {}
        for E in monomials_up_to(self.L.dim, degree):
            for i in range(self.L.dim):
                v = self.fo(i, E)
                if v:
                    fo[(i, E)] = v
            for q in range(self.M.dim):
                v = self.fx(q, E)
                if v:
                    fx[(q, E)] = v
        return EmbeddingTables(degree, fo, fx, self.data)


@dataclass(frozen=True)
class EmbeddingTables:
    """Materialized ``fo``/``fx`` tables up to degree ``D``; zero entries are omitted."""

    D: int
    fo: Mapping[Key, Vector]
    fx: Mapping[Key, Vector]
    data: ExtensionData

    def fo_value(self, i: int, E: Monomial) -> Vector:
        return self.fo.get((i, E), {})

    def fx_value(self, q: int, E: Monomial) -> Vector:
        return self.fx.get((q, E), {})

    def row_fo(self, i: int) -> TruncatedHom:
        return TruncatedHom({E: v for (k, E), v in self.fo.items() if k == i}, self.D)

    def row_fx(self, q: int) -> TruncatedHom:
        return TruncatedHom({E: v for (k, E), v in self.fx.items() if k == q}, self.D)

    def hom_of(self, x: Mapping[int, object], u: Mapping[int, object]) -> TruncatedHom:
        """``f_(x,u) = sum x_q fx[q] + sum u_i fo[i]``."""
        acc: Dict[Monomial, Vector] = {}
        for table, coeffs in ((self.fx, x), (self.fo, u)):
            for (k, E), v in table.items():
                c = coeffs.get(k)
                if c:
                    add_into(acc.setdefault(E, {}), v, c)
        return TruncatedHom({E: v for E, v in acc.items() if v}, self.D)

    def with_entry(self, table: str, index: int, E: Monomial, delta: Vector) -> "EmbeddingTables":
        """Copy with ``delta`` added to one entry (for mutation testing)."""
        fo, fx = dict(self.fo), dict(self.fx)
        target = fo if table == "fo" else fx
        v = add_into(dict(target.get((index, E), {})), delta)
        if v:
            target[(index, E)] = v
        else:
            target.pop((index, E), None)
        return EmbeddingTables(self.D, fo, fx, self.data)

    def __eq__(self, other):
        return (isinstance(other, EmbeddingTables) and self.D == other.D
                and dict(self.fo) == dict(other.fo) and dict(self.fx) == dict(other.fx))


def build_tables(data: ExtensionData, D: int, check: bool = True,
                 enveloping: Enveloping | None = None) -> EmbeddingTables:
    if data.field.characteristic == 2:
        raise CharacteristicTwo("the construction divides by 2")
    if D < 1:
        raise ValueError("truncation degree must be at least 1")
    if check:
        report = validate_extension_data(data)
        if not report.ok:
            raise InvalidFactorSet(report)
    return TableBuilder(data, enveloping).materialize(D)


class _TableReader(_Recursion):
    def __init__(self, tables: EmbeddingTables, enveloping: Enveloping | None = None):
        super().__init__(tables.data, enveloping)
        self.tables = tables

    def fo(self, i, E):
        return self.tables.fo_value(i, E)

    def fx(self, q, E):
        return self.tables.fx_value(q, E)


def check_tables(t: EmbeddingTables, enveloping: Enveloping | None = None) -> ValidationReport:
    """Every stored entry must equal its defining formula evaluated on the other stored entries.

    Violations are tagged ``fo`` or ``fx`` with instance ``(index, *E)``.
    """
    reader = _TableReader(t, enveloping)
    report = ValidationReport()
    L, M = t.data.L, t.data.M
    for E in monomials_up_to(L.dim, t.D):
        for i in range(L.dim):
            report.checked += 1
            r = vsub(t.fo_value(i, E), reader.define_fo(i, E))
            if r:
                report.violations.append(Violation("fo", (i,) + E, r))
        for q in range(M.dim):
            report.checked += 1
            r = vsub(t.fx_value(q, E), reader.define_fx(q, E))
            if r:
                report.violations.append(Violation("fx", (q,) + E, r))
    return report


def eval_phi(x: Mapping[int, object], u: Mapping[int, object], t: EmbeddingTables) -> WreathElement:
    t.data.M.check_vector(x)
    t.data.L.check_vector(u)
    return WreathElement(t.hom_of(x, u), {k: c for k, c in u.items() if c})


@dataclass(frozen=True)
class Certificate:
    """One exact-equality instance; ``monomial`` is ``None`` for leg and injectivity checks."""

    relation: str
    instance: Tuple[int, ...]
    monomial: Optional[Monomial]
    residual: Vector = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.residual

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


def _space(t: EmbeddingTables, enveloping: Enveloping | None) -> HomSpace:
    return HomSpace(t.data.M, t.data.L, enveloping)


def iter_relations(t: EmbeddingTables, enveloping: Enveloping | None = None) -> Iterator[Certificate]:
    """R1 on pairs ``i <= j`` and R2 on ``(q, j)`` at degree <= D-1; R3 on ``q <= r`` at degree <= D."""
    S = _space(t, enveloping)
    d, M, L = t.data, t.data.M, t.data.L
    monos_low = monomials_up_to(L.dim, t.D - 1)
    monos_all = monomials_up_to(L.dim, t.D)
    fo = [t.row_fo(i) for i in range(L.dim)]
    fx = [t.row_fx(q) for q in range(M.dim)]

    for i, j in itertools.combinations_with_replacement(range(L.dim), 2):
        lhs = t.hom_of(d.g_basis(i, j), L.bracket_basis(i, j))
        rhs = S.bracket(fo[i], fo[j]) + S.act(fo[i], L.e(j)) - S.act(fo[j], L.e(i))
        for E in monos_low:
            yield Certificate("R1", (i, j), E, vsub(lhs(E), rhs(E)))

    for q in range(M.dim):
        for j in range(L.dim):
            lhs = t.hom_of(d.action.act_basis(M.e(q), j), {})
            rhs = S.bracket(fx[q], fo[j]) + S.act(fx[q], L.e(j))
            for E in monos_low:
                yield Certificate("R2", (q, j), E, vsub(lhs(E), rhs(E)))

    for q, r in itertools.combinations_with_replacement(range(M.dim), 2):
        lhs = t.hom_of(M.bracket_basis(q, r), {})
        rhs = S.bracket(fx[q], fx[r])
        for E in monos_all:
            yield Certificate("R3", (q, r), E, vsub(lhs(E), rhs(E)))


def verify_relations(t: EmbeddingTables, enveloping: Enveloping | None = None) -> List[Certificate]:
    return list(iter_relations(t, enveloping))


def iter_homomorphism(t: EmbeddingTables, ext: ExtensionAlgebra | None = None,
                      enveloping: Enveloping | None = None) -> Iterator[Certificate]:
    """Compare ``phi([a, b])`` with ``[phi(a), phi(b)]`` for basis elements ``a <= b`` of N.

    ``ext`` defaults to the extension built from the tables' data; passing a
    different one checks the tables against that algebra instead.
    """
    if t.D < 2:
        raise ValueError("homomorphism certificates need D >= 2")
    S = _space(t, enveloping)
    ext = ext or build_extension(t.data, check=False)
    N = ext.N
    images = [eval_phi(*ext.split(N.e(a)), t) for a in range(N.dim)]
    monos = monomials_up_to(t.data.L.dim, t.D - 1)
    for a, b in itertools.combinations_with_replacement(range(N.dim), 2):
        target = eval_phi(*ext.split(N.bracket_basis(a, b)), t)
        got = S.wreath_bracket(images[a], images[b])
        yield Certificate("HOM", (a, b), None, vsub(target.leg, got.leg))
        for E in monos:
            yield Certificate("HOM", (a, b), E, vsub(target.hom(E), got.hom(E)))


def verify_homomorphism(t: EmbeddingTables, ext: ExtensionAlgebra | None = None,
                        enveloping: Enveloping | None = None) -> List[Certificate]:
    return list(iter_homomorphism(t, ext, enveloping))


def verify_injectivity(t: EmbeddingTables, trials: int = 100, seed: int = 0) -> Certificate:
    """Recover ``(x, u)`` from ``phi((x, u))`` as ``(hom(1), leg)``.

    Runs the zero element, every basis element, then ``trials`` random
    elements.  The residual is the first recovery error, in N-coordinates.
    """
    M, L, F = t.data.M, t.data.L, t.data.field
    m = M.dim
    rng = random.Random(seed)
    cases = [({}, {})]
    cases += [(M.e(q), {}) for q in range(m)] + [({}, L.e(i)) for i in range(L.dim)]
    for _ in range(trials):
        x = {q: F(c) for q in range(m) if (c := rng.randint(-5, 5))}
        u = {i: F(c) for i in range(L.dim) if (c := rng.randint(-5, 5))}
        cases.append((x, u))
    for x, u in cases:
        img = eval_phi(x, u, t)
        dx = vsub(img.hom(()), x)
        du = vsub(img.leg, u)
        if dx or du:
            residual = dict(dx)
            residual.update({m + k: c for k, c in du.items()})
            return Certificate("INJ", (len(cases),), None, residual)
    return Certificate("INJ", (len(cases),), None, {})


def verify_all(t: EmbeddingTables, trials: int = 100, seed: int = 0,
               enveloping: Enveloping | None = None) -> Dict[str, List[Certificate]]:
    env = enveloping or Enveloping(t.data.L)
    out: Dict[str, List[Certificate]] = {"R1": [], "R2": [], "R3": [], "HOM": [], "INJ": []}
    for c in iter_relations(t, env):
        out[c.relation].append(c)
    if t.D >= 2:
        out["HOM"] = verify_homomorphism(t, enveloping=env)
    out["INJ"] = [verify_injectivity(t, trials, seed)]
    return out
