"""Left Leibniz algebras given by dense structure constants.

Convention: ``[e_i, e_j] = sum_k table[i][j][k] e_k`` and every left
multiplication ``L_x = [x, .]`` is a derivation::

    [x, [y, z]] = [[x, y], z] + [y, [x, z]]

Right-Leibniz tables fail :func:`check_leibniz` and are rejected, never
converted.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional

from . import submodules
from .errors import (
    DimensionMismatch,
    FieldMismatch,
    NotAnIdeal,
    NotASubalgebra,
    NotLeibnizError,
)
from .exactlin import (
    QQ,
    GF,
    Field,
    Matrix,
    Subspace,
    contains,
    from_columns,
    full_space,
    identity,
    intersect,
    kernel,
    lincomb,
    mat_mul,
    mat_vec,
    rank,
    rref,
    span,
    stack,
    unit,
    vadd,
    vsub,
    zero_space,
)


@dataclass(frozen=True)
class LeibnizAlgebra:
    field: Field
    table: tuple
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        F, n = self.field, len(self.table)
        rows = []
        for i, row in enumerate(self.table):
            if len(row) != n:
                raise DimensionMismatch(f"table row {i} has {len(row)} entries, expected {n}")
            out = []
            for j, v in enumerate(row):
                if len(v) != n:
                    raise DimensionMismatch(f"[e{i},e{j}] has {len(v)} coordinates, expected {n}")
                out.append(tuple(F(x) for x in v))
            rows.append(tuple(out))
        object.__setattr__(self, "table", tuple(rows))

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((self.field, self.table))
            self.__dict__["_hash"] = h
            return h

    @property
    def n(self) -> int:
        return len(self.table)

    dim = n

    def basis_vector(self, i: int):
        return unit(self.field, self.n, i)

    @cached_property
    def left_basis(self) -> tuple:
        """Matrices of L_{e_i}: column j is [e_i, e_j]."""
        n = self.n
        return tuple(from_columns([self.table[i][j] for j in range(n)], n) for i in range(n))

    @cached_property
    def right_basis(self) -> tuple:
        """Matrices of R_{e_j}: column i is [e_i, e_j]."""
        n = self.n
        return tuple(from_columns([self.table[i][j] for i in range(n)], n) for j in range(n))

    @cached_property
    def mult_ops(self) -> tuple:
        return self.left_basis + self.right_basis

    def bracket(self, x, y):
        F, n = self.field, self.n
        if len(x) != n or len(y) != n:
            raise DimensionMismatch("bracket arguments must live in the ambient space")
        out = [0] * n
        T = self.table
        for i, a in enumerate(x):
            if not a:
                continue
            Ti = T[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(Ti[j]):
                    if c:
                        out[k] += ab * c
        return tuple(F(v) for v in out)

    def left_mult(self, x) -> Matrix:
        F, n = self.field, self.n
        if len(x) != n:
            raise DimensionMismatch("vector length differs from algebra dimension")
        return _combine(F, x, self.left_basis, n)

    def right_mult(self, y) -> Matrix:
        F, n = self.field, self.n
        if len(y) != n:
            raise DimensionMismatch("vector length differs from algebra dimension")
        return _combine(F, y, self.right_basis, n)

    def zero(self) -> Subspace:
        return zero_space(self.field, self.n)

    def full(self) -> Subspace:
        return full_space(self.field, self.n)

    def span(self, vectors) -> Subspace:
        return span(self.field, [self.field.vector(v) for v in vectors], self.n)

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<LeibnizAlgebra{tag} dim={self.n} over {self.field}>"


def _combine(F, coeffs, mats, n):
    out = [[0] * n for _ in range(n)]
    for c, M in zip(coeffs, mats):
        if not c:
            continue
        for r in range(n):
            Mr = M[r]
            orow = out[r]
            for s in range(n):
                if Mr[s]:
                    orow[s] += c * Mr[s]
    return tuple(tuple(F(x) for x in r) for r in out)


def from_brackets(F: Field, n: int, brackets: dict, name=None) -> LeibnizAlgebra:
    """Build a table from ``{(i, j): vector}``; unlisted products are zero (0-based)."""
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (i, j), v in brackets.items():
        table[i][j] = list(v)
    return LeibnizAlgebra(F, tuple(tuple(tuple(v) for v in row) for row in table), name)


def check_leibniz(L: LeibnizAlgebra) -> list:
    """Basis triples (i, j, k) violating the left Leibniz identity (0-based)."""
    n = L.n
    e = [L.basis_vector(i) for i in range(n)]
    bad = []
    for i in range(n):
        for j in range(n):
            xy = L.table[i][j]
            for k in range(n):
                lhs = L.bracket(e[i], L.table[j][k])
                rhs = vadd(L.field, L.bracket(xy, e[k]), L.bracket(e[j], L.table[i][k]))
                if lhs != rhs:
                    bad.append((i, j, k))
    return bad


def validate(L: LeibnizAlgebra) -> LeibnizAlgebra:
    bad = check_leibniz(L)
    if bad:
        raise NotLeibnizError(bad)
    return L


def _check(L: LeibnizAlgebra, *spaces: Subspace):
    for U in spaces:
        if U.field != L.field:
            raise FieldMismatch(f"{U.field} subspace in an algebra over {L.field}")
        if U.ambient != L.n:
            raise DimensionMismatch(f"subspace of F^{U.ambient} in a {L.n}-dimensional algebra")


def bracket(L: LeibnizAlgebra, x, y):
    return L.bracket(x, y)


def left_mult(L: LeibnizAlgebra, x) -> Matrix:
    return L.left_mult(x)


def product_space(L: LeibnizAlgebra, U: Subspace, V: Subspace) -> Subspace:
    _check(L, U, V)
    return span(L.field, [L.bracket(u, v) for u in U.basis for v in V.basis], L.n)


def derived_algebra(L: LeibnizAlgebra) -> Subspace:
    return product_space(L, L.full(), L.full())


@dataclass(frozen=True)
class BracketClosedSubspace:
    space: Subspace
    is_subalgebra: bool
    is_left_ideal: bool
    is_right_ideal: bool

    @property
    def is_ideal(self) -> bool:
        return self.is_left_ideal and self.is_right_ideal


def _inside(U: Subspace, vectors) -> bool:
    return all(not any(U.reduce(v)) for v in vectors)


def is_subalgebra(L: LeibnizAlgebra, U: Subspace) -> bool:
    _check(L, U)
    return _inside(U, (L.bracket(u, v) for u in U.basis for v in U.basis))


def is_ideal(L: LeibnizAlgebra, U: Subspace) -> bool:
    _check(L, U)
    ops = L.mult_ops
    F = L.field
    return _inside(U, (mat_vec(F, T, u) for T in ops for u in U.basis))


def is_ideal_of(L: LeibnizAlgebra, U: Subspace, C: Subspace) -> bool:
    """U is an ideal of the subalgebra C (both ambient subspaces)."""
    return _inside(U, (L.bracket(c, u) for c in C.basis for u in U.basis)) and _inside(
        U, (L.bracket(u, c) for c in C.basis for u in U.basis)
    )


def classify_subspace(L: LeibnizAlgebra, U: Subspace) -> BracketClosedSubspace:
    _check(L, U)
    F = L.field
    left = _inside(U, (mat_vec(F, T, u) for T in L.left_basis for u in U.basis))
    right = _inside(U, (mat_vec(F, T, u) for T in L.right_basis for u in U.basis))
    return BracketClosedSubspace(U, is_subalgebra(L, U), left, right)


def is_abelian(L: LeibnizAlgebra, U: Subspace) -> bool:
    return product_space(L, U, U).dim == 0


def centralizer(L: LeibnizAlgebra, A: Subspace) -> Subspace:
    """{x : [x, a] = [a, x] = 0 for all a in A}."""
    _check(L, A)
    if not A.basis:
        return L.full()
    blocks = []
    for a in A.basis:
        blocks.append(L.right_mult(a))
        blocks.append(L.left_mult(a))
    return kernel(L.field, stack(*blocks), L.n)


def center(L: LeibnizAlgebra) -> Subspace:
    return centralizer(L, L.full())


def normalizer(L: LeibnizAlgebra, U: Subspace, within: Optional[Subspace] = None) -> Subspace:
    """Two-sided normalizer {x : [x, U] ⊆ U and [U, x] ⊆ U}, optionally intersected with ``within``."""
    _check(L, U)
    F = L.field
    Q = U.quotient_matrix
    if not Q or not U.basis:
        out = L.full()
    else:
        blocks = []
        for u in U.basis:
            blocks.append(mat_mul(F, Q, L.right_mult(u)))
            blocks.append(mat_mul(F, Q, L.left_mult(u)))
        out = kernel(F, stack(*blocks), L.n)
    return out if within is None else intersect(out, within)


def ideal_closure(L: LeibnizAlgebra, U: Subspace) -> Subspace:
    _check(L, U)
    return submodules.closure(L.field, L.mult_ops, U)


def core(L: LeibnizAlgebra, U: Subspace) -> Subspace:
    """Largest ideal of L contained in the subalgebra U."""
    _check(L, U)
    if not is_subalgebra(L, U):
        raise NotASubalgebra("core is defined for subalgebras")
    F = L.field
    V = U
    while V.basis:
        Q = V.quotient_matrix
        if not Q:
            return V
        blocks = [mat_mul(F, Q, T) for T in L.mult_ops]
        W = intersect(V, kernel(F, stack(*blocks), L.n))
        if W == V:
            return V
        V = W
    return V


def minimal_ideals(L: LeibnizAlgebra) -> list:
    """All minimal ideals in (dimension, canonical basis) order.

    Over GF(p) this is exhaustive over cyclic ideals.  Over Q it decomposes
    the socle; an infinite family raises :class:`InfinitelyMany` and an
    uncertifiable decomposition raises :class:`Indeterminate`.
    """
    return submodules.minimal_submodules(L.field, L.mult_ops, L.n)


def first_minimal_ideal(L: LeibnizAlgebra, within: Optional[Subspace] = None) -> Subspace:
    """The minimal ideal every "pick a minimal ideal" step uses."""
    return submodules.first_minimal_submodule(L.field, L.mult_ops, L.n, within)


def socle(L: LeibnizAlgebra) -> Subspace:
    if L.n == 0:
        return L.zero()
    return submodules.socle(L.field, L.mult_ops, L.n)


class Quotient(NamedTuple):
    algebra: LeibnizAlgebra
    projection: Matrix
    section: Matrix


def quotient(L: LeibnizAlgebra, A: Subspace) -> Quotient:
    """L/A on the coset coordinates of A's non-pivot columns."""
    _check(L, A)
    if not is_ideal(L, A):
        raise NotAnIdeal("quotient needs an ideal")
    F = L.field
    P = A.quotient_matrix
    free = A.free_columns
    m = len(free)
    reps = [unit(F, L.n, c) for c in free]
    table = tuple(
        tuple(A.quotient_coords(L.bracket(reps[a], reps[b])) for b in range(m)) for a in range(m)
    )
    S = from_columns(reps, L.n) if reps else tuple(() for _ in range(L.n))
    name = f"{L.name}/A" if L.name else None
    return Quotient(LeibnizAlgebra(F, table, name), P if P else (), S)


class Restriction(NamedTuple):
    algebra: LeibnizAlgebra
    embedding: Matrix


def restrict(L: LeibnizAlgebra, U: Subspace) -> Restriction:
    """U as an algebra in its canonical basis."""
    _check(L, U)
    if not is_subalgebra(L, U):
        raise NotASubalgebra("restrict needs a bracket-closed subspace")
    k = U.dim
    table = tuple(tuple(U.coords(L.bracket(a, b)) for b in U.basis) for a in U.basis)
    E = from_columns(U.basis, L.n) if k else tuple(() for _ in range(L.n))
    return Restriction(LeibnizAlgebra(L.field, table), E)


def embed(F: Field, E: Matrix, v):
    """Map subalgebra coordinates to ambient coordinates."""
    n = len(E)
    cols = list(zip(*E)) if E and E[0] else []
    return lincomb(F, v, cols, n)


def pullback(L: LeibnizAlgebra, U: Subspace, W: Subspace) -> Subspace:
    """Ambient image of a subspace W given in U's coordinates."""
    return span(L.field, [lincomb(L.field, w, U.basis, L.n) for w in W.basis], L.n)


def to_coords(U: Subspace, W: Subspace) -> Subspace:
    """W ⊆ U expressed in U's canonical coordinates."""
    return span(U.field, [U.coords(w) for w in W.basis], U.dim)


def project(L: LeibnizAlgebra, A: Subspace, U: Subspace) -> Subspace:
    """Image of U in L/A coordinates."""
    return span(L.field, [A.quotient_coords(u) for u in U.basis], L.n - A.dim)


def lift(L: LeibnizAlgebra, A: Subspace, Ubar: Subspace) -> Subspace:
    """Full preimage in L of a subspace of L/A."""
    reps = A.complement_basis()
    vecs = [lincomb(L.field, u, reps, L.n) for u in Ubar.basis]
    return span(L.field, list(A.basis) + vecs, L.n)


def leib_ideal(L: LeibnizAlgebra) -> Subspace:
    """span{[x, x]}: squares and polarised squares of basis vectors."""
    F, n = L.field, L.n
    vecs = []
    for i in range(n):
        vecs.append(L.table[i][i])
        for j in range(i + 1, n):
            vecs.append(vadd(F, L.table[i][j], L.table[j][i]))
    return span(F, vecs, n)


def is_lie(L: LeibnizAlgebra) -> bool:
    return leib_ideal(L).dim == 0


def direct_sum(L1: LeibnizAlgebra, L2: LeibnizAlgebra, name=None) -> LeibnizAlgebra:
    if L1.field != L2.field:
        raise FieldMismatch("direct sum over different fields")
    F = L1.field
    n1, n2 = L1.n, L2.n
    n = n1 + n2
    z = (F.zero,)
    table = [[(F.zero,) * n for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            table[i][j] = L1.table[i][j] + z * n2
    for i in range(n2):
        for j in range(n2):
            table[n1 + i][n1 + j] = z * n1 + L2.table[i][j]
    return LeibnizAlgebra(F, tuple(tuple(r) for r in table), name)


def change_basis(L: LeibnizAlgebra, P: Matrix) -> LeibnizAlgebra:
    """Structure constants in the basis given by the columns of invertible P."""
    F, n = L.field, L.n
    if rank(F, P, n) != n:
        raise ValueError("basis change must be invertible")
    cols = list(zip(*P))
    Pinv = _inverse(F, P)
    table = tuple(
        tuple(mat_vec(F, Pinv, L.bracket(cols[i], cols[j])) for j in range(n)) for i in range(n)
    )
    return LeibnizAlgebra(F, table, L.name)


def _inverse(F: Field, P: Matrix) -> Matrix:
    n = len(P)
    aug = [tuple(P[i]) + identity(F, n)[i] for i in range(n)]
    red, piv = rref(F, aug, 2 * n)
    if piv[:n] != tuple(range(n)) or len(red) != n:
        raise ValueError("singular matrix")
    return tuple(tuple(r[n:]) for r in red)


inverse = _inverse


# ------------------------------------------------------------------- JSON

def field_to_json(F: Field):
    return {"p": F.p} if F.p else "Q"


def field_from_json(obj) -> Field:
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and "p" in obj:
        return GF(int(obj["p"]))
    raise ValueError(f"unknown field descriptor {obj!r}")


def to_json(L: LeibnizAlgebra) -> dict:
    F = L.field
    out = {}
    if L.name is not None:
        out["name"] = L.name
    out["dim"] = L.n
    out["field"] = field_to_json(F)
    out["table"] = [[[F.fmt(x) for x in v] for v in row] for row in L.table]
    return out


def from_json(obj, check: bool = True) -> LeibnizAlgebra:
    F = field_from_json(obj["field"])
    n = int(obj["dim"])
    table = obj["table"]
    if len(table) != n:
        raise DimensionMismatch(f"table has {len(table)} rows for dim {n}")
    for row in table:
        for v in row:
            for x in v:
                if not isinstance(x, str):
                    raise ValueError(f"scalars must be strings, got {x!r}")
    L = LeibnizAlgebra(F, tuple(tuple(tuple(F.parse(x) for x in v) for v in row) for row in table), obj.get("name"))
    return validate(L) if check else L


def dumps(L: LeibnizAlgebra) -> str:
    return json.dumps(to_json(L))


def loads(s: str, check: bool = True) -> LeibnizAlgebra:
    return from_json(json.loads(s), check)


def subspace_to_json(U: Subspace) -> list:
    return [[U.field.fmt(x) for x in r] for r in U.basis]


def vector_to_json(F: Field, v) -> list:
    return [F.fmt(x) for x in v]


def subspace_from_json(F: Field, rows, n: int) -> Subspace:
    return span(F, [F.vector(r) for r in rows], n)


def parse_subspace(F: Field, text: str, n: int) -> Subspace:
    """Parse ``"1,0,0;0,1,1"`` (semicolon-separated vectors)."""
    text = text.strip()
    if not text:
        return zero_space(F, n)
    vecs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        v = F.vector(x for x in chunk.split(","))
        if len(v) != n:
            raise DimensionMismatch(f"vector {chunk!r} does not have {n} coordinates")
        vecs.append(v)
    return span(F, vecs, n)


__all__ = [
    "LeibnizAlgebra", "BracketClosedSubspace", "Quotient", "Restriction",
    "from_brackets", "check_leibniz", "validate", "bracket", "left_mult", "product_space",
    "derived_algebra", "classify_subspace", "is_subalgebra", "is_ideal", "is_ideal_of",
    "is_abelian", "centralizer", "center", "normalizer", "ideal_closure", "core",
    "minimal_ideals", "first_minimal_ideal", "socle", "quotient", "restrict", "embed",
    "pullback", "to_coords", "project", "lift", "leib_ideal", "is_lie", "direct_sum",
    "change_basis", "inverse", "to_json", "from_json", "dumps", "loads",
    "subspace_to_json", "subspace_from_json", "vector_to_json", "parse_subspace",
    "contains", "vsub",
]
