"""Exact scalars and canonical linear algebra over Q and GF(p).

Scalars are plain Python values: ``fractions.Fraction`` over Q and ``int``
residues in ``[0, p)`` over GF(p).  Vectors are tuples, matrices are tuples
of row tuples acting on column vectors.  Every subspace is stored through its
reduced row-echelon basis, so subspace equality is tuple equality.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

import sympy

from .errors import DimensionMismatch, FieldMismatch

Vector = tuple
Matrix = tuple


@dataclass(frozen=True)
class Field:
    kind: str = "rationals"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p is not None:
                raise ValueError("rationals carry no modulus")
        elif self.kind == "prime_field":
            if self.p is None or self.p < 2 or not sympy.isprime(self.p):
                raise ValueError(f"modulus must be prime, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def char(self) -> int:
        return self.p or 0

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or scalar string into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def parse(self, s: str):
        s = s.strip()
        if self.p:
            return self(Fraction(s))
        return Fraction(s)

    def fmt(self, x) -> str:
        if self.p:
            return str(x % self.p)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("division by zero in " + str(self))
        if self.p:
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def elements(self):
        if not self.p:
            raise ValueError("Q is infinite")
        return range(self.p)

    def vector(self, xs) -> Vector:
        return tuple(self(x) for x in xs)

    def matrix(self, rows) -> Matrix:
        return tuple(tuple(self(x) for x in r) for r in rows)

    def __str__(self):
        return f"GF({self.p})" if self.p else "Q"


QQ = Field()


def GF(p: int) -> Field:
    return Field("prime_field", p)


# ---------------------------------------------------------------- vectors

def vzero(F: Field, n: int) -> Vector:
    return (F.zero,) * n


def unit(F: Field, n: int, i: int) -> Vector:
    return tuple(F.one if j == i else F.zero for j in range(n))


def vadd(F: Field, u, v) -> Vector:
    if F.p:
        p = F.p
        return tuple((a + b) % p for a, b in zip(u, v))
    return tuple(a + b for a, b in zip(u, v))


def vsub(F: Field, u, v) -> Vector:
    if F.p:
        p = F.p
        return tuple((a - b) % p for a, b in zip(u, v))
    return tuple(a - b for a, b in zip(u, v))


def vscale(F: Field, c, v) -> Vector:
    if F.p:
        p = F.p
        return tuple(c * a % p for a in v)
    return tuple(c * a for a in v)


def lincomb(F: Field, coeffs, vectors, n: int) -> Vector:
    out = [0] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    if F.p:
        return tuple(x % F.p for x in out)
    return tuple(Fraction(x) for x in out)


def is_zero(v) -> bool:
    return not any(v)


# --------------------------------------------------------------- matrices

def identity(F: Field, n: int) -> Matrix:
    return tuple(unit(F, n, i) for i in range(n))


def zero_matrix(F: Field, rows: int, cols: int) -> Matrix:
    return tuple((F.zero,) * cols for _ in range(rows))


def transpose(M: Matrix, ncols: Optional[int] = None) -> Matrix:
    if not M:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*M))


def mat_mul(F: Field, A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return ()
    if not B:
        return tuple(() for _ in A)
    cols = list(zip(*B))
    p = F.p
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a]
        r = []
        for col in cols:
            s = 0
            for k, a in nz:
                b = col[k]
                if b:
                    s += a * b
            r.append(s % p if p else Fraction(s))
        out.append(tuple(r))
    return tuple(out)


def mat_vec(F: Field, A: Matrix, v) -> Vector:
    p = F.p
    nz = [(k, b) for k, b in enumerate(v) if b]
    out = []
    for row in A:
        s = 0
        for k, b in nz:
            a = row[k]
            if a:
                s += a * b
        out.append(s % p if p else Fraction(s))
    return tuple(out)


def mat_add(F: Field, A: Matrix, B: Matrix) -> Matrix:
    return tuple(vadd(F, r, s) for r, s in zip(A, B))


def mat_sub(F: Field, A: Matrix, B: Matrix) -> Matrix:
    return tuple(vsub(F, r, s) for r, s in zip(A, B))


def mat_scale(F: Field, c, A: Matrix) -> Matrix:
    return tuple(vscale(F, c, r) for r in A)


def mat_is_zero(A: Matrix) -> bool:
    return not any(any(r) for r in A)


def mat_pow(F: Field, A: Matrix, k: int) -> Matrix:
    n = len(A)
    out = identity(F, n)
    base = A
    while k:
        if k & 1:
            out = mat_mul(F, out, base)
        k >>= 1
        if k:
            base = mat_mul(F, base, base)
    return out


def trace(F: Field, A: Matrix):
    s = sum(A[i][i] for i in range(len(A)))
    return s % F.p if F.p else Fraction(s)


def columns(M: Matrix) -> list:
    return [tuple(c) for c in zip(*M)] if M else []


def from_columns(cols: Sequence, nrows: int) -> Matrix:
    if not cols:
        return tuple(() for _ in range(nrows))
    return tuple(zip(*cols))


# ------------------------------------------------------------ elimination

def rref(F: Field, rows: Iterable, ncols: int):
    """Reduced row-echelon form of ``rows``.

    Returns ``(basis, pivots)`` with zero rows dropped; pivot entries are 1
    and pivot columns are zero elsewhere.
    """
    p = F.p
    m = [[x % p for x in r] for r in rows] if p else [list(r) for r in rows]
    for r in m:
        if len(r) != ncols:
            raise DimensionMismatch(f"row of length {len(r)} in a {ncols}-column system")
    nrows = len(m)
    pivots = []
    top = 0
    for c in range(ncols):
        if top == nrows:
            break
        piv = None
        for i in range(top, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[top], m[piv] = m[piv], m[top]
        row = m[top]
        lead = row[c]
        if lead != 1:
            inv = F.inv(lead)
            row = [x * inv % p for x in row] if p else [x * inv for x in row]
            m[top] = row
        for i in range(nrows):
            if i == top:
                continue
            f = m[i][c]
            if f:
                ri = m[i]
                if p:
                    m[i] = [(a - f * b) % p for a, b in zip(ri, row)]
                else:
                    m[i] = [a - f * b for a, b in zip(ri, row)]
        pivots.append(c)
        top += 1
    if not p:
        basis = tuple(tuple(Fraction(x) for x in r) for r in m[:top])
    else:
        basis = tuple(tuple(r) for r in m[:top])
    return basis, tuple(pivots)


def rank(F: Field, M: Matrix, ncols: Optional[int] = None) -> int:
    if ncols is None:
        ncols = len(M[0]) if M else 0
    return len(rref(F, M, ncols)[1])


# --------------------------------------------------------------- subspaces

@dataclass(frozen=True)
class Subspace:
    """A subspace of F^ambient held by its canonical RREF basis."""

    field: Field
    ambient: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple:
        return tuple(next(i for i, x in enumerate(r) if x) for r in self.basis)

    @cached_property
    def free_columns(self) -> tuple:
        piv = set(self.pivots)
        return tuple(c for c in range(self.ambient) if c not in piv)

    @property
    def codim(self) -> int:
        return self.ambient - self.dim

    def __le__(self, other: "Subspace") -> bool:
        return contains(other, self)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and contains(other, self)

    def reduce(self, v) -> Vector:
        """Remainder of ``v`` after clearing the pivot columns."""
        F = self.field
        out = list(v)
        p = F.p
        for piv, b in zip(self.pivots, self.basis):
            c = out[piv]
            if c:
                if p:
                    out = [(x - c * y) % p for x, y in zip(out, b)]
                else:
                    out = [x - c * y for x, y in zip(out, b)]
        return tuple(out)

    def quotient_coords(self, v) -> Vector:
        r = self.reduce(v)
        return tuple(r[c] for c in self.free_columns)

    def coords(self, v) -> Vector:
        """Coordinates of ``v`` (assumed in the subspace) in the canonical basis."""
        return tuple(v[c] for c in self.pivots)

    @cached_property
    def quotient_matrix(self) -> Matrix:
        """Matrix of ``v -> quotient_coords(v)``; its kernel is this subspace."""
        F = self.field
        piv_row = {c: i for i, c in enumerate(self.pivots)}
        rows = []
        for q in self.free_columns:
            row = []
            for c in range(self.ambient):
                if c in piv_row:
                    b = self.basis[piv_row[c]][q]
                    row.append((-b) % F.p if F.p else -b)
                else:
                    row.append(F.one if c == q else F.zero)
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def embedding(self) -> Matrix:
        """ambient x dim matrix whose columns are the basis vectors."""
        return from_columns(self.basis, self.ambient)

    def complement_basis(self) -> list:
        F = self.field
        return [unit(F, self.ambient, c) for c in self.free_columns]

    def sort_key(self):
        return (self.dim, tuple(tuple(F_key(x) for x in r) for r in self.basis))

    def vectors(self):
        """All vectors of the subspace (prime fields only)."""
        F = self.field
        for coeffs in itertools.product(F.elements(), repeat=self.dim):
            yield lincomb(F, coeffs, self.basis, self.ambient)

    def __repr__(self):
        F = self.field
        rows = "; ".join(",".join(F.fmt(x) for x in r) for r in self.basis)
        return f"Subspace({F}^{self.ambient}: [{rows}])"


def F_key(x):
    return (x.numerator, x.denominator) if isinstance(x, Fraction) else (x, 1)


def _check_same(U: Subspace, V: Subspace):
    if U.field != V.field:
        raise FieldMismatch(f"{U.field} vs {V.field}")
    if U.ambient != V.ambient:
        raise DimensionMismatch(f"ambient {U.ambient} vs {V.ambient}")


def span(F: Field, vectors: Iterable, n: int) -> Subspace:
    vs = [tuple(v) for v in vectors]
    for v in vs:
        if len(v) != n:
            raise DimensionMismatch(f"vector of length {len(v)} in F^{n}")
    if not F.p:
        for v in vs:
            for x in v:
                if not isinstance(x, (int, Fraction)):
                    raise FieldMismatch(f"non-rational entry {x!r}")
    basis, _ = rref(F, vs, n)
    return Subspace(F, n, basis)


canonical_span = span


def zero_space(F: Field, n: int) -> Subspace:
    return Subspace(F, n, ())


def full_space(F: Field, n: int) -> Subspace:
    return Subspace(F, n, identity(F, n))


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _check_same(U, V)
    if not V.basis:
        return U
    if not U.basis:
        return V
    return span(U.field, U.basis + V.basis, U.ambient)


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """Zassenhaus: reduce [u|u], [v|0]; rows with vanishing left half span U ∩ V."""
    _check_same(U, V)
    F, n = U.field, U.ambient
    if not U.basis or not V.basis:
        return zero_space(F, n)
    z = vzero(F, n)
    rows = [u + u for u in U.basis] + [v + z for v in V.basis]
    red, _ = rref(F, rows, 2 * n)
    inter = [r[n:] for r in red if not any(r[:n])]
    return span(F, inter, n)


def member(U: Subspace, v) -> bool:
    if len(v) != U.ambient:
        raise DimensionMismatch(f"vector of length {len(v)} in F^{U.ambient}")
    return not any(U.reduce(v))


def contains(U: Subspace, V: Subspace) -> bool:
    """V ⊆ U."""
    _check_same(U, V)
    return all(not any(U.reduce(v)) for v in V.basis)


def kernel(F: Field, M: Matrix, ncols: Optional[int] = None) -> Subspace:
    if ncols is None:
        ncols = len(M[0]) if M else 0
    red, pivots = rref(F, M, ncols)
    pset = set(pivots)
    vecs = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [F.zero] * ncols
        v[f] = F.one
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = (-row[f]) % F.p if F.p else -row[f]
        vecs.append(tuple(v))
    return span(F, vecs, ncols)


def image(F: Field, M: Matrix, nrows: Optional[int] = None) -> Subspace:
    """Column space of M."""
    if nrows is None:
        nrows = len(M)
    return span(F, columns(M), nrows)


def apply(F: Field, M: Matrix, U: Subspace, n_out: Optional[int] = None) -> Subspace:
    """Image of a subspace under a linear map."""
    n_out = len(M) if n_out is None else n_out
    return span(F, [mat_vec(F, M, u) for u in U.basis], n_out)


def preimage(F: Field, M: Matrix, U: Subspace, ncols: int) -> Subspace:
    """{x : Mx ∈ U}."""
    Q = U.quotient_matrix
    if not Q:
        return full_space(F, ncols)
    return kernel(F, mat_mul(F, Q, M), ncols)


def solve_affine(F: Field, A: Matrix, b, ncols: Optional[int] = None):
    """Solve ``A x = b`` exactly.

    Returns ``None`` when the system is inconsistent, otherwise
    ``(particular, homogeneous)`` describing every solution.
    """
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if len(b) != len(A):
        raise DimensionMismatch("right-hand side length differs from row count")
    rows = [tuple(r) + (bi,) for r, bi in zip(A, b)]
    red, pivots = rref(F, rows, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [F.zero] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    x = tuple(x)
    assert mat_vec(F, A, x) == tuple(F(bi) for bi in b)
    return x, kernel(F, A, ncols)


def stack(*blocks) -> Matrix:
    out = []
    for b in blocks:
        out.extend(b)
    return tuple(out)


def restrict_operator(F: Field, M: Matrix, U: Subspace) -> Matrix:
    """Matrix of M restricted to an invariant subspace, in U's canonical coordinates."""
    cols = []
    for b in U.basis:
        w = mat_vec(F, M, b)
        if any(U.reduce(w)):
            raise ValueError("subspace is not invariant")
        cols.append(U.coords(w))
    return from_columns(cols, U.dim)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
