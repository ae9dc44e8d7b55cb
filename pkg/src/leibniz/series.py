"""Characteristic series, nilpotency/solvability, nilradical and radical."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import submodules
from .algebra import (
    LeibnizAlgebra,
    derived_algebra,
    first_minimal_ideal,
    is_ideal,
    is_subalgebra,
    leib_ideal,
    lift,
    product_space,
    project,
    quotient,
    restrict,
)
from .errors import Indeterminate, PreconditionError, Unsupported
from .exactlin import Subspace, intersect, kernel, mat_mul, stack, trace


@dataclass(frozen=True)
class SeriesReport:
    """``stabilized`` means the series got stuck short of its natural end (0 or L)."""

    kind: str
    terms: tuple
    stabilized: bool

    @property
    def last(self) -> Subspace:
        return self.terms[-1]


def _descending(L: LeibnizAlgebra, kind, step) -> SeriesReport:
    terms = [L.full()]
    while True:
        cur = terms[-1]
        if cur.dim == 0:
            return SeriesReport(kind, tuple(terms), False)
        nxt = step(cur)
        terms.append(nxt)
        if nxt == cur:
            return SeriesReport(kind, tuple(terms), True)


def derived_series(L: LeibnizAlgebra) -> SeriesReport:
    return _descending(L, "derived", lambda U: product_space(L, U, U))


def lower_central_series(L: LeibnizAlgebra) -> SeriesReport:
    """L^1 = L, L^{k+1} = [L, L^k]."""
    full = L.full()
    return _descending(L, "lower_central", lambda U: product_space(L, full, U))


def relative_center(L: LeibnizAlgebra, Z: Subspace) -> Subspace:
    """{x : [x, L] ⊆ Z and [L, x] ⊆ Z}: the preimage of the centre of L/Z."""
    F = L.field
    Q = Z.quotient_matrix
    if not Q:
        return L.full()
    blocks = [mat_mul(F, Q, T) for T in L.mult_ops]
    return kernel(F, stack(*blocks), L.n)


def upper_central_series(L: LeibnizAlgebra) -> SeriesReport:
    full = L.full()
    terms = [L.zero()]
    while True:
        cur = terms[-1]
        if cur == full:
            return SeriesReport("upper_central", tuple(terms), False)
        nxt = relative_center(L, cur)
        terms.append(nxt)
        if nxt == cur:
            return SeriesReport("upper_central", tuple(terms), True)


def nilpotency_class(L: LeibnizAlgebra) -> Optional[int]:
    """Smallest c with L^{c+1} = 0, or None when L is not nilpotent."""
    s = lower_central_series(L)
    if s.stabilized:
        return None
    return len(s.terms) - 1


is_nilpotent = nilpotency_class


def upper_central_class(L: LeibnizAlgebra) -> Optional[int]:
    s = upper_central_series(L)
    return None if s.stabilized else len(s.terms) - 1


def is_solvable(L: LeibnizAlgebra) -> bool:
    return not derived_series(L).stabilized


def j_infinity(L: LeibnizAlgebra) -> Subspace:
    """The stable term of the lower central series."""
    return lower_central_series(L).last


def j_is_abelian(L: LeibnizAlgebra) -> bool:
    J = j_infinity(L)
    return product_space(L, J, J).dim == 0


def subalgebra_class(L: LeibnizAlgebra, U: Subspace) -> Optional[int]:
    return nilpotency_class(restrict(L, U).algebra)


@dataclass(frozen=True)
class Guard:
    ok: bool
    l2_class: Optional[float] = None


def char_p_guard(L: LeibnizAlgebra) -> Guard:
    """Over GF(p): L² must be nilpotent of class < p.  Always ok over Q."""
    if not L.field.p:
        return Guard(True)
    c = subalgebra_class(L, derived_algebra(L))
    if c is None:
        return Guard(False, math.inf)
    return Guard(c < L.field.p, c)


# -------------------------------------------------------------- nilradical

def chief_series(L: LeibnizAlgebra) -> list:
    """0 = H_0 ⊂ H_1 ⊂ ... ⊂ H_r = L, each H_{i+1}/H_i a minimal ideal of L/H_i."""
    chain = [L.zero()]
    full = L.full()
    while chain[-1] != full:
        cur = chain[-1]
        Q = quotient(L, cur)
        A = first_minimal_ideal(Q.algebra)
        chain.append(lift(L, cur, A))
    return chain


def factor_centralizer(L: LeibnizAlgebra, lower: Subspace, upper: Subspace) -> Subspace:
    """{x : [x, upper] ⊆ lower and [upper, x] ⊆ lower}."""
    F = L.field
    Q = lower.quotient_matrix
    if not Q:
        return L.full()
    blocks = []
    for h in upper.basis:
        blocks.append(mat_mul(F, Q, L.right_mult(h)))
        blocks.append(mat_mul(F, Q, L.left_mult(h)))
    return kernel(F, stack(*blocks), L.n)


def nilradical_chief(L: LeibnizAlgebra) -> Subspace:
    """Intersection of the centralizers of the chief factors (any field)."""
    chain = chief_series(L)
    N = L.full()
    for lo, hi in zip(chain, chain[1:]):
        N = intersect(N, factor_centralizer(L, lo, hi))
    return N


def nilradical_trace(L: LeibnizAlgebra) -> Subspace:
    """{x : tr(L_x B) = 0 for all B in the algebra generated by the L_y} (char 0, solvable)."""
    if L.field.p:
        raise Unsupported("trace criterion needs characteristic zero")
    F, n = L.field, L.n
    E = submodules.generated_algebra(F, L.left_basis, n)
    rows = tuple(tuple(trace(F, mat_mul(F, Li, B)) for Li in L.left_basis) for B in E)
    return kernel(F, rows, n)


def _certified_nilradical(L, N):
    return is_ideal(L, N) and nilpotency_class(restrict(L, N).algebra) is not None


def nilradical(L: LeibnizAlgebra) -> Subspace:
    """Largest nilpotent ideal; every answer is checked to be a nilpotent ideal."""
    if L.n == 0:
        return L.zero()
    tried = []
    if not L.field.p and is_solvable(L):
        N = nilradical_trace(L)
        if _certified_nilradical(L, N):
            return N
        tried.append("trace")
    N = nilradical_chief(L)
    if _certified_nilradical(L, N):
        return N
    tried.append("chief")
    raise Indeterminate(f"nilradical not certified (tried {', '.join(tried)})")


@dataclass(frozen=True)
class NilpotentLengthCertificate:
    length: int
    chain: tuple
    witnesses: tuple = field(default=(), compare=False)


def nilpotent_length(L: LeibnizAlgebra) -> NilpotentLengthCertificate:
    """Iterated-nilradical chain 0 ⊂ N(L) ⊂ preimage of N(L/N(L)) ⊂ ... ⊂ L."""
    chain = [L.zero()]
    witnesses = []
    full = L.full()
    while chain[-1] != full:
        cur = chain[-1]
        Q = quotient(L, cur)
        Nbar = nilradical(Q.algebra)
        if Nbar.dim == 0:
            raise PreconditionError("nilpotent length needs a solvable algebra")
        witnesses.append(lower_central_series(restrict(Q.algebra, Nbar).algebra))
        chain.append(lift(L, cur, Nbar))
    return NilpotentLengthCertificate(len(chain) - 1, tuple(chain), tuple(witnesses))


def verify_length_certificate(L: LeibnizAlgebra, cert: NilpotentLengthCertificate) -> bool:
    chain = cert.chain
    if chain[0].dim != 0 or chain[-1] != L.full():
        return False
    for lo, hi in zip(chain, chain[1:]):
        if not (is_ideal(L, hi) and lo <= hi):
            return False
        Q = quotient(L, lo)
        factor = project(L, lo, hi)
        if nilpotency_class(restrict(Q.algebra, factor).algebra) is None:
            return False
    return True


# ----------------------------------------------------------------- radical

def killing_form(L: LeibnizAlgebra):
    """Matrix of (x, y) -> tr(L_x L_y) in the standard basis."""
    F = L.field
    Lb = L.left_basis
    return tuple(tuple(trace(F, mat_mul(F, A, B)) for B in Lb) for A in Lb)


def radical(L: LeibnizAlgebra) -> Subspace:
    """Largest solvable ideal (characteristic zero).

    Pulls back the radical of the Lie algebra L/Leib(L), which is the
    orthogonal of its derived algebra under the trace form.
    """
    if L.field.p:
        raise Unsupported("radical is computed over Q only; use oracle ideal enumeration over GF(p)")
    F = L.field
    I = leib_ideal(L)
    Q = quotient(L, I)
    Lbar = Q.algebra
    m = Lbar.n
    if m == 0:
        return L.full()
    kappa = killing_form(Lbar)
    D = derived_algebra(Lbar)
    rows = tuple(tuple(sum(kappa[i][j] * d[j] for j in range(m)) for i in range(m)) for d in D.basis)
    Rbar = kernel(F, rows, m) if rows else Lbar.full()
    R = lift(L, I, Rbar)
    assert is_ideal(L, R) and is_subalgebra(L, R)
    return R
