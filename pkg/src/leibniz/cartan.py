"""Fitting decompositions, Cartan subalgebras and the set M(L)."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .algebra import (
    LeibnizAlgebra,
    core,
    first_minimal_ideal,
    is_ideal,
    is_ideal_of,
    is_subalgebra,
    lift,
    normalizer,
    project,
    product_space,
    pullback,
    quotient,
    restrict,
    to_coords,
)
from .errors import (
    CartanNotFound,
    Indeterminate,
    NotASubalgebra,
    NotInvariant,
)
from .exactlin import (
    Field,
    Matrix,
    Subspace,
    contains,
    image,
    intersect,
    kernel,
    mat_pow,
    mat_vec,
    solve_affine,
    span,
    subspace_sum,
)
from .series import chief_series, derived_series, lower_central_series, nilpotency_class, nilradical


@dataclass(frozen=True)
class FittingPair:
    null_part: Subspace
    invertible_part: Subspace
    operator: Matrix


def fitting(F: Field, operator: Matrix) -> FittingPair:
    n = len(operator)
    P = mat_pow(F, operator, n)
    return FittingPair(kernel(F, P, n), image(F, P, n), operator)


def fitting_null(L: LeibnizAlgebra, x, S: Optional[Subspace] = None) -> Subspace:
    """Fitting null component of L_x acting on the invariant subspace S."""
    F, n = L.field, L.n
    S = L.full() if S is None else S
    Lx = L.left_mult(x)
    for s in S.basis:
        if any(S.reduce(mat_vec(F, Lx, s))):
            raise NotInvariant("S is not invariant under left multiplication by x")
    null = kernel(F, mat_pow(F, Lx, n), n)
    return intersect(S, null)


def _value_key(v):
    return (abs(v), v < 0)


def regular_candidates(L: LeibnizAlgebra, height: int = 5) -> Iterator[tuple]:
    """Deterministic candidate elements.

    Over Q: integer vectors by increasing max-norm height, leading entry
    positive; within a height, by support size, then support, then values
    (1 before -1 before 2 ...).  Over GF(p): every nonzero vector in
    lexicographic order.
    """
    F, n = L.field, L.n
    if F.p:
        for v in itertools.product(range(F.p), repeat=n):
            if any(v):
                yield v
        return
    for h in range(1, height + 1):
        for size in range(1, n + 1):
            for support in itertools.combinations(range(n), size):
                vals = [range(1, h + 1)] + [
                    sorted([s for k in range(1, h + 1) for s in (k, -k)], key=_value_key)
                ] * (size - 1)
                combos = [c for c in itertools.product(*vals) if max(abs(x) for x in c) == h]
                combos.sort(key=lambda c: [_value_key(x) for x in c])
                for c in combos:
                    v = [0] * n
                    for pos, val in zip(support, c):
                        v[pos] = val
                    yield F.vector(v)


def random_candidates(L: LeibnizAlgebra, rng: random.Random, bound: int = 3) -> Iterator[tuple]:
    F, n = L.field, L.n
    while True:
        if F.p:
            v = tuple(rng.randrange(F.p) for _ in range(n))
        else:
            v = F.vector(rng.randint(-bound, bound) for _ in range(n))
        if any(v):
            yield v


def is_cartan(L: LeibnizAlgebra, H: Subspace) -> bool:
    """Nilpotent and self-normalizing."""
    if not is_subalgebra(L, H):
        return False
    if nilpotency_class(restrict(L, H).algebra) is None:
        return False
    return normalizer(L, H) == H


def find_cartan(
    L: LeibnizAlgebra,
    height: int = 5,
    max_candidates: int = 2000,
    seed: Optional[int] = None,
) -> Subspace:
    """A Cartan subalgebra, verified before it is returned.

    Tries Fitting null components of candidate elements (deterministic order,
    or a seeded random stream), then Engel-style refinement inside the
    smallest proper null component, then descent through a minimal ideal
    (solvable algebras).  Raises :class:`CartanNotFound` rather than guess.
    """
    if L.n == 0:
        return L.zero()
    full = L.full()
    cands = regular_candidates(L, height) if seed is None else random_candidates(L, random.Random(seed))
    seen = set()
    smallest = None
    for x in itertools.islice(cands, max_candidates):
        H = fitting_null(L, x, full)
        if H in seen:
            continue
        seen.add(H)
        if is_cartan(L, H):
            return H
        if H != full and is_subalgebra(L, H) and (smallest is None or H.dim < smallest.dim):
            smallest = H
    if smallest is not None:
        try:
            R = restrict(L, smallest)
            inner = find_cartan(R.algebra, height, max_candidates, seed)
            H = pullback(L, smallest, inner)
            if is_cartan(L, H):
                return H
        except (CartanNotFound, Indeterminate):
            pass
    if not derived_series(L).stabilized:
        try:
            H = cartan_by_descent(L)
        except Indeterminate as exc:
            raise CartanNotFound(str(exc)) from exc
        if is_cartan(L, H):
            return H
    raise CartanNotFound(f"no Cartan subalgebra found for {L!r} within the candidate budget")


def complement_of_abelian_ideal(L: LeibnizAlgebra, A: Subspace) -> Optional[Subspace]:
    """Some subalgebra M with L = A ⊕ M, for an abelian ideal A, or None.

    Complements are graphs of linear maps phi from the coordinate complement
    W into A; closure under the bracket is linear in phi because [A, A] = 0.
    """
    F, n = L.field, L.n
    W = A.complement_basis()
    m, k = len(W), A.dim
    if m == 0:
        return L.zero()
    if k == 0:
        return L.full()
    nvar = m * k  # t[j][s]: phi(w_j) = sum_s t[j][s] a_s
    rows, rhs = [], []
    for j in range(m):
        for l in range(m):
            v = L.bracket(W[j], W[l])
            u = A.reduce(v)
            a_part = tuple(F(x - y) for x, y in zip(v, u))
            c = A.quotient_coords(v)
            eq = [[F.zero] * nvar for _ in range(k)]
            for s in range(k):
                left = A.coords(L.bracket(W[j], A.basis[s]))
                right = A.coords(L.bracket(A.basis[s], W[l]))
                for r in range(k):
                    eq[r][l * k + s] += left[r]
                    eq[r][j * k + s] += right[r]
            for q in range(m):
                if c[q]:
                    for s in range(k):
                        eq[s][q * k + s] -= c[q]
            target = A.coords(a_part)
            for r in range(k):
                rows.append(tuple(F(x) for x in eq[r]))
                rhs.append(F(-target[r]))
    sol = solve_affine(F, tuple(rows), tuple(rhs), nvar)
    if sol is None:
        return None
    t, _ = sol
    vecs = []
    for j in range(m):
        v = list(W[j])
        for s in range(k):
            if t[j * k + s]:
                for r in range(n):
                    v[r] += t[j * k + s] * A.basis[s][r]
        vecs.append(F.vector(v))
    M = span(F, vecs, n)
    assert is_subalgebra(L, M) and intersect(M, A).dim == 0
    return M


def cartan_by_descent(L: LeibnizAlgebra) -> Subspace:
    """Cartan subalgebra of a solvable L by recursion through a minimal ideal."""
    if nilpotency_class(L) is not None:
        return L.full()
    A = first_minimal_ideal(L)
    Q = quotient(L, A)
    Hbar = cartan_by_descent(Q.algebra)
    U = lift(L, A, Hbar)
    if U != L.full():
        R = restrict(L, U)
        return pullback(L, U, cartan_by_descent(R.algebra))
    M = complement_of_abelian_ideal(L, A)
    if M is None:
        raise Indeterminate("minimal ideal with nilpotent quotient has no complement")
    return M


# ------------------------------------------------------------------- M(L)

@dataclass(frozen=True)
class ChainCertificate:
    chain: tuple  # A = C_0 ⊂ C_1 ⊂ ... ⊂ C_t = L

    def verify(self, L: LeibnizAlgebra) -> bool:
        c = self.chain
        if c[-1] != L.full():
            return False
        for lo, hi in zip(c, c[1:]):
            if not (contains(hi, lo) and lo.dim < hi.dim):
                return False
            if normalizer(L, lo, within=hi) != lo:
                return False
            if not _is_maximal_in_finite_or_certified(L, lo, hi):
                return False
        return True


def _subalgebras_between(L: LeibnizAlgebra, lo: Subspace, hi: Subspace) -> list:
    from .oracle import enum_subalgebras

    return [S for S in enum_subalgebras(L) if contains(S, lo) and contains(hi, S)]


def _is_maximal_in_finite_or_certified(L, M, C) -> bool:
    if L.field.p:
        return all(S == M or S == C for S in _subalgebras_between(L, M, C))
    return _maximality_certificate(L, M, C)


def maximal_subalgebras_in(L: LeibnizAlgebra, C: Subspace) -> list:
    """Maximal subalgebras of the subalgebra C (prime fields, exhaustive)."""
    from .oracle import enum_subalgebras

    inside = [S for S in enum_subalgebras(L) if contains(C, S) and S != C]
    return [S for S in inside if not any(T != S and contains(T, S) for T in inside)]


def _maximality_certificate(L: LeibnizAlgebra, M: Subspace, C: Subspace) -> bool:
    """Certify M maximal in the solvable subalgebra C.

    With K the core of M in C: some abelian minimal ideal B/K of C/K meets
    M/K trivially and together they span C/K.
    """
    R = restrict(L, C)
    Ca = R.algebra
    Mc = to_coords(C, M)
    K = core(Ca, Mc)
    Q = quotient(Ca, K)
    Mbar = project(Ca, K, Mc)
    try:
        B = first_minimal_ideal(Q.algebra)
    except Indeterminate:
        return False
    if not _abelian(Q.algebra, B):
        return False
    return intersect(B, Mbar).dim == 0 and B.dim + Mbar.dim == Q.algebra.n


def _abelian(L, U):
    return product_space(L, U, U).dim == 0


def _q_candidates(L: LeibnizAlgebra, A: Subspace, C: Subspace) -> list:
    """Candidate maximal subalgebras A + I of C, I ranging over a pool of ideals of C."""
    R = restrict(L, C)
    Ca = R.algebra
    pool = []
    pool.extend(lower_central_series(Ca).terms)
    pool.extend(derived_series(Ca).terms)
    try:
        pool.append(nilradical(Ca))
    except Indeterminate:
        pass
    try:
        pool.extend(chief_series(Ca))
    except Indeterminate:
        pass
    out = []
    for I in pool:
        M = subspace_sum(A, pullback(L, C, I))
        if M != C and M not in out and is_subalgebra(L, M):
            out.append(M)
    out.sort(key=lambda S: (-S.dim, S.sort_key()))
    return out


def in_M(L: LeibnizAlgebra, A: Subspace) -> Optional[ChainCertificate]:
    """Chain certificate when A ∈ M(L), None when A ∉ M(L).

    Over Q an unsuccessful bounded search raises :class:`Indeterminate`
    unless a definite obstruction is found.
    """
    if not is_subalgebra(L, A):
        raise NotASubalgebra("M(L) membership is defined for subalgebras")
    if nilpotency_class(restrict(L, A).algebra) is None:
        return None
    full = L.full()
    if A == full:
        return ChainCertificate((A,))
    finite = bool(L.field.p)
    failed = set()

    def dfs(C, depth):
        if C == A:
            return [A]
        if C in failed or depth > L.n:
            return None
        if finite:
            cands = [M for M in maximal_subalgebras_in(L, C) if contains(M, A)]
        else:
            cands = [M for M in _q_candidates(L, A, C) if contains(M, A)]
        for M in cands:
            if is_ideal_of(L, M, C):
                continue
            if not finite and not _maximality_certificate(L, M, C):
                continue
            sub = dfs(M, depth + 1)
            if sub is not None:
                return sub + [C]
        failed.add(C)
        return None

    chain = dfs(full, 0)
    if chain is not None:
        return ChainCertificate(tuple(chain))
    if finite or is_ideal(L, A):
        return None
    raise Indeterminate("bounded chain search over Q found no chain")


# ------------------------------------------------------------- Fitting core

@dataclass(frozen=True)
class FittingCore:
    space: Subspace
    self_normalizing: bool


def fitting_core(L: LeibnizAlgebra, D: Subspace, S: Optional[Subspace] = None) -> FittingCore:
    """Intersection of the Fitting null components S_x over x in D.

    Over GF(p) every element of D is used; over Q a basis suffices.
    """
    S = L.full() if S is None else S
    if not is_subalgebra(L, D):
        raise NotASubalgebra("D must be a subalgebra")
    xs = [x for x in D.vectors() if any(x)] if L.field.p else list(D.basis)
    K = S
    for x in xs:
        K = intersect(K, fitting_null(L, x, S))
    return FittingCore(K, normalizer(L, K) == K)
