"""Brute-force ground truth over GF(2) and GF(3).

Everything here is exhaustive and deliberately naive: subspaces are listed
from their reduced echelon forms, subalgebras and ideals are filtered from
that list, and inner automorphism groups are closed by breadth-first search.
Nothing in this module calls the conjugacy solvers it is used to check.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .algebra import LeibnizAlgebra, classify_subspace, normalizer, restrict
from .errors import BudgetExceeded, NotAnIdeal, Unsupported
from .exactlin import (
    Field,
    Matrix,
    Subspace,
    apply,
    contains,
    identity,
    intersect,
    mat_add,
    mat_is_zero,
    mat_mul,
    mat_pow,
    mat_scale,
)
from .series import nilpotency_class


@dataclass(frozen=True)
class EnumerationBudget:
    max_dim: int = 5
    primes: tuple = (2, 3)
    group_cap: int = 10**6

    def check(self, F: Field, n: int) -> None:
        if not F.p:
            raise Unsupported("exhaustive enumeration needs a prime field")
        if F.p not in self.primes:
            raise BudgetExceeded(f"GF({F.p}) outside the enumeration budget {self.primes}")
        if n > self.max_dim:
            raise BudgetExceeded(f"dimension {n} exceeds the enumeration budget {self.max_dim}")


DEFAULT_BUDGET = EnumerationBudget()


def enum_subspaces(n: int, k: int, F: Field, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    """All k-dimensional subspaces of GF(p)^n in canonical order."""
    budget.check(F, n)
    out = []
    elems = F.elements()
    for piv in itertools.combinations(range(n), k):
        pset = set(piv)
        slots = [(i, c) for i, p0 in enumerate(piv) for c in range(p0 + 1, n) if c not in pset]
        for vals in itertools.product(elems, repeat=len(slots)):
            rows = [[0] * n for _ in range(k)]
            for i, p0 in enumerate(piv):
                rows[i][p0] = 1
            for (i, c), v in zip(slots, vals):
                rows[i][c] = v
            out.append(Subspace(F, n, tuple(tuple(r) for r in rows)))
    out.sort(key=Subspace.sort_key)
    return out


def all_subspaces(n: int, F: Field, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    return [U for k in range(n + 1) for U in enum_subspaces(n, k, F, budget)]


@lru_cache(maxsize=512)
def _classified(L: LeibnizAlgebra, budget: EnumerationBudget):
    out = []
    for U in all_subspaces(L.n, L.field, budget):
        c = classify_subspace(L, U)
        if c.is_subalgebra:
            out.append((U, c.is_ideal))
    return tuple(out)


def enum_subalgebras(L: LeibnizAlgebra, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    return [U for U, _ in _classified(L, budget)]


def enum_ideals(L: LeibnizAlgebra, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    return [U for U, ideal in _classified(L, budget) if ideal]


def enum_minimal_ideals(L: LeibnizAlgebra, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    ids = [I for I in enum_ideals(L, budget) if I.dim > 0]
    return [I for I in ids if not any(J.dim < I.dim and contains(I, J) for J in ids)]


def enum_maximal_subalgebras(L: LeibnizAlgebra, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    proper = [S for S in enum_subalgebras(L, budget) if S.dim < L.n]
    return [S for S in proper if not any(T.dim > S.dim and contains(T, S) for T in proper)]


def enum_complements(L: LeibnizAlgebra, A: Subspace, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    if not classify_subspace(L, A).is_ideal:
        raise NotAnIdeal("complements are taken to an ideal")
    return [
        M
        for M in enum_subalgebras(L, budget)
        if M.dim + A.dim == L.n and intersect(M, A).dim == 0
    ]


def enum_cartans(L: LeibnizAlgebra, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    out = []
    for H in enum_subalgebras(L, budget):
        if normalizer(L, H) != H:
            continue
        if nilpotency_class(restrict(L, H).algebra) is not None:
            out.append(H)
    return out


def brute_core(L: LeibnizAlgebra, U: Subspace, budget: EnumerationBudget = DEFAULT_BUDGET) -> Subspace:
    """Largest enumerated ideal inside U."""
    inside = [I for I in enum_ideals(L, budget) if contains(U, I)]
    return max(inside, key=lambda I: I.dim)


def no_self_normalizing_maximal(L: LeibnizAlgebra, A: Subspace, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    """True when no maximal subalgebra of A is self-normalizing in A."""
    R = restrict(L, A)
    if R.algebra.n == 0:
        return True
    return all(normalizer(R.algebra, M) != M for M in enum_maximal_subalgebras(R.algebra, budget))


def brute_chain(L: LeibnizAlgebra, A: Subspace, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    """Is A joined to L by subalgebras each maximal and self-normalizing in the next?"""
    subs = enum_subalgebras(L, budget)
    full = L.full()

    @lru_cache(maxsize=None)
    def reach(C):
        if C == full:
            return True
        for D in subs:
            if D.dim > C.dim and contains(D, C) and _is_maximal_in(subs, C, D):
                if normalizer(L, C, within=D) == C and reach(D):
                    return True
        return False

    return reach(A)


def _is_maximal_in(subs, C, D) -> bool:
    return not any(C.dim < S.dim < D.dim and contains(S, C) and contains(D, S) for S in subs)


# ------------------------------------------------------- inner automorphisms

def _exp(F: Field, M: Matrix) -> Matrix:
    """Truncated exponential; defined when M^p = 0 so only r < p terms occur."""
    n = len(M)
    p = F.p
    if not mat_is_zero(mat_pow(F, M, p)):
        raise Unsupported("exp(L_a) undefined: L_a^p != 0")
    out = identity(F, n)
    term = identity(F, n)
    for r in range(1, p):
        term = mat_mul(F, term, M)
        out = mat_add(F, out, mat_scale(F, F.inv(F(math.factorial(r))), term))
    return out


def generators(L: LeibnizAlgebra, A: Subspace, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    """exp(L_a) for every a in A, deduplicated, in a fixed order."""
    budget.check(L.field, L.n)
    seen = {}
    for a in A.vectors():
        g = _exp(L.field, L.left_mult(a))
        seen.setdefault(g, None)
    return list(seen)


def inner_group(L: LeibnizAlgebra, A: Subspace, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    """All elements of the group generated by the exp(L_a), a in A."""
    F = L.field
    gens = generators(L, A, budget)
    I = identity(F, L.n)
    seen = {I: None}
    queue = deque([I])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = mat_mul(F, s, g)
            if h not in seen:
                seen[h] = None
                if len(seen) > budget.group_cap:
                    raise BudgetExceeded("inner group larger than the closure cap")
                queue.append(h)
    return list(seen)


@dataclass(frozen=True)
class OrbitVerdict:
    conjugate: bool
    element: Optional[Matrix]
    orbit_size: int


def orbit_verdict(
    L: LeibnizAlgebra,
    A: Subspace,
    U: Subspace,
    V: Subspace,
    budget: EnumerationBudget = DEFAULT_BUDGET,
) -> OrbitVerdict:
    """Exhaustive search of the I(L, A)-orbit of U for V.

    Walks the orbit with the group generators, remembering one group element
    reaching each orbit point, so the witness is a genuine group element.
    """
    F = L.field
    gens = generators(L, A, budget)
    I = identity(F, L.n)
    seen = {U: I}
    queue = deque([U])
    while queue:
        W = queue.popleft()
        if W == V:
            return OrbitVerdict(True, seen[W], len(seen))
        for s in gens:
            X = apply(F, s, W)
            if X not in seen:
                seen[X] = mat_mul(F, s, seen[W])
                if len(seen) > budget.group_cap:
                    raise BudgetExceeded("orbit larger than the closure cap")
                queue.append(X)
    return OrbitVerdict(False, None, len(seen))


def orbits(
    L: LeibnizAlgebra,
    A: Subspace,
    family: list,
    budget: EnumerationBudget = DEFAULT_BUDGET,
) -> list:
    """Partition ``family`` (closed under the group) into I(L, A)-orbits."""
    F = L.field
    gens = generators(L, A, budget)
    remaining = list(family)
    out = []
    while remaining:
        start = remaining[0]
        orbit = {start}
        queue = deque([start])
        while queue:
            W = queue.popleft()
            for s in gens:
                X = apply(F, s, W)
                if X not in orbit:
                    orbit.add(X)
                    queue.append(X)
        out.append(sorted(orbit, key=Subspace.sort_key))
        remaining = [W for W in remaining if W not in orbit]
    return out


def splits_with_single_orbit(L: LeibnizAlgebra, C: Subspace, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    comps = enum_complements(L, C, budget)
    if not comps:
        return False
    return len(orbits(L, C, comps, budget)) == 1


__all__ = [
    "EnumerationBudget",
    "DEFAULT_BUDGET",
    "enum_subspaces",
    "all_subspaces",
    "enum_subalgebras",
    "enum_ideals",
    "enum_minimal_ideals",
    "enum_maximal_subalgebras",
    "enum_complements",
    "enum_cartans",
    "brute_core",
    "no_self_normalizing_maximal",
    "brute_chain",
    "generators",
    "inner_group",
    "OrbitVerdict",
    "orbit_verdict",
    "orbits",
    "splits_with_single_orbit",
]
