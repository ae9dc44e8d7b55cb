"""Invariant subspaces of F^d under a finite family of operators.

Ideals of an algebra are exactly the subspaces invariant under every left and
right multiplication, so minimal ideals, socles and chief factors all reduce
to questions about modules over the associative algebra those operators
generate.  Over GF(p) everything here is exhaustive; over Q it goes through
the trace-form radical of the generated algebra and splitting by commutant
elements, and reports :class:`Indeterminate` when it cannot certify.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import sympy

from .errors import Indeterminate, InfinitelyMany
from .exactlin import (
    Field,
    Subspace,
    full_space,
    identity,
    intersect,
    kernel,
    mat_add,
    mat_mul,
    mat_scale,
    mat_vec,
    restrict_operator,
    solve_affine,
    span,
    stack,
    trace,
    zero_space,
)


def closure(F: Field, ops, U: Subspace) -> Subspace:
    """Smallest subspace containing U and invariant under every operator."""
    n = U.ambient
    cur = U
    frontier = list(U.basis)
    while frontier:
        new = []
        for v in frontier:
            for T in ops:
                w = mat_vec(F, T, v)
                if any(cur.reduce(w)):
                    new.append(w)
        if not new:
            break
        nxt = span(F, cur.basis + tuple(new), n)
        if nxt.dim == cur.dim:
            break
        frontier = new
        cur = nxt
    return cur


def is_invariant(F: Field, ops, U: Subspace) -> bool:
    return all(not any(U.reduce(mat_vec(F, T, u))) for T in ops for u in U.basis)


def _flat(M):
    return tuple(x for r in M for x in r)


def generated_algebra(F: Field, ops, d: int) -> list:
    """Basis of the unital associative algebra generated by ``ops``."""
    I = identity(F, d)
    basis = [I]
    space = span(F, [_flat(I)], d * d)
    queue = [I]
    while queue:
        X = queue.pop()
        for T in ops:
            Y = mat_mul(F, T, X)
            fy = _flat(Y)
            if any(space.reduce(fy)):
                space = span(F, space.basis + (fy,), d * d)
                basis.append(Y)
                queue.append(Y)
    return basis


def socle(F: Field, ops, d: int) -> Subspace:
    """Socle of F^d as a module: the annihilator of the Jacobson radical.

    Characteristic zero only; the radical is the kernel of the trace form of
    the generated algebra (unital, so the criterion is exact).
    """
    if F.p:
        parts = minimal_submodules(F, ops, d)
        out = zero_space(F, d)
        for P in parts:
            out = span(F, out.basis + P.basis, d)
        return out
    E = generated_algebra(F, ops, d)
    gram = tuple(tuple(trace(F, mat_mul(F, A, B)) for B in E) for A in E)
    coeffs = kernel(F, gram, len(E))
    rad = []
    for c in coeffs.basis:
        M = None
        for ci, A in zip(c, E):
            if ci:
                term = mat_scale(F, ci, A)
                M = term if M is None else mat_add(F, M, term)
        rad.append(M)
    if not rad:
        return full_space(F, d)
    return kernel(F, stack(*rad), d)


def hom_space(F: Field, ops, U: Subspace, V: Subspace) -> list:
    """Basis of module homomorphisms U -> V as dim V x dim U coordinate matrices."""
    du, dv = U.dim, V.dim
    if du == 0 or dv == 0:
        return []
    nvar = du * dv
    rows = []
    for T in ops:
        TU = restrict_operator(F, T, U)
        TV = restrict_operator(F, T, V)
        # (phi TU - TV phi)[i][j] = 0
        for i in range(dv):
            for j in range(du):
                row = [F.zero] * nvar
                for l in range(du):
                    if TU[l][j]:
                        row[i * du + l] += TU[l][j]
                for m in range(dv):
                    if TV[i][m]:
                        row[m * du + j] -= TV[i][m]
                if any(row):
                    rows.append(tuple(F(x) for x in row))
    sol = kernel(F, tuple(rows), nvar) if rows else full_space(F, nvar)
    return [tuple(tuple(b[i * du:(i + 1) * du]) for i in range(dv)) for b in sol.basis]


def minimal_polynomial(F: Field, M) -> list:
    """Coefficients (constant term first, monic) of the minimal polynomial."""
    d = len(M)
    powers = [identity(F, d)]
    flats = [_flat(powers[0])]
    while True:
        nxt = mat_mul(F, powers[-1], M)
        A = tuple(zip(*flats))
        sol = solve_affine(F, A, _flat(nxt), len(flats))
        if sol is not None:
            x, _ = sol
            return [-c for c in x] + [F.one]
        powers.append(nxt)
        flats.append(_flat(nxt))


def _poly_eval(F: Field, coeffs, M):
    d = len(M)
    out = mat_scale(F, coeffs[-1], identity(F, d))
    for c in reversed(coeffs[:-1]):
        out = mat_add(F, mat_mul(F, out, M), mat_scale(F, c, identity(F, d)))
    return out


_x = sympy.Symbol("x")


def _factor_q(coeffs):
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], _x, domain="QQ")
    facs = poly.factor_list()[1]
    out = []
    for f, _ in facs:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.monic().all_coeffs())]
        out.append(cs)
    out.sort(key=lambda c: (len(c), [(x.numerator, x.denominator) for x in c]))
    return out


def _commutant_candidates(F: Field, basis, budget=40):
    yield from basis
    for a, b in itertools.combinations(basis, 2):
        yield mat_add(F, a, b)
        yield mat_add(F, a, mat_scale(F, F(2), b))
    rng = random.Random(0)
    for _ in range(budget):
        M = None
        for B in basis:
            t = mat_scale(F, F(rng.randint(-3, 3)), B)
            M = t if M is None else mat_add(F, M, t)
        yield M


def split_semisimple(F: Field, ops, W: Subspace) -> list:
    """Decompose a semisimple submodule W (over Q) into simple submodules.

    Each returned piece carries a certificate of simplicity: dimension one,
    scalar commutant, or a commutant that is a field generated by one element.
    """
    if W.dim == 0:
        return []
    if W.dim == 1:
        return [W]
    C = hom_space(F, ops, W, W)
    if len(C) == 1:
        return [W]
    for c in _commutant_candidates(F, C):
        mp = minimal_polynomial(F, c)
        facs = _factor_q(mp)
        if len(facs) == 1 and len(facs[0]) == len(mp):
            if len(mp) - 1 == len(C):
                # the commutant is Q[c], a field, so W is simple
                return [W]
            continue
        Kc = kernel(F, _poly_eval(F, facs[0], c), W.dim)
        K = span(F, [_from_coords(F, W, k) for k in Kc.basis], W.ambient)
        if K.dim in (0, W.dim):
            continue
        Kp = _module_complement(F, ops, W, K)
        return sorted(split_semisimple(F, ops, K) + split_semisimple(F, ops, Kp), key=Subspace.sort_key)
    raise Indeterminate(f"could not split or certify a {W.dim}-dimensional semisimple module")


def _from_coords(F: Field, W: Subspace, c):
    out = [F.zero] * W.ambient
    for ci, b in zip(c, W.basis):
        if ci:
            for k, x in enumerate(b):
                out[k] += ci * x
    return tuple(F(x) for x in out)


def _module_complement(F: Field, ops, W: Subspace, K: Subspace) -> Subspace:
    """A submodule K' with W = K ⊕ K' (W semisimple), via an equivariant projection."""
    homs = hom_space(F, ops, W, K)
    # pi = sum t_s homs[s]; require pi(k) = k for k in K.
    rows, rhs = [], []
    for kvec in K.basis:
        wc = W.coords(kvec)
        kc = K.coords(kvec)
        imgs = [mat_vec(F, h, wc) for h in homs]
        for i in range(K.dim):
            rows.append(tuple(img[i] for img in imgs))
            rhs.append(kc[i])
    sol = solve_affine(F, tuple(rows), tuple(rhs), len(homs))
    if sol is None:
        raise Indeterminate("no equivariant projection; module is not semisimple")
    t, _ = sol
    pi = None
    for ts, h in zip(t, homs):
        if ts:
            term = mat_scale(F, ts, h)
            pi = term if pi is None else mat_add(F, pi, term)
    ker = kernel(F, pi, W.dim)
    return span(F, [_from_coords(F, W, k) for k in ker.basis], W.ambient)


def projective_points(F: Field, d: int):
    """Nonzero vectors of GF(p)^d with leading coordinate 1, in lexicographic order."""
    for lead in range(d):
        for tail in itertools.product(F.elements(), repeat=d - lead - 1):
            yield (0,) * lead + (1,) + tail


def minimal_submodules(F: Field, ops, d: int, within: Subspace | None = None) -> list:
    """All minimal nonzero invariant subspaces, sorted by (dim, canonical basis).

    Over Q raises :class:`InfinitelyMany` when the socle has repeated
    isotypic components (the ``found`` attribute then holds one certified
    decomposition).
    """
    if d == 0:
        return []
    if F.p:
        return _minimal_submodules_finite(F, ops, d, within)
    S = socle(F, ops, d)
    if within is not None:
        S = intersect(S, within)
    parts = split_semisimple(F, ops, S)
    parts.sort(key=Subspace.sort_key)
    for i, A in enumerate(parts):
        for B in parts[i + 1:]:
            if A.dim == B.dim and hom_space(F, ops, A, B):
                raise InfinitelyMany("socle has a repeated simple summand", parts)
    return parts


def _minimal_submodules_finite(F: Field, ops, d, within=None):
    closures = {}
    if within is None:
        pts = projective_points(F, d)
    else:
        pts = (v for v in within.vectors() if any(v) and next(x for x in v if x) == 1)
    for v in pts:
        C = closure(F, ops, span(F, [v], d))
        closures.setdefault(C, None)
    cands = sorted(closures, key=Subspace.sort_key)
    out = []
    for C in cands:
        if not any(D.dim < C.dim and all(not any(C.reduce(b)) for b in D.basis) for D in out):
            out.append(C)
    return out


def joint_eigenspaces(F: Field, ops, W: Subspace) -> list:
    """Nonzero subspaces of W on which every operator is a scalar (prime fields)."""
    d = W.ambient
    spaces = [W]
    for T in ops:
        nxt = []
        for S in spaces:
            for lam in F.elements():
                shifted = tuple(
                    tuple(F(x - lam) if r == c else x for c, x in enumerate(row)) for r, row in enumerate(T)
                )
                K = intersect(S, kernel(F, shifted, d))
                if K.dim:
                    nxt.append(K)
        spaces = nxt
    return spaces


def first_minimal_submodule(F: Field, ops, d: int, within: Subspace | None = None) -> Subspace:
    """First minimal submodule in (dim, canonical basis) order.

    Over GF(p) one-dimensional submodules, which sort first, are read off
    the joint eigenspaces: the smallest line in a subspace is spanned by its
    last canonical basis row.  Only when there are none is the exhaustive
    search run.
    """
    if F.p and d:
        W = within if within is not None else full_space(F, d)
        lines = [span(F, [S.basis[-1]], d) for S in joint_eigenspaces(F, ops, W)]
        if lines:
            return min(lines, key=Subspace.sort_key)
    try:
        parts = minimal_submodules(F, ops, d, within)
    except InfinitelyMany as exc:
        parts = sorted(exc.found, key=Subspace.sort_key)
    if not parts:
        raise ValueError("zero module has no minimal submodule")
    return parts[0]


def maximal_submodule(F: Field, ops, W: Subspace) -> Subspace:
    """A maximal proper invariant subspace of the invariant subspace W.

    Dual to the minimal case: restrict to W, transpose, take a minimal
    submodule of the dual and return its annihilator.
    """
    if W.dim == 0:
        raise ValueError("zero module has no maximal submodule")
    m = W.dim
    dual_ops = [tuple(zip(*restrict_operator(F, T, W))) for T in ops]
    D = first_minimal_submodule(F, dual_ops, m)
    ann = kernel(F, D.basis, m)
    return span(F, [_from_coords(F, W, c) for c in ann.basis], W.ambient)
