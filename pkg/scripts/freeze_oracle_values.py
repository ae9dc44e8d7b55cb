#!/usr/bin/env python3
"""Recompute the frozen reference values used by the test-suite.

Everything here is computed without importing ``leibniz``: sympy for the
rational linear algebra, plain set arithmetic for the finite fields.
Output: tests/data/oracle_values.json.
"""
import argparse
import itertools
import json
from fractions import Fraction
from pathlib import Path

import sympy


def q(rows):
    return sympy.Matrix([[sympy.Rational(x) for x in r] for r in rows])


def rows_str(M):
    return [[str(x) for x in M.row(i)] for i in range(M.rows)]


def rref_rows(vectors):
    M, piv = q(vectors).rref()
    return rows_str(M[: len(piv), :])


# --- exactlin -----------------------------------------------------------

def linear_values():
    out = {}
    out["span_24_12"] = rref_rows([(2, 4), (1, 2)])
    out["sum_110_101_dim"] = q([(1, 1, 0), (1, 0, 1)]).rank()
    # span(e1,e2) ∩ span((1,1)): solve a*e1 + b*e2 = c*(1,1)
    out["intersect_full_11"] = rref_rows([(1, 1)])
    ker = q([(1, 2), (2, 4)]).nullspace()
    out["kernel_12_24"] = rref_rows([list(v) for v in ker])
    A = q([(1, 1)])
    sol, params = A.gauss_jordan_solve(sympy.Matrix([2]))
    free = params[0]
    part = sol.subs(free, 0)
    hom = sol.diff(free)
    out["solve_11_eq_2"] = {
        "particular": [str(x) for x in part],
        "homogeneous": rref_rows([list(hom)]),
    }
    return out


# --- finite field subspace census ----------------------------------------

def span_mod(p, vecs, n):
    S = {tuple([0] * n)}
    for v in vecs:
        S = {tuple((s[i] + c * v[i]) % p for i in range(n)) for s in S for c in range(p)}
    return frozenset(S)


def subspace_census(p, n):
    """Count subspaces of GF(p)^n by dimension via closure under adding vectors."""
    vectors = list(itertools.product(range(p), repeat=n))
    zero = span_mod(p, [], n)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for S in frontier:
            for v in vectors:
                if v not in S:
                    T = frozenset(
                        tuple((s[i] + c * v[i]) % p for i in range(n)) for s in S for c in range(p)
                    )
                    if T not in seen:
                        seen.add(T)
                        nxt.append(T)
        frontier = nxt
    counts = [0] * (n + 1)
    for S in seen:
        k = 0
        while p ** k < len(S):
            k += 1
        counts[k] += 1
    return counts


# --- small algebras by raw tables ---------------------------------------

ATLAS = {
    # (i, j) -> {k: coeff}, 0-based
    "Ab2": (2, {}),
    "N2": (2, {(0, 0): {1: 1}}),
    "R2": (2, {(1, 0): {0: 1}}),
    "Aff2": (2, {(1, 0): {0: 1}, (0, 1): {0: -1}}),
    "H3": (3, {(0, 1): {2: 1}, (1, 0): {2: -1}}),
}


def table(name, p=None):
    n, br = ATLAS[name]
    T = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (i, j), img in br.items():
        for k, c in img.items():
            T[i][j][k] = c % p if p else Fraction(c)
    return n, T


def brk(T, n, x, y, p=None):
    out = [0] * n
    for i in range(n):
        if not x[i]:
            continue
        for j in range(n):
            if not y[j]:
                continue
            for k in range(n):
                out[k] += x[i] * y[j] * T[i][j][k]
    return tuple(c % p for c in out) if p else tuple(out)


def violations(n, T):
    e = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    bad = []
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = brk(T, n, e[i], brk(T, n, e[j], e[k]))
        r1 = brk(T, n, brk(T, n, e[i], e[j]), e[k])
        r2 = brk(T, n, e[j], brk(T, n, e[i], e[k]))
        if any(a != b + c for a, b, c in zip(lhs, r1, r2)):
            bad.append([i + 1, j + 1, k + 1])
    return bad


def subspaces_mod(p, n):
    vectors = [v for v in itertools.product(range(p), repeat=n)]
    out = set()
    for k in range(n + 1):
        for vs in itertools.combinations(vectors, k):
            out.add(span_mod(p, vs, n))
    return out


def closed(T, n, S, p):
    return all(brk(T, n, x, y, p) in S for x in S for y in S)


def normalizer_mod(T, n, S, p):
    V = itertools.product(range(p), repeat=n)
    return frozenset(
        x for x in V if all(brk(T, n, x, u, p) in S and brk(T, n, u, x, p) in S for u in S)
    )


def nilpotent_mod(T, n, S, p):
    # lower central series of the subalgebra S
    cur = S
    for _ in range(n + 1):
        nxt = span_mod(p, [brk(T, n, x, y, p) for x in S for y in cur], n)
        if len(nxt) == 1:
            return True
        if nxt == cur:
            return False
        cur = nxt
    return False


def cartans_mod(name, p):
    n, T = table(name, p)
    out = []
    for S in subspaces_mod(p, n):
        if len(S) > 1 and closed(T, n, S, p) and nilpotent_mod(T, n, S, p) and normalizer_mod(T, n, S, p) == S:
            out.append(sorted(v for v in S if any(v)))
    return sorted(out)


def exp_left_mod(T, n, a, p):
    # matrix columns: image of e_j under sum L_a^k / k!
    La = [[sum(a[i] * T[i][j][k] for i in range(n)) % p for j in range(n)] for k in range(n)]
    M = [[int(r == c) for c in range(n)] for r in range(n)]
    term = [row[:] for row in M]
    fact = 1
    for k in range(1, n + 1):
        term = [[sum(La[r][m] * term[m][c] for m in range(n)) % p for c in range(n)] for r in range(n)]
        fact *= k
        if not any(any(row) for row in term):
            break
        inv = pow(fact, -1, p)
        M = [[(M[r][c] + term[r][c] * inv) % p for c in range(n)] for r in range(n)]
    return tuple(tuple(r) for r in M)


def group_order(name, p, A_basis):
    n, T = table(name, p)
    gens = [exp_left_mod(T, n, a, p) for a in span_mod(p, A_basis, n)]
    I = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    seen = {I}
    frontier = [I]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = tuple(
                    tuple(sum(g[r][m] * h[m][c] for m in range(n)) % p for c in range(n)) for r in range(n)
                )
                if gh not in seen:
                    seen.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return len(seen)


def algebra_values():
    out = {"violations": {}}
    for name in ATLAS:
        n, T = table(name)
        out["violations"][name] = violations(n, T)
    # only [e1,e2] = e1
    T = [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]
    T = [[[Fraction(c) for c in v] for v in row] for row in T]
    out["violations"]["e1e2_only"] = violations(2, T)
    out["cartans"] = {
        "Aff2/GF3": cartans_mod("Aff2", 3),
        "R2/GF3": cartans_mod("R2", 3),
    }
    out["inner_group_order"] = {
        "Aff2/GF3/e1": group_order("Aff2", 3, [(1, 0)]),
        "R2/GF2/e1": group_order("R2", 2, [(1, 0)]),
    }
    sub = {}
    for name, p in (("Ab2", 2), ("R2", 3), ("Aff2", 3)):
        n, T = table(name, p)
        sub[f"{name}/GF{p}"] = sum(1 for S in subspaces_mod(p, n) if closed(T, n, S, p))
    out["subalgebra_counts"] = sub
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "tests" / "data" / "oracle_values.json"))
    args = ap.parse_args(argv)
    values = {
        "linear": linear_values(),
        "census": {f"GF{p}/{n}": subspace_census(p, n) for p in (2, 3) for n in range(1, 6)},
        "algebra": algebra_values(),
    }
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w", encoding="utf-8") as fp:
        json.dump(values, fp, indent=1, sort_keys=True)
        fp.write("\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
