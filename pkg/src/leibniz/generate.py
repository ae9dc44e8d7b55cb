"""Seeded families of test algebras.

Solvable algebras are built as N ⋊ T: a nilpotent base N from the shipped
catalog (or a random class-two table), with up to two extra basis vectors
acting on N by commuting derivations.  The right action of an adjoined
vector is zero or the negative of its left action; the full table is
validated and rejected on any identity failure.  Nilpotent length three
needs characteristic p, and comes from Aff2 acting on a small module over
GF(2).  Every stream is a pure function of its seed.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from importlib import resources
from typing import Iterator, Optional

from .algebra import LeibnizAlgebra, change_basis, check_leibniz, direct_sum, from_brackets
from .atlas import aff2, sl2, so3
from .errors import PreconditionError
from .exactlin import Field, GF, QQ, kernel, mat_is_zero, mat_mul, mat_pow, mat_sub, rank
from .series import is_solvable, nilpotent_length


def load_catalog(F: Field) -> list:
    """Catalog algebras that are valid Leibniz algebras over F."""
    text = resources.files("leibniz").joinpath("data/nilpotent_catalog.json").read_text()
    out = []
    for entry in json.loads(text):
        n = entry["n"]
        brackets = {(i, j): tuple(v) for i, j, v in entry["brackets"]}
        L = from_brackets(F, n, brackets, entry["name"])
        if not check_leibniz(L):
            out.append(L)
    return out


def derivations(L: LeibnizAlgebra) -> list:
    """Basis of Der(L): D[x, y] = [Dx, y] + [x, Dy] on basis pairs."""
    F, n = L.field, L.n
    nvar = n * n  # D[r][c] at r * n + c; column c is D(e_c)
    rows = []
    for i in range(n):
        for j in range(n):
            for r in range(n):
                row = [F.zero] * nvar
                # (D[e_i, e_j])_r
                for k, c in enumerate(L.table[i][j]):
                    if c:
                        row[r * n + k] += c
                # -([D e_i, e_j])_r = -sum_k D[k][i] c_{kj}^r
                for k in range(n):
                    c = L.table[k][j][r]
                    if c:
                        row[k * n + i] -= c
                    c = L.table[i][k][r]
                    if c:
                        row[k * n + j] -= c
                if any(row):
                    rows.append(tuple(F(x) for x in row))
    sol = kernel(F, tuple(rows), nvar) if rows else None
    basis = sol.basis if sol is not None else [tuple(int(k == m) for k in range(nvar)) for m in range(nvar)]
    return [tuple(tuple(b[r * n:(r + 1) * n]) for r in range(n)) for b in basis]


def _combo(F: Field, mats, rng: random.Random, bound: int = 2):
    n = len(mats[0])
    out = [[F.zero] * n for _ in range(n)]
    for M in mats:
        c = F(rng.randrange(F.p)) if F.p else F(rng.randint(-bound, bound))
        if c:
            for r in range(n):
                for k in range(n):
                    out[r][k] = F(out[r][k] + c * M[r][k])
    return tuple(tuple(r) for r in out)


def commuting_derivations(L: LeibnizAlgebra, D: tuple) -> list:
    """Derivations of L commuting with D."""
    F, n = L.field, L.n
    ders = derivations(L)
    if not ders:
        return []
    flats = [tuple(x for r in mat_sub(F, mat_mul(F, E, D), mat_mul(F, D, E)) for x in r) for E in ders]
    rows = tuple(tuple(f[q] for f in flats) for q in range(n * n))
    ker = kernel(F, rows, len(ders))
    out = []
    for c in ker.basis:
        M = [[F.zero] * n for _ in range(n)]
        for ci, E in zip(c, ders):
            if ci:
                for r in range(n):
                    for k in range(n):
                        M[r][k] = F(M[r][k] + ci * E[r][k])
        out.append(tuple(tuple(r) for r in M))
    return out


def adjoin(N: LeibnizAlgebra, ders: list, right: str = "zero", name: Optional[str] = None) -> LeibnizAlgebra:
    """N ⋊ span(t_1, ..., t_k) with [t_i, x] = D_i x and [x, t_i] = 0 or -D_i x."""
    F, m = N.field, N.n
    k = len(ders)
    n = m + k
    z = (F.zero,) * n
    table = [[z] * n for _ in range(n)]
    for i in range(m):
        for j in range(m):
            table[i][j] = tuple(N.table[i][j]) + (F.zero,) * k
    for s, D in enumerate(ders):
        for j in range(m):
            img = tuple(D[r][j] for r in range(m)) + (F.zero,) * k
            table[m + s][j] = img
            if right == "anti":
                table[j][m + s] = tuple(F(-x) for x in img)
    return LeibnizAlgebra(F, tuple(tuple(r) for r in table), name)


def random_invertible(F: Field, n: int, rng: random.Random) -> tuple:
    if F.p:
        while True:
            P = tuple(tuple(rng.randrange(F.p) for _ in range(n)) for _ in range(n))
            if rank(F, P, n) == n:
                return P
    # product of unitriangular matrices with small entries: det 1, modest denominators
    U = [[F(int(r == c)) if r >= c else F(rng.randint(-1, 1)) for c in range(n)] for r in range(n)]
    Lw = [[F(int(r == c)) if r <= c else F(rng.randint(-1, 1)) for c in range(n)] for r in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    P = mat_mul(F, tuple(map(tuple, U)), tuple(map(tuple, Lw)))
    return tuple(P[p] for p in perm)


def scramble(L: LeibnizAlgebra, rng: random.Random) -> LeibnizAlgebra:
    return change_basis(L, random_invertible(L.field, L.n, rng))


def random_class2(F: Field, v: int, z: int, rng: random.Random) -> LeibnizAlgebra:
    """V ⊕ Z with a random bilinear bracket V × V -> Z; always Leibniz, class ≤ 2."""
    n = v + z
    brackets = {}
    for i in range(v):
        for j in range(v):
            if rng.random() < 0.5:
                vec = [0] * n
                for c in range(v, n):
                    vec[c] = rng.randrange(F.p) if F.p else rng.randint(-1, 1)
                brackets[(i, j)] = tuple(vec)
    return from_brackets(F, n, brackets, f"C2({v},{z})")


def all_algebras(F: Field, n: int) -> Iterator[LeibnizAlgebra]:
    """Every Leibniz structure on GF(p)^n (feasible for n ≤ 2)."""
    if not F.p:
        raise PreconditionError("exhaustive tables need a prime field")
    for flat in itertools.product(range(F.p), repeat=n ** 3):
        table = tuple(
            tuple(tuple(flat[(i * n + j) * n + k] for k in range(n)) for j in range(n)) for i in range(n)
        )
        L = LeibnizAlgebra(F, table)
        if not check_leibniz(L):
            yield L


# ---------------------------------------------------------------- families

@dataclass(frozen=True)
class GeneratorSpec:
    family: str  # nilpotent_catalog | nilpotent_plus_derivations | length(t)
    field: Field = QQ
    seed: int = 0
    count: int = 10
    min_dim: int = 1
    max_dim: int = 6


@dataclass(frozen=True)
class Instance:
    algebra: LeibnizAlgebra
    family: str
    seed: int
    index: int

    @property
    def ident(self) -> str:
        return f"{self.family}/{self.seed}/{self.index}"


def _nilpotent_base(F: Field, rng: random.Random, max_dim: int) -> LeibnizAlgebra:
    cat = [N for N in load_catalog(F) if N.n <= max_dim]
    if rng.random() < 0.25 and max_dim >= 3:
        v = rng.randint(1, min(3, max_dim - 1))
        z = rng.randint(1, min(2, max_dim - v))
        return random_class2(F, v, z, rng)
    return rng.choice(cat)


def solvable_stream(F: Field, seed: int, max_dim: int = 6, min_dim: int = 1, scrambled: bool = True) -> Iterator[LeibnizAlgebra]:
    """Endless stream of N ⋊ T algebras, validated and solvable."""
    rng = random.Random(seed)
    while True:
        N = _nilpotent_base(F, rng, max_dim - 1)
        k = rng.choice([1, 1, 2]) if N.n + 2 <= max_dim else 1
        ders = derivations(N)
        if not ders:
            continue
        D1 = _combo(F, ders, rng)
        chosen = [D1]
        if k == 2:
            comm = commuting_derivations(N, D1)
            if comm:
                chosen.append(_combo(F, comm, rng))
        right = rng.choice(["zero", "anti"])
        L = adjoin(N, chosen, right, f"{N.name}+T{len(chosen)}{'a' if right == 'anti' else ''}")
        if L.n < min_dim or check_leibniz(L) or not is_solvable(L):
            continue
        if scrambled:
            L = scramble(L, rng)
        yield L


def _aff2_modules(F: Field, m: int) -> list:
    """Pairs (R1, R2) with R2 R1 - R1 R2 = R1 and R1 not nilpotent (m × m over GF(p))."""
    out = []
    cells = list(itertools.product(range(F.p), repeat=m * m))
    mats = [tuple(tuple(c[r * m:(r + 1) * m]) for r in range(m)) for c in cells]
    nonnil = [R for R in mats if not mat_is_zero(mat_pow(F, R, m))]
    for R1 in nonnil:
        for R2 in mats:
            if mat_sub(F, mat_mul(F, R2, R1), mat_mul(F, R1, R2)) == R1:
                out.append((R1, R2))
    return out


def semidirect_aff2(F: Field, R1, R2, right: str = "zero") -> LeibnizAlgebra:
    """Aff2 ⋉ V with e1, e2 acting on V by R1, R2 from the left."""
    B = aff2(F)
    m = len(R1)
    n = 2 + m
    z = (F.zero,) * n
    table = [[z] * n for _ in range(n)]
    for i in range(2):
        for j in range(2):
            table[i][j] = tuple(B.table[i][j]) + (F.zero,) * m
    for s, R in enumerate((R1, R2)):
        for j in range(m):
            img = (F.zero, F.zero) + tuple(R[r][j] for r in range(m))
            table[s][2 + j] = img
            if right == "anti":
                table[2 + j][s] = tuple(F(-x) for x in img)
    return LeibnizAlgebra(F, tuple(tuple(r) for r in table), f"Aff2x{m}{'a' if right == 'anti' else ''}")


def length3_stream(seed: int, max_dim: int = 5) -> Iterator[LeibnizAlgebra]:
    """GF(2) algebras of nilpotent length exactly three."""
    F = GF(2)
    rng = random.Random(seed)
    mods = _aff2_modules(F, 2)
    while True:
        R1, R2 = rng.choice(mods)
        right = rng.choice(["zero", "anti"])
        L = semidirect_aff2(F, R1, R2, right)
        extra = rng.random()
        if max_dim >= 5 and extra < 0.3:
            L = direct_sum(L, from_brackets(F, 1, {}), f"{L.name}+Ab1")
        elif max_dim >= 5 and extra < 0.5:
            # trivial one-dimensional summand of the module, with e2 acting by 1 or 0
            c = rng.randrange(2)
            R1b = tuple(tuple(list(r) + [0]) for r in R1) + ((0, 0, 0),)
            R2b = tuple(tuple(list(r) + [0]) for r in R2) + ((0, 0, c),)
            L = semidirect_aff2(F, R1b, R2b, right)
        if check_leibniz(L):
            continue
        L = scramble(L, rng)
        try:
            if nilpotent_length(L).length != 3:
                continue
        except PreconditionError:
            continue
        yield L


def gen_solvable(spec: GeneratorSpec) -> Iterator[Instance]:
    """Deterministic instance stream for a generator spec."""
    fam = spec.family
    F = spec.field
    seen = set()
    if fam == "nilpotent_catalog":
        for i, N in enumerate(N for N in load_catalog(F) if spec.min_dim <= N.n <= spec.max_dim):
            if i >= spec.count:
                return
            yield Instance(N, fam, spec.seed, i)
        return
    if fam == "nilpotent_plus_derivations":
        stream = solvable_stream(F, spec.seed, spec.max_dim, spec.min_dim)
    elif fam.startswith("length(") and fam.endswith(")"):
        t = int(fam[7:-1])
        stream = _length_stream(F, t, spec)
    else:
        raise ValueError(f"unknown family {fam!r}")
    i = 0
    tries = 0
    for L in stream:
        tries += 1
        if tries > 200 * max(spec.count, 1):
            raise PreconditionError(f"family {fam} produced too few distinct instances")
        if L.table in seen:
            continue
        seen.add(L.table)
        yield Instance(L, fam, spec.seed, i)
        i += 1
        if i >= spec.count:
            return


def _length_stream(F: Field, t: int, spec: GeneratorSpec) -> Iterator[LeibnizAlgebra]:
    if t == 1:
        rng = random.Random(spec.seed)
        while True:
            N = _nilpotent_base(F, rng, spec.max_dim)
            if N.n >= spec.min_dim:
                yield scramble(N, rng)
    if t == 2:
        for L in solvable_stream(F, spec.seed, spec.max_dim, spec.min_dim):
            if nilpotent_length(L).length == 2:
                yield L
        return
    if t == 3:
        if F != GF(2):
            raise PreconditionError("length(3) family is built over GF(2)")
        yield from length3_stream(spec.seed, spec.max_dim)
        return
    raise ValueError("nilpotent length must be 1, 2 or 3")


# ------------------------------------------------ semisimple ⊕ solvable over Q

def levi_sums(seed: int, count: int) -> Iterator[tuple]:
    """(L, radical) pairs over Q: solvable alone, or sl2 / so3 ⊕ solvable."""
    stream = solvable_stream(QQ, seed, max_dim=3, scrambled=False)
    made = 0
    while made < count:
        R = next(stream)
        kind = made % 3
        if kind == 0:
            yield R, R.full()
        else:
            S = sl2() if kind == 1 else so3()
            L = direct_sum(S, R, f"{S.name}+{R.name}")
            rad = L.span([tuple(int(k == 3 + i) for k in range(L.n)) for i in range(R.n)])
            yield L, rad
        made += 1


__all__ = [
    "load_catalog",
    "derivations",
    "commuting_derivations",
    "adjoin",
    "random_invertible",
    "scramble",
    "random_class2",
    "all_algebras",
    "GeneratorSpec",
    "Instance",
    "solvable_stream",
    "semidirect_aff2",
    "length3_stream",
    "gen_solvable",
    "levi_sums",
]
