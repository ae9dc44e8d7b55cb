"""Per-theorem verification over instance families, with JSON reports.

Each ``verify_*`` function checks the hypotheses first (an instance that
fails them is *skipped*, never counted as verified), then runs the
constructive solver and, when the instance is small enough, the brute-force
oracle, and returns a :class:`TheoremReport`.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Optional

from . import oracle
from .algebra import (
    LeibnizAlgebra,
    centralizer,
    core,
    derived_algebra,
    field_from_json,
    product_space,
    quotient,
    project,
    restrict,
    subspace_to_json,
    to_coords,
    to_json,
)
from .cartan import complement_of_abelian_ideal, find_cartan, fitting_core, in_M, is_cartan
from .conj import (
    ConjugacyCertificate,
    NotConjugate,
    classify_maximal,
    compose,
    conjugate_cartans,
    conjugate_cartans_abelian_J,
    conjugate_complements,
    exp_matrix,
    extend_inner,
    from_word,
)
from .errors import LeibnizError, TheoremViolation
from .exactlin import GF, QQ, Field, apply, contains, identity, intersect, lincomb, mat_add, mat_is_zero, mat_pow, subspace_sum
from .generate import GeneratorSpec, Instance, all_algebras, gen_solvable, levi_sums
from .series import char_p_guard, is_solvable, j_infinity, nilpotent_length, nilradical, radical

THEOREMS = ("L1", "T1", "T2", "C1", "T3", "T5", "T6-structural", "T7", "T8", "T9")


class Skip(Exception):
    """Instance does not meet the theorem's hypotheses (or is out of budget)."""


class Falsified(Exception):
    def __init__(self, reason, details=None):
        super().__init__(reason)
        self.details = details


@dataclass
class TheoremReport:
    theorem: str
    instance: dict
    verdict: str  # verified | falsified | skipped
    reason: str = ""
    certificates: list = field(default_factory=list)
    seconds: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        out = asdict(self)
        if not timing:
            out.pop("seconds")
        return out


def describe(inst: Instance) -> dict:
    return {"id": inst.ident, "family": inst.family, "seed": inst.seed, "algebra": to_json(inst.algebra)}


def _run(theorem: str, inst: Instance, check: Callable[[LeibnizAlgebra], list]) -> TheoremReport:
    start = time.perf_counter()
    verdict, reason, certs = "verified", "", []
    try:
        certs = check(inst.algebra) or []
    except Skip as exc:
        verdict, reason = "skipped", str(exc)
    except (Falsified, TheoremViolation) as exc:
        verdict, reason = "falsified", f"{type(exc).__name__}: {exc}"
    except LeibnizError as exc:
        verdict, reason = "skipped", f"solver gave up: {type(exc).__name__}: {exc}"
    return TheoremReport(theorem, describe(inst), verdict, reason, certs, time.perf_counter() - start)


def _need(cond: bool, reason: str):
    if not cond:
        raise Skip(reason)


def _in_budget(L: LeibnizAlgebra, max_dim: int = 5) -> bool:
    return L.field.p in (2, 3) and L.n <= max_dim


def _guard(L: LeibnizAlgebra):
    g = char_p_guard(L)
    _need(g.ok, f"char-p guard fails (L^2 class {g.l2_class})")


# ------------------------------------------------------------------ checks

def check_L1(L: LeibnizAlgebra) -> list:
    _need(is_solvable(L), "not solvable")
    F, n = L.field, L.n
    D = derived_algebra(L)
    worst = 0
    for x in D.basis:
        Lx = L.left_mult(x)
        if not mat_is_zero(mat_pow(F, Lx, n)):
            raise Falsified("left multiplication by an element of L^2 is not nilpotent", x)
        k = next(k for k in range(n + 1) if mat_is_zero(mat_pow(F, Lx, k)))
        worst = max(worst, k)
        if char_p_guard(L).ok:
            exp_matrix(F, Lx)
    return [{"L2_dim": D.dim, "max_nilpotency_index": worst}]


def two_cartans(L: LeibnizAlgebra, seeds=(1, 2)):
    return find_cartan(L, seed=seeds[0]), find_cartan(L, seed=seeds[1])


def check_T5(L: LeibnizAlgebra) -> list:
    _need(is_solvable(L), "not solvable")
    _guard(L)
    H1, H2 = two_cartans(L)
    cert = conjugate_cartans(L, H1, H2)
    out = [cert.to_json()]
    if _in_budget(L):
        v = oracle.orbit_verdict(L, derived_algebra(L), H1, H2)
        if not v.conjugate:
            raise Falsified("oracle finds the Cartan subalgebras not conjugate under I(L, L^2)")
        out.append({"oracle_orbit_size": v.orbit_size})
    return out


def check_T7(L: LeibnizAlgebra) -> list:
    J = j_infinity(L)
    _need(derived_dim_zero(L, J), "J is not abelian")
    H1, H2 = two_cartans(L)
    cert = conjugate_cartans_abelian_J(L, H1, H2)
    word = cert.automorphism.word
    if len(word) > 1 or (H1 != H2 and len(word) != 1):
        raise Falsified("abelian-J certificate is not a single generator")
    # independent replay: I + L_z applied directly
    F = L.field
    z = word[0][0] if word else F.vector([0] * L.n)
    M = mat_add(F, identity(F, L.n), L.left_mult(z))
    if not contains(J, L.span([z])) or apply(F, M, H1) != H2:
        raise Falsified("I + L_z replay does not map H onto K inside J")
    return [cert.to_json()]


def derived_dim_zero(L: LeibnizAlgebra, J) -> bool:
    return product_space(L, J, J).dim == 0


def _small_solvable(L: LeibnizAlgebra, max_dim: int = 4):
    _need(_in_budget(L, max_dim), "outside the enumeration budget")
    _need(is_solvable(L), "not solvable")


def _partition(blocks) -> set:
    return {frozenset(b) for b in blocks}


def right_action(L: LeibnizAlgebra, A) -> str:
    """'anti' if [a, l] = -[l, a] on A, 'zero' if [a, l] = 0, else 'neither'."""
    F = L.field
    zero = anti = True
    for a in A.basis:
        for i in range(L.n):
            l = L.basis_vector(i)
            al = L.bracket(a, l)
            zero = zero and not any(al)
            anti = anti and all(F(x + y) == 0 for x, y in zip(al, L.bracket(l, a)))
    return "zero" if zero else "anti" if anti else "neither"


def check_C1(L: LeibnizAlgebra) -> list:
    _small_solvable(L)
    out = []
    for A in oracle.enum_minimal_ideals(L):
        if right_action(L, A) == "neither":
            raise Falsified("minimal ideal is neither symmetric nor antisymmetric", subspace_to_json(A))
        comps = oracle.enum_complements(L, A)
        if not comps:
            continue
        C = centralizer(L, A)
        by_orbit = _partition(oracle.orbits(L, A, comps))
        keyed: dict = {}
        for M in comps:
            keyed.setdefault(intersect(M, C), []).append(M)
        if by_orbit != _partition(keyed.values()):
            raise Falsified("orbit partition differs from the centralizer-intersection partition", subspace_to_json(A))
        pairs = [(a, b) for a in comps for b in comps] if len(comps) <= 12 else [(comps[0], b) for b in comps]
        orbit_of = {M: blk for blk in by_orbit for M in blk}
        for M, N in pairs:
            res = conjugate_complements(L, A, M, N, check_minimal=False)
            if isinstance(res, NotConjugate) == (N in orbit_of[M]):
                raise Falsified("solver verdict disagrees with the oracle orbit", (subspace_to_json(M), subspace_to_json(N)))
        out.append({"ideal": subspace_to_json(A), "right_action": right_action(L, A),
                    "complements": len(comps), "classes": len(by_orbit)})
    return out


def check_T2(L: LeibnizAlgebra) -> list:
    _small_solvable(L)
    out = []
    for A in oracle.enum_minimal_ideals(L):
        C = centralizer(L, A)
        targets = {
            I for I in oracle.enum_ideals(L) if intersect(I, A).dim == 0 and subspace_sum(I, A) == C
        }
        comps = oracle.enum_complements(L, A)
        classes = oracle.orbits(L, A, comps) if comps else []
        images = [intersect(blk[0], C) for blk in classes]
        if len(set(images)) != len(images):
            raise Falsified("two classes share an intersection with C_L(A)")
        if set(images) != targets:
            raise Falsified("classes do not correspond to ideal complements of A in C_L(A)", subspace_to_json(A))
        out.append({"ideal": subspace_to_json(A), "classes": len(classes)})
    return out


def check_T3(L: LeibnizAlgebra) -> list:
    _small_solvable(L)
    _guard(L)
    maximal = oracle.enum_maximal_subalgebras(L)
    by_orbit = _partition(oracle.orbits(L, derived_algebra(L), maximal))
    by_core: dict = {}
    for M in maximal:
        by_core.setdefault(core(L, M), []).append(M)
    if by_orbit != _partition(by_core.values()):
        raise Falsified("I(L, L^2)-orbits of maximal subalgebras differ from the core partition")
    cls = classify_maximal(L, maximal)
    if _partition(c.members for c in cls.classes) != by_orbit:
        raise Falsified("solver classes differ from oracle orbits")
    return [{"maximal": len(maximal), "classes": len(by_orbit), "certificates": sum(len(c.certificates) for c in cls.classes)}]


def check_T1(L: LeibnizAlgebra) -> list:
    _small_solvable(L)
    mins = oracle.enum_minimal_ideals(L)
    _need(len(mins) == 1, "socle is not a single minimal ideal")
    C = mins[0]
    _need(centralizer(L, C) == C, "socle is not self-centralizing")
    M = complement_of_abelian_ideal(L, C)
    if M is None:
        raise Falsified("primitive algebra does not split over its socle")
    comps = oracle.enum_complements(L, C)
    if M not in comps:
        raise Falsified("constructed complement missing from the enumeration")
    if len(oracle.orbits(L, C, comps)) != 1:
        raise Falsified("complements to the socle form more than one orbit")
    certs = []
    for N in comps:
        res = conjugate_complements(L, C, M, N, check_minimal=False)
        if isinstance(res, NotConjugate):
            raise Falsified("solver finds complements not conjugate")
        certs.append(res.to_json())
    return certs[:3] + [{"complements": len(comps)}]


def check_T8(L: LeibnizAlgebra) -> list:
    _small_solvable(L)
    length = nilpotent_length(L).length
    _need(length <= 2, f"nilpotent length {length}")
    subs = oracle.enum_subalgebras(L)
    in_m = {A for A in subs if in_M(L, A) is not None}
    cartans = set(oracle.enum_cartans(L))
    if in_m != cartans:
        raise Falsified("M(L) differs from the set of Cartan subalgebras")
    return [{"length": length, "cartans": len(cartans)}]


def check_T9(L: LeibnizAlgebra) -> list:
    _need(_in_budget(L, 5), "outside the enumeration budget")
    _need(is_solvable(L), "not solvable")
    length = nilpotent_length(L).length
    _need(length <= 3, f"nilpotent length {length}")
    cartans = oracle.enum_cartans(L)
    N = nilradical(L)
    members = 0
    core_hits = 0
    for A in oracle.enum_subalgebras(L):
        if in_M(L, A) is None:
            continue
        members += 1
        over = [H for H in cartans if contains(H, A)]
        if len(over) != 1:
            raise Falsified(f"member of M(L) lies in {len(over)} Cartan subalgebras", subspace_to_json(A))
        K = fitting_core(L, A, subspace_sum(A, N))
        core_hits += K.space == over[0]
    return [{"length": length, "members": members, "cartans": len(cartans), "fitting_core_matches": core_hits}]


def _nilpotent_elements(L: LeibnizAlgebra) -> list:
    """Small elements x with L_x nilpotent, for building inner automorphisms."""
    F, n = L.field, L.n
    out = list(nilradical(L).basis)
    for i in range(n):
        for j in range(i, n):
            x = tuple(F(int(k == i) + int(k == j and j != i)) for k in range(n))
            if mat_is_zero(mat_pow(F, L.left_mult(x), n)) and x not in out:
                out.append(x)
    return out


def check_T6(L: LeibnizAlgebra, expected_radical=None, seed: int = 0) -> list:
    _need(not L.field.p, "structural surrogate runs over Q")
    F = L.field
    R = radical(L)
    if expected_radical is not None and R != expected_radical:
        raise Falsified("radical differs from the blockwise expectation")
    H1 = find_cartan(L)
    rng = random.Random(seed)
    pool = _nilpotent_elements(L)
    word = []
    for _ in range(rng.randint(1, 3) if pool else 0):
        s, x = rng.choice([-2, -1, 1, 2]), rng.choice(pool)
        word.append((tuple(F(s * c) for c in x), "L"))
    alpha = from_word(L, word)
    H2 = alpha.image(H1)
    if not is_cartan(L, H2):
        raise Falsified("image of a Cartan subalgebra under exp is not Cartan")
    # forward: the projected word induces the quotient map and conjugates the images
    Q = quotient(L, R)
    bar_word = [(R.quotient_coords(x), "L/R") for x, _ in word]
    abar = from_word(Q.algebra, bar_word)
    for v in (L.basis_vector(i) for i in range(L.n)):
        if R.quotient_coords(alpha(v)) != abar(R.quotient_coords(v)):
            raise Falsified("projected word does not induce the quotient automorphism")
    H1b, H2b = project(L, R, H1), project(L, R, H2)
    if abar.image(H1b) != H2b:
        raise Falsified("projected certificate does not conjugate the images mod R")
    # converse: lift the quotient word, then solve inside H + R and extend
    lifted = []
    for (u, _), (x, _) in zip(bar_word, word):
        rep = lincomb(F, u, R.complement_basis(), L.n)
        ok = mat_is_zero(mat_pow(F, L.left_mult(rep), L.n))
        lifted.append((rep if ok else x, "L"))
    beta = from_word(L, lifted)
    H1p = beta.image(H1)
    U = subspace_sum(H2, R)
    if subspace_sum(H1p, R) != U:
        raise Falsified("lifted quotient certificate does not match H + R")
    Ua = restrict(L, U).algebra
    inner = conjugate_cartans(Ua, to_coords(U, H1p), to_coords(U, H2))
    gamma = extend_inner(L, U, inner.automorphism, tag="(H+R)^2")
    full = compose(gamma, beta)
    cert = ConjugacyCertificate(full, H1, H2, "I(L)", L.full())
    return [cert.to_json(), {"radical": subspace_to_json(R), "quotient_dim": Q.algebra.n}]


CHECKS: dict = {
    "L1": check_L1,
    "T1": check_T1,
    "T2": check_T2,
    "C1": check_C1,
    "T3": check_T3,
    "T5": check_T5,
    "T7": check_T7,
    "T8": check_T8,
    "T9": check_T9,
}


def verify(theorem: str, instances: Iterable[Instance]) -> list:
    if theorem == "T6-structural":
        raise ValueError("use verify_T6 with (instance, radical) pairs")
    check = CHECKS[theorem]
    reports = [_run(theorem, inst, check) for inst in instances]
    reports.sort(key=lambda r: r.instance["id"])
    return reports


def verify_T6(pairs: Iterable[tuple]) -> list:
    reports = []
    for i, (L, R) in enumerate(pairs):
        inst = Instance(L, "levi_sums", 0, i)
        reports.append(_run("T6-structural", inst, lambda A, R=R, i=i: check_T6(A, R, seed=i)))
    return reports


# ----------------------------------------------------------- instance pools

def parse_field(spec) -> Field:
    if isinstance(spec, int):
        return GF(spec)
    if isinstance(spec, dict):
        return field_from_json(spec)
    s = str(spec).strip().upper()
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("GF"):
        return GF(int(s[2:].strip("()")))
    raise ValueError(f"unknown field {spec!r}")


def exhaustive_pool(F: Field, max_dim: int = 2) -> list:
    out = []
    for n in range(1, max_dim + 1):
        for i, L in enumerate(all_algebras(F, n)):
            out.append(Instance(L, f"all{n}", 0, i))
    return out


def generated_pool(F: Field, seed: int, count: int, min_dim: int = 1, max_dim: int = 6, family: str = "nilpotent_plus_derivations") -> list:
    return list(gen_solvable(GeneratorSpec(family, F, seed, count, min_dim, max_dim)))


def small_pool(seed: int = 0, per_field: int = 25) -> list:
    """GF(2)/GF(3), dim ≤ 4: every table in dims 1-2 plus generated dims 3-4."""
    out = []
    for F in (GF(2), GF(3)):
        out += exhaustive_pool(F, 2)
        out += generated_pool(F, seed, per_field, 3, 4)
    out += generated_pool(GF(2), seed, 6, 4, 4, "length(3)")
    return out


DEFAULT_CONFIG = {
    "seed": 0,
    "theorems": {
        "L1": {"fields": ["Q", "GF5"], "count": 100, "max_dim": 6},
        "T5": {"fields": ["Q", "GF5"], "count": 100, "max_dim": 6},
        "T7": {"fields": ["Q", "GF5"], "count": 100, "max_dim": 6},
        "C1": {"pool": "small", "count": 25},
        "T2": {"pool": "small", "count": 25},
        "T3": {"pool": "small", "count": 25},
        "T1": {"pool": "small", "count": 25},
        "T8": {"pool": "small", "count": 25},
        "T9": {"family": "length(3)", "fields": ["GF2"], "count": 24, "max_dim": 5},
        "T6-structural": {"count": 24},
    },
}


def instances_for(theorem: str, cfg: dict, seed: int) -> list:
    if cfg.get("pool") == "small":
        return small_pool(seed, cfg.get("count", 25))
    family = cfg.get("family", "nilpotent_plus_derivations")
    out = []
    for f in cfg.get("fields", ["Q"]):
        F = parse_field(f)
        out += generated_pool(F, seed, cfg.get("count", 10), cfg.get("min_dim", 1), cfg.get("max_dim", 6), family)
    return out


@dataclass
class SuiteResult:
    reports: list
    summary: dict

    @property
    def exit_code(self) -> int:
        return 1 if any(r.verdict == "falsified" for r in self.reports) else 0


def run_suite(config: Optional[dict] = None, only: Optional[list] = None) -> SuiteResult:
    config = DEFAULT_CONFIG if config is None else config
    seed = config.get("seed", 0)
    reports = []
    for theorem, cfg in config.get("theorems", {}).items():
        if only and theorem not in only:
            continue
        if theorem == "T6-structural":
            reports += verify_T6(levi_sums(seed, cfg.get("count", 24)))
        else:
            reports += verify(theorem, instances_for(theorem, cfg, seed))
    summary: dict = {}
    for r in reports:
        row = summary.setdefault(r.theorem, {"verified": 0, "falsified": 0, "skipped": 0})
        row[r.verdict] += 1
    return SuiteResult(reports, summary)


def summary_table(summary: dict) -> str:
    lines = [f"{'theorem':<15}{'verified':>10}{'falsified':>11}{'skipped':>9}"]
    for t, row in summary.items():
        lines.append(f"{t:<15}{row['verified']:>10}{row['falsified']:>11}{row['skipped']:>9}")
    return "\n".join(lines)


def dump_reports(reports: list, fp, timing: bool = True) -> None:
    for r in reports:
        fp.write(json.dumps(r.to_json(timing), sort_keys=True) + "\n")


__all__ = [
    "THEOREMS",
    "TheoremReport",
    "right_action",
    "check_L1", "check_T1", "check_T2", "check_C1", "check_T3", "check_T5",
    "check_T6", "check_T7", "check_T8", "check_T9",
    "verify",
    "verify_T6",
    "parse_field",
    "exhaustive_pool",
    "generated_pool",
    "small_pool",
    "DEFAULT_CONFIG",
    "run_suite",
    "SuiteResult",
    "summary_table",
    "dump_reports",
]
