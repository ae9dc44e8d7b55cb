"""Small named algebras used across tests, docs and the harness.

Indices are 0-based: e1 of the usual notation is coordinate 0.
"""
from __future__ import annotations

from .algebra import LeibnizAlgebra, direct_sum, from_brackets
from .exactlin import QQ, Field


def ab2(F: Field = QQ) -> LeibnizAlgebra:
    return from_brackets(F, 2, {}, "Ab2")


def abelian(n: int, F: Field = QQ) -> LeibnizAlgebra:
    return from_brackets(F, n, {}, f"Ab{n}")


def n2(F: Field = QQ) -> LeibnizAlgebra:
    """basis {a, b}, [a, a] = b."""
    return from_brackets(F, 2, {(0, 0): (0, 1)}, "N2")


def r2(F: Field = QQ) -> LeibnizAlgebra:
    """basis {e1, e2}, [e2, e1] = e1."""
    return from_brackets(F, 2, {(1, 0): (1, 0)}, "R2")


def aff2(F: Field = QQ) -> LeibnizAlgebra:
    """basis {e1, e2}, [e2, e1] = e1, [e1, e2] = -e1."""
    return from_brackets(F, 2, {(1, 0): (1, 0), (0, 1): (-1, 0)}, "Aff2")


def h3(F: Field = QQ) -> LeibnizAlgebra:
    """basis {x, y, z}, [x, y] = z, [y, x] = -z."""
    return from_brackets(F, 3, {(0, 1): (0, 0, 1), (1, 0): (0, 0, -1)}, "H3")


def so3(F: Field = QQ) -> LeibnizAlgebra:
    """[x, y] = z, [y, z] = x, [z, x] = y with antisymmetric completion."""
    return from_brackets(
        F,
        3,
        {
            (0, 1): (0, 0, 1), (1, 0): (0, 0, -1),
            (1, 2): (1, 0, 0), (2, 1): (-1, 0, 0),
            (2, 0): (0, 1, 0), (0, 2): (0, -1, 0),
        },
        "so3",
    )


def sl2(F: Field = QQ) -> LeibnizAlgebra:
    """basis {e, f, h}: [e, f] = h, [h, e] = 2e, [h, f] = -2f."""
    return from_brackets(
        F,
        3,
        {
            (0, 1): (0, 0, 1), (1, 0): (0, 0, -1),
            (2, 0): (2, 0, 0), (0, 2): (-2, 0, 0),
            (2, 1): (0, -2, 0), (1, 2): (0, 2, 0),
        },
        "sl2",
    )


def cyclic(n: int, F: Field = QQ) -> LeibnizAlgebra:
    """Null-filiform Leibniz algebra: [e1, e_i] = e_{i+1}."""
    return from_brackets(F, n, {(0, i): tuple(int(k == i + 1) for k in range(n)) for i in range(n - 1)}, f"NF{n}")


ATLAS = {
    "Ab2": ab2,
    "N2": n2,
    "R2": r2,
    "Aff2": aff2,
    "H3": h3,
    "so3": so3,
    "sl2": sl2,
}


def get(name: str, F: Field = QQ) -> LeibnizAlgebra:
    return ATLAS[name](F)


__all__ = ["ab2", "abelian", "n2", "r2", "aff2", "h3", "so3", "sl2", "cyclic", "direct_sum", "ATLAS", "get"]
