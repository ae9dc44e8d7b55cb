#!/usr/bin/env python3
"""Census of all 2-dimensional left Leibniz tables over GF(p).

For each table: nilpotent?, Lie?, number of Cartan subalgebras, and whether
the Cartan subalgebras form one I(L, L^2)-orbit (they always should).
"""
import argparse
from collections import Counter

from leibniz import oracle
from leibniz.algebra import derived_algebra, is_lie
from leibniz.exactlin import GF
from leibniz.generate import all_algebras
from leibniz.series import char_p_guard, is_nilpotent


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3])
    args = ap.parse_args(argv)
    for p in args.p:
        F = GF(p)
        rows = Counter()
        bad = 0
        for L in all_algebras(F, 2):
            cartans = oracle.enum_cartans(L)
            single = True
            if char_p_guard(L).ok and len(cartans) > 1:
                single = len(oracle.orbits(L, derived_algebra(L), cartans)) == 1
            bad += not single
            rows[(is_nilpotent(L) is not None, is_lie(L), len(cartans))] += 1
        print(f"GF({p}): {sum(rows.values())} tables, {bad} with several Cartan orbits")
        print(f"  {'nilpotent':>9} {'lie':>5} {'#cartan':>8} {'tables':>7}")
        for (nil, lie, k), m in sorted(rows.items()):
            print(f"  {str(nil):>9} {str(lie):>5} {k:>8} {m:>7}")


if __name__ == "__main__":
    main()
