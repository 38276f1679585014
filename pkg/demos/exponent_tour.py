"""Tour of the exponent calculators across their regimes.

Walks a few (m, p, r) triples through every applicable formula, then
demonstrates the two constructive tools: lifting a mixed exponent vector to
the critical line and splitting one mixed norm into two by Hoelder.
"""

import argparse

from mixedsums import (
    INF,
    classical_exponents,
    harmonic_sum,
    holder_split,
    lemma_lift,
    predict,
)


def show(m, p, r):
    rep = predict(m, p, r)
    fields = rep.to_dict()
    flags = fields.pop("flags")
    label = ", ".join("inf" if x == INF else f"{x:g}" for x in p)
    rlabel = ", ".join("inf" if x == INF else f"{x:g}" for x in r)
    print(f"m={m}  p=({label})  r=({rlabel})")
    for key, value in fields.items():
        if value is None:
            continue
        print(f"  {key} = {value}")
    active = [k for k, v in flags.items() if v]
    print(f"  active regimes: {', '.join(active) if active else 'none'}")
    print()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=float, default=8.0,
                        help="common exponent for the lifting demo")
    args = parser.parse_args()

    print("=== classical exponents ===")
    for m, p in ((2, (INF, INF)), (2, (4, 4)), (3, (6, 6, 6))):
        c = classical_exponents(m, p)
        print(f"m={m} p={p}: bh={c.bh:.6f} hlpp={c.hlpp} dsp={c.dsp}")
    print()

    print("=== full predictions ===")
    show(2, (INF, INF), (1.0, 1.0))      # the optimality benchmark pair
    show(2, (4.0, 4.0), (1.0, 2.0))      # both unified cases, equal values
    show(2, (4.0, 2.0), (2.0, 1.0))      # anisotropic regime
    show(1, (2.0,), (1.0,))              # one-variable linear case

    print("=== lifting to the critical line ===")
    pv = args.p
    for r in ((1.0, 1.0, 1.0), (1.2, 1.5, 1.9), (1.7, 1.7, 1.7)):
        p = (pv,) * 3
        s = lemma_lift(r, p)
        h = harmonic_sum(p)
        target = 2.0 - h
        total = sum(1.0 / x for x in s)
        print(f"r={r} -> s={tuple(round(x, 6) for x in s)}  "
              f"sum 1/s = {total:.12f} (target {target:.12f})")
    print()

    print("=== Hoelder splitting ===")
    r = (1.0, 1.0)
    s = (2.0, 2.0)
    x = holder_split(r, s)
    print(f"1/{r} = 1/{s} + 1/{x}")


if __name__ == "__main__":
    main()
