"""Compare the three norm estimators on one random sign form.

Draws an m-linear +-1 form, then prints the exact enumerated norm, the
ascent lower bound, the certificate's probabilistic upper exponent, and the
mixed ell_r norm the growth experiments divide by it.
"""

import argparse
import time

from mixedsums import (
    INF,
    alternating_ascent,
    analytic_norm,
    brute_force_norm,
    diagonal_form,
    ksz_random_form,
    mixed_norm,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=2, help="arity")
    parser.add_argument("--n", type=int, default=8, help="size per slot")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--restarts", type=int, default=32)
    args = parser.parse_args()

    p = (INF,) * args.m
    form, cert = ksz_random_form(args.m, args.n, p, args.seed)
    print(f"+-1 form: m={args.m} n={args.n} seed={args.seed}")
    print(f"certificate: norm <= C * n^{cert.bound_exponent} with high probability")
    print()

    t0 = time.monotonic()
    exact = brute_force_norm(form)
    t_brute = time.monotonic() - t0
    print(f"brute force:  {exact.value:.12f}  ({t_brute * 1e3:.1f} ms, "
          f"kind={exact.kind})")

    t0 = time.monotonic()
    lower = alternating_ascent(form, restarts=args.restarts, seed=0)
    t_ascent = time.monotonic() - t0
    gap = exact.value - lower.value
    print(f"ascent:       {lower.value:.12f}  ({t_ascent * 1e3:.1f} ms, "
          f"{lower.restarts_used} starts, gap {gap:.2e})")

    bound = float(args.n) ** cert.bound_exponent
    print(f"n^{cert.bound_exponent}:        {bound:.12f}  "
          f"(ratio to exact: {exact.value / bound:.3f})")
    print()

    lhs = mixed_norm(form.coefficients, (1.0,) * args.m).value
    print(f"mixed ell_1 norm of the coefficients: {lhs:.6f}")
    print(f"ratio lhs/norm = {lhs / exact.value:.6f} "
          f"(grows like n^0.5 for the optimal forms)")
    print()

    diag = diagonal_form(args.m, args.n, p)
    closed = analytic_norm(diag)
    check = brute_force_norm(diag)
    print(f"sanity: diagonal form closed-form norm {closed.value:g} "
          f"vs enumerated {check.value:g}")


if __name__ == "__main__":
    main()
