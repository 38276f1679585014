"""Run one growth experiment and judge the fitted slope.

The default settings reproduce the optimality check: for bilinear +-1 forms
the ratio (mixed ell_1 norm) / (operator norm) should grow like n^{1/2},
matching the predicted critical exponent for (p, r) = (inf, inf), (1, 1).
"""

import argparse

from mixedsums import (
    INF,
    ExperimentConfig,
    loglog_fit,
    run_growth,
    series_to_csv,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--family", default="ksz",
                        choices=("ksz", "diagonal", "row", "product_extension"))
    parser.add_argument("--n-max", type=int, default=9, dest="n_max")
    parser.add_argument("--draws", type=int, default=20)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--mode", default="match",
                        choices=("match", "upper_bound"))
    args = parser.parse_args()

    kwargs = dict(
        family=args.family,
        m=2,
        p=(INF, INF),
        r=(1.0, 1.0),
        n_values=tuple(range(2, args.n_max + 1)),
        norm_method="brute",
        draws=args.draws,
        seed=args.seed,
    )
    if args.family in ("diagonal", "row"):
        kwargs["norm_method"] = "analytic"
        kwargs["draws"] = 1
    if args.family == "product_extension":
        kwargs.update(m=3, k=2, p=(INF, INF, INF), r=(1.0, 2.0, 2.0))

    config = ExperimentConfig(**kwargs)
    series = run_growth(config)
    print(series_to_csv(series), end="")
    print()

    fit = loglog_fit(series, mode=args.mode)
    predicted = fit.predicted.best_exponent()
    print(f"fitted slope    {fit.slope:.4f}")
    print(f"predicted       {predicted}")
    print(f"r_squared       {fit.r_squared:.4f}")
    print(f"verdict         {fit.verdict} (mode={fit.mode}, "
          f"tolerance={fit.tolerance})")


if __name__ == "__main__":
    main()
