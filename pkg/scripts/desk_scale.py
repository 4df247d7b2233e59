"""Small instances: pipeline against the exact optimum."""
import argparse

from stencilplan.cli.generate import generate, preset
from stencilplan.lp import optimum_by_subsets
from stencilplan.onedim import solve_1d
from stencilplan.twodim import SaConfig, TwoDimConfig, solve_2d


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", choices=["1T", "2T"], default="1T")
    ap.add_argument("--sizes", type=int, nargs="+", default=[6, 8, 10])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--sa-seeds", type=int, default=5, help="best of this many annealing seeds (2T)")
    args = ap.parse_args()
    print("n  seed  exact_T  pipeline_T  ratio  exact_s  pipeline_s")
    for n in args.sizes:
        for seed in range(args.seeds):
            inst = generate(preset(args.preset, seed, n=n))
            exact = optimum_by_subsets(inst)
            if inst.mode == "1d":
                rep = solve_1d(inst)[1]
                secs = rep.seconds
            else:
                runs = [solve_2d(inst, TwoDimConfig(sa=SaConfig(seed=s)))[1] for s in range(args.sa_seeds)]
                rep = min(runs, key=lambda r: r.total)
                secs = sum(r.seconds for r in runs)
            ratio = rep.total / exact.total if exact.total else 1.0
            print(f"{n:2d} {seed:5d} {exact.total:8d} {rep.total:11d} {ratio:6.3f} {exact.seconds:8.2f} {secs:11.2f}")


if __name__ == "__main__":
    main()
