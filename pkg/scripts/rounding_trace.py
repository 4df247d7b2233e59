"""Unsolved pairs per rounding iteration and the writing time after each pipeline stage."""
import argparse

from stencilplan.cli.generate import generate, preset
from stencilplan.onedim import OneDimConfig, solve_1d
from stencilplan.onedim.rounding import fast_ilp_convergence, successive_rounding


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", default="1D")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n", type=int)
    ap.add_argument("--dominance", choices=["corrected", "literal"], default="corrected")
    args = ap.parse_args()
    overrides = {"n": args.n} if args.n else {}
    inst = generate(preset(args.preset, args.seed, **overrides))
    state = successive_rounding(inst, dominance=args.dominance)
    print("unsolved pairs per iteration:", " ".join(map(str, state.unsolved_history)))
    state = fast_ilp_convergence(inst, state, dominance=args.dominance)
    print("binaries in the final program:", state.binaries_history[-1] if state.binaries_history else 0)
    _, report = solve_1d(inst, OneDimConfig(dominance=args.dominance))
    for stage, total in report.stages.items():
        print(f"{stage:12s} {total}")
    print(f"chars {report.selected}, {report.seconds:.1f} s")


if __name__ == "__main__":
    main()
