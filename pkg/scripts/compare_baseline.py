"""Pipeline vs greedy on generated multi-region suites, one line per instance plus a summary."""
import argparse
import statistics

from stencilplan.cli.baseline import greedy_baseline
from stencilplan.cli.generate import generate, preset
from stencilplan.cli.main import DEFAULT_MAX_MOVES
from stencilplan.onedim import solve_1d
from stencilplan.twodim import SaConfig, TwoDimConfig, solve_2d


def solve(inst, seed, max_moves):
    if inst.mode == "1d":
        return solve_1d(inst)[1]
    return solve_2d(inst, TwoDimConfig(sa=SaConfig(seed=seed, max_moves=max_moves)))[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", default="1M")
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--max-moves", type=int, default=DEFAULT_MAX_MOVES)
    args = ap.parse_args()
    gains = []
    print("seed  greedy_T  pipeline_T  gain  seconds")
    for seed in range(args.seeds):
        inst = generate(preset(args.preset, seed))
        base = greedy_baseline(inst)[1]
        ours = solve(inst, seed, args.max_moves or None)
        gain = 1 - ours.total / base.total if base.total else 0.0
        gains.append(gain)
        print(f"{seed:4d}  {base.total:8d}  {ours.total:10d}  {gain:5.1%}  {ours.seconds:7.1f}")
    wins = sum(g >= 0 for g in gains)
    print(f"mean gain {statistics.mean(gains):.1%}, no worse in {wins}/{len(gains)}")


if __name__ == "__main__":
    main()
