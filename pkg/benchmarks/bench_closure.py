"""Time the compiled closure kernel against the pure-Python fallback.

Both kernels receive identical encoded instances and their outputs are
compared before any number is reported, so a speedup here is never a
shortcut.  Run from the repository root:

    python3 benchmarks/bench_closure.py
    python3 benchmarks/bench_closure.py --terms 200 2000 8000 --repeats 5
"""

import argparse
import random
import time

from modelbridge import _closure_py
from modelbridge.closure import _encode
from modelbridge.enumeration import ground_terms_capped
from modelbridge.syntax import Signature

try:
    from modelbridge import _closure_c
except ImportError:
    _closure_c = None

SIG = Signature(("e", "a"), (("mul", 2),), ())


def build_instance(rng: random.Random, n_terms: int, n_eqs: int):
    universe = ground_terms_capped(SIG, 6, n_terms)
    nodes, index, fn_ids, arg_offsets, arg_index = _encode(universe)
    pairs = [
        (rng.randrange(len(universe)), rng.randrange(len(universe)))
        for _ in range(n_eqs)
    ]
    return len(nodes), fn_ids, arg_offsets, arg_index, pairs


def run(kernel, instances, repeats: int) -> tuple[float, list[list[int]]]:
    best = float("inf")
    outputs: list[list[int]] = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        outputs = [kernel.close_classes(*inst) for inst in instances]
        best = min(best, time.perf_counter() - t0)
    return best, outputs


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--terms", type=int, nargs="+", default=[100, 1000, 5000])
    ap.add_argument("--instances", type=int, default=20)
    ap.add_argument("--eq-fraction", type=float, default=0.2)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=20260814)
    args = ap.parse_args()

    if _closure_c is None:
        print("compiled kernel not built; nothing to compare")
        return 1

    print(f"{'terms':>8} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for n_terms in args.terms:
        rng = random.Random(args.seed)
        n_eqs = max(1, int(n_terms * args.eq_fraction))
        instances = [
            build_instance(rng, n_terms, n_eqs) for _ in range(args.instances)
        ]
        t_pure, out_pure = run(_closure_py, instances, args.repeats)
        t_comp, out_comp = run(_closure_c, instances, args.repeats)
        assert out_pure == out_comp, "kernels disagree"
        print(
            f"{n_terms:>8} {t_pure:>9.4f}s {t_comp:>9.4f}s {t_pure / t_comp:>7.1f}x"
        )
    print(f"(best of {args.repeats}, {args.instances} instances per row, "
          f"{args.eq_fraction:.0%} random equations)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
