"""Sample random (H, L, S), rebuild (f, g), and check that realizability recovers them.

    python3 scripts/roundtrip_sweep.py --count 500 --seed 1 --max-modes 2 --fock 20
"""
import argparse
import random
import time

from ncqsde.fock import FockConfig, verify_realization
from ncqsde.realize import QsdeModel, check_realizable, commutation_preservation, reconstruct_fg
from ncqsde.sampling import random_realization


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-modes", type=int, default=2)
    ap.add_argument("--max-channels", type=int, default=2)
    ap.add_argument("--h-degree", type=int, default=4)
    ap.add_argument("--l-degree", type=int, default=3)
    ap.add_argument("--fock", type=int, default=0, metavar="K",
                    help="also replay the first K single-mode cases as N=40 matrices")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    failures, worst, replayed = [], 0.0, 0
    t0 = time.perf_counter()
    for k in range(args.count):
        m, n = rng.randint(1, args.max_modes), rng.randint(1, args.max_channels)
        r = random_realization(rng, m, n, h_degree=args.h_degree, l_degree=args.l_degree)
        f, g = reconstruct_fg(r)
        model = QsdeModel(m, n, f, g, r.S)
        rep = check_realizable(model)
        if not rep.realizable or reconstruct_fg(rep.realization) != (f, g):
            failures.append((k, rep.verdict))
            continue
        if not commutation_preservation(model).ok:
            failures.append((k, "preservation"))
        if m == 1 and replayed < args.fock:
            worst = max(worst, verify_realization(model, rep.realization, FockConfig(dim=40)))
            replayed += 1
    dt = time.perf_counter() - t0
    print(f"{args.count} cases in {dt:.2f}s ({1000 * dt / args.count:.1f} ms each), "
          f"{len(failures)} failures")
    if replayed:
        print(f"Fock replay of {replayed} cases: max residual {worst:.2e}")
    for k, why in failures[:10]:
        print(f"  case {k}: {why}")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
