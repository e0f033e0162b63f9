"""Diameters, girths and spectral gaps of random Cayley graphs of PSL(2,p).

Run with ``python3 demos/cayley_sweep.py [trials]``.  Prints one line per
prime comparing the worst diameter seen with (log2|G|)^2, then a small
girth/gap table for PSL(2,13).
"""

import sys

from lingrowth.cayley import babai_sweep, girth_gap_scan
from lingrowth.groups import make_spec


def main(trials=10):
    print(f"{'group':<11}{'|G|':>8}{'max diam':>10}{'(log2|G|)^2':>13}  diameters")
    for p in (5, 7, 11, 13, 17, 19, 23):
        spec = make_spec("PSL", 2, p)
        res = babai_sweep(spec, trials, seed=0, with_girth=False)
        print(f"{str(spec):<11}{spec.order:>8}{res['max_diameter']:>10}{res['log2_order_squared']:>13.1f}  {res['distribution']}")

    print("\nPSL(2,13), random pairs:")
    for row in girth_gap_scan(make_spec("PSL", 2, 13), 5, seed=1):
        print(f"  girth {row['girth']:>3}  diameter {row['diameter']:>3}  lazy gap {row['gap']:.4f}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 10)
