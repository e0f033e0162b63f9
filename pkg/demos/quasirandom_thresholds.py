"""Where the size thresholds for A^3 = G actually sit in small groups.

Run with ``python3 demos/quasirandom_thresholds.py``.  For PSL(2,p) we
print the minimal representation degree k, the Gowers threshold
|G|/k^(1/3) and the PSL threshold 2|G|/q^(1/3), then sample sets just
above the Gowers threshold and check A^3 = G.
"""

from lingrowth import ElementSet, make_spec
from lingrowth.quasirandom import (
    class_cover_exponent,
    degc_lookup,
    gowers_check,
    non_central_class_reps,
    psl_trick_min_size,
    sylow_product_cover,
)
from lingrowth.rng import stream


def gowers_min_size(order, k):
    m = 1
    while m**3 * k <= order**3:
        m += 1
    return m


def main():
    print(f"{'group':<11}{'|G|':>6}{'k':>4}{'gowers':>8}{'psl':>7}  A^3 = G for sampled sets")
    for p in (5, 7, 11, 13):
        spec = make_spec("PSL", 2, p)
        G = ElementSet.whole_group(spec)
        k = degc_lookup(spec).k
        m = gowers_min_size(spec.order, k)
        hits = sum(gowers_check(G, G.sample(stream(0, "demo", i), m), k).verdict == "holds" for i in range(10))
        print(f"{str(spec):<11}{spec.order:>6}{k:>4}{m:>8}{psl_trick_min_size(spec):>7}  {hits}/10")

    print("\nSylow covers U V U ...:")
    for spec in (make_spec("SL", 2, 5), make_spec("SL", 3, 3)):
        v = sylow_product_cover(spec)
        print(f"  {spec}: {v.witness_or_counterexample['factors']} (sizes {v.exact_quantities['partial_sizes']})")

    spec = make_spec("SL", 2, 5)
    print(f"\nclass powers in {spec}:")
    for g in non_central_class_reps(spec):
        q = class_cover_exponent(spec, g).exact_quantities
        print(f"  |K| = {q['|K|']:>3}: m = {q['m']}  (counting bound {q['counting_lower_bound']:.2f})")


if __name__ == "__main__":
    main()
