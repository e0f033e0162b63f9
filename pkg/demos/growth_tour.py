"""A short tour of product-set growth in small linear groups.

Run with ``python3 demos/growth_tour.py``.  Everything is exact: set
sizes are counted after full enumeration, and ratios are Fractions.
"""

from lingrowth import ElementSet, make_spec, tripling
from lingrowth.growth import check_ruzsa, coset_cover_count, slow_growth_candidate
from lingrowth.rng import stream
from lingrowth.structure import diagonal_subgroup, standard_generators, sylow_p_subgroup


def show_powers(label, A, kmax=6):
    rep = tripling(A, kmax=kmax)
    print(f"{label:<34} |A^k| = {rep.sizes}  K = {rep.tripling}")


def main():
    spec = make_spec("SL", 2, 7)
    print(f"{spec}: order {spec.order}\n")

    # a subgroup does not grow at all
    show_powers("upper unitriangular subgroup", sylow_p_subgroup(spec))
    # transvection generators grow until they fill the group
    show_powers("transvections plus 1", standard_generators(spec).with_identity())
    # a random symmetric set of the same size grows much faster
    G = ElementSet.whole_group(spec)
    R = G.sample(stream(0, "tour"), 4).symmetrized().with_identity()
    show_powers("random symmetric set plus 1", R)

    print()
    for k in (3, 4, 5, 6):
        v = check_ruzsa(R, k)
        q = v.exact_quantities
        print(f"k={k}: |S^k|/|S| = {q['lhs']}  <=  (|S^3|/|S|)^(k-2) = {q['rhs']}  [{v.verdict}]")

    D = diagonal_subgroup(spec)
    print(f"\nR meets {coset_cover_count(R, D)} right cosets of the diagonal torus (index {spec.order // len(D)})")

    res = slow_growth_candidate(3)
    rep = res.report
    print(f"\nSL(3,3): generating set of size {len(res.witness)} with |A^3| = {rep.sizes[2]}"
          f" = {float(rep.tripling):.1f}|A| ({res.source})")


if __name__ == "__main__":
    main()
