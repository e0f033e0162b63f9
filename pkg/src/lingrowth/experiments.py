"""Seeded batch experiments shared by the command line and the acceptance suite.

Each runner draws trial ``i`` from ``stream(seed, label, i)`` and returns
plain data (lists of verdict dicts, summary counts) so that reruns with
the same seed serialise to identical bytes.
"""

from __future__ import annotations

import numpy as np

from . import cayley, groups, quasirandom
from .errors import NotGenerating
from .groups import GroupSpec, make_spec
from .growth import check_ruzsa, check_subgroup_growth
from .rng import stream
from .sets import ElementSet
from .structure import closure, diagonal_subgroup, sylow_p_subgroup
from .verdict import FINDING, VIOLATED
from .words import Word


def random_symmetric_set(spec: GroupSpec, rng: np.random.Generator, max_size: int = 12) -> ElementSet:
    """``X ∪ X^-1 ∪ {1}`` for a uniform random ``X`` of random size ``1..max_size``."""
    G = ElementSet.whole_group(spec)
    k = int(rng.integers(1, max_size + 1))
    return G.sample(rng, k).symmetrized().with_identity()


def summarize(verdicts) -> dict:
    counts = {}
    for v in verdicts:
        counts[v.verdict] = counts.get(v.verdict, 0) + 1
    return {"trials": len(verdicts), "counts": dict(sorted(counts.items()))}


def ruzsa_batch(spec: GroupSpec, trials: int, ks=(3, 4, 5, 6), seed: int = 0, max_size: int = 12) -> dict:
    verdicts = []
    for i in range(trials):
        S = random_symmetric_set(spec, stream(seed, f"ruzsa:{spec}", i), max_size)
        verdicts.extend(check_ruzsa(S, k) for k in ks)
    out = summarize(verdicts)
    out["violations"] = [v.to_dict() for v in verdicts if v.verdict == VIOLATED]
    return out


def subgroup_pool(spec: GroupSpec) -> dict[str, ElementSet]:
    """A fixed menu of subgroups used by the subgroup-growth experiments."""
    U = sylow_p_subgroup(spec, "upper")
    T = diagonal_subgroup(spec)
    return {
        "trivial": ElementSet.identity_set(spec),
        "center": ElementSet(spec, groups.center_codes(spec)),
        "upper": U,
        "lower": sylow_p_subgroup(spec, "lower"),
        "diagonal": T,
        "borel": closure(U | T),
        "whole": ElementSet.whole_group(spec),
    }


def subgroup_growth_batch(spec: GroupSpec, trials: int, seed: int = 0, kmax: int = 4, max_size: int = 10) -> dict:
    """Random ``(S, H, k)``; ``H`` is a pool subgroup or a random cyclic subgroup."""
    pool = subgroup_pool(spec)
    names = list(pool) + ["cyclic"]
    verdicts = []
    for i in range(trials):
        rng = stream(seed, f"subgroup-growth:{spec}", i)
        name = names[int(rng.integers(len(names)))]
        if name == "cyclic":
            H = closure(ElementSet.whole_group(spec).sample(rng, 1))
        else:
            H = pool[name]
        S = random_symmetric_set(spec, rng, max_size)
        k = int(rng.integers(1, kmax + 1))
        v = check_subgroup_growth(S, H, k, check=False)
        v.parameters["H"] = name
        verdicts.append(v)
    out = summarize(verdicts)
    out["violations"] = [v.to_dict() for v in verdicts if v.verdict == VIOLATED]
    return out


def _sample_of_size(G: ElementSet, rng, lo: int) -> ElementSet:
    size = int(rng.integers(lo, len(G) + 1))
    return G.sample(rng, size)


def gowers_batch(spec: GroupSpec, trials: int, seed: int = 0, k: int | None = None) -> dict:
    """Random sets of size between the Gowers threshold and ``|G|``."""
    G = ElementSet.whole_group(spec)
    k = k if k is not None else quasirandom.degc_lookup(spec).k
    lo = 1
    while lo**3 * k <= len(G) ** 3:
        lo += 1
    verdicts = []
    for i in range(trials):
        A = _sample_of_size(G, stream(seed, f"gowers:{spec}", i), lo)
        verdicts.append(quasirandom.gowers_check(G, A, k))
    out = summarize(verdicts)
    out.update({"k": k, "min_size": lo, "|G|": len(G)})
    out["violations"] = [v.to_dict() for v in verdicts if v.verdict == VIOLATED]
    return out


def psl_trick_batch(spec: GroupSpec, trials: int, seed: int = 0) -> dict:
    """Random sets at or above the large-set threshold (none exist if it exceeds ``|G|``)."""
    G = ElementSet.whole_group(spec)
    lo = quasirandom.psl_trick_min_size(spec)
    out = {"min_size": lo, "|G|": len(G), "vacuous": lo > len(G)}
    if lo > len(G):
        out.update(summarize([]))
        out["violations"] = []
        return out
    verdicts = []
    for i in range(trials):
        A = _sample_of_size(G, stream(seed, f"psl-trick:{spec}", i), lo)
        verdicts.append(quasirandom.psl_trick_check(spec, A))
    out.update(summarize(verdicts))
    out["violations"] = [v.to_dict() for v in verdicts if v.verdict == VIOLATED]
    return out


def turbo_batch(spec: GroupSpec, t: int, trials: int, seed: int = 0) -> dict:
    """Random ``A_1..A_t`` whose sizes meet the product threshold."""
    G = ElementSet.whole_group(spec)
    k = quasirandom.degc_lookup(spec).k
    N = len(G)
    # every |A_i| >= lo meets the product bound
    lo = 1
    while lo**t * k ** (t - 2) < N**t:
        lo += 1
    verdicts = []
    for i in range(trials):
        rng = stream(seed, f"turbo:{spec}:{t}", i)
        sets = [_sample_of_size(G, rng, lo) for _ in range(t)]
        verdicts.append(quasirandom.turbo_check(G, sets, k))
    out = summarize(verdicts)
    out["violations"] = [v.to_dict() for v in verdicts if v.verdict == VIOLATED]
    return out


def baby_product_batch(n: int, q: int, trials: int, seed: int = 0, max_extras: int = 2) -> dict:
    """Seeded extras (1..max_extras random elements); non-generating draws are resampled."""
    spec = make_spec("SL", n, q)
    G = ElementSet.whole_group(spec)
    rows, verdicts, resampled = [], [], 0
    for i in range(trials):
        rng = stream(seed, f"baby-product:{spec}", i)
        while True:
            extras = G.sample(rng, int(rng.integers(1, max_extras + 1)))
            try:
                v = quasirandom.baby_product_experiment(n, q, extras)
                break
            except NotGenerating:
                resampled += 1
        verdicts.append(v)
        eq = v.exact_quantities
        rows.append({"trial": i, "extras": extras.to_lines()[1:], "branch": eq["branch"],
                     "|S|": eq["|S|"], "|S^3|": eq["|S^3|"], "ratio": eq["ratio"]})
    out = summarize(verdicts)
    out.update({"resampled": resampled, "rows": rows})
    return out


def class_cover_all(spec: GroupSpec) -> dict:
    rows = []
    for g in quasirandom.non_central_class_reps(spec):
        v = quasirandom.class_cover_exponent(spec, g)
        rows.append({"rep": g.encoding.hex(), "verdict": v.verdict, **v.exact_quantities})
    ms = [r["m"] for r in rows]
    return {"spec": str(spec), "classes": len(rows), "max_m": max(ms), "bound_40n": 40 * spec.n,
            "violations": [r for r in rows if r["verdict"] == VIOLATED], "rows": rows}


def waring_batch(w: Word, spec: GroupSpec, trials: int, seed: int = 0) -> dict:
    v = quasirandom.waring_check(w, spec, trials, seed)
    return {"verdict": v.to_dict(), "finding": v.verdict == FINDING}


def conj_decomp_batch(spec: GroupSpec, size: int, trials: int, seed: int = 0, budget: int = 64) -> dict:
    G = ElementSet.whole_group(spec)
    verdicts = []
    for i in range(trials):
        A = G.sample(stream(seed, f"conj-decomp:{spec}", i), size)
        verdicts.append(quasirandom.conj_product_decomposition(G, A, budget=budget, seed=seed))
    out = summarize(verdicts)
    out["rows"] = [v.exact_quantities for v in verdicts]
    return out


def babai_sweep_range(ps, trials: int, seed: int = 0, family: str = "PSL") -> dict:
    """Diameter sweeps over ``family(2,p)`` for each ``p``; rows plus per-group summaries."""
    rows, summary = [], []
    for p in ps:
        rep = cayley.babai_sweep(make_spec(family, 2, p), trials, seed)
        rows.extend(rep["rows"])
        summary.append({k: rep[k] for k in ("spec", "order", "max_diameter", "log2_order_squared", "resampled", "distribution")})
        summary[-1]["within_bound"] = rep["max_diameter"] <= rep["log2_order_squared"]
    return {"rows": rows, "summary": summary}


def parse_p_range(text: str) -> list[int]:
    """Primes in ``"a..b"`` (inclusive), or a comma list ``"5,7,11"``."""
    from .field import is_prime

    text = text.strip()
    if ".." in text:
        a, b = (int(x) for x in text.split(".."))
        return [p for p in range(a, b + 1) if is_prime(p)]
    return [int(x) for x in text.split(",") if x.strip()]
