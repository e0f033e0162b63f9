"""Verifiers for the quasirandomness consequences: threshold tricks for
product sets, Sylow and conjugacy-class covers, conjugate-product
decompositions, sparse word-map statements and product-free sets.

Every threshold comparison is done in exact integer arithmetic after
raising both sides to a common power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import numpy as np

from . import groups
from .errors import (
    BudgetExceeded,
    CentralElement,
    CoverNotReached,
    NotGenerating,
    PreconditionViolated,
    UnknownGroup,
    UsageError,
)
from .groups import GroupElem, GroupSpec, make_spec
from .growth import tripling
from .rng import stream
from .sets import ElementSet, power_set, product_set
from .structure import closure, sylow_p_subgroup
from .verdict import FINDING, HOLDS, NOT_APPLICABLE, VIOLATED, Verdict
from .words import Word, word_image


# --- minimal representation degrees -------------------------------------------

@dataclass(frozen=True)
class RepDegreeEntry:
    spec: str
    k_lower: int
    k_exact: int | None
    kind: str
    source: str

    @property
    def k(self) -> int:
        """Best usable value: the exact degree when known."""
        return self.k_exact if self.k_exact is not None else self.k_lower


def _load_table() -> dict[str, RepDegreeEntry]:
    text = resources.files("lingrowth").joinpath("data/degc.tsv").read_text()
    table = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        spec, lo, ex, kind, src = line.split("\t")
        table[spec] = RepDegreeEntry(spec, int(lo), int(ex) if ex else None, kind, src)
    return table


DEGC_TABLE = _load_table()


def degc_lookup(spec: GroupSpec) -> RepDegreeEntry:
    """Table entry, else the ``(q-1)/2`` lower bound for SL(2,q) and its quotient PSL(2,q)."""
    key = str(spec)
    if key in DEGC_TABLE:
        return DEGC_TABLE[key]
    if spec.n == 2 and spec.family in ("SL", "PSL") and spec.q >= 4:
        return RepDegreeEntry(key, spec.q // 2, None, "bound", "degC(SL(2,q)) >= (q-1)/2")
    raise UnknownGroup(f"no minimal-degree data for {spec}")


# --- threshold tricks -----------------------------------------------------------

def _cube_covers(A: ElementSet, G: ElementSet) -> tuple[bool, int]:
    A3 = power_set(A, 3)
    return A3 == G, len(A3)


def gowers_check(G: ElementSet, A: ElementSet, k: int) -> Verdict:
    """If ``|A| > |G|/k^(1/3)`` (i.e. ``|A|^3 k > |G|^3``) then ``A^3 = G``."""
    if not A <= G:
        raise PreconditionViolated("A must be a subset of G")
    above = len(A) ** 3 * k > len(G) ** 3
    q = {"|A|": len(A), "|G|": len(G), "k": k, "threshold_met": above}
    if not above:
        return Verdict("|A| > |G|/k^(1/3) implies A^3 = G", str(G.spec), {"k": k}, NOT_APPLICABLE, None, q)
    ok, size = _cube_covers(A, G)
    q["|A^3|"] = size
    return Verdict(
        "|A| > |G|/k^(1/3) implies A^3 = G",
        str(G.spec),
        {"k": k},
        HOLDS if ok else VIOLATED,
        None if ok else A.to_lines(),
        q,
    )


def turbo_check(G: ElementSet, sets: list[ElementSet], k: int) -> Verdict:
    """If ``prod |A_i| >= |G|^t / k^(t-2)`` then ``A_1 A_2 ... A_t = G``."""
    t = len(sets)
    if t < 3:
        raise PreconditionViolated("need at least three sets")
    if any(len(A) == 0 for A in sets):
        raise PreconditionViolated("all sets must be nonempty")
    sizes = [len(A) for A in sets]
    above = math.prod(sizes) * k ** (t - 2) >= len(G) ** t
    q = {"sizes": sizes, "|G|": len(G), "k": k, "t": t, "threshold_met": above}
    statement = "prod|A_i| >= |G|^t/k^(t-2) implies A_1...A_t = G"
    if not above:
        return Verdict(statement, str(G.spec), {"k": k, "t": t}, NOT_APPLICABLE, None, q)
    P = sets[0]
    for A in sets[1:]:
        P = product_set(P, A)
    ok = P == G
    q["|product|"] = len(P)
    return Verdict(statement, str(G.spec), {"k": k, "t": t}, HOLDS if ok else VIOLATED,
                   None if ok else [A.to_lines() for A in sets], q)


def psl_trick_threshold_met(spec: GroupSpec, size: int) -> bool:
    """``size >= 2|G|/q^((n-1)/3)``, compared after cubing."""
    return size**3 * spec.q ** (spec.n - 1) >= 8 * spec.order**3


def psl_trick_min_size(spec: GroupSpec) -> int:
    """Smallest size meeting the threshold (may exceed ``|G|``)."""
    lo, hi = 0, 2 * spec.order
    while lo < hi:
        mid = (lo + hi) // 2
        if psl_trick_threshold_met(spec, mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def psl_trick_check(spec: GroupSpec, A: ElementSet) -> Verdict:
    """If ``|A| >= 2|G|/q^((n-1)/3)`` then ``A^3 = G`` (SL or PSL)."""
    if spec.family not in ("SL", "PSL"):
        raise PreconditionViolated("the large-set trick is stated for PSL(n,q) and SL(n,q)")
    statement = "|A| >= 2|G|/q^((n-1)/3) implies A^3 = G"
    q = {"|A|": len(A), "|G|": spec.order, "min_size": psl_trick_min_size(spec)}
    if not psl_trick_threshold_met(spec, len(A)):
        return Verdict(statement, str(spec), {}, NOT_APPLICABLE, None, q)
    G = ElementSet.whole_group(spec)
    ok, size = _cube_covers(A, G)
    q["|A^3|"] = size
    return Verdict(statement, str(spec), {}, HOLDS if ok else VIOLATED, None if ok else A.to_lines(), q)


# --- the baby product experiment ----------------------------------------------

def baby_product_experiment(n: int, q: int, extras: ElementSet, check_generation: bool = True) -> Verdict:
    """``S = H ∪ extras ∪ extras^-1`` with ``H`` the corner SL(2,q) in SL(n,q).

    Checks that ``S^3 = G`` or ``|S^3| > |S|·q^(1/1000)`` (compared as
    ``|S^3|^1000 > |S|^1000·q``), and reports which branch occurred.
    """
    if q < 4:
        raise PreconditionViolated("the baby product statement needs q >= 4")
    spec = make_spec("SL", n, q)
    if extras.spec != spec:
        raise PreconditionViolated(f"extras must lie in {spec}")
    H = ElementSet(spec, groups.embedded_sl2_codes(spec), _trusted=True)
    S = H | extras.symmetrized()
    if check_generation and len(closure(S)) != spec.order:
        raise NotGenerating("H together with the extras does not generate G")
    report = tripling(S)
    s1, s3 = report.sizes[0], report.sizes[2]
    if s3 == spec.order:
        branch = "S^3=G"
    elif s3**1000 > s1**1000 * q:
        branch = "growth"
    else:
        branch = None
    return Verdict(
        statement="S ⊇ SL(2,q) symmetric generating: S^3 = G or |S^3| > |S| q^(1/1000)",
        spec=str(spec),
        parameters={"n": n, "q": q, "|extras|": len(extras)},
        verdict=HOLDS if branch else VIOLATED,
        witness_or_counterexample=None if branch else S.to_lines(),
        exact_quantities={
            "branch": branch,
            "|S|": s1,
            "|S^3|": s3,
            "ratio": Fraction(s3, s1),
            "ratio_float": s3 / s1,
            "growth_report": report.to_dict(),
        },
    )


# --- Sylow and class covers ----------------------------------------------------

def sylow_product_cover(spec: GroupSpec, max_factors: int = 10) -> Verdict:
    """Least ``m`` with ``U V U V ... = G`` (``m`` factors), ``U``/``V`` the
    upper/lower unitriangular Sylow subgroups."""
    U = sylow_p_subgroup(spec, "upper")
    V = sylow_p_subgroup(spec, "lower")
    order = spec.order
    P, m, sizes = U, 1, [len(U)]
    while len(P) < order:
        if m >= max_factors:
            raise CoverNotReached(f"U V U ... did not cover {spec} with {max_factors} factors")
        P = product_set(P, V if m % 2 == 1 else U)
        m += 1
        sizes.append(len(P))
    cyclic = spec.n == 2 and spec.field.e == 1
    return Verdict(
        statement="G is a product of 5 Sylow p-subgroups (alternating U V U V U)",
        spec=str(spec),
        parameters={"max_factors": max_factors},
        verdict=HOLDS if m <= 5 else VIOLATED,
        witness_or_counterexample={"factors": "".join("UV"[i % 2] for i in range(m)), "cyclic_of_order_p": cyclic},
        exact_quantities={"m": m, "|U|": len(U), "partial_sizes": sizes, "|G|": order},
    )


@dataclass
class _ClassTable:
    codes: np.ndarray
    labels: np.ndarray
    reps: np.ndarray
    sizes: np.ndarray


_CLASS_TABLES: dict = {}


def _class_table(spec: GroupSpec) -> _ClassTable:
    if spec not in _CLASS_TABLES:
        codes, labels = groups.conjugacy_class_labels(spec)
        r = labels.max() + 1
        first = np.full(r, -1)
        idx = np.arange(len(labels))[::-1]
        first[labels[idx]] = idx
        _CLASS_TABLES[spec] = _ClassTable(codes, labels, codes[first], np.bincount(labels, minlength=r))
    return _CLASS_TABLES[spec]


def class_cover_exponent(spec: GroupSpec, g: GroupElem, max_power: int | None = None) -> Verdict:
    """Least ``m`` with ``(K ∪ K^-1 ∪ {1})^m = G``, ``K`` the class of ``g``.

    Powers of a normal set are normal, so each power is tracked as a set
    of classes: a class ``C`` lies in ``P·X`` iff ``rep(C)·X^-1`` meets ``P``.
    """
    T = _class_table(spec)
    center = set(groups.center_codes(spec).tolist())
    if g.code in center:
        raise CentralElement(f"{g} is central in {spec}")
    gi = int(groups.index_of(T.codes, np.int64(g.code)))
    lab = T.labels[gi]
    inv_lab = T.labels[groups.index_of(T.codes, spec.inv(np.int64(g.code)))]
    id_lab = T.labels[groups.index_of(T.codes, np.int64(spec.identity_code))]
    x_classes = {int(id_lab), int(lab), int(inv_lab)}
    in_x = np.isin(T.labels, list(x_classes))
    X = T.codes[in_x]
    bound = 40 * spec.n
    limit = max_power or 2 * bound
    r = len(T.reps)
    # reps·X^-1 = reps·X since X is symmetric
    prod_labels = [T.labels[groups.index_of(T.codes, spec.mul(np.int64(rep), X))] for rep in T.reps]
    current = np.zeros(r, dtype=bool)
    current[list(x_classes)] = True
    m = 1
    while not current.all():
        if m >= limit:
            raise CoverNotReached(f"class powers did not cover {spec} by exponent {limit}")
        current = np.array([current[pl].any() for pl in prod_labels])
        m += 1
    asserted = spec.q >= 4 and spec.family == "SL"
    ok = m <= bound
    size_x = int(in_x.sum())
    return Verdict(
        statement="(K ∪ K^-1)^(40n) = SL(n,q) for non-central classes K, q >= 4",
        spec=str(spec),
        parameters={"g": g.encoding.hex()},
        verdict=(HOLDS if ok else VIOLATED) if asserted else (HOLDS if ok else FINDING),
        witness_or_counterexample=None,
        exact_quantities={
            "m": m,
            "bound_40n": bound,
            "|K|": int(T.sizes[lab]),
            "|K ∪ K^-1 ∪ 1|": size_x,
            "counting_lower_bound": math.log(spec.order) / math.log(size_x),
        },
    )


def non_central_class_reps(spec: GroupSpec) -> list[GroupElem]:
    T = _class_table(spec)
    center = set(groups.center_codes(spec).tolist())
    return [spec.elem(c) for c in T.reps.tolist() if c not in center]


# --- conjugate products ------------------------------------------------------------

def conj_product_decomposition(
    G: ElementSet,
    A: ElementSet,
    budget: int = 64,
    seed: int = 0,
    candidates: int | None = None,
) -> Verdict:
    """Greedy ``G = A^{g_1} A^{g_2} ... A^{g_N}`` with ``g_1 = 1``.

    Each step takes the conjugate that enlarges the running product most;
    ties go to the smallest code of ``g``.  With ``candidates`` set, only
    that many seeded random ``g`` (plus the identity) are scored per step.
    """
    if len(A) < 2:
        raise PreconditionViolated("A must have at least two elements")
    spec = G.spec
    rng = stream(seed, "conj-decomp")
    P, N, chosen = A, 1, [spec.identity_code]
    while len(P) < len(G):
        if N >= budget:
            raise BudgetExceeded(f"no cover after {budget} conjugates", partial=len(P))
        if candidates is None or candidates >= len(G):
            gs = G.codes
        else:
            gs = np.unique(np.append(rng.choice(G.codes, size=candidates, replace=False), spec.identity_code))
        best_g, best_size, best_P = None, -1, None
        for g in gs.tolist():
            Ag = ElementSet(spec, spec.conj(A.codes, np.int64(g)))
            Q = product_set(P, Ag)
            if len(Q) > best_size:
                best_g, best_size, best_P = g, len(Q), Q
        P, N = best_P, N + 1
        chosen.append(best_g)
    lower = math.log(len(G)) / math.log(len(A))
    return Verdict(
        statement="G is a product of N conjugates of A with N <= c log|G|/log|A|",
        spec=str(spec),
        parameters={"|A|": len(A), "budget": budget, "seed": seed, "candidates": candidates},
        verdict=HOLDS if N >= lower - 1e-12 else VIOLATED,
        witness_or_counterexample={"conjugators": [spec.to_bytes(c).hex() for c in chosen]},
        exact_quantities={"N": N, "counting_lower_bound": lower, "empirical_c": N * math.log(len(A)) / math.log(len(G))},
    )


# --- word maps ---------------------------------------------------------------------

def waring_threshold(image_size: int, q: int, rank: int) -> int:
    """Least ``m`` with ``m >= image_size / q^(rank/13)``, i.e. ``m^13 q^rank >= image_size^13``."""
    m = max(1, int(image_size / q ** (rank / 13)) - 2)
    while m**13 * q**rank < image_size**13:
        m += 1
    while m > 1 and (m - 1) ** 13 * q**rank >= image_size**13:
        m -= 1
    return m


def waring_check(w: Word, spec: GroupSpec, trials: int, seed: int = 0) -> Verdict:
    """Sample ``W ⊆ w(L)`` of threshold size and test ``W^3 = L``.

    Failures are reported as findings: the statement only applies above
    an unspecified order depending on ``w``.
    """
    if w.is_trivial:
        raise PreconditionViolated("w must be a nontrivial word")
    if spec.family != "PSL":
        raise PreconditionViolated("sparse Waring checks run on simple groups PSL(n,q)")
    L = ElementSet.whole_group(spec)
    image = word_image(w, spec)
    m = waring_threshold(len(image), spec.q, spec.rank)
    failures = []
    for trial in range(trials):
        rng = stream(seed, f"waring:{w}:{spec}", trial)
        W = image.sample(rng, m)
        if power_set(W, 3) != L:
            failures.append(trial)
    square = product_set(image, image) == L
    return Verdict(
        statement="W ⊆ w(L), |W| >= |w(L)|/q^(r/13) implies W^3 = L (for |L| > N(w))",
        spec=str(spec),
        parameters={"word": str(w), "trials": trials, "seed": seed},
        verdict=HOLDS if not failures else FINDING,
        witness_or_counterexample={"failed_trials": failures} if failures else None,
        exact_quantities={"|w(L)|": len(image), "|W|": m, "|L|": len(L), "w(L)^2=L": square, "failures": len(failures)},
    )


# --- product-free sets ---------------------------------------------------------------

def is_product_free(X: ElementSet) -> bool:
    return len(product_set(X, X) & X) == 0


def product_free_search(G: ElementSet, budget: int = 20000, seed: int = 0) -> Verdict:
    """Randomised greedy with restarts for a large product-free ``X ⊆ G``.

    ``budget`` bounds the number of candidate insertions tried.  The best
    set is re-verified exactly; its size is never claimed optimal.
    """
    if len(G) > 10**5:
        raise UsageError("product-free search is limited to |G| <= 10^5")
    spec = G.spec
    codes = G.codes
    N = len(codes)
    ident = int(groups.index_of(codes, np.int64(spec.identity_code)))
    rng = stream(seed, "product-free")
    best: np.ndarray = np.empty(0, dtype=np.int64)
    tried = 0
    start: list[int] = []
    while tried < budget:
        in_x = np.zeros(N, dtype=bool)
        in_xx = np.zeros(N, dtype=bool)
        members: list[int] = []

        def try_add(i: int) -> bool:
            if i == ident or in_x[i] or in_xx[i]:
                return False
            c = codes[i]
            xs = codes[members] if members else np.empty(0, dtype=np.int64)
            new = np.concatenate([spec.mul(c, xs), spec.mul(xs, c), [spec.mul(c, c)]]).astype(np.int64)
            idx = groups.index_of(codes, new)
            if in_x[idx].any() or (idx == i).any():
                return False
            in_x[i] = True
            in_xx[idx] = True
            members.append(i)
            return True

        for i in start:
            try_add(i)
        for i in rng.permutation(N).tolist():
            if tried >= budget:
                break
            tried += 1
            try_add(i)
        if len(members) > len(best):
            best = np.array(members)
        # restart from a random half of the best set found so far
        keep = rng.permutation(len(best))[: len(best) // 2]
        start = best[keep].tolist()
    X = ElementSet(spec, codes[best] if len(best) else [])
    free = is_product_free(X)
    return Verdict(
        statement="search for large product-free sets (|X| vs |G|^(8/9))",
        spec=str(spec),
        parameters={"budget": budget, "seed": seed},
        verdict=HOLDS if free else VIOLATED,
        witness_or_counterexample=X.to_lines(),
        exact_quantities={"|X|": len(X), "|G|": len(G), "ratio_to_G^(8/9)": len(X) / len(G) ** (8 / 9), "product_free": free},
    )
