"""Growth of product sets: tripling constants and the exact inequalities
relating powers of symmetric sets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import groups
from .errors import EmptySet, NotSymmetric, PreconditionViolated, SearchFailed, UsageError
from .groups import GroupSpec, make_spec
from .rng import stream
from .sets import ElementSet, power_set
from .structure import closure, require_subgroup
from .verdict import HOLDS, VIOLATED, Verdict

SLOW_GROWTH_TARGET = 100
SLOW_GROWTH_BUDGET = 10**4
GENERATION_CAP = 2 * 10**7


@dataclass
class GrowthReport:
    """Power-set sizes of ``A`` with the tripling constant ``K = |A^3|/|A|``."""

    spec: str
    sizes: list[int]
    tripling: Fraction
    epsilon_estimate: float
    verdicts: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "sizes": list(self.sizes),
            "tripling": {"numerator": self.tripling.numerator, "denominator": self.tripling.denominator},
            "tripling_float": float(self.tripling),
            "epsilon_estimate": None if math.isnan(self.epsilon_estimate) else self.epsilon_estimate,
            "verdicts": dict(self.verdicts),
        }


def tripling(A: ElementSet, kmax: int = 3, cap: int | None = None) -> GrowthReport:
    """Sizes ``|A^1|..|A^kmax|`` and ``K = |A^3|/|A|``.

    ``epsilon_estimate`` is ``log(|A^3|/|A|)/log|A|`` (NaN for ``|A| = 1``).
    """
    if len(A) == 0:
        raise EmptySet("tripling of an empty set")
    kmax = max(kmax, 3)
    sizes = [len(power_set(A, k, cap)) for k in range(1, kmax + 1)]
    K = Fraction(sizes[2], sizes[0])
    eps = math.log(K) / math.log(sizes[0]) if sizes[0] > 1 else float("nan")
    verdicts = {"A3_is_group": sizes[2] == A.spec.order}
    if A.contains_identity:
        verdicts["sizes_nondecreasing"] = all(a <= b for a, b in zip(sizes, sizes[1:]))
    return GrowthReport(str(A.spec), sizes, K, eps, verdicts)


def _require_symmetric_with_identity(S: ElementSet):
    if not S.contains_identity:
        raise PreconditionViolated("S must contain the identity")
    if not S.is_symmetric:
        raise NotSymmetric("S must be closed under inversion")


def check_ruzsa(S: ElementSet, k: int, cap: int | None = None) -> Verdict:
    """Exact check of ``|S^k|/|S| <= (|S^3|/|S|)**(k-2)``."""
    _require_symmetric_with_identity(S)
    if k < 3:
        raise PreconditionViolated("k must be at least 3")
    s1, s3, sk = len(S), len(power_set(S, 3, cap)), len(power_set(S, k, cap))
    lhs = Fraction(sk, s1)
    rhs = Fraction(s3, s1) ** (k - 2)
    ok = lhs <= rhs
    return Verdict(
        statement="|S^k|/|S| <= (|S^3|/|S|)^(k-2) for symmetric S containing 1",
        spec=str(S.spec),
        parameters={"k": k, "|S|": s1},
        verdict=HOLDS if ok else VIOLATED,
        witness_or_counterexample=None if ok else S.to_lines(),
        exact_quantities={"lhs": lhs, "rhs": rhs, "|S^3|": s3, "|S^k|": sk},
    )


def check_subgroup_growth(S: ElementSet, H: ElementSet, k: int, check: bool = True, cap: int | None = None) -> Verdict:
    """Exact check of ``|S^k ∩ H| / |S^2 ∩ H| <= |S^(k+1)| / |S|``."""
    _require_symmetric_with_identity(S)
    if k < 1:
        raise PreconditionViolated("k must be positive")
    if check:
        require_subgroup(H)
    if H.spec != S.spec:
        raise PreconditionViolated("S and H live in different groups")
    skh = len(power_set(S, k, cap) & H)
    s2h = len(power_set(S, 2, cap) & H)
    sk1 = len(power_set(S, k + 1, cap))
    lhs = Fraction(skh, s2h)
    rhs = Fraction(sk1, len(S))
    ok = lhs <= rhs
    return Verdict(
        statement="|S^k ∩ H|/|S^2 ∩ H| <= |S^(k+1)|/|S| for symmetric S containing 1, H a subgroup",
        spec=str(S.spec),
        parameters={"k": k, "|S|": len(S), "|H|": len(H)},
        verdict=HOLDS if ok else VIOLATED,
        witness_or_counterexample=None if ok else {"S": S.to_lines(), "H": H.to_lines()},
        exact_quantities={"lhs": lhs, "rhs": rhs, "|S^k ∩ H|": skh, "|S^2 ∩ H|": s2h, "|S^(k+1)|": sk1},
    )


def coset_cover_count(S: ElementSet, H: ElementSet, check: bool = True) -> int:
    """Number of right cosets ``Hg`` meeting ``S``."""
    if check:
        require_subgroup(H)
    spec = S.spec
    if len(S) == 0:
        return 0
    keys = []
    cols = max(1, groups._CHUNK // max(len(H), 1))
    for start in range(0, len(S), cols):
        prods = spec.mul_outer(H.codes, S.codes[start : start + cols])
        keys.append(prods.min(axis=0))
    return len(np.unique(np.concatenate(keys)))


# --- slow growth in SL(n,3) ---------------------------------------------------

def _sign_diagonal(spec: GroupSpec) -> ElementSet:
    """Diagonal ±1 matrices of determinant 1 (order ``2**(n-1)``)."""
    n, minus = spec.n, spec.field.neg(1)
    mats = []
    for mask in range(2**n):
        if bin(mask).count("1") % 2 == 0:
            mats.append(np.diag([minus if mask >> i & 1 else 1 for i in range(n)]))
    return ElementSet(spec, spec.encode(np.array(mats, dtype=np.int64)))


def _signed_cycle(spec: GroupSpec) -> np.ndarray:
    n = spec.n
    g = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        g[(j + 1) % n, j] = 1
    if n % 2 == 0:
        g[0, n - 1] = spec.field.neg(1)
    return g


def _augmented(D: ElementSet, x: int, y: int) -> ElementSet:
    spec = D.spec
    extra = np.array([x, y], dtype=np.int64)
    return D | ElementSet(spec, np.concatenate([extra, spec.inv(extra)]))


@dataclass
class SlowGrowthResult:
    witness: ElementSet
    report: GrowthReport
    generates: bool
    source: str
    candidates_tried: int = 0


def slow_growth_candidate(
    n: int,
    seed: int = 0,
    budget: int = SLOW_GROWTH_BUDGET,
    generation_cap: int = GENERATION_CAP,
    use_construction: bool = True,
) -> SlowGrowthResult:
    """A symmetric generating set of SL(n,3) of size ``2**(n-1) + 4`` with ``K < 100``.

    The proposal is ``D ∪ {g, g^-1, t, t^-1}``: ``D`` the ±1 diagonal
    subgroup, ``g`` a signed n-cycle (which normalises ``D``) and ``t`` the
    transvection ``I + E_12``.  Every product of three letters lies in
    ``W·D`` for a word ``W`` of length <= 3 in ``g^±, t^±``, so
    ``|A^3| <= 85·|D|``.  If the proposal is rejected (or
    ``use_construction`` is off), seeded random augmentations of ``D`` are
    searched instead.
    """
    if n < 3:
        raise UsageError("slow-growth sets are defined for n >= 3")
    spec = make_spec("SL", n, 3)
    D = _sign_diagonal(spec)
    size = 2 ** (n - 1) + 4

    def accept(A: ElementSet):
        if len(A) != size:
            return None
        rep = tripling(A)
        if rep.tripling >= SLOW_GROWTH_TARGET:
            return None
        gen = len(closure(A, cap=generation_cap)) == spec.order
        return rep if gen else None

    if use_construction:
        g = int(spec.encode(_signed_cycle(spec)))
        t = spec.transvection(0, 1, 1).code
        A = _augmented(D, g, t)
        rep = accept(A)
        if rep is not None:
            return SlowGrowthResult(A, rep, True, "construction", 1)

    rng = stream(seed, "slow-growth", n)
    best = None
    for tried in range(1, budget + 1):
        x, y = spec.random_codes(rng, 2).tolist()
        A = _augmented(D, x, y)
        if len(A) != size:
            continue
        rep = tripling(A)
        if best is None or rep.tripling < best[1].tripling:
            best = (A, rep)
        if rep.tripling < SLOW_GROWTH_TARGET and len(closure(A, cap=generation_cap)) == spec.order:
            return SlowGrowthResult(A, rep, True, "local-search", tried)
    raise SearchFailed(
        f"no generating set of size {size} with K < {SLOW_GROWTH_TARGET} in SL({n},3) "
        f"after {budget} candidates; best K = {best[1].tripling if best else None}"
    )


def slow_growth_verdict(n: int, seed: int = 0, **kw) -> Verdict:
    res = slow_growth_candidate(n, seed=seed, **kw)
    K = res.report.tripling
    return Verdict(
        statement="SL(n,3) has a generating set of size 2^(n-1)+4 with |A^3| < 100|A|",
        spec=str(res.witness.spec),
        parameters={"n": n, "seed": seed},
        verdict=HOLDS if (K < SLOW_GROWTH_TARGET and res.generates) else VIOLATED,
        witness_or_counterexample=res.witness.to_lines(),
        exact_quantities={"|A|": len(res.witness), "|A^3|": res.report.sizes[2], "K": K, "source": res.source},
    )
