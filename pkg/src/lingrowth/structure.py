"""Subgroup-level computations: generation, conjugacy classes, Sylow
subgroups, derived series."""

from __future__ import annotations

import itertools

import numpy as np

from . import groups
from .errors import NotASubgroup, UnsupportedFamily
from .groups import GroupElem, GroupSpec
from .sets import ElementSet, product_set


def standard_generators(spec: GroupSpec) -> ElementSet:
    """Symmetric set of elementary transvections (plus a diagonal for GL)."""
    return ElementSet(spec, groups.standard_generator_codes(spec))


def enumerate_group(spec: GroupSpec, cap: int | None = None) -> ElementSet:
    return ElementSet.whole_group(spec, cap)


def closure(S: ElementSet, cap: int | None = None) -> ElementSet:
    """The subgroup generated by ``S``."""
    codes = groups.closure_codes(S.spec, S.codes, cap=cap, stop_at=S.spec.order)
    return ElementSet(S.spec, codes, _trusted=True)


def generates(S: ElementSet, cap: int | None = None) -> bool:
    return len(closure(S, cap)) == S.spec.order


def is_subgroup(H: ElementSet) -> bool:
    """Finite subsets are subgroups iff nonempty and closed under products."""
    return len(H) > 0 and H.contains_identity and len(product_set(H, H)) == len(H)


def require_subgroup(H: ElementSet) -> None:
    if not is_subgroup(H):
        raise NotASubgroup(f"set of size {len(H)} is not a subgroup of {H.spec}")


def generating_subset(H: ElementSet) -> ElementSet:
    """A small subset of the subgroup ``H`` that generates it (greedy)."""
    spec = H.spec
    chosen: list[int] = []
    current = ElementSet.identity_set(spec)
    for c in H.codes.tolist():
        if c not in current:
            chosen.append(c)
            current = ElementSet(spec, groups.closure_codes(spec, chosen, stop_at=len(H)), _trusted=True)
            if len(current) == len(H):
                break
    return ElementSet(spec, chosen)


def conjugacy_class(g: GroupElem, cap: int | None = None) -> ElementSet:
    """Orbit of ``g`` under conjugation, driven by the standard generators."""
    spec = g.spec
    cap = groups.ENUMERATION_CAP if cap is None else cap
    if spec.order > cap:
        raise groups.TooLarge(f"|{spec}| exceeds cap {cap}")
    codes = groups.orbit_codes(spec, [g.code], groups.standard_generator_codes(spec))
    return ElementSet(spec, codes, _trusted=True)


def conjugacy_classes(spec: GroupSpec, cap: int | None = None) -> list[ElementSet]:
    """All classes, ordered by smallest member code."""
    codes, labels = groups.conjugacy_class_labels(spec, cap)
    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(labels.max() + 2))
    return [
        ElementSet(spec, codes[order[bounds[i] : bounds[i + 1]]], _trusted=True)
        for i in range(len(bounds) - 1)
    ]


def center(spec: GroupSpec) -> ElementSet:
    return ElementSet(spec, groups.center_codes(spec), _trusted=True)


def sylow_p_subgroup(spec: GroupSpec, variant: str = "upper") -> ElementSet:
    """Upper or lower unitriangular matrices (their image for PSL)."""
    if spec.family not in ("SL", "PSL"):
        raise UnsupportedFamily("unitriangular Sylow subgroups are provided for SL and PSL")
    if variant not in ("upper", "lower"):
        raise ValueError("variant must be 'upper' or 'lower'")
    return ElementSet(spec, groups.unitriangular_codes(spec, lower=variant == "lower"), _trusted=True)


def diagonal_subgroup(spec: GroupSpec) -> ElementSet:
    """Diagonal matrices of the group (a split torus)."""
    n = spec.n
    mats = []
    for diag in itertools.product(range(1, spec.q), repeat=n):
        m = np.diag(diag).astype(np.int64)
        d = int(spec.det(m))
        if spec.family == "GL" or d == 1:
            mats.append(m)
    return ElementSet(spec, spec.encode(np.array(mats)))


def commutator_subgroup(H: ElementSet, gens: ElementSet | None = None) -> ElementSet:
    """``[H, H]``: normal closure in ``H`` of commutators of generators."""
    spec = H.spec
    gens = generating_subset(H) if gens is None else gens
    g = gens.codes
    comm = np.unique(spec.commutator(g[:, None], g[None, :]))
    return normal_closure(ElementSet(spec, comm, _trusted=True), gens, limit=len(H))


def normal_closure(X: ElementSet, gens: ElementSet, limit: int | None = None) -> ElementSet:
    """Smallest subgroup containing ``X`` and normalised by ``<gens>``."""
    spec = X.spec
    ngens = list(X.codes.tolist())
    N = ElementSet(spec, groups.closure_codes(spec, ngens, stop_at=limit), _trusted=True)
    g = gens.codes
    while True:
        cj = np.unique(spec.conj(np.asarray(ngens)[:, None], g[None, :]))
        missing = cj[~N.contains_codes(cj)]
        if len(missing) == 0:
            return N
        ngens.append(int(missing[0]))
        N = ElementSet(spec, groups.closure_codes(spec, ngens, stop_at=limit), _trusted=True)


def derived_series(H: ElementSet, check: bool = True) -> list[ElementSet]:
    """``[H, H', H'', ...]`` up to the first repeated term."""
    if check:
        require_subgroup(H)
    series = [H]
    while len(series[-1]) > 1:
        nxt = commutator_subgroup(series[-1])
        if len(nxt) == len(series[-1]):
            break
        series.append(nxt)
    return series


def is_soluble(H: ElementSet, check: bool = True) -> bool:
    return len(derived_series(H, check)[-1]) == 1
