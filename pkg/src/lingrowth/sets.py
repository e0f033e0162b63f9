"""Deduplicated sets of group elements and the product-set engine."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from . import groups
from .errors import ResultCapExceeded, SpecMismatch, UsageError
from .groups import GroupElem, GroupSpec

PRODUCT_CAP = 10**7


class ElementSet:
    """An immutable set of elements of one group, keyed by canonical code.

    ``codes`` is a sorted, duplicate-free, read-only ``int64`` array.
    """

    __slots__ = ("spec", "codes", "_cache")

    def __init__(self, spec: GroupSpec, codes=(), *, _trusted: bool = False):
        arr = np.asarray(codes, dtype=np.int64).reshape(-1)
        if not _trusted:
            arr = np.unique(arr)
        elif arr.flags.writeable:
            arr = arr.copy()
        arr.setflags(write=False)
        self.spec = spec
        self.codes = arr
        self._cache = {}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_elements(cls, spec: GroupSpec, elems: Iterable[GroupElem]) -> ElementSet:
        codes = []
        for g in elems:
            if g.spec != spec:
                raise SpecMismatch(f"element of {g.spec} in a set over {spec}")
            codes.append(g.code)
        return cls(spec, codes)

    @classmethod
    def from_matrices(cls, spec: GroupSpec, mats) -> ElementSet:
        return cls.from_elements(spec, (spec.element(m) for m in mats))

    @classmethod
    def identity_set(cls, spec: GroupSpec) -> ElementSet:
        return cls(spec, [spec.identity_code], _trusted=True)

    @classmethod
    def whole_group(cls, spec: GroupSpec, cap: int | None = None) -> ElementSet:
        return cls(spec, groups.enumerate_codes(spec, cap), _trusted=True)

    # -- container protocol ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self) -> Iterator[GroupElem]:
        for c in self.codes.tolist():
            yield GroupElem(self.spec, c)

    def __contains__(self, g) -> bool:
        code = g.code if isinstance(g, GroupElem) else int(g)
        i = np.searchsorted(self.codes, code)
        return bool(i < len(self.codes) and self.codes[i] == code)

    def contains_codes(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        if len(self.codes) == 0:
            return np.zeros(codes.shape, dtype=bool)
        i = np.minimum(np.searchsorted(self.codes, codes), len(self.codes) - 1)
        return self.codes[i] == codes

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.codes, other.codes)

    def __hash__(self):
        return hash((self.spec, self.codes.tobytes()))

    def __repr__(self):
        return f"ElementSet({self.spec}, {len(self)} elements)"

    # -- set algebra ----------------------------------------------------------

    def _same(self, other: ElementSet):
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")

    def __or__(self, other: ElementSet) -> ElementSet:
        self._same(other)
        return ElementSet(self.spec, np.union1d(self.codes, other.codes), _trusted=True)

    def __and__(self, other: ElementSet) -> ElementSet:
        self._same(other)
        return ElementSet(self.spec, np.intersect1d(self.codes, other.codes, assume_unique=True), _trusted=True)

    def __sub__(self, other: ElementSet) -> ElementSet:
        self._same(other)
        return ElementSet(self.spec, np.setdiff1d(self.codes, other.codes, assume_unique=True), _trusted=True)

    def __le__(self, other: ElementSet) -> bool:
        self._same(other)
        return bool(np.all(other.contains_codes(self.codes)))

    def __mul__(self, other: ElementSet) -> ElementSet:
        return product_set(self, other)

    # -- flags ----------------------------------------------------------------

    @property
    def contains_identity(self) -> bool:
        if "has_id" not in self._cache:
            self._cache["has_id"] = self.spec.identity_code in self
        return self._cache["has_id"]

    def inverse(self) -> ElementSet:
        if "inverse" not in self._cache:
            self._cache["inverse"] = ElementSet(self.spec, self.spec.inv(self.codes))
        return self._cache["inverse"]

    @property
    def is_symmetric(self) -> bool:
        if "sym" not in self._cache:
            self._cache["sym"] = self.inverse() == self
        return self._cache["sym"]

    def symmetrized(self) -> ElementSet:
        return self | self.inverse()

    def with_identity(self) -> ElementSet:
        return self | ElementSet.identity_set(self.spec)

    def without_identity(self) -> ElementSet:
        return self - ElementSet.identity_set(self.spec)

    def is_whole_group(self) -> bool:
        return len(self) == self.spec.order

    def sample(self, rng: np.random.Generator, k: int) -> ElementSet:
        if k > len(self):
            raise UsageError(f"cannot sample {k} of {len(self)} elements")
        return ElementSet(self.spec, rng.choice(self.codes, size=k, replace=False))

    def conjugate(self, g: GroupElem) -> ElementSet:
        """``g**-1 · self · g``."""
        return ElementSet(self.spec, self.spec.conj(self.codes, np.int64(g.code)))

    def power(self, k: int) -> ElementSet:
        return power_set(self, k)

    # -- element files ----------------------------------------------------------

    def to_lines(self) -> list[str]:
        width = 2 * self.spec.nbytes
        return [str(self.spec)] + [format(c, f"0{width}x") for c in self.codes.tolist()]

    def save(self, path) -> None:
        Path(path).write_text("\n".join(self.to_lines()) + "\n")

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> ElementSet:
        lines = [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines:
            raise UsageError("element file is empty; expected a spec header line")
        spec = groups.parse_spec(lines[0])
        try:
            codes = [int(h, 16) for h in lines[1:]]
        except ValueError as exc:
            raise UsageError(f"bad element line: {exc}") from None
        for c in codes:
            m = spec.decode(c)
            if int(spec.encode(m)) != c or m.max() >= spec.q:
                raise UsageError(f"{c:x} is not a canonical element code of {spec}")
        out = cls(spec, codes)
        bad = out.codes[~_valid_det(spec, out.codes)]
        if len(bad):
            raise UsageError(f"{int(bad[0]):x} does not lie in {spec}")
        return out

    @classmethod
    def load(cls, path) -> ElementSet:
        return cls.from_lines(Path(path).read_text().splitlines())


def _valid_det(spec: GroupSpec, codes) -> np.ndarray:
    d = spec.det(spec.decode(codes))
    return d != 0 if spec.family == "GL" else d == 1


def product_set(A: ElementSet, B: ElementSet, cap: int | None = None) -> ElementSet:
    """``{ab : a in A, b in B}``.

    Work is chunked over the left factor and stops early once the whole
    group has been produced.
    """
    if A.spec != B.spec:
        raise SpecMismatch(f"{A.spec} vs {B.spec}")
    cap = PRODUCT_CAP if cap is None else cap
    spec = A.spec
    if len(A) == 0 or len(B) == 0:
        return ElementSet(spec, [], _trusted=True)
    order = spec.order
    rows = max(1, groups._CHUNK // len(B))
    acc = np.empty(0, dtype=np.int64)
    pending, pending_len = [], 0
    for sl in groups._chunks(len(A), rows):
        part = np.unique(spec.mul_outer(A.codes[sl], B.codes))
        pending.append(part)
        pending_len += len(part)
        if pending_len > 4 * max(len(acc), 1 << 16) or sl.stop == len(A):
            acc = np.unique(np.concatenate([acc] + pending))
            pending, pending_len = [], 0
            if len(acc) > cap:
                raise ResultCapExceeded(f"product exceeded cap of {cap} elements", partial=len(acc))
            if len(acc) == order:
                break
    return ElementSet(spec, acc, _trusted=True)


def power_set(A: ElementSet, k: int, cap: int | None = None) -> ElementSet:
    """``A**k``, memoised on ``A`` so successive powers share work."""
    if k < 1:
        raise UsageError("power must be >= 1")
    cache = A._cache.setdefault("powers", {1: A})
    if k in cache:
        return cache[k]
    j = max(i for i in cache if i < k)
    cur = cache[j]
    while j < k:
        if cur.is_whole_group():
            nxt = cur
        else:
            nxt = product_set(cur, A, cap)
        j += 1
        cache[j] = cur = nxt
    return cur


def product_of(sets: Iterable[ElementSet], cap: int | None = None) -> ElementSet:
    it = iter(sets)
    out = next(it)
    for s in it:
        out = product_set(out, s, cap)
    return out
