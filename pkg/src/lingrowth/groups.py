"""SL, GL and PSL over finite fields.

Every group element is identified by its canonical code: the row-major
matrix entries packed MSB-first into an integer, ``bits = ceil(log2 q)``
bits per entry.  Integer order of codes is therefore lexicographic order
of the entry sequence.  For PSL the stored matrix is the one of minimal
code among its scalar multiples ``λ·m`` with ``λ**n == 1``.

All bulk operations take and return ``int64`` numpy arrays of codes.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import SpecMismatch, TooLarge, UnsupportedFamily, UsageError
from .field import FieldCtx, make_field, parse_field, prime_power

FAMILIES = ("SL", "GL", "PSL")
ENUMERATION_CAP = 10**7
MAX_DIMENSION = 6
_CHUNK = 1 << 19


def _perm_sign(perm) -> int:
    sign, seen = 1, list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


@dataclass(frozen=True)
class GroupSpec:
    """One of SL(n,q), GL(n,q), PSL(n,q)."""

    family: str
    n: int
    field: FieldCtx

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedFamily(f"unknown family {self.family!r}")
        if not 2 <= self.n <= MAX_DIMENSION:
            raise UsageError(f"matrix dimension must be in 2..{MAX_DIMENSION}, got {self.n}")
        if self.n * self.n * self.bits > 62:
            raise UsageError(f"{self} does not fit the 62-bit element encoding")

    def __str__(self):
        return f"{self.family}({self.n},{self.q})"

    # -- basic numbers --------------------------------------------------------

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def rank(self) -> int:
        """Lie rank ``n - 1``."""
        return self.n - 1

    @property
    def bits(self) -> int:
        return max(1, (self.q - 1).bit_length())

    @property
    def nbytes(self) -> int:
        return (self.n * self.n * self.bits + 7) // 8

    @property
    def order(self) -> int:
        return group_order(self)

    @cached_property
    def scalars(self) -> tuple[int, ...]:
        """Scalars ``λ`` with ``λ**n == 1``; nontrivial only for PSL."""
        if self.family != "PSL":
            return (1,)
        return tuple(self.field.roots_of_unity(self.n))

    @cached_property
    def _shifts(self) -> np.ndarray:
        nn = self.n * self.n
        return (self.bits * (nn - 1 - np.arange(nn))).astype(np.int64)

    @cached_property
    def identity_code(self) -> int:
        return int(self.encode(np.eye(self.n, dtype=np.int64)))

    # -- encoding -------------------------------------------------------------

    def decode(self, codes) -> np.ndarray:
        """Codes of shape ``s`` to matrices of shape ``s + (n, n)``."""
        codes = np.asarray(codes, dtype=np.int64)
        mask = (1 << self.bits) - 1
        ent = (codes[..., None] >> self._shifts) & mask
        return ent.reshape(codes.shape + (self.n, self.n))

    def encode(self, mats) -> np.ndarray:
        """Matrices to codes, canonicalising scalar classes for PSL."""
        mats = np.asarray(mats, dtype=np.int64)
        n = self.n
        entries = [mats[..., i, j] for i in range(n) for j in range(n)]
        return self._encode_entries(entries)

    def _encode_entries(self, entries) -> np.ndarray:
        code = self._pack(entries)
        if len(self.scalars) > 1:
            vmul = self.field.vmul
            for lam in self.scalars[1:]:
                code = np.minimum(code, self._pack([vmul(e, lam) for e in entries]))
        return code

    def _pack(self, entries) -> np.ndarray:
        code = np.zeros(np.shape(entries[0]), dtype=np.int64)
        for e, s in zip(entries, self._shifts.tolist()):
            code |= np.asarray(e, dtype=np.int64) << s
        return code

    def to_bytes(self, code: int) -> bytes:
        return int(code).to_bytes(self.nbytes, "big")

    def from_bytes(self, data: bytes) -> int:
        return int.from_bytes(data, "big")

    # -- arithmetic on decoded matrices ---------------------------------------

    def _matmul_entries(self, A, B):
        """Entry list of ``A @ B`` for broadcastable stacks of matrices."""
        n, F = self.n, self.field
        out = []
        for i in range(n):
            for j in range(n):
                if F.is_prime_field:
                    acc = A[..., i, 0] * B[..., 0, j]
                    for k in range(1, n):
                        acc = acc + A[..., i, k] * B[..., k, j]
                    out.append(acc % F.p)
                else:
                    acc = F.vmul(A[..., i, 0], B[..., 0, j])
                    for k in range(1, n):
                        acc = F.vadd(acc, F.vmul(A[..., i, k], B[..., k, j]))
                    out.append(acc)
        return out

    def matmul(self, A, B) -> np.ndarray:
        ent = self._matmul_entries(np.asarray(A), np.asarray(B))
        shape = np.broadcast_shapes(np.shape(ent[0]))
        return np.stack([np.broadcast_to(e, shape) for e in ent], axis=-1).reshape(
            shape + (self.n, self.n)
        )

    def _det_entries(self, rows) -> np.ndarray:
        """Leibniz determinant; ``rows[i][j]`` are arrays of equal shape."""
        m, F = len(rows), self.field
        if m == 0:
            return np.int64(1)
        total = None
        for perm in itertools.permutations(range(m)):
            term = rows[0][perm[0]]
            for i in range(1, m):
                term = F.vmul(term, rows[i][perm[i]])
            if _perm_sign(perm) < 0:
                term = F.vneg(term)
            total = term if total is None else F.vadd(total, term)
        return total

    def det(self, mats) -> np.ndarray:
        mats = np.asarray(mats, dtype=np.int64)
        n = mats.shape[-1]
        return self._det_entries([[mats[..., i, j] for j in range(n)] for i in range(n)])

    def adjugate(self, mats) -> np.ndarray:
        mats = np.asarray(mats, dtype=np.int64)
        n, F = self.n, self.field
        adj = np.empty_like(mats)
        for i in range(n):
            for j in range(n):
                minor = [[mats[..., r, c] for c in range(n) if c != j] for r in range(n) if r != i]
                d = self._det_entries(minor)
                if (i + j) % 2:
                    d = F.vneg(d)
                adj[..., j, i] = d
        return adj

    # -- arithmetic on codes --------------------------------------------------

    def mul(self, a, b) -> np.ndarray:
        """Elementwise (broadcasting) products of code arrays."""
        ent = self._matmul_entries(self.decode(a), self.decode(b))
        return self._encode_entries(ent)

    def mul_outer(self, a, b) -> np.ndarray:
        """All products ``a[i] * b[j]`` as a ``(len(a), len(b))`` code array."""
        a = np.asarray(a, dtype=np.int64).reshape(-1)
        b = np.asarray(b, dtype=np.int64).reshape(-1)
        return self.mul(a[:, None], b[None, :])

    def inv(self, a) -> np.ndarray:
        mats = self.decode(a)
        adj = self.adjugate(mats)
        if self.family == "GL":
            dinv = self.field.vinv(self.det(mats))
            adj = self.field.vmul(adj, dinv[..., None, None])
        return self.encode(adj)

    def conj(self, g, x) -> np.ndarray:
        """``x**-1 * g * x`` elementwise."""
        return self.mul(self.mul(self.inv(x), g), x)

    def commutator(self, a, b) -> np.ndarray:
        """``a**-1 b**-1 a b`` elementwise."""
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def power(self, a, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if k < 0:
            a, k = self.inv(a), -k
        result = np.full(a.shape, self.identity_code, dtype=np.int64)
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    # -- element construction -------------------------------------------------

    def element(self, rows) -> GroupElem:
        mats = np.asarray(rows, dtype=np.int64)
        if mats.shape != (self.n, self.n):
            raise SpecMismatch(f"expected a {self.n}x{self.n} matrix for {self}")
        if mats.min() < 0 or mats.max() >= self.q:
            raise UsageError(f"matrix entries must lie in [0, {self.q})")
        d = int(self.det(mats))
        if d == 0 or (self.family != "GL" and d != 1):
            raise UsageError(f"matrix has determinant {d}, not an element of {self}")
        return GroupElem(self, int(self.encode(mats)))

    def elem(self, code) -> GroupElem:
        return GroupElem(self, int(code))

    @property
    def identity(self) -> GroupElem:
        return GroupElem(self, self.identity_code)

    def transvection_matrix(self, i: int, j: int, c: int) -> np.ndarray:
        """``I + c·E_ij`` (0-based indices)."""
        if i == j:
            raise UsageError("transvection needs i != j")
        m = np.eye(self.n, dtype=np.int64)
        m[i, j] = c
        return m

    def transvection(self, i: int, j: int, c: int = 1) -> GroupElem:
        return GroupElem(self, int(self.encode(self.transvection_matrix(i, j, c))))

    def random_codes(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Uniform random elements by rejection sampling."""
        out, F, n = [], self.field, self.n
        need = size
        while need > 0:
            m = rng.integers(0, self.q, size=(max(2 * need, 16), n, n), dtype=np.int64)
            d = self.det(m)
            m, d = m[d != 0], d[d != 0]
            if self.family != "GL":
                m[:, 0, :] = F.vmul(m[:, 0, :], F.vinv(d)[:, None])
            out.append(self.encode(m[:need]))
            need -= len(out[-1])
        return np.concatenate(out)[:size]

    def random_element(self, rng: np.random.Generator) -> GroupElem:
        return GroupElem(self, int(self.random_codes(rng, 1)[0]))


@dataclass(frozen=True)
class GroupElem:
    """A group element: its spec plus canonical code."""

    spec: GroupSpec
    code: int

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(x) for x in row) for row in self.spec.decode(self.code))

    @property
    def encoding(self) -> bytes:
        return self.spec.to_bytes(self.code)

    def _check(self, other):
        if not isinstance(other, GroupElem) or other.spec != self.spec:
            raise SpecMismatch("elements of different groups")

    def __mul__(self, other):
        if not isinstance(other, GroupElem):
            return NotImplemented
        self._check(other)
        return GroupElem(self.spec, int(self.spec.mul(self.code, other.code)))

    def inverse(self) -> GroupElem:
        return GroupElem(self.spec, int(self.spec.inv(self.code)))

    def __pow__(self, k: int) -> GroupElem:
        return GroupElem(self.spec, int(self.spec.power(self.code, k)))

    def conj(self, x: GroupElem) -> GroupElem:
        """``x**-1 * self * x``."""
        self._check(x)
        return GroupElem(self.spec, int(self.spec.conj(self.code, x.code)))

    @property
    def is_identity(self) -> bool:
        return self.code == self.spec.identity_code

    def order(self) -> int:
        g, k = self, 1
        while not g.is_identity:
            g, k = g * self, k + 1
        return k

    def __repr__(self):
        return f"{self.spec}{list(map(list, self.matrix))}"


# --- spec parsing and orders -------------------------------------------------

_SPEC_RE = re.compile(r"^\s*(SL|GL|PSL)\s*\(\s*(\d+)\s*,\s*(GF\([^)]*\)|\d+(?:\s*\^\s*\d+)?)\s*\)\s*$", re.I)


def make_spec(family: str, n: int, q: int | FieldCtx) -> GroupSpec:
    if isinstance(q, FieldCtx):
        F = q
    else:
        p, e = prime_power(int(q))
        F = make_field(p, e)
    return GroupSpec(family.upper(), int(n), F)


def parse_spec(text: str) -> GroupSpec:
    """Parse ``"SL(n,q)"``, ``"PSL(n,q)"``, ``"GL(n,q)"``; ``q`` may be ``p^e``."""
    m = _SPEC_RE.match(text)
    if not m:
        raise UsageError(f"cannot parse group spec {text!r}")
    family, n, fld = m.group(1).upper(), int(m.group(2)), m.group(3)
    if fld.upper().startswith("GF"):
        F = parse_field(fld)
    elif "^" in fld:
        p, e = (int(x) for x in fld.split("^"))
        F = make_field(p, e)
    else:
        F = parse_field(f"GF({fld})")
    return GroupSpec(family, n, F)


def group_order(spec: GroupSpec) -> int:
    """Closed-form order of SL, GL or PSL."""
    n, q = spec.n, spec.q
    sl = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        sl *= q**i - 1
    if spec.family == "SL":
        return sl
    if spec.family == "GL":
        return (q - 1) * sl
    return sl // math.gcd(n, q - 1)


# --- generators, closure, enumeration ---------------------------------------

def standard_generator_codes(spec: GroupSpec) -> np.ndarray:
    """Elementary transvections ``t_{i,i+1}(c)``, ``t_{i+1,i}(c)`` and inverses.

    ``c`` runs over ``±ω**k`` for ``k < e`` (``ω`` the class of ``x``), which
    is just ``±1`` over a prime field.  GL adds ``diag(ζ, 1, ..., 1)`` for a
    primitive ``ζ`` together with its inverse.
    """
    F = spec.field
    params = set()
    for k in range(F.e):
        c = F.from_poly([0] * k + [1])
        params |= {c, F.neg(c)}
    mats = []
    for i in range(spec.n - 1):
        for c in sorted(params):
            mats.append(spec.transvection_matrix(i, i + 1, c))
            mats.append(spec.transvection_matrix(i + 1, i, c))
    if spec.family == "GL":
        for z in (F.primitive_element, F.inv(F.primitive_element)):
            d = np.eye(spec.n, dtype=np.int64)
            d[0, 0] = z
            mats.append(d)
    return np.unique(spec.encode(np.array(mats)))


def _chunks(n: int, size: int):
    for start in range(0, n, size):
        yield slice(start, min(n, start + size))


def right_products(spec: GroupSpec, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Sorted unique codes of ``{a·b : a in left, b in right}``, computed in chunks."""
    left = np.asarray(left, dtype=np.int64)
    right = np.asarray(right, dtype=np.int64)
    if len(left) == 0 or len(right) == 0:
        return np.empty(0, dtype=np.int64)
    rows = max(1, _CHUNK // len(right))
    parts = []
    for sl in _chunks(len(left), rows):
        parts.append(np.unique(spec.mul_outer(left[sl], right)))
    return np.unique(np.concatenate(parts)) if len(parts) > 1 else parts[0]


def closure_codes(spec: GroupSpec, gens, cap: int | None = None, stop_at: int | None = None) -> np.ndarray:
    """Sorted codes of the subgroup generated by ``gens`` (BFS from the identity).

    Raises :class:`TooLarge` once more than ``cap`` elements are reached.
    ``stop_at`` ends the search early once that many elements are known.
    """
    cap = ENUMERATION_CAP if cap is None else cap
    gens = np.unique(np.asarray(gens, dtype=np.int64))
    seen = np.array([spec.identity_code], dtype=np.int64)
    frontier = seen
    while len(frontier):
        cand = right_products(spec, frontier, gens)
        pos = np.searchsorted(seen, cand)
        pos[pos == len(seen)] = 0
        new = cand[seen[pos] != cand]
        if len(new) == 0:
            break
        seen = np.union1d(seen, new)
        if len(seen) > cap:
            raise TooLarge(f"closure exceeded cap of {cap} elements", partial=len(seen))
        if stop_at is not None and len(seen) >= stop_at:
            break
        frontier = new
    return seen


@lru_cache(maxsize=32)
def _enumerate(spec: GroupSpec, cap: int) -> np.ndarray:
    order = group_order(spec)
    if order > cap:
        raise TooLarge(f"|{spec}| = {order} exceeds enumeration cap {cap}")
    codes = closure_codes(spec, standard_generator_codes(spec), cap=cap, stop_at=order)
    codes.setflags(write=False)
    return codes


def enumerate_codes(spec: GroupSpec, cap: int | None = None) -> np.ndarray:
    """All element codes of ``spec`` in increasing order (cached, read-only)."""
    return _enumerate(spec, ENUMERATION_CAP if cap is None else cap)


def index_of(all_codes: np.ndarray, codes) -> np.ndarray:
    """Positions of ``codes`` inside the sorted array ``all_codes``."""
    idx = np.searchsorted(all_codes, codes)
    idx = np.minimum(idx, len(all_codes) - 1)
    if not np.all(all_codes[idx] == codes):
        raise UsageError("code not present in the enumerated set")
    return idx


def unitriangular_codes(spec: GroupSpec, lower: bool = False) -> np.ndarray:
    """All upper (or lower) unitriangular matrices, i.e. a Sylow p-subgroup."""
    n, q = spec.n, spec.q
    pos = [(i, j) for i in range(n) for j in range(n) if (i > j if lower else i < j)]
    vals = np.array(list(itertools.product(range(q), repeat=len(pos))), dtype=np.int64)
    mats = np.broadcast_to(np.eye(n, dtype=np.int64), (len(vals), n, n)).copy()
    for k, (i, j) in enumerate(pos):
        mats[:, i, j] = vals[:, k]
    return np.unique(spec.encode(mats))


def embedded_sl2_codes(spec: GroupSpec) -> np.ndarray:
    """SL(2,q) placed in the top-left corner of SL(n,q)."""
    small = GroupSpec("SL", 2, spec.field)
    mats2 = small.decode(enumerate_codes(small))
    mats = np.broadcast_to(np.eye(spec.n, dtype=np.int64), (len(mats2), spec.n, spec.n)).copy()
    mats[:, :2, :2] = mats2
    return np.unique(spec.encode(mats))


def orbit_codes(spec: GroupSpec, seeds, gens) -> np.ndarray:
    """Orbit of ``seeds`` under conjugation by the group generated by ``gens``."""
    gens = np.unique(np.asarray(gens, dtype=np.int64))
    ginv = spec.inv(gens)
    seen = np.unique(np.asarray(seeds, dtype=np.int64))
    frontier = seen
    while len(frontier):
        cand = spec.mul(spec.mul(ginv[None, :], frontier[:, None]), gens[None, :])
        cand = np.unique(cand)
        new = np.setdiff1d(cand, seen, assume_unique=True)
        seen = np.union1d(seen, new)
        frontier = new
    return seen


def conjugacy_class_labels(spec: GroupSpec, cap: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Class label of every element of ``enumerate_codes(spec)``.

    Returns ``(all_codes, labels)``; labels are numbered in order of the
    smallest code in each class.
    """
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    codes = enumerate_codes(spec, cap)
    gens = standard_generator_codes(spec)
    ginv = spec.inv(gens)
    N = len(codes)
    src, dst = [], []
    for g, gi in zip(gens, ginv):
        for sl in _chunks(N, _CHUNK):
            img = spec.mul(spec.mul(gi, codes[sl]), g)
            src.append(np.arange(sl.start, sl.stop))
            dst.append(index_of(codes, img))
    src, dst = np.concatenate(src), np.concatenate(dst)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))
    _, raw = connected_components(graph, directed=True, connection="weak")
    _, first = np.unique(raw, return_index=True)
    order = np.argsort(first)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    return codes, relabel[raw]


def center_codes(spec: GroupSpec) -> np.ndarray:
    """Scalar matrices in the group (the centre of SL/GL; trivial for PSL)."""
    F, n = spec.field, spec.n
    if spec.family == "PSL":
        return np.array([spec.identity_code], dtype=np.int64)
    lams = range(1, spec.q) if spec.family == "GL" else spec.field.roots_of_unity(n)
    mats = np.array([np.eye(n, dtype=np.int64) * lam for lam in lams])
    return np.unique(spec.encode(mats))
