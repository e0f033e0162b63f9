"""Arithmetic in GF(p^e).

Elements are integers in ``[0, q)``; the base-``p`` digits of an element
(least significant first) are the coefficients of its polynomial residue
modulo the defining polynomial.  Scalar helpers work on plain ints, the
``v*`` helpers on numpy integer arrays of any shape.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DegreeMismatch, NotPrime, ReducibleModulus, UsageError, ZeroInverse

MAX_ORDER = 2**16
_FULL_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise if ``q`` is not a prime power."""
    for p in prime_factors(q)[:1]:
        e, r = 0, q
        while r % p == 0:
            r //= p
            e += 1
        if r == 1:
            return p, e
    raise UsageError(f"{q} is not a prime power")


# --- polynomials over GF(p): little-endian coefficient lists -----------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _trim(a)
    return a


def _monic_polys(p, degree):
    for low in itertools.product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(coeffs, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    coeffs = _trim(coeffs)
    d = len(coeffs) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for g in _monic_polys(p, k):
            if not _poly_mod(coeffs, g, p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``e``.

    Tuples are compared constant term first, so ``x`` wins for ``e == 1``.
    """
    for low in itertools.product(range(p), repeat=e):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("irreducible polynomials exist in every degree")


@dataclass(frozen=True)
class FieldCtx:
    """The field GF(p^e) together with its defining polynomial.

    Construct through :func:`make_field`; instances compare and hash by
    ``(p, e, modulus)`` only, the lookup tables are derived lazily.
    """

    p: int
    e: int
    modulus: tuple[int, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def __str__(self) -> str:
        return f"GF({self.q})" if self.e == 1 else f"GF({self.p}^{self.e})"

    def modulus_string(self) -> str:
        return "[" + ", ".join(map(str, self.modulus)) + "]"

    # -- polynomial <-> int ---------------------------------------------------

    def to_poly(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_poly(self, coeffs) -> int:
        v = 0
        for c in reversed(list(coeffs)[: self.e]):
            v = v * self.p + c % self.p
        return v

    def _poly_mul(self, a: int, b: int) -> int:
        p = self.p
        pa, pb = self.to_poly(a), self.to_poly(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(pa):
            if x:
                for j, y in enumerate(pb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self.from_poly(_poly_mod(prod, self.modulus, p) + [0] * self.e)

    # -- tables ---------------------------------------------------------------

    @cached_property
    def _tables(self):
        q, p = self.q, self.p
        if self.e == 1:
            gen = next(g for g in range(1, q) if self._has_full_order(g, lambda a, b: a * b % p)) if q > 2 else 1
            exp = np.empty(q - 1, dtype=np.int64)
            x = 1
            for i in range(q - 1):
                exp[i] = x
                x = x * gen % p
        else:
            gen = next(g for g in range(1, q) if self._has_full_order(g, self._poly_mul))
            exp = np.empty(q - 1, dtype=np.int64)
            x = 1
            for i in range(q - 1):
                exp[i] = x
                x = self._poly_mul(x, gen)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        inv = np.zeros(q, dtype=np.int64)
        inv[exp] = exp[(-np.arange(q - 1)) % (q - 1)]
        return gen, exp, log, inv

    def _has_full_order(self, g, mul) -> bool:
        def power(a, k):
            r = 1
            while k:
                if k & 1:
                    r = mul(r, a)
                a = mul(a, a)
                k >>= 1
            return r

        n = self.q - 1
        return power(g, n) == 1 and all(power(g, n // r) != 1 for r in prime_factors(n))

    @property
    def primitive_element(self) -> int:
        return self._tables[0]

    @property
    def exp_table(self) -> np.ndarray:
        return self._tables[1]

    @property
    def log_table(self) -> np.ndarray:
        return self._tables[2]

    @property
    def inv_table(self) -> np.ndarray:
        return self._tables[3]

    @cached_property
    def _digit_weights(self) -> np.ndarray:
        return self.p ** np.arange(self.e, dtype=np.int64)

    @cached_property
    def add_table(self) -> np.ndarray:
        a = np.arange(self.q, dtype=np.int64)
        return self._vadd_digits(a[:, None], a[None, :])

    @cached_property
    def mul_table(self) -> np.ndarray:
        a = np.arange(self.q, dtype=np.int64)
        return self._vmul_log(a[:, None], a[None, :])

    @cached_property
    def neg_table(self) -> np.ndarray:
        a = np.arange(self.q, dtype=np.int64)
        digits = (a[:, None] // self._digit_weights) % self.p
        return ((-digits) % self.p) @ self._digit_weights

    # -- scalar arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return int(self._vadd_digits(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        lg = self.log_table
        return int(self.exp_table[(lg[a] + lg[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        if self.e == 1:
            return pow(a, -1, self.p)
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = 1
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def elements(self) -> range:
        return range(self.q)

    def roots_of_unity(self, n: int) -> list[int]:
        """All ``λ`` with ``λ**n == 1``, in increasing order."""
        return [a for a in range(1, self.q) if self.power(a, n) == 1]

    # -- vectorised arithmetic ------------------------------------------------

    def _vadd_digits(self, a, b):
        w = self._digit_weights
        da = (np.asarray(a)[..., None] // w) % self.p
        db = (np.asarray(b)[..., None] // w) % self.p
        return ((da + db) % self.p) @ w

    def _vmul_log(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        lg = self.log_table
        out = self.exp_table[(lg[a] + lg[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.q <= _FULL_TABLE_LIMIT:
            return self.add_table[a, b]
        return self._vadd_digits(a, b)

    def vneg(self, a):
        if self.e == 1:
            return (-a) % self.p
        return self.neg_table[a]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        if self.q <= _FULL_TABLE_LIMIT:
            return self.mul_table[a, b]
        return self._vmul_log(a, b)

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroInverse("0 has no multiplicative inverse")
        return self.inv_table[a]

    def __call__(self, value) -> FieldElem:
        return FieldElem(self, int(value) if not isinstance(value, FieldElem) else value.value)


@dataclass(frozen=True)
class FieldElem:
    """An element of a :class:`FieldCtx`, with operator overloading."""

    ctx: FieldCtx
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.ctx.q:
            raise UsageError(f"{self.value} is not an element of {self.ctx}")

    def _other(self, b):
        if isinstance(b, FieldElem):
            if b.ctx != self.ctx:
                raise UsageError("elements belong to different fields")
            return b.value
        return int(b) % self.ctx.p if self.ctx.e > 1 else int(b) % self.ctx.q

    def __add__(self, b):
        return FieldElem(self.ctx, self.ctx.add(self.value, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return FieldElem(self.ctx, self.ctx.sub(self.value, self._other(b)))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __mul__(self, b):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return FieldElem(self.ctx, self.ctx.div(self.value, self._other(b)))

    def __pow__(self, k: int):
        return FieldElem(self.ctx, self.ctx.power(self.value, k))

    def inverse(self) -> FieldElem:
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElem({self.value} in {self.ctx})"


_FIELD_CACHE: dict = {}


def make_field(p: int, e: int = 1, modulus=None) -> FieldCtx:
    """Build GF(p^e).

    Without ``modulus`` the lexicographically smallest monic irreducible
    polynomial of degree ``e`` is used, so encodings are reproducible.
    ``modulus`` is a little-endian coefficient sequence of length ``e + 1``.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {e}")
    if p**e > MAX_ORDER:
        raise UsageError(f"GF({p}^{e}) exceeds the supported range q <= {MAX_ORDER}")
    if modulus is None:
        key = (p, e, None)
        if key not in _FIELD_CACHE:
            _FIELD_CACHE[key] = FieldCtx(p, e, smallest_irreducible(p, e))
        return _FIELD_CACHE[key]
    mod = tuple(int(c) % p for c in modulus)
    if len(_trim(mod)) != e + 1 or len(mod) != e + 1:
        raise DegreeMismatch(f"modulus {list(modulus)} does not have degree {e}")
    if mod[-1] != 1:
        raise DegreeMismatch("modulus must be monic")
    if not is_irreducible(mod, p):
        raise ReducibleModulus(f"{list(mod)} is reducible over GF({p})")
    key = (p, e, mod)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FieldCtx(p, e, mod)
    return _FIELD_CACHE[key]


_FIELD_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*$", re.IGNORECASE)


def parse_field(text: str) -> FieldCtx:
    """Parse ``"GF(p^e)"`` or ``"GF(q)"``."""
    m = _FIELD_RE.match(text)
    if not m:
        raise UsageError(f"cannot parse field spec {text!r}")
    base, exp = int(m.group(1)), m.group(2)
    if exp is not None:
        return make_field(base, int(exp))
    p, e = prime_power(base)
    return make_field(p, e)
