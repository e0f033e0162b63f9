"""Group words and word maps ``w: G^d -> G``."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import TooLarge, UsageError
from .groups import GroupSpec, enumerate_codes
from .sets import ElementSet

EVALUATION_CAP = 10**8
_CHUNK = 1 << 18


def free_reduce(letters) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if a == 0:
            raise UsageError("letters are nonzero ints: i for x_i, -i for its inverse")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; letter ``i`` is ``x_i`` and ``-i`` is ``x_i**-1``."""

    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.letters))

    @property
    def arity(self) -> int:
        return max((abs(a) for a in self.letters), default=0)

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def __str__(self):
        if not self.letters:
            return "1"
        return "".join(f"x{abs(a)}" + ("^-1" if a < 0 else "") for a in self.letters)

    def evaluate(self, spec: GroupSpec, values) -> np.ndarray:
        """Evaluate on code arrays; ``values[i]`` holds the values of ``x_{i+1}``."""
        values = [np.asarray(v, dtype=np.int64) for v in values]
        inverses = {}
        shape = np.broadcast_shapes(*(v.shape for v in values)) if values else ()
        out = np.full(shape, spec.identity_code, dtype=np.int64)
        for a in self.letters:
            i = abs(a) - 1
            if a > 0:
                v = values[i]
            else:
                if i not in inverses:
                    inverses[i] = spec.inv(values[i])
                v = inverses[i]
            out = spec.mul(out, v)
        return out


_TOKEN = re.compile(r"([a-z])(\d*)(?:\^(-?\d+))?")


def parse_word(text: str) -> Word:
    """Parse words like ``"x^2"``, ``"x y x^-1 y^-1"`` or ``"x1^3 x2^-1"``.

    Distinct variable names are numbered in order of first appearance.
    """
    names: dict[str, int] = {}
    letters = []
    body = text.replace("*", " ").replace(" ", "")
    pos = 0
    while pos < len(body):
        m = _TOKEN.match(body, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse word {text!r}")
        name = m.group(1) + m.group(2)
        idx = names.setdefault(name, len(names) + 1)
        exp = int(m.group(3)) if m.group(3) else 1
        letters.extend([idx if exp > 0 else -idx] * abs(exp))
        pos = m.end()
    return Word(tuple(letters))


def word_image(w: Word, spec: GroupSpec, cap: int = EVALUATION_CAP) -> ElementSet:
    """``w(G) = {w(g_1, ..., g_d)}`` by exhaustive evaluation over ``G^d``."""
    d = w.arity
    if d == 0:
        return ElementSet.identity_set(spec)
    G = enumerate_codes(spec)
    total = len(G) ** d
    if total > cap:
        raise TooLarge(f"|G|^{d} = {total} tuples exceeds evaluation cap {cap}")
    image = np.empty(0, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        values = []
        for _ in range(d):
            values.append(G[idx % len(G)])
            idx = idx // len(G)
        image = np.union1d(image, w.evaluate(spec, values))
        if len(image) == len(G):
            break
    return ElementSet(spec, image, _trusted=True)
