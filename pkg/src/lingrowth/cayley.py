"""Cayley graph statistics: diameter, girth, vertex expansion and the
spectral gap of the lazy random walk.

A :class:`CayleyGraph` is a neighbour table ``neighbors[v, j] = v·s_j``
over integer vertex ids.  Conventions:

* the identity is dropped from ``S`` (no loops);
* ``s`` and ``s^-1`` are distinct edge labels, so an involution in ``S``
  contributes a doubled edge and the girth is 2;
* all statistics are taken at the identity vertex, which is exact by
  vertex-transitivity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import groups
from .errors import EmptySet, NotConverged, NotGenerating, NotSymmetric, TooLarge, UsageError
from .groups import GroupSpec
from .rng import stream
from .sets import ElementSet

SPECTRAL_MAX_VERTICES = 10**6
EXACT_EXPANSION_MAX = 24
INF = math.inf


@dataclass
class CayleyGraph:
    neighbors: np.ndarray
    identity: int = 0
    involutions: np.ndarray | None = None
    codes: np.ndarray | None = None
    spec: GroupSpec | None = None

    @property
    def order(self) -> int:
        return self.neighbors.shape[0]

    @property
    def degree(self) -> int:
        return self.neighbors.shape[1]

    def index(self, g) -> int:
        return int(groups.index_of(self.codes, np.int64(getattr(g, "code", g))))


def cayley_graph(S: ElementSet, check: bool = True, cap: int | None = None) -> CayleyGraph:
    """``Cay(G, S)`` with edges ``g -> g·s`` on the whole enumerated group."""
    spec = S.spec
    S = S.without_identity()
    if check and not S.is_symmetric:
        raise NotSymmetric("Cayley graph analytics need a symmetric generating set")
    G = groups.enumerate_codes(spec, cap)
    nb = np.empty((len(G), len(S)), dtype=np.int64)
    for j, s in enumerate(S.codes.tolist()):
        for sl in groups._chunks(len(G), groups._CHUNK):
            nb[sl, j] = groups.index_of(G, spec.mul(G[sl], np.int64(s)))
    inv = spec.inv(S.codes) == S.codes
    graph = CayleyGraph(nb, int(groups.index_of(G, np.int64(spec.identity_code))), inv, G, spec)
    if check and not is_connected(graph):
        raise NotGenerating(f"S does not generate {spec}")
    return graph


def cyclic_cayley_graph(n: int, steps=(1, -1)) -> CayleyGraph:
    """``Cay(Z/n, steps)`` for quick sanity checks."""
    steps = sorted({s % n for s in steps} - {0})
    v = np.arange(n)
    nb = np.stack([(v + s) % n for s in steps], axis=1)
    inv = np.array([(2 * s) % n == 0 for s in steps], dtype=bool)
    return CayleyGraph(nb, 0, inv)


def bfs_distances(graph: CayleyGraph, source: int | None = None) -> np.ndarray:
    """Distances from ``source`` (identity by default); -1 where unreachable."""
    src = graph.identity if source is None else source
    dist = np.full(graph.order, -1, dtype=np.int64)
    dist[src] = 0
    frontier = np.array([src])
    d = 0
    while len(frontier):
        nb = np.unique(graph.neighbors[frontier].ravel())
        nb = nb[dist[nb] < 0]
        d += 1
        dist[nb] = d
        frontier = nb
    return dist


def is_connected(graph: CayleyGraph) -> bool:
    return bool(np.all(bfs_distances(graph) >= 0))


def eccentricity(graph: CayleyGraph, vertex: int | None = None) -> int:
    dist = bfs_distances(graph, vertex)
    if np.any(dist < 0):
        raise NotGenerating("graph is disconnected")
    return int(dist.max())


def diameter(graph: CayleyGraph) -> int:
    """Eccentricity of the identity, i.e. the least ``d`` with ``(S ∪ {1})^d = G``."""
    return eccentricity(graph)


def girth(graph: CayleyGraph) -> float:
    """Length of the shortest cycle through the identity (``inf`` for a forest)."""
    if graph.degree == 0:
        return INF
    if graph.involutions is not None and graph.involutions.any():
        return 2
    nbrs, deg = graph.neighbors, graph.degree
    dist = np.full(graph.order, -1, dtype=np.int64)
    parent = np.full(graph.order, -1, dtype=np.int64)
    root = graph.identity
    dist[root] = 0
    frontier = np.array([root])
    d = 0
    while len(frontier):
        src = np.repeat(frontier, deg)
        w = nbrs[frontier].ravel()
        keep = w != parent[src]
        src, w = src[keep], w[keep]
        if np.any(dist[w] == d):
            return 2 * d + 1
        fresh = dist[w] == -1
        new, first, counts = np.unique(w[fresh], return_index=True, return_counts=True)
        if np.any(counts > 1):
            return 2 * d + 2
        dist[new] = d + 1
        parent[new] = src[fresh][first]
        frontier = new
        d += 1
    return INF


def expansion(graph: CayleyGraph, A) -> Fraction:
    """``c(A) = |σ(A)|/|A|``, σ(A) the vertices outside ``A`` adjacent to it."""
    A = np.unique(np.asarray(A, dtype=np.int64))
    if len(A) == 0:
        raise EmptySet("expansion of the empty set")
    inside = np.zeros(graph.order, dtype=bool)
    inside[A] = True
    nb = np.unique(graph.neighbors[A].ravel())
    boundary = nb[~inside[nb]]
    return Fraction(len(boundary), len(A))


def exact_expansion_constant(graph: CayleyGraph) -> Fraction:
    """``min c(A)`` over all ``A`` with ``0 < |A| < |G|/2``; only for ``|G| <= 24``."""
    N = graph.order
    if N > EXACT_EXPANSION_MAX:
        raise TooLarge(f"exact expansion needs 2^{N} subsets; limit is {EXACT_EXPANSION_MAX} vertices")
    if N < 3:
        raise UsageError("need at least 3 vertices for a nonempty subset with |A| < |G|/2")
    nb_mask = np.zeros(N, dtype=np.uint32)
    for v in range(N):
        for w in graph.neighbors[v]:
            nb_mask[v] |= np.uint32(1 << int(w))
    reach = np.zeros(1, dtype=np.uint32)
    for b in range(N):
        reach = np.concatenate([reach, reach | nb_mask[b]])
    masks = np.arange(1 << N, dtype=np.uint32)
    size = np.bitwise_count(masks).astype(np.int64)
    boundary = np.bitwise_count(reach & ~masks).astype(np.int64)
    ok = (size > 0) & (2 * size < N)
    ratio = np.where(ok, boundary / np.maximum(size, 1), np.inf)
    i = int(np.argmin(ratio))
    return Fraction(int(boundary[i]), int(size[i]))


@dataclass
class SpectralResult:
    lambda2: float
    spectral_gap: float
    iterations: int
    residual: float
    cheeger_bounds: tuple[float, float] = field(default=(0.0, 0.0))

    @property
    def adjacency_gap(self) -> float:
        """Gap of the non-lazy walk, ``2 * spectral_gap``."""
        return 2 * self.spectral_gap


def _walk(graph: CayleyGraph, v: np.ndarray) -> np.ndarray:
    return 0.5 * (v + v[graph.neighbors].mean(axis=1))


def spectral_gap(
    graph: CayleyGraph,
    tol: float = 1e-9,
    max_iter: int = 10**5,
    seed: int = 0,
) -> SpectralResult:
    """Second eigenvalue of ``W = (I + P)/2`` by power iteration off the constants.

    ``P`` averages over the ``|S|`` neighbours.  ``W`` has spectrum in
    ``[0, 1]``, so the dominant eigenvalue on the complement of the constant
    vector is ``lambda2`` itself.  Stops when successive Rayleigh quotients
    differ by less than ``tol``.
    """
    N = graph.order
    if N > SPECTRAL_MAX_VERTICES:
        raise TooLarge(f"{N} vertices exceeds spectral limit {SPECTRAL_MAX_VERTICES}")
    if N == 1:
        return SpectralResult(0.0, 1.0, 0, 0.0, (0.5, 1.0))
    if graph.degree == 0:
        return SpectralResult(1.0, 0.0, 0, 0.0, (0.0, 0.0))
    rng = stream(seed, "spectral-gap")
    v = rng.standard_normal(N)
    v -= v.mean()
    v /= np.linalg.norm(v)
    lam_prev = None
    for it in range(1, max_iter + 1):
        w = _walk(graph, v)
        lam = float(v @ w)
        w -= w.mean()
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return _result(0.0, it, 0.0)
        if lam_prev is not None and abs(lam - lam_prev) < tol:
            residual = float(np.linalg.norm(_walk(graph, v) - lam * v))
            return _result(lam, it, residual)
        v = w / norm
        lam_prev = lam
    residual = float(np.linalg.norm(_walk(graph, v) - lam * v))
    raise NotConverged(
        f"power iteration did not converge in {max_iter} iterations", residual=residual, partial=lam
    )


def _result(lam: float, it: int, residual: float) -> SpectralResult:
    lam = min(max(lam, 0.0), 1.0)
    gap = 1.0 - lam
    adj = 2 * gap
    return SpectralResult(lam, gap, it, residual, (adj / 2, math.sqrt(2 * adj)))


# --- sweeps -------------------------------------------------------------------

def _random_pair_graph(spec: GroupSpec, rng, max_resample: int = 1000):
    """A random symmetric pair ``{x^±1, y^±1}`` that generates; returns (graph, S, resamples)."""
    G = groups.enumerate_codes(spec)
    for resample in range(max_resample):
        x, y = rng.choice(G, size=2).tolist()
        S = ElementSet(spec, [x, y]).symmetrized().without_identity()
        if len(S) == 0:
            continue
        graph = cayley_graph(S, check=False)
        if is_connected(graph):
            return graph, S, resample
    raise NotGenerating(f"no generating pair found for {spec} in {max_resample} draws")


def babai_sweep(spec: GroupSpec, trials: int, seed: int = 0, with_girth: bool = True) -> dict:
    """Diameters of ``Cay(G, {x^±1, y^±1})`` for random generating pairs."""
    if spec.order <= 2:
        raise UsageError(f"{spec} has no generating pair worth sweeping")
    rows, resampled = [], 0
    for trial in range(trials):
        rng = stream(seed, f"babai:{spec}", trial)
        graph, S, extra = _random_pair_graph(spec, rng)
        resampled += extra
        rows.append(
            {
                "spec": str(spec),
                "seed": seed,
                "trial": trial,
                "S_size": len(S),
                "diameter": diameter(graph),
                "girth": girth(graph) if with_girth else None,
                "lambda2": None,
                "gap": None,
            }
        )
    diams = [r["diameter"] for r in rows]
    log2 = math.log2(spec.order)
    return {
        "spec": str(spec),
        "order": spec.order,
        "rows": rows,
        "resampled": resampled,
        "max_diameter": max(diams),
        "log2_order_squared": log2**2,
        "max_over_log2_squared": max(diams) / log2**2,
        "distribution": {str(d): diams.count(d) for d in sorted(set(diams))},
    }


def girth_gap_scan(spec: GroupSpec, trials: int, seed: int = 0, tol: float = 1e-9) -> list[dict]:
    """(girth, spectral gap) for random generating pairs of (P)SL(2,p), ``p <= 101``."""
    if spec.family not in ("SL", "PSL") or spec.n != 2 or spec.field.e != 1 or spec.p > 101:
        raise UsageError("girth_gap_scan expects SL(2,p) or PSL(2,p) with p <= 101")
    rows = []
    for trial in range(trials):
        rng = stream(seed, f"girth-gap:{spec}", trial)
        graph, S, _ = _random_pair_graph(spec, rng)
        sr = spectral_gap(graph, tol=tol, seed=seed + trial)
        rows.append(
            {
                "spec": str(spec),
                "seed": seed,
                "trial": trial,
                "S_size": len(S),
                "diameter": diameter(graph),
                "girth": girth(graph),
                "lambda2": sr.lambda2,
                "gap": sr.spectral_gap,
            }
        )
    return rows


CSV_FIELDS = ("spec", "seed", "trial", "S_size", "diameter", "girth", "lambda2", "gap")


def rows_to_csv(rows) -> str:
    def fmt(v):
        if v is None:
            return ""
        if isinstance(v, float):
            return "inf" if math.isinf(v) else repr(v)
        return str(v)

    lines = [",".join(CSV_FIELDS)]
    for r in rows:
        lines.append(",".join(fmt(r.get(k)) for k in CSV_FIELDS))
    return "\n".join(lines) + "\n"
