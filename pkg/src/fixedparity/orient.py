"""Random orientations of multigraphs and the parity statistics they induce.

Every edge points into its tail with probability ``p`` and into its head
with probability ``1 - p``.  For an orientation we track

* ``E_G`` vertices of even in-degree, ``O_G = n - E_G`` of odd in-degree,
* ``Z_G`` vertices of in-degree zero and ``X_G = n - Z_G``.

Exact laws come from a census over all ``2^m`` orientations that records,
for each value of a statistic, how many orientations send exactly ``k``
edges into their tails.  The census is integer-only, so the same table
yields float or exact rational pmfs for any ``p``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.stats import binomtest

from .graphs import (
    MultiGraph,
    connected_components,
    good_labeling,
    spanning_tree_containing,
)
from .parity import (
    EVEN,
    ODD,
    composite_parity_sum,
    even_sum_toss,
    odd_sum_toss,
    parity_split,
)
from .pmf import (
    DominanceReport,
    Number,
    Pmf,
    ccdf,
    convolve_all,
    default_tol,
    is_exact,
    median_interval,
    stochastically_dominates,
)

DEFAULT_CAP = 22
CHUNK = 1 << 16

PASS = "pass"
FAIL = "fail"
STATISTICAL_PASS = "statistical-pass"
UNVERIFIED = "unverified"


class EnumerationCapError(ValueError):
    def __init__(self, m: int, cap: int):
        super().__init__(
            f"{m} edges exceed the enumeration cap of {cap}; use Monte Carlo mode (samples=...)"
        )


class ModelMismatchError(ValueError):
    pass


class InvariantViolation(AssertionError):
    pass


# Single orientations ---------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """One bit per edge: 1 points the edge into its tail, 0 into its head."""

    bits: tuple

    def __len__(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class OrientationStats:
    e_count: int
    o_count: int
    z_count: int
    x_count: int
    in_degrees: tuple


def in_degrees(G: MultiGraph, o: Orientation) -> list[int]:
    if len(o) != G.m:
        raise ValueError(f"orientation has {len(o)} bits, graph has {G.m} edges")
    deg = [0] * G.n
    for (t, h), b in zip(G.edges, o.bits):
        deg[t if b else h] += 1
    return deg


def orientation_stats(G: MultiGraph, o: Orientation) -> OrientationStats:
    deg = in_degrees(G, o)
    e = sum(1 for d in deg if d % 2 == 0)
    z = deg.count(0)
    stats = OrientationStats(e, G.n - e, z, G.n - z, tuple(deg))
    if (e - (G.m - G.n)) % 2:
        raise InvariantViolation(f"E_G={e} has the wrong parity for m={G.m}, n={G.n}")
    if G.m == G.n and 2 * z < e:
        raise InvariantViolation(f"Z_G={z} < E_G/2 with E_G={e}")
    return stats


def sample_orientation(
    G: MultiGraph, p, rng: np.random.Generator, order: str = "input"
) -> Orientation:
    """Orient every edge independently.

    ``order="good-labeling"`` tosses the same independent coins in a
    different order: pick an edge uniformly, grow a spanning tree through
    it, toss the non-tree edges, then the tree edges along a good labeling
    with that edge last.  The law of the result does not depend on the
    order; the mode exists to exhibit exactly that.
    """
    if order == "input":
        return Orientation(tuple(int(b) for b in rng.random(G.m) < p))
    if order == "good-labeling":
        return good_labeling_trace(G, p, rng).orientation
    raise ValueError(f"unknown toss order {order!r}")


@dataclass(frozen=True)
class LabelingTrace:
    orientation: Orientation
    labelings: tuple
    step_probabilities: tuple  # P[v_j ends even | all coins tossed before e_j]
    parities: tuple  # 1 when v_j ends with even in-degree, in labeling order


def good_labeling_trace(G: MultiGraph, p, rng: np.random.Generator) -> LabelingTrace:
    """Toss coins component by component in good-labeling order and record each step."""
    bits = [None] * G.m
    labelings, probs, parities = [], [], []
    for comp in connected_components(G):
        sub = comp.graph
        if sub.m == 0:
            continue
        first = int(rng.integers(sub.m))
        tree = spanning_tree_containing(sub, first)
        lab = good_labeling(sub, first, tree, swap=bool(rng.random() < 0.5))
        labelings.append(tuple(comp.vertices[v] for v in lab.vertices))
        local = [None] * sub.m
        in_tree = set(tree)
        for i in range(sub.m):
            if i not in in_tree:
                local[i] = int(rng.random() < p)
        for v, e in zip(lab.vertices, lab.edges):
            t, h = sub.edges[e]
            current = sum(
                1
                for j in sub.incident(v)
                if j != e and (sub.edges[j][0] == v) == bool(local[j])
            )
            into_v = p if t == v else 1 - p
            even = into_v if current % 2 else 1 - into_v
            probs.append(even)
            local[e] = int(rng.random() < p)
            deg = current + int((t == v) == bool(local[e]))
            parities.append(int(deg % 2 == 0))
        for i, b in zip(comp.edge_ids, local):
            bits[i] = b
    return LabelingTrace(Orientation(tuple(bits)), tuple(labelings), tuple(probs), tuple(parities))


# Census ------------------------------------------------------------------------


def _chunk_counts(tails, heads, n: int, start: int, stop: int, kind: str):
    m = len(tails)
    idx = np.arange(start, stop, dtype=np.int64)
    bits = ((idx[:, None] >> np.arange(m, dtype=np.int64)) & 1).astype(np.int16)
    deg = np.zeros((len(idx), n), dtype=np.int16)
    for i in range(m):
        if kind != "subgraph":
            deg[:, tails[i]] += bits[:, i]
            deg[:, heads[i]] += 1 - bits[:, i]
        else:
            deg[:, tails[i]] += bits[:, i]
            deg[:, heads[i]] += bits[:, i]
    k = bits.sum(axis=1)

    def table(row, col, cols):
        return np.bincount(row * cols + col, minlength=(n + 1) * cols).reshape(n + 1, cols)

    even = (deg % 2 == 0).sum(axis=1)
    if kind == "orient":
        zero = (deg == 0).sum(axis=1)
        return [table(even, k, m + 1), table(zero, k, m + 1)]
    if kind == "joint":
        return [table(even, (deg == 0).sum(axis=1), n + 1)]
    return [table(n - even, k, m + 1)]


def census_tables(G: MultiGraph, kind: str, cap: int, jobs: int) -> list[np.ndarray]:
    """Integer count tables over all ``2^m`` edge bit vectors.

    ``kind="orient"``: ``[E_G, k]`` and ``[Z_G, k]`` with ``k`` edges into
    their tails.  ``kind="subgraph"``: ``[odd-degree count, kept edges]``.
    ``kind="joint"``: ``[E_G, Z_G]``, unweighted.
    """
    if G.m > cap:
        raise EnumerationCapError(G.m, cap)
    tails = [t for t, _ in G.edges]
    heads = [h for _, h in G.edges]
    total = 1 << G.m
    ranges = [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]
    if jobs > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_chunk_counts, tails, heads, G.n, a, b, kind) for a, b in ranges
            ]
            parts = [f.result() for f in futures]
    else:
        parts = [_chunk_counts(tails, heads, G.n, a, b, kind) for a, b in ranges]
    return [sum(part[j].astype(np.int64) for part in parts) for j in range(len(parts[0]))]


@dataclass(frozen=True)
class OrientationCensus:
    """``even[s, k]`` / ``zero[s, k]``: orientations with statistic ``s`` and ``k`` edges into tails."""

    graph: MultiGraph
    even: np.ndarray = field(repr=False)
    zero: np.ndarray = field(repr=False)

    def even_counts(self) -> list[int]:
        """Orientations with exactly ``t`` even in-degree vertices, ignoring weights."""
        return [int(x) for x in self.even.sum(axis=1)]


@lru_cache(maxsize=8192)
def _cached_orientation_census(G: MultiGraph, cap: int) -> OrientationCensus:
    even, zero = census_tables(G, "orient", cap, 1)
    return OrientationCensus(G, even, zero)


def orientation_census(G: MultiGraph, cap: int = DEFAULT_CAP, jobs: int = 1) -> OrientationCensus:
    if jobs > 1:
        even, zero = census_tables(G, "orient", cap, jobs)
        return OrientationCensus(G, even, zero)
    return _cached_orientation_census(G, cap)


def weighted_pmf(table: np.ndarray, p) -> Pmf:
    """Collapse a ``[statistic, k]`` count table into a pmf at bias ``p``."""
    m = table.shape[1] - 1
    one = Fraction(1) if is_exact([p]) else 1.0
    q = one - p
    weights = [p**k * q ** (m - k) for k in range(m + 1)]
    masses = []
    for row in table:
        total = one * 0
        for c, w in zip(row, weights):
            if c:
                total += int(c) * w
        masses.append(total)
    return Pmf(masses)


@dataclass(frozen=True)
class OrientationDistributions:
    even: Pmf
    zero: Pmf
    positive: Pmf


def exact_orientation_distributions(
    G: MultiGraph, p, cap: int = DEFAULT_CAP, jobs: int = 1
) -> OrientationDistributions:
    """Exact laws of ``E_G``, ``Z_G`` and ``X_G`` by enumerating all orientations."""
    census = orientation_census(G, cap, jobs)
    even = weighted_pmf(census.even, p)
    zero = weighted_pmf(census.zero, p)
    positive = Pmf(reversed(zero.masses), validate=False)
    return OrientationDistributions(even, zero, positive)


@dataclass(frozen=True)
class SampledStatistics:
    even: np.ndarray
    zero: np.ndarray

    @property
    def samples(self) -> int:
        return len(self.even)


def sample_orientation_statistics(
    G: MultiGraph, p, samples: int, rng: np.random.Generator
) -> SampledStatistics:
    """Monte Carlo draws of ``(E_G, Z_G)``, vectorized in blocks."""
    evens, zeros = [], []
    p = float(p)
    left = samples
    while left > 0:
        size = min(left, 100_000)
        bits = (rng.random((size, G.m)) < p).astype(np.int16)
        deg = np.zeros((size, G.n), dtype=np.int16)
        for i, (t, h) in enumerate(G.edges):
            deg[:, t] += bits[:, i]
            deg[:, h] += 1 - bits[:, i]
        evens.append((deg % 2 == 0).sum(axis=1))
        zeros.append((deg == 0).sum(axis=1))
        left -= size
    return SampledStatistics(np.concatenate(evens), np.concatenate(zeros))


def empirical_pmf(values: np.ndarray, top: int) -> Pmf:
    counts = np.bincount(values, minlength=top + 1)
    return Pmf((counts / counts.sum()).tolist())


def wilson_ccdf_bands(values: np.ndarray, top: int, confidence: float = 0.999) -> list[tuple]:
    """Wilson interval for ``P[V >= t]`` at every ``t = 0..top+1``."""
    n = len(values)
    bands = []
    for t in range(top + 2):
        k = int((values >= t).sum())
        ci = binomtest(k, n).proportion_ci(confidence_level=confidence, method="wilson")
        bands.append((k / n, ci.low, ci.high))
    return bands


# Per-vertex quantities ----------------------------------------------------------


def vertex_even_probability(G: MultiGraph, v: int, p) -> Number:
    """``P[in-degree of v is even]``: the binomial parity of ``deg(v)``, flipped when ``y_v`` is odd."""
    deg = G.degrees()[v]
    split = parity_split((p,) * deg)
    return split.alpha if G.head_counts()[v] % 2 == 0 else split.beta


def vertex_even_probability_by_enumeration(G: MultiGraph, v: int, p) -> Number:
    """Same quantity, summed over every orientation of the edges at ``v``."""
    one = Fraction(1) if is_exact([p]) else 1.0
    edges = G.incident(v)
    total = one * 0
    for mask in range(1 << len(edges)):
        w, deg = one, 0
        for j, e in enumerate(edges):
            into_tail = (mask >> j) & 1
            w *= p if into_tail else one - p
            deg += int((G.edges[e][0] == v) == bool(into_tail))
        if deg % 2 == 0:
            total += w
    return total


def conditional_even_probabilities(G: MultiGraph, v: int, e: int, p) -> list[tuple[int, Number]]:
    """``P[in-degree of v even | orientation of the other edges at v]`` for every such orientation.

    Returns ``(C_minus, probability)`` rows where ``C_minus`` counts the
    other edges pointing into ``v``.  Computed by summing over the two
    orientations of ``e``.
    """
    one = Fraction(1) if is_exact([p]) else 1.0
    others = [j for j in G.incident(v) if j != e]
    into_v = p if G.edges[e][0] == v else one - p
    rows = []
    for mask in range(1 << len(others)):
        c_minus = sum(
            int((G.edges[j][0] == v) == bool((mask >> i) & 1)) for i, j in enumerate(others)
        )
        prob = one * 0
        for into, w in ((1, into_v), (0, one - into_v)):
            if (c_minus + into) % 2 == 0:
                prob += w
        rows.append((c_minus, prob))
    return rows


def verify_conditional_parity_bound(G: MultiGraph, p, tol: float | None = None) -> bool:
    """Every conditional even-parity probability lies between ``min(p, 1-p)`` and ``max(p, 1-p)``."""
    tol = default_tol(is_exact([p]), tol)
    lo, hi = min(p, 1 - p), max(p, 1 - p)
    for v in range(G.n):
        for e in G.incident(v):
            for _, prob in conditional_even_probabilities(G, v, e, p):
                if prob < lo - tol or prob > hi + tol:
                    return False
    return True


def expected_colors(G: MultiGraph, p, tol: float | None = None) -> tuple[Number, Number]:
    """``(E[X_G], n(1 - p + p^2))`` for a graph with as many edges as vertices."""
    if G.m != G.n:
        raise ModelMismatchError(f"colored-coins model needs m = n, got m={G.m}, n={G.n}")
    one = Fraction(1) if is_exact([p]) else 1.0
    q = one - p
    value = sum(one - q**x * p**y for x, y in zip(G.tail_counts(), G.head_counts()))
    bound = G.n * (one - p + p * p)
    if value > bound + default_tol(is_exact([p]), tol):
        raise InvariantViolation(f"E[X_G]={value} exceeds the maximum {bound}")
    return value, bound


# Dominance bounds ----------------------------------------------------------------


def component_toss_bound(G: MultiGraph, p) -> Pmf:
    """Independent sum over components of ``A(n_i, p)`` or ``P(n_i, p)`` by the parity of ``m_i - n_i``."""
    parts = []
    for comp in connected_components(G):
        g = comp.graph
        toss = even_sum_toss if (g.m - g.n) % 2 == 0 else odd_sum_toss
        parts.append(toss(g.n, p))
    return convolve_all(parts)


def degree_weights(G: MultiGraph) -> list:
    """``pi_v = d_v / 2m`` per vertex (kept for the record; constant-bias bounds ignore it)."""
    if G.m == 0:
        return [Fraction(1, G.n)] * G.n
    return [Fraction(d, 2 * G.m) for d in G.degrees()]


@dataclass(frozen=True)
class BoundsReport:
    even_pmf: Pmf
    lower_pmf: Pmf
    upper_pmf: Pmf
    lower: DominanceReport | None
    upper: DominanceReport | None
    mode: str
    verdict: str
    weights: tuple
    bands: tuple = ()

    @property
    def holds(self) -> bool:
        return self.verdict in (PASS, STATISTICAL_PASS)

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "verdict": self.verdict,
            "even_pmf": self.even_pmf.to_dict(),
            "lower_pmf": self.lower_pmf.to_dict(),
            "upper_pmf": self.upper_pmf.to_dict(),
            "weights": [str(w) for w in self.weights],
        }
        if self.lower is not None:
            out["lower"] = self.lower.to_dict()
            out["upper"] = self.upper.to_dict()
        if self.bands:
            out["ccdf_bands"] = [list(b) for b in self.bands]
        return out


def _check_small_bias(p) -> None:
    if not 0 < p <= Fraction(1, 2):
        raise ValueError(f"bias must lie in (0, 1/2], got {p}")


def dominance_bounds_check(
    G: MultiGraph,
    p,
    cap: int = DEFAULT_CAP,
    samples: int = 100_000,
    rng: np.random.Generator | None = None,
    tol: float | None = None,
    confidence: float = 0.999,
    jobs: int = 1,
) -> BoundsReport:
    """Sandwich ``E_G`` between the fixed-parity tosses with biases ``p`` and ``1-p``.

    Exact when ``m <= cap``; otherwise a Monte Carlo comparison against
    Wilson bands, labeled statistical.
    """
    _check_small_bias(p)
    one = Fraction(1) if is_exact([p]) else 1.0
    lower_pmf = component_toss_bound(G, p)
    upper_pmf = component_toss_bound(G, one - p)
    weights = tuple(degree_weights(G))
    if G.m <= cap:
        even = exact_orientation_distributions(G, p, cap, jobs).even
        lower = stochastically_dominates(even, lower_pmf, tol)
        upper = stochastically_dominates(upper_pmf, even, tol)
        verdict = PASS if lower.dominates and upper.dominates else FAIL
        return BoundsReport(even, lower_pmf, upper_pmf, lower, upper, "exact", verdict, weights)
    rng = np.random.default_rng(0) if rng is None else rng
    sampled = sample_orientation_statistics(G, p, samples, rng)
    bands = wilson_ccdf_bands(sampled.even, G.n, confidence)
    tol = 1e-12 if tol is None else tol
    ok = True
    for t, (_, lo, hi) in enumerate(bands):
        ok &= hi >= float(ccdf(lower_pmf, t)) - tol
        ok &= lo <= float(ccdf(upper_pmf, t)) + tol
    even = empirical_pmf(sampled.even, G.n)
    verdict = STATISTICAL_PASS if ok else FAIL
    return BoundsReport(
        even, lower_pmf, upper_pmf, None, None, "statistical", verdict, weights, tuple(bands)
    )


# Median bound for the colored-coins model ---------------------------------------


@dataclass(frozen=True)
class DerivedBiases:
    pbar: Number  # 2p^2 / (1 + (1-2p)^2): success bias of B(2,p,0)/2
    phat: Number  # 6p^2(1-p) / (1 + (1-2p)^3): success bias of B(3,p,0)/2
    ptilde: Number  # 2p^3 / (1 - (1-2p)^3): success bias of (B(3,p,1)-1)/2

    @classmethod
    def at(cls, p) -> "DerivedBiases":
        one = Fraction(1) if is_exact([p]) else 1.0
        r = one - 2 * p
        return cls(
            2 * p * p / (one + r**2),
            6 * p * p * (one - p) / (one + r**3),
            2 * p**3 / (one - r**3),
        )

    def checks(self, tol: float = 0) -> dict[str, bool]:
        return {
            "phat>=3pbar/2": self.phat >= 3 * self.pbar / 2 - tol,
            "ptilde>=3pbar/2-1/2": self.ptilde >= 3 * self.pbar / 2 - Fraction(1, 2) - tol,
        }


def rescaled_mixture_pmf(G: MultiGraph, p) -> Pmf:
    """Independent sum over components of ``B(1,p) + B(n_i-1, p, B(1,p))`` (or the flipped form).

    Components with ``m_i - n_i`` even use the direct form, odd ones the
    flipped form; an isolated vertex contributes the constant 1.
    """
    parts = []
    for comp in connected_components(G):
        g = comp.graph
        if g.n == 1:
            parts.append(Pmf.point(1, exact=is_exact([p])))
            continue
        mode = "direct" if (g.m - g.n) % 2 == 0 else "flipped"
        parts.append(composite_parity_sum(p, g.n - 1, p, mode))
    return convolve_all(parts)


@dataclass(frozen=True)
class MedianBoundReport:
    n: int
    p: Number
    connected: bool
    biases: DerivedBiases
    bound: Number
    connected_bound: Number | None
    even_floor: Number  # n * pbar - 3/2
    positive_interval: tuple
    even_interval: tuple
    mixture_interval: tuple
    checks: dict
    mode: str

    @property
    def holds(self) -> bool:
        return all(self.checks.values())

    @property
    def verdict(self) -> str:
        if not self.holds:
            return FAIL
        return PASS if self.mode == "exact" else STATISTICAL_PASS

    def to_dict(self) -> dict:
        conv = (lambda x: str(x)) if is_exact([self.p]) else float
        return {
            "n": self.n,
            "p": conv(self.p),
            "connected": self.connected,
            "pbar": conv(self.biases.pbar),
            "phat": conv(self.biases.phat),
            "ptilde": conv(self.biases.ptilde),
            "bound": conv(self.bound),
            "connected_bound": None if self.connected_bound is None else conv(self.connected_bound),
            "even_floor": conv(self.even_floor),
            "positive_median_interval": list(self.positive_interval),
            "even_median_interval": list(self.even_interval),
            "mixture_median_interval": list(self.mixture_interval),
            "checks": dict(self.checks),
            "mode": self.mode,
            "verdict": self.verdict,
        }


def median_bound_report(
    G: MultiGraph,
    p,
    cap: int = DEFAULT_CAP,
    samples: int = 100_000,
    rng: np.random.Generator | None = None,
    tol: float | None = None,
) -> MedianBoundReport:
    """Check the median upper bound on the number of distinct colors ``X_G``.

    Upper bounds are compared against the largest median and lower bounds
    against the smallest, so any choice of median passes.
    """
    if G.m != G.n:
        raise ModelMismatchError(f"colored-coins model needs m = n, got m={G.m}, n={G.n}")
    _check_small_bias(p)
    exact = is_exact([p])
    tol = default_tol(exact, tol)
    one = Fraction(1) if exact else 1.0
    half = one / 2
    n = G.n
    biases = DerivedBiases.at(p)
    bound = n - n * biases.pbar / 2 + 3 * one / 4
    even_floor = n * biases.pbar - 3 * half
    connected = G.is_connected()
    connected_bound = n - (n - 1) * p / 2 + half if connected else None

    if G.m <= cap:
        dist = exact_orientation_distributions(G, p, cap)
        even_pmf, positive_pmf, mode = dist.even, dist.positive, "exact"
    else:
        rng = np.random.default_rng(0) if rng is None else rng
        sampled = sample_orientation_statistics(G, p, samples, rng)
        even_pmf = empirical_pmf(sampled.even, n)
        positive_pmf = empirical_pmf(n - sampled.zero, n)
        mode = "statistical"
    x_lo, x_hi = median_interval(positive_pmf)
    e_lo, e_hi = median_interval(even_pmf)
    mixture = rescaled_mixture_pmf(G, p)
    mix_interval = median_interval(mixture)
    toss_bound = component_toss_bound(G, p)

    checks = {
        "median_X<=bound": x_hi <= bound + tol,
        "median_X<=n-median_E/2": x_hi <= n - half * e_lo + tol,
        "median_E>=n*pbar-3/2": e_lo >= even_floor - tol,
        "median_mixture>=n*pbar-3/2": mix_interval[0] >= even_floor - tol,
        "toss_bound>=mixture": stochastically_dominates(toss_bound, mixture, tol).dominates,
    }
    if mode == "exact":
        checks["E>=toss_bound"] = stochastically_dominates(even_pmf, toss_bound, tol).dominates
    if connected:
        checks["median_X<=connected_bound"] = x_hi <= connected_bound + tol
    for name, ok in biases.checks(tol).items():
        checks[name] = ok
    return MedianBoundReport(
        n,
        p,
        connected,
        biases,
        bound,
        connected_bound,
        even_floor,
        (x_lo, x_hi),
        (e_lo, e_hi),
        mix_interval,
        checks,
        mode,
    )


def fair_even_law(G: MultiGraph) -> Pmf:
    """Law of ``E_G`` at ``p = 1/2`` predicted for a connected graph: ``C(n,k)/2^(n-1)``."""
    parity = EVEN if (G.m - G.n) % 2 == 0 else ODD
    denom = 2 ** (G.n - 1)
    return Pmf(
        [Fraction(math.comb(G.n, k), denom) if k % 2 == parity else Fraction(0) for k in range(G.n + 1)]
    )
