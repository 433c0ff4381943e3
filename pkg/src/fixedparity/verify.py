"""Named verification sweeps over parameter grids and the graph catalog.

Each sweep counts checked cases and violations; ``run_sweep("all", ...)``
runs every registered sweep.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import apps, catalog, coupling, orient, parity, subgraph
from .pmf import Pmf, allclose, convolve_all, median_interval, stochastically_dominates


@dataclass(frozen=True)
class SweepConfig:
    n_max: int = 6
    p_grid: tuple = tuple(Fraction(k, 20) for k in range(1, 11))
    exact: bool = True
    seed: int = 0
    cap: int = orient.DEFAULT_CAP
    tol: float | None = None
    samples: int = 10_000

    def biases(self) -> list:
        return [p if self.exact else float(p) for p in self.p_grid]

    def small_biases(self) -> list:
        return [p for p in self.biases() if 0 < p <= Fraction(1, 2)]

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def random_bias_set(self, rng: np.random.Generator, size: int) -> tuple:
        ks = rng.integers(1, 1000, size=size)
        if self.exact:
            return tuple(Fraction(int(k), 1000) for k in ks)
        return tuple(float(k) / 1000 for k in ks)


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, ok: bool, **case) -> None:
        self.checked += 1
        if not ok:
            self.violations.append({k: str(v) for k, v in case.items()})

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "violations": len(self.violations),
            "examples": self.violations[:10],
        }


SWEEPS: dict[str, Callable[[SweepConfig], SweepResult]] = {}


def sweep(name: str):
    def register(fn):
        SWEEPS[name] = fn
        return fn

    return register


def parse_grid(text: str) -> tuple:
    """``"0.1:0.5:0.1"`` (inclusive range) or ``"0.1,0.25"`` as exact fractions."""
    if ":" in text:
        start, stop, step = (Fraction(x) for x in text.split(":"))
        if step <= 0:
            raise ValueError("grid step must be positive")
        out, x = [], start
        while x <= stop:
            out.append(x)
            x += step
        return tuple(out)
    return tuple(Fraction(x) for x in text.split(",") if x.strip())


def _graphs(cfg: SweepConfig) -> list:
    return [e.graph for e in catalog.connected_catalog(min(cfg.n_max, 8))]


# Bernoulli-sum sweeps ------------------------------------------------------------------


@sweep("parity-split")
def _parity_split(cfg):
    res, rng = SweepResult("parity-split"), cfg.rng()
    for size in range(1, max(cfg.n_max, 1) + 1):
        for _ in range(5):
            I = cfg.random_bias_set(rng, size)
            closed = parity.parity_split(I).alpha
            direct = parity.parity_masses(parity.poisson_binomial(I)).alpha
            res.record(abs(closed - direct) <= (0 if cfg.exact else 1e-12), params=I)
    return res


@sweep("fixed-parity")
def _fixed_parity(cfg):
    res, rng = SweepResult("fixed-parity"), cfg.rng()
    half = Fraction(1, 2) if cfg.exact else 0.5
    for n in range(1, cfg.n_max + 1):
        for b in (parity.EVEN, parity.ODD):
            res.record(
                allclose(parity.fixed_parity_toss_pmf((half,) * n, None, b), parity.fair_toss_closed_form(n, b), cfg.tol),
                n=n,
                parity=b,
            )
    for n in range(2, cfg.n_max + 1):
        for p in cfg.biases():
            base = parity.fixed_parity_toss_pmf((p,) * n, None, parity.EVEN)
            for _ in range(3):
                w = rng.integers(0, 10, size=n) + np.eye(n, dtype=int)[0]
                pi = [Fraction(int(x), int(w.sum())) for x in w] if cfg.exact else list(w / w.sum())
                res.record(allclose(parity.fixed_parity_toss_pmf((p,) * n, pi, parity.EVEN), base, cfg.tol), n=n, p=p)
    return res


@sweep("mixture-representation")
def _mixture_representation(cfg):
    res, rng = SweepResult("mixture-representation"), cfg.rng()
    for n in range(2, cfg.n_max + 1):
        for p in cfg.biases():
            for b in (parity.EVEN, parity.ODD):
                res.record(parity.verify_mixture_representation((p,) * n, None, b, cfg.tol), n=n, p=p, parity=b)
        I = cfg.random_bias_set(rng, n)
        for b in (parity.EVEN, parity.ODD):
            res.record(parity.verify_mixture_representation(I, None, b, cfg.tol), params=I, parity=b)
    return res


@sweep("partition-mixture")
def _partition_mixture(cfg):
    res, rng = SweepResult("partition-mixture"), cfg.rng()
    for n in range(2, cfg.n_max + 1):
        I = cfg.random_bias_set(rng, n)
        for cut in range(1, n):
            for b in (parity.EVEN, parity.ODD):
                res.record(parity.verify_partition_mixture(I, (I[:cut], I[cut:]), b, cfg.tol), params=I, cut=cut)
        for b in (parity.EVEN, parity.ODD):
            res.record(
                allclose(parity.mixture_tree_pmf(I, b), parity.conditional_parity_pmf(I, b), cfg.tol),
                params=I,
                tree=True,
            )
    return res


@sweep("rescaled-coins")
def _rescaled_coins(cfg):
    res = SweepResult("rescaled-coins")
    grid = cfg.biases()
    for size in (2, 3):
        for J in itertools.product(grid, repeat=size):
            for b in (parity.EVEN, parity.ODD):
                res.record(
                    allclose(parity.rescaled_coin_form(J, b), parity.conditional_parity_pmf(J, b), cfg.tol),
                    params=J,
                    parity=b,
                )
    return res


@sweep("conditional-binomials")
def _conditional_binomials(cfg):
    res = SweepResult("conditional-binomials")
    for n in range(1, cfg.n_max + 1):
        for p in cfg.biases():
            res.record(parity.verify_conditional_binomial_inequalities(n, p, cfg.tol), n=n, p=p)
    return res


@sweep("composite-dominance")
def _composite_dominance(cfg):
    res = SweepResult("composite-dominance")
    grid = cfg.biases()
    for n in range(1, cfg.n_max + 1):
        for p in grid:
            above = [q for q in grid if q >= p]
            for p2, p1 in itertools.combinations_with_replacement(above, 2):
                for mode in ("direct", "flipped"):
                    rep = parity.corollary_dominance(n, p, p1, p2, mode)
                    res.record(rep.dominates, n=n, p=p, p1=p1, p2=p2, mode=mode)
    return res


@sweep("median-lower-bound")
def _median_lower_bound(cfg):
    res = SweepResult("median-lower-bound")
    for n in range(1, cfg.n_max + 1):
        for p in cfg.small_biases():
            res.record(parity.median_lower_bound_check(n, p).holds, n=n, p=p)
    return res


@sweep("coupling")
def _coupling(cfg):
    res, rng = SweepResult("coupling"), cfg.rng()
    for p in cfg.small_biases():
        half = (1 - p) / 2
        lower = coupling.ConditionalTrialProcess(3, lambda i, h: p + half * (sum(h) % 2))
        upper = coupling.ConditionalTrialProcess(3, lambda i, h: p - p * (sum(h) % 2) / 2)
        for proc, d in ((lower, coupling.LOWER), (upper, coupling.UPPER)):
            res.record(coupling.verify_coupling_atoms(proc, p, d).ok, p=p, direction=d)
            u, v = coupling.coupled_samples(proc, p, d, rng, 200)
            ordered = (v <= u).all() if d == coupling.LOWER else (v >= u).all()
            res.record(bool(ordered), p=p, direction=d, sampled=True)
    return res


@sweep("hoeffding")
def _hoeffding(cfg):
    res, rng = SweepResult("hoeffding"), cfg.rng()
    for size in range(1, cfg.n_max + 1):
        for _ in range(3):
            I = cfg.random_bias_set(rng, size)
            for b, c in parity.hoeffding_windows(I):
                res.record(parity.hoeffding_interval_bound(I, b, c, cfg.tol).holds, params=I, b=b, c=c)
    return res


# Orientation sweeps -------------------------------------------------------------------------


@sweep("parity-invariant")
def _parity_invariant(cfg):
    res = SweepResult("parity-invariant")
    for G in _graphs(cfg):
        census = orient.orientation_census(G, cfg.cap)
        even = census.even.sum(axis=1)
        bad = [e for e in range(G.n + 1) if even[e] and (e - (G.m - G.n)) % 2]
        res.record(not bad, graph=G.edges, n=G.n)
    for e in catalog.unit_excess_catalog(cfg.n_max):
        G = e.graph
        table = orient.census_tables(G, "joint", cfg.cap, 1)[0]
        # table[e, z]: orientations with E_G = e and Z_G = z
        bad = [(ev, z) for ev, z in zip(*np.nonzero(table)) if 2 * z < ev or (ev - (G.m - G.n)) % 2]
        res.record(not bad, graph=e.name)
    return res


@sweep("good-labeling")
def _good_labeling(cfg):
    res = SweepResult("good-labeling")
    from .graphs import good_labeling, spanning_tree_containing, verify_good_labeling

    for G in _graphs(cfg):
        if G.n < 2:
            continue
        for f in range(G.m):
            tree = spanning_tree_containing(G, f)
            for swap in (False, True):
                lab = good_labeling(G, f, tree, swap)
                res.record(verify_good_labeling(G, lab, f), graph=G.edges, f=f, swap=swap)
    return res


@sweep("vertex-parity")
def _vertex_parity(cfg):
    res = SweepResult("vertex-parity")
    for G in _graphs(cfg):
        for p in cfg.small_biases():
            for v in range(G.n):
                a = orient.vertex_even_probability(G, v, p)
                b = orient.vertex_even_probability_by_enumeration(G, v, p)
                res.record(a == b if cfg.exact else abs(a - b) <= 1e-12, graph=G.edges, v=v, p=p)
            res.record(orient.verify_conditional_parity_bound(G, p, cfg.tol), graph=G.edges, p=p)
    return res


@sweep("expected-colors")
def _expected_colors(cfg):
    res = SweepResult("expected-colors")
    for e in catalog.unit_excess_catalog(cfg.n_max):
        for p in cfg.small_biases():
            try:
                value, bound = orient.expected_colors(e.graph, p, cfg.tol)
                exact = orient.exact_orientation_distributions(e.graph, p, cfg.cap).positive.mean()
                ok = value == exact if cfg.exact else abs(value - exact) <= 1e-9
            except orient.InvariantViolation:
                ok = False
            res.record(ok, graph=e.name, p=p)
    return res


@sweep("orientation-dominance")
def _orientation_dominance(cfg):
    res = SweepResult("orientation-dominance")
    for G in _graphs(cfg):
        for p in cfg.small_biases():
            rep = orient.dominance_bounds_check(G, p, cfg.cap, tol=cfg.tol)
            ok = rep.holds
            if p == Fraction(1, 2) and cfg.exact:
                ok &= rep.even_pmf == orient.fair_even_law(G)
            res.record(ok, graph=G.edges, n=G.n, p=p)
    return res


@sweep("median-bound")
def _median_bound(cfg):
    res = SweepResult("median-bound")
    for e in catalog.unit_excess_catalog(cfg.n_max):
        for p in cfg.small_biases():
            rep = orient.median_bound_report(e.graph, p, cfg.cap, tol=cfg.tol)
            res.record(rep.holds, graph=e.name, p=p)
    return res


@sweep("subgraph-dominance")
def _subgraph_dominance(cfg):
    res = SweepResult("subgraph-dominance")
    for G in _graphs(cfg):
        for p in cfg.biases():
            rep = subgraph.verify_subgraph_dominance(G, p, cfg.cap, tol=cfg.tol)
            ok = rep.holds
            if p == Fraction(1, 2) and cfg.exact:
                ok &= rep.odd_pmf == parity.even_sum_toss(G.n, p)
            res.record(ok, graph=G.edges, p=p)
    return res


@sweep("t-odd")
def _t_odd(cfg):
    res = SweepResult("t-odd")
    for G in _graphs(cfg):
        for k in range(G.n + 1):
            for T in itertools.combinations(range(G.n), k):
                o = apps.t_odd_orientation(G, T)
                if (k + G.m) % 2:
                    res.record(o is None, graph=G.edges, T=T)
                else:
                    res.record(o is not None and apps.odd_set(G, o) == frozenset(T), graph=G.edges, T=T)
    return res


@sweep("orientation-count")
def _orientation_count(cfg):
    res = SweepResult("orientation-count")
    for G in _graphs(cfg):
        for t in range(G.n + 1):
            c = apps.count_orientations_with_even_count(G, t, cfg.cap)
            res.record(c.verified, graph=G.edges, t=t)
    return res


def run_sweep(name: str, cfg: SweepConfig) -> list[SweepResult]:
    if name == "all":
        return [fn(cfg) for fn in SWEEPS.values()]
    if name not in SWEEPS:
        raise KeyError(f"unknown lemma sweep {name!r}; choose from {sorted(SWEEPS)} or 'all'")
    return [SWEEPS[name](cfg)]
