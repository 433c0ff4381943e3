"""Monotone couplings of dependent 0/1 trials with independent Ber(p) coins.

A :class:`ConditionalTrialProcess` describes ``X_1..X_s`` through the
conditional success probability of each step given the outcomes so far.
When every such probability is at least ``p`` ("lower" direction) the
process can be thinned to i.i.d. Ber(p) coins lying below it pathwise;
when every probability is at most ``p`` ("upper") the i.i.d. coins are
thinned instead and lie above it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .pmf import Pmf, is_exact

LOWER = "lower"
UPPER = "upper"

Oracle = Callable[[int, tuple], object]


class CouplingInfeasibleError(ValueError):
    pass


@dataclass(frozen=True)
class ConditionalTrialProcess:
    """``oracle(i, history)`` gives ``P[X_i = 1 | X_1..X_{i-1} = history]`` (0-based ``i``)."""

    length: int
    oracle: Oracle

    def probability(self, i: int, history: tuple):
        q = self.oracle(i, history)
        if not 0 <= q <= 1:
            raise ValueError(f"oracle returned {q} at step {i}, outside [0, 1]")
        return q

    @classmethod
    def constant(cls, length: int, q) -> "ConditionalTrialProcess":
        return cls(length, lambda i, history: q)


@dataclass(frozen=True)
class CoupledPair:
    u: tuple
    v: tuple

    def ordered(self, direction: str) -> bool:
        if direction == LOWER:
            return all(b <= a for a, b in zip(self.u, self.v))
        return all(b >= a for a, b in zip(self.u, self.v))


def _check_direction(direction: str) -> None:
    if direction not in (LOWER, UPPER):
        raise ValueError(f"direction must be {LOWER!r} or {UPPER!r}")


def _step_probability(proc: ConditionalTrialProcess, i: int, history: tuple, p, direction: str):
    q = proc.probability(i, history)
    if (direction == LOWER and q < p) or (direction == UPPER and q > p):
        raise CouplingInfeasibleError(
            f"step {i}: conditional probability {q} violates the {direction} bound p={p}"
        )
    return q


def coupled_sample(
    proc: ConditionalTrialProcess, p, direction: str, rng: np.random.Generator
) -> CoupledPair:
    """Draw ``(U, V)`` with ``U`` distributed as the process and ``V`` i.i.d. Ber(p).

    Lower direction: sample ``U_i`` first and keep a success in ``V_i`` with
    probability ``p / q_i``.  Upper direction: sample ``V_i`` first and keep
    a success in ``U_i`` with probability ``q_i / p``.
    """
    _check_direction(direction)
    u, v = [], []
    for i in range(proc.length):
        q = _step_probability(proc, i, tuple(u), p, direction)
        if direction == LOWER:
            ui = int(rng.random() < q)
            vi = int(ui and rng.random() < p / q)
        else:
            vi = int(rng.random() < p)
            ui = int(vi and rng.random() < q / p)
        u.append(ui)
        v.append(vi)
    return CoupledPair(tuple(u), tuple(v))


def coupled_samples(proc, p, direction, rng, size: int) -> tuple[np.ndarray, np.ndarray]:
    """``size`` independent draws of :func:`coupled_sample` as two ``(size, s)`` arrays."""
    u = np.zeros((size, proc.length), dtype=np.int8)
    v = np.zeros((size, proc.length), dtype=np.int8)
    for row in range(size):
        pair = coupled_sample(proc, p, direction, rng)
        u[row] = pair.u
        v[row] = pair.v
    return u, v


def process_law(proc: ConditionalTrialProcess) -> dict[tuple, object]:
    """Exact law of ``(X_1..X_s)`` by the chain rule over all ``2^s`` outcomes."""
    law = {}
    for x in itertools.product((0, 1), repeat=proc.length):
        prob = 1
        for i, xi in enumerate(x):
            q = proc.probability(i, x[:i])
            prob *= q if xi else 1 - q
        law[x] = prob
    return law


def coupling_joint_law(proc: ConditionalTrialProcess, p, direction: str) -> dict[tuple, object]:
    """Exact joint law of ``(U, V)`` obtained by multiplying every branch of the coupling.

    Each step has three atoms: lower ``(0,0)``, ``(1,0)``, ``(1,1)`` with
    masses ``1-q``, ``q-p``, ``p``; upper ``(0,0)``, ``(0,1)``, ``(1,1)``
    with masses ``1-p``, ``p-q``, ``q``.
    """
    _check_direction(direction)
    law: dict[tuple, object] = {}

    def walk(i: int, u: tuple, v: tuple, prob) -> None:
        if prob == 0:
            return
        if i == proc.length:
            key = (u, v)
            law[key] = law.get(key, 0) + prob
            return
        q = _step_probability(proc, i, u, p, direction)
        if direction == LOWER:
            atoms = (((0, 0), 1 - q), ((1, 0), q - p), ((1, 1), p))
        else:
            atoms = (((0, 0), 1 - p), ((0, 1), p - q), ((1, 1), q))
        for (ui, vi), w in atoms:
            walk(i + 1, u + (ui,), v + (vi,), prob * w)

    walk(0, (), (), 1)
    return law


@dataclass(frozen=True)
class CouplingAtomCheck:
    u_marginal_ok: bool
    v_marginal_ok: bool
    pathwise_ok: bool
    sum_dominance_ok: bool

    @property
    def ok(self) -> bool:
        return self.u_marginal_ok and self.v_marginal_ok and self.pathwise_ok and self.sum_dominance_ok


def verify_coupling_atoms(proc: ConditionalTrialProcess, p, direction: str) -> CouplingAtomCheck:
    """Check both marginals and the pathwise order on the exact joint law.

    Intended for small ``s`` and rational probabilities, where every
    comparison is exact.
    """
    from .parity import binomial
    from .pmf import stochastically_dominates

    joint = coupling_joint_law(proc, p, direction)
    u_law: dict = {}
    v_law: dict = {}
    for (u, v), w in joint.items():
        u_law[u] = u_law.get(u, 0) + w
        v_law[v] = v_law.get(v, 0) + w
    target_u = process_law(proc)
    u_ok = all(u_law.get(x, 0) == w for x, w in target_u.items())
    v_ok = True
    for x in itertools.product((0, 1), repeat=proc.length):
        expected = 1
        for xi in x:
            expected *= p if xi else 1 - p
        v_ok &= v_law.get(x, 0) == expected
    pathwise = all(CoupledPair(u, v).ordered(direction) for (u, v), w in joint.items() if w > 0)

    s = proc.length
    sum_u = [0] * (s + 1)
    for x, w in target_u.items():
        sum_u[sum(x)] += w
    exact = is_exact(list(target_u.values()) + [p])
    sum_pmf = Pmf([Fraction(m) for m in sum_u] if exact else [float(m) for m in sum_u], validate=False)
    bin_pmf = binomial(s, p)
    if direction == LOWER:
        dom = stochastically_dominates(sum_pmf, bin_pmf)
    else:
        dom = stochastically_dominates(bin_pmf, sum_pmf)
    return CouplingAtomCheck(u_ok, v_ok, pathwise, dom.dominates)
