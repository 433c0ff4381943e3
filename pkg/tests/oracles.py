"""Brute-force reference computations, written without the library's kernels.

Everything here enumerates outcomes directly with exact fractions.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def outcome_law(params) -> list[Fraction]:
    """Law of the number of successes, summed over all 2^n coin outcomes."""
    n = len(params)
    law = [Fraction(0)] * (n + 1)
    for outcome in itertools.product((0, 1), repeat=n):
        w = Fraction(1)
        for x, p in zip(outcome, params):
            w *= p if x else 1 - p
        law[sum(outcome)] += w
    return law


def conditioned_law(params, parity: int) -> list[Fraction]:
    law = outcome_law(params)
    kept = [m if k % 2 == parity else Fraction(0) for k, m in enumerate(law)]
    total = sum(kept)
    return [m / total for m in kept]


def fixed_parity_law(params, weights, parity: int) -> list[Fraction]:
    """Roll a die to pick one coin, toss the rest, then set the picked coin to fix the parity."""
    n = len(params)
    law = [Fraction(0)] * (n + 1)
    for i, w in enumerate(weights):
        rest = params[:i] + params[i + 1 :]
        for outcome in itertools.product((0, 1), repeat=n - 1):
            prob = Fraction(w)
            for x, p in zip(outcome, rest):
                prob *= p if x else 1 - p
            s = sum(outcome)
            s += (s + parity) % 2
            law[s] += prob
    return law


def medians(law) -> list[int]:
    """Every integer mu with P[Y >= mu] >= 1/2 and P[Y <= mu] >= 1/2."""
    out = []
    for mu in range(len(law)):
        if sum(law[mu:]) >= Fraction(1, 2) and sum(law[: mu + 1]) >= Fraction(1, 2):
            out.append(mu)
    return out


def dominates(x, y) -> bool:
    size = max(len(x), len(y))
    x = list(x) + [0] * (size - len(x))
    y = list(y) + [0] * (size - len(y))
    return all(sum(x[t:]) >= sum(y[t:]) for t in range(size))


def orientation_laws(n: int, edges, p) -> tuple[list, list]:
    """Laws of (#even in-degree vertices, #zero in-degree vertices) over all orientations.

    ``edges`` are (tail, head) pairs; an edge points into its tail with probability ``p``.
    """
    even = [Fraction(0)] * (n + 1)
    zero = [Fraction(0)] * (n + 1)
    for dirs in itertools.product((0, 1), repeat=len(edges)):
        indeg = [0] * n
        w = Fraction(1)
        for (t, h), d in zip(edges, dirs):
            if d:
                indeg[t] += 1
                w *= p
            else:
                indeg[h] += 1
                w *= 1 - p
        even[sum(1 for x in indeg if x % 2 == 0)] += w
        zero[indeg.count(0)] += w
    return even, zero


def odd_degree_law(n: int, edges, p) -> list:
    law = [Fraction(0)] * (n + 1)
    for kept in itertools.product((0, 1), repeat=len(edges)):
        deg = [0] * n
        w = Fraction(1)
        for (a, b), k in zip(edges, kept):
            if k:
                deg[a] += 1
                deg[b] += 1
                w *= p
            else:
                w *= 1 - p
        law[sum(d % 2 for d in deg)] += w
    return law


def independent_set_counts(n: int, edges) -> list[int]:
    adj = {frozenset(e) for e in edges}
    counts = [0] * (n + 1)
    for size in range(n + 1):
        for S in itertools.combinations(range(n), size):
            if all(frozenset(pair) not in adj for pair in itertools.combinations(S, 2)):
                counts[size] += 1
    while counts[-1] == 0:
        counts.pop()
    return counts


def padded(law, size: int) -> list:
    return list(law) + [0] * (size - len(law))
