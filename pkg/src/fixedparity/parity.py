"""Sums of independent coins, their parity, and tosses forced to a fixed parity.

Notation used throughout:

* ``H(I)`` is the number of successes of independent coins with biases ``I``
  (Poisson binomial law).
* ``H(I, 0)`` / ``H(I, 1)`` is ``H(I)`` conditioned on an even / odd total;
  for a constant ``I`` these are written ``B(n, p, 0)`` / ``B(n, p, 1)``.
* ``E(I, pi)`` / ``O(I, pi)`` is the even-sum / odd-sum toss: a die picks one
  coin, the others are tossed, and the picked coin is set so that the total
  has the requested parity.  ``A(n, p)`` / ``P(n, p)`` are the constant-bias
  cases.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .pmf import (
    Number,
    Pmf,
    allclose,
    ccdf,
    convolve,
    convolve_all,
    default_tol,
    is_exact,
    median_interval,
    mix,
    stochastically_dominates,
    to_scalar,
)

EVEN = 0
ODD = 1


class DegenerateConditionError(ValueError):
    pass


class UnsupportedArityError(ValueError):
    pass


class InvalidPartitionError(ValueError):
    pass


class OutOfWindowError(ValueError):
    pass


def parse_parity(parity) -> int:
    if parity in (EVEN, "even", "0"):
        return EVEN
    if parity in (ODD, "odd", "1"):
        return ODD
    raise ValueError(f"parity must be even/odd or 0/1, got {parity!r}")


@dataclass(frozen=True)
class BiasSet:
    """Ordered coin biases, each strictly inside (0, 1)."""

    params: tuple

    def __init__(self, params: Iterable[Number], backend: str | None = None):
        params = tuple(to_scalar(p, backend) for p in params)
        if not params:
            raise ValueError("a bias set needs at least one coin")
        for p in params:
            if not 0 < p < 1:
                raise ValueError(f"bias {p} is not in the open interval (0, 1)")
        object.__setattr__(self, "params", params)

    @classmethod
    def constant(cls, n: int, p: Number, backend: str | None = None) -> "BiasSet":
        return cls([p] * n, backend)

    def __len__(self) -> int:
        return len(self.params)

    def __iter__(self):
        return iter(self.params)

    @property
    def exact(self) -> bool:
        return is_exact(self.params)

    @property
    def is_constant(self) -> bool:
        return len(set(self.params)) == 1

    def without(self, i: int) -> tuple:
        return self.params[:i] + self.params[i + 1 :]

    def mean(self) -> Number:
        return sum(self.params) / len(self.params)


@dataclass(frozen=True)
class WeightVector:
    """Die probabilities ``pi_1..pi_n``; non-negative, summing to one."""

    weights: tuple

    def __init__(self, weights: Iterable[Number], backend: str | None = None):
        weights = tuple(to_scalar(w, backend) for w in weights)
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        total = sum(weights)
        if is_exact(weights):
            if total != 1:
                raise ValueError(f"weights sum to {total}, not 1")
        elif abs(total - 1) > 1e-12:
            raise ValueError(f"weights sum to {total}, not 1")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, n: int, exact: bool = True) -> "WeightVector":
        return cls([Fraction(1, n) if exact else 1.0 / n] * n)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)


@dataclass(frozen=True)
class ParitySplit:
    alpha: Number
    beta: Number


def _one(values: Sequence) -> Number:
    return Fraction(1) if is_exact(values) else 1.0


def _params(I) -> tuple:
    return tuple(I.params if isinstance(I, BiasSet) else I)


# Distributions -------------------------------------------------------------


# Fraction(1, 2) == 0.5 and they hash alike, so every cache key carries the
# exactness flag to keep float and rational results apart.
@lru_cache(maxsize=4096)
def _poisson_binomial(params: tuple, exact: bool) -> Pmf:
    one = _one(params)
    masses = [one]
    for p in params:
        q = one - p
        nxt = [masses[0] * q]
        for k in range(1, len(masses)):
            nxt.append(masses[k] * q + masses[k - 1] * p)
        nxt.append(masses[-1] * p)
        masses = nxt
    return Pmf(masses, validate=False)


def poisson_binomial(I) -> Pmf:
    """Law of the number of successes among independent coins with biases ``I``.

    An empty parameter list gives the point mass at zero.
    """
    params = _params(I)
    return _poisson_binomial(params, is_exact(params))


def binomial(n: int, p: Number) -> Pmf:
    return poisson_binomial((p,) * n)


def parity_split(I) -> ParitySplit:
    """Closed-form probabilities that ``H(I)`` is even / odd."""
    params = _params(I)
    one = _one(params)
    prod = one
    for p in params:
        prod *= one - 2 * p
    alpha = (one + prod) / 2
    return ParitySplit(alpha, one - alpha)


def parity_masses(d: Pmf) -> ParitySplit:
    """Even and odd mass of a pmf, summed directly."""
    even = sum(d.masses[0::2], d._zero())
    return ParitySplit(even, sum(d.masses[1::2], d._zero()))


@lru_cache(maxsize=4096)
def _conditional(params: tuple, parity: int, exact: bool) -> Pmf:
    d = poisson_binomial(params)
    split = parity_split(params)
    norm = split.alpha if parity == EVEN else split.beta
    if norm == 0:
        raise DegenerateConditionError(f"H(I) is never {'even' if parity == EVEN else 'odd'}")
    zero = d._zero()
    return Pmf(
        [m / norm if k % 2 == parity else zero for k, m in enumerate(d.masses)],
        validate=False,
    )


def conditional_parity_pmf(I, parity) -> Pmf:
    """``H(I, parity)``: restrict ``H(I)`` to one parity class and renormalize."""
    params = _params(I)
    return _conditional(params, parse_parity(parity), is_exact(params))


def conditional_binomial(n: int, p: Number, parity) -> Pmf:
    """``B(n, p, parity)``.  ``B(0, p, 0)`` is the point mass at zero."""
    return conditional_parity_pmf((p,) * n, parity)


def fixed_parity_toss_pmf(I, pi: WeightVector | Sequence[Number] | None, parity) -> Pmf:
    """Law of the even-sum (``parity=0``) or odd-sum (``parity=1``) toss.

    For each die face ``i`` the remaining coins are tossed; the picked coin
    absorbs whatever is needed to reach the requested parity.  ``pi=None``
    means the uniform die.  A single coin is allowed: the toss is then
    deterministic (0 for even, 1 for odd).
    """
    params = _params(I)
    parity = parse_parity(parity)
    n = len(params)
    if n < 1:
        raise ValueError("need at least one coin")
    if pi is None:
        pi = WeightVector.uniform(n, exact=is_exact(params))
    weights = tuple(pi)
    if len(weights) != n:
        raise ValueError("weight vector length does not match the bias set")
    zero = _one(params + weights) * 0
    out = [zero] * (n + 1)
    for i, w in enumerate(weights):
        if w == 0:
            continue
        rest = poisson_binomial(params[:i] + params[i + 1 :])
        for k in range(parity, n + 1, 2):
            out[k] += w * (rest[k] + rest[k - 1] if k >= 1 else rest[k])
    return Pmf(out, validate=False)


def even_sum_toss(n: int, p: Number) -> Pmf:
    """``A(n, p)``: ``P[B(n-1,p)=k] + P[B(n-1,p)=k-1]`` on even ``k``."""
    return _constant_toss(n, p, EVEN, is_exact([p]))


def odd_sum_toss(n: int, p: Number) -> Pmf:
    """``P(n, p)``, the odd-sum analogue of :func:`even_sum_toss`."""
    return _constant_toss(n, p, ODD, is_exact([p]))


@lru_cache(maxsize=4096)
def _constant_toss(n: int, p: Number, parity: int, exact: bool) -> Pmf:
    if n < 1:
        raise ValueError("need at least one coin")
    base = binomial(n - 1, p)
    zero = base._zero()
    out = [zero] * (n + 1)
    for k in range(parity, n + 1, 2):
        out[k] = base[k] + (base[k - 1] if k >= 1 else zero)
    return Pmf(out, validate=False)


def fair_toss_closed_form(n: int, parity) -> Pmf:
    """``C(n, k) / 2^(n-1)`` on the requested parity class."""
    parity = parse_parity(parity)
    denom = 2 ** (n - 1)
    return Pmf(
        [Fraction(math.comb(n, k), denom) if k % 2 == parity else Fraction(0) for k in range(n + 1)]
    )


# Decompositions ------------------------------------------------------------


def die_mixture_pmf(I, pi, parity) -> Pmf:
    """Fixed-parity toss rebuilt as die roll, parity coin, then a conditional draw."""
    params = _params(I)
    parity = parse_parity(parity)
    if pi is None:
        pi = WeightVector.uniform(len(params), exact=is_exact(params))
    components = []
    for i, w in enumerate(pi):
        rest = params[:i] + params[i + 1 :]
        split = parity_split(rest)
        same = conditional_parity_pmf(rest, parity)
        # the picked coin shows 1 exactly when the rest has the wrong parity
        flipped = conditional_parity_pmf(rest, 1 - parity).shift(1) if rest else None
        stay = split.alpha if parity == EVEN else split.beta
        if flipped is None:
            components.append((w, same))
        else:
            components.append((w * stay, same))
            components.append((w * (1 - stay), flipped))
    return mix(components)


def constant_coin_identity_pmf(n: int, p: Number, parity) -> Pmf:
    """``B(1, c) + B(n-1, p, ...)`` form of ``A(n, p)`` / ``P(n, p)``.

    For the even toss ``c = beta({p}_{n-1})`` and the conditional draw uses
    the parity shown by the coin; for the odd toss ``c = alpha({p}_{n-1})``
    and the draw uses the opposite parity.
    """
    parity = parse_parity(parity)
    split = parity_split((p,) * (n - 1))
    if parity == EVEN:
        c = split.beta
        return mix(
            [
                (1 - c, conditional_binomial(n - 1, p, EVEN)),
                (c, conditional_binomial(n - 1, p, ODD).shift(1)),
            ]
        )
    c = split.alpha
    return mix(
        [
            (1 - c, conditional_binomial(n - 1, p, ODD)),
            (c, conditional_binomial(n - 1, p, EVEN).shift(1)),
        ]
    )


def verify_mixture_representation(I, pi, parity, tol: float | None = None) -> bool:
    params = _params(I)
    if len(params) < 2:
        raise ValueError("need at least two coins")
    direct = fixed_parity_toss_pmf(params, pi, parity)
    if not allclose(direct, die_mixture_pmf(params, pi, parity), tol):
        return False
    if len(set(params)) == 1:
        n, p = len(params), params[0]
        if not allclose(direct, constant_coin_identity_pmf(n, p, parity), tol):
            return False
    return True


def _check_partition(params: tuple, first: tuple, second: tuple) -> None:
    if not first or not second:
        raise InvalidPartitionError("both parts must be non-empty")
    if Counter(first) + Counter(second) != Counter(params):
        raise InvalidPartitionError("parts do not form a partition of the bias set")


def partition_mixture_pmf(first, second, parity) -> Pmf:
    """``H(I1 u I2, parity)`` as a mixture of independent sums of conditionals."""
    a, b = _params(first), _params(second)
    parity = parse_parity(parity)
    s1, s2 = parity_split(a), parity_split(b)
    whole = parity_split(a + b)
    if parity == EVEN:
        terms = [
            (s1.alpha * s2.alpha / whole.alpha, EVEN, EVEN),
            (s1.beta * s2.beta / whole.alpha, ODD, ODD),
        ]
    else:
        terms = [
            (s1.alpha * s2.beta / whole.beta, EVEN, ODD),
            (s1.beta * s2.alpha / whole.beta, ODD, EVEN),
        ]
    components = []
    for w, b1, b2 in terms:
        if w == 0:
            continue
        left = conditional_parity_pmf(a, b1)
        right = conditional_parity_pmf(b, b2)
        components.append((w, convolve(left, right)))
    return mix(components)


def verify_partition_mixture(I, split, parity, tol: float | None = None) -> bool:
    params = _params(I)
    first, second = (_params(part) for part in split)
    _check_partition(params, first, second)
    return allclose(
        conditional_parity_pmf(params, parity),
        partition_mixture_pmf(first, second, parity),
        tol,
    )


def rescaled_coin_form(J, parity) -> Pmf:
    """Closed forms of ``H(J, parity)`` for two or three coins."""
    params = _params(J)
    parity = parse_parity(parity)
    split = parity_split(params)
    one = _one(params)
    if len(params) == 2:
        p1, p2 = params
        if parity == EVEN:
            return Pmf.bernoulli(p1 * p2 / split.alpha).scale(2)
        return Pmf.point(1, exact=is_exact(params))
    if len(params) == 3:
        q1, q2, q3 = params
        if parity == EVEN:
            return Pmf.bernoulli(one - (one - q1) * (one - q2) * (one - q3) / split.alpha).scale(2)
        return Pmf.bernoulli(q1 * q2 * q3 / split.beta).scale(2).shift(1)
    raise UnsupportedArityError(f"closed form exists for 2 or 3 coins, got {len(params)}")


def mixture_tree(I, parity) -> list[tuple[Number, tuple]]:
    """Expand ``H(I, parity)`` into independent sums of 2- and 3-coin conditionals.

    Doubletons are peeled off the end of ``I`` until at most three coins
    remain.  Each returned term is ``(weight, leaves)`` where ``leaves`` is a
    tuple of ``(params, parity)`` pairs whose conditionals are summed
    independently.
    """
    params = _params(I)
    parity = parse_parity(parity)
    if len(params) < 2:
        raise ValueError("need at least two coins")
    if len(params) <= 3:
        return [(_one(params), ((params, parity),))]
    head, tail = params[:-2], params[-2:]
    s1, s2 = parity_split(head), parity_split(tail)
    whole = parity_split(params)
    if parity == EVEN:
        branches = [
            (s1.alpha * s2.alpha / whole.alpha, EVEN, EVEN),
            (s1.beta * s2.beta / whole.alpha, ODD, ODD),
        ]
    else:
        branches = [
            (s1.alpha * s2.beta / whole.beta, EVEN, ODD),
            (s1.beta * s2.alpha / whole.beta, ODD, EVEN),
        ]
    terms = []
    for w, b_head, b_tail in branches:
        for w_sub, leaves in mixture_tree(head, b_head):
            terms.append((w * w_sub, leaves + ((tail, b_tail),)))
    return terms


def mixture_tree_pmf(I, parity) -> Pmf:
    """Rebuild ``H(I, parity)`` from :func:`mixture_tree` using only closed forms."""
    components = []
    for w, leaves in mixture_tree(I, parity):
        components.append((w, convolve_all(rescaled_coin_form(J, b) for J, b in leaves)))
    return mix(components)


# Inequalities and bounds ---------------------------------------------------


def conditional_binomial_gaps(n: int, p: Number) -> list[tuple[str, int, Number]]:
    """Slack of both conditional-binomial inequality families for every ``k``.

    Returns ``(family, k, lhs - rhs)`` rows.  Family ``"odd>=even"`` is
    ``P[B(n,p,1) >= 2k-1] - P[B(n,p,0) >= 2k]`` and ``"even>=odd"`` is
    ``P[B(n,p,0) >= 2k] - P[B(n,p,1) >= 2k+1]``.
    """
    odd = conditional_binomial(n, p, ODD)
    even = conditional_binomial(n, p, EVEN)
    rows = []
    for k in range(0, n // 2 + 2):
        if k >= 1:
            rows.append(("odd>=even", k, ccdf(odd, 2 * k - 1) - ccdf(even, 2 * k)))
        rows.append(("even>=odd", k, ccdf(even, 2 * k) - ccdf(odd, 2 * k + 1)))
    return rows


def verify_conditional_binomial_inequalities(n: int, p: Number, tol: float | None = None) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    rows = conditional_binomial_gaps(n, p)
    tol = default_tol(is_exact([p]), tol)
    return all(gap >= -tol for _, _, gap in rows)


def composite_parity_sum(p1: Number, n: int, p: Number, mode: str = "direct") -> Pmf:
    """Law of ``B(1,p1) + B(n, p, B(1,p1))`` (direct) or ``... 1 - B(1,p1))`` (flipped).

    ``p1`` may be 0 or 1 (a deterministic first coin).
    """
    if not 0 <= p1 <= 1:
        raise ValueError("p1 must lie in [0, 1]")
    if mode == "direct":
        after_zero, after_one = EVEN, ODD
    elif mode == "flipped":
        after_zero, after_one = ODD, EVEN
    else:
        raise ValueError(f"mode must be 'direct' or 'flipped', got {mode!r}")
    components = []
    if p1 != 1:
        components.append((1 - p1, conditional_binomial(n, p, after_zero)))
    if p1 != 0:
        components.append((p1, conditional_binomial(n, p, after_one).shift(1)))
    return mix(components)


@dataclass(frozen=True)
class MedianLowerBoundCheck:
    n: int
    p: Number
    bound: Number
    even_interval: tuple[int, int]
    odd_interval: tuple[int, int]
    holds: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": str(self.p),
            "bound": float(self.bound),
            "even_median_interval": list(self.even_interval),
            "odd_median_interval": list(self.odd_interval),
            "holds": self.holds,
        }


def median_lower_bound_check(n: int, p: Number) -> MedianLowerBoundCheck:
    """Smallest medians of ``A(n,p)`` and ``P(n,p)`` against ``(n-1)p - 1``."""
    if n < 1:
        raise ValueError("n must be positive")
    bound = (n - 1) * p - 1
    even = median_interval(even_sum_toss(n, p))
    odd = median_interval(odd_sum_toss(n, p))
    return MedianLowerBoundCheck(n, p, bound, even, odd, even[0] >= bound and odd[0] >= bound)


@dataclass(frozen=True)
class HoeffdingCheck:
    lhs: Number
    rhs: Number
    holds: bool


def hoeffding_interval_bound(I, b: int, c: int, tol: float | None = None) -> HoeffdingCheck:
    """Compare ``P[b <= H(I) <= c]`` with the binomial of the same mean.

    Only defined on windows with ``0 <= b <= n*pbar <= c <= n``.
    """
    params = _params(I)
    n = len(params)
    total = sum(params)
    if not (0 <= b <= total <= c <= n):
        raise OutOfWindowError(f"window [{b}, {c}] does not satisfy 0 <= b <= {total} <= c <= {n}")
    pbar = total / n
    lhs = _window_mass(poisson_binomial(params), b, c)
    rhs = _window_mass(binomial(n, pbar), b, c)
    tol = default_tol(is_exact(params), tol)
    return HoeffdingCheck(lhs, rhs, lhs >= rhs - tol)


def _window_mass(d: Pmf, b: int, c: int) -> Number:
    return sum(d.masses[b : c + 1], d._zero())


def hoeffding_windows(I) -> list[tuple[int, int]]:
    """Every integer window ``(b, c)`` valid for :func:`hoeffding_interval_bound`."""
    params = _params(I)
    n, total = len(params), sum(params)
    return [(b, c) for b in range(0, n + 1) for c in range(b, n + 1) if b <= total <= c]


def corollary_dominance(n: int, p: Number, p_high: Number, p_low: Number, mode: str):
    """Does raising the first coin's bias from ``p_low`` to ``p_high`` dominate?"""
    return stochastically_dominates(
        composite_parity_sum(p_high, n, p, mode), composite_parity_sum(p_low, n, p, mode)
    )
