"""Finite probability mass functions on the non-negative integers.

A :class:`Pmf` stores masses as a tuple indexed by outcome ``0..n_max``.
Masses are either Python floats or :class:`fractions.Fraction` values;
all arithmetic below is written generically so an exact input produces an
exact output.  Mixing the two silently degrades to float, so conversion
happens once at the boundary through :func:`to_scalar`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

Number = Union[float, Fraction]

FLOAT = "float"
RATIONAL = "rational"
BACKENDS = (FLOAT, RATIONAL)

NORMALIZATION_TOL = 1e-12
VERDICT_TOL = 1e-9


class InvalidPmfError(ValueError):
    pass


class InvalidMixtureError(ValueError):
    pass


def to_scalar(x, backend: str | None = None) -> Number:
    """Convert ``x`` to the number type used by ``backend``.

    With ``backend=None`` the type is kept: rationals stay exact, anything
    else becomes a float.  Floats are converted to rationals through their
    shortest decimal repr, so ``0.3`` becomes ``3/10`` and not the binary
    expansion.
    """
    if backend is None:
        backend = RATIONAL if isinstance(x, Rational) and not isinstance(x, bool) else FLOAT
    if backend == RATIONAL:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, float):
            return Fraction(repr(x))
        return Fraction(x)
    if backend == FLOAT:
        return float(x)
    raise ValueError(f"unknown backend {backend!r}")


def is_exact(values: Iterable) -> bool:
    return all(isinstance(v, Rational) for v in values)


def default_tol(exact: bool, tol: float | None = None) -> float:
    if tol is not None:
        return tol
    return 0 if exact else VERDICT_TOL


@dataclass(frozen=True, eq=False)
class Pmf:
    """Distribution of a random variable taking values in ``0..len(masses)-1``."""

    masses: tuple
    exact: bool = field(init=False)

    def __init__(self, masses: Iterable[Number], *, validate: bool = True):
        masses = tuple(masses)
        if not masses:
            raise InvalidPmfError("a pmf needs at least one outcome")
        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "exact", is_exact(masses))
        if validate:
            self._validate()

    def _validate(self) -> None:
        if any(m < 0 for m in self.masses):
            bad = min(self.masses)
            if self.exact or bad < -NORMALIZATION_TOL:
                raise InvalidPmfError(f"negative mass {bad}")
        total = sum(self.masses)
        if self.exact:
            if total != 1:
                raise InvalidPmfError(f"masses sum to {total}, not 1")
        elif abs(total - 1.0) > NORMALIZATION_TOL:
            raise InvalidPmfError(f"masses sum to {total!r}, not 1")

    # constructors

    @classmethod
    def point(cls, k: int, *, exact: bool = True) -> "Pmf":
        one = Fraction(1) if exact else 1.0
        zero = Fraction(0) if exact else 0.0
        return cls([zero] * k + [one])

    @classmethod
    def bernoulli(cls, p: Number) -> "Pmf":
        return cls([1 - p, p])

    @classmethod
    def binomial(cls, n: int, p: Number) -> "Pmf":
        one = 1 if isinstance(p, Rational) else 1.0
        q = one - p
        return cls([math.comb(n, k) * p**k * q ** (n - k) for k in range(n + 1)])

    # accessors

    def __len__(self) -> int:
        return len(self.masses)

    def __getitem__(self, k: int) -> Number:
        if 0 <= k < len(self.masses):
            return self.masses[k]
        return self._zero()

    def __iter__(self):
        return iter(self.masses)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pmf):
            return NotImplemented
        n = max(len(self), len(other))
        return all(self[k] == other[k] for k in range(n))

    __hash__ = None

    def __repr__(self) -> str:
        shown = ", ".join(str(m) for m in self.masses)
        return f"Pmf([{shown}])"

    def _zero(self) -> Number:
        return Fraction(0) if self.exact else 0.0

    @property
    def support_max(self) -> int:
        return len(self.masses) - 1

    def support(self) -> list[int]:
        return [k for k, m in enumerate(self.masses) if m > 0]

    def trimmed(self) -> "Pmf":
        """Drop trailing zero masses (exact zeros only)."""
        end = len(self.masses)
        while end > 1 and self.masses[end - 1] == 0:
            end -= 1
        return Pmf(self.masses[:end], validate=False)

    def mean(self) -> Number:
        return sum(k * m for k, m in enumerate(self.masses))

    def cdf(self, t: int) -> Number:
        if t < 0:
            return self._zero()
        return sum(self.masses[: t + 1], self._zero())

    def ccdf(self, t: int) -> Number:
        return ccdf(self, t)

    def shift(self, k: int) -> "Pmf":
        """Distribution of ``X + k`` for ``k >= 0``."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        return Pmf((self._zero(),) * k + self.masses, validate=False)

    def scale(self, c: int) -> "Pmf":
        """Distribution of ``c * X`` for a positive integer ``c``."""
        if c < 1:
            raise ValueError("scale factor must be a positive integer")
        out = [self._zero()] * (c * self.support_max + 1)
        for k, m in enumerate(self.masses):
            out[c * k] = m
        return Pmf(out, validate=False)

    def to_float(self) -> "Pmf":
        return Pmf([float(m) for m in self.masses], validate=False)

    def to_rational(self) -> "Pmf":
        return Pmf([to_scalar(m, RATIONAL) for m in self.masses])

    def to_dict(self) -> dict:
        """JSON-friendly ``{offset, masses}``; exact masses become ``"a/b"`` strings."""
        support = self.support()
        if not support:
            offset, body = 0, self.masses
        else:
            offset = support[0]
            body = self.masses[offset : support[-1] + 1]
        if self.exact:
            return {"offset": offset, "masses": [str(Fraction(m)) for m in body]}
        return {"offset": offset, "masses": [float(m) for m in body]}

    @classmethod
    def from_dict(cls, d: dict) -> "Pmf":
        body = [Fraction(m) if isinstance(m, str) else float(m) for m in d["masses"]]
        zero = Fraction(0) if is_exact(body) else 0.0
        return cls([zero] * int(d["offset"]) + body)


def max_abs_diff(a: Pmf, b: Pmf) -> Number:
    n = max(len(a), len(b))
    return max(abs(a[k] - b[k]) for k in range(n))


def allclose(a: Pmf, b: Pmf, tol: float | None = None) -> bool:
    """Pointwise equality; exact when both sides are exact and ``tol`` is unset."""
    tol = default_tol(a.exact and b.exact, tol)
    return max_abs_diff(a, b) <= tol


def _convolve_lists(a: Sequence, b: Sequence) -> list:
    if not is_exact(a) or not is_exact(b):
        return list(np.convolve(np.asarray(a, dtype=float), np.asarray(b, dtype=float)))
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


def convolve(a: Pmf, b: Pmf) -> Pmf:
    """Law of the independent sum of two pmfs."""
    masses = _convolve_lists(a.masses, b.masses)
    if not (a.exact and b.exact):
        masses = [max(float(m), 0.0) for m in masses]
    return Pmf(masses, validate=False)


def convolve_all(pmfs: Iterable[Pmf]) -> Pmf:
    out = None
    for d in pmfs:
        out = d if out is None else convolve(out, d)
    if out is None:
        return Pmf.point(0)
    return out


def mix(components: Sequence[tuple[Number, Pmf]]) -> Pmf:
    """Pointwise weighted sum of pmfs; weights must be a probability vector."""
    if not components:
        raise InvalidMixtureError("empty mixture")
    weights = [w for w, _ in components]
    if any(w < 0 for w in weights):
        raise InvalidMixtureError("negative mixture weight")
    exact = is_exact(weights) and all(d.exact for _, d in components)
    total = sum(weights)
    if (exact and total != 1) or (not exact and abs(total - 1) > NORMALIZATION_TOL):
        raise InvalidMixtureError(f"mixture weights sum to {total}")
    n = max(len(d) for _, d in components)
    zero = Fraction(0) if exact else 0.0
    out = [zero] * n
    for w, d in components:
        if w == 0:
            continue
        for k, m in enumerate(d.masses):
            out[k] += w * m
    if not exact:
        out = [float(m) for m in out]
    return Pmf(out, validate=False)


def ccdf(d: Pmf, t: int) -> Number:
    """``P[X >= t]``."""
    if t <= 0:
        return Fraction(1) if d.exact else 1.0
    return sum(d.masses[t:], d._zero())


def median_interval(d: Pmf, tol: float | None = None) -> tuple[int, int]:
    """Closed interval of all medians ``mu`` with ``P[X>=mu]>=1/2`` and ``P[X<=mu]>=1/2``.

    The endpoints are always integers.  In float mode ``tol`` (default
    1e-12) widens ties so a cdf of 0.49999999999999994 still counts as 1/2;
    that can only enlarge the interval.
    """
    tol = (0 if d.exact else NORMALIZATION_TOL) if tol is None else tol
    half = Fraction(1, 2) if d.exact else 0.5
    cum = d._zero()
    low = None
    for k, m in enumerate(d.masses):
        cum += m
        if cum >= half - tol:
            low = k
            break
    tail = d._zero()
    high = None
    for k in range(len(d.masses) - 1, -1, -1):
        tail += d.masses[k]
        if tail >= half - tol:
            high = k
            break
    assert low is not None and high is not None and low <= high
    return low, high


@dataclass(frozen=True)
class DominanceReport:
    """Per-threshold ccdf gaps ``P[X>=t] - P[Y>=t]`` for ``t = 0..len(gaps)-1``."""

    dominates: bool
    equal: bool
    gaps: tuple
    min_gap: Number
    worst_threshold: int
    tol: float

    def to_dict(self) -> dict:
        conv = str if all(isinstance(g, Fraction) for g in self.gaps) else float
        return {
            "dominates": self.dominates,
            "equal": self.equal,
            "min_gap": conv(self.min_gap),
            "worst_threshold": self.worst_threshold,
            "gaps": [conv(g) for g in self.gaps],
        }


def stochastically_dominates(x: Pmf, y: Pmf, tol: float | None = None) -> DominanceReport:
    """Check ``x >=_st y``: ``P[x>=t] >= P[y>=t]`` for every threshold ``t``."""
    tol = default_tol(x.exact and y.exact, tol)
    top = max(len(x), len(y))
    gaps = []
    cx = ccdf(x, 0)
    cy = ccdf(y, 0)
    for t in range(top + 1):
        gaps.append(cx - cy)
        cx -= x[t]
        cy -= y[t]
    worst = min(range(len(gaps)), key=lambda t: gaps[t])
    return DominanceReport(
        dominates=all(g >= -tol for g in gaps),
        equal=all(abs(g) <= tol for g in gaps),
        gaps=tuple(gaps),
        min_gap=gaps[worst],
        worst_threshold=worst,
        tol=tol,
    )


def support_lattice(d: Pmf, tol: float = 0) -> list[int]:
    """Arithmetic progression spanning the support with step = gcd of gaps."""
    support = [k for k, m in enumerate(d.masses) if m > tol]
    if len(support) <= 1:
        return support
    step = 0
    for a, b in zip(support, support[1:]):
        step = math.gcd(step, b - a)
    return list(range(support[0], support[-1] + 1, step))


def is_unimodal(d: Pmf, tol: float | None = None) -> bool:
    """Masses on the support lattice rise to a peak and then fall.

    Fixed-parity laws put zero mass on every other integer; those
    structural zeros are skipped by walking the lattice instead of
    ``0..n_max``.
    """
    tol = default_tol(d.exact, tol)
    return is_unimodal_sequence([d[k] for k in support_lattice(d, tol)], tol)


def is_unimodal_sequence(values: Sequence[Number], tol: float = 0) -> bool:
    """Plain unimodality of a finite sequence (no lattice restriction)."""
    falling = False
    for a, b in zip(values, values[1:]):
        if b < a - tol:
            falling = True
        elif b > a + tol and falling:
            return False
    return True
