from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixedparity.pmf import (
    InvalidMixtureError,
    InvalidPmfError,
    Pmf,
    allclose,
    ccdf,
    convolve,
    convolve_all,
    is_unimodal,
    is_unimodal_sequence,
    median_interval,
    mix,
    stochastically_dominates,
    support_lattice,
    to_scalar,
)
from oracles import dominates, medians

TOL = 1e-12


@st.composite
def rational_pmfs(draw, max_len=6):
    raw = draw(st.lists(st.integers(0, 20), min_size=1, max_size=max_len).filter(lambda xs: sum(xs) > 0))
    total = sum(raw)
    return Pmf([F(x, total) for x in raw])


@st.composite
def float_pmfs(draw, max_len=6):
    raw = draw(st.lists(st.floats(0, 1), min_size=1, max_size=max_len).filter(lambda xs: sum(xs) > 0.1))
    total = sum(raw)
    return Pmf([x / total for x in raw])


def test_validation():
    with pytest.raises(InvalidPmfError):
        Pmf([F(1, 2), F(1, 3)])
    with pytest.raises(InvalidPmfError):
        Pmf([F(3, 2), F(-1, 2)])
    with pytest.raises(InvalidPmfError):
        Pmf([0.5, 0.5 + 1e-9])
    with pytest.raises(InvalidPmfError):
        Pmf([])
    Pmf([0.5, 0.5 + 1e-14])


def test_float_to_rational_uses_decimal_repr():
    assert to_scalar(0.3, "rational") == F(3, 10)
    assert to_scalar(F(1, 3), "float") == pytest.approx(1 / 3)


def test_convolve_examples():
    x = Pmf([F(1, 5), F(3, 10), F(1, 2)])
    assert convolve(Pmf.point(0), x) == x
    assert allclose(convolve(Pmf.bernoulli(0.3), Pmf.bernoulli(0.3)), Pmf([0.49, 0.42, 0.09]), TOL)
    half = F(1, 2)
    assert convolve(Pmf.binomial(2, half), Pmf.binomial(1, half)) == Pmf([F(1, 8), F(3, 8), F(3, 8), F(1, 8)])


def test_mix_examples():
    x = Pmf([F(1, 4), F(3, 4)])
    assert mix([(1, x)]) == x
    assert mix([(F(1, 2), Pmf.point(0)), (F(1, 2), Pmf.point(2))]) == Pmf([F(1, 2), 0, F(1, 2)])
    with pytest.raises(InvalidMixtureError):
        mix([(F(1, 2), x), (F(1, 3), x)])
    with pytest.raises(InvalidMixtureError):
        mix([(F(3, 2), x), (F(-1, 2), x)])


def test_ccdf_and_median_examples():
    assert ccdf(Pmf.binomial(2, 0.3), 1) == pytest.approx(0.51, abs=TOL)
    assert median_interval(Pmf.point(5)) == (5, 5)
    assert median_interval(Pmf([F(1, 8), 0, F(6, 8), 0, F(1, 8)])) == (2, 2)
    assert median_interval(Pmf([F(1, 2), F(1, 2)])) == (0, 1)


def test_dominance_examples():
    x = Pmf([F(1, 4), F(1, 2), F(1, 4)])
    rep = stochastically_dominates(x, x)
    assert rep.dominates and rep.equal
    assert stochastically_dominates(Pmf.binomial(2, F(1, 2)), Pmf.binomial(2, F(3, 10))).dominates
    tri = Pmf([F(37, 100), 0, F(63, 100)])
    a3 = Pmf([F(49, 100), 0, F(51, 100)])
    rep = stochastically_dominates(tri, a3)
    assert rep.dominates and not rep.equal
    assert rep.gaps[2] == F(12, 100)
    assert not stochastically_dominates(a3, tri).dominates


def test_unimodal_examples():
    assert is_unimodal(Pmf.point(3))
    assert not is_unimodal(Pmf([0.4, 0.1, 0.5]))
    assert is_unimodal(Pmf([0, F(3, 4), F(1, 4)]))
    # structural parity zeros are skipped
    assert is_unimodal(Pmf([F(1, 8), 0, F(6, 8), 0, F(1, 8)]))
    assert support_lattice(Pmf([F(1, 8), 0, F(6, 8), 0, F(1, 8)])) == [0, 2, 4]
    assert not is_unimodal_sequence([1, 3, 2, 4])


def test_serialization_roundtrip():
    d = Pmf([0, F(1, 3), 0, F(2, 3)])
    assert d.to_dict() == {"offset": 1, "masses": ["1/3", "0", "2/3"]}
    assert Pmf.from_dict(d.to_dict()) == d
    f = Pmf([0.0, 0.25, 0.75])
    assert Pmf.from_dict(f.to_dict()) == f


@given(rational_pmfs(), rational_pmfs())
def test_convolve_commutes_exactly(a, b):
    assert convolve(a, b) == convolve(b, a)


@given(float_pmfs(), float_pmfs(), float_pmfs())
def test_convolve_associative_float(a, b, c):
    assert allclose(convolve(convolve(a, b), c), convolve(a, convolve(b, c)), TOL)


@given(float_pmfs(), float_pmfs())
def test_convolve_commutes_float(a, b):
    assert allclose(convolve(a, b), convolve(b, a), TOL)


@given(rational_pmfs(), rational_pmfs(), rational_pmfs())
def test_convolve_associative_exactly(a, b, c):
    assert convolve_all([a, b, c]) == convolve(a, convolve(b, c))


@given(st.lists(st.tuples(st.integers(1, 10), rational_pmfs()), min_size=1, max_size=4))
def test_mix_preserves_mass(parts):
    total = sum(w for w, _ in parts)
    out = mix([(F(w, total), d) for w, d in parts])
    assert sum(out.masses) == 1


@given(st.lists(st.tuples(st.floats(0.01, 1), float_pmfs()), min_size=1, max_size=4))
def test_mix_preserves_mass_float(parts):
    total = sum(w for w, _ in parts)
    out = mix([(w / total, d) for w, d in parts])
    assert abs(sum(out.masses) - 1) <= TOL


@given(rational_pmfs())
def test_dominance_reflexive(a):
    rep = stochastically_dominates(a, a)
    assert rep.dominates and rep.equal


@settings(max_examples=200)
@given(rational_pmfs(4), rational_pmfs(4), rational_pmfs(4))
def test_dominance_transitive_and_matches_oracle(a, b, c):
    ab = stochastically_dominates(a, b).dominates
    bc = stochastically_dominates(b, c).dominates
    assert ab == dominates(a.masses, b.masses)
    if ab and bc:
        assert stochastically_dominates(a, c).dominates


@given(rational_pmfs(7))
def test_median_interval_matches_definition(a):
    mus = medians(a.masses)
    lo, hi = median_interval(a)
    assert mus and (lo, hi) == (min(mus), max(mus))


@given(rational_pmfs(7))
def test_float_median_agrees_with_exact(a):
    lo, hi = median_interval(a)
    flo, fhi = median_interval(a.to_float())
    assert flo <= lo and hi <= fhi
