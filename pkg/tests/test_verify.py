from fractions import Fraction as F

import pytest

from fixedparity.verify import SWEEPS, SweepConfig, parse_grid, run_sweep


def test_parse_grid():
    assert parse_grid("0.1:0.5:0.1") == (F(1, 10), F(1, 5), F(3, 10), F(2, 5), F(1, 2))
    assert parse_grid("1/3,0.25") == (F(1, 3), F(1, 4))
    with pytest.raises(ValueError):
        parse_grid("0.1:0.5:0")


@pytest.mark.parametrize("name", sorted(SWEEPS))
def test_every_sweep_clean_small(name):
    cfg = SweepConfig(n_max=4, p_grid=parse_grid("0.1:0.5:0.2"))
    (res,) = run_sweep(name, cfg)
    assert res.checked > 0
    assert res.ok, res.violations[:3]


def test_float_backend_sweeps():
    cfg = SweepConfig(n_max=4, p_grid=parse_grid("0.15,0.35,0.5"), exact=False)
    for name in ("parity-split", "conditional-binomials", "orientation-dominance", "median-bound"):
        (res,) = run_sweep(name, cfg)
        assert res.ok, (name, res.violations[:3])


def test_unknown_sweep():
    with pytest.raises(KeyError):
        run_sweep("nope", SweepConfig())
