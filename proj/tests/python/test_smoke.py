"""Smoke tests for the python module against known exact values."""

import json
import math
import os
import sys

import pytest

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(os.path.dirname(HERE))

# pick up the freshly built extension and the package sources when running
# from the repository
sys.path.insert(0, os.path.join(ROOT, "python"))
for cand in (os.environ.get("MFT_PYMODULE_DIR"), os.path.join(ROOT, "build")):
    if cand and os.path.isdir(cand):
        sys.path.insert(0, cand)

mft = pytest.importorskip("mft")


def test_free_energy_genus2_exact():
    f = mft.free_energy(2)
    assert f["genus"] == 2
    coeffs = {tuple(t["e"]): t["c"] for t in f["poly"]["terms"]}
    assert coeffs[(-5, 3)] == "-21/160"
    assert coeffs[(-4, 1, 1)] == "29/128"
    assert coeffs[(-3, 0, 0, 1)] == "-35/384"


def test_intersection_numbers_genus3():
    table = mft.intersection_numbers(3)
    assert table["k2=6"] == "1225/144"
    assert table["k7=1"] == "1/82944"
    assert len(table) == 11


def test_correlation_seed():
    g11 = mft.correlation(1, 1)
    assert g11["body"]["lambda_exp"] == 3
    assert mft.correlation(0, 2)["closed_form"].startswith("(2 lambda)^2")


def test_loop_equation_and_virasoro():
    assert mft.loop_equation_zero(1, 2)
    rep = mft.virasoro(2, order=3)
    assert rep["all_zero"]
    assert rep["determined_orders"] == [0, 1, 2]


def test_catalan():
    assert mft.catalan_count(3) == 7
    assert mft.catalan_count(4) == 30
    monos = mft.expand_planar(4)
    assert len(monos) == 2
    assert sorted(m["sign"] for m in monos) == [-1, 1]
    assert mft.catalan_verify(8, seed=11)


def test_cubic():
    assert mft.cubic_solve_c(2, 2, 0.0) == pytest.approx(0.0, abs=1e-14)
    series = mft.cubic_c_series(2, 2, 2)
    assert series[1] == pytest.approx(-4 * math.log(2), abs=1e-12)
    assert mft.cubic_lambda_critical(2, 2) == pytest.approx(0.4907, abs=5e-4)
    assert mft.cubic_one_point(2, 2, 0.05, 0.0) == pytest.approx(0.0, abs=1e-11)


def test_quartic_single_eigenvalue():
    out = mft.quartic_two_point([0.5], [4.0], 4.0, 1.0, 0.9, 0.4)
    disc = math.sqrt(1.0 + 12.0)
    eps = (2.0 + disc) / 6.0
    hat = -(1.0 + 2.0 * disc) / 6.0
    expect = (1.0 - (eps + hat) ** 2 / ((0.9 - hat) * (0.4 - hat))) / 1.3
    assert out["two_point"] == pytest.approx(expect, rel=1e-11)
    assert out["two_point_rfe"] == pytest.approx(expect, rel=1e-11)
    assert out["jzz_residual"] < 1e-10
    assert out["sde_residual"] < 1e-9


def test_moyal4():
    s = mft.moyal4_summary(0.1)
    assert s["alpha"] == pytest.approx(math.asin(0.1 * math.pi) / math.pi, abs=1e-15)
    assert s["dimension"] == pytest.approx(4 - 2 * s["alpha"], abs=1e-12)
    assert mft.moyal4_fredholm_residual(0.1, 1.0) < 1e-8
    assert mft.moyal4_measure(0.0, 2.5) == 2.5
    assert mft.moyal4_g2(0.0, 0.0, 0.2) == 1.0


def test_special_functions():
    assert mft.dilog(1.0) == pytest.approx(math.pi**2 / 6, rel=1e-14)
    assert mft.hyp2f1(0.3, 0.7, 2.0, 0.0) == 1.0
    with pytest.raises(mft.DomainError):
        mft.dilog(1.5)
