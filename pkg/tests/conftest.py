"""Shared fixtures: the expensive tables are built once per session."""

from __future__ import annotations

from fractions import Fraction

import pytest

from kdvtau.grassmann import (
    AffineTable,
    GrassmannPoint,
    build_G,
    normalize_point,
    wk_G,
    z_table_direct,
)
from kdvtau.series import LaurentSeries
from kdvtau.tau import TauSeries, free_energy, tau_truncated
from kdvtau.zhou import zhou_affine_table


@pytest.fixture(scope="session")
def wk_G41():
    return wk_G(41)


@pytest.fixture(scope="session")
def wk_ztable20(wk_G41):
    return z_table_direct(wk_G41, 20, 20)


@pytest.fixture(scope="session")
def wk_affine31(wk_G41) -> AffineTable:
    return z_table_direct(wk_G41, 15, 15).to_affine_table()


@pytest.fixture(scope="session")
def zhou_affine30() -> AffineTable:
    return zhou_affine_table(30, 30)


@pytest.fixture(scope="session")
def wk_tau12(wk_affine31) -> TauSeries:
    return tau_truncated(wk_affine31, 12)


@pytest.fixture(scope="session")
def wk_F12(wk_tau12):
    return free_energy(wk_tau12)


def example_point(c: Fraction) -> GrassmannPoint:
    """The worked-example point: a = 1, b = 1 + c lam^-3 (exact series)."""
    a = LaurentSeries.from_dict({0: 1}, None)
    b = LaurentSeries.from_dict({0: 1, -3: c}, None)
    return normalize_point(GrassmannPoint(a, b))


def example_table(c: Fraction, size: int = 12) -> AffineTable:
    p = example_point(c)
    K, L = size // 2, size // 2
    return z_table_direct(build_G(p, K + L + 1), K, L).to_affine_table("custom")


@pytest.fixture(scope="session")
def example_tau_c1() -> TauSeries:
    return tau_truncated(example_table(Fraction(1)), 12)
