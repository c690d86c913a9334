"""Shared fixtures: the algebras and structures exercised across the suite."""

from fractions import Fraction

import pytest

from bornlab import LieAlgebra, catalog


@pytest.fixture(scope="session")
def nil3():
    return LieAlgebra(4, {(1, 2): {3: 1}})


@pytest.fixture(scope="session")
def h4_algebra():
    return LieAlgebra(6, {(1, 2): {5: -1}, (1, 4): {6: -1}, (2, 3): {6: -1}})


@pytest.fixture(scope="session")
def h9_algebra():
    return LieAlgebra(6, {(1, 2): {5: -1}, (1, 4): {6: -1}, (2, 5): {6: -1}})


@pytest.fixture(scope="session")
def catalog_models():
    """All catalog entries that carry model data."""
    out = {}
    for name, _ in catalog.list_entries():
        entry = catalog.get_entry(name)
        if entry.model is not None:
            out[name] = entry
    return out


@pytest.fixture(scope="session")
def catalog_structures(catalog_models):
    """Materialized (borns, kunneths) per entry, built once for the session."""
    from bornlab.model import _Materialized

    out = {}
    for name, entry in catalog_models.items():
        mat = _Materialized(entry.model)
        out[name] = {
            "borns": [b for _, b in mat.built_borns()],
            "kunneths": [k for _, k in mat.built_kunneths()],
        }
    return out


def rational_grid():
    """Small exact scalars used by randomized sweeps."""
    return [Fraction(n, d) for n in range(-3, 4) for d in (1, 2, 3)]
