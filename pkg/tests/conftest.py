from __future__ import annotations

import pytest

from paleylift import css, embedding, fields, paley, voltage


@pytest.fixture(scope="session")
def gf9():
    """GF(9) with the modulus x^2 + x + 2 used by the reference construction."""
    return fields.make_field(3, 2, (2, 1, 1))


@pytest.fixture(scope="session")
def paley9(gf9):
    return paley.build_paley(gf9)


@pytest.fixture(scope="session")
def lift3():
    return voltage.lift(voltage.build_voltage_graph(3))


@pytest.fixture(scope="session")
def paley9_rotation(paley9):
    """Self-dual genus-1 rotation system for Paley-9 (searched once per session)."""
    rs = embedding.search_self_dual_embedding(paley9.graph, target_genus=1)
    assert rs is not None
    return rs


@pytest.fixture(scope="session")
def lift3_code(lift3):
    """The [[60,30]] algebraic-mode code (built once per session)."""
    return css.build_code_algebraic(lift3, target_k=30, family="voltage", kprime=1)
