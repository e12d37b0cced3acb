from functools import lru_cache

import pytest

from gdeg.ccs import ccs
from gdeg.degree import basic_degree
from gdeg.groups import build_cyclic, build_dihedral, build_product
from gdeg.pipeline import dihedral_gamma, full_group, _signed

ACCEPTANCE_LINES: dict[int, str] = {}


@lru_cache(maxsize=None)
def dihedral_env(n: int):
    """(G, table, pairs, plus degrees, minus degrees) for G = (D1 x Z2) x D_n."""
    gamma, irreps = dihedral_gamma(n)
    G = full_group(gamma)
    table = ccs(G)
    _, pairs = _signed(gamma, irreps, G)
    plus = [basic_degree(p, table) for p, _ in pairs]
    minus = [basic_degree(m, table) for _, m in pairs]
    return G, table, pairs, plus, minus


@lru_cache(maxsize=None)
def small_groups():
    klein = build_product(build_dihedral(1), build_cyclic(2))
    return {
        "Z2": build_cyclic(2),
        "D1": build_dihedral(1),
        "D3": build_dihedral(3),
        "D5": build_dihedral(5),
        "D1xZ2": klein,
        "D1xZ2xZ1": build_product(klein, build_cyclic(1)),
    }


@pytest.fixture(scope="session")
def d3():
    return dihedral_env(3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for i in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[i])
