"""Shared builders and independent oracles for the test suite.

The oracles here deliberately avoid the library's bitmask plumbing: they
work on plain label sets / dicts so they stay an independent check of the
production code paths.
"""

from __future__ import annotations

import random

import pytest

from roughalg import (
    Subset,
    fixture_scenario,
    fixture_space,
    make_space,
    make_table,
    make_universe,
)


@pytest.fixture(scope="session")
def ex31():
    """Scenario, space and tables for the bundled worked examples."""
    s = fixture_scenario()
    return {
        "scenario": s,
        "universe": s.universes["U"],
        "space": fixture_space(s),
        "A": s.sets["A"].subset,
        "B": s.sets["B"].subset,
        "C": s.tables["C"].table,
        "TA": s.tables["TA"].table,
        "TB": s.tables["TB"].table,
    }


@pytest.fixture(scope="session")
def z4():
    u = make_universe(["0", "1", "2", "3"])
    rows = {(str(i), str(j)): str((i + j) % 4) for i in range(4) for j in range(4)}
    table = make_table(u, Subset.full(u), rows)
    space = make_space(u, [Subset.from_labels(u, ["0", "2"]),
                           Subset.from_labels(u, ["1", "3"])])
    return {"universe": u, "table": table, "space": space}


def naive_approx(blocks: list[set[str]], members: set[str]) -> tuple[set[str], set[str]]:
    """Lower/upper by literally unioning equivalence classes."""
    lower: set[str] = set()
    upper: set[str] = set()
    for block in blocks:
        if block <= members:
            lower |= block
        if block & members:
            upper |= block
    return lower, upper


def random_rgs(rng: random.Random, n: int) -> list[int]:
    a = [0]
    for _ in range(n - 1):
        a.append(rng.randint(0, max(a) + 1))
    return a


def blocks_from_rgs(universe, rgs: list[int]) -> list[Subset]:
    nblocks = max(rgs) + 1
    out = []
    for b in range(nblocks):
        out.append(Subset.from_indices(universe, [i for i, v in enumerate(rgs) if v == b]))
    return out


def table_dict(table) -> dict[tuple[str, str], str | None]:
    """Plain label-keyed dict of a table, for oracle-side recomputation."""
    labs = table.universe.labels
    out = {}
    for px, ix in enumerate(table.order):
        for py, iy in enumerate(table.order):
            v = table.cells[px * table.k + py]
            out[(labs[ix], labs[iy])] = None if v is None else labs[v]
    return out
