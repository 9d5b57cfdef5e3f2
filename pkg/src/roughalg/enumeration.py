"""Exhaustive generators and the constraint-driven searcher.

Everything streams in one canonical order (partition restricted-growth
string, then carrier combination, then table cells row-major, then mapping
graph), so searches are reproducible and the space can be split by index
ranges across workers without changing the output.

Size caps: universes up to 6 elements, table carriers up to 4.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

from .approx import (
    ApproxSpace,
    Partition,
    Subset,
    Universe,
    approximate,
    check_approx_law,
    make_universe,
    space_from_partition,
)
from .algebra import (
    OpTable,
    check_product_approx_laws,
    evaluate_law,
    is_congruence,
)
from .errors import EmptyCarrierError, EmptySetError, SizeOutOfRangeError
from .morphisms import Mapping, verify_composition_props
from .rough_structures import check_rough_anti_semigroup

MAX_UNIVERSE = 6
MAX_TABLE_CARRIER = 4

_BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]


def bell_number(n: int) -> int:
    return _BELL[n]


def canonical_universe(n: int) -> Universe:
    return make_universe([str(i) for i in range(1, n + 1)])


def rgs_strings(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n in lexicographic order."""
    a = [0] * n
    while True:
        yield tuple(a)
        j = n - 1
        while j > 0 and a[j] == max(a[:j]) + 1:
            a[j] = 0
            j -= 1
        if j == 0:
            return
        a[j] += 1


def partition_from_rgs(universe: Universe, rgs: tuple[int, ...]) -> Partition:
    nblocks = max(rgs) + 1
    masks = [0] * nblocks
    for i, b in enumerate(rgs):
        masks[b] |= 1 << i
    return Partition(universe, tuple(Subset(universe, m) for m in masks))


def enum_partitions(n: int, universe: Optional[Universe] = None) -> Iterator[Partition]:
    """Every set partition of an n-element universe, once, in RGS order."""
    if not 1 <= n <= MAX_UNIVERSE:
        raise SizeOutOfRangeError(f"partition enumeration supports 1..{MAX_UNIVERSE}, got {n}")
    if universe is None:
        universe = canonical_universe(n)
    elif universe.size != n:
        raise SizeOutOfRangeError("universe size does not match n")
    for rgs in rgs_strings(n):
        yield partition_from_rgs(universe, rgs)


def enum_spaces(n: int, universe: Optional[Universe] = None) -> Iterator[ApproxSpace]:
    for p in enum_partitions(n, universe):
        yield space_from_partition(p)


def _table_values(universe: Universe, allow_indet: bool) -> list[Optional[int]]:
    vals: list[Optional[int]] = list(range(universe.size))
    if allow_indet:
        vals.append(None)
    return vals


def enum_tables(universe: Universe, carrier: Subset, allow_indet: bool = False) -> Iterator[OpTable]:
    """All (|U| + indet)^(k*k) tables on the carrier, row-major lexicographic."""
    if not carrier:
        raise EmptyCarrierError("carrier is empty")
    if universe.size > MAX_UNIVERSE or len(carrier) > MAX_TABLE_CARRIER:
        raise SizeOutOfRangeError(
            f"table enumeration supports universes up to {MAX_UNIVERSE} "
            f"and carriers up to {MAX_TABLE_CARRIER}"
        )
    k = len(carrier)
    for cells in itertools.product(_table_values(universe, allow_indet), repeat=k * k):
        yield OpTable.build(universe, carrier, cells)


def _table_at(universe: Universe, carrier: Subset, allow_indet: bool, index: int) -> OpTable:
    """Decode the index-th table of the enum_tables stream."""
    vals = _table_values(universe, allow_indet)
    v = len(vals)
    k = len(carrier)
    digits = [0] * (k * k)
    for slot in range(k * k - 1, -1, -1):
        index, d = divmod(index, v)
        digits[slot] = d
    return OpTable.build(universe, carrier, tuple(vals[d] for d in digits))


def enum_mappings(domain: Subset, codomain: Subset, surjective_only: bool = False) -> Iterator[Mapping]:
    """All maps domain -> codomain in graph-lexicographic order."""
    if not domain or not codomain:
        raise EmptySetError("mapping enumeration needs nonempty domain and codomain")
    cod = tuple(codomain)
    need = set(cod)
    for graph in itertools.product(cod, repeat=len(domain)):
        if surjective_only and set(graph) != need:
            continue
        yield Mapping(domain, codomain.universe, graph, codomain)


# searching


@dataclass(frozen=True)
class SearchSpec:
    universe_size: int
    carrier_size: int
    allow_indet: bool = False
    law_constraints: tuple[tuple[str, str], ...] = ()
    structural_constraints: tuple[str, ...] = ()
    limit: int = 1
    budget: int = 100_000

    def __post_init__(self) -> None:
        if not 1 <= self.universe_size <= MAX_UNIVERSE:
            raise SizeOutOfRangeError(f"universe size must be 1..{MAX_UNIVERSE}")
        if not 1 <= self.carrier_size <= min(self.universe_size, MAX_TABLE_CARRIER):
            raise SizeOutOfRangeError(
                f"carrier size must be 1..min(universe size, {MAX_TABLE_CARRIER})"
            )
        if self.limit < 1 or self.budget < 1:
            raise SizeOutOfRangeError("limit and budget must be at least 1")


def _struct_congruence(space: ApproxSpace, table: OpTable) -> bool:
    if table.carrier.mask != table.universe.full_mask():
        return False
    return is_congruence(space, table).holds


STRUCTURAL_CONSTRAINTS = {
    "rough-carrier": lambda space, table: approximate(space, table.carrier).is_rough,
    "exact-carrier": lambda space, table: not approximate(space, table.carrier).is_rough,
    "rough-anti-semigroup": lambda space, table: check_rough_anti_semigroup(space, table).overall,
    "congruence": _struct_congruence,
}


@dataclass(frozen=True)
class SearchHit:
    index: int
    space: ApproxSpace
    table: OpTable


@dataclass(frozen=True)
class SearchOutcome:
    hits: tuple[SearchHit, ...]
    examined: int
    total: int
    limit_reached: bool
    budget_exhausted: bool


def _search_fixture(spec: SearchSpec):
    universe = canonical_universe(spec.universe_size)
    spaces = [space_from_partition(p) for p in enum_partitions(spec.universe_size, universe)]
    carriers = [
        Subset.from_indices(universe, combo)
        for combo in itertools.combinations(range(universe.size), spec.carrier_size)
    ]
    ntables = (spec.universe_size + (1 if spec.allow_indet else 0)) ** (spec.carrier_size ** 2)
    return universe, spaces, carriers, ntables


def _candidate_matches(spec: SearchSpec, space: ApproxSpace, table: OpTable) -> bool:
    for law, status in spec.law_constraints:
        if evaluate_law(table, law).status != status:
            return False
    for name in spec.structural_constraints:
        if not STRUCTURAL_CONSTRAINTS[name](space, table):
            return False
    return True


def _search_range(spec: SearchSpec, start: int, end: int) -> list[SearchHit]:
    universe, spaces, carriers, ntables = _search_fixture(spec)
    per_space = len(carriers) * ntables
    hits = []
    for idx in range(start, end):
        sidx, rest = divmod(idx, per_space)
        cidx, tidx = divmod(rest, ntables)
        table = _table_at(universe, carriers[cidx], spec.allow_indet, tidx)
        if _candidate_matches(spec, spaces[sidx], table):
            hits.append(SearchHit(idx, spaces[sidx], table))
    return hits


def search(spec: SearchSpec, jobs: int = 1) -> SearchOutcome:
    """Scan the candidate space in canonical order, up to limit and budget.

    Output is independent of the worker count.
    """
    universe, spaces, carriers, ntables = _search_fixture(spec)
    total = len(spaces) * len(carriers) * ntables
    end = min(total, spec.budget)
    hits: list[SearchHit] = []
    if jobs <= 1:
        per_space = len(carriers) * ntables
        for idx in range(end):
            sidx, rest = divmod(idx, per_space)
            cidx, tidx = divmod(rest, ntables)
            table = _table_at(universe, carriers[cidx], spec.allow_indet, tidx)
            if _candidate_matches(spec, spaces[sidx], table):
                hits.append(SearchHit(idx, spaces[sidx], table))
                if len(hits) == spec.limit:
                    break
    else:
        chunk = max(1, -(-end // jobs))
        ranges = [(s, min(s + chunk, end)) for s in range(0, end, chunk)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_search_range, itertools.repeat(spec),
                                 [r[0] for r in ranges], [r[1] for r in ranges]):
                hits.extend(part)
        hits.sort(key=lambda h: h.index)
        hits = hits[: spec.limit]
    limit_reached = len(hits) == spec.limit
    if limit_reached:
        examined = hits[-1].index + 1
    else:
        examined = end
    return SearchOutcome(
        hits=tuple(hits),
        examined=examined,
        total=total,
        limit_reached=limit_reached,
        budget_exhausted=not limit_reached and end == spec.budget and spec.budget < total,
    )


# counterexample mining and exhaustive suites

COUNTEREXAMPLE_LAWS = (
    "L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9", "P22", "P31", "P41", "P42",
)


@dataclass(frozen=True)
class FindOutcome:
    law: str
    status: str  # found | none | budget
    witness: dict | None
    examined: int


def _subset_lists(universe: Universe):
    return [Subset(universe, m) for m in range(1 << universe.size)]


def _space_descr(space: ApproxSpace) -> dict:
    return {
        "universe": list(space.universe.labels),
        "partition": [list(b.labels()) for b in space.partition.blocks],
    }


def _l_or_p31_fails(law: str, space, x, y) -> tuple[bool, str | None]:
    if law == "P31":
        ua = approximate(space, x).upper
        ub = approximate(space, y).upper
        uab = approximate(space, x & y).upper
        bad = (ua & ub) - uab
        return bool(bad), (bad.labels()[0] if bad else None)
    chk = check_approx_law(space, law, x, y)
    return not chk.holds, chk.witness


def find_counterexample(law: str, bounds: SearchSpec) -> FindOutcome:
    """Smallest-by-canonical-order counterexample within bounds, if any.

    BudgetExhausted is a status, never an error.
    """
    if law not in COUNTEREXAMPLE_LAWS:
        raise ValueError(f"no registered relation named {law!r}")
    examined = 0
    budget = bounds.budget

    if law in ("P41", "P42"):
        report = composition_suite("p41" if law == "P41" else "p42",
                                   bounds.universe_size, bounds.carrier_size,
                                   bounds.allow_indet)
        if report["counterexamples"]:
            return FindOutcome(law, "found", report["counterexamples"][0], report["instances"])
        return FindOutcome(law, "none", None, report["instances"])

    for n in range(1, bounds.universe_size + 1):
        universe = canonical_universe(n)
        subsets = _subset_lists(universe)
        for space in enum_spaces(n, universe):
            if law == "P22":
                carrier = Subset.full(universe)
                for table in enum_tables(universe, carrier, allow_indet=False):
                    for x in subsets:
                        if not x:
                            continue
                        for y in subsets:
                            if not y:
                                continue
                            examined += 1
                            if examined > budget:
                                return FindOutcome(law, "budget", None, examined - 1)
                            rep = check_product_approx_laws(space, table, x, y)
                            bad = [r.relation for r in rep.relations[:2] if not r.holds]
                            if bad:
                                w = _space_descr(space)
                                w.update({
                                    "table": [[_cell_label(universe, v) for v in row]
                                              for row in _rows(table)],
                                    "X": list(x.labels()),
                                    "Y": list(y.labels()),
                                    "failed": bad,
                                    "congruence": rep.congruence.holds,
                                })
                                return FindOutcome(law, "found", w, examined)
            else:
                for x in subsets:
                    for y in subsets:
                        examined += 1
                        if examined > budget:
                            return FindOutcome(law, "budget", None, examined - 1)
                        fails, wit = _l_or_p31_fails(law, space, x, y)
                        if fails:
                            w = _space_descr(space)
                            w.update({"A": list(x.labels()), "B": list(y.labels()),
                                      "witness": wit})
                            return FindOutcome(law, "found", w, examined)
    return FindOutcome(law, "none", None, examined)


def _rows(table: OpTable) -> list[list[Optional[int]]]:
    k = table.k
    return [[table.cells[r * k + c] for c in range(k)] for r in range(k)]


def _cell_label(universe: Universe, v: Optional[int]) -> str:
    return "?" if v is None else universe.labels[v]


# suite drivers behind the CLI laws command


@dataclass(frozen=True)
class SuiteResult:
    law: str
    instances: int
    failures: int
    first_failure: dict | None
    extra: tuple[tuple[str, int], ...] = ()


def _approx_tasks(max_n: int) -> list[tuple[int, int]]:
    return [(n, p) for n in range(1, max_n + 1) for p in range(bell_number(n))]


def _approx_chunk(law: str, tasks: list[tuple[int, int]]) -> tuple[int, int, dict | None]:
    instances = failures = 0
    first = None
    by_n: dict[int, list] = {}
    for n, pidx in tasks:
        if n not in by_n:
            universe = canonical_universe(n)
            by_n[n] = [universe, list(enum_spaces(n, universe)), _subset_lists(universe)]
        universe, spaces, subsets = by_n[n]
        space = spaces[pidx]
        for x in subsets:
            for y in subsets:
                instances += 1
                fails, wit = _l_or_p31_fails(law, space, x, y)
                if fails:
                    failures += 1
                    if first is None:
                        first = _space_descr(space)
                        first.update({"A": list(x.labels()), "B": list(y.labels()),
                                      "witness": wit})
    return instances, failures, first


def approx_law_suite(law: str, max_n: int, jobs: int = 1) -> SuiteResult:
    """Exhaustive sweep of one of L1..L9 or P31 over all spaces with n <= max_n."""
    if not 1 <= max_n <= MAX_UNIVERSE:
        raise SizeOutOfRangeError(f"max_n must be 1..{MAX_UNIVERSE}")
    tasks = _approx_tasks(max_n)
    if jobs <= 1:
        instances, failures, first = _approx_chunk(law, tasks)
    else:
        chunk = max(1, -(-len(tasks) // jobs))
        parts = [tasks[i:i + chunk] for i in range(0, len(tasks), chunk)]
        instances = failures = 0
        first = None
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i, f, w in pool.map(_approx_chunk, itertools.repeat(law), parts):
                instances += i
                failures += f
                if first is None and w is not None:
                    first = w
    return SuiteResult(law, instances, failures, first)


def p22_suite(max_n: int) -> SuiteResult:
    """Product-approximation relations over every total table and partition.

    Counts failures of the upper-product equality overall and restricted to
    congruent instances, where inclusion (a) is a theorem.
    """
    instances = failures = 0
    first = None
    cong_instances = cong_a_failures = cong_eq_failures = 0
    for n in range(1, max_n + 1):
        universe = canonical_universe(n)
        subsets = [s for s in _subset_lists(universe) if s]
        carrier = Subset.full(universe)
        for space in enum_spaces(n, universe):
            for table in enum_tables(universe, carrier, allow_indet=False):
                cong = is_congruence(space, table).holds
                for x in subsets:
                    for y in subsets:
                        instances += 1
                        rep = check_product_approx_laws(space, table, x, y)
                        a_ok = rep.relation("a").holds
                        eq_ok = a_ok and rep.relation("b").holds
                        if cong:
                            cong_instances += 1
                            cong_a_failures += 0 if a_ok else 1
                            cong_eq_failures += 0 if eq_ok else 1
                        if not eq_ok:
                            failures += 1
                            if first is None:
                                first = _space_descr(space)
                                first.update({
                                    "table": [[_cell_label(universe, v) for v in row]
                                              for row in _rows(table)],
                                    "X": list(x.labels()),
                                    "Y": list(y.labels()),
                                    "congruence": cong,
                                })
    return SuiteResult(
        "P22", instances, failures, first,
        extra=(
            ("congruent_instances", cong_instances),
            ("congruent_inclusion_failures", cong_a_failures),
            ("congruent_equality_failures", cong_eq_failures),
        ),
    )


def composition_suite(prop: str, universe_size: int = 2, carrier_size: int = 2,
                      allow_indet: bool = False) -> dict:
    """Composite-kind check over every table and conforming mapping pair."""
    universe = canonical_universe(universe_size)
    checked = skipped = tables = 0
    counterexamples: list[dict] = []
    for combo in itertools.combinations(range(universe.size), carrier_size):
        carrier = Subset.from_indices(universe, combo)
        for table in enum_tables(universe, carrier, allow_indet):
            tables += 1
            maps = list(enum_mappings(carrier, carrier))
            pairs = [(a, b) for a in maps for b in maps]
            report = verify_composition_props(table, pairs, prop)
            checked += report.checked
            skipped += report.skipped
            for ce in report.counterexamples:
                counterexamples.append({
                    "table": [[_cell_label(universe, v) for v in row] for row in _rows(table)],
                    "phi1": [list(p) for p in ce.phi1.pairs()],
                    "phi2": [list(p) for p in ce.phi2.pairs()],
                    "pair": list(ce.pair),
                })
    return {
        "prop": prop,
        "tables": tables,
        "instances": checked,
        "skipped": skipped,
        "counterexamples": counterexamples,
    }


def composition_suite_result(prop: str) -> SuiteResult:
    rep = composition_suite(prop)
    first = rep["counterexamples"][0] if rep["counterexamples"] else None
    return SuiteResult(
        "P41" if prop == "p41" else "P42",
        rep["instances"],
        len(rep["counterexamples"]),
        first,
        extra=(("tables", rep["tables"]), ("skipped_pairs", rep["skipped"])),
    )
