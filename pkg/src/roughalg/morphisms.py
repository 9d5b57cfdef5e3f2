"""Finite mappings between carriers and the morphism checkers.

Four kinds are distinguished.  `hom` preserves products, `anti-hom` must
differ from the preserved product on every resolvable pair, `rough-hom`
and `rough-anti-hom` are surjections between upper approximations that
preserve resp. reverse products.  Tables are partial, so a pair counts
indeterminate when either side of the kind's equation cannot be resolved;
indeterminate pairs never falsify but are always reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .approx import ApproxSpace, Subset, Universe, approximate
from .algebra import INDET, OpTable, local_neutrals
from .errors import (
    CarrierMismatchError,
    DomainMismatchError,
    DomainNotUpperError,
    DuplicatePairError,
    MissingPairError,
    UnknownCodomainLabelError,
    UnknownElementError,
)

MORPHISM_KINDS = ("hom", "anti-hom", "rough-hom", "rough-anti-hom")


@dataclass(frozen=True)
class Mapping:
    """Total map from a domain subset into a codomain universe.

    `graph[i]` is the codomain index of the i-th domain element in universe
    order; `target` is the intended codomain subset for surjectivity checks.
    """

    domain: Subset
    codomain: Universe
    graph: tuple[int, ...]
    target: Subset

    def apply_index(self, ix: int) -> int:
        order = tuple(self.domain)
        return self.graph[order.index(ix)]

    def apply(self, x: str) -> str:
        return self.codomain.labels[self.apply_index(self.domain.universe.index(x))]

    def image(self) -> Subset:
        return Subset.from_indices(self.codomain, self.graph)

    def is_surjective(self) -> bool:
        return self.target.issubset(self.image())

    def pairs(self) -> tuple[tuple[str, str], ...]:
        dom = tuple(self.domain)
        return tuple(
            (self.domain.universe.labels[ix], self.codomain.labels[self.graph[p]])
            for p, ix in enumerate(dom)
        )

    def __repr__(self) -> str:
        body = " ".join(f"{a}->{b}" for a, b in self.pairs())
        return f"Mapping({body})"


def make_mapping(
    domain: Subset,
    codomain: Universe,
    pairs: Iterable[tuple[str, str]],
    target: Optional[Subset] = None,
) -> Mapping:
    """Build a mapping from (source, image) label pairs covering the domain.

    The target defaults to the computed image.
    """
    order = tuple(domain)
    slot = {ix: p for p, ix in enumerate(order)}
    graph: list[Optional[int]] = [None] * len(order)
    for a, b in pairs:
        ia = domain.universe.index(a)
        if ia not in slot:
            raise UnknownElementError(f"{a!r} not in the mapping domain")
        if graph[slot[ia]] is not None:
            raise DuplicatePairError(f"two images given for {a!r}")
        if b not in codomain:
            raise UnknownCodomainLabelError(f"image {b!r} not in the codomain universe")
        graph[slot[ia]] = codomain.index(b)
    if any(g is None for g in graph):
        missing = domain.universe.labels[order[graph.index(None)]]
        raise MissingPairError(f"no image for {missing!r}")
    m = Mapping(domain, codomain, tuple(graph), Subset.empty(codomain))
    if target is None:
        target = m.image()
    elif target.universe != codomain:
        raise UnknownCodomainLabelError("target subset not over the codomain universe")
    return Mapping(domain, codomain, tuple(graph), target)


def neutral_pool(table: OpTable) -> Subset:
    """Every element that is a local neutral for at least one carrier element."""
    pool = Subset.empty(table.universe)
    for i in table.carrier:
        pool = pool | local_neutrals(table, table.universe.labels[i])
    return pool


def kernel(phi: Mapping, table_b: OpTable) -> Subset:
    """Domain elements mapped into the neutral pool of the codomain table."""
    if phi.codomain != table_b.universe:
        raise CarrierMismatchError("mapping codomain is not the table's universe")
    if not phi.image().issubset(table_b.carrier):
        raise CarrierMismatchError("mapping values leave the table's carrier")
    return _kernel_tolerant(phi, table_b)


def _kernel_tolerant(phi: Mapping, table_b: OpTable) -> Subset:
    pool = neutral_pool(table_b)
    dom = tuple(phi.domain)
    return Subset.from_indices(
        phi.domain.universe,
        (ix for p, ix in enumerate(dom) if pool.contains_index(phi.graph[p])),
    )


@dataclass(frozen=True)
class PairCounts:
    preserved: int       # phi(x*y) = phi(x) o phi(y), both sides resolvable
    reversed: int        # phi(x*y) = phi(y) o phi(x), both sides resolvable
    violated: int        # resolvable pairs breaking the checked kind's equation
    indeterminate: int   # pairs unresolvable for the checked kind


@dataclass(frozen=True)
class MorphismReport:
    kind: str
    counts: PairCounts
    surjective: bool
    kernel: Subset
    image: Subset
    overall: bool
    first_violation: tuple[str, str] | None = None


def _pair_scan(phi: Mapping, table_a: OpTable, table_b: OpTable):
    """Yield per ordered domain pair: (x, y, left, fwd, rev).

    left  = phi(x*y) as a codomain index, or None when unresolvable;
    fwd   = phi(x) o phi(y); rev = phi(y) o phi(x); None when unresolvable.
    """
    dom = tuple(phi.domain)
    val = dict(zip(dom, phi.graph))
    ua = table_a.universe

    def bprod(i: int, j: int) -> Optional[int]:
        if table_b.pos[i] >= 0 and table_b.pos[j] >= 0:
            v = table_b.value_at(table_b.pos[i], table_b.pos[j])
            return None if v is INDET else v
        return None

    for ix in dom:
        for iy in dom:
            left = None
            if table_a.pos[ix] >= 0 and table_a.pos[iy] >= 0:
                t = table_a.value_at(table_a.pos[ix], table_a.pos[iy])
                if t is not INDET and t in val:
                    left = val[t]
            fx, fy = val[ix], val[iy]
            yield ua.labels[ix], ua.labels[iy], left, bprod(fx, fy), bprod(fy, fx)


def _check(phi: Mapping, table_a: OpTable, table_b: OpTable, kind: str) -> MorphismReport:
    preserved = reverse = violated = indet = 0
    first = None
    for x, y, left, fwd, rev in _pair_scan(phi, table_a, table_b):
        if left is not None and fwd is not None and left == fwd:
            preserved += 1
        if left is not None and rev is not None and left == rev:
            reverse += 1
        side = rev if kind == "rough-anti-hom" else fwd
        if left is None or side is None:
            indet += 1
            continue
        if kind == "anti-hom":
            bad = left == side
        else:
            bad = left != side
        if bad:
            violated += 1
            if first is None:
                first = (x, y)
    counts = PairCounts(preserved, reverse, violated, indet)
    surjective = phi.is_surjective()
    overall = violated == 0 and (surjective or kind in ("hom", "anti-hom"))
    return MorphismReport(kind, counts, surjective, _kernel_tolerant(phi, table_b),
                          phi.image(), overall, first)


def check_anti_group_hom(phi: Mapping, table_c: OpTable, table_b: OpTable) -> MorphismReport:
    """phi(x*y) must differ from phi(x) o phi(y) on every resolvable pair."""
    _require_endpoints(phi, table_c, table_b)
    return _check(phi, table_c, table_b, "anti-hom")


def check_hom(phi: Mapping, table_c: OpTable, table_b: OpTable) -> MorphismReport:
    """Classical preservation on every resolvable pair."""
    _require_endpoints(phi, table_c, table_b)
    return _check(phi, table_c, table_b, "hom")


def _require_endpoints(phi: Mapping, table_c: OpTable, table_b: OpTable) -> None:
    if phi.domain.universe != table_c.universe or phi.codomain != table_b.universe:
        raise CarrierMismatchError("mapping endpoints do not match the tables' universes")
    if not phi.domain.issubset(table_c.carrier):
        raise CarrierMismatchError("mapping domain leaves the source carrier")
    if not phi.image().issubset(table_b.carrier):
        raise CarrierMismatchError("mapping values leave the target carrier")


def check_rough_hom(
    space_a: ApproxSpace,
    space_b: ApproxSpace,
    phi: Mapping,
    table_a: OpTable,
    table_b: OpTable,
    kind: str = "rough-hom",
) -> MorphismReport:
    """Surjection upper(A) -> upper(B) preserving (or reversing) products."""
    if kind not in ("rough-hom", "rough-anti-hom"):
        raise ValueError(f"kind must be rough-hom or rough-anti-hom, got {kind!r}")
    if phi.domain.universe != table_a.universe or phi.codomain != table_b.universe:
        raise CarrierMismatchError("mapping endpoints do not match the tables' universes")
    if space_a.universe != table_a.universe or space_b.universe != table_b.universe:
        raise CarrierMismatchError("spaces do not match the tables' universes")
    if phi.domain != approximate(space_a, table_a.carrier).upper:
        raise DomainNotUpperError("mapping domain must equal upper(source carrier)")
    if phi.target != approximate(space_b, table_b.carrier).upper:
        raise DomainNotUpperError("mapping target must equal upper(target carrier)")
    return _check(phi, table_a, table_b, kind)


def compose(phi1: Mapping, phi2: Mapping) -> Mapping:
    """(phi1 phi2)(x) = phi1(phi2(x))."""
    if phi2.codomain != phi1.domain.universe:
        raise DomainMismatchError("inner codomain is not the outer domain's universe")
    if not phi2.image().issubset(phi1.domain):
        raise DomainMismatchError("image of the inner map leaves the outer domain")
    outer = dict(zip(tuple(phi1.domain), phi1.graph))
    graph = tuple(outer[v] for v in phi2.graph)
    return Mapping(phi2.domain, phi1.codomain, graph, phi1.target)


def preserves_all(phi: Mapping, table_a: OpTable, table_b: OpTable) -> bool:
    """No resolvable pair breaks phi(x*y) = phi(x) o phi(y)."""
    return _check(phi, table_a, table_b, "hom").counts.violated == 0


def reverses_all(phi: Mapping, table_a: OpTable, table_b: OpTable) -> bool:
    """No resolvable pair breaks phi(x*y) = phi(y) o phi(x)."""
    return _check(phi, table_a, table_b, "rough-anti-hom").counts.violated == 0


@dataclass(frozen=True)
class CompositionCounterexample:
    phi1: Mapping
    phi2: Mapping
    pair: tuple[str, str]


@dataclass(frozen=True)
class CompositionReport:
    prop: str
    checked: int
    skipped: int
    counterexamples: tuple[CompositionCounterexample, ...]

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def verify_composition_props(
    table: OpTable,
    candidates: Sequence[tuple[Mapping, Mapping]],
    prop: str,
) -> CompositionReport:
    """Check composites over one table against the composition propositions.

    p41: phi1 reverses and phi2 preserves, so phi1 o phi2 must reverse.
    p42: both reverse, so phi1 o phi2 must preserve.

    Candidate pairs whose per-pair behavior does not match the proposition's
    hypothesis (or that do not compose) are skipped, not errors.
    """
    if prop not in ("p41", "p42"):
        raise ValueError(f"prop must be p41 or p42, got {prop!r}")
    checked = skipped = 0
    bad = []
    for phi1, phi2 in candidates:
        want2 = preserves_all if prop == "p41" else reverses_all
        if not (reverses_all(phi1, table, table) and want2(phi2, table, table)):
            skipped += 1
            continue
        try:
            comp = compose(phi1, phi2)
        except DomainMismatchError:
            skipped += 1
            continue
        checked += 1
        kind = "rough-anti-hom" if prop == "p41" else "hom"
        rep = _check(comp, table, table, kind)
        if rep.counts.violated:
            bad.append(CompositionCounterexample(phi1, phi2, rep.first_violation))
    return CompositionReport(prop, checked, skipped, tuple(bad))
