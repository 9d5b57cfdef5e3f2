"""Partial outer Cayley tables and tri-valued evaluation of the laws C1-C10.

A table is defined on a carrier S inside a universe U, but its values range
over all of U (or the indeterminate marker), so closure can fail partially:
that is the mechanism behind the anti-structures this toolkit classifies.

Instance semantics per law (each instance scores true, false or
indeterminate; buckets are counted and carry a least witness):

  C1   per ordered pair (x, y): product in S / in U minus S / INDET
  C2   per ordered triple: compare (x*y)*z with x*(y*z); a side is undefined
       when an intermediate product is INDET or leaves the carrier, or the
       final product is INDET; undefined sides make the instance indeterminate
  C3   per element x: some e in S has x*e = e*x = x
  C4   per element x: some u in S hits a local neutral of x from both sides
  C5   per unordered pair x != y: x*y = y*x, indeterminate on INDET
  C6   pointwise negation of C1
  C7   pointwise negation of C2
  C8   one global instance: no e in S is neutral for every x
  C9   one global instance: C4 fails for every x
  C10  pointwise negation of C5

Empty quantifier domains score vacuously: AllTrue for C1-C5, AllFalse for
the anti-laws C6-C10 (so a one-element group is not anti-abelian).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Mapping as TMapping, Optional

from .approx import ApproxSpace, Subset, Universe, approximate
from .errors import (
    CarrierNotFullError,
    EmptyCarrierError,
    EmptySubsetError,
    ExtraEntryError,
    MissingEntryError,
    NotInCarrierError,
    UnknownResultLabelError,
)

# Indeterminate table cell.  Kept as a module-level alias so call sites read
# `value is INDET` rather than a bare None check.
INDET = None

TABLE_LAWS = ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10")
_ANTI_LAWS = frozenset({"C6", "C7", "C8", "C9", "C10"})


@dataclass(frozen=True)
class OpTable:
    """Binary operation on a carrier, with values in the whole universe.

    `cells` is row-major over the carrier in universe index order; a cell
    holds a universe index or INDET.
    """

    universe: Universe
    carrier: Subset
    order: tuple[int, ...] = field(repr=False)
    cells: tuple[Optional[int], ...] = field(repr=False)
    pos: tuple[int, ...] = field(compare=False, repr=False)  # universe index -> carrier position, -1 outside

    @classmethod
    def build(cls, universe: Universe, carrier: Subset, cells: tuple[Optional[int], ...]) -> "OpTable":
        order = tuple(carrier)
        pos = [-1] * universe.size
        for p, i in enumerate(order):
            pos[i] = p
        return cls(universe, carrier, order, cells, tuple(pos))

    @property
    def k(self) -> int:
        return len(self.order)

    def value_at(self, px: int, py: int) -> Optional[int]:
        """Cell by carrier positions."""
        return self.cells[px * self.k + py]

    def product_index(self, ix: int, iy: int) -> Optional[int]:
        """Cell by universe indices; both arguments must lie in the carrier."""
        px, py = self.pos[ix], self.pos[iy]
        if px < 0 or py < 0:
            raise NotInCarrierError("operand outside the table's carrier")
        return self.cells[px * self.k + py]

    def product(self, x: str, y: str) -> Optional[str]:
        """Cell by labels; INDET maps to INDET."""
        v = self.product_index(self.universe.index(x), self.universe.index(y))
        return None if v is INDET else self.universe.labels[v]

    def __repr__(self) -> str:
        return f"OpTable(carrier={self.carrier!r})"


def make_table(
    universe: Universe,
    carrier: Subset,
    rows: TMapping[tuple[str, str], Optional[str]],
) -> OpTable:
    """Validate entries covering carrier x carrier exactly.

    Row values are labels, or INDET for an indeterminate cell.
    """
    if carrier.universe != universe:
        raise NotInCarrierError("carrier declared over a different universe")
    if not carrier:
        raise EmptyCarrierError("carrier is empty")
    order = tuple(carrier)
    pos = {i: p for p, i in enumerate(order)}
    k = len(order)
    cells: list[Optional[int]] = [INDET] * (k * k)
    seen = [False] * (k * k)
    for (x, y), v in rows.items():
        ix, iy = universe.index(x), universe.index(y)
        if ix not in pos or iy not in pos:
            raise ExtraEntryError(f"entry ({x}, {y}) outside carrier x carrier")
        slot = pos[ix] * k + pos[iy]
        if seen[slot]:
            raise ExtraEntryError(f"entry ({x}, {y}) supplied twice")
        seen[slot] = True
        if v is INDET:
            cells[slot] = INDET
        else:
            if v not in universe:
                raise UnknownResultLabelError(f"result {v!r} not in universe")
            cells[slot] = universe.index(v)
    if not all(seen):
        missing = seen.index(False)
        x, y = universe.labels[order[missing // k]], universe.labels[order[missing % k]]
        raise MissingEntryError(f"no entry for ({x}, {y})")
    return OpTable.build(universe, carrier, tuple(cells))


Status = Literal["AllTrue", "AllFalse", "Mixed"]


@dataclass(frozen=True)
class LawVerdict:
    """Tri-valued outcome of one law over its whole quantifier domain."""

    law: str
    status: Status
    true_count: int
    false_count: int
    indet_count: int
    witnesses: tuple[tuple[str, tuple[str, ...]], ...]  # (bucket, instance) pairs

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.true_count, self.false_count, self.indet_count)

    def witness(self, bucket: str) -> tuple[str, ...] | None:
        for b, w in self.witnesses:
            if b == bucket:
                return w
        return None


def _verdict(law: str, buckets: dict[str, tuple[int, tuple[str, ...] | None]]) -> LawVerdict:
    t, wt = buckets["true"]
    f, wf = buckets["false"]
    i, wi = buckets["indeterminate"]
    if t + f + i == 0:
        status: Status = "AllFalse" if law in _ANTI_LAWS else "AllTrue"
    elif f == 0 and i == 0:
        status = "AllTrue"
    elif t == 0 and i == 0:
        status = "AllFalse"
    else:
        status = "Mixed"
    wits = tuple(
        (b, w)
        for b, (n, w) in (("true", (t, wt)), ("false", (f, wf)), ("indeterminate", (i, wi)))
        if n > 0 and w is not None
    )
    return LawVerdict(law, status, t, f, i, wits)


def _tally(law: str, instances) -> LawVerdict:
    """instances yields (bucket, instance-labels) pairs in canonical order."""
    counts = {"true": 0, "false": 0, "indeterminate": 0}
    first: dict[str, tuple[str, ...] | None] = {"true": None, "false": None, "indeterminate": None}
    for bucket, inst in instances:
        counts[bucket] += 1
        if first[bucket] is None:
            first[bucket] = inst
    return _verdict(law, {b: (counts[b], first[b]) for b in counts})


def associativity_instance(table: OpTable, x: str, y: str, z: str) -> str:
    """Score one C2 triple: 'true', 'false' or 'indeterminate'."""
    u = table.universe
    return _assoc_positions(table, table.pos[u.index(x)], table.pos[u.index(y)], table.pos[u.index(z)])


def _assoc_positions(table: OpTable, px: int, py: int, pz: int) -> str:
    k, cells, pos = table.k, table.cells, table.pos
    left = None
    t = cells[px * k + py]
    if t is not INDET and pos[t] >= 0:
        left = cells[pos[t] * k + pz]
    right = None
    s = cells[py * k + pz]
    if s is not INDET and pos[s] >= 0:
        right = cells[px * k + pos[s]]
    if left is INDET or right is INDET:
        return "indeterminate"
    return "true" if left == right else "false"


def local_neutrals(table: OpTable, x: str) -> Subset:
    """Elements e of the carrier with x*e = e*x = x; INDET never matches."""
    ix = table.universe.index(x)
    if table.pos[ix] < 0:
        raise NotInCarrierError(f"{x!r} not in the carrier")
    return Subset.from_indices(table.universe, _neutral_indices(table, table.pos[ix]))


def _neutral_indices(table: OpTable, px: int) -> list[int]:
    k, cells, order = table.k, table.cells, table.order
    ix = order[px]
    return [order[pe] for pe in range(k) if cells[px * k + pe] == ix and cells[pe * k + px] == ix]


def _has_inverse(table: OpTable, px: int) -> bool:
    k, cells, pos = table.k, table.cells, table.pos
    for ie in _neutral_indices(table, px):
        for pu in range(k):
            if cells[px * k + pu] == ie and cells[pu * k + px] == ie:
                return True
    return False


def evaluate_law(table: OpTable, law: str) -> LawVerdict:
    """Tri-valued verdict for one of C1..C10 with counts and witnesses."""
    u, k = table.universe, table.k
    order, cells, pos = table.order, table.cells, table.pos
    lab = u.labels
    in_carrier = [pos[i] >= 0 for i in range(u.size)]

    if law in ("C1", "C6"):
        flip = law == "C6"

        def pairs():
            for px in range(k):
                for py in range(k):
                    v = cells[px * k + py]
                    if v is INDET:
                        b = "indeterminate"
                    elif in_carrier[v]:
                        b = "false" if flip else "true"
                    else:
                        b = "true" if flip else "false"
                    yield b, (lab[order[px]], lab[order[py]])

        return _tally(law, pairs())

    if law in ("C2", "C7"):
        flip = law == "C7"

        def triples():
            for px in range(k):
                for py in range(k):
                    for pz in range(k):
                        b = _assoc_positions(table, px, py, pz)
                        if flip and b != "indeterminate":
                            b = "false" if b == "true" else "true"
                        yield b, (lab[order[px]], lab[order[py]], lab[order[pz]])

        return _tally(law, triples())

    if law == "C3":
        return _tally(law, (
            ("true" if _neutral_indices(table, px) else "false", (lab[order[px]],))
            for px in range(k)
        ))

    if law == "C4":
        return _tally(law, (
            ("true" if _has_inverse(table, px) else "false", (lab[order[px]],))
            for px in range(k)
        ))

    if law in ("C5", "C10"):
        flip = law == "C10"

        def unordered():
            for px in range(k):
                for py in range(px + 1, k):
                    a, b = cells[px * k + py], cells[py * k + px]
                    if a is INDET or b is INDET:
                        v = "indeterminate"
                    elif a == b:
                        v = "false" if flip else "true"
                    else:
                        v = "true" if flip else "false"
                    yield v, (lab[order[px]], lab[order[py]])

        return _tally(law, unordered())

    if law == "C8":
        for pe in range(k):
            ok = all(cells[px * k + pe] == order[px] and cells[pe * k + px] == order[px] for px in range(k))
            if ok:
                return _tally(law, [("false", (lab[order[pe]],))])
        return _tally(law, [("true", ())])

    if law == "C9":
        for px in range(k):
            if _has_inverse(table, px):
                return _tally(law, [("false", (lab[order[px]],))])
        return _tally(law, [("true", ())])

    raise ValueError(f"unknown law {law!r}")


@dataclass(frozen=True)
class Classification:
    """All ten verdicts plus the derived structure flags."""

    verdicts: tuple[LawVerdict, ...]
    is_semigroup: bool
    is_group: bool
    is_commutative_group: bool
    is_anti_group: bool
    is_anti_abelian: bool
    is_ag4: bool
    is_strict_ag4: bool

    def verdict(self, law: str) -> LawVerdict:
        for v in self.verdicts:
            if v.law == law:
                return v
        raise KeyError(law)

    def flags(self) -> dict[str, bool]:
        return {
            "semigroup": self.is_semigroup,
            "group": self.is_group,
            "commutative-group": self.is_commutative_group,
            "anti-group": self.is_anti_group,
            "anti-abelian": self.is_anti_abelian,
            "ag4": self.is_ag4,
            "strict-ag4": self.is_strict_ag4,
        }


def _global_identity(table: OpTable) -> Optional[int]:
    """Two-sided identity for the whole carrier, if one exists."""
    k, cells, order = table.k, table.cells, table.order
    for pe in range(k):
        if all(cells[px * k + pe] == order[px] and cells[pe * k + px] == order[px]
               for px in range(k)):
            return pe
    return None


def classify(table: OpTable) -> Classification:
    """Evaluate every law and derive the structure flags.

    The group flag is classical: closure, associativity, one global
    identity, and a two-sided inverse against it for every element.  C3/C4
    verdicts stay per-element (local neutrals), which is what the anti-law
    side needs; a structure can satisfy them pointwise without being a
    group.
    """
    v = {law: evaluate_law(table, law) for law in TABLE_LAWS}
    all_true = lambda law: v[law].status == "AllTrue"
    mixed = lambda law: v[law].status == "Mixed"
    is_semigroup = all_true("C1") and all_true("C2")
    is_group = False
    if is_semigroup:
        pe = _global_identity(table)
        if pe is not None:
            k, cells, order = table.k, table.cells, table.order
            ie = order[pe]
            is_group = all(
                any(cells[px * k + pu] == ie and cells[pu * k + px] == ie
                    for pu in range(k))
                for px in range(k)
            )
    is_anti_group = any(all_true(c) for c in ("C6", "C7", "C8", "C9"))
    is_ag4 = v["C4"].status == "AllFalse"
    return Classification(
        verdicts=tuple(v[law] for law in TABLE_LAWS),
        is_semigroup=is_semigroup,
        is_group=is_group,
        is_commutative_group=is_group and all_true("C5"),
        is_anti_group=is_anti_group,
        is_anti_abelian=is_anti_group and all_true("C10"),
        is_ag4=is_ag4,
        is_strict_ag4=is_ag4 and all(mixed(c) for c in ("C1", "C2", "C3", "C5")),
    )


@dataclass(frozen=True)
class CancellationWitness:
    side: Literal["left", "right"]
    g: str
    x: str
    y: str


def cancellation_failures(table: OpTable) -> tuple[CancellationWitness, ...]:
    """All (g, x, y) with x != y and g*x = g*y (left) or x*g = y*g (right).

    Products must be determinate to witness a failure; pairs are reported
    with x before y in universe order, sorted lexicographically.
    """
    u, k = table.universe, table.k
    order, cells = table.order, table.cells
    out = []
    for pg in range(k):
        for px in range(k):
            for py in range(px + 1, k):
                g, x, y = u.labels[order[pg]], u.labels[order[px]], u.labels[order[py]]
                left = cells[pg * k + px]
                if left is not INDET and left == cells[pg * k + py]:
                    out.append(CancellationWitness("left", g, x, y))
                right = cells[px * k + pg]
                if right is not INDET and right == cells[py * k + pg]:
                    out.append(CancellationWitness("right", g, x, y))
    out.sort(key=lambda w: (u.index(w.g), u.index(w.x), u.index(w.y), w.side))
    return tuple(out)


def set_product(table: OpTable, a: Subset, b: Subset, mode: str = "outer") -> Subset:
    """{h*k : h in A, k in B} skipping INDET cells.

    outer mode keeps every product in U; restricted clips to the carrier.
    """
    if mode not in ("outer", "restricted"):
        raise ValueError(f"mode must be 'outer' or 'restricted', got {mode!r}")
    if not (a.issubset(table.carrier) and b.issubset(table.carrier)):
        raise NotInCarrierError("set_product operands must lie inside the carrier")
    k, cells, pos = table.k, table.cells, table.pos
    mask = 0
    for ih in a:
        row = pos[ih] * k
        for ik in b:
            v = cells[row + pos[ik]]
            if v is not INDET:
                mask |= 1 << v
    if mode == "restricted":
        mask &= table.carrier.mask
    return Subset(table.universe, mask)


@dataclass(frozen=True)
class CongruenceReport:
    """Compatibility of a partition with a total table."""

    holds: bool
    witness: tuple[str, str, str, str] | None  # (x, x', y, y') with x*y not ~ x'*y'
    checked: int
    indeterminate: int


def is_congruence(space: ApproxSpace, table: OpTable) -> CongruenceReport:
    """x ~ x' and y ~ y' must force x*y ~ x'*y' whenever both are determinate."""
    u = table.universe
    if table.carrier.mask != u.full_mask():
        raise CarrierNotFullError("congruence check needs a table on the whole universe")
    if space.universe != u:
        raise CarrierNotFullError("space and table universes differ")
    cls = space.class_of
    n = u.size
    checked = indet = 0
    witness = None
    holds = True
    for x in range(n):
        for x2 in range(n):
            if cls[x] != cls[x2]:
                continue
            for y in range(n):
                for y2 in range(n):
                    if cls[y] != cls[y2]:
                        continue
                    p = table.value_at(table.pos[x], table.pos[y])
                    q = table.value_at(table.pos[x2], table.pos[y2])
                    if p is INDET or q is INDET:
                        indet += 1
                        continue
                    checked += 1
                    if cls[p] != cls[q] and holds:
                        holds = False
                        witness = (u.labels[x], u.labels[x2], u.labels[y], u.labels[y2])
    return CongruenceReport(holds, witness, checked, indet)


@dataclass(frozen=True)
class RelationCheck:
    relation: str
    holds: bool
    witness: str | None


@dataclass(frozen=True)
class ProductApproxReport:
    """The four product/approximation relations plus the congruence verdict."""

    relations: tuple[RelationCheck, ...]
    congruence: CongruenceReport

    def relation(self, name: str) -> RelationCheck:
        for r in self.relations:
            if r.relation == name:
                return r
        raise KeyError(name)


def check_product_approx_laws(space: ApproxSpace, table: OpTable, x: Subset, y: Subset) -> ProductApproxReport:
    """Evaluate, for nonempty X and Y over a full-carrier table:

      (a) upper(X) upper(Y)  inside  upper(X Y)
      (b) upper(X Y)         inside  upper(X) upper(Y)
      (c) lower(X) lower(Y)  inside  lower(X Y)
      (d) lower(X Y)         inside  lower(X) lower(Y)

    The congruence verdict rides along; none of the relations assumes it.
    """
    u = table.universe
    if table.carrier.mask != u.full_mask():
        raise CarrierNotFullError("product laws need a table on the whole universe")
    if not x or not y:
        raise EmptySubsetError("X and Y must be nonempty")
    ax, ay = approximate(space, x), approximate(space, y)
    prod = set_product(table, x, y)
    aprod = approximate(space, prod)
    up_prod = set_product(table, ax.upper, ay.upper)
    lo_prod = set_product(table, ax.lower, ay.lower)

    def incl(name: str, lhs: Subset, rhs: Subset) -> RelationCheck:
        bad = lhs.mask & ~rhs.mask
        w = None if bad == 0 else u.labels[(bad & -bad).bit_length() - 1]
        return RelationCheck(name, bad == 0, w)

    relations = (
        incl("a", up_prod, aprod.upper),
        incl("b", aprod.upper, up_prod),
        incl("c", lo_prod, aprod.lower),
        incl("d", aprod.lower, lo_prod),
    )
    return ProductApproxReport(relations, is_congruence(space, table))
