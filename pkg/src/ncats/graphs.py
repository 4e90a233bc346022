"""Finite truncated globular carriers (n-graphs).

An n-graph stores finitely many cells in each dimension from -1 up to n,
together with source and target maps going one dimension down and an
identity section going one dimension up.  Two conditions make the data
globular: the identity section is split by both boundary maps, and a cell
can only live between two cells of the same type, where the type of a cell
is its ordered boundary pair.  Dimensions above n are degenerate copies of
dimension n and are never stored.

The negative grades are truncated at -1.  Grade -1 holds one or two
structureless cells; a single (-1)-cell forces every 0-cell to have the
diagonal type, which is exactly the case where the 0-cells can carry a
product of their own (a monoidal carrier).
"""

from __future__ import annotations

from dataclasses import dataclass

SECTION_VIOLATION = "SectionViolation"
GLOBULARITY_VIOLATION = "GlobularityViolation"
ZERO_TYPE_VIOLATION = "ZeroTypeViolation"
INDEX_OUT_OF_RANGE = "IndexOutOfRange"
BAD_TAIL_SIZE = "BadTailSize"

SOURCE = "source"
TARGET = "target"


class GraphError(Exception):
    """Base class for structural errors raised by graph operations."""


class BadLevel(GraphError):
    pass


class DimensionMismatch(GraphError):
    pass


class DimensionTooHigh(GraphError):
    pass


class SpaceTooLarge(GraphError):
    """A finite search was asked to cover more candidates than its bound."""


class GraphValidationError(GraphError):
    def __init__(self, issues):
        self.issues = list(issues)
        lines = "; ".join(str(i) for i in self.issues[:5])
        more = "" if len(self.issues) <= 5 else f" (+{len(self.issues) - 5} more)"
        super().__init__(f"invalid graph: {lines}{more}")


@dataclass(frozen=True, order=True)
class CellId:
    dim: int
    index: int

    def __str__(self):
        return f"{self.dim}#{self.index}"


@dataclass(frozen=True)
class StructureTail:
    """The grade -1 data: how many (-1)-cells exist and which ordered pair
    of them every 0-cell is typed by."""

    minus_one_count: int = 1
    zero_type: tuple[int, int] = (0, 0)


@dataclass(frozen=True)
class ValidationIssue:
    condition: str
    cell: CellId | None
    detail: str

    def __str__(self):
        where = "" if self.cell is None else f" at {self.cell}"
        return f"{self.condition}{where}: {self.detail}"


@dataclass
class ValidationReport:
    issues: list[ValidationIssue]

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class HomSet:
    level: int
    source: CellId
    target: CellId
    members: tuple[CellId, ...]


def _collect_issues(n, minus_one, zero_type, src, tgt, idn):
    issues = []

    def issue(cond, cell, detail):
        issues.append(ValidationIssue(cond, cell, detail))

    if not isinstance(n, int) or n < 1:
        issue(INDEX_OUT_OF_RANGE, None, f"n must be a positive integer, got {n!r}")
        return issues
    if minus_one not in (1, 2):
        issue(BAD_TAIL_SIZE, None, f"grade -1 must hold 1 or 2 cells, got {minus_one!r}")
        return issues
    if (
        len(zero_type) != 2
        or any(not isinstance(v, int) or not 0 <= v < minus_one for v in zero_type)
    ):
        issue(BAD_TAIL_SIZE, None, f"zero type {zero_type!r} does not index the tail")
        return issues
    if minus_one == 1 and tuple(zero_type) != (0, 0):
        issue(BAD_TAIL_SIZE, None, "a single (-1)-cell forces the diagonal zero type")

    if len(src) != n + 1 or len(tgt) != n + 1:
        issue(INDEX_OUT_OF_RANGE, None, "source/target families must cover dimensions 0..n")
        return issues
    if len(idn) != n:
        issue(INDEX_OUT_OF_RANGE, None, "identity sections must cover dimensions 0..n-1")
        return issues

    counts = [len(src[d]) for d in range(n + 1)]
    for d in range(n + 1):
        if len(tgt[d]) != counts[d]:
            issue(INDEX_OUT_OF_RANGE, None, f"dimension {d}: target list length differs from source list")
            return issues
    for d in range(n):
        if len(idn[d]) != counts[d]:
            issue(INDEX_OUT_OF_RANGE, None, f"dimension {d}: identity section is not total")
            return issues

    # boundary references stay in range; dimension 0 points into the tail
    for i, (s, t) in enumerate(zip(src[0], tgt[0])):
        if not (isinstance(s, int) and isinstance(t, int) and 0 <= s < minus_one and 0 <= t < minus_one):
            issue(INDEX_OUT_OF_RANGE, CellId(0, i), f"boundary ({s!r}, {t!r}) does not index the tail")
        elif (s, t) != tuple(zero_type):
            issue(ZERO_TYPE_VIOLATION, CellId(0, i), f"0-cell typed ({s}, {t}), expected {tuple(zero_type)}")
    for d in range(1, n + 1):
        below = counts[d - 1]
        for i, (s, t) in enumerate(zip(src[d], tgt[d])):
            if not (isinstance(s, int) and isinstance(t, int) and 0 <= s < below and 0 <= t < below):
                issue(INDEX_OUT_OF_RANGE, CellId(d, i), f"boundary ({s!r}, {t!r}) out of range for dimension {d - 1}")
    if any(i.condition == INDEX_OUT_OF_RANGE for i in issues):
        return issues

    # identity section split by both boundaries
    for d in range(n):
        for x, up in enumerate(idn[d]):
            if not (isinstance(up, int) and 0 <= up < counts[d + 1]):
                issue(INDEX_OUT_OF_RANGE, CellId(d, x), f"identity image {up!r} out of range for dimension {d + 1}")
                continue
            if src[d + 1][up] != x or tgt[d + 1][up] != x:
                issue(SECTION_VIOLATION, CellId(d, x),
                      f"identity cell {CellId(d + 1, up)} has boundary "
                      f"({src[d + 1][up]}, {tgt[d + 1][up]}), expected ({x}, {x})")

    # cells of dimension >= 2 sit between cells of one type
    for d in range(2, n + 1):
        for i, (s, t) in enumerate(zip(src[d], tgt[d])):
            stype = (src[d - 1][s], tgt[d - 1][s])
            ttype = (src[d - 1][t], tgt[d - 1][t])
            if stype != ttype:
                issue(GLOBULARITY_VIOLATION, CellId(d, i),
                      f"source typed {stype}, target typed {ttype}")
    return issues


class NGraph:
    """Immutable carrier. Construct through ``validate_graph`` for untrusted
    input; the constructor itself re-checks every invariant and raises."""

    __slots__ = ("n", "tail", "_src", "_tgt", "_idn", "labels", "_data")

    def __init__(self, n, tail, src, tgt, idn, labels=None):
        src = tuple(tuple(m) for m in src)
        tgt = tuple(tuple(m) for m in tgt)
        idn = tuple(tuple(m) for m in idn)
        issues = _collect_issues(n, tail.minus_one_count, tail.zero_type, src, tgt, idn)
        if issues:
            raise GraphValidationError(issues)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "_src", src)
        object.__setattr__(self, "_tgt", tgt)
        object.__setattr__(self, "_idn", idn)
        if labels is not None:
            labels = tuple(tuple(row) for row in labels)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_data", (n, tail, src, tgt, idn))

    def __setattr__(self, name, value):
        raise AttributeError("NGraph is immutable")

    def __eq__(self, other):
        # labels are metadata and do not take part in identity
        return isinstance(other, NGraph) and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        counts = ", ".join(str(self.count(d)) for d in range(-1, self.n + 1))
        return f"NGraph(n={self.n}, cells by dimension [{counts}])"

    def count(self, dim: int) -> int:
        if dim == -1:
            return self.tail.minus_one_count
        if 0 <= dim <= self.n:
            return len(self._src[dim])
        raise BadLevel(f"dimension {dim} outside -1..{self.n}")

    def cells(self, dim: int):
        return (CellId(dim, i) for i in range(self.count(dim)))

    def src_map(self, dim: int) -> tuple[int, ...]:
        return self._src[dim]

    def tgt_map(self, dim: int) -> tuple[int, ...]:
        return self._tgt[dim]

    def idn_map(self, dim: int) -> tuple[int, ...]:
        return self._idn[dim]

    def src(self, z: CellId) -> CellId:
        if not 0 <= z.dim <= self.n:
            raise BadLevel(f"no boundary below dimension {z.dim}")
        return CellId(z.dim - 1, self._src[z.dim][z.index])

    def tgt(self, z: CellId) -> CellId:
        if not 0 <= z.dim <= self.n:
            raise BadLevel(f"no boundary below dimension {z.dim}")
        return CellId(z.dim - 1, self._tgt[z.dim][z.index])

    def idn(self, x: CellId) -> CellId:
        if not 0 <= x.dim < self.n:
            raise BadLevel(f"no identity section at dimension {x.dim}")
        return CellId(x.dim + 1, self._idn[x.dim][x.index])

    def identity_indices(self, dim: int) -> frozenset[int]:
        """Indices at ``dim`` that are images of the identity section."""
        if dim <= 0 or dim > self.n:
            return frozenset()
        return frozenset(self._idn[dim - 1])

    def label(self, z: CellId):
        if self.labels is None or z.dim < 0:
            return None
        return self.labels[z.dim][z.index]


def validate_graph(raw) -> NGraph | ValidationReport:
    """Check a raw description against every carrier invariant.

    ``raw`` is a mapping with keys ``n``, ``minus_one``, ``src``, ``tgt``,
    ``idn`` and optionally ``zero_type`` and ``labels``.  Boundary families
    are lists indexed by dimension; dimension-0 entries index the tail.
    Returns the graph when everything holds, otherwise a report listing
    each violated condition with the offending cell.
    """
    n = raw.get("n")
    minus_one = raw.get("minus_one", 1)
    src = raw.get("src", [])
    tgt = raw.get("tgt", [])
    idn = raw.get("idn", [])
    zero_type = raw.get("zero_type")
    if zero_type is None:
        if src and len(src) > 0 and len(src[0]) > 0 and tgt and len(tgt[0]) > 0:
            zero_type = (src[0][0], tgt[0][0])
        else:
            zero_type = (0, 0)
    zero_type = tuple(zero_type)
    issues = _collect_issues(n, minus_one, zero_type, src, tgt, idn)
    if issues:
        return ValidationReport(issues)
    return NGraph(n, StructureTail(minus_one, zero_type), src, tgt, idn, raw.get("labels"))


def cell_type(G: NGraph, z: CellId) -> tuple[CellId, CellId]:
    """The ordered boundary pair that decides which hom-set ``z`` can sit in."""
    return (G.src(z), G.tgt(z))


def hom_set(G: NGraph, x: CellId, y: CellId) -> HomSet:
    """All cells one dimension above ``x`` and ``y`` running from x to y."""
    if x.dim != y.dim:
        raise DimensionMismatch(f"hom endpoints have dimensions {x.dim} and {y.dim}")
    if not 0 <= x.dim <= G.n - 1:
        raise BadLevel(f"hom-sets live over dimensions 0..{G.n - 1}, got {x.dim}")
    d = x.dim + 1
    members = tuple(
        CellId(d, i)
        for i, (s, t) in enumerate(zip(G.src_map(d), G.tgt_map(d)))
        if s == x.index and t == y.index
    )
    return HomSet(x.dim, x, y, members)


def iterated_boundary(G: NGraph, z: CellId, j: int, side: str) -> CellId:
    """Walk the chosen boundary map from ``z`` down to dimension ``j``."""
    if side not in (SOURCE, TARGET):
        raise ValueError(f"side must be {SOURCE!r} or {TARGET!r}")
    if not -1 <= j < z.dim:
        raise BadLevel(f"no dimension-{j} boundary for a cell of dimension {z.dim}")
    step = G.src if side == SOURCE else G.tgt
    while z.dim > j:
        z = step(z)
    return z


def is_skeletal(G: NGraph) -> bool:
    """True when every same-type hom-set at every level holds exactly one cell."""
    for d in range(0, G.n):
        cells = list(G.cells(d))
        if d == 0:
            groups = [cells]
        else:
            by_type = {}
            for x in cells:
                by_type.setdefault(cell_type(G, x), []).append(x)
            groups = list(by_type.values())
        for group in groups:
            for x in group:
                for y in group:
                    if len(hom_set(G, x, y).members) != 1:
                        return False
    return True


def is_monoidal_carrier(G: NGraph) -> bool:
    return G.tail.minus_one_count == 1


def opposite(G: NGraph, i: int) -> NGraph:
    """Reverse the boundary maps attached to dimension ``i`` (1 <= i <= n).

    Everything else, including identities and labels, is untouched; applying
    the same reversal twice gives back a cell-for-cell identical graph.
    """
    if not 1 <= i <= G.n:
        raise BadLevel(f"reversal level {i} outside 1..{G.n}")
    src = [G.src_map(d) for d in range(G.n + 1)]
    tgt = [G.tgt_map(d) for d in range(G.n + 1)]
    src[i], tgt[i] = tgt[i], src[i]
    idn = [G.idn_map(d) for d in range(G.n)]
    return NGraph(G.n, G.tail, src, tgt, idn, G.labels)


def hom_graph(G: NGraph, x: CellId, y: CellId) -> NGraph:
    """The hom-set between x and y together with everything above it,
    reindexed as a carrier in its own right.

    The result is an (n - i - 1)-graph whose 0-cells are the members of
    hom(x, y).  Its tail is synthesized: one (-1)-cell when x == y, two
    otherwise, mirroring whether the cells can be composed into loops.
    """
    if x.dim != y.dim:
        raise DimensionMismatch(f"hom endpoints have dimensions {x.dim} and {y.dim}")
    if cell_type(G, x) != cell_type(G, y):
        raise DimensionMismatch(f"{x} and {y} are typed differently; their hom-set is empty by fiat")
    if x.dim > G.n - 2:
        raise DimensionTooHigh(f"hom tower over dimension {x.dim} has no room below n={G.n}")

    i = x.dim
    new_n = G.n - i - 1
    tiers = [sorted(z.index for z in hom_set(G, x, y).members)]
    for d in range(i + 2, G.n + 1):
        keep = set(tiers[-1])
        tiers.append(sorted(
            k for k in range(G.count(d))
            if G.src_map(d)[k] in keep and G.tgt_map(d)[k] in keep
        ))
    reindex = [{old: new for new, old in enumerate(tier)} for tier in tiers]

    if x == y:
        tail = StructureTail(1, (0, 0))
    else:
        tail = StructureTail(2, (0, 1))
    src = [[tail.zero_type[0]] * len(tiers[0])]
    tgt = [[tail.zero_type[1]] * len(tiers[0])]
    idn = []
    labels = None if G.labels is None else []
    for k in range(1, new_n + 1):
        d = i + 1 + k
        src.append([reindex[k - 1][G.src_map(d)[old]] for old in tiers[k]])
        tgt.append([reindex[k - 1][G.tgt_map(d)[old]] for old in tiers[k]])
    for k in range(new_n):
        d = i + 1 + k
        idn.append([reindex[k + 1][G.idn_map(d)[old]] for old in tiers[k]])
    if labels is not None:
        for k in range(new_n + 1):
            labels.append([G.labels[i + 1 + k][old] for old in tiers[k]])
    return NGraph(new_n, tail, src, tgt, idn, labels)


@dataclass(frozen=True)
class GraphAutomorphism:
    """Per-dimension bijections commuting with boundaries and identities.

    The tail is fixed pointwise, so only dimensions 0..n are stored."""

    maps: tuple[tuple[int, ...], ...]

    def apply(self, z: CellId) -> CellId:
        if z.dim == -1:
            return z
        return CellId(z.dim, self.maps[z.dim][z.index])

    def then(self, other: "GraphAutomorphism") -> "GraphAutomorphism":
        return GraphAutomorphism(tuple(
            tuple(other.maps[d][v] for v in m) for d, m in enumerate(self.maps)
        ))

    def inverse(self) -> "GraphAutomorphism":
        inv = []
        for m in self.maps:
            back = [0] * len(m)
            for i, v in enumerate(m):
                back[v] = i
            inv.append(tuple(back))
        return GraphAutomorphism(tuple(inv))

    @classmethod
    def identity(cls, G: NGraph) -> "GraphAutomorphism":
        return cls(tuple(tuple(range(G.count(d))) for d in range(G.n + 1)))


def _fiber_signature(G, d):
    # cheap per-cell invariant: fiber sizes of the boundary maps one
    # dimension up, used to cut the permutation search early
    out = [0] * G.count(d)
    inn = [0] * G.count(d)
    if d < G.n:
        for s in G.src_map(d + 1):
            out[s] += 1
        for t in G.tgt_map(d + 1):
            inn[t] += 1
    return list(zip(out, inn))


def automorphisms(G: NGraph) -> list[GraphAutomorphism]:
    """Every self-isomorphism of the carrier, in a deterministic order.

    Backtracks dimension by dimension: images of identity cells are forced
    by the section below, the rest range over unused cells of the same type
    under the lower bijection.
    """
    sigs = [_fiber_signature(G, d) for d in range(G.n + 1)]
    results = []

    def extend(d, maps):
        if d > G.n:
            results.append(GraphAutomorphism(tuple(maps)))
            return
        cnt = G.count(d)
        forced = {}
        if d >= 1:
            lower = maps[d - 1]
            for x, up in enumerate(G.idn_map(d - 1)):
                forced[up] = G.idn_map(d - 1)[lower[x]]
        img = [-1] * cnt
        used = [False] * cnt
        smap, tmap = G.src_map(d), G.tgt_map(d)

        def assign(i):
            if i == cnt:
                extend(d + 1, maps + [tuple(img)])
                return
            if i in forced:
                j = forced[i]
                if used[j] or sigs[d][i] != sigs[d][j]:
                    return
                if d >= 1 and (maps[d - 1][smap[i]] != smap[j] or maps[d - 1][tmap[i]] != tmap[j]):
                    return
                img[i] = j
                used[j] = True
                assign(i + 1)
                used[j] = False
                img[i] = -1
                return
            for j in range(cnt):
                if used[j] or sigs[d][i] != sigs[d][j]:
                    continue
                if d >= 1 and (maps[d - 1][smap[i]] != smap[j] or maps[d - 1][tmap[i]] != tmap[j]):
                    continue
                img[i] = j
                used[j] = True
                assign(i + 1)
                used[j] = False
                img[i] = -1

        assign(0)

    extend(0, [])
    return results


def skeletal_graph(objects: int, n: int, minus_one: int = 1, seed=None) -> NGraph:
    """Build a skeletal n-graph on the given number of 0-cells.

    Singleton hom-sets leave no slack: dimension 1 holds one cell per
    ordered pair of 0-cells and every higher dimension is the identity
    image of the one below.  A seed, when given, shuffles the index order
    of each dimension so repeated calls exercise different labelings of
    the same shape.
    """
    if objects < 0 or n < 1:
        raise GraphError("need a nonnegative object count and n >= 1")
    if minus_one == 1:
        zero_type = (0, 0)
    else:
        zero_type = (0, 1)
    k = objects
    perms = []
    if seed is None:
        perms.append(list(range(k)))
        perms.append(list(range(k * k)))
    else:
        import random

        rng = random.Random(seed)
        p0 = list(range(k))
        rng.shuffle(p0)
        perms.append(p0)
        p1 = list(range(k * k))
        rng.shuffle(p1)
        perms.append(p1)

    # dimension 1: cell perms[1][x*k + y] runs from perms[0][x] to perms[0][y]
    src1 = [0] * (k * k)
    tgt1 = [0] * (k * k)
    for x in range(k):
        for y in range(k):
            c = perms[1][x * k + y]
            src1[c] = perms[0][x]
            tgt1[c] = perms[0][y]
    idn0 = [0] * k
    for x in range(k):
        idn0[perms[0][x]] = perms[1][x * k + x]

    src = [[zero_type[0]] * k, src1]
    tgt = [[zero_type[1]] * k, tgt1]
    idn = [idn0]
    for d in range(2, n + 1):
        m = k * k
        src.append(list(range(m)))
        tgt.append(list(range(m)))
        idn.append(list(range(m)))
    return NGraph(n, StructureTail(minus_one, zero_type), src, tgt, idn)
