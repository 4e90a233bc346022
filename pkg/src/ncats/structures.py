"""Composition tables over an n-graph and the axiom checkers that decide
whether a candidate assignment is a category structure.

A vertical table at level j composes (j+1)-cells end to end; level -1 is
the product of 0-cells and is only allowed on a monoidal carrier.  A
horizontal table at level j composes (j+2)-cells side by side along their
dimension-j boundaries.  All table entries are written in diagrammatic
order: the key (a, b) means "a first, then b".

Checkers never raise on a bad table; they return a report whose checks
carry one verdict each (pass, fail, or not-applicable) plus explicit
counterexamples, so a caller can tell exactly which axiom broke and where.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import CellId, NGraph, is_monoidal_carrier, iterated_boundary, SOURCE, TARGET

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"

FLAG_NAMES = ("global", "unital", "associative", "interchange", "groupoid")


class StructureError(Exception):
    """Base class for errors raised while assembling or querying tables."""


class NoTableAtLevel(StructureError):
    pass


class MissingTables(StructureError):
    pass


class NotComposable(StructureError):
    pass


class NotDefined(StructureError):
    pass


class UnitsRequired(StructureError):
    pass


@dataclass(frozen=True)
class AxiomFlags:
    global_: bool = False
    unital: bool = False
    associative: bool = False
    interchange: bool = False
    groupoid: bool = False

    @classmethod
    def from_names(cls, names) -> "AxiomFlags":
        names = set(names)
        unknown = names - set(FLAG_NAMES)
        if unknown:
            raise ValueError(f"unknown flags: {sorted(unknown)}")
        return cls(
            global_="global" in names,
            unital="unital" in names,
            associative="associative" in names,
            interchange="interchange" in names,
            groupoid="groupoid" in names,
        )

    def names(self) -> tuple[str, ...]:
        picked = []
        for name in FLAG_NAMES:
            if getattr(self, "global_" if name == "global" else name):
                picked.append(name)
        return tuple(picked)


@dataclass
class CompTable:
    """Vertical composition at one level: (a, b) -> a-then-b."""

    level: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)


@dataclass
class HCompTable:
    """Horizontal composition of (level+2)-cells along level boundaries."""

    level: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)


@dataclass
class CocompTable:
    """Cocomposition witnesses: cell -> (middle, left piece, right piece)."""

    level: int
    entries: dict[int, tuple[int, int, int]] = field(default_factory=dict)


@dataclass
class Counterexample:
    kind: str
    cells: tuple[CellId, ...]
    expected: object = None
    actual: object = None


@dataclass
class AxiomCheck:
    axiom: str
    level: int | None
    verdict: str
    counterexamples: list[Counterexample] = field(default_factory=list)
    asymmetric: list[Counterexample] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


@dataclass
class AxiomReport:
    checks: list[AxiomCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.verdict != FAIL for c in self.checks)

    def merged(self, other: "AxiomReport") -> "AxiomReport":
        return AxiomReport(self.checks + other.checks)

    def find(self, axiom: str, level=None) -> AxiomCheck:
        for c in self.checks:
            if c.axiom == axiom and (level is None or c.level == level):
                return c
        raise KeyError(f"no check for {axiom!r} at level {level!r}")


def _single(axiom, level, verdict, counterexamples=None, asymmetric=None, notes=None):
    return AxiomReport([AxiomCheck(
        axiom, level, verdict,
        counterexamples or [], asymmetric or [], notes or [],
    )])


def composable(G: NGraph, j: int, a: int, b: int) -> bool:
    """Whether the level-j key (a, b) is admissible: ends must meet, except
    at level -1 where every ordered pair of 0-cells is a key."""
    if j == -1:
        return True
    return G.tgt_map(j + 1)[a] == G.src_map(j + 1)[b]


def composable_pairs(G: NGraph, j: int):
    """All admissible level-j keys, lexicographically."""
    d = j + 1
    cnt = G.count(d)
    if j == -1:
        return [(a, b) for a in range(cnt) for b in range(cnt)]
    smap, tmap = G.src_map(d), G.tgt_map(d)
    by_src = {}
    for b in range(cnt):
        by_src.setdefault(smap[b], []).append(b)
    return [(a, b) for a in range(cnt) for b in by_src.get(tmap[a], ())]


def composable_triples(G: NGraph, j: int):
    d = j + 1
    cnt = G.count(d)
    if j == -1:
        return [(a, b, c) for a in range(cnt) for b in range(cnt) for c in range(cnt)]
    smap, tmap = G.src_map(d), G.tgt_map(d)
    by_src = {}
    for b in range(cnt):
        by_src.setdefault(smap[b], []).append(b)
    out = []
    for a in range(cnt):
        for b in by_src.get(tmap[a], ()):
            for c in by_src.get(tmap[b], ()):
                out.append((a, b, c))
    return out


def h_composable(G: NGraph, j: int, a: int, b: int) -> bool:
    d = j + 2
    return (
        iterated_boundary(G, CellId(d, a), j, TARGET)
        == iterated_boundary(G, CellId(d, b), j, SOURCE)
    )


def h_composable_pairs(G: NGraph, j: int):
    d = j + 2
    cnt = G.count(d)
    outer_t = [iterated_boundary(G, CellId(d, i), j, TARGET).index for i in range(cnt)]
    outer_s = [iterated_boundary(G, CellId(d, i), j, SOURCE).index for i in range(cnt)]
    by_outer_src = {}
    for b in range(cnt):
        by_outer_src.setdefault(outer_s[b], []).append(b)
    return [(a, b) for a in range(cnt) for b in by_outer_src.get(outer_t[a], ())]


class CategoryStructure:
    """A carrier plus whatever composition tables the candidate provides.

    Tables may be partial; the flags say which axioms the candidate claims.
    Construction rejects keys that are not composable and tables at levels
    the carrier cannot host, but makes no judgement about the axioms; that
    is the checkers' job.
    """

    def __init__(self, graph: NGraph, vtables=(), htables=(), flags: AxiomFlags = AxiomFlags()):
        self.graph = graph
        self.flags = flags
        self.vtables: dict[int, CompTable] = {}
        self.htables: dict[int, HCompTable] = {}
        for t in vtables.values() if isinstance(vtables, dict) else vtables:
            if not -1 <= t.level <= graph.n - 1:
                raise NoTableAtLevel(f"vertical level {t.level} outside -1..{graph.n - 1}")
            if t.level == -1 and not is_monoidal_carrier(graph):
                raise NoTableAtLevel("level -1 table needs a single (-1)-cell")
            if t.level in self.vtables:
                raise StructureError(f"duplicate vertical table at level {t.level}")
            d = t.level + 1
            cnt = graph.count(d)
            for (a, b), v in t.entries.items():
                if not (0 <= a < cnt and 0 <= b < cnt and 0 <= v < cnt):
                    raise StructureError(f"level {t.level} entry ({a}, {b}) -> {v} out of range")
                if not composable(graph, t.level, a, b):
                    raise NotComposable(f"level {t.level} key ({a}, {b}) is not composable")
            self.vtables[t.level] = t
        for t in htables.values() if isinstance(htables, dict) else htables:
            if not 0 <= t.level <= graph.n - 2:
                raise NoTableAtLevel(f"horizontal level {t.level} outside 0..{graph.n - 2}")
            if t.level in self.htables:
                raise StructureError(f"duplicate horizontal table at level {t.level}")
            d = t.level + 2
            cnt = graph.count(d)
            for (a, b), v in t.entries.items():
                if not (0 <= a < cnt and 0 <= b < cnt and 0 <= v < cnt):
                    raise StructureError(f"horizontal level {t.level} entry ({a}, {b}) -> {v} out of range")
                if not h_composable(graph, t.level, a, b):
                    raise NotComposable(f"horizontal level {t.level} key ({a}, {b}) shares no boundary")
            self.htables[t.level] = t

    def __eq__(self, other):
        return (
            isinstance(other, CategoryStructure)
            and self.graph == other.graph
            and self.flags == other.flags
            and {j: t.entries for j, t in self.vtables.items()}
            == {j: t.entries for j, t in other.vtables.items()}
            and {j: t.entries for j, t in self.htables.items()}
            == {j: t.entries for j, t in other.htables.items()}
        )

    def __repr__(self):
        vs = {j: len(t.entries) for j, t in sorted(self.vtables.items())}
        hs = {j: len(t.entries) for j, t in sorted(self.htables.items())}
        return f"CategoryStructure(vertical {vs}, horizontal {hs}, flags {self.flags.names()})"


def compose(S: CategoryStructure, a: CellId, b: CellId, j: int) -> CellId:
    """Table lookup for "a then b" at level j, raising when impossible."""
    if j not in S.vtables:
        raise NoTableAtLevel(f"no vertical table at level {j}")
    d = j + 1
    if a.dim != d or b.dim != d:
        raise NotComposable(f"level {j} composes dimension-{d} cells, got {a} and {b}")
    if not composable(S.graph, j, a.index, b.index):
        raise NotComposable(f"{a} and {b} do not meet end to end")
    try:
        return CellId(d, S.vtables[j].entries[(a.index, b.index)])
    except KeyError:
        raise NotDefined(f"level {j} table has no entry for ({a}, {b})") from None


def check_typing(S: CategoryStructure) -> AxiomReport:
    """Every entry must land in the hom-set spanned by its key.

    Horizontal values are typed through the vertical table at the same
    level; a missing vertical composite makes the entry untypeable.
    """
    checks = []
    G = S.graph
    for j in sorted(S.vtables):
        d = j + 1
        smap, tmap = G.src_map(d), G.tgt_map(d)
        bad = []
        for (a, b), v in sorted(S.vtables[j].entries.items()):
            if smap[v] != smap[a] or tmap[v] != tmap[b]:
                bad.append(Counterexample(
                    "typing", (CellId(d, a), CellId(d, b)),
                    expected=(CellId(d - 1, smap[a]), CellId(d - 1, tmap[b])),
                    actual=CellId(d, v),
                ))
        checks.append(AxiomCheck("typing", j, FAIL if bad else PASS, bad))
    for j in sorted(S.htables):
        d = j + 2
        smap, tmap = G.src_map(d), G.tgt_map(d)
        vt = S.vtables.get(j)
        bad = []
        for (a, b), v in sorted(S.htables[j].entries.items()):
            want_s = vt.entries.get((smap[a], smap[b])) if vt else None
            want_t = vt.entries.get((tmap[a], tmap[b])) if vt else None
            if want_s is None or want_t is None:
                bad.append(Counterexample(
                    "untypeable", (CellId(d, a), CellId(d, b)),
                    expected="vertical composite of the boundaries",
                    actual=CellId(d, v),
                ))
            elif smap[v] != want_s or tmap[v] != want_t:
                bad.append(Counterexample(
                    "typing", (CellId(d, a), CellId(d, b)),
                    expected=(CellId(d - 1, want_s), CellId(d - 1, want_t)),
                    actual=CellId(d, v),
                ))
        checks.append(AxiomCheck("typing-horizontal", j, FAIL if bad else PASS, bad))
    return AxiomReport(checks)


def check_global(S: CategoryStructure, j: int) -> AxiomReport:
    """Totality at level j: every composable key has an entry."""
    if j not in S.vtables:
        raise NoTableAtLevel(f"no vertical table at level {j}")
    G = S.graph
    d = j + 1
    entries = S.vtables[j].entries
    bad = [
        Counterexample("missing", (CellId(d, a), CellId(d, b)))
        for a, b in composable_pairs(G, j)
        if (a, b) not in entries
    ]
    checks = [AxiomCheck("global", j, FAIL if bad else PASS, bad)]
    if j in S.htables:
        hentries = S.htables[j].entries
        hbad = [
            Counterexample("missing", (CellId(j + 2, a), CellId(j + 2, b)))
            for a, b in h_composable_pairs(G, j)
            if (a, b) not in hentries
        ]
        checks.append(AxiomCheck("global-horizontal", j, FAIL if hbad else PASS, hbad))
    return AxiomReport(checks)


def check_units(S: CategoryStructure, j: int) -> AxiomReport:
    """Identity cells act as left and right units wherever the table is
    defined; under the global flag the unit entries must also exist.

    Level -1 is not applicable: there is no identity section below
    dimension 0, so the product of 0-cells carries no designated unit.
    """
    if j == -1:
        return _single("units", -1, NOT_APPLICABLE,
                       notes=["no identity section below dimension 0"])
    if j not in S.vtables:
        raise NoTableAtLevel(f"no vertical table at level {j}")
    G = S.graph
    d = j + 1
    idn = G.idn_map(j)
    smap, tmap = G.src_map(d), G.tgt_map(d)
    entries = S.vtables[j].entries
    bad = []
    for a in range(G.count(d)):
        left = (idn[smap[a]], a)
        right = (a, idn[tmap[a]])
        for key, kind in ((left, "unit-left"), (right, "unit-right")):
            got = entries.get(key)
            if got is None:
                if S.flags.global_:
                    bad.append(Counterexample(kind + "-missing",
                                              (CellId(d, key[0]), CellId(d, key[1])),
                                              expected=CellId(d, a)))
            elif got != a:
                bad.append(Counterexample(kind,
                                          (CellId(d, key[0]), CellId(d, key[1])),
                                          expected=CellId(d, a), actual=CellId(d, got)))
    return _single("units", j, FAIL if bad else PASS, bad)


def check_associativity(S: CategoryStructure, j: int) -> AxiomReport:
    """Both bracketings of every composable triple agree when both are
    defined.  Triples where exactly one side is defined are collected
    separately; partiality alone is not a violation."""
    if j not in S.vtables:
        raise NoTableAtLevel(f"no vertical table at level {j}")
    G = S.graph
    d = j + 1
    entries = S.vtables[j].entries
    bad = []
    lopsided = []
    for a, b, c in composable_triples(G, j):
        ab = entries.get((a, b))
        bc = entries.get((b, c))
        left = entries.get((ab, c)) if ab is not None else None
        right = entries.get((a, bc)) if bc is not None else None
        if left is not None and right is not None:
            if left != right:
                bad.append(Counterexample(
                    "associativity", (CellId(d, a), CellId(d, b), CellId(d, c)),
                    expected=CellId(d, left), actual=CellId(d, right)))
        elif left is not None or right is not None:
            lopsided.append(Counterexample(
                "partiality-asymmetry", (CellId(d, a), CellId(d, b), CellId(d, c)),
                expected="both bracketings defined or neither"))
    return _single("associativity", j, FAIL if bad else PASS, bad, asymmetric=lopsided)


def check_interchange(S: CategoryStructure, j: int) -> AxiomReport:
    """Middle-four exchange between vertical composition at level j+1 and
    horizontal composition at level j.

    For quadruples where the four inner composites and both outer ones are
    defined, the two evaluation orders must agree.  Quadruples where only
    one outer side is defined are collected separately.
    """
    if j + 1 not in S.vtables or j not in S.htables:
        raise MissingTables(f"interchange at level {j} needs the vertical table "
                            f"at level {j + 1} and the horizontal table at level {j}")
    G = S.graph
    d = j + 2
    V = S.vtables[j + 1].entries
    H = S.htables[j].entries
    vpairs = composable_pairs(G, j + 1)
    cnt = G.count(d)
    outer_t = [iterated_boundary(G, CellId(d, i), j, TARGET).index for i in range(cnt)]
    outer_s = [iterated_boundary(G, CellId(d, i), j, SOURCE).index for i in range(cnt)]
    bad = []
    lopsided = []
    for a, a2 in vpairs:
        for b, b2 in vpairs:
            if outer_t[a] != outer_s[b] or outer_t[a2] != outer_s[b2]:
                continue
            va = V.get((a, a2))
            vb = V.get((b, b2))
            hab = H.get((a, b))
            hab2 = H.get((a2, b2))
            if va is None or vb is None or hab is None or hab2 is None:
                continue
            lhs = H.get((va, vb))
            rhs = V.get((hab, hab2))
            cells = (CellId(d, a), CellId(d, a2), CellId(d, b), CellId(d, b2))
            if lhs is not None and rhs is not None:
                if lhs != rhs:
                    bad.append(Counterexample("interchange", cells,
                                              expected=CellId(d, lhs), actual=CellId(d, rhs)))
            elif lhs is not None or rhs is not None:
                lopsided.append(Counterexample("partiality-asymmetry", cells,
                                               expected="both evaluation orders defined or neither"))
    return _single("interchange", j, FAIL if bad else PASS, bad, asymmetric=lopsided)


def check_groupoid(S: CategoryStructure, j: int) -> AxiomReport:
    """Every cell must have a two-sided inverse against the identities.

    The unit law is a precondition; a failing unit check makes inversion
    meaningless, which is raised rather than reported.
    """
    if j == -1:
        return _single("groupoid", -1, NOT_APPLICABLE,
                       notes=["no identity section below dimension 0"])
    units = check_units(S, j)
    if not units.passed:
        raise UnitsRequired(f"unit law fails at level {j}; inversion is undecidable")
    G = S.graph
    d = j + 1
    idn = G.idn_map(j)
    smap, tmap = G.src_map(d), G.tgt_map(d)
    entries = S.vtables[j].entries
    by_type = {}
    for b in range(G.count(d)):
        by_type.setdefault((smap[b], tmap[b]), []).append(b)
    bad = []
    for a in range(G.count(d)):
        x, y = smap[a], tmap[a]
        found = False
        for b in by_type.get((y, x), ()):
            if entries.get((a, b)) == idn[x] and entries.get((b, a)) == idn[y]:
                found = True
                break
        if not found:
            bad.append(Counterexample("no-inverse", (CellId(d, a),),
                                      expected=(CellId(d, idn[x]), CellId(d, idn[y]))))
    return _single("groupoid", j, FAIL if bad else PASS, bad)


def inverses(S: CategoryStructure, j: int, a: CellId) -> list[CellId]:
    """All two-sided inverses of ``a`` at level j (used to confirm that a
    passing groupoid check pins the inverse down uniquely)."""
    G = S.graph
    d = j + 1
    idn = G.idn_map(j)
    x, y = G.src_map(d)[a.index], G.tgt_map(d)[a.index]
    entries = S.vtables[j].entries
    out = []
    for b in range(G.count(d)):
        if G.src_map(d)[b] == y and G.tgt_map(d)[b] == x:
            if entries.get((a.index, b)) == idn[x] and entries.get((b, a.index)) == idn[y]:
                out.append(CellId(d, b))
    return out


def check_cocategory(G: NGraph, D: CocompTable) -> AxiomReport:
    """Typing of cocomposition: each witness splits a cell z: x -> y into
    pieces x -> w and w -> y through the chosen middle cell."""
    j = D.level
    if not 0 <= j <= G.n - 1:
        raise NoTableAtLevel(f"cocomposition level {j} outside 0..{G.n - 1}")
    d = j + 1
    smap, tmap = G.src_map(d), G.tgt_map(d)
    bad = []
    for z, (w, p, q) in sorted(D.entries.items()):
        if not (0 <= z < G.count(d) and 0 <= p < G.count(d) and 0 <= q < G.count(d) and 0 <= w < G.count(j)):
            bad.append(Counterexample("co-range", (CellId(d, z),),
                                      actual=(w, p, q)))
            continue
        x, y = smap[z], tmap[z]
        if smap[p] != x or tmap[p] != w:
            bad.append(Counterexample("co-left", (CellId(d, z), CellId(d, p)),
                                      expected=(CellId(j, x), CellId(j, w)),
                                      actual=(CellId(j, smap[p]), CellId(j, tmap[p]))))
        if smap[q] != w or tmap[q] != y:
            bad.append(Counterexample("co-right", (CellId(d, z), CellId(d, q)),
                                      expected=(CellId(j, w), CellId(j, y)),
                                      actual=(CellId(j, smap[q]), CellId(j, tmap[q]))))
    return _single("cocategory", j, FAIL if bad else PASS, bad)


def check_category(S: CategoryStructure) -> AxiomReport:
    """Run the full battery selected by the structure's flags.

    Typing always runs.  Per-level axioms run for every level that has a
    table; interchange runs for every level that has both tables it needs.
    A groupoid request with a broken unit law is reported as a failure with
    a note instead of raising, so the aggregate stays total.
    """
    report = check_typing(S)
    for j in sorted(S.vtables):
        if S.flags.global_:
            report = report.merged(check_global(S, j))
        if S.flags.unital:
            report = report.merged(check_units(S, j))
        if S.flags.associative:
            report = report.merged(check_associativity(S, j))
        if S.flags.groupoid:
            units = check_units(S, j)
            if units.checks[0].verdict == FAIL:
                report = report.merged(_single(
                    "groupoid", j, FAIL,
                    counterexamples=list(units.checks[0].counterexamples),
                    notes=["unit law violated; inversion is undecidable"]))
            elif units.checks[0].verdict == NOT_APPLICABLE:
                report = report.merged(_single(
                    "groupoid", j, NOT_APPLICABLE,
                    notes=["no identity section below dimension 0"]))
            else:
                report = report.merged(check_groupoid(S, j))
    if S.flags.interchange:
        ran_any = False
        for j in sorted(S.htables):
            if j + 1 in S.vtables:
                report = report.merged(check_interchange(S, j))
                ran_any = True
            else:
                report = report.merged(_single(
                    "interchange", j, NOT_APPLICABLE,
                    notes=[f"no vertical table at level {j + 1}"]))
        if not ran_any and not S.htables:
            report = report.merged(_single(
                "interchange", None, NOT_APPLICABLE,
                notes=["no horizontal tables present"]))
    return report
