"""The on-disk format: one JSON document per carrier, optionally bundling
composition tables, axiom flags, and named morphisms, transformations and
modifications over that carrier.

Cells are referenced by string id inside a file and mapped to dense indices
in file order when loaded.  Serialization is canonical: keys sorted, cells
kept in index order, table entries and section names sorted, two-space
indent, trailing newline.  Loading the bytes back yields an equal document,
and serializing a loaded canonical file reproduces it byte for byte.

Reports mirror the checker output: one record per axiom check with verdict
and counterexamples, plus counts and budget information where the
subcommand produces them.  Exit codes are computed from the report dict
alone.
"""

from __future__ import annotations

import json

from .graphs import CellId, NGraph, ValidationReport, validate_graph
from .morphisms import GraphMorphism, Modification, Transformation
from .structures import (
    FLAG_NAMES,
    AxiomFlags,
    AxiomReport,
    CategoryStructure,
    CocompTable,
    CompTable,
    Counterexample,
    HCompTable,
)

FORMAT_VERSION = "1"

VERTICAL = "vertical"
HORIZONTAL = "horizontal"
MINUS_ONE = "minus-one"
CO = "co"
_KIND_ORDER = {MINUS_ONE: 0, VERTICAL: 1, HORIZONTAL: 2, CO: 3}

_TOP_KEYS = {"format_version", "n", "tail", "dims", "identities", "tables",
             "flags", "morphisms", "transformations", "modifications"}
_CELL_KEYS = {"id", "src", "tgt", "label"}


class ParseError(Exception):
    """The document is not well formed."""


class UnknownVersion(ParseError):
    pass


class DanglingReference(ParseError):
    def __init__(self, ref, where=""):
        self.ref = ref
        suffix = f" in {where}" if where else ""
        super().__init__(f"reference to missing id {ref!r}{suffix}")


def _expect(cond, message):
    if not cond:
        raise ParseError(message)


def _expect_keys(obj, allowed, what):
    _expect(isinstance(obj, dict), f"{what} must be an object")
    extra = set(obj) - allowed
    _expect(not extra, f"{what} has unknown keys: {sorted(extra)}")


class GraphDocument:
    """A normalized, reference-checked document.

    Wraps the canonical dict; accessors build the in-memory objects on
    demand.  Equality is equality of content.
    """

    def __init__(self, data: dict):
        self.data = data
        self._ids = tuple(tuple(c["id"] for c in row) for row in data["dims"])
        self._index = [{cid: i for i, cid in enumerate(row)} for row in self._ids]

    def __eq__(self, other):
        return isinstance(other, GraphDocument) and self.data == other.data

    def __hash__(self):
        return hash(serialize(self))

    @property
    def n(self) -> int:
        return self.data["n"]

    def ids(self, dim: int) -> tuple[str, ...]:
        return self._ids[dim]

    def cell_name(self, z: CellId) -> str:
        if z.dim < 0:
            return f"tail_{z.index}"
        return self._ids[z.dim][z.index]

    def index_of(self, dim: int, cid: str, where: str = "") -> int:
        try:
            return self._index[dim][cid]
        except KeyError:
            raise DanglingReference(cid, where) from None

    def to_raw(self) -> dict:
        src, tgt, idn = [], [], []
        for d, row in enumerate(self.data["dims"]):
            if d == 0:
                src.append([c["src"] for c in row])
                tgt.append([c["tgt"] for c in row])
            else:
                src.append([self._index[d - 1][c["src"]] for c in row])
                tgt.append([self._index[d - 1][c["tgt"]] for c in row])
        for d, sec in enumerate(self.data["identities"]):
            idn.append([self._index[d + 1][sec[cid]] for cid in self._ids[d]])
        raw = dict(n=self.n, minus_one=self.data["tail"]["minus_one"],
                   src=src, tgt=tgt, idn=idn)
        if any("label" in c for row in self.data["dims"] for c in row):
            raw["labels"] = [[c.get("label") for c in row] for row in self.data["dims"]]
        return raw

    def graph(self) -> NGraph | ValidationReport:
        return validate_graph(self.to_raw())

    def flags(self) -> AxiomFlags:
        return AxiomFlags.from_names(self.data.get("flags", ()))

    def _tables(self, kinds):
        for t in self.data.get("tables", ()):
            if t["kind"] in kinds:
                yield t

    def structure(self, flags: AxiomFlags | None = None) -> CategoryStructure:
        G = self.graph()
        if not isinstance(G, NGraph):
            raise ParseError(f"carrier is invalid: {G}")
        vtables, htables = [], []
        for t in self._tables({VERTICAL, MINUS_ONE}):
            j = t["level"]
            d = j + 1
            entries = {}
            for a, b, v in t["entries"]:
                key = (self.index_of(d, a, "table"), self.index_of(d, b, "table"))
                _expect(key not in entries, f"duplicate entry ({a}, {b}) at level {j}")
                entries[key] = self.index_of(d, v, "table")
            vtables.append(CompTable(j, entries))
        for t in self._tables({HORIZONTAL}):
            j = t["level"]
            d = j + 2
            entries = {}
            for a, b, v in t["entries"]:
                key = (self.index_of(d, a, "table"), self.index_of(d, b, "table"))
                _expect(key not in entries, f"duplicate entry ({a}, {b}) at level {j}")
                entries[key] = self.index_of(d, v, "table")
            htables.append(HCompTable(j, entries))
        return CategoryStructure(G, vtables, htables,
                                 self.flags() if flags is None else flags)

    def cotables(self) -> list[CocompTable]:
        out = []
        for t in self._tables({CO}):
            j = t["level"]
            d = j + 1
            entries = {}
            for z, w, p, q in t["entries"]:
                zi = self.index_of(d, z, "co table")
                _expect(zi not in entries, f"duplicate co entry for {z}")
                entries[zi] = (self.index_of(j, w, "co table"),
                               self.index_of(d, p, "co table"),
                               self.index_of(d, q, "co table"))
            out.append(CocompTable(j, entries))
        return out

    def _section(self, section, name):
        for item in self.data.get(section, ()):
            if item["name"] == name:
                return item
        raise DanglingReference(name, section)

    def morphism(self, name: str) -> GraphMorphism:
        item = self._section("morphisms", name)
        G = self.graph()
        if not isinstance(G, NGraph):
            raise ParseError(f"carrier is invalid: {G}")
        comps = tuple(
            tuple(self._index[d][sec[cid]] for cid in self._ids[d])
            for d, sec in enumerate(item["comps"]))
        return GraphMorphism(G, G, comps)

    def transformation(self, name: str) -> Transformation:
        item = self._section("transformations", name)
        f = self.morphism(item["f"])
        g = self.morphism(item["g"])
        levels = tuple(item["levels"])
        comps = {}
        for i in levels:
            sec = item["comps"][str(i)]
            comps[i] = tuple(self._index[i + 1][sec[cid]] for cid in self._ids[i])
        return Transformation(f, g, comps, levels)

    def modification(self, name: str) -> Modification:
        item = self._section("modifications", name)
        s = self.transformation(item["s"])
        t = self.transformation(item["t"])
        comps = {}
        for i in s.levels:
            sec = item["comps"][str(i)]
            comps[i] = tuple(self._index[i + 2][sec[cid]] for cid in self._ids[i])
        return Modification(s, t, comps)


def _check_cell(cell, d, minus_one, prev_ids, seen):
    _expect_keys(cell, _CELL_KEYS, f"cell record in dimension {d}")
    cid = cell.get("id")
    _expect(isinstance(cid, str) and cid, f"dimension {d} cell needs a string id")
    _expect(cid not in seen, f"duplicate cell id {cid!r}")
    seen.add(cid)
    out = {"id": cid}
    for side in ("src", "tgt"):
        v = cell.get(side)
        if d == 0:
            _expect(isinstance(v, int) and not isinstance(v, bool)
                    and 0 <= v < minus_one,
                    f"cell {cid!r}: {side} must be a tail index below {minus_one}")
        else:
            _expect(isinstance(v, str), f"cell {cid!r}: {side} must be a cell id")
            if v not in prev_ids:
                raise DanglingReference(v, f"cell {cid!r} {side}")
        out[side] = v
    if "label" in cell:
        _expect(isinstance(cell["label"], str), f"cell {cid!r}: label must be a string")
        out["label"] = cell["label"]
    return out


def _check_component_map(sec, keys, value_ids, what):
    _expect(isinstance(sec, dict), f"{what} must be an object")
    for k in sec:
        if k not in keys:
            raise DanglingReference(k, what)
    for k in keys:
        _expect(k in sec, f"{what} is missing cell {k!r}")
        v = sec[k]
        _expect(isinstance(v, str), f"{what}: value for {k!r} must be a cell id")
        if v not in value_ids:
            raise DanglingReference(v, what)
    return {k: sec[k] for k in keys}


def _check_entries(t, ids_by_dim, n):
    kind = t.get("kind")
    _expect(kind in _KIND_ORDER, f"unknown table kind {kind!r}")
    level = t.get("level")
    _expect(isinstance(level, int), "table level must be an integer")
    if kind == MINUS_ONE:
        _expect(level == -1, "a minus-one table lives at level -1")
    lo, hi = {VERTICAL: (0, n - 1), MINUS_ONE: (-1, -1),
              HORIZONTAL: (0, n - 2), CO: (0, n - 1)}[kind]
    _expect(lo <= level <= hi, f"{kind} table level {level} outside {lo}..{hi}")
    width = 4 if kind == CO else 3
    value_dim = level + 2 if kind == HORIZONTAL else level + 1
    entries = []
    for e in t.get("entries", ()):
        _expect(isinstance(e, list) and len(e) == width,
                f"{kind} table entries must be lists of {width} ids")
        dims = (value_dim, level, value_dim, value_dim) if kind == CO \
            else (value_dim,) * 3
        for ref, dim in zip(e, dims):
            _expect(isinstance(ref, str), "table entries hold cell ids")
            if ref not in ids_by_dim[dim]:
                raise DanglingReference(ref, f"{kind} table at level {level}")
        entries.append(list(e))
    return {"kind": kind, "level": level, "entries": sorted(entries)}


def parse(text: str | bytes) -> GraphDocument:
    """Decode, structurally validate and normalize one document.

    Raises ParseError (with line/column for malformed JSON), UnknownVersion,
    or DanglingReference naming the missing id.  Semantic validation of the
    carrier axioms stays with validate_graph.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    _expect_keys(obj, _TOP_KEYS, "document")
    version = obj.get("format_version")
    if version != FORMAT_VERSION:
        raise UnknownVersion(f"format_version {version!r} is not supported")
    n = obj.get("n")
    _expect(isinstance(n, int) and n >= 1, "n must be an integer >= 1")
    _expect_keys(obj.get("tail"), {"minus_one"}, "tail")
    minus_one = obj["tail"].get("minus_one")
    _expect(minus_one in (1, 2), "tail.minus_one must be 1 or 2")

    dims = obj.get("dims")
    _expect(isinstance(dims, list) and len(dims) == n + 1,
            f"dims must list dimensions 0..{n}")
    seen = set()
    ids_by_dim = []
    norm_dims = []
    for d, row in enumerate(dims):
        _expect(isinstance(row, list), f"dims[{d}] must be a list")
        prev = ids_by_dim[d - 1] if d else set()
        norm_row = [_check_cell(c, d, minus_one, prev, seen) for c in row]
        norm_dims.append(norm_row)
        ids_by_dim.append({c["id"] for c in norm_row})

    identities = obj.get("identities")
    _expect(isinstance(identities, list) and len(identities) == n,
            f"identities must list dimensions 0..{n - 1}")
    norm_idn = []
    for d, sec in enumerate(identities):
        keys = [c["id"] for c in norm_dims[d]]
        norm_idn.append(_check_component_map(
            sec, keys, ids_by_dim[d + 1], f"identity map at dimension {d}"))

    data = {"format_version": FORMAT_VERSION, "n": n,
            "tail": {"minus_one": minus_one},
            "dims": norm_dims, "identities": norm_idn}

    if obj.get("tables"):
        tables = [_check_entries(t, ids_by_dim, n) for t in obj["tables"]]
        tagged = {(t["kind"], t["level"]) for t in tables}
        _expect(len(tagged) == len(tables), "duplicate table for one kind and level")
        data["tables"] = sorted(tables, key=lambda t: (_KIND_ORDER[t["kind"]], t["level"]))

    if obj.get("flags"):
        flags = obj["flags"]
        _expect(isinstance(flags, list) and all(f in FLAG_NAMES for f in flags),
                f"flags must be drawn from {FLAG_NAMES}")
        data["flags"] = [f for f in FLAG_NAMES if f in flags]

    if obj.get("morphisms"):
        names = set()
        out = []
        for item in obj["morphisms"]:
            _expect_keys(item, {"name", "comps"}, "morphism record")
            name = item.get("name")
            _expect(isinstance(name, str) and name and name not in names,
                    "morphisms need unique string names")
            names.add(name)
            comps = item.get("comps")
            _expect(isinstance(comps, list) and len(comps) == n + 1,
                    f"morphism {name!r} needs component maps for dimensions 0..{n}")
            norm = [_check_component_map(sec, [c["id"] for c in norm_dims[d]],
                                         ids_by_dim[d], f"morphism {name!r} dimension {d}")
                    for d, sec in enumerate(comps)]
            out.append({"name": name, "comps": norm})
        data["morphisms"] = sorted(out, key=lambda m: m["name"])
        morphism_names = names
    else:
        morphism_names = set()

    if obj.get("transformations"):
        names = set()
        out = []
        for item in obj["transformations"]:
            _expect_keys(item, {"name", "f", "g", "levels", "comps"},
                         "transformation record")
            name = item.get("name")
            _expect(isinstance(name, str) and name and name not in names,
                    "transformations need unique string names")
            names.add(name)
            for end in ("f", "g"):
                if item.get(end) not in morphism_names:
                    raise DanglingReference(item.get(end), f"transformation {name!r} {end}")
            levels = item.get("levels", [0])
            _expect(isinstance(levels, list) and levels == sorted(set(levels))
                    and all(isinstance(i, int) and 0 <= i <= n - 1 for i in levels),
                    f"transformation {name!r} levels must be sorted dimensions below {n}")
            comps = item.get("comps")
            _expect(isinstance(comps, dict) and set(comps) == {str(i) for i in levels},
                    f"transformation {name!r} needs one component map per level")
            norm = {str(i): _check_component_map(
                comps[str(i)], [c["id"] for c in norm_dims[i]], ids_by_dim[i + 1],
                f"transformation {name!r} level {i}") for i in levels}
            out.append({"name": name, "f": item["f"], "g": item["g"],
                        "levels": list(levels), "comps": norm})
        data["transformations"] = sorted(out, key=lambda t: t["name"])
        transformation_names = names
    else:
        transformation_names = set()

    if obj.get("modifications"):
        names = set()
        out = []
        by_name = {t["name"]: t for t in data.get("transformations", ())}
        for item in obj["modifications"]:
            _expect_keys(item, {"name", "s", "t", "comps"}, "modification record")
            name = item.get("name")
            _expect(isinstance(name, str) and name and name not in names,
                    "modifications need unique string names")
            names.add(name)
            for end in ("s", "t"):
                if item.get(end) not in transformation_names:
                    raise DanglingReference(item.get(end), f"modification {name!r} {end}")
            levels = by_name[item["s"]]["levels"]
            _expect(all(i + 2 <= n for i in levels),
                    f"modification {name!r} needs cells two dimensions up")
            comps = item.get("comps")
            _expect(isinstance(comps, dict) and set(comps) == {str(i) for i in levels},
                    f"modification {name!r} needs one component map per level")
            norm = {str(i): _check_component_map(
                comps[str(i)], [c["id"] for c in norm_dims[i]], ids_by_dim[i + 2],
                f"modification {name!r} level {i}") for i in levels}
            out.append({"name": name, "s": item["s"], "t": item["t"], "comps": norm})
        data["modifications"] = sorted(out, key=lambda m: m["name"])

    return GraphDocument(data)


def load_document(source) -> GraphDocument:
    """parse() for a path or an open stream."""
    if hasattr(source, "read"):
        return parse(source.read())
    with open(source, "rb") as fh:
        return parse(fh.read())


def serialize(doc: GraphDocument) -> bytes:
    return (json.dumps(doc.data, sort_keys=True, indent=2, ensure_ascii=True)
            + "\n").encode("utf-8")


def _default_ids(G: NGraph):
    return tuple(tuple(f"c{d}_{i}" for i in range(G.count(d)))
                 for d in range(G.n + 1))


def build_document(G: NGraph, vtables=(), htables=(), cotables=(),
                   flags: AxiomFlags | None = None,
                   morphisms=None, transformations=None,
                   modifications=None) -> GraphDocument:
    """Assemble a document around a carrier, naming cells c<dim>_<index>.

    The morphism sections take {name: object} mappings; every object must
    live on this carrier (endomorphisms in the case of graph morphisms).
    """
    ids = _default_ids(G)
    dims = []
    for d in range(G.n + 1):
        row = []
        for i in range(G.count(d)):
            if d == 0:
                cell = {"id": ids[0][i], "src": G.src_map(0)[i], "tgt": G.tgt_map(0)[i]}
            else:
                cell = {"id": ids[d][i], "src": ids[d - 1][G.src_map(d)[i]],
                        "tgt": ids[d - 1][G.tgt_map(d)[i]]}
            lab = G.label(CellId(d, i))
            if lab is not None:
                cell["label"] = lab
            row.append(cell)
        dims.append(row)
    identities = [{ids[d][i]: ids[d + 1][up] for i, up in enumerate(G.idn_map(d))}
                  for d in range(G.n)]
    data = {"format_version": FORMAT_VERSION, "n": G.n,
            "tail": {"minus_one": G.tail.minus_one_count},
            "dims": dims, "identities": identities}

    tables = []
    for t in vtables:
        d = t.level + 1
        kind = MINUS_ONE if t.level == -1 else VERTICAL
        tables.append({"kind": kind, "level": t.level, "entries": sorted(
            [ids[d][a], ids[d][b], ids[d][v]] for (a, b), v in t.entries.items())})
    for t in htables:
        d = t.level + 2
        tables.append({"kind": HORIZONTAL, "level": t.level, "entries": sorted(
            [ids[d][a], ids[d][b], ids[d][v]] for (a, b), v in t.entries.items())})
    for t in cotables:
        d = t.level + 1
        tables.append({"kind": CO, "level": t.level, "entries": sorted(
            [ids[d][z], ids[t.level][w], ids[d][p], ids[d][q]]
            for z, (w, p, q) in t.entries.items())})
    if tables:
        data["tables"] = sorted(tables, key=lambda t: (_KIND_ORDER[t["kind"]], t["level"]))

    if flags is not None and any(flags.names()):
        data["flags"] = list(flags.names())

    if morphisms:
        data["morphisms"] = sorted((
            {"name": name,
             "comps": [{ids[d][i]: ids[d][m.comps[d][i]] for i in range(G.count(d))}
                       for d in range(G.n + 1)]}
            for name, m in morphisms.items()), key=lambda m: m["name"])
    if transformations:
        out = []
        for name, (fname, gname, t) in transformations.items():
            comps = {str(i): {ids[i][x]: ids[i + 1][t.comps[i][x]]
                              for x in range(G.count(i))} for i in t.levels}
            out.append({"name": name, "f": fname, "g": gname,
                        "levels": list(t.levels), "comps": comps})
        data["transformations"] = sorted(out, key=lambda t: t["name"])
    if modifications:
        out = []
        for name, (sname, tname, md) in modifications.items():
            levels = md.s.levels
            comps = {str(i): {ids[i][x]: ids[i + 2][md.comps[i][x]]
                              for x in range(G.count(i))} for i in levels}
            out.append({"name": name, "s": sname, "t": tname, "comps": comps})
        data["modifications"] = sorted(out, key=lambda m: m["name"])

    return GraphDocument(data)


def document_from_graph(G: NGraph) -> GraphDocument:
    return build_document(G)


def document_from_structure(S: CategoryStructure) -> GraphDocument:
    return build_document(S.graph, S.vtables.values(), S.htables.values(),
                          flags=S.flags)


def _json_value(v, name_of):
    if isinstance(v, CellId):
        return name_of(v)
    if isinstance(v, (tuple, list)):
        return [_json_value(x, name_of) for x in v]
    if v is None or isinstance(v, (bool, int, str)):
        return v
    return str(v)


def _counterexample_json(ce: Counterexample, name_of):
    out = {"kind": ce.kind, "cells": [_json_value(c, name_of) for c in ce.cells]}
    if ce.expected is not None:
        out["expected"] = _json_value(ce.expected, name_of)
    if ce.actual is not None:
        out["actual"] = _json_value(ce.actual, name_of)
    return out


def report_document(report: AxiomReport | None = None, name_of=None,
                    counts: dict | None = None, **extra) -> dict:
    """Render checker output as the machine-readable report dict.

    ``name_of`` maps CellId to the string used in the file; the default is
    the generated c<dim>_<index> scheme.  Extra keyword fields (exhausted,
    nodes, elapsed, limit_exceeded, ...) are copied in verbatim.
    """
    if name_of is None:
        name_of = lambda z: f"tail_{z.index}" if z.dim < 0 else f"c{z.dim}_{z.index}"
    doc = {"format_version": FORMAT_VERSION, "kind": "report"}
    verdict = "pass"
    if report is not None:
        checks = []
        for c in report.checks:
            rec = {"axiom": c.axiom, "verdict": c.verdict,
                   "counterexamples": [_counterexample_json(x, name_of)
                                       for x in c.counterexamples],
                   "asymmetric": [_counterexample_json(x, name_of)
                                  for x in c.asymmetric]}
            if c.level is not None:
                rec["level"] = c.level
            if c.notes:
                rec["notes"] = list(c.notes)
            checks.append(rec)
        doc["checks"] = checks
        if not report.passed:
            verdict = "fail"
    if counts is not None:
        doc["counts"] = counts
    doc.update(extra)
    if extra.get("limit_exceeded"):
        verdict = "limit"
    doc["verdict"] = verdict
    return doc


def exit_code(report: dict) -> int:
    """0 pass, 1 a check failed, 3 a budget was exhausted."""
    v = report.get("verdict")
    if v == "limit":
        return 3
    return 0 if v == "pass" else 1
