"""Readers and writers for the on-disk artifacts.

All formats are text, diffable and deterministic: fixed orders, numeric
literals emitted with nine fractional digits.

Matrix CSV (metrics and relations)
    First row: empty corner, then column identifiers.  Each further row:
    row identifier, then value literals.  Lines starting with ``#`` and
    blank lines are ignored.  Metrics are square with equal row/column
    identifiers; relation files use source elements as rows and target
    elements as columns.

Predicate CSV
    Two columns per row: element identifier, value literal.

Description CSV
    Two columns per row: object identifier, data element identifier.

Scale JSON
    Quantale tag, data/term spaces (metric inline or ``"discrete"``) and
    per-term memberships as a literal table or, for numeric algebras and
    numeric data identifiers, piecewise-linear ``breakpoints``.

Context bundle JSON
    Quantale tag plus relative paths of the three matrix CSVs (objects,
    attributes, incidence).

Lattice JSON / DOT
    Concept vectors with the specialization metric; the DOT export draws
    the covering edges of the crisp specialization order only.
"""
from __future__ import annotations

import csv
import io
import json
import os
from typing import Sequence

from .concepts import Concept, ConceptLattice, FormalContext, hasse_edges
from .errors import ParseError, StructuralError
from .predicates import VPredicate, extension
from .quantale import CostReal, Fuzzy01, Quantale, Value, quantale_from_name
from .relations import VRelation
from .scales import LinguisticVariable, make_variable, piecewise_linear
from .spaces import ApproximationSpace, VSpace, discrete_space


def _read_rows(path: str) -> list[tuple[int, list[str]]]:
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            cells = next(csv.reader([line]))
            rows.append((lineno, [c.strip() for c in cells]))
    return rows


def _parse_cell(q: Quantale, text: str, path: str, line: int, column: int) -> Value:
    try:
        return q.parse(text)
    except Exception as exc:
        raise ParseError(str(exc), path=path, line=line, column=column) from None


def read_matrix_file(path: str, q: Quantale):
    """Returns (row_ids, col_ids, matrix)."""
    rows = _read_rows(path)
    if not rows:
        raise ParseError("empty matrix file", path=path)
    header_line, header = rows[0]
    if header[0] != "":
        raise ParseError("matrix header must start with an empty corner cell", path=path, line=header_line, column=1)
    col_ids = tuple(header[1:])
    row_ids = []
    matrix = []
    for lineno, cells in rows[1:]:
        if len(cells) != len(col_ids) + 1:
            raise ParseError(
                f"expected {len(col_ids) + 1} cells, got {len(cells)}",
                path=path,
                line=lineno,
            )
        row_ids.append(cells[0])
        matrix.append(
            tuple(
                _parse_cell(q, cell, path, lineno, col + 2)
                for col, cell in enumerate(cells[1:])
            )
        )
    return tuple(row_ids), col_ids, tuple(matrix)


def write_matrix_file(path, row_ids, col_ids, matrix, q: Quantale) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([""] + list(col_ids))
        for rid, row in zip(row_ids, matrix):
            writer.writerow([rid] + [q.format(v) for v in row])


def read_space_file(path: str, q: Quantale) -> VSpace:
    row_ids, col_ids, matrix = read_matrix_file(path, q)
    if row_ids != col_ids:
        raise StructuralError(f"{path}: metric row and column identifiers differ")
    return VSpace(q, row_ids, matrix)


def read_approximation_space_file(path: str, q: Quantale) -> ApproximationSpace:
    return ApproximationSpace.from_space(read_space_file(path, q))


def write_space_file(path: str, s: VSpace) -> None:
    write_matrix_file(path, s.elements, s.elements, s.metric, s.quantale)


def read_relation_file(path: str, source: VSpace, target: VSpace) -> VRelation:
    row_ids, col_ids, matrix = read_matrix_file(path, source.quantale)
    if row_ids != source.elements:
        raise StructuralError(f"{path}: rows do not match the source space elements")
    if col_ids != target.elements:
        raise StructuralError(f"{path}: columns do not match the target space elements")
    return VRelation(source, target, matrix)


def write_relation_file(path: str, r: VRelation) -> None:
    write_matrix_file(path, r.source.elements, r.target.elements, r.matrix, r.quantale)


def read_predicate_file(path: str, space: VSpace) -> VPredicate:
    q = space.quantale
    rows = _read_rows(path)
    values: dict[str, Value] = {}
    for lineno, cells in rows:
        if len(cells) != 2:
            raise ParseError("predicate rows have exactly two cells", path=path, line=lineno)
        name, literal = cells
        if name in values:
            raise ParseError(f"duplicate element {name!r}", path=path, line=lineno, column=1)
        if name not in space.elements:
            raise ParseError(f"unknown element {name!r}", path=path, line=lineno, column=1)
        values[name] = _parse_cell(q, literal, path, lineno, 2)
    missing = [x for x in space.elements if x not in values]
    if missing:
        raise StructuralError(f"{path}: missing values for {missing}")
    return VPredicate(space, tuple(values[x] for x in space.elements))


def write_predicate_file(path: str, p: VPredicate) -> None:
    q = p.quantale
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for x, v in zip(p.space.elements, p.values):
            writer.writerow([x, q.format(v)])


def read_description_file(path: str) -> tuple[tuple[str, str], ...]:
    rows = _read_rows(path)
    seen = set()
    out = []
    for lineno, cells in rows:
        if len(cells) != 2:
            raise ParseError("description rows have exactly two cells", path=path, line=lineno)
        obj, datum = cells
        if obj in seen:
            raise ParseError(f"duplicate object {obj!r}", path=path, line=lineno, column=1)
        seen.add(obj)
        out.append((obj, datum))
    return tuple(out)


def write_description_file(path: str, pairs: Sequence[tuple[str, str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for obj, datum in pairs:
            writer.writerow([obj, datum])


def _space_from_json(q: Quantale, node: dict, path: str) -> ApproximationSpace:
    elements = tuple(str(e) for e in node["elements"])
    metric = node.get("metric", "discrete")
    if metric == "discrete":
        return discrete_space(q, elements)
    rows = tuple(
        tuple(_parse_cell(q, str(cell), path, 0, j + 1) for j, cell in enumerate(row))
        for row in metric
    )
    return ApproximationSpace(q, elements, rows)


def _space_to_json(s: VSpace) -> dict:
    q = s.quantale
    return {
        "elements": list(s.elements),
        "metric": [[q.format(v) for v in row] for row in s.metric],
    }


def read_scale_file(path: str, repair: bool = False) -> LinguisticVariable:
    """Parse and validate a scale; raises ValidationFailure when invalid."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc), path=path, line=exc.lineno, column=exc.colno) from None
    try:
        q = quantale_from_name(doc["quantale"])
        data = _space_from_json(q, doc["data"], path)
        terms = _space_from_json(q, doc["terms"], path)
        membership = doc["membership"]
    except KeyError as exc:
        raise ParseError(f"scale file is missing {exc}", path=path) from None
    rows = []
    for term in terms.elements:
        if term not in membership:
            raise ParseError(f"no membership for term {term!r}", path=path)
        spec = membership[term]
        if "table" in spec:
            table = spec["table"]
            missing = [d for d in data.elements if d not in table]
            if missing:
                raise ParseError(
                    f"membership table for {term!r} is missing {missing}", path=path
                )
            rows.append(
                tuple(_parse_cell(q, str(table[d]), path, 0, 1) for d in data.elements)
            )
        elif "breakpoints" in spec:
            if not isinstance(q, (Fuzzy01, CostReal)):
                raise ParseError(
                    "breakpoints need a numeric quantale (fuzzy or cost)", path=path
                )
            try:
                xs = [float(d) for d in data.elements]
            except ValueError:
                raise ParseError(
                    "breakpoints need numeric data identifiers", path=path
                ) from None
            f = piecewise_linear([(float(x), float(y)) for x, y in spec["breakpoints"]])
            rows.append(tuple(f(x) for x in xs))
        else:
            raise ParseError(
                f"membership for {term!r} needs a table or breakpoints", path=path
            )
    return make_variable(terms, data, rows, repair=repair)


def write_scale_file(path: str, var: LinguisticVariable) -> None:
    q = var.quantale
    doc = {
        "quantale": q.name,
        "data": _space_to_json(var.data_domain),
        "terms": _space_to_json(var.terms),
        "membership": {
            term: {
                "table": {
                    d: q.format(var.assignment.matrix[i][j])
                    for j, d in enumerate(var.data_domain.elements)
                }
            }
            for i, term in enumerate(var.terms.elements)
        },
    }
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_context_bundle(out_dir: str, ctx: FormalContext, name: str = "context") -> str:
    os.makedirs(out_dir, exist_ok=True)
    write_space_file(os.path.join(out_dir, "objects.csv"), ctx.objects)
    write_space_file(os.path.join(out_dir, "attributes.csv"), ctx.attributes)
    write_matrix_file(
        os.path.join(out_dir, "incidence.csv"),
        ctx.objects.elements,
        ctx.attributes.elements,
        ctx.incidence.matrix,
        ctx.quantale,
    )
    bundle_path = os.path.join(out_dir, f"{name}.json")
    doc = {
        "quantale": ctx.quantale.name,
        "objects": "objects.csv",
        "attributes": "attributes.csv",
        "incidence": "incidence.csv",
    }
    with open(bundle_path, "w", encoding="utf-8", newline="") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return bundle_path


def read_context_bundle(bundle_path: str) -> FormalContext:
    with open(bundle_path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc), path=bundle_path, line=exc.lineno, column=exc.colno) from None
    try:
        q = quantale_from_name(doc["quantale"])
        base = os.path.dirname(os.path.abspath(bundle_path))
        objects = read_approximation_space_file(os.path.join(base, doc["objects"]), q)
        attributes = read_approximation_space_file(os.path.join(base, doc["attributes"]), q)
        incidence = read_relation_file(os.path.join(base, doc["incidence"]), objects, attributes)
    except KeyError as exc:
        raise ParseError(f"context bundle is missing {exc}", path=bundle_path) from None
    return FormalContext(objects, attributes, incidence)


def write_lattice_json(path: str, lattice: ConceptLattice) -> None:
    q = lattice.context.quantale
    doc = {
        "quantale": q.name,
        "objects": list(lattice.context.objects.elements),
        "attributes": list(lattice.context.attributes.elements),
        "grid": [q.format(v) for v in lattice.grid],
        "concepts": [
            {
                "extent": [q.format(v) for v in c.extent.values],
                "intent": [q.format(v) for v in c.intent.values],
            }
            for c in lattice.concepts
        ],
        "order_metric": [[q.format(v) for v in row] for row in lattice.order_metric],
    }
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_lattice_json(path: str, ctx: FormalContext) -> ConceptLattice:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc), path=path, line=exc.lineno, column=exc.colno) from None
    q = ctx.quantale
    if doc.get("quantale") != q.name:
        raise StructuralError(f"{path}: lattice quantale differs from the context's")
    if tuple(doc.get("objects", ())) != ctx.objects.elements or tuple(
        doc.get("attributes", ())
    ) != ctx.attributes.elements:
        raise StructuralError(f"{path}: lattice does not match the context's elements")
    concepts = tuple(
        Concept(
            VPredicate(ctx.objects, tuple(q.parse(v) for v in node["extent"])),
            VPredicate(ctx.attributes, tuple(q.parse(v) for v in node["intent"])),
        )
        for node in doc["concepts"]
    )
    order = tuple(tuple(q.parse(v) for v in row) for row in doc["order_metric"])
    grid = tuple(q.parse(v) for v in doc["grid"])
    return ConceptLattice(ctx, concepts, order, grid)


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def write_lattice_dot(path: str, lattice: ConceptLattice) -> None:
    """Covering edges of the crisp specialization order, specific below."""
    q = lattice.context.quantale
    out = io.StringIO()
    out.write("digraph concepts {\n  rankdir=BT;\n  node [shape=box];\n")
    for i, c in enumerate(lattice.concepts):
        ext = ",".join(extension(c.extent))
        intent = ",".join(extension(c.intent))
        label = f"c{i}\\n{{{ext}}} / {{{intent}}}"
        out.write(f"  c{i} [label={_dot_quote(label)}];\n")
    for i, j in hasse_edges(lattice):
        value = lattice.order_metric[i][j]
        if q.equiv(value, q.unit):
            out.write(f"  c{i} -> c{j};\n")
        else:
            out.write(f"  c{i} -> c{j} [label={_dot_quote(q.format(value))}];\n")
    out.write("}\n")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(out.getvalue())
