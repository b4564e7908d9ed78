"""Context and lattice import/export: Burmeister CXT, CSV, DOT and JSON."""
from __future__ import annotations

import csv
import io
import json
from typing import List

from .context import FormalContext
from .lattice import ConceptLattice


class CxtFormatError(ValueError):
    pass


def to_cxt(ctx: FormalContext) -> str:
    lines = ["B", "", str(len(ctx.objects)), str(len(ctx.attributes)), ""]
    lines += list(ctx.objects)
    lines += list(ctx.attributes)
    lines += ["".join("X" if x else "." for x in row) for row in ctx.incidence]
    return "\n".join(lines) + "\n"


def from_cxt(text: str) -> FormalContext:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "B":
        raise CxtFormatError("CXT data must start with a line containing 'B'")
    pos = 1
    counts: List[int] = []
    # optional name line, then the two counts, blank lines skipped
    while pos < len(lines) and len(counts) < 2:
        line = lines[pos].strip()
        pos += 1
        if not line:
            continue
        if line.isdigit():
            counts.append(int(line))
        elif counts:
            raise CxtFormatError(f"line {pos}: expected attribute count, got {line!r}")
    if len(counts) < 2:
        raise CxtFormatError("missing object/attribute counts")
    n_obj, n_attr = counts
    while pos < len(lines) and not lines[pos].strip():
        pos += 1
    body = lines[pos:]
    need = n_obj + n_attr + n_obj
    if len(body) < need:
        raise CxtFormatError(f"expected {need} lines after the header, found {len(body)}")
    objects = [x.strip() for x in body[:n_obj]]
    attributes = [x.strip() for x in body[n_obj:n_obj + n_attr]]
    rows = []
    for k, line in enumerate(body[n_obj + n_attr:need]):
        line = line.rstrip()
        if len(line) > n_attr:
            raise CxtFormatError(f"incidence row {k + 1}: {len(line)} cells for {n_attr} attributes")
        if len(line) < n_attr:
            line = line.ljust(n_attr, ".")
        if any(ch not in "Xx." for ch in line[:n_attr]):
            raise CxtFormatError(f"incidence row {k + 1}: only 'X' and '.' allowed")
        rows.append(tuple(ch in "Xx" for ch in line[:n_attr]))
    return FormalContext(tuple(objects), tuple(attributes), tuple(rows))


def to_csv(ctx: FormalContext) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(ctx.attributes))
    for g, row in zip(ctx.objects, ctx.incidence):
        writer.writerow([g] + ["X" if x else "" for x in row])
    return buf.getvalue()


def from_csv(text: str) -> FormalContext:
    reader = list(csv.reader(io.StringIO(text)))
    if not reader:
        raise ValueError("empty CSV")
    header = reader[0][1:]
    objects, rows = [], []
    for line in reader[1:]:
        if not line:
            continue
        cells = (line[1:] + [""] * len(header))[:len(header)]
        objects.append(line[0])
        rows.append(tuple(c.strip().upper() in ("X", "1", "TRUE") for c in cells))
    return FormalContext(tuple(objects), tuple(header), tuple(rows))


def context_to_json(ctx: FormalContext) -> str:
    return json.dumps({
        "objects": list(ctx.objects),
        "attributes": list(ctx.attributes),
        "incidence": [[int(x) for x in row] for row in ctx.incidence],
    }, indent=2) + "\n"


def context_from_json(text: str) -> FormalContext:
    d = json.loads(text)
    return FormalContext(tuple(d["objects"]), tuple(d["attributes"]),
                         tuple(tuple(bool(x) for x in row) for row in d["incidence"]))


def reduced_labels(lattice: ConceptLattice, ctx: FormalContext):
    """(attribute labels, object labels) per concept index, reduced labelling."""
    attr_labels = {i: [] for i in range(len(lattice.concepts))}
    obj_labels = {i: [] for i in range(len(lattice.concepts))}
    for a in ctx.attributes:
        attr_labels[lattice.index_of_extent(ctx.extent([a]))].append(a)
    for g in ctx.objects:
        obj_labels[lattice.index_of_intent(ctx.intent([g]))].append(g)
    return attr_labels, obj_labels


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def lattice_to_dot(lattice: ConceptLattice, ctx: FormalContext, name: str = "lattice") -> str:
    attr_labels, obj_labels = reduced_labels(lattice, ctx)
    out = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    for i in range(len(lattice.concepts)):
        parts = []
        if attr_labels[i]:
            parts.append(", ".join(attr_labels[i]))
        if obj_labels[i]:
            parts.append(", ".join(obj_labels[i]))
        out.append(f"  c{i} [label={_quote(chr(10).join(parts))}];")
    for lo, up in lattice.covers:
        out.append(f"  c{lo} -> c{up};")
    out.append("}")
    return "\n".join(out) + "\n"


def lattice_to_json(lattice: ConceptLattice, ctx: FormalContext) -> str:
    attr_labels, obj_labels = reduced_labels(lattice, ctx)
    return json.dumps({
        "objects": list(ctx.objects),
        "attributes": list(ctx.attributes),
        "concepts": [
            {
                "index": i,
                "extent": sorted(c.extent, key=ctx.objects.index),
                "intent": sorted(c.intent, key=ctx.attributes.index),
                "introduces_attributes": attr_labels[i],
                "introduces_objects": obj_labels[i],
            }
            for i, c in enumerate(lattice.concepts)
        ],
        "covers": [list(p) for p in lattice.covers],
        "top": lattice.top,
        "bottom": lattice.bottom,
    }, indent=2) + "\n"
