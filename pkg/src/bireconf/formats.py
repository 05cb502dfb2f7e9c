"""Plain-text file formats: instances, sequences and certificates.

Instance files are small YAML documents::

    graph: triangle.txt          # path (relative to this file), or inline:
    # graph: {n: 3, edges: [[0, 1], [1, 2], [0, 2]]}
    property: clique 2
    rule: tj
    start: [0, 1]
    target: [1, 2]

Sequence files hold one configuration per line as sorted, space-separated ids.
"""

from __future__ import annotations

from pathlib import Path

import yaml

from .errors import ParseError
from .explorer import Instance, Sequence
from .graph_core import (
    EdgeVertex,
    OriginalVertex,
    VertexOrigin,
    build_graph,
    build_H,
    config_key,
    parse_graph,
    read_graph,
)
from .properties import parse_property, parse_rule
from .reductions import ReductionCert, unlocked_biclique


def _ids(value, field: str, source: str) -> frozenset[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
        raise ParseError(f"`{field}` must be a list of vertex ids", source=source)
    return frozenset(value)


def _graph_field(value, base: Path, source: str):
    if isinstance(value, dict):
        try:
            return build_graph(int(value["n"]), value.get("edges") or [])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad inline graph: {exc}", source=source) from None
    if isinstance(value, str):
        if "\n" in value:
            return parse_graph(value, source=f"{source} (inline graph)")
        path = Path(value)
        if not path.is_absolute():
            path = base / path
        if not path.exists():
            raise ParseError(f"graph file {value!r} not found", source=source)
        return read_graph(path)
    raise ParseError("`graph` must be a path, an inline text block or a mapping with n and edges", source=source)


def parse_instance(text: str, base: Path = Path("."), source: str = "<instance>") -> Instance:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(f"invalid YAML: {getattr(exc, 'problem', exc)}", mark.line + 1 if mark else None, source) from None
    if not isinstance(doc, dict):
        raise ParseError("instance must be a mapping", source=source)
    missing = [k for k in ("graph", "property", "rule", "start", "target") if k not in doc]
    if missing:
        raise ParseError(f"missing field(s): {', '.join(missing)}", source=source)
    graph = _graph_field(doc["graph"], base, source)
    try:
        spec = parse_property(str(doc["property"]))
        rule = parse_rule(str(doc["rule"]))
    except ParseError as exc:
        raise ParseError(str(exc), source=source) from None
    start = _ids(doc["start"], "start", source)
    target = _ids(doc["target"], "target", source)
    return Instance(graph, spec, rule, start, target)


def read_instance(path: str | Path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read instance: {exc.strerror}", source=str(path)) from None
    return parse_instance(text, path.parent, str(path))


def format_ids(s) -> str:
    return " ".join(map(str, config_key(s)))


def format_instance(inst: Instance) -> str:
    g = inst.graph
    edges = ", ".join(f"[{u}, {v}]" for u, v in g.sorted_edges)
    return (
        f"graph:\n  n: {g.n}\n  edges: [{edges}]\n"
        f"property: {inst.spec}\n"
        f"rule: {inst.rule}\n"
        f"start: [{', '.join(map(str, config_key(inst.start)))}]\n"
        f"target: [{', '.join(map(str, config_key(inst.target)))}]\n"
    )


def write_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(format_instance(inst))


def parse_sequence(text: str, source: str = "<sequence>") -> Sequence:
    seq = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            seq.append(frozenset(int(x) for x in line.split()))
        except ValueError:
            raise ParseError(f"malformed configuration line {line!r}", lineno, source) from None
    return seq


def format_sequence(seq: Sequence) -> str:
    return "".join(format_ids(s) + "\n" for s in seq)


def read_sequence(path: str | Path) -> Sequence:
    path = Path(path)
    try:
        return parse_sequence(path.read_text(), str(path))
    except OSError as exc:
        raise ParseError(f"cannot read sequence: {exc.strerror}", source=str(path)) from None


def write_sequence(seq: Sequence, path: str | Path) -> None:
    Path(path).write_text(format_sequence(seq))


# -- certificates ------------------------------------------------------------

def format_certificate(cert: ReductionCert, source_path: str, produced_path: str) -> str:
    lines = [
        "# clr2bbr reduction certificate",
        f"source: {source_path}",
        f"produced: {produced_path}",
        f"removed_start: {cert.removed_start}",
        f"removed_target: {cert.removed_target}",
        "origin:",
    ]
    lines.extend(f"{hid} -> {cert.origin[hid]}" for hid in sorted(cert.origin))
    return "\n".join(lines) + "\n"


def _parse_origin(token: str) -> VertexOrigin:
    kind, _, rest = token.partition(":")
    if kind == "v":
        return OriginalVertex(int(rest))
    if kind == "e":
        u, v = rest.split(",")
        return EdgeVertex(int(u), int(v))
    raise ValueError(f"unknown origin {token!r}")


def read_certificate(path: str | Path) -> ReductionCert:
    """Load a certificate and the two instances it names, checking consistency."""
    path = Path(path)
    src = str(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read certificate: {exc.strerror}", source=src) from None
    fields: dict[str, str] = {}
    origin: dict[int, VertexOrigin] = {}
    in_origin = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if in_origin and "->" in line:
                left, right = (part.strip() for part in line.split("->"))
                origin[int(left)] = _parse_origin(right)
                continue
            key, sep, value = line.partition(":")
            if not sep:
                raise ValueError("expected `key: value`")
            key = key.strip()
            if key == "origin":
                in_origin = True
                continue
            fields[key] = value.strip()
        except ValueError as exc:
            raise ParseError(str(exc), lineno, src) from None
    for key in ("source", "produced", "removed_start", "removed_target"):
        if key not in fields:
            raise ParseError(f"missing field `{key}`", source=src)
    source = read_instance(path.parent / fields["source"])
    produced = read_instance(path.parent / fields["produced"])
    try:
        w_start, w_target = int(fields["removed_start"]), int(fields["removed_target"])
    except ValueError:
        raise ParseError("removed vertices must be integers", source=src) from None
    cert = ReductionCert(source, produced, origin, w_start, w_target)
    _check_certificate(cert, src)
    return cert


def _check_certificate(cert: ReductionCert, src: str) -> None:
    g = cert.source.graph
    h, origin = build_H(g)
    if origin != cert.origin:
        raise ParseError("origin map does not match the source graph", source=src)
    if h.graph != cert.produced.graph:
        raise ParseError("produced graph is not H of the source graph", source=src)
    ids = cert.edge_ids
    for label, clique, w, got in (
        ("start", cert.source.start, cert.removed_start, cert.produced.start),
        ("target", cert.source.target, cert.removed_target, cert.produced.target),
    ):
        if w in clique or not (0 <= w < g.n):
            raise ParseError(f"removed_{label} {w} is not a V-side vertex outside the clique", source=src)
        if unlocked_biclique(g, ids, clique, w) != got:
            raise ParseError(f"produced {label} does not match the source clique", source=src)


def write_certificate(cert: ReductionCert, path: str | Path, source_path: str, produced_path: str) -> None:
    Path(path).write_text(format_certificate(cert, source_path, produced_path))

