"""Text formats: graphs, MOL V2000 records, weight tables and result records.

Graph format, one item per line, ``#`` starts a comment::

    g <n> <m>
    v <id> <label>
    e <u> <v> <label>

The header comes first. Every id in ``0..n-1`` is declared by exactly one
``v`` line and there are exactly ``m`` distinct ``e`` lines. Labels are
whitespace-free tokens.

Weight format::

    v <label_g> <label_h> <score|x>
    e <label_g> <label_h> <score|x>

``x`` marks a forbidden pair; unlisted pairs are forbidden as well.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

from .graph import GraphError, LabeledGraph
from .weights import FORBIDDEN, WeightFn

__all__ = [
    "ParseError",
    "parse_graph",
    "write_graph",
    "parse_molfile",
    "parse_sdf",
    "parse_weights",
    "ResultRecord",
    "RESULT_SCHEMA",
    "record_to_json",
    "record_from_json",
]


class ParseError(ValueError):
    """Malformed input; ``line`` is 1-based, or None when not tied to a line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body.split()


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", no) from None


def parse_graph(text: str) -> LabeledGraph:
    """Parse the ``g``/``v``/``e`` graph format.

    Raises
    ------
    ParseError
        At the first offending line: missing or repeated header, unknown
        record, wrong field count, id out of range, vertex declared twice,
        self-loop, duplicate edge, or counts that disagree with the header.

    Examples
    --------
    >>> g = parse_graph("g 3 3\\nv 0 C\\nv 1 C\\nv 2 O\\ne 0 1 -\\ne 1 2 -\\ne 0 2 -")
    >>> g.n, g.m
    (3, 3)
    """
    n = m = None
    header_line = None
    labels: list = []
    edges = []
    seen = set()
    last = 0
    for no, tok in _lines(text):
        last = no
        kind = tok[0]
        if kind == "g":
            if n is not None:
                raise ParseError("second header", no)
            if len(tok) != 3:
                raise ParseError("header needs 'g <n> <m>'", no)
            n, m = _int(tok[1], no, "n"), _int(tok[2], no, "m")
            if n < 0 or m < 0:
                raise ParseError("counts must be non-negative", no)
            header_line = no
            labels = [None] * n
            continue
        if n is None:
            raise ParseError("expected header 'g <n> <m>' first", no)
        if kind == "v":
            if len(tok) != 3:
                raise ParseError("vertex needs 'v <id> <label>'", no)
            v = _int(tok[1], no, "vertex id")
            if not 0 <= v < n:
                raise ParseError(f"vertex id {v} out of range 0..{n - 1}", no)
            if labels[v] is not None:
                raise ParseError(f"vertex {v} declared twice", no)
            labels[v] = tok[2]
        elif kind == "e":
            if len(tok) != 4:
                raise ParseError("edge needs 'e <u> <v> <label>'", no)
            u, v = _int(tok[1], no, "edge endpoint"), _int(tok[2], no, "edge endpoint")
            for x in (u, v):
                if not 0 <= x < n:
                    raise ParseError(f"edge endpoint {x} out of range 0..{n - 1}", no)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", no)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(f"duplicate edge ({u}, {v})", no)
            seen.add(key)
            edges.append((u, v, tok[3]))
        else:
            raise ParseError(f"unknown record {kind!r}", no)
    if n is None:
        raise ParseError("missing header 'g <n> <m>'")
    missing = [v for v, lab in enumerate(labels) if lab is None]
    if missing:
        raise ParseError(f"header declares {n} vertices but vertex {missing[0]} is missing", last)
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges but {len(edges)} were given", header_line)
    return LabeledGraph(labels, edges)


def write_graph(g: LabeledGraph) -> str:
    """Serialize ``g`` so that ``parse_graph(write_graph(g)) == g``.

    Raises
    ------
    ValueError
        If a label is empty or contains whitespace or ``#``.
    """
    out = [f"g {g.n} {g.m}"]
    for v, lab in enumerate(g.vertex_labels):
        out.append(f"v {v} {_token(lab)}")
    for u, v in g.edge_list:
        out.append(f"e {u} {v} {_token(g.edge_labels[(u, v)])}")
    return "\n".join(out) + "\n"


def _token(lab) -> str:
    s = str(lab)
    if not s or "#" in s or any(c.isspace() for c in s):
        raise ValueError(f"label {s!r} is not a single token")
    return s


def parse_molfile(text: str) -> LabeledGraph:
    """Parse one MOL V2000 record.

    Atoms become vertices labelled by element symbol, bonds become edges
    labelled by the bond type digit. Hydrogens are kept as written.

    Raises
    ------
    ParseError
        If the counts line, atom block or bond block is malformed.
    """
    lines = text.splitlines()
    if len(lines) < 4:
        raise ParseError("record shorter than the header and counts line")
    counts = lines[3]
    if "V3000" in counts:
        raise ParseError("V3000 records are not supported", 4)
    try:
        n_atoms, n_bonds = int(counts[0:3]), int(counts[3:6])
    except ValueError:
        raise ParseError("counts line must start with two 3-column integers", 4) from None
    if len(lines) < 4 + n_atoms + n_bonds:
        raise ParseError(f"expected {n_atoms} atom and {n_bonds} bond lines", len(lines))
    labels = []
    for i in range(n_atoms):
        no = 5 + i
        line = lines[4 + i]
        sym = line[31:34].strip() if len(line) >= 34 else ""
        if not sym or not sym[0].isalpha():
            parts = line.split()
            if len(parts) < 4:
                raise ParseError("atom line needs coordinates and a symbol", no)
            sym = parts[3]
        labels.append(sym)
    edges = []
    for i in range(n_bonds):
        no = 5 + n_atoms + i
        line = lines[4 + n_atoms + i]
        try:
            a, b, t = int(line[0:3]), int(line[3:6]), int(line[6:9])
        except ValueError:
            parts = line.split()
            if len(parts) < 3:
                raise ParseError("bond line needs two atoms and a type", no) from None
            try:
                a, b, t = int(parts[0]), int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("bond fields must be integers", no) from None
        for x in (a, b):
            if not 1 <= x <= n_atoms:
                raise ParseError(f"bond atom {x} out of range 1..{n_atoms}", no)
        edges.append((a - 1, b - 1, str(t)))
    try:
        return LabeledGraph(labels, edges)
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def parse_sdf(text: str) -> list:
    """All records of an SDF file (records end at ``$$$$``); data items are ignored."""
    out = []
    chunk: list = []
    for line in text.splitlines():
        if line.strip() == "$$$$":
            out.append(parse_molfile("\n".join(chunk)))
            chunk = []
        else:
            chunk.append(line)
    if any(line.strip() for line in chunk):
        out.append(parse_molfile("\n".join(chunk)))
    return out


def parse_weights(text: str, name: str = "file") -> WeightFn:
    """Weight table; unlisted pairs are FORBIDDEN.

    Raises
    ------
    ParseError
        On unknown records, wrong field counts, negative or non-numeric scores,
        or a pair listed twice.
    """
    tables: dict = {"v": {}, "e": {}}
    for no, tok in _lines(text):
        if tok[0] not in tables:
            raise ParseError(f"unknown record {tok[0]!r}", no)
        if len(tok) != 4:
            raise ParseError(f"expected '{tok[0]} <label_g> <label_h> <score|x>'", no)
        key = (tok[1], tok[2])
        if key in tables[tok[0]]:
            raise ParseError(f"pair {key} listed twice", no)
        if tok[3] == "x":
            score = FORBIDDEN
        else:
            try:
                score = float(tok[3])
            except ValueError:
                raise ParseError(f"score must be a number or x, got {tok[3]!r}", no) from None
            if not math.isfinite(score) or score < 0:
                raise ParseError(f"score must be finite and non-negative, got {tok[3]}", no)
            if score.is_integer():
                score = int(score)
        tables[tok[0]][key] = score
    return WeightFn.from_tables(tables["v"], tables["e"], name)


@dataclass
class ResultRecord:
    """One computation between two inputs, as printed by the command line tool.

    ``checks`` holds the independent checker's verdicts plus
    ``weight_consistent``, which compares the reported weight with the one
    recomputed from ``vertex_map``.
    """

    g: str
    h: str
    weight: float
    vertex_map: list
    mapped_edges: int
    elapsed_us: int
    checks: dict = field(default_factory=dict)
    kind: str = "bbp"

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


RESULT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ResultRecord",
    "type": "object",
    "required": ["g", "h", "weight", "vertex_map", "mapped_edges", "elapsed_us", "checks", "kind"],
    "additionalProperties": False,
    "properties": {
        "g": {"type": "string"},
        "h": {"type": "string"},
        "weight": {"type": "number", "minimum": 0},
        "vertex_map": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "mapped_edges": {"type": "integer", "minimum": 0},
        "elapsed_us": {"type": "integer", "minimum": 0},
        "checks": {
            "type": "object",
            "additionalProperties": {"type": "boolean"},
        },
        "kind": {"enum": ["bbp", "2mcis"]},
    },
}


def record_to_json(rec: ResultRecord) -> str:
    """One line of JSON following ``RESULT_SCHEMA``; keys in schema order."""
    d = asdict(rec)
    d["vertex_map"] = [list(p) for p in rec.vertex_map]
    return json.dumps(d, separators=(",", ":"))


def record_from_json(line: str) -> ResultRecord:
    d = json.loads(line)
    d["vertex_map"] = [tuple(p) for p in d["vertex_map"]]
    return ResultRecord(**d)
