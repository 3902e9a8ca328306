"""Graph text format and run reports.

Graph files are line oriented, vertices 1-indexed::

    format-version 1
    # comment
    p <n> <m> <W>
    e <u> <v> <w>
    o <v> <neighbor> <neighbor> ...

``o`` lines are optional and pin the order of a vertex's adjacency list.
Parallel ``e`` lines are summed. Reports are JSON documents whose first key is
``format-version``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from stmincut.graph import GraphError, WeightedGraph, canonical

FORMAT_VERSION = 1
REPORT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_graph(text: str) -> tuple[WeightedGraph, list[list[int]] | None]:
    """Parse a graph file; returns the graph and the pinned adjacency order, if any.

    Unpinned vertices keep ascending neighbor order when some are pinned.
    """
    n = None
    acc: dict[tuple[int, int], int] = {}
    pinned: dict[int, tuple[list[int], int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        tag, rest = tok[0], tok[1:]
        if tag == "format-version":
            (ver,) = _ints(rest, lineno) if len(rest) == 1 else (None,)
            if ver != FORMAT_VERSION:
                raise ParseError(f"unsupported format version {' '.join(rest)}", lineno)
        elif tag == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(rest) not in (1, 2, 3):
                raise ParseError("problem line needs 'p <n> <m> <W>'", lineno)
            vals = _ints(rest, lineno)
            if vals[0] < 0:
                raise ParseError("negative vertex count", lineno)
            n = vals[0]
        elif tag == "e":
            if n is None:
                raise ParseError("edge before problem line", lineno)
            if len(rest) != 3:
                raise ParseError("edge line needs 'e <u> <v> <w>'", lineno)
            u, v, w = _ints(rest, lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            if w < 0:
                raise ParseError("negative weight", lineno)
            key = canonical(u - 1, v - 1)
            acc[key] = acc.get(key, 0) + w
        elif tag == "o":
            if n is None:
                raise ParseError("order line before problem line", lineno)
            vals = _ints(rest, lineno)
            if not vals or not 1 <= vals[0] <= n:
                raise ParseError("order line needs a vertex in range", lineno)
            if any(not 1 <= x <= n for x in vals[1:]):
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            if vals[0] - 1 in pinned:
                raise ParseError(f"duplicate order line for vertex {vals[0]}", lineno)
            pinned[vals[0] - 1] = ([x - 1 for x in vals[1:]], lineno)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing problem line", 0)
    try:
        G = WeightedGraph(n, acc)
    except (GraphError, OverflowError) as exc:
        raise ParseError(str(exc), 0) from None
    if not pinned:
        return G, None
    order = [list(G.neighbors(v)) for v in range(n)]
    for v, (lst, lineno) in pinned.items():
        if sorted(lst) != G.neighbors(v):
            raise ParseError(f"order for vertex {v + 1} is not a permutation of its neighbors", lineno)
        order[v] = lst
    return G, order


def emit_graph(G: WeightedGraph, order=None, comment: str | None = None) -> str:
    lines = [f"format-version {FORMAT_VERSION}"]
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"p {G.n} {G.m} {G.W}")
    lines.extend(f"e {u + 1} {v + 1} {w}" for u, v, w in G.edges())
    if order is not None:
        for v, lst in enumerate(order):
            lines.append(" ".join(["o", str(v + 1), *(str(x + 1) for x in lst)]))
    return "\n".join(lines) + "\n"


@dataclass
class RunReport:
    """Result of one CLI run. Vertex ids in ``result`` are 1-indexed."""

    command: str
    instance: dict
    config: dict
    result: dict
    stage_stats: dict = field(default_factory=dict)
    ledger: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    format_version: int = REPORT_VERSION

    def to_dict(self) -> dict:
        return {
            "format-version": self.format_version,
            "command": self.command,
            "instance": self.instance,
            "config": self.config,
            "result": self.result,
            "stage_stats": self.stage_stats,
            "ledger": self.ledger,
            "timing": self.timing,
        }

    @classmethod
    def from_dict(cls, d: dict) -> RunReport:
        if d.get("format-version") != REPORT_VERSION:
            raise ValueError(f"unsupported report version {d.get('format-version')!r}")
        return cls(
            command=d["command"],
            instance=d["instance"],
            config=d["config"],
            result=d["result"],
            stage_stats=d.get("stage_stats", {}),
            ledger=d.get("ledger", {}),
            timing=d.get("timing", {}),
            format_version=d["format-version"],
        )


def emit_report(report: RunReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def parse_report(text: str) -> RunReport:
    return RunReport.from_dict(json.loads(text))
