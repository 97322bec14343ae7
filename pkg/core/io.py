"""Текстовые и JSON-форматы q-графов и паттернов"""

import json
import re
from pathlib import Path
from typing import Any, Dict, Iterator, List, Tuple, Union

import structlog

from core.errors import FormatError, PatternError, ValidationError
from core.pattern import PatternGraph, named_pattern
from core.qgraph import QEdge, QGraph

logger = structlog.get_logger()

PathLike = Union[str, Path]

_HEADER_FIELD = re.compile(r"^([a-z]+)=(\d+)$")


# ===== ОБЩИЙ РАЗБОР =====

def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    """Непустые строки без комментариев (#) с номерами от 1."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def parse_header(line: str, number: int, kind: str, fields: Tuple[str, ...]) -> Dict[str, int]:
    """Разбирает заголовок вида `<kind> a=1 b=2` и возвращает значения полей."""
    tokens = line.split()
    if not tokens or tokens[0] != kind:
        raise FormatError(f"expected header '{kind} " + " ".join(f"{f}=<{f}>" for f in fields) + "'", number)

    values: Dict[str, int] = {}
    for token in tokens[1:]:
        match = _HEADER_FIELD.match(token)
        if not match:
            raise FormatError(f"malformed header field {token!r}", number)
        values[match.group(1)] = int(match.group(2))

    if set(values) != set(fields):
        raise FormatError(f"header must define exactly {', '.join(fields)}", number)
    return values


def parse_int_row(line: str, number: int, width: int) -> List[int]:
    tokens = line.split()
    if len(tokens) != width:
        raise FormatError(f"expected {width} integers, got {len(tokens)}", number)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"non-integer value in {line!r}", number) from None


def read_text(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror or e}") from None
    except UnicodeDecodeError as e:
        raise FormatError(f"{path} is not valid UTF-8 text: byte {e.start}") from None


def split_header(text: str) -> Tuple[Tuple[int, str], List[Tuple[int, str]]]:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty input: header line missing", 1)
    return lines[0], lines[1:]


# ===== Q-ГРАФЫ =====

def parse_qgraph(text: str) -> QGraph:
    (hnum, header), body = split_header(text)
    params = parse_header(header, hnum, "qgraph", ("n", "q"))
    n, q = params["n"], params["q"]
    if q < 1:
        raise FormatError(f"q must be positive, got {q}", hnum)

    edges = set()
    for number, line in body:
        u, v, a, b = parse_int_row(line, number, 4)
        if not (1 <= u < v <= n):
            raise FormatError(f"support ({u},{v}) must satisfy 1 <= u < v <= {n}", number)
        if not (1 <= a <= q and 1 <= b <= q):
            raise FormatError(f"weights ({a},{b}) out of range 1..{q}", number)
        edge = QEdge(u, v, a, b)
        if edge in edges:
            raise FormatError(f"duplicate q-edge {u} {v} {a} {b}", number)
        edges.add(edge)

    return QGraph(n, q, frozenset(edges))


def format_qgraph(host: QGraph) -> str:
    lines = [f"qgraph n={host.n} q={host.q}"]
    lines.extend(f"{e.u} {e.v} {e.a} {e.b}" for e in host.sorted_edges())
    return "\n".join(lines) + "\n"


def read_qgraph(path: PathLike) -> QGraph:
    host = parse_qgraph(read_text(path))
    logger.debug("📥 q-graph loaded", path=str(path), n=host.n, q=host.q, edges=len(host))
    return host


def write_qgraph(host: QGraph, path: PathLike) -> None:
    Path(path).write_text(format_qgraph(host), encoding="utf-8")
    logger.info("💾 q-graph written", path=str(path), n=host.n, q=host.q, edges=len(host))


def qgraph_to_json(host: QGraph) -> Dict[str, Any]:
    return {"n": host.n, "q": host.q, "edges": [list(e) for e in host.sorted_edges()]}


def qgraph_from_json(data: Dict[str, Any]) -> QGraph:
    try:
        n, q = int(data["n"]), int(data["q"])
        edges = [QEdge(*(int(x) for x in row)) for row in data.get("edges", [])]
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed q-graph JSON: {e}") from None
    if len(set(edges)) != len(edges):
        raise FormatError("duplicate q-edge in JSON edge list")
    try:
        return QGraph(n, q, frozenset(edges))
    except ValidationError as e:
        raise FormatError(str(e)) from None


# ===== ПАТТЕРНЫ =====

def parse_pattern(text: str) -> PatternGraph:
    (hnum, header), body = split_header(text)
    n = parse_header(header, hnum, "graph", ("n",))["n"]

    edges = set()
    for number, line in body:
        u, v = parse_int_row(line, number, 2)
        if u == v:
            raise FormatError(f"loop at vertex {u}", number)
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"edge ({u},{v}) outside 1..{n}", number)
        pair = (min(u, v), max(u, v))
        if pair in edges:
            raise FormatError(f"duplicate edge {pair[0]} {pair[1]}", number)
        edges.add(pair)

    return PatternGraph(n, frozenset(edges))


def format_pattern(graph: PatternGraph) -> str:
    lines = [f"graph n={graph.n}"]
    lines.extend(f"{u} {v}" for u, v in graph.sorted_edges())
    return "\n".join(lines) + "\n"


def read_pattern(path: PathLike) -> PatternGraph:
    return parse_pattern(read_text(path))


def write_pattern(graph: PatternGraph, path: PathLike) -> None:
    Path(path).write_text(format_pattern(graph), encoding="utf-8")
    logger.info("💾 Pattern written", path=str(path), n=graph.n, edges=len(graph))


def pattern_to_json(graph: PatternGraph) -> Dict[str, Any]:
    return {"n": graph.n, "edges": [list(e) for e in graph.sorted_edges()]}


def pattern_from_json(data: Dict[str, Any]) -> PatternGraph:
    try:
        n = int(data["n"])
        edges = [(int(u), int(v)) for u, v in data.get("edges", [])]
        return PatternGraph.from_edges(n, edges)
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed pattern JSON: {e}") from None
    except ValidationError as e:
        raise FormatError(str(e)) from None


def resolve_pattern(ref: str) -> PatternGraph:
    """Файл паттерна, если он существует, иначе встроенное имя (c3, k333, star4 ...)."""
    path = Path(ref)
    if path.is_file():
        return read_pattern(path)
    try:
        return named_pattern(ref)
    except PatternError:
        raise FormatError(f"{ref!r} is neither a pattern file nor a built-in pattern name") from None


def dump_json(payload: Any) -> str:
    return json.dumps(payload, ensure_ascii=False, sort_keys=True)
