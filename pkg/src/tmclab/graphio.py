"""graph6 and edge-list reading/writing.

graph6 here covers n <= 62 (single size byte). Bits follow the standard
column order x(0,1), x(0,2), x(1,2), x(0,3), ... packed six per byte.
"""

from __future__ import annotations

from .graph import Graph


class GraphFormatError(ValueError):
    def __init__(self, msg: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            msg = f"{msg} (byte offset {offset})"
        super().__init__(msg)


def _bit_pairs(n: int):
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string", 0)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"character {ch!r} outside the graph6 range 63..126", k)
    n = ord(s[0]) - 63
    if n > 62:
        raise GraphFormatError("multi-byte size prefix (n > 62) is not supported", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(s) - 1 != nbytes:
        raise GraphFormatError(
            f"expected {nbytes} data bytes for n={n}, found {len(s) - 1}", min(len(s), 1 + nbytes)
        )
    edges = []
    for idx, (i, j) in enumerate(_bit_pairs(n)):
        byte = ord(s[1 + idx // 6]) - 63
        if byte >> (5 - idx % 6) & 1:
            edges.append((i, j))
    pad = nbytes * 6 - nbits
    if pad:
        last = ord(s[-1]) - 63
        if last & ((1 << pad) - 1):
            raise GraphFormatError("padding bits are not zero", len(s) - 1)
    return Graph(n, tuple(edges))


def emit_graph6(G: Graph) -> str:
    if G.n > 62:
        raise ValueError("graph6 output is limited to n <= 62")
    es = G.edge_set
    bits = [1 if (i, j) in es else 0 for i, j in _bit_pairs(G.n)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(G.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_edgelist(text: str) -> Graph:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        n, m = (int(x) for x in lines[0].split())
    except ValueError:
        raise GraphFormatError("first line must be 'n m'") from None
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header says m={m} but {len(lines) - 1} edge lines follow")
    edges = []
    for k, ln in enumerate(lines[1:], start=2):
        try:
            u, v = (int(x) for x in ln.split())
        except ValueError:
            raise GraphFormatError(f"line {k}: expected 'u v'") from None
        if not 0 <= u < v < n:
            raise GraphFormatError(f"line {k}: need 0 <= u < v < n, got {u} {v}")
        edges.append((u, v))
    try:
        return Graph(n, tuple(edges))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def emit_edgelist(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def detect_format(text: str) -> str:
    first = text.lstrip()[:1]
    return "edgelist" if first.isdigit() else "graph6"


def read_graph(text: str, fmt: str | None = None) -> Graph:
    fmt = fmt or detect_format(text)
    if fmt == "graph6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise GraphFormatError(f"expected one graph6 line, found {len(lines)}")
        return parse_graph6(lines[0])
    if fmt == "edgelist":
        return parse_edgelist(text)
    raise ValueError(f"unknown format {fmt!r}")


def write_graph(G: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return emit_graph6(G) + "\n"
    if fmt == "edgelist":
        return emit_edgelist(G)
    raise ValueError(f"unknown format {fmt!r}")
