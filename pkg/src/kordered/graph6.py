"""graph6 codec (McKay's format) plus a plain edge-list text format.

graph6 packs the upper triangle of the adjacency matrix in column order
(0,1),(0,2),(1,2),(0,3),... into 6-bit groups, each printed as one byte
in the range 63..126.  The optional ``>>graph6<<`` header is accepted on
decode and never emitted.

The secondary text format is one integer header line with the vertex
count followed by one ``u v`` edge per line, 0-indexed.  Blank lines and
lines starting with ``#`` are ignored on parse.
"""

from __future__ import annotations

from .core import Graph


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


_HEADER = ">>graph6<<"


def _encode_size(n: int) -> bytes:
    if n < 0:
        raise Graph6Error("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    if n <= 68719476735:
        return bytes(
            [126, 126]
            + [((n >> shift) & 63) + 63 for shift in (30, 24, 18, 12, 6, 0)]
        )
    raise Graph6Error("vertex count too large for graph6")


def _decode_size(data: bytes) -> tuple[int, int]:
    """Return (n, number of bytes consumed)."""
    if not data:
        raise Graph6Error("empty graph6 string", 0)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated long-form size", len(data))
        n = 0
        for byte in data[2:8]:
            n = (n << 6) | (byte - 63)
        return n, 8
    if len(data) < 4:
        raise Graph6Error("truncated medium-form size", len(data))
    n = 0
    for byte in data[1:4]:
        n = (n << 6) | (byte - 63)
    return n, 4


def encode_graph6(g: Graph) -> str:
    """Encode a graph as a canonical graph6 string (no header)."""
    out = bytearray(_encode_size(g.n))
    buf = 0
    nbits = 0
    for col in range(1, g.n):
        col_bit = 1 << col
        for row in range(col):
            buf = (buf << 1) | (1 if g.adj[row] & col_bit else 0)
            nbits += 1
            if nbits == 6:
                out.append(buf + 63)
                buf = 0
                nbits = 0
    if nbits:
        out.append((buf << (6 - nbits)) + 63)
    return out.decode("ascii")


def decode_graph6(text: str) -> Graph:
    """Decode a graph6 string (optionally ``>>graph6<<``-headed)."""
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    try:
        data = s.encode("ascii")
    except UnicodeEncodeError as exc:
        raise Graph6Error("non-ASCII byte in graph6 input") from exc
    for i, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"byte {byte!r} outside graph6 alphabet", i)
    n, consumed = _decode_size(data)
    body = data[consumed:]
    nbits = n * (n - 1) // 2
    needed = (nbits + 5) // 6
    if len(body) != needed:
        raise Graph6Error(
            f"expected {needed} data bytes for n={n}, got {len(body)}",
            consumed + min(len(body), needed),
        )
    rows = [0] * n
    idx = 0
    for col in range(1, n):
        for row in range(col):
            byte = body[idx // 6]
            if (byte - 63) >> (5 - idx % 6) & 1:
                rows[row] |= 1 << col
                rows[col] |= 1 << row
            idx += 1
    # trailing padding must be zero
    if nbits % 6:
        tail = (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1)
        if tail:
            raise Graph6Error("non-zero padding bits", consumed + len(body) - 1)
    return Graph(n, tuple(rows))


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise ValueError(f"line {lineno}: expected vertex-count header")
            n = int(parts[0])
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v'")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ValueError("missing vertex-count header line")
    return Graph.from_edges(n, edges)
