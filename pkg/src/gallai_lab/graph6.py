"""graph6 encoding and decoding (short form only, order <= 62).

Format (B. McKay): one size byte ``order + 63``, then the upper triangle of the
adjacency matrix in column-major order -- x(0,1), x(0,2), x(1,2), x(0,3), ... --
packed six bits per byte, most significant bit first, each byte offset by 63.
The last byte is zero-padded.
"""
from __future__ import annotations

from .errors import Graph6Error, InvalidByte, MalformedHeader, OrderTooLarge, TruncatedBody
from .graph import Graph

HEADER = ">>graph6<<"
MAX_ORDER = 62


def _body_length(order: int) -> int:
    return (order * (order - 1) // 2 + 5) // 6


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    s = text.rstrip("\r\n")
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise MalformedHeader("empty graph6 line")
    data = s.encode("ascii", errors="replace")
    size = data[0]
    if size == 126:
        raise MalformedHeader("long-form graph6 (order > 62) is not supported")
    if not 63 <= size <= 125:
        raise MalformedHeader(f"size byte {size!r} outside 63..125")
    order = size - 63
    body = data[1:]
    for pos, b in enumerate(body, start=1):
        if not 63 <= b <= 126:
            raise InvalidByte(f"byte {b!r} at offset {pos} outside 63..126")
    need = _body_length(order)
    if len(body) < need:
        raise TruncatedBody(f"order {order} needs {need} body bytes, got {len(body)}")
    if len(body) > need:
        raise Graph6Error(f"order {order} needs {need} body bytes, got {len(body)}")

    bits = 0
    for b in body:
        bits = (bits << 6) | (b - 63)
    nbits = order * (order - 1) // 2
    pad = 6 * need - nbits
    if bits & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    bits >>= pad

    edges = []
    k = nbits - 1
    for j in range(1, order):
        for i in range(j):
            if (bits >> k) & 1:
                edges.append((i, j))
            k -= 1
    return Graph.from_edges(order, edges)


def to_graph6(g: Graph) -> str:
    if g.order > MAX_ORDER:
        raise OrderTooLarge(f"order {g.order} > {MAX_ORDER}")
    out = [chr(g.order + 63)]
    acc = nacc = 0
    for j in range(1, g.order):
        nb = g.adjacency[j]
        for i in range(j):
            acc = (acc << 1) | (i in nb)
            nacc += 1
            if nacc == 6:
                out.append(chr(acc + 63))
                acc = nacc = 0
    if nacc:
        out.append(chr((acc << (6 - nacc)) + 63))
    return "".join(out)
