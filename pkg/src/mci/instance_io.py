"""Plain-text instance files.

Line 1 holds `n m`; each of the following m lines holds one hyperedge
as `k v1 ... vk` with 1-based vertices and single spaces. Lines starting
with `#` and blank lines are ignored anywhere. Written files list each
hyperedge's vertices in ascending order, so write/parse round-trips are
byte-stable.
"""

from __future__ import annotations

from .hypergraph import Hypergraph


class InstanceFormatError(ValueError):
    """Malformed instance text; carries the offending 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceFormatError(line, f"{what} is not an integer: {token!r}") from None


def parse_instance(text: str) -> Hypergraph:
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rows.append((lineno, stripped.split()))
    if not rows:
        raise InstanceFormatError(1, "missing 'n m' header")
    header_line, header = rows[0]
    if len(header) != 2:
        raise InstanceFormatError(header_line, "header must be 'n m'")
    n = _int(header[0], header_line, "vertex count")
    m = _int(header[1], header_line, "hyperedge count")
    if n < 1:
        raise InstanceFormatError(header_line, f"vertex count must be positive, got {n}")
    if m < 0:
        raise InstanceFormatError(header_line, f"hyperedge count must be >= 0, got {m}")
    body = rows[1:]
    if len(body) < m:
        last = body[-1][0] if body else header_line
        raise InstanceFormatError(last, f"expected {m} hyperedge lines, found {len(body)}")
    if len(body) > m:
        raise InstanceFormatError(body[m][0], f"expected only {m} hyperedge lines")
    hyperedges = []
    for lineno, tokens in body:
        size = _int(tokens[0], lineno, "hyperedge size")
        verts = [_int(t, lineno, "vertex") for t in tokens[1:]]
        if size != len(verts):
            raise InstanceFormatError(
                lineno, f"size {size} but {len(verts)} vertices listed"
            )
        if size < 1:
            raise InstanceFormatError(lineno, "hyperedge must be nonempty")
        if len(set(verts)) != len(verts):
            raise InstanceFormatError(lineno, "duplicate vertex in hyperedge")
        for v in verts:
            if not 1 <= v <= n:
                raise InstanceFormatError(lineno, f"vertex {v} outside 1..{n}")
        hyperedges.append(verts)
    return Hypergraph(n, hyperedges)


def write_instance(h: Hypergraph) -> str:
    lines = [f"{h.n} {h.m}"]
    for s in h.hyperedges:
        verts = sorted(s)
        lines.append(" ".join(str(t) for t in [len(verts), *verts]))
    return "\n".join(lines) + "\n"
