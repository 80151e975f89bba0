"""Immutable simple graphs, construction operators and text formats.

Vertices are dense integers ``0..n-1``.  Vertex sets are passed around as
plain iterables of ints or as int bitmasks (bit ``v`` set means ``v`` is in
the set); :func:`to_mask` converts between the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

VertexSet = Union[int, Iterable[int]]

GRAPH6_MAX_N = 62


class GraphFormatError(ValueError):
    """Malformed edge-list or graph6 input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def to_mask(vertices: VertexSet) -> int:
    if isinstance(vertices, int):
        return vertices
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def mask_members(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with sorted, duplicate-free edges ``(u, v)``, ``u < v``.

    Build through :meth:`from_edges` unless the edge tuple is already
    normalized; the constructor only validates.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        prev = None
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge {e} not normalized or out of range for n={self.n}")
            if prev is not None and e <= prev:
                raise ValueError("edges must be sorted and duplicate-free")
            prev = e

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex index out of range in edge ({u}, {v}) for n={n}")
            norm.add((u, v) if u < v else (v, u))
        return cls(n, tuple(sorted(norm)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        return tuple(to_mask(a) for a in self.adjacency)

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted((len(a) for a in self.adjacency), reverse=True))

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def empty_graph(n: int = 0) -> Graph:
    return Graph(n, ())


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


def thorn(g: Graph) -> Graph:
    """Attach one pendant vertex ``n + v`` to every vertex ``v``."""
    n = g.n
    return Graph.from_edges(2 * n, list(g.edges) + [(v, n + v) for v in range(n)])


def remove_vertices(g: Graph, removed: VertexSet) -> tuple[Graph, list[int]]:
    """Induced subgraph on the surviving vertices, renumbered in order.

    Returns the subgraph and the index map ``new -> old``.
    """
    mask = to_mask(removed)
    keep = [v for v in range(g.n) if not mask >> v & 1]
    new_index = {old: new for new, old in enumerate(keep)}
    edges = [
        (new_index[u], new_index[v])
        for u, v in g.edges
        if u in new_index and v in new_index
    ]
    return Graph(len(keep), tuple(sorted(edges))), keep


def is_independent(g: Graph, vertices: VertexSet) -> bool:
    mask = to_mask(vertices)
    nbrs = g.neighbor_masks
    for v in mask_members(mask):
        if nbrs[v] & mask:
            return False
    return True


# --- edge-list text ------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` followed by one ``u v`` pair per line; ``#`` lines are comments."""
    n = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise GraphFormatError(f"unparsable token in {line!r}", lineno) from None
        if n is None:
            if len(values) != 1 or values[0] < 0:
                raise GraphFormatError("expected a single non-negative vertex count", lineno)
            n = values[0]
            continue
        if len(values) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        u, v = values
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex index out of range (n={n})", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        edges.add((min(u, v), max(u, v)))
    if n is None:
        raise GraphFormatError("missing vertex count")
    return Graph(n, tuple(sorted(edges)))


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


# --- graph6 --------------------------------------------------------------


def graph6_encode(g: Graph) -> bytes:
    n = g.n
    if n > GRAPH6_MAX_N:
        raise ValueError(f"graph6 codec supports n <= {GRAPH6_MAX_N}, got {n}")
    edge_set = set(g.edges)
    bits = [1 if (i, j) in edge_set else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = bytearray([63 + n])
    for k in range(0, len(bits), 6):
        chunk = 0
        for b in bits[k:k + 6]:
            chunk = chunk << 1 | b
        out.append(63 + chunk)
    return bytes(out)


def graph6_decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data:
        raise GraphFormatError("empty graph6 string")
    for byte in data:
        if byte < 63 or byte > 126:
            raise GraphFormatError(f"graph6 byte {byte} outside 63..126")
    n = data[0] - 63
    if n > GRAPH6_MAX_N:
        # 126 introduces the multi-byte size form
        raise GraphFormatError(f"graph6 codec supports n <= {GRAPH6_MAX_N}")
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = data[1:]
    if len(body) < nbytes:
        raise GraphFormatError("truncated graph6 bit stream")
    if len(body) > nbytes:
        raise GraphFormatError("trailing bytes after graph6 bit stream")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, tuple(sorted(edges)))
