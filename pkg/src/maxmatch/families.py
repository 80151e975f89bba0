"""Generators for the parameterized graph families.

Vertex layouts (0-based, all deterministic):

path            v_i = i, edges (i, i+1)
cycle           path plus (0, n-1); n >= 3
wheel           hub 0, rim 1..n-1 as a cycle; n >= 4 vertices in total
complete        K_n
complete-bipartite
                K_{n,n}: sides 0..n-1 and n..2n-1
thorn-*         thorn of the base graph: pendant of v is n + v
hexagon-chain   hexagon i (0-based) owns 6i..6i+5 in ring order; bridge from
                ring position s of hexagon i to position 0 of hexagon i+1
c4-chain        4-cycle i owns 4i..4i+3; bridge from position s to position 0
                of the next square
triangle-chain  spine 0, 2, ..., 2n; apex of triangle i is 2i+1, joined to
                spine vertices 2i and 2i+2 (consecutive triangles share a vertex)
clique-pendant-chain
                block i owns (s+1)i..(s+1)i+s: the clique is the first s of
                them with v_i at offset 0, pendant w_i at offset s;
                v_i -- v_{i+1}
clique-link-chain
                block i owns s*i..s*i+s-1 as a clique; offset 0 is v_{i,1},
                offset 1 is v_{i,2}; v_{i,2} -- v_{i+1,1}
ladder          rungs (2i, 2i+1); rails 2i -- 2i+2 and 2i+1 -- 2i+3
caterpillar-tree
                spine 0..3n-3; leaf 3n-2+i hangs off spine vertex 3i
thorn-complete-bipartite
                thorn of K_{c,n} with sides 0..c-1 and c..c+n-1
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .graph import Graph, thorn


class FamilyError(ValueError):
    """Unknown family id, or parameters/index outside the family's range."""


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def wheel_graph(n: int) -> Graph:
    rim = n - 1
    edges = [(0, i) for i in range(1, n)]
    edges += [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    return Graph.from_edges(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def _ring(base: int, size: int) -> list[tuple[int, int]]:
    return [(base + i, base + (i + 1) % size) for i in range(size)]


def hexagon_chain(n: int, s: int) -> Graph:
    edges = []
    for i in range(n):
        edges += _ring(6 * i, 6)
        if i + 1 < n:
            edges.append((6 * i + s, 6 * (i + 1)))
    return Graph.from_edges(6 * n, edges)


def c4_chain(n: int, s: int) -> Graph:
    edges = []
    for i in range(n):
        edges += _ring(4 * i, 4)
        if i + 1 < n:
            edges.append((4 * i + s, 4 * (i + 1)))
    return Graph.from_edges(4 * n, edges)


def triangle_chain(n: int) -> Graph:
    edges = []
    for i in range(n):
        a, t, b = 2 * i, 2 * i + 1, 2 * i + 2
        edges += [(a, t), (t, b), (a, b)]
    return Graph.from_edges(2 * n + 1, edges)


def clique_pendant_chain(n: int, s: int) -> Graph:
    width = s + 1
    edges = []
    for i in range(n):
        base = width * i
        edges += [(base + a, base + b) for a in range(s) for b in range(a + 1, s)]
        edges.append((base, base + s))
        if i + 1 < n:
            edges.append((base, base + width))
    return Graph.from_edges(width * n, edges)


def clique_link_chain(n: int, s: int) -> Graph:
    edges = []
    for i in range(n):
        base = s * i
        edges += [(base + a, base + b) for a in range(s) for b in range(a + 1, s)]
        if i + 1 < n:
            edges.append((base + 1, base + s))
    return Graph.from_edges(s * n, edges)


def ladder(n: int) -> Graph:
    edges = [(2 * i, 2 * i + 1) for i in range(n)]
    for i in range(n - 1):
        edges += [(2 * i, 2 * i + 2), (2 * i + 1, 2 * i + 3)]
    return Graph.from_edges(2 * n, edges)


def caterpillar_tree(n: int) -> Graph:
    spine = 3 * n - 2
    edges = [(i, i + 1) for i in range(spine - 1)]
    edges += [(3 * i, spine + i) for i in range(n)]
    return Graph.from_edges(4 * n - 2, edges)


def _ceil_half(x: int) -> int:
    return -(-x // 2)


@dataclass(frozen=True)
class FamilyEntry:
    """A concrete family member generator plus its matching metadata.

    ``c`` is the limit of nu(G_n)/n; ``nu_offset`` bounds |nu(G_n) - c*n|.
    ``profile_rule`` is ``recurrence:<key>``, ``closed-form:<rule>`` or
    ``enumeration-only``.
    """

    id: str
    params: dict = field(default_factory=dict)
    generator: Callable[[int], Graph] = field(default=None, compare=False, repr=False)
    nu_of: Callable[[int], int] = field(default=None, compare=False, repr=False)
    c: Fraction = Fraction(0)
    n_min: int = 1
    profile_rule: str = "enumeration-only"
    nu_offset: int = 1
    label: str = ""

    def generate(self, n: int) -> Graph:
        if n < self.n_min:
            raise FamilyError(f"{self.label}: n must be >= {self.n_min}, got {n}")
        return self.generator(n)


FAMILY_IDS = (
    "path", "cycle", "wheel", "complete", "complete-bipartite",
    "thorn-path", "thorn-cycle", "thorn-complete",
    "hexagon-chain", "c4-chain", "triangle-chain",
    "clique-pendant-chain", "clique-link-chain",
    "ladder", "thorn-ladder", "caterpillar-tree", "thorn-complete-bipartite",
)

ALIASES = {"trees": "caterpillar-tree", "tree": "caterpillar-tree"}

# which parameter each family takes, with its allowed range
_PARAMS = {
    "hexagon-chain": ("s", lambda s: s in (1, 2, 3)),
    "c4-chain": ("s", lambda s: s in (1, 2)),
    "clique-pendant-chain": ("s", lambda s: s >= 1),
    "clique-link-chain": ("s", lambda s: s >= 2),
    "thorn-complete-bipartite": ("c", lambda c: c >= 0),
}


def canonical_id(family_id: str) -> str:
    fid = ALIASES.get(family_id, family_id)
    if fid not in FAMILY_IDS:
        raise FamilyError(f"unknown family {family_id!r}; valid ids: {', '.join(FAMILY_IDS)}")
    return fid


def _check_params(fid: str, params: dict) -> dict:
    wanted = _PARAMS.get(fid)
    clean = {k: v for k, v in params.items() if v is not None}
    if wanted is None:
        if clean:
            raise FamilyError(f"{fid} takes no parameters, got {sorted(clean)}")
        return {}
    name, ok = wanted
    extra = set(clean) - {name}
    if extra:
        raise FamilyError(f"{fid} takes only parameter {name!r}, got {sorted(extra)}")
    if name not in clean:
        raise FamilyError(f"{fid} needs parameter {name!r}")
    value = int(clean[name])
    if not ok(value):
        raise FamilyError(f"{fid}: parameter {name}={value} out of range")
    return {name: value}


def family_metadata(family_id: str, params: dict | None = None) -> FamilyEntry:
    fid = canonical_id(family_id)
    p = _check_params(fid, params or {})
    s = p.get("s")
    half = Fraction(1, 2)

    if fid == "path":
        return FamilyEntry(fid, p, path_graph, lambda n: n // 2, half, 0, "recurrence:path", label="path")
    if fid == "cycle":
        return FamilyEntry(fid, p, cycle_graph, lambda n: n // 2, half, 3, "recurrence:cycle", label="cycle")
    if fid == "wheel":
        return FamilyEntry(fid, p, wheel_graph, lambda n: n // 2, half, 4, "closed-form:wheel", label="wheel")
    if fid == "complete":
        return FamilyEntry(fid, p, complete_graph, lambda n: n // 2, half, 1, "closed-form:complete",
                           label="complete")
    if fid == "complete-bipartite":
        return FamilyEntry(fid, p, lambda n: complete_bipartite_graph(n, n), lambda n: n, Fraction(1), 1,
                           "closed-form:complete-bipartite", 0, label="complete-bipartite")
    if fid == "thorn-path":
        return FamilyEntry(fid, p, lambda n: thorn(path_graph(n)), lambda n: n, Fraction(1), 0,
                           "recurrence:thorn-path", 0, label="thorn-path")
    if fid == "thorn-cycle":
        return FamilyEntry(fid, p, lambda n: thorn(cycle_graph(n)), lambda n: n, Fraction(1), 3,
                           "recurrence:thorn-cycle", 0, label="thorn-cycle")
    if fid == "thorn-complete":
        return FamilyEntry(fid, p, lambda n: thorn(complete_graph(n)), lambda n: n, Fraction(1), 1,
                           "enumeration-only", 0, label="thorn-complete")
    if fid == "hexagon-chain":
        return FamilyEntry(fid, p, lambda n: hexagon_chain(n, s), lambda n: 3 * n, Fraction(3), 0,
                           f"recurrence:hexagon-chain{s}", 0, label=f"hexagon-chain s={s}")
    if fid == "c4-chain":
        return FamilyEntry(fid, p, lambda n: c4_chain(n, s), lambda n: 2 * n, Fraction(2), 0,
                           f"recurrence:c4-chain{s}", 0, label=f"c4-chain s={s}")
    if fid == "triangle-chain":
        return FamilyEntry(fid, p, triangle_chain, lambda n: n, Fraction(1), 0,
                           "recurrence:triangle-chain", 0, label="triangle-chain")
    if fid == "clique-pendant-chain":
        k = _ceil_half(s)
        return FamilyEntry(fid, p, lambda n: clique_pendant_chain(n, s), lambda n: k * n, Fraction(k), 0,
                           f"recurrence:clique-pendant-chain{s}", 0, label=f"clique-pendant-chain s={s}")
    if fid == "clique-link-chain":
        return FamilyEntry(fid, p, lambda n: clique_link_chain(n, s), lambda n: n * s // 2, Fraction(s, 2), 0,
                           f"recurrence:clique-link-chain{s}", 1, label=f"clique-link-chain s={s}")
    if fid == "ladder":
        return FamilyEntry(fid, p, ladder, lambda n: n, Fraction(1), 0, "recurrence:ladder", 0, label="ladder")
    if fid == "thorn-ladder":
        return FamilyEntry(fid, p, lambda n: thorn(ladder(n)), lambda n: 2 * n, Fraction(2), 0,
                           "recurrence:thorn-ladder", 0, label="thorn-ladder")
    if fid == "caterpillar-tree":
        return FamilyEntry(fid, p, caterpillar_tree, lambda n: 2 * n - 1, Fraction(2), 1,
                           "recurrence:caterpillar-tree", 1, label="caterpillar-tree")
    # thorn-complete-bipartite
    c = p["c"]
    return FamilyEntry(fid, p, lambda n: thorn(complete_bipartite_graph(c, n)), lambda n: n + c, Fraction(1), 1,
                       f"closed-form:thorn-complete-bipartite{c}", max(1, c), label=f"thorn-complete-bipartite c={c}")


def generate(family_id: str, params: dict | None, n: int) -> Graph:
    return family_metadata(family_id, params).generate(n)
