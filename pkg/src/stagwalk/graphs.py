"""Graphs, clique tessellations, covers, and the two vertex rewrites on them.

Vertices are integer ids ``0..n-1``.  A polygon is an ordered,
duplicate-free tuple of vertices that must form a clique of its host
graph.  A tessellation partitions the vertex set into polygons
(singletons allowed), and a cover is an ordered list of tessellations
whose polygons jointly contain every edge.  The list order is the order
in which the reflection operators are applied, first entry first.

Two structure rewrites live here at the graph level:

* :func:`expand_vertex_graph` replaces one vertex by a clique, keeping
  all previous ids stable and appending the new ids at the end.
* :func:`reduce_intersection_graph` collapses a shared polygon
  intersection to its smallest member id and compacts the id space.

Both return a :class:`VertexMap` recording where every old id went, so
states can be transported across the rewrite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


def _canon_edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are stored canonically as ``(a, b)`` pairs with ``a < b``,
    each pair once.  Use :meth:`from_edges` to build from arbitrary
    pair iterables.
    """

    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError(f"edge ({a},{b}) out of range for n={self.n}")
            if a > b:
                raise ValueError(f"edge ({a},{b}) not in canonical (a<b) form")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        return cls(n, frozenset(_canon_edge(int(a), int(b)) for a, b in edges))

    def has_edge(self, a: int, b: int) -> bool:
        return _canon_edge(a, b) in self.edges

    def neighbors(self, v: int) -> set:
        nbrs = set()
        for a, b in self.edges:
            if a == v:
                nbrs.add(b)
            elif b == v:
                nbrs.add(a)
        return nbrs

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))


@dataclass(frozen=True)
class Tessellation:
    """A partition of the vertex set into cliques (polygons).

    Polygon vertex order is significant: polygon states align their
    amplitudes with it.
    """

    polygons: tuple

    @classmethod
    def from_lists(cls, polygons) -> "Tessellation":
        return cls(tuple(tuple(int(v) for v in p) for p in polygons))

    def polygon_of(self, v: int) -> int:
        """Index of the polygon containing v, or -1 if none does."""
        for i, poly in enumerate(self.polygons):
            if v in poly:
                return i
        return -1


@dataclass(frozen=True)
class TessellationCover:
    """Ordered list of tessellations; order is operator application order."""

    tessellations: tuple

    @classmethod
    def from_lists(cls, tessellations) -> "TessellationCover":
        return cls(tuple(Tessellation.from_lists(t) for t in tessellations))

    def __len__(self) -> int:
        return len(self.tessellations)


@dataclass
class ValidationReport:
    """Outcome of :func:`validate_cover`.

    violations is a list of ``(kind, offending_object)`` pairs with kind
    one of ``not-a-clique``, ``not-a-partition``, ``uncovered-edge``.
    All failures are enumerated, not just the first.
    """

    valid: bool
    violations: list
    notes: list = field(default_factory=list)


@dataclass(frozen=True)
class VertexMap:
    """Where each source vertex id went under a rewrite.

    ``images[v]`` is the tuple of target ids for source vertex ``v``.
    Expansion sends one vertex to several; reduction sends several
    vertices to one; every other vertex has a single image.
    """

    n_source: int
    n_target: int
    images: tuple
    notes: tuple = ()

    def image(self, v: int) -> tuple:
        return self.images[v]

    def compose(self, other: "VertexMap") -> "VertexMap":
        """Map through self, then through other."""
        if self.n_target != other.n_source:
            raise ValueError("maps are not composable: size mismatch")
        composed = tuple(
            tuple(sorted({w for mid in self.images[v] for w in other.images[mid]}))
            for v in range(self.n_source)
        )
        return VertexMap(self.n_source, other.n_target, composed,
                         self.notes + other.notes)

    def is_identity(self) -> bool:
        return (self.n_source == self.n_target and
                all(self.images[v] == (v,) for v in range(self.n_source)))

    @staticmethod
    def identity(n: int) -> "VertexMap":
        return VertexMap(n, n, tuple((v,) for v in range(n)))


def validate_cover(graph: Graph, cover: TessellationCover) -> ValidationReport:
    """Check the three cover invariants and enumerate every violation.

    A valid cover has (1) every polygon a clique of ``graph``, (2) every
    tessellation a partition of the full vertex set, and (3) every graph
    edge inside some polygon.  Failures are reported, never raised;
    out-of-range vertex ids are a precondition violation and do raise.
    """
    violations = []
    for t_idx, tess in enumerate(cover.tessellations):
        seen = {}
        for poly in tess.polygons:
            for v in poly:
                if not (0 <= v < graph.n):
                    raise ValueError(
                        f"vertex {v} out of range in tessellation {t_idx}")
                seen[v] = seen.get(v, 0) + 1
            if len(set(poly)) != len(poly):
                violations.append(("not-a-partition", (t_idx, tuple(poly))))
            for a, b in itertools.combinations(poly, 2):
                if a != b and not graph.has_edge(a, b):
                    violations.append(("not-a-clique", (t_idx, _canon_edge(a, b))))
        for v in range(graph.n):
            if seen.get(v, 0) != 1:
                violations.append(("not-a-partition", (t_idx, v)))

    for edge in sorted(graph.edges):
        a, b = edge
        covered = any(
            any(a in poly and b in poly for poly in tess.polygons)
            for tess in cover.tessellations
        )
        if not covered:
            violations.append(("uncovered-edge", edge))

    return ValidationReport(valid=not violations, violations=violations)


def build_star_s3() -> tuple:
    """Four-vertex star: leaves 0,1,2 around center 3, with its 3-tessellation cover.

    Tessellations are listed in application order: the one pairing the
    center with leaf 0 first, then leaf 1, then leaf 2.
    """
    graph = Graph.from_edges(4, [(0, 3), (1, 3), (2, 3)])
    cover = TessellationCover.from_lists([
        [[0, 3], [1], [2]],
        [[0], [1, 3], [2]],
        [[0], [1], [2, 3]],
    ])
    return graph, cover


def grid_vertex(n: int, q: int, x: int, y: int, k: int) -> int:
    """Row-major id of grid vertex (x, y, k): x*(4q*n) + y*(4q) + k."""
    return (x % n) * (4 * q * n) + (y % n) * (4 * q) + k


def grid_blue_polygon_index(n: int, x: int, y: int) -> int:
    """Index of the (x, y) clique polygon in the first grid tessellation."""
    return (x % n) * n + (y % n)


def build_clique_grid(n: int, q: int) -> tuple:
    """Torus of n*n cliques of size 4q linked by 2*n*n cliques of size 2q.

    Vertices are (x, y, k) with 0 <= x,y < n and 0 <= k < 4q, flattened
    row-major (see :func:`grid_vertex`).  The first tessellation holds
    the n^2 big cliques, one per cell; the second holds, for each cell,
    a horizontal linker joining group 0 of (x, y) to group 2 of
    (x+1, y), and a vertical linker joining group 1 of (x, y) to group
    3 of (x, y+1), coordinates mod n.  Edges are exactly those induced
    by the polygons.
    """
    if n < 2:
        raise ValueError("n must be >= 2: wrap-around at n=1 duplicates edges")
    if q < 1:
        raise ValueError("q must be >= 1")

    blue = []
    for x in range(n):
        for y in range(n):
            blue.append(tuple(grid_vertex(n, q, x, y, k) for k in range(4 * q)))

    red = []
    for x in range(n):
        for y in range(n):
            horiz = tuple(grid_vertex(n, q, x, y, k) for k in range(q)) + \
                tuple(grid_vertex(n, q, x + 1, y, 2 * q + k) for k in range(q))
            vert = tuple(grid_vertex(n, q, x, y, q + k) for k in range(q)) + \
                tuple(grid_vertex(n, q, x, y + 1, 3 * q + k) for k in range(q))
            red.append(horiz)
            red.append(vert)

    edges = set()
    for poly in itertools.chain(blue, red):
        edges.update(_canon_edge(a, b) for a, b in itertools.combinations(poly, 2))

    graph = Graph(4 * q * n * n, frozenset(edges))
    cover = TessellationCover((Tessellation(tuple(blue)), Tessellation(tuple(red))))
    return graph, cover


def expand_vertex_graph(graph: Graph, cover: TessellationCover, u: int,
                        k: int) -> tuple:
    """Replace vertex u by a k-clique, returning (graph, cover, map).

    The clique consists of u itself plus k-1 fresh ids appended at the
    end of the id space, so every other vertex keeps its id.  Every
    former neighbor of u becomes adjacent to all k clique vertices, and
    every polygon that contained u now contains the whole clique,
    spliced in at u's position in the polygon's vertex order.
    """
    if not (0 <= u < graph.n):
        raise ValueError(f"vertex {u} out of range for n={graph.n}")
    if k < 1:
        raise ValueError("clique size must be >= 1")

    clique = (u,) + tuple(range(graph.n, graph.n + k - 1))
    n_new = graph.n + k - 1

    edges = set(graph.edges)
    for w in graph.neighbors(u):
        for c in clique:
            edges.add(_canon_edge(w, c))
    edges.update(_canon_edge(a, b) for a, b in itertools.combinations(clique, 2))

    notes = []
    tessellations = []
    for t_idx, tess in enumerate(cover.tessellations):
        polys = []
        for poly in tess.polygons:
            if u in poly:
                if len(poly) == 1:
                    notes.append(
                        f"vertex {u} sat alone in a polygon of tessellation "
                        f"{t_idx}; that polygon is now the whole clique")
                pos = poly.index(u)
                polys.append(poly[:pos] + clique + poly[pos + 1:])
            else:
                polys.append(poly)
        tessellations.append(Tessellation(tuple(polys)))

    images = [(v,) for v in range(graph.n)]
    images[u] = clique
    vmap = VertexMap(graph.n, n_new, tuple(images), tuple(notes))
    return Graph(n_new, frozenset(edges)), TessellationCover(tuple(tessellations)), vmap


def polygon_intersections(cover: TessellationCover) -> list:
    """Group vertices by their polygon membership signature.

    Returns a list of ``(vertices, polygon_ids)`` pairs, one per
    nonempty intersection of one polygon chosen from each tessellation.
    ``vertices`` is ascending and ``polygon_ids`` gives the polygon
    index within each tessellation.  Entries are sorted by smallest
    member id; entries with two or more vertices are the reduction
    candidates (see :func:`reducible_intersections`).
    """
    if not cover.tessellations:
        return []
    vertex_sig = {}
    for t_idx, tess in enumerate(cover.tessellations):
        for p_idx, poly in enumerate(tess.polygons):
            for v in poly:
                vertex_sig.setdefault(v, []).append(p_idx)

    length = len(cover.tessellations)
    groups = {}
    for v, sig in vertex_sig.items():
        if len(sig) != length:
            raise ValueError(
                f"vertex {v} is missing from some tessellation; "
                "cover is not a partition")
        groups.setdefault(tuple(sig), []).append(v)

    cells = [(tuple(sorted(vs)), sig) for sig, vs in groups.items()]
    cells.sort(key=lambda cell: cell[0][0])
    return cells


def reducible_intersections(cover: TessellationCover) -> list:
    """Intersections with at least two vertices, the reduction candidates."""
    return [cell for cell in polygon_intersections(cover) if len(cell[0]) >= 2]


def reduce_intersection_graph(graph: Graph, cover: TessellationCover,
                              intersection) -> tuple:
    """Collapse a shared polygon intersection to one vertex.

    ``intersection`` must be exactly one of the cells reported by
    :func:`polygon_intersections`, and its members must share the same
    neighborhood outside the intersection.  The surviving vertex reuses
    the smallest id in the intersection; larger ids are removed and the
    remaining id space is compacted.
    """
    members = tuple(sorted(set(intersection)))
    if not members:
        raise ValueError("intersection is empty")
    for v in members:
        if not (0 <= v < graph.n):
            raise ValueError(f"vertex {v} out of range for n={graph.n}")

    cells = {cell[0] for cell in polygon_intersections(cover)}
    if members not in cells:
        raise ValueError(
            f"{members} is not a shared polygon intersection of the cover")

    outside = [graph.neighbors(v) - set(members) for v in members]
    for v, nbrs in zip(members[1:], outside[1:]):
        if nbrs != outside[0]:
            raise ValueError(
                f"vertices {members[0]} and {v} differ in their neighborhood "
                "outside the intersection; cannot reduce")

    keep = members[0]
    removed = set(members[1:])

    def new_id(v: int) -> int:
        if v in removed:
            v = keep
        return v - sum(1 for w in removed if w < v)

    n_new = graph.n - len(removed)
    edges = set()
    for a, b in graph.edges:
        na, nb = new_id(a), new_id(b)
        if na != nb:
            edges.add(_canon_edge(na, nb))

    tessellations = []
    for tess in cover.tessellations:
        polys = []
        for poly in tess.polygons:
            mapped = []
            seen_keep = False
            for v in poly:
                if v in members:
                    if not seen_keep:
                        mapped.append(new_id(keep))
                        seen_keep = True
                else:
                    mapped.append(new_id(v))
            polys.append(tuple(mapped))
        tessellations.append(Tessellation(tuple(polys)))

    images = tuple((new_id(v),) for v in range(graph.n))
    vmap = VertexMap(graph.n, n_new, images)
    return Graph(n_new, frozenset(edges)), TessellationCover(tuple(tessellations)), vmap
