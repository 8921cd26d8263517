"""Path-circular matroids: a minor-closed class of transversal matroids.

An instance is a simple graph together with a collection of vertex paths
(null paths allowed) such that interior path vertices have degree 2 and any
path through an interior vertex of another path also meets one of its end
vertices.  The matroid lives on the paths, presented by the vertex
neighbourhoods N(v) = {p : v on p}.  Deleting a path is trivial; contracting
one rebuilds the graph by subdividing the path's edges and transferring the
surviving paths onto the subdivision vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .core import (
    MAX_GROUND,
    GroundSet,
    ParseError,
    PreconditionError,
    Presentation,
    TransversalMatroid,
    VerificationError,
    matroids_equal,
)

__all__ = [
    "PathCircularInstance",
    "SimpleGraph",
    "VertexPath",
    "Violation",
    "add_coloop",
    "bicircular",
    "contract_path",
    "delete_path",
    "matroid_of",
    "multipath",
    "validate",
]


def _edge(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


class SimpleGraph:
    """Simple undirected graph with named vertices."""

    __slots__ = ("vertices", "edges", "_adjacency")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]] = ()):
        vertices = tuple(vertices)
        seen = set()
        for v in vertices:
            if not isinstance(v, str) or not v:
                raise ParseError(f"vertex names must be nonempty strings, got {v!r}")
            if v in seen:
                raise ParseError(f"duplicate vertex {v!r}")
            seen.add(v)
        normalized = set()
        for pair in edges:
            u, v = pair
            if u == v:
                raise ParseError(f"self-loop at {u!r} is not allowed")
            if u not in seen or v not in seen:
                raise ParseError(f"edge ({u!r}, {v!r}) uses an undeclared vertex")
            normalized.add(_edge(u, v))
        self.vertices = vertices
        self.edges = frozenset(normalized)
        adjacency: dict[str, list[str]] = {v: [] for v in vertices}
        for u, v in normalized:
            adjacency[u].append(v)
            adjacency[v].append(u)
        self._adjacency = {v: tuple(sorted(ns)) for v, ns in adjacency.items()}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SimpleGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"SimpleGraph({list(self.vertices)!r}, {sorted(self.edges)!r})"

    def neighbors(self, v: str) -> tuple[str, ...]:
        try:
            return self._adjacency[v]
        except KeyError:
            raise PreconditionError(f"{v!r} is not a vertex") from None

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: str, v: str) -> bool:
        return _edge(u, v) in self.edges

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self.edges)

    def with_vertices(self, extra: Iterable[str]) -> SimpleGraph:
        return SimpleGraph(self.vertices + tuple(extra), self.edges)

    def with_edges(self, extra: Iterable[Sequence[str]]) -> SimpleGraph:
        return SimpleGraph(self.vertices, list(self.edges) + [tuple(e) for e in extra])

    def without_vertices(self, drop: Iterable[str]) -> SimpleGraph:
        gone = set(drop)
        keep = tuple(v for v in self.vertices if v not in gone)
        edges = [e for e in self.edges if e[0] not in gone and e[1] not in gone]
        return SimpleGraph(keep, edges)


@dataclass(frozen=True)
class VertexPath:
    """A path given by its vertex sequence; the empty tuple is a null path."""

    vertices: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[str]:
        return iter(self.vertices)

    def __contains__(self, vertex: str) -> bool:
        return vertex in self.vertices

    def is_null(self) -> bool:
        return not self.vertices

    def ends(self) -> tuple[str, ...]:
        if not self.vertices:
            return ()
        return (self.vertices[0], self.vertices[-1])

    def interior(self) -> tuple[str, ...]:
        return self.vertices[1:-1]

    def normalized(self) -> VertexPath:
        # store the lexicographically smaller end first so reversal twins compare equal
        if len(self.vertices) >= 2 and self.vertices[-1] < self.vertices[0]:
            return VertexPath(tuple(reversed(self.vertices)))
        return self

    def __repr__(self) -> str:
        return "(%s)" % "-".join(self.vertices) if self.vertices else "(null)"


class PathCircularInstance:
    """A simple graph plus an ordered collection of its paths.

    Construction checks that each path is an actual path of the graph
    (existing, distinct, consecutively adjacent vertices) and normalizes
    path direction.  The two path-circular conditions are checked by
    ``validate``, not here, so invalid collections can be represented and
    diagnosed.
    """

    __slots__ = ("graph", "paths", "names")

    def __init__(
        self,
        graph: SimpleGraph,
        paths: Iterable[VertexPath | Iterable[str]],
        names: Iterable[str] | None = None,
    ):
        coerced = []
        for raw in paths:
            path = raw if isinstance(raw, VertexPath) else VertexPath(tuple(raw))
            vs = path.vertices
            if len(set(vs)) != len(vs):
                raise ParseError(f"path {path!r} repeats a vertex")
            for v in vs:
                if v not in graph._adjacency:
                    raise ParseError(f"path {path!r} uses undeclared vertex {v!r}")
            for a, b in zip(vs, vs[1:]):
                if not graph.has_edge(a, b):
                    raise ParseError(f"path {path!r} uses the missing edge ({a!r}, {b!r})")
            coerced.append(path.normalized())
        self.graph = graph
        self.paths = tuple(coerced)
        if names is None:
            self.names = tuple(f"p{i}" for i in range(len(self.paths)))
        else:
            self.names = tuple(names)
            if len(self.names) != len(self.paths):
                raise ParseError("one name is needed per path")
            if len(set(self.names)) != len(self.names):
                raise ParseError("path names must be distinct")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PathCircularInstance)
            and self.graph == other.graph
            and self.paths == other.paths
            and self.names == other.names
        )

    def __repr__(self) -> str:
        body = ", ".join(f"{n}={p!r}" for n, p in zip(self.names, self.paths))
        return f"PathCircularInstance({self.graph!r}; {body})"

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PreconditionError(f"no path named {name!r}") from None

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.graph.vertices),
            "edges": [list(e) for e in self.graph.sorted_edges()],
            "paths": [list(p.vertices) for p in self.paths],
        }

    @classmethod
    def from_json_dict(cls, data: object) -> PathCircularInstance:
        if not isinstance(data, dict):
            raise ParseError("instance JSON must be an object")
        try:
            vertices = data["vertices"]
            edges = data["edges"]
            paths = data["paths"]
        except (KeyError, TypeError):
            raise ParseError('instance JSON needs "vertices", "edges" and "paths"') from None
        if not all(isinstance(x, list) for x in (vertices, edges, paths)):
            raise ParseError('"vertices", "edges" and "paths" must be JSON arrays')
        for e in edges:
            if not isinstance(e, list) or len(e) != 2:
                raise ParseError("each edge must be a two-element array")
        for p in paths:
            if not isinstance(p, list):
                raise ParseError("each path must be an array of vertex names")
        return cls(SimpleGraph(vertices, edges), paths)

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def loads(cls, text: str) -> PathCircularInstance:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return cls.from_json_dict(data)

    def to_dot(self) -> str:
        legend = "\\n".join(
            f"{name}: {'-'.join(path.vertices) if path.vertices else '(null)'}"
            for name, path in zip(self.names, self.paths)
        )
        lines = ["graph pathcircular {", f'  label="{legend}";']
        for v in self.graph.vertices:
            lines.append(f'  "{v}";')
        for u, v in self.graph.sorted_edges():
            lines.append(f'  "{u}" -- "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Violation:
    """One failed path-circular condition, addressed by path and vertex."""

    path_index: int
    vertex: str
    condition: str  # "interior-degree" or "interior-cover"
    detail: str

    def __str__(self) -> str:
        return f"path {self.path_index}, vertex {self.vertex!r}: {self.detail}"


def validate(instance: PathCircularInstance) -> tuple[bool, list[Violation]]:
    """Check both path-circular conditions for every path.

    Interior vertices must have degree 2 in the graph, and every path
    meeting an interior vertex of another path must contain one of that
    path's end vertices.
    """
    violations = []
    for qi, path in enumerate(instance.paths):
        first, last = (path.vertices[0], path.vertices[-1]) if path.vertices else ("", "")
        for u in path.interior():
            if instance.graph.degree(u) != 2:
                violations.append(
                    Violation(
                        qi,
                        u,
                        "interior-degree",
                        f"interior vertex {u!r} has degree "
                        f"{instance.graph.degree(u)}, expected 2",
                    )
                )
            for ti, other in enumerate(instance.paths):
                if u in other and first not in other and last not in other:
                    violations.append(
                        Violation(
                            qi,
                            u,
                            "interior-cover",
                            f"path {ti} passes through interior vertex {u!r} "
                            f"but avoids both ends {first!r} and {last!r}",
                        )
                    )
    return not violations, violations


def matroid_of(instance: PathCircularInstance) -> TransversalMatroid:
    """Transversal matroid on the paths, presented by vertex neighbourhoods.

    Null paths lie in no set and are therefore loops.
    """
    _require_valid(instance)
    ground = GroundSet(instance.names)
    sets = []
    for v in instance.graph.vertices:
        sets.append([name for name, path in zip(instance.names, instance.paths) if v in path])
    return TransversalMatroid(Presentation(ground, sets))


def _require_valid(instance: PathCircularInstance) -> None:
    ok, violations = validate(instance)
    if not ok:
        listing = "; ".join(str(v) for v in violations)
        raise PreconditionError(f"instance is not path-circular: {listing}")


def delete_path(instance: PathCircularInstance, index: int) -> PathCircularInstance:
    """Remove one path; the graph is kept unchanged.

    Vertices that end up on no path simply present empty neighbourhoods.
    """
    _check_index(instance, index)
    result = PathCircularInstance(
        instance.graph,
        instance.paths[:index] + instance.paths[index + 1 :],
        instance.names[:index] + instance.names[index + 1 :],
    )
    ok, violations = validate(result)
    if not ok:
        raise VerificationError(
            f"deleting a path broke the collection: {violations[0]}"
        )
    return result


def _check_index(instance: PathCircularInstance, index: int) -> None:
    if not 0 <= index < len(instance.paths):
        raise PreconditionError(f"path index {index} out of range")


def contract_path(
    instance: PathCircularInstance, index: int, max_ground: int = MAX_GROUND
) -> PathCircularInstance:
    """Contract one path, returning a path-circular instance of the minor.

    Null paths are loops, and loops (like coloops) contract as deletions.
    Otherwise any other coloops are first re-represented as single-vertex
    paths on fresh isolated vertices and set aside, unused vertices are
    pruned, the subdivision construction runs on the reduced instance, and
    the coloops are restored.  The result is validated and compared
    rank-for-rank against the minor oracle before being returned.
    """
    _require_valid(instance)
    _check_index(instance, index)
    name = instance.names[index]
    base = matroid_of(instance)
    path = instance.paths[index]
    if path.is_null() or name in base.coloops():
        result = delete_path(instance, index)
    else:
        result = _contract_nondegenerate(instance, name, max_ground)
    ok, violations = validate(result)
    if not ok:
        raise VerificationError(f"contraction produced an invalid collection: {violations[0]}")
    minor = base.contract(name)
    if not matroids_equal(matroid_of(result), minor, max_ground):
        raise VerificationError(
            f"contraction of {name!r} disagrees with the minor oracle"
        )
    return result


def _contract_nondegenerate(
    instance: PathCircularInstance, name: str, max_ground: int
) -> PathCircularInstance:
    work = instance
    stripped: list[str] = []
    while True:
        matroid = matroid_of(work)
        other_coloops = [c for c in matroid.coloops() if c != name]
        if other_coloops:
            work = _strip_coloop(work, other_coloops[0], max_ground)
            stripped.append(other_coloops[0])
            continue
        unused = [
            v
            for v in work.graph.vertices
            if not any(v in p for p in work.paths)
        ]
        if unused:
            work = PathCircularInstance(
                work.graph.without_vertices(unused[:1]), work.paths, work.names
            )
            continue
        break
    matroid = matroid_of(work)
    if matroid.full_rank != len(work.graph.vertices):
        raise PreconditionError(
            "instance stays rank-deficient after removing coloops and unused "
            "vertices; its contraction cannot be synthesized"
        )
    result = _contract_reduced(work, work.index_of(name))
    for coloop_name in stripped:
        result = add_coloop(result, name=coloop_name)
    order = [n for n in instance.names if n != name]
    return _reordered(result, order)


def _strip_coloop(
    instance: PathCircularInstance, name: str, max_ground: int
) -> PathCircularInstance:
    """Remove a coloop path together with its (private, isolated) vertex.

    A coloop carried by anything other than a private single-vertex path is
    first re-represented on a fresh isolated vertex; re-representation
    preserves the matroid, which is verified.
    """
    index = instance.index_of(name)
    path = instance.paths[index]
    vertex = path.vertices[0] if len(path) == 1 else None
    private = vertex is not None and not any(
        vertex in p for i, p in enumerate(instance.paths) if i != index
    )
    work = instance
    if not private:
        fresh = _fresh_vertex(work.graph, "c")
        paths = list(work.paths)
        paths[index] = VertexPath((fresh,))
        work = PathCircularInstance(work.graph.with_vertices([fresh]), paths, work.names)
        if not matroids_equal(matroid_of(instance), matroid_of(work), max_ground):
            raise VerificationError(
                f"re-representing coloop {name!r} changed the matroid"
            )
        vertex = fresh
    return PathCircularInstance(
        work.graph.without_vertices([vertex]),
        work.paths[:index] + work.paths[index + 1 :],
        work.names[:index] + work.names[index + 1 :],
    )


def _contract_reduced(instance: PathCircularInstance, index: int) -> PathCircularInstance:
    """Subdivision construction for a non-degenerate path of a reduced instance.

    Assumes the instance is valid, free of coloops other than possibly the
    contracted path itself, and of full rank (one matchable path per vertex).
    """
    graph = instance.graph
    p = instance.paths[index].vertices
    k = len(p)
    pset = set(p)

    if k == 1:
        new_graph = graph.without_vertices([p[0]])
        mid: list[str] = []
    else:
        mid = [f"{p[i]}~{p[i + 1]}" for i in range(k - 1)]
        for m in mid:
            if m in graph._adjacency:
                raise ParseError(
                    f"subdivision vertex name {m!r} collides with an existing vertex"
                )
        edges = set(graph.edges)
        for i in range(k - 1):
            edges.discard(_edge(p[i], p[i + 1]))
            edges.add(_edge(p[i], mid[i]))
            edges.add(_edge(mid[i], p[i + 1]))
        for i in range(1, k - 1):
            edges.add(_edge(mid[i - 1], mid[i]))

        def current_neighbors(v: str) -> set[str]:
            return {b if a == v else a for a, b in edges if v in (a, b)}

        # hook the outer subdivision vertices to everything else adjacent to
        # the path ends; evaluated sequentially, so a graph edge joining the
        # two ends of the path turns into an edge between the two hooks
        for x in sorted(current_neighbors(p[0]) - {mid[0]}):
            edges.add(_edge(mid[0], x))
        for x in sorted(current_neighbors(p[k - 1]) - {mid[k - 2]}):
            edges.add(_edge(mid[k - 2], x))
        survivors = tuple(v for v in graph.vertices if v not in pset) + tuple(mid)
        kept = [e for e in edges if e[0] not in pset and e[1] not in pset]
        new_graph = SimpleGraph(survivors, kept)

    new_paths = []
    new_names = []
    for i, (pname, path) in enumerate(zip(instance.names, instance.paths)):
        if i == index:
            continue
        new_paths.append(_rewrite_path(path, p, mid))
        new_names.append(pname)
    try:
        return PathCircularInstance(new_graph, new_paths, new_names)
    except ParseError as exc:
        raise VerificationError(f"rewritten collection is inconsistent: {exc}") from exc


def _rewrite_path(path: VertexPath, p: tuple[str, ...], mid: list[str]) -> tuple[str, ...]:
    """Transfer a surviving path onto the subdivision vertices.

    A path through the contracted path's start maps vertex i to the
    subdivision vertex after it (the last vertex maps backwards); a path
    through only the end maps vertex i to the subdivision vertex before it.
    Consecutive duplicates collapse, and if the result closes into a loop
    the start vertex is dropped.
    """
    vs = path.vertices
    k = len(p)
    if not _touches(vs, p):
        return vs
    if k == 1:
        if vs and vs[0] != p[0] and vs[-1] != p[0]:
            raise VerificationError(
                f"single-vertex path {p[0]!r} appears inside {path!r}"
            )
        return tuple(v for v in vs if v != p[0])
    position = {v: i for i, v in enumerate(p)}
    if p[0] in vs:
        replaced = [
            v if v not in position else mid[min(position[v], k - 2)] for v in vs
        ]
    elif p[-1] in vs:
        replaced = [
            v if v not in position else mid[max(position[v] - 1, 0)] for v in vs
        ]
    else:
        raise VerificationError(
            f"path {path!r} meets the contracted path but avoids both of its ends"
        )
    collapsed = [replaced[0]]
    for v in replaced[1:]:
        if v != collapsed[-1]:
            collapsed.append(v)
    if len(collapsed) >= 2 and collapsed[0] == collapsed[-1]:
        collapsed = collapsed[1:]
    return tuple(collapsed)


def _touches(vs: tuple[str, ...], p: tuple[str, ...]) -> bool:
    pset = set(p)
    return any(v in pset for v in vs)


def _reordered(instance: PathCircularInstance, order: list[str]) -> PathCircularInstance:
    lookup = {name: i for i, name in enumerate(instance.names)}
    paths = [instance.paths[lookup[name]] for name in order]
    return PathCircularInstance(instance.graph, paths, order)


def _fresh_vertex(graph: SimpleGraph, prefix: str) -> str:
    i = 0
    while f"{prefix}{i}" in graph._adjacency:
        i += 1
    return f"{prefix}{i}"


def _fresh_name(names: tuple[str, ...]) -> str:
    i = len(names)
    while f"p{i}" in names:
        i += 1
    return f"p{i}"


def add_coloop(instance: PathCircularInstance, name: str | None = None) -> PathCircularInstance:
    """Add an isolated vertex carrying a fresh single-vertex path.

    The new element is a coloop of the matroid; this is asserted whenever
    the instance is valid.
    """
    vertex = _fresh_vertex(instance.graph, "c")
    element = name if name is not None else _fresh_name(instance.names)
    result = PathCircularInstance(
        instance.graph.with_vertices([vertex]),
        instance.paths + (VertexPath((vertex,)),),
        instance.names + (element,),
    )
    ok, _ = validate(result)
    if ok and element not in matroid_of(result).coloops():
        raise VerificationError(f"freshly added path {element!r} is not a coloop")
    return result


def bicircular(graph: SimpleGraph) -> PathCircularInstance:
    """Instance with one two-vertex path per edge of the graph.

    Paths of at most one edge make both path-circular conditions vacuous,
    and every element ends up in at most two presentation sets.
    """
    instance = PathCircularInstance(graph, [e for e in graph.sorted_edges()])
    _require_valid(instance)
    return instance


def multipath(n: int, intervals: Sequence[tuple[int, int]]) -> PathCircularInstance:
    """Instance on a cycle of ``n`` vertices with one path per cyclic interval.

    Each interval ``(a, b)`` covers vertices a, a+1, ..., b modulo n and
    must be proper (fewer than n vertices).  Nested intervals are rejected:
    no presentation set may contain another in this class.
    """
    if n < 3:
        raise PreconditionError("a cycle needs at least 3 vertices")
    names = [f"v{i}" for i in range(n)]
    graph = SimpleGraph(names, [(names[i], names[(i + 1) % n]) for i in range(n)])
    paths = []
    covers = []
    for a, b in intervals:
        if not (0 <= a < n and 0 <= b < n):
            raise PreconditionError(f"interval ({a}, {b}) is out of range for n={n}")
        length = (b - a) % n + 1
        if length >= n:
            raise PreconditionError(
                f"interval ({a}, {b}) covers the whole cycle; arcs must be proper"
            )
        vs = [names[(a + i) % n] for i in range(length)]
        paths.append(vs)
        covers.append(frozenset(vs))
    for i, j in _nested_pair(covers):
        raise PreconditionError(
            f"interval {i} is contained in interval {j}; "
            "no set of the family may contain another"
        )
    instance = PathCircularInstance(graph, paths)
    _require_valid(instance)
    return instance


def _nested_pair(covers: list[frozenset[str]]) -> Iterator[tuple[int, int]]:
    for i, a in enumerate(covers):
        for j, b in enumerate(covers):
            if i != j and a <= b and (a != b or i < j):
                yield i, j
