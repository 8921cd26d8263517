"""Presenting graphs and the single-element contraction test.

Contracting an element of a transversal matroid need not leave the class.
The decision procedure builds a graph on the presentation sets containing
the pivot element, prunes it to a minimal "presenting" graph, and reads the
answer off its shape: the contraction is transversal exactly when the
minimal graph is a tree, in which case a presentation of the contraction
is assembled from the tree edges and verified against the minor oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import (
    MAX_GROUND,
    ElementSet,
    GroundSet,
    PreconditionError,
    Presentation,
    TransversalMatroid,
    VerificationError,
    matroids_equal,
    _normalize_with_indices,
)

__all__ = [
    "ContractionVerdict",
    "PresentingGraph",
    "contract_presentation",
    "induced_support",
    "is_contraction_transversal",
    "is_presenting",
    "minimal_presenting_graph",
    "pivot_indices",
]


@dataclass(frozen=True)
class PresentingGraph:
    """Simple graph on the indices of the presentation sets containing the pivot."""

    pivot: str
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    set_labels: tuple[tuple[str, ...], ...]  # contents of the set at each vertex

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise PreconditionError("presenting graphs have no self-loops")
            if u > v:
                raise PreconditionError("edges must be stored as (low, high) pairs")
            if u not in self.vertices or v not in self.vertices:
                raise PreconditionError(f"edge ({u}, {v}) leaves the vertex set")

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_connected_on(self, subset: frozenset[int]) -> bool:
        """Connectivity of the subgraph induced by ``subset``."""
        if len(subset) <= 1:
            return True
        start = min(subset)
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for a, b in self.edges:
                if a == u and b in subset and b not in seen:
                    seen.add(b)
                    stack.append(b)
                elif b == u and a in subset and a not in seen:
                    seen.add(a)
                    stack.append(a)
        return len(seen) == len(subset)

    def is_connected(self) -> bool:
        return self.is_connected_on(frozenset(self.vertices))

    def is_tree(self) -> bool:
        if not self.vertices:
            return True
        return self.is_connected() and len(self.edges) == len(self.vertices) - 1

    def without_edge(self, edge: tuple[int, int]) -> PresentingGraph:
        return PresentingGraph(
            self.pivot, self.vertices, self.edges - {edge}, self.set_labels
        )

    def to_dot(self) -> str:
        """Undirected DOT rendering with deterministic vertex and edge order."""
        lines = ["graph presenting {", f'  label="pivot {self.pivot}";']
        for pos, v in enumerate(self.vertices):
            contents = ",".join(self.set_labels[pos])
            lines.append(f'  n{v} [label="{v}: {{{contents}}}"];')
        for u, v in self.sorted_edges():
            lines.append(f"  n{u} -- n{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def pivot_indices(matroid: TransversalMatroid, element: str) -> list[int]:
    """Indices of the presentation sets containing ``element``, ascending."""
    pos = matroid.ground.position(element)
    return [i for i, mask in enumerate(matroid.presentation.set_masks) if (mask >> pos) & 1]


def induced_support(matroid: TransversalMatroid, element: str, i: int, j: int) -> frozenset[int]:
    """Pivot indices whose sets lie inside the coclosure of sets i and j."""
    if i == j:
        raise PreconditionError("support is defined for distinct indices")
    pivot = pivot_indices(matroid, element)
    if i not in pivot or j not in pivot:
        raise PreconditionError("both indices must be pivot indices")
    sets = matroid.presentation.sets
    hull = matroid.dual_closure(sets[i] | sets[j])
    return frozenset(u for u in pivot if sets[u] <= hull)


def _support_table(
    matroid: TransversalMatroid, element: str, pivot: list[int]
) -> dict[tuple[int, int], frozenset[int]]:
    # coclosures depend only on the matroid, so compute them once per pivot pair
    sets = matroid.presentation.sets
    table = {}
    for i, j in combinations(pivot, 2):
        hull = matroid.dual_closure(sets[i] | sets[j])
        table[(i, j)] = frozenset(u for u in pivot if sets[u] <= hull)
    return table


def is_presenting(
    matroid: TransversalMatroid, element: str, graph: PresentingGraph
) -> bool:
    """True iff every pivot pair's support induces a connected subgraph."""
    pivot = pivot_indices(matroid, element)
    if sorted(graph.vertices) != pivot:
        raise PreconditionError(
            "graph vertices must be exactly the set indices containing the pivot"
        )
    table = _support_table(matroid, element, pivot)
    return all(graph.is_connected_on(support) for support in table.values())


def _reduce_to_minimal(
    graph: PresentingGraph,
    supports: dict[tuple[int, int], frozenset[int]],
    edge_order: list[tuple[int, int]] | None = None,
) -> PresentingGraph:
    """Greedily delete edges while every support stays connected.

    Scans edges in lexicographic order (or ``edge_order``), restarting from
    the front after each deletion, until no edge can be removed.
    """

    def presenting(g: PresentingGraph) -> bool:
        return all(g.is_connected_on(s) for s in supports.values())

    current = graph
    changed = True
    while changed:
        changed = False
        order = edge_order if edge_order is not None else current.sorted_edges()
        for edge in order:
            if edge not in current.edges:
                continue
            trial = current.without_edge(edge)
            if presenting(trial):
                current = trial
                changed = True
                break
    return current


def minimal_presenting_graph(
    matroid: TransversalMatroid,
    element: str,
    max_ground: int = MAX_GROUND,
    edge_order: list[tuple[int, int]] | None = None,
) -> PresentingGraph:
    """A minimal presenting graph for the pivot, reduced deterministically.

    The presentation is normalized to rank-many sets first when necessary.
    A pivot lying in no set (a loop) yields the empty graph; callers must
    treat that as degenerate.  ``edge_order`` overrides the deletion scan
    order and exists for cross-checking that the tree verdict does not
    depend on it.
    """
    _, normalized = _normalize_with_indices(matroid, max_ground)
    pivot = pivot_indices(normalized, element)
    sets = normalized.presentation.sets
    labels = tuple(tuple(sets[i]) for i in pivot)
    if not pivot:
        return PresentingGraph(element, (), frozenset(), ())
    complete = frozenset((i, j) for i, j in combinations(pivot, 2))
    graph = PresentingGraph(element, tuple(pivot), complete, labels)
    supports = _support_table(normalized, element, pivot)
    return _reduce_to_minimal(graph, supports, edge_order)


@dataclass(frozen=True)
class ContractionVerdict:
    """Outcome of the contraction test.

    ``kind`` is "tree" or "cyclic" for the generic decision, or "loop" /
    "coloop" when the pivot is degenerate and the contraction trivially
    equals the deletion (``graph`` is then None).  ``matroid`` is the
    normalized matroid the graph indices refer to, and ``chosen_indices``
    the set indices kept by normalization.
    """

    transversal: bool
    graph: PresentingGraph | None
    kind: str
    matroid: TransversalMatroid
    chosen_indices: tuple[int, ...]


def is_contraction_transversal(
    matroid: TransversalMatroid, element: str, max_ground: int = MAX_GROUND
) -> ContractionVerdict:
    """Decide whether contracting ``element`` leaves a transversal matroid.

    Builds a minimal presenting graph and reports whether it is a tree.
    Loops and coloops short-circuit: contracting them equals deleting them,
    and deletions of transversal matroids are always transversal.
    """
    pos = matroid.ground.position(element)
    single = 1 << pos
    if matroid.rank_mask(single) == 0:
        return ContractionVerdict(True, None, "loop", matroid, tuple(range(len(matroid.presentation))))
    if matroid.rank_mask(matroid.full_mask & ~single) == matroid.full_rank - 1:
        return ContractionVerdict(True, None, "coloop", matroid, tuple(range(len(matroid.presentation))))
    chosen, normalized = _normalize_with_indices(matroid, max_ground)
    graph = minimal_presenting_graph(normalized, element, max_ground)
    if graph.is_tree():
        return ContractionVerdict(True, graph, "tree", normalized, chosen)
    return ContractionVerdict(False, graph, "cyclic", normalized, chosen)


def contract_presentation(
    matroid: TransversalMatroid, element: str, max_ground: int = MAX_GROUND
) -> Presentation:
    """Presentation of the contraction by ``element``.

    For a tree verdict the sets are the unions over the tree edges with the
    pivot removed, followed by the sets avoiding the pivot.  For a loop or
    coloop pivot the contraction equals the deletion and the restricted
    presentation is returned.  Every result is verified rank-for-rank
    against the minor oracle before being returned; a mismatch raises
    ``VerificationError`` and means the implementation is broken.
    """
    verdict = is_contraction_transversal(matroid, element, max_ground)
    eset = matroid.ground.subset([element])
    if verdict.kind in ("loop", "coloop"):
        result = matroid.restrict(eset.complement()).presentation
    elif not verdict.transversal:
        cycle_edges = ", ".join(map(str, verdict.graph.sorted_edges()))
        raise PreconditionError(
            f"contraction by {element!r} is not transversal; "
            f"minimal presenting graph has a cycle (edges {cycle_edges})"
        )
    else:
        normalized = verdict.matroid
        graph = verdict.graph
        sets = normalized.presentation.sets
        pivot = set(graph.vertices)
        new_ground = GroundSet(eset.complement().labels)
        merged = [
            _drop_element(sets[u] | sets[v], element, new_ground)
            for u, v in graph.sorted_edges()
        ]
        untouched = [
            _drop_element(sets[j], element, new_ground)
            for j in range(len(sets))
            if j not in pivot
        ]
        result = Presentation(new_ground, merged + untouched)
    minor = matroid.contract(element)
    if not matroids_equal(TransversalMatroid(result), minor, max_ground):
        raise VerificationError(
            f"synthesized presentation disagrees with the contraction by {element!r}"
        )
    return result


def _drop_element(s: ElementSet, element: str, new_ground: GroundSet) -> ElementSet:
    return new_ground.subset(label for label in s if label != element)
