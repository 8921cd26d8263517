"""Brute-force oracles and seeded generators that certify the library.

Every nontrivial operation has an independent check here: dual rank
against a minimization over supersets, dual independence against a
Hall-style inequality system, contraction transversality against a full
presentation search, and the path-circular minors against the minor rank
oracle.  The generators use a fixed 64-bit mixing generator so instance
streams are reproducible bit for bit in any language.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .contraction import (
    PresentingGraph,
    contract_presentation,
    is_contraction_transversal,
    is_presenting,
    pivot_indices,
)
from .core import (
    ElementSet,
    GroundSet,
    Matroid,
    PreconditionError,
    Presentation,
    SizeLimitError,
    TransversalMatroid,
    VerificationError,
    _matching_size,
    matroids_equal,
    normalize_presentation,
)
from .cotransversal import (
    alpha_table,
    cyclic_flats,
    is_cotransversal,
    is_cyclic_flat,
    maximal_presentation,
)
from .pathcircular import (
    PathCircularInstance,
    SimpleGraph,
    VertexPath,
    contract_path,
    delete_path,
    matroid_of,
    validate,
)

__all__ = [
    "CheckResult",
    "InstanceSpec",
    "PathLimits",
    "SplitMix64",
    "cyclic_flat_union_check",
    "dual_independent_hall",
    "dual_rank_min_formula",
    "exhaustive_transversality",
    "random_path_circular",
    "random_presentation",
    "selftest",
]

_LETTERS = "abcdefg"


class SplitMix64:
    """Fixed 64-bit mixing generator, reproducible across languages.

    Update formula (all arithmetic modulo 2**64):

        state = state + 0x9E3779B97F4A7C15
        z = state
        z = (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9
        z = (z XOR (z >> 27)) * 0x94D049BB133111EB
        output = z XOR (z >> 31)
    """

    _MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self._MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self._MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n

    def unit(self) -> float:
        return self.next() / 2.0**64

    def chance(self, probability: float) -> bool:
        return self.unit() < probability


@dataclass(frozen=True)
class InstanceSpec:
    """Deterministic recipe for one random presentation."""

    seed: int
    n_elements: int
    n_sets: int
    density: float

    def __post_init__(self):
        if not 1 <= self.n_elements <= 7:
            raise PreconditionError("n_elements must be between 1 and 7")
        if not 0 <= self.n_sets <= 5:
            raise PreconditionError("n_sets must be between 0 and 5")
        if not 0.0 <= self.density <= 1.0:
            raise PreconditionError("density must lie in [0, 1]")


def random_presentation(spec: InstanceSpec) -> Presentation:
    """Presentation sampled elementwise; identical spec, identical bytes."""
    gen = SplitMix64(spec.seed)
    ground = GroundSet(_LETTERS[: spec.n_elements])
    sets = []
    for _ in range(spec.n_sets):
        members = [
            label for label in ground.labels if gen.chance(spec.density)
        ]
        sets.append(members)
    return Presentation(ground, sets)


@dataclass(frozen=True)
class PathLimits:
    """Size caps for the path-circular generator."""

    max_vertices: int = 7
    max_paths: int = 6
    max_path_length: int = 4
    edge_density: float = 0.5
    retry_cap: int = 40

    def __post_init__(self):
        if not 1 <= self.max_vertices <= 7:
            raise PreconditionError("max_vertices must be between 1 and 7")
        if not 0 <= self.max_paths <= 6:
            raise PreconditionError("max_paths must be between 0 and 6")


def random_path_circular(
    seed: int, limits: PathLimits = PathLimits(), strict: bool = False
) -> PathCircularInstance:
    """A valid instance sampled from ``seed``.

    Path candidates are random walks; a candidate breaking either
    path-circular condition is resampled up to the retry cap.  When the cap
    runs out the path is repaired to a null path (always admissible), or,
    with ``strict=True``, generation fails loudly instead.
    """
    gen = SplitMix64(seed)
    n = 1 + gen.below(limits.max_vertices)
    vertices = list(_LETTERS[:n])
    edges = [
        (u, v)
        for i, u in enumerate(vertices)
        for v in vertices[i + 1 :]
        if gen.chance(limits.edge_density)
    ]
    graph = SimpleGraph(vertices, edges)
    count = gen.below(limits.max_paths + 1) if limits.max_paths else 0
    accepted: list[VertexPath] = []
    for position in range(count):
        chosen = None
        for _ in range(limits.retry_cap):
            candidate = _random_walk(gen, graph, vertices, limits.max_path_length)
            if _admissible(graph, accepted, candidate):
                chosen = candidate
                break
        if chosen is None:
            if strict:
                raise PreconditionError(
                    f"retry cap exhausted while sampling path {position} at seed {seed}"
                )
            chosen = VertexPath(())
        accepted.append(chosen)
    instance = PathCircularInstance(graph, accepted)
    ok, violations = validate(instance)
    if not ok:
        raise VerificationError(f"generator produced an invalid instance: {violations[0]}")
    return instance


def _random_walk(
    gen: SplitMix64, graph: SimpleGraph, vertices: list[str], max_length: int
) -> VertexPath:
    target = gen.below(max_length + 1)
    if target == 0:
        return VertexPath(())
    walk = [vertices[gen.below(len(vertices))]]
    while len(walk) < target:
        options = [w for w in graph.neighbors(walk[-1]) if w not in walk]
        if not options:
            break
        walk.append(options[gen.below(len(options))])
    return VertexPath(tuple(walk)).normalized()


def _admissible(
    graph: SimpleGraph, accepted: list[VertexPath], candidate: VertexPath
) -> bool:
    trial = PathCircularInstance(graph, list(accepted) + [candidate])
    ok, _ = validate(trial)
    return ok


def dual_rank_min_formula(presentation: Presentation, X: ElementSet) -> int:
    """Rank of ``X`` in the dual, as a minimum over supersets.

    Minimizes |Y| - #{i : A_i within Y} over all Y containing X, by full
    enumeration.  Correct when the family has rank-many sets.
    """
    n = len(presentation.ground)
    if n > 7:
        raise SizeLimitError(f"superset enumeration is capped at 7 elements, got {n}")
    if X.ground != presentation.ground:
        raise PreconditionError("subset lives on a different ground set")
    masks = presentation.set_masks
    rest = presentation.ground.full_mask & ~X.mask
    best = None
    sub = rest
    while True:
        y = X.mask | sub
        covered = sum(1 for a in masks if a & ~y == 0)
        value = y.bit_count() - covered
        if best is None or value < best:
            best = value
        if sub == 0:
            break
        sub = (sub - 1) & rest
    return best


def dual_independent_hall(presentation: Presentation, X: ElementSet) -> bool:
    """Dual independence via the inequality system over all set subfamilies.

    ``X`` is independent in the dual iff for every subfamily J,
    |X intersect union(J)| <= |union(J)| - |J|.  Correct when the family
    has rank-many sets.
    """
    masks = presentation.set_masks
    r = len(masks)
    if r > 5:
        raise SizeLimitError(f"subfamily enumeration is capped at 5 sets, got {r}")
    if X.ground != presentation.ground:
        raise PreconditionError("subset lives on a different ground set")
    for j_mask in range(1, 1 << r):
        union = 0
        count = 0
        for i in range(r):
            if (j_mask >> i) & 1:
                union |= masks[i]
                count += 1
        if (X.mask & union).bit_count() > union.bit_count() - count:
            return False
    return True


def cyclic_flat_union_check(presentation: Presentation, F: ElementSet) -> bool:
    """True iff ``F`` is a union of presentation sets (subfamilies enumerated)."""
    if F.ground != presentation.ground:
        raise PreconditionError("flat lives on a different ground set")
    masks = presentation.set_masks
    for j_mask in range(1 << len(masks)):
        union = 0
        for i in range(len(masks)):
            if (j_mask >> i) & 1:
                union |= masks[i]
        if union == F.mask:
            return True
    return False


def exhaustive_transversality(
    oracle: Matroid, rank_target: int, max_elements: int = 6
) -> tuple[bool, Presentation | None]:
    """Search every presentation with ``rank_target`` sets for the matroid.

    Families are enumerated as sorted multisets of nonempty subsets of the
    non-loops (loops can never lie in a presentation set, and the union
    must cover everything else), in a fixed order, so the first hit is
    deterministic.  Returns (False, None) when no presentation exists.
    """
    ground = oracle.ground
    n = len(ground)
    if n > max_elements:
        raise SizeLimitError(
            f"presentation search is capped at {max_elements} elements, got {n}"
        )
    if rank_target < 0 or rank_target > n:
        return False, None
    target = [oracle.rank_mask(m) for m in range(1 << n)]
    loops_mask = 0
    for pos in range(n):
        if target[1 << pos] == 0:
            loops_mask |= 1 << pos
    nonloops = ground.full_mask & ~loops_mask
    universe = sorted(
        (m for m in range(1, 1 << n) if m & loops_mask == 0),
        key=lambda m: (m.bit_count(), m),
    )
    compare_order = sorted(range(1 << n), key=lambda m: (m.bit_count(), m))
    for combo in combinations_with_replacement(universe, rank_target):
        union = 0
        for m in combo:
            union |= m
        if union != nonloops:
            continue
        if all(_matching_size(combo, m) == target[m] for m in compare_order):
            return True, Presentation(ground, [ground.from_mask(m) for m in combo])
    return False, None


@dataclass
class CheckResult:
    """Summary of one certification suite."""

    check: str
    instances: int
    failures: int
    witness: dict | None

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "instances": self.instances,
            "failures": self.failures,
            "witness": self.witness,
        }


def _case_specs(seed: int, cases: int, max_elements: int, max_sets: int):
    gen = SplitMix64(seed)
    for _ in range(cases):
        case_seed = gen.next()
        n = 2 + gen.below(max_elements - 1)
        r = 1 + gen.below(max_sets)
        density = 0.2 + 0.6 * gen.unit()
        yield InstanceSpec(case_seed, n, r, density)


def check_dual_rank_formula(seed: int, cases: int) -> CheckResult:
    """Matching-backed dual rank against the superset minimum, all subsets."""
    failures = 0
    witness = None
    for spec in _case_specs(seed, cases, 7, 4):
        matroid = normalize_presentation(TransversalMatroid(random_presentation(spec)))
        pres = matroid.presentation
        for mask in range(1 << len(matroid.ground)):
            X = matroid.ground.from_mask(mask)
            if matroid.dual_rank(X) != dual_rank_min_formula(pres, X):
                failures += 1
                if witness is None:
                    witness = {"spec": spec.__dict__, "subset": list(X)}
                break
    return CheckResult("dual_rank_min_formula", cases, failures, witness)


def check_dual_independence(seed: int, cases: int) -> CheckResult:
    """Matching-backed dual independence against the inequality system."""
    failures = 0
    witness = None
    for spec in _case_specs(seed, cases, 7, 4):
        matroid = normalize_presentation(TransversalMatroid(random_presentation(spec)))
        pres = matroid.presentation
        full = matroid.full_rank
        for mask in range(1 << len(matroid.ground)):
            X = matroid.ground.from_mask(mask)
            by_matching = (
                matroid.rank_mask(matroid.full_mask & ~mask) == full
            )
            if by_matching != dual_independent_hall(pres, X):
                failures += 1
                if witness is None:
                    witness = {"spec": spec.__dict__, "subset": list(X)}
                break
    return CheckResult("dual_independence_hall", cases, failures, witness)


def check_cyclic_flat_structure(seed: int, cases: int) -> CheckResult:
    """Dual cyclic flats are unions of sets; coclosed sets carry alpha multiplicities."""
    failures = 0
    witness = None
    for spec in _case_specs(seed, cases, 7, 4):
        matroid = normalize_presentation(TransversalMatroid(random_presentation(spec)))
        pres = matroid.presentation
        dual = matroid.dual()
        problem = None
        flats = cyclic_flats(dual)
        for flat in flats:
            if not cyclic_flat_union_check(pres, flat):
                problem = {"flat": list(flat), "reason": "not a union of sets"}
                break
        if problem is None:
            maximal = maximal_presentation(matroid)
            if not matroids_equal(TransversalMatroid(maximal), matroid):
                problem = {"reason": "maximal presentation changed the matroid"}
            else:
                table = alpha_table(dual)
                for s in set(maximal.sets):
                    if not is_cyclic_flat(dual, s):
                        problem = {"set": list(s), "reason": "not a dual cyclic flat"}
                        break
                    multiplicity = sum(1 for t in maximal.sets if t == s)
                    if multiplicity != table.value_of(s):
                        problem = {
                            "set": list(s),
                            "reason": f"multiplicity {multiplicity} != alpha",
                        }
                        break
        if problem is not None:
            failures += 1
            if witness is None:
                witness = {"spec": spec.__dict__, **problem}
    return CheckResult("dual_cyclic_flats_and_alpha", cases, failures, witness)


def check_contraction_agreement(seed: int, cases: int) -> CheckResult:
    """Presenting-graph verdict vs alpha criterion vs presentation search."""
    failures = 0
    witness = None
    gen = SplitMix64(seed)
    for _ in range(cases):
        case_seed = gen.next()
        n = 2 + gen.below(5)  # up to 6 elements
        r = 1 + gen.below(4)
        density = 0.2 + 0.6 * gen.unit()
        spec = InstanceSpec(case_seed, n, r, density)
        matroid = TransversalMatroid(random_presentation(spec))
        element = matroid.ground.labels[gen.below(n)]
        verdict = is_contraction_transversal(matroid, element)
        minor = matroid.contract(element)
        by_alpha, _ = is_cotransversal(minor.dual())
        by_search, _ = exhaustive_transversality(minor, minor.full_rank)
        problem = None
        if not verdict.transversal == by_alpha == by_search:
            problem = {
                "graph": verdict.transversal,
                "alpha": by_alpha,
                "search": by_search,
            }
        elif verdict.transversal:
            try:
                contract_presentation(matroid, element)
            except VerificationError as exc:
                problem = {"synthesis": str(exc)}
        if problem is not None:
            failures += 1
            if witness is None:
                witness = {"spec": spec.__dict__, "element": element, **problem}
    return CheckResult("contraction_triple_agreement", cases, failures, witness)


def check_path_circular_minors(seed: int, cases: int) -> CheckResult:
    """Deletions and contractions of valid instances stay in the class.

    For every path of every sampled instance: the deletion validates and
    matches the deletion minor; the contraction validates and matches the
    contraction minor; and the path itself, read as a graph on the sets
    containing it, is a minimal presenting graph for that element.
    """
    failures = 0
    witness = None
    gen = SplitMix64(seed)
    for _ in range(cases):
        case_seed = gen.next()
        instance = random_path_circular(case_seed)
        matroid = matroid_of(instance)
        problem = None
        for index, name in enumerate(instance.names):
            removed = delete_path(instance, index)
            ok, violations = validate(removed)
            if not ok:
                problem = {"operation": "delete", "path": name, "reason": str(violations[0])}
                break
            if not matroids_equal(matroid_of(removed), matroid.delete(name)):
                problem = {"operation": "delete", "path": name, "reason": "minor mismatch"}
                break
            try:
                contract_path(instance, index)
            except (VerificationError, PreconditionError) as exc:
                problem = {"operation": "contract", "path": name, "reason": str(exc)}
                break
            if instance.paths[index].is_null():
                continue
            if not _path_is_minimal_presenting(instance, matroid, index):
                problem = {
                    "operation": "presenting-check",
                    "path": name,
                    "reason": "path is not a minimal presenting graph",
                }
                break
        if problem is not None:
            failures += 1
            if witness is None:
                witness = {"seed": case_seed, **problem}
    return CheckResult("path_circular_minors", cases, failures, witness)


def _path_is_minimal_presenting(
    instance: PathCircularInstance, matroid: TransversalMatroid, index: int
) -> bool:
    """The path, as a graph on the sets containing it, presents minimally."""
    name = instance.names[index]
    vertices = instance.paths[index].vertices
    vertex_pos = {v: i for i, v in enumerate(instance.graph.vertices)}
    nodes = tuple(sorted(vertex_pos[v] for v in vertices))
    edges = frozenset(
        (min(vertex_pos[a], vertex_pos[b]), max(vertex_pos[a], vertex_pos[b]))
        for a, b in zip(vertices, vertices[1:])
    )
    labels = tuple(
        tuple(matroid.presentation.sets[i]) for i in nodes
    )
    graph = PresentingGraph(name, nodes, edges, labels)
    if sorted(graph.vertices) != pivot_indices(matroid, name):
        return False
    if not is_presenting(matroid, name, graph):
        return False
    return all(
        not is_presenting(matroid, name, graph.without_edge(edge))
        for edge in graph.sorted_edges()
    )


def selftest(seed: int = 1, cases: int = 100) -> list[CheckResult]:
    """Run every certification suite with ``cases`` instances each."""
    return [
        check_dual_rank_formula(seed, cases),
        check_dual_independence(seed, cases),
        check_cyclic_flat_structure(seed, cases),
        check_contraction_agreement(seed, cases),
        check_path_circular_minors(seed, cases),
    ]
