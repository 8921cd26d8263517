"""Ground sets, presentations, and matching-backed matroid rank oracles.

Everything here is immutable after construction and all operations are pure,
so instances can be shared freely between threads.  Rank values are memoised
per instance, but correctness never depends on the cache.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

#: Default ceiling on the ground-set size for operations that sweep all
#: 2^|E| subsets.  Every such operation takes a ``max_ground`` override.
MAX_GROUND = 16


class MatroidError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MatroidError, ValueError):
    """Malformed or inconsistent input data."""


class SizeLimitError(MatroidError, ValueError):
    """An exhaustive operation was asked to sweep too large a ground set."""


class PreconditionError(MatroidError, ValueError):
    """An operation was invoked outside its contract."""


class VerificationError(MatroidError, RuntimeError):
    """An internal cross-check failed; this always indicates a bug."""


def check_ground_size(n: int, max_ground: int, what: str) -> None:
    if n > max_ground:
        raise SizeLimitError(
            f"{what} sweeps all 2^{n} subsets; ground set of size {n} "
            f"exceeds the limit of {max_ground}"
        )


def _bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class GroundSet:
    """Ordered universe of distinct, nonempty element labels."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(labels)
        index: dict[str, int] = {}
        for pos, name in enumerate(labels):
            if not isinstance(name, str) or not name:
                raise ParseError(f"element labels must be nonempty strings, got {name!r}")
            if name in index:
                raise ParseError(f"duplicate element label {name!r}")
            index[name] = pos
        self.labels = labels
        self._index = index

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.labels)!r})"

    def position(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise PreconditionError(f"element {label!r} is not in the ground set") from None

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def subset(self, labels: Iterable[str] = ()) -> ElementSet:
        mask = 0
        for label in labels:
            mask |= 1 << self.position(label)
        return ElementSet(self, mask)

    def from_mask(self, mask: int) -> ElementSet:
        return ElementSet(self, mask)

    def empty(self) -> ElementSet:
        return ElementSet(self, 0)

    def full(self) -> ElementSet:
        return ElementSet(self, self.full_mask)


class ElementSet:
    """Immutable subset of a ground set, backed by a bitmask."""

    __slots__ = ("ground", "mask")

    def __init__(self, ground: GroundSet, mask: int):
        if mask < 0 or mask >> len(ground):
            raise PreconditionError(f"mask {mask:#x} has bits outside the ground set")
        self.ground = ground
        self.mask = mask

    def _same(self, other: ElementSet) -> ElementSet:
        if not isinstance(other, ElementSet) or other.ground != self.ground:
            raise PreconditionError("element sets belong to different ground sets")
        return other

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ElementSet)
            and self.ground == other.ground
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.ground.labels, self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __iter__(self) -> Iterator[str]:
        labels = self.ground.labels
        return (labels[pos] for pos in _bits(self.mask))

    def __contains__(self, label: str) -> bool:
        return bool((self.mask >> self.ground.position(label)) & 1)

    def __or__(self, other: ElementSet) -> ElementSet:
        return ElementSet(self.ground, self.mask | self._same(other).mask)

    def __and__(self, other: ElementSet) -> ElementSet:
        return ElementSet(self.ground, self.mask & self._same(other).mask)

    def __sub__(self, other: ElementSet) -> ElementSet:
        return ElementSet(self.ground, self.mask & ~self._same(other).mask)

    def __le__(self, other: ElementSet) -> bool:
        return self.mask & ~self._same(other).mask == 0

    def __lt__(self, other: ElementSet) -> bool:
        return self <= other and self.mask != other.mask

    def complement(self) -> ElementSet:
        return ElementSet(self.ground, self.ground.full_mask & ~self.mask)

    def plus(self, *labels: str) -> ElementSet:
        mask = self.mask
        for label in labels:
            mask |= 1 << self.ground.position(label)
        return ElementSet(self.ground, mask)

    def minus(self, *labels: str) -> ElementSet:
        mask = self.mask
        for label in labels:
            mask &= ~(1 << self.ground.position(label))
        return ElementSet(self.ground, mask)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self)

    def __repr__(self) -> str:
        return "{%s}" % ", ".join(self)


class Presentation:
    """Ordered family of element subsets.

    Duplicates and empty sets are allowed; the order of the family matters
    only for indexing, never for the matroid it presents.
    """

    __slots__ = ("ground", "sets", "set_masks")

    def __init__(self, ground: GroundSet, sets: Iterable[ElementSet | Iterable[str]]):
        coerced = []
        for item in sets:
            if isinstance(item, ElementSet):
                if item.ground != ground:
                    raise PreconditionError("presentation set lives on a different ground set")
                coerced.append(item)
            else:
                coerced.append(ground.subset(item))
        self.ground = ground
        self.sets = tuple(coerced)
        self.set_masks = tuple(s.mask for s in self.sets)

    @classmethod
    def from_labels(
        cls, elements: Iterable[str], sets: Iterable[Iterable[str]]
    ) -> Presentation:
        return cls(GroundSet(elements), sets)

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, index: int) -> ElementSet:
        return self.sets[index]

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(self.sets)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Presentation)
            and self.ground == other.ground
            and self.set_masks == other.set_masks
        )

    def __hash__(self) -> int:
        return hash((self.ground.labels, self.set_masks))

    def __repr__(self) -> str:
        return "Presentation(%s)" % ", ".join(repr(s) for s in self.sets)

    def permuted(self, order: Sequence[int]) -> Presentation:
        if sorted(order) != list(range(len(self.sets))):
            raise PreconditionError("permutation must rearrange all set indices")
        return Presentation(self.ground, [self.sets[i] for i in order])

    def to_json_dict(self) -> dict:
        return {
            "elements": list(self.ground.labels),
            "sets": [list(s) for s in self.sets],
        }

    @classmethod
    def from_json_dict(cls, data: object) -> Presentation:
        if not isinstance(data, dict):
            raise ParseError("presentation JSON must be an object")
        try:
            elements = data["elements"]
            raw_sets = data["sets"]
        except (KeyError, TypeError):
            raise ParseError('presentation JSON needs "elements" and "sets"') from None
        if not isinstance(elements, list) or not isinstance(raw_sets, list):
            raise ParseError('"elements" and "sets" must be JSON arrays')
        ground = GroundSet(elements)
        sets = []
        for raw in raw_sets:
            if not isinstance(raw, list):
                raise ParseError("each presentation set must be a JSON array of labels")
            for label in raw:
                if label not in ground:
                    raise ParseError(f"set member {label!r} is not a declared element")
            sets.append(raw)
        return cls(ground, sets)

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def loads(cls, text: str) -> Presentation:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return cls.from_json_dict(data)


def _matching_size(set_masks: Sequence[int], element_mask: int) -> int:
    """Maximum matching between the elements of ``element_mask`` and the sets.

    Element x may be assigned to set i iff bit x of ``set_masks[i]`` is set.
    Augmenting paths are explored with elements in ascending position and
    candidate sets in ascending index, so results are reproducible.
    """
    owner = [-1] * len(set_masks)

    def augment(x: int, banned: set[int]) -> bool:
        for i, a in enumerate(set_masks):
            if (a >> x) & 1 and i not in banned:
                banned.add(i)
                if owner[i] < 0 or augment(owner[i], banned):
                    owner[i] = x
                    return True
        return False

    size = 0
    for x in _bits(element_mask):
        if augment(x, set()):
            size += 1
    return size


class Matroid:
    """Rank-oracle base: subclasses provide ``rank_mask``.

    Supplies every rank-derived operation (independence, closure, duals,
    loops/coloops, minors) so transversal matroids, minors, and explicit
    oracles share one implementation.
    """

    ground: GroundSet

    def __init__(self, ground: GroundSet):
        self.ground = ground
        self._full_rank: int | None = None

    def rank_mask(self, mask: int) -> int:
        raise NotImplementedError

    def _own(self, X: ElementSet) -> int:
        if X.ground != self.ground:
            raise PreconditionError("subset lives on a different ground set")
        return X.mask

    def rank(self, X: ElementSet) -> int:
        return self.rank_mask(self._own(X))

    @property
    def full_mask(self) -> int:
        return self.ground.full_mask

    @property
    def full_rank(self) -> int:
        if self._full_rank is None:
            self._full_rank = self.rank_mask(self.full_mask)
        return self._full_rank

    def is_independent(self, X: ElementSet) -> bool:
        mask = self._own(X)
        return self.rank_mask(mask) == mask.bit_count()

    def closure(self, X: ElementSet) -> ElementSet:
        mask = self._own(X)
        r = self.rank_mask(mask)
        out = mask
        for pos in range(len(self.ground)):
            bit = 1 << pos
            if not mask & bit and self.rank_mask(mask | bit) == r:
                out |= bit
        return ElementSet(self.ground, out)

    def dual_rank_mask(self, mask: int) -> int:
        return mask.bit_count() + self.rank_mask(self.full_mask & ~mask) - self.full_rank

    def dual_rank(self, X: ElementSet) -> int:
        return self.dual_rank_mask(self._own(X))

    def dual_closure(self, X: ElementSet) -> ElementSet:
        return self.dual().closure(X)

    def dual(self) -> RankOracle:
        return RankOracle(self.ground, self.dual_rank_mask)

    def loops(self) -> ElementSet:
        mask = 0
        for pos in range(len(self.ground)):
            if self.rank_mask(1 << pos) == 0:
                mask |= 1 << pos
        return ElementSet(self.ground, mask)

    def coloops(self) -> ElementSet:
        full = self.full_mask
        target = self.full_rank - 1
        mask = 0
        for pos in range(len(self.ground)):
            if self.rank_mask(full & ~(1 << pos)) == target:
                mask |= 1 << pos
        return ElementSet(self.ground, mask)

    def minor(
        self,
        deleted: ElementSet | None = None,
        contracted: ElementSet | None = None,
    ) -> MinorMatroid:
        return MinorMatroid(self, deleted, contracted)

    def delete(self, *labels: str) -> MinorMatroid:
        return self.minor(deleted=self.ground.subset(labels))

    def contract(self, *labels: str) -> MinorMatroid:
        return self.minor(contracted=self.ground.subset(labels))

    def oracle_restriction(self, X: ElementSet) -> RankOracle:
        """Rank-oracle view of the restriction to ``X``."""
        keep = self._own(X)
        sub = GroundSet(self.ground.from_mask(keep).labels)
        positions = [self.ground.position(label) for label in sub.labels]

        def restricted_rank(mask: int) -> int:
            base_mask = 0
            for pos in _bits(mask):
                base_mask |= 1 << positions[pos]
            return self.rank_mask(base_mask)

        return RankOracle(sub, restricted_rank)


class RankOracle(Matroid):
    """Matroid given by an explicit rank function over bitmasks."""

    def __init__(self, ground: GroundSet, rank_of_mask: Callable[[int], int]):
        super().__init__(ground)
        self._rank_of_mask = rank_of_mask
        self._cache: dict[int, int] = {}

    def rank_mask(self, mask: int) -> int:
        cached = self._cache.get(mask)
        if cached is None:
            cached = self._cache[mask] = self._rank_of_mask(mask)
        return cached


class TransversalMatroid(Matroid):
    """Transversal matroid of a presentation.

    The independent sets are exactly the subsets that can be matched
    injectively into distinct presentation sets; rank is the size of a
    maximum such matching.
    """

    def __init__(self, presentation: Presentation):
        super().__init__(presentation.ground)
        self.presentation = presentation
        self._cache: dict[int, int] = {}

    @property
    def sets(self) -> tuple[ElementSet, ...]:
        return self.presentation.sets

    def rank_mask(self, mask: int) -> int:
        cached = self._cache.get(mask)
        if cached is None:
            cached = self._cache[mask] = _matching_size(self.presentation.set_masks, mask)
        return cached

    def restrict(self, X: ElementSet) -> TransversalMatroid:
        """Restriction to ``X``, presented by intersecting every set with ``X``."""
        keep = self._own(X)
        sub = GroundSet(self.ground.from_mask(keep).labels)
        positions = {self.ground.position(label): pos for pos, label in enumerate(sub.labels)}
        sub_masks = []
        for a in self.presentation.set_masks:
            m = 0
            for pos in _bits(a & keep):
                m |= 1 << positions[pos]
            sub_masks.append(ElementSet(sub, m))
        return TransversalMatroid(Presentation(sub, sub_masks))

    def __repr__(self) -> str:
        return f"TransversalMatroid({self.presentation!r})"


class MinorMatroid(Matroid):
    """Minor ``base \\ deleted / contracted`` as a rank-oracle view.

    The ground set is the base ground minus the deleted and contracted
    elements, in declaration order, and
    ``rank(X) = r_base(X | contracted) - r_base(contracted)``.
    """

    def __init__(
        self,
        base: Matroid,
        deleted: ElementSet | None = None,
        contracted: ElementSet | None = None,
    ):
        deleted = deleted if deleted is not None else base.ground.empty()
        contracted = contracted if contracted is not None else base.ground.empty()
        if deleted.ground != base.ground or contracted.ground != base.ground:
            raise PreconditionError("minor sets must live on the base ground set")
        if deleted.mask & contracted.mask:
            raise PreconditionError("deleted and contracted elements must be disjoint")
        removed = deleted.mask | contracted.mask
        ground = GroundSet(base.ground.from_mask(base.ground.full_mask & ~removed).labels)
        super().__init__(ground)
        self.base = base
        self.deleted = deleted
        self.contracted = contracted
        self._positions = [base.ground.position(label) for label in ground.labels]
        self._contracted_rank = base.rank_mask(contracted.mask)

    def rank_mask(self, mask: int) -> int:
        base_mask = self.contracted.mask
        for pos in _bits(mask):
            base_mask |= 1 << self._positions[pos]
        return self.base.rank_mask(base_mask) - self._contracted_rank

    def __repr__(self) -> str:
        return (
            f"MinorMatroid(deleted={self.deleted!r}, contracted={self.contracted!r}, "
            f"base={self.base!r})"
        )


def max_partial_transversal(presentation: Presentation, X: ElementSet) -> int:
    """Size of a largest subset of ``X`` matchable into distinct sets."""
    if X.ground != presentation.ground:
        raise PreconditionError("subset lives on a different ground set")
    return _matching_size(presentation.set_masks, X.mask)


def has_transversal(presentation: Presentation) -> bool:
    """True iff every set of the family can be matched to a distinct element."""
    full = presentation.ground.full_mask
    return _matching_size(presentation.set_masks, full) == len(presentation)


def loops_and_coloops(matroid: Matroid) -> tuple[ElementSet, ElementSet]:
    return matroid.loops(), matroid.coloops()


def matroids_equal(m1: Matroid, m2: Matroid, max_ground: int = MAX_GROUND) -> bool:
    """Exhaustively compare two matroids on the same labels.

    Raises on a label mismatch or when the ground set exceeds ``max_ground``;
    otherwise checks that rank agrees on every subset.
    """
    labels = m1.ground.labels
    if set(labels) != set(m2.ground.labels):
        raise PreconditionError("matroids live on different ground sets")
    n = len(labels)
    check_ground_size(n, max_ground, "matroid equality")
    if m2.ground.labels == labels:
        for mask in range(1 << n):
            if m1.rank_mask(mask) != m2.rank_mask(mask):
                return False
        return True
    positions = [m2.ground.position(label) for label in labels]
    for mask in range(1 << n):
        other = 0
        for pos in _bits(mask):
            other |= 1 << positions[pos]
        if m1.rank_mask(mask) != m2.rank_mask(other):
            return False
    return True


def normalize_presentation(
    matroid: TransversalMatroid, max_ground: int = MAX_GROUND
) -> TransversalMatroid:
    """Presentation of the same matroid with exactly ``rank`` many sets.

    Returns the input unchanged when the family already has rank-many sets.
    Otherwise empty sets are discarded and the lexicographically first index
    combination presenting an equal matroid is selected, which makes the
    result deterministic.
    """
    chosen, normalized = _normalize_with_indices(matroid, max_ground)
    return normalized


def _normalize_with_indices(
    matroid: TransversalMatroid, max_ground: int = MAX_GROUND
) -> tuple[tuple[int, ...], TransversalMatroid]:
    sets = matroid.presentation.sets
    r = matroid.full_rank
    if len(sets) == r:
        return tuple(range(r)), matroid
    check_ground_size(len(matroid.ground), max_ground, "presentation normalization")
    candidates = [i for i, s in enumerate(sets) if s.mask] if r else []
    for combo in combinations(candidates, r):
        trial = TransversalMatroid(
            Presentation(matroid.ground, [sets[i] for i in combo])
        )
        if matroids_equal(matroid, trial, max_ground):
            return combo, trial
    raise VerificationError(
        "no rank-sized subfamily presents the same matroid; "
        "this cannot happen for a genuine presentation"
    )


def restrict(matroid: TransversalMatroid, X: ElementSet) -> TransversalMatroid:
    return matroid.restrict(X)
