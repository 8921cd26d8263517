"""Cyclic flats, the alpha function, and cotransversality machinery.

A matroid is cotransversal (a dual of a transversal matroid) exactly when
its alpha function is nonnegative on every subset.  The alpha values of the
cyclic flats are also the multiplicities with which those flats appear in
the maximal presentation of the dual, which is what ``alpha_presentation``
and ``maximal_presentation`` exploit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import (
    MAX_GROUND,
    ElementSet,
    GroundSet,
    Matroid,
    PreconditionError,
    Presentation,
    RankOracle,
    TransversalMatroid,
    VerificationError,
    check_ground_size,
    matroids_equal,
    normalize_presentation,
)

__all__ = [
    "AlphaTable",
    "RankOracle",
    "alpha",
    "alpha_table",
    "alpha_presentation",
    "cyclic_flats",
    "exchange_set",
    "is_cyclic_flat",
    "is_cotransversal",
    "maximal_presentation",
]


def is_cyclic_flat(matroid: Matroid, F: ElementSet) -> bool:
    """True iff ``F`` is closed and its restriction has no coloops.

    Equivalently, ``F`` is a flat that is a union of circuits; the empty set
    qualifies exactly when the matroid is loopless.
    """
    mask = F.mask if F.ground == matroid.ground else matroid.ground.subset(F.labels).mask
    r = matroid.rank_mask(mask)
    if matroid.closure(matroid.ground.from_mask(mask)).mask != mask:
        return False
    rest = mask
    while rest:
        low = rest & -rest
        if matroid.rank_mask(mask & ~low) != r:
            return False
        rest ^= low
    return True


def cyclic_flats(
    matroid: Matroid,
    dual_presentation: Presentation | None = None,
    max_ground: int = MAX_GROUND,
) -> list[ElementSet]:
    """All cyclic flats, sorted by (cardinality, bit pattern).

    Without extra information every subset is tested.  When the matroid is
    known to be the dual of a transversal matroid, pass a presentation of
    the dual: every cyclic flat is then a union of presentation sets, so
    only those unions need testing.
    """
    ground = matroid.ground
    n = len(ground)
    if dual_presentation is None:
        check_ground_size(n, max_ground, "cyclic flat enumeration")
        candidates = range(1 << n)
    else:
        if dual_presentation.ground != ground:
            raise PreconditionError("dual presentation lives on a different ground set")
        masks = dual_presentation.set_masks
        seen = set()
        for j_mask in range(1 << len(masks)):
            union = 0
            j = j_mask
            idx = 0
            while j:
                if j & 1:
                    union |= masks[idx]
                j >>= 1
                idx += 1
            seen.add(union)
        candidates = sorted(seen)
    flats = [
        mask
        for mask in candidates
        if is_cyclic_flat(matroid, ground.from_mask(mask))
    ]
    flats.sort(key=lambda m: (m.bit_count(), m))
    return [ground.from_mask(m) for m in flats]


@dataclass(frozen=True)
class AlphaTable:
    """Alpha values of every cyclic flat, in deterministic flat order."""

    ground: GroundSet
    entries: tuple[tuple[int, int], ...]  # (flat mask, alpha), sorted by (size, mask)

    def __iter__(self):
        return ((self.ground.from_mask(mask), value) for mask, value in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def value_of(self, flat: ElementSet) -> int:
        for mask, value in self.entries:
            if mask == flat.mask:
                return value
        raise KeyError(f"{flat!r} is not a cyclic flat")

    def flats(self) -> list[ElementSet]:
        return [self.ground.from_mask(mask) for mask, _ in self.entries]

    def to_json_list(self) -> list[dict]:
        return [
            {"flat": list(self.ground.from_mask(mask)), "alpha": value}
            for mask, value in self.entries
        ]

    def dumps(self) -> str:
        return json.dumps(self.to_json_list(), indent=2)


def alpha_table(
    matroid: Matroid,
    dual_presentation: Presentation | None = None,
    max_ground: int = MAX_GROUND,
) -> AlphaTable:
    """Alpha of every cyclic flat, computed bottom-up by flat size."""
    flats = cyclic_flats(matroid, dual_presentation, max_ground)
    entries: list[tuple[int, int]] = []
    for flat in flats:
        value = len(flat) - matroid.rank_mask(flat.mask)
        for mask, prior in entries:
            if mask & ~flat.mask == 0 and mask != flat.mask:
                value -= prior
        entries.append((flat.mask, value))
    return AlphaTable(matroid.ground, tuple(entries))


def alpha(
    matroid: Matroid,
    X: ElementSet,
    table: AlphaTable | None = None,
    max_ground: int = MAX_GROUND,
) -> int:
    """Cardinality minus rank of ``X``, minus alpha of every cyclic flat
    properly inside ``X``.  Negative values certify non-cotransversality."""
    if table is None:
        table = alpha_table(matroid, max_ground=max_ground)
    mask = X.mask if X.ground == matroid.ground else matroid.ground.subset(X.labels).mask
    value = mask.bit_count() - matroid.rank_mask(mask)
    for flat_mask, flat_alpha in table.entries:
        if flat_mask & ~mask == 0 and flat_mask != mask:
            value -= flat_alpha
    return value


def is_cotransversal(
    matroid: Matroid, max_ground: int = MAX_GROUND
) -> tuple[bool, ElementSet | None]:
    """Check alpha >= 0 on every subset.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness is a
    smallest subset with negative alpha (ties broken by bit pattern).
    """
    n = len(matroid.ground)
    check_ground_size(n, max_ground, "cotransversality test")
    table = alpha_table(matroid, max_ground=max_ground)
    by_size = sorted(range(1 << n), key=lambda m: (m.bit_count(), m))
    for mask in by_size:
        value = mask.bit_count() - matroid.rank_mask(mask)
        if value > 0:
            # independent subsets contain no nonempty cyclic flat, so the
            # subtraction below is a no-op for them and can be skipped
            for flat_mask, flat_alpha in table.entries:
                if flat_mask & ~mask == 0 and flat_mask != mask:
                    value -= flat_alpha
        if value < 0:
            return False, matroid.ground.from_mask(mask)
    return True, None


def alpha_presentation(
    matroid: Matroid, max_ground: int = MAX_GROUND
) -> Presentation:
    """Presentation of the dual built from alpha multiplicities.

    Each cyclic flat appears alpha-many times; the total count equals the
    dual rank.  Coloops of ``matroid`` never lie in a cyclic flat, so they
    end up in no set at all, which makes them loops of the presented dual,
    as they must be.  Refuses matroids that are not cotransversal.
    """
    ok, witness = is_cotransversal(matroid, max_ground)
    if not ok:
        raise PreconditionError(
            f"matroid is not cotransversal: alpha({witness!r}) < 0"
        )
    table = alpha_table(matroid, max_ground=max_ground)
    sets = []
    for mask, value in table.entries:
        sets.extend([matroid.ground.from_mask(mask)] * value)
    result = Presentation(matroid.ground, sets)
    dual_rank = len(matroid.ground) - matroid.full_rank
    if len(result) != dual_rank:
        raise VerificationError(
            f"alpha multiplicities total {len(result)}, expected dual rank {dual_rank}"
        )
    if not matroids_equal(TransversalMatroid(result).dual(), matroid, max_ground):
        raise VerificationError("alpha presentation does not present the dual")
    return result


def maximal_presentation(
    matroid: TransversalMatroid, max_ground: int = MAX_GROUND
) -> Presentation:
    """The unique presentation whose sets are cyclic flats of the dual.

    Obtained by coclosing each set of a rank-sized presentation; the input
    is normalized first when it has more sets than its rank.
    """
    normalized = normalize_presentation(matroid, max_ground)
    closed = [normalized.dual_closure(a) for a in normalized.presentation.sets]
    result = Presentation(matroid.ground, closed)
    if not matroids_equal(TransversalMatroid(result), matroid, max_ground):
        raise VerificationError("coclosing the presentation changed the matroid")
    return result


def exchange_set(
    matroid: TransversalMatroid,
    index: int,
    replacement: ElementSet,
    max_ground: int = MAX_GROUND,
) -> Presentation:
    """Swap one presentation set for another with the same coclosure.

    The replacement must satisfy, for every superset ``B`` of it that does
    not contain the original set, ``dual_rank(B) < |B| - #{j : A_j within B}``.
    Both conditions are checked exhaustively; a violation is rejected with
    the offending superset.  The swapped presentation is verified to present
    the same matroid before it is returned.
    """
    sets = matroid.presentation.sets
    if not 0 <= index < len(sets):
        raise PreconditionError(f"set index {index} out of range")
    original = sets[index]
    new = (
        replacement
        if replacement.ground == matroid.ground
        else matroid.ground.subset(replacement.labels)
    )
    if matroid.dual_closure(new) != matroid.dual_closure(original):
        raise PreconditionError(
            "replacement has a different coclosure than the original set"
        )
    n = len(matroid.ground)
    check_ground_size(n, max_ground, "presentation exchange")
    masks = matroid.presentation.set_masks
    rest = matroid.ground.full_mask & ~new.mask
    sub = rest
    while True:
        b_mask = new.mask | sub
        if original.mask & ~b_mask:
            covered = sum(1 for a in masks if a & ~b_mask == 0)
            if matroid.dual_rank_mask(b_mask) >= b_mask.bit_count() - covered:
                raise PreconditionError(
                    f"replacement rejected: superset {matroid.ground.from_mask(b_mask)!r} "
                    "fails the dual rank condition"
                )
        if sub == 0:
            break
        sub = (sub - 1) & rest
    swapped = list(sets)
    swapped[index] = new
    result = Presentation(matroid.ground, swapped)
    if not matroids_equal(TransversalMatroid(result), matroid, max_ground):
        raise VerificationError("validated exchange changed the matroid")
    return result
