import json

import pytest

from transversal import (
    PreconditionError,
    Presentation,
    TransversalMatroid,
    alpha,
    alpha_presentation,
    alpha_table,
    cyclic_flats,
    exchange_set,
    is_cotransversal,
    is_cyclic_flat,
    matroids_equal,
    maximal_presentation,
    normalize_presentation,
)
from transversal.harness import InstanceSpec, SplitMix64, random_presentation

from conftest import uniform_oracle


def seeded_matroids(seed, cases, max_elements=7, max_sets=4):
    gen = SplitMix64(seed)
    for _ in range(cases):
        spec = InstanceSpec(
            gen.next(), 2 + gen.below(max_elements - 1), 1 + gen.below(max_sets),
            0.2 + 0.6 * gen.unit(),
        )
        yield TransversalMatroid(random_presentation(spec))


# ------------------------------------------------------------- cyclic flats


def test_empty_set_cyclic_iff_loopless(fan):
    assert is_cyclic_flat(fan, fan.ground.empty())
    loopy = TransversalMatroid(Presentation.from_labels("ab", [["a"]]))
    assert not is_cyclic_flat(loopy, loopy.ground.empty())


def test_parallel_pair_is_cyclic_flat(fan):
    assert is_cyclic_flat(fan, fan.ground.subset("uv"))


def test_single_nonloop_is_not_cyclic(fan):
    assert not is_cyclic_flat(fan, fan.ground.subset("u"))


def test_cyclic_flats_u24(u24):
    assert cyclic_flats(u24) == [u24.ground.empty(), u24.ground.full()]


def test_cyclic_flats_k4(k4_oracle):
    flats = cyclic_flats(k4_oracle)
    triangles = [
        k4_oracle.ground.subset(t)
        for t in (["ab", "ac", "bc"], ["ab", "ad", "bd"], ["ac", "ad", "cd"], ["bc", "bd", "cd"])
    ]
    assert flats == [k4_oracle.ground.empty()] + triangles + [k4_oracle.ground.full()]


def test_cyclic_flats_free(free3):
    assert cyclic_flats(free3) == [free3.ground.empty()]


def test_cyclic_flats_with_dual_presentation_hint(chain):
    dual = chain.dual()
    generic = cyclic_flats(dual)
    hinted = cyclic_flats(dual, dual_presentation=chain.presentation)
    assert generic == hinted


# -------------------------------------------------------------------- alpha


def test_alpha_of_empty_set(u24):
    assert alpha(u24, u24.ground.empty()) == 0


def test_alpha_k4(k4_oracle):
    triangle = k4_oracle.ground.subset(["ab", "ac", "bc"])
    assert alpha(k4_oracle, triangle) == 1
    assert alpha(k4_oracle, k4_oracle.ground.full()) == -1


def test_alpha_u24(u24):
    assert alpha(u24, u24.ground.full()) == 2


def test_alpha_table_json_is_deterministic(k4_oracle):
    first = alpha_table(k4_oracle).dumps()
    second = alpha_table(k4_oracle).dumps()
    assert first == second
    data = json.loads(first)
    assert data[0] == {"flat": [], "alpha": 0}
    assert data[-1]["alpha"] == -1


# ------------------------------------------------------------ cotransversality


def test_is_cotransversal_u24(u24):
    assert is_cotransversal(u24) == (True, None)


def test_is_cotransversal_k4(k4_oracle):
    ok, witness = is_cotransversal(k4_oracle)
    assert not ok
    assert witness == k4_oracle.ground.full()


def test_is_cotransversal_free(free3):
    assert is_cotransversal(free3) == (True, None)


def test_cyclic_flat_only_alpha_observation():
    """Nonnegativity restricted to cyclic flats, recorded but not relied on.

    Whenever the full-subset test accepts, the cyclic-flat-only view must
    agree (flats are subsets); the converse is only tallied.
    """
    agreements = disagreements = 0
    for matroid in seeded_matroids(11, 40):
        dual = matroid.dual()
        full_ok, _ = is_cotransversal(dual)
        flats_ok = all(value >= 0 for _, value in alpha_table(dual))
        if full_ok:
            assert flats_ok
        if full_ok == flats_ok:
            agreements += 1
        else:
            disagreements += 1
    print(f"cyclic-flat-only alpha agreement: {agreements} of {agreements + disagreements}")


# --------------------------------------------------------- alpha presentation


def test_alpha_presentation_u24(u24):
    result = alpha_presentation(u24)
    assert result == Presentation.from_labels("abcd", [["a", "b", "c", "d"]] * 2)


def test_alpha_presentation_free(free3):
    result = alpha_presentation(free3)
    assert len(result) == 0
    # every element is a coloop here, emitted in no set: all loops of the dual
    assert TransversalMatroid(result).loops() == free3.ground.full()


def test_alpha_presentation_refuses_non_cotransversal(k4_oracle):
    with pytest.raises(PreconditionError) as err:
        alpha_presentation(k4_oracle)
    assert "alpha" in str(err.value)


def test_alpha_presentation_of_dual_matches_maximal(chain):
    by_alpha = alpha_presentation(chain.dual())
    by_coclosure = maximal_presentation(chain)
    assert sorted(s.mask for s in by_alpha) == sorted(s.mask for s in by_coclosure)


# -------------------------------------------------------- maximal presentation


def test_maximal_presentation_fixed_point(chain):
    once = maximal_presentation(chain)
    again = maximal_presentation(TransversalMatroid(once))
    assert once == again


def test_maximal_presentation_clones(clones):
    result = maximal_presentation(clones)
    assert result == Presentation.from_labels("ewxyz", [["e", "w", "x", "y", "z"]] * 4)


def test_maximal_presentation_sets_are_dual_cyclic_flats(chain):
    dual = chain.dual()
    for s in maximal_presentation(chain):
        assert is_cyclic_flat(dual, s)


def test_maximal_presentation_multiplicities_match_alpha():
    for matroid in seeded_matroids(5, 30):
        maximal = maximal_presentation(matroid)
        dual = normalize_presentation(matroid).dual()
        table = alpha_table(dual)
        for s in set(maximal.sets):
            assert sum(1 for t in maximal.sets if t == s) == table.value_of(s)
        by_alpha = alpha_presentation(dual)
        assert sorted(s.mask for s in by_alpha) == sorted(s.mask for s in maximal)


# ------------------------------------------------------------------ exchange


def test_exchange_identity(chain):
    assert exchange_set(chain, 0, chain.sets[0]) == chain.presentation


def test_exchange_with_coclosure_always_valid():
    m = TransversalMatroid(
        Presentation.from_labels("abcd", [["a", "b"], ["b", "c", "d"]])
    )
    for i, s in enumerate(m.sets):
        swapped = exchange_set(m, i, m.dual_closure(s))
        assert matroids_equal(TransversalMatroid(swapped), m)


def test_exchange_rejects_violating_shrink(chain):
    shrunk = chain.sets[0].minus("e")
    assert chain.dual_closure(shrunk) == chain.dual_closure(chain.sets[0])
    with pytest.raises(PreconditionError) as err:
        exchange_set(chain, 0, shrunk)
    assert "superset" in str(err.value)


def test_exchange_rejects_different_coclosure(chain):
    with pytest.raises(PreconditionError):
        exchange_set(chain, 0, chain.ground.subset("s"))


# -------------------------------------------------- dual-view rank structure


def test_flat_rank_formula_on_dual_view():
    """On the dual view, every flat F has rank |F| - #{i : A_i inside F}."""
    for matroid in seeded_matroids(23, 60):
        normalized = normalize_presentation(matroid)
        dual = normalized.dual()
        n = len(dual.ground)
        for mask in range(1 << n):
            F = dual.ground.from_mask(mask)
            if dual.closure(F).mask != mask:
                continue
            covered = sum(1 for a in normalized.presentation.set_masks if a & ~mask == 0)
            assert dual.rank_mask(mask) == mask.bit_count() - covered


def test_deletion_rank_formula_on_dual_view():
    """Rank in the dual view minus a pivot, on cyclic flats of that deletion.

    For every cyclic flat X of the deleted dual view,
    rank(X) = |X| - #{i : A_i within X} - max(#{i : e in A_i within X+e} - 1, 0).
    """
    gen = SplitMix64(31)
    for _ in range(40):
        spec = InstanceSpec(gen.next(), 2 + gen.below(5), 1 + gen.below(4), 0.2 + 0.6 * gen.unit())
        matroid = normalize_presentation(TransversalMatroid(random_presentation(spec)))
        element = matroid.ground.labels[gen.below(len(matroid.ground))]
        pos = matroid.ground.position(element)
        dual_minor = matroid.dual().delete(element)
        masks = matroid.presentation.set_masks
        for X in cyclic_flats(dual_minor):
            lifted = matroid.ground.subset(X.labels).mask
            covered = sum(1 for a in masks if a & ~lifted == 0)
            with_pivot = lifted | (1 << pos)
            pivot_covered = sum(
                1 for a in masks if a & ~with_pivot == 0 and (a >> pos) & 1
            )
            expected = len(X) - covered - max(pivot_covered - 1, 0)
            assert dual_minor.rank(X) == expected


def test_uniform_oracle_helper_consistency():
    u = uniform_oracle("abcde", 3)
    ok, witness = is_cotransversal(u)
    assert ok and witness is None
