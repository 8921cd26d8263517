import json

import pytest

from transversal import (
    ParseError,
    PathCircularInstance,
    PreconditionError,
    SimpleGraph,
    VertexPath,
    add_coloop,
    bicircular,
    contract_path,
    delete_path,
    matroid_of,
    matroids_equal,
    multipath,
    validate,
)

from conftest import uniform_oracle


@pytest.fixture
def k3():
    return SimpleGraph("abc", [("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def segment():
    """Path graph a-b-c carrying one long and three short paths."""
    g = SimpleGraph("abc", [("a", "b"), ("b", "c")])
    return PathCircularInstance(g, [("a", "b", "c"), ("a",), ("c",), ("a", "b")])


# ------------------------------------------------------------------- graphs


def test_simple_graph_rejects_bad_edges():
    with pytest.raises(ParseError):
        SimpleGraph("ab", [("a", "a")])
    with pytest.raises(ParseError):
        SimpleGraph("ab", [("a", "c")])
    with pytest.raises(ParseError):
        SimpleGraph("aa")


def test_simple_graph_dedupes_edges():
    g = SimpleGraph("ab", [("a", "b"), ("b", "a")])
    assert g.sorted_edges() == [("a", "b")]
    assert g.degree("a") == 1


def test_paths_validated_against_graph():
    g = SimpleGraph("abc", [("a", "b")])
    with pytest.raises(ParseError):
        PathCircularInstance(g, [("a", "c")])
    with pytest.raises(ParseError):
        PathCircularInstance(g, [("a", "b", "a")])
    with pytest.raises(ParseError):
        PathCircularInstance(g, [("a", "x")])


def test_path_direction_is_normalized():
    g = SimpleGraph("abc", [("a", "b"), ("b", "c")])
    forward = PathCircularInstance(g, [("a", "b", "c")])
    backward = PathCircularInstance(g, [("c", "b", "a")])
    assert forward.paths == backward.paths


# ----------------------------------------------------------------- validate


def test_short_paths_always_valid(k3):
    instance = PathCircularInstance(k3, [("a", "b"), ("c",), ()])
    assert validate(instance) == (True, [])


def test_interior_cover_violation():
    g = SimpleGraph("abc", [("a", "b"), ("b", "c")])
    instance = PathCircularInstance(g, [("a", "b", "c"), ("b",)])
    ok, violations = validate(instance)
    assert not ok
    assert violations[0].condition == "interior-cover"
    assert violations[0].vertex == "b"


def test_interior_cover_satisfied_by_end():
    g = SimpleGraph("abc", [("a", "b"), ("b", "c")])
    instance = PathCircularInstance(g, [("a", "b", "c"), ("a", "b")])
    assert validate(instance)[0]


def test_interior_degree_violation():
    g = SimpleGraph("abcd", [("a", "b"), ("b", "c"), ("b", "d")])
    instance = PathCircularInstance(g, [("a", "b", "c")])
    ok, violations = validate(instance)
    assert not ok
    assert violations[0].condition == "interior-degree"


# ---------------------------------------------------------------- matroid_of


def test_bicircular_k3_is_free(k3):
    m = matroid_of(bicircular(k3))
    assert matroids_equal(m, uniform_oracle(["p0", "p1", "p2"], 3))


def test_null_path_is_loop(k3):
    instance = PathCircularInstance(k3, [("a", "b"), ()])
    m = matroid_of(instance)
    assert m.loops() == m.ground.subset(["p1"])


def test_two_single_vertex_paths_share_rank():
    g = SimpleGraph("a")
    m = matroid_of(PathCircularInstance(g, [("a",), ("a",)]))
    assert m.full_rank == 1
    assert not m.is_independent(m.ground.full())


def test_matroid_of_requires_validity():
    g = SimpleGraph("abc", [("a", "b"), ("b", "c")])
    instance = PathCircularInstance(g, [("a", "b", "c"), ("b",)])
    with pytest.raises(PreconditionError):
        matroid_of(instance)


def test_degenerate_instances_validate():
    isolated = PathCircularInstance(SimpleGraph("abc"), [])
    assert validate(isolated)[0]
    assert matroid_of(isolated).full_rank == 0
    nulls = PathCircularInstance(SimpleGraph("a"), [(), ()])
    assert validate(nulls)[0]
    m = matroid_of(nulls)
    assert m.loops() == m.ground.full()


# ------------------------------------------------------------------ deletion


def test_delete_null_path_removes_loop(k3):
    instance = PathCircularInstance(k3, [("a", "b"), ()])
    result = delete_path(instance, 1)
    assert result.names == ("p0",)
    assert not matroid_of(result).loops()


def test_delete_path_matches_minor(k3):
    instance = bicircular(k3)
    m = matroid_of(instance)
    result = delete_path(instance, 0)
    assert matroids_equal(matroid_of(result), m.delete("p0"))
    assert matroid_of(result).full_rank == 2


def test_delete_only_path_through_vertex(k3):
    instance = PathCircularInstance(k3, [("a", "b"), ("c",)])
    result = delete_path(instance, 1)
    assert validate(result)[0]
    assert result.graph == instance.graph  # vertex c stays, with an empty set


def test_delete_out_of_range(k3):
    with pytest.raises(PreconditionError):
        delete_path(bicircular(k3), 3)


# --------------------------------------------------------------- contraction


def test_contract_worked_example(segment):
    result = contract_path(segment, 0)
    assert result.names == ("p1", "p2", "p3")
    assert result.graph == SimpleGraph(["a~b", "b~c"], [("a~b", "b~c")])
    assert result.paths == (
        VertexPath(("a~b",)),
        VertexPath(("b~c",)),
        VertexPath(("a~b", "b~c")),
    )


def test_contract_single_vertex_path():
    g = SimpleGraph("ab", [("a", "b")])
    instance = PathCircularInstance(g, [("a",), ("a", "b"), ("a", "b")])
    result = contract_path(instance, 0)
    assert "a" not in result.graph.vertices
    assert result.paths == (VertexPath(("b",)), VertexPath(("b",)))


def test_contract_null_path_is_deletion(k3):
    instance = PathCircularInstance(k3, [("a", "b"), ()])
    assert contract_path(instance, 1) == delete_path(instance, 1)


def test_contract_coloop_is_deletion(k3):
    instance = bicircular(k3)  # free matroid: every element is a coloop
    assert contract_path(instance, 1) == delete_path(instance, 1)


def test_contract_wraparound_cycle():
    g = SimpleGraph("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
    instance = PathCircularInstance(
        g,
        [("a", "b", "c"), ("a", "d", "c"), ("a", "d", "c"), ("a",), ("c",), ("a", "b")],
    )
    assert validate(instance)[0]
    assert not matroid_of(instance).coloops()
    result = contract_path(instance, 0)
    # paths through both former ends now travel hook-to-hook through d
    assert result.paths[0] == VertexPath(("a~b", "d", "b~c"))
    assert result.graph.has_edge("a~b", "b~c")


def test_contract_strips_and_restores_foreign_coloops():
    # p4 is a coloop on a separate edge; contracting p0 must survive it
    g = SimpleGraph(
        "xyzab", [("x", "y"), ("y", "z"), ("x", "z"), ("a", "b")]
    )
    instance = PathCircularInstance(
        g, [("x", "y"), ("y", "z"), ("x", "z"), ("x",), ("a", "b")]
    )
    m = matroid_of(instance)
    assert list(m.coloops()) == ["p4"]
    result = contract_path(instance, 0)
    assert set(result.names) == {"p1", "p2", "p3", "p4"}
    assert validate(result)[0]


def test_contract_out_of_range(k3):
    with pytest.raises(PreconditionError):
        contract_path(bicircular(k3), 5)


def test_contract_requires_valid_input():
    g = SimpleGraph("abc", [("a", "b"), ("b", "c")])
    instance = PathCircularInstance(g, [("a", "b", "c"), ("b",)])
    with pytest.raises(PreconditionError):
        contract_path(instance, 0)


def test_subdivision_name_collision_rejected():
    g = SimpleGraph(["a", "b", "a~b"], [("a", "b"), ("b", "a~b")])
    instance = PathCircularInstance(
        g, [("a", "b"), ("a",), ("b",), ("a~b", "b"), ("a~b",)]
    )
    assert validate(instance)[0]
    m = matroid_of(instance)
    if "p0" not in m.coloops():
        with pytest.raises(ParseError):
            contract_path(instance, 0)


# -------------------------------------------------------------- constructors


def test_bicircular_membership_bound(k3):
    instance = bicircular(k3)
    m = matroid_of(instance)
    for label in m.ground:
        memberships = sum(1 for s in m.sets if label in s)
        assert memberships <= 2


def test_bicircular_single_edge():
    m = matroid_of(bicircular(SimpleGraph("ab", [("a", "b")])))
    assert m.full_rank == 1
    assert len(m.sets) == 2


def test_bicircular_two_disjoint_edges():
    g = SimpleGraph("abcd", [("a", "b"), ("c", "d")])
    m = matroid_of(bicircular(g))
    assert m.full_rank == 2
    assert m.is_independent(m.ground.full())


def test_multipath_short_arcs():
    instance = multipath(3, [(0, 0), (1, 1), (2, 2)])
    assert validate(instance)[0]


def test_multipath_five_cycle():
    instance = multipath(5, [(0, 2), (2, 4), (4, 1)])
    assert validate(instance)[0]
    assert [list(p.vertices) for p in instance.paths] == [
        ["v0", "v1", "v2"],
        ["v2", "v3", "v4"],
        ["v1", "v0", "v4"],
    ]


def test_multipath_rejects_nested_intervals():
    with pytest.raises(PreconditionError) as err:
        multipath(5, [(0, 3), (1, 2)])
    assert "contain" in str(err.value)


def test_multipath_rejects_full_cycle_arc():
    with pytest.raises(PreconditionError):
        multipath(4, [(0, 3)])


def test_multipath_rejects_tiny_cycle():
    with pytest.raises(PreconditionError):
        multipath(2, [])


# ------------------------------------------------------------------- coloops


def test_add_coloop_to_empty_instance():
    instance = add_coloop(PathCircularInstance(SimpleGraph([]), []))
    m = matroid_of(instance)
    assert m.full_rank == 1 and len(m.ground) == 1


def test_add_coloop_raises_rank(k3):
    instance = add_coloop(bicircular(k3))
    assert matroid_of(instance).full_rank == 4


def test_add_coloop_composition_uses_fresh_vertices(k3):
    once = add_coloop(bicircular(k3))
    twice = add_coloop(once)
    assert len(set(twice.graph.vertices)) == len(twice.graph.vertices)
    assert twice.names[-2:] == ("p3", "p4")


# ---------------------------------------------------------------------- json


def test_instance_round_trip(segment):
    again = PathCircularInstance.loads(segment.dumps())
    assert again.to_json_dict() == segment.to_json_dict()


def test_instance_parse_errors():
    with pytest.raises(ParseError):
        PathCircularInstance.loads("[]")
    with pytest.raises(ParseError):
        PathCircularInstance.loads(json.dumps({"vertices": ["a"], "edges": []}))
    with pytest.raises(ParseError):
        PathCircularInstance.loads(
            json.dumps({"vertices": ["a"], "edges": [["a"]], "paths": []})
        )


def test_instance_dot_lists_paths(segment):
    dot = segment.to_dot()
    assert dot.startswith("graph pathcircular {")
    assert "p0: a-b-c" in dot
    assert '"a" -- "b";' in dot
    null_holder = PathCircularInstance(SimpleGraph("a"), [()])
    assert "(null)" in null_holder.to_dot()


# ------------------------------------------------- cross-module presenting check


def test_contracted_path_is_minimal_presenting_graph(segment):
    from transversal.harness import _path_is_minimal_presenting

    m = matroid_of(segment)
    assert _path_is_minimal_presenting(segment, m, 0)
    assert _path_is_minimal_presenting(segment, m, 3)
