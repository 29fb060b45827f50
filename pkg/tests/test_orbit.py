from mutpot.mutation import Seed
from mutpot.orbit import explore, to_dot
from mutpot.seedfile import parse_seed
from mutpot.upperbound import ub_member

from conftest import F, L, coll, omega


def _seed(form, collection, potential="0"):
    return Seed(form, collection, F(potential, collection.rank))


def test_two_cycle(omega1):
    graph = explore(_seed(omega1, coll((0, 1))), depth=2)
    up, down = "k1 | (0,1)x1", "k1 | (0,-1)x1"
    assert sorted(n.key for n in graph.nodes) == sorted([up, down])
    assert len(graph.edges) == 2
    assert not graph.truncated
    # the two edges form a closed 2-cycle
    (e1,) = [e for e in graph.edges if e.source == up]
    (e2,) = [e for e in graph.edges if e.source == down]
    assert e1.target == down and e1.direction == (0, 1)
    assert e2.target == up and e2.direction == (0, -1)


def test_depth_zero_single_node(omega1):
    graph = explore(_seed(omega1, coll((0, 1), (1, 0))), depth=0)
    assert len(graph.nodes) == 1
    assert graph.nodes[0].depth == 0
    assert graph.edges == ()
    assert graph.truncated  # unexplored directions remain


def test_no_node_visited_twice(omega1):
    graph = explore(_seed(omega1, coll((0, 1), (1, 0))), depth=4)
    keys = [n.key for n in graph.nodes]
    assert len(keys) == len(set(keys))


def test_edges_reproducible(omega1):
    seed = _seed(omega1, coll(((0, 1), 2), (1, 0)))
    graph = explore(seed, depth=3)
    by_key = {n.key: n for n in graph.nodes}
    for edge in graph.edges:
        source = by_key[edge.source]
        assert edge.direction in source.collection
        mutated = source.collection.mutate(edge.direction, omega1)
        assert edge.target == f"k1 | {mutated.encode()}"


def test_include_potential_transports(omega1):
    seed = _seed(omega1, coll((1, 0), (0, 1)), "(1+x2)/x1")
    graph = explore(seed, depth=1, include_potential=True)
    start = next(n for n in graph.nodes if n.depth == 0)
    assert ub_member(start.potential, omega1, start.collection).verdict
    for node in graph.nodes:
        if node.depth == 1 and node.potential is not None:
            assert ub_member(node.potential, omega1, node.collection).verdict


def test_to_dot_single_node(omega1):
    graph = explore(_seed(omega1, coll((0, 1))), depth=0)
    dot = to_dot(graph)
    assert dot.startswith("digraph")
    assert dot.count(" -> ") == 0
    assert "(0,1)x1" in dot


def test_to_dot_two_cycle(omega1):
    graph = explore(_seed(omega1, coll((0, 1))), depth=2)
    dot = to_dot(graph)
    assert dot.count(" -> ") == 2
    assert 'label="(0,1)"' in dot
    assert 'label="(0,-1)"' in dot
    # deterministic: same graph, same text
    assert dot == to_dot(explore(_seed(omega1, coll((0, 1))), depth=2))


def test_orbit_from_parsed_seed():
    seed = parse_seed(
        "rank = 2\nform = k 1\nvector = (0,1) x 2\npotential = x1 + x2\n"
    )
    graph = explore(seed, depth=2)
    assert len(graph.nodes) >= 2
