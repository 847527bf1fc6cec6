import pytest
from hypothesis import given

from sctree.acceptance import named_vertex, seven_path
from sctree.automorphism import ReducedWord, standard_maps
from sctree.bassserre import (
    ID_A,
    ID_B,
    Axis,
    act,
    act_path,
    axis_intersection_diam,
    axis_window,
    diameter,
    distance,
    edge_word,
    geodesic,
    is_adjacent,
    median,
    parse_vertex,
    project,
    vertex_to_str,
)
from sctree.galois import get_field

from strategies import vertices, words

F3 = get_field(3)
BT = standard_maps(F3)["bt"].to_word()


def test_base_edge():
    assert distance(ID_A, ID_B) == 1
    assert is_adjacent(ID_A, ID_B)
    assert geodesic(ID_A, ID_B) == [ID_A, ID_B]


def test_seven_path_is_a_geodesic():
    P = seven_path(F3)
    assert len(P) == 7
    assert geodesic(P[0], P[-1]) == P
    assert distance(P[0], P[-1]) == 6


@given(vertices(F3), vertices(F3), vertices(F3))
def test_tree_metric(u, v, w):
    assert distance(u, v) == distance(v, u)
    assert (distance(u, v) == 0) == (u == v)
    assert distance(u, w) <= distance(u, v) + distance(v, w)
    # parity: A and B alternate along every path
    assert distance(u, v) % 2 == (u.side != v.side)


@given(vertices(F3), vertices(F3))
def test_geodesic_shape(u, v):
    P = geodesic(u, v)
    assert P[0] == u and P[-1] == v
    assert len(P) == distance(u, v) + 1
    assert len(set(P)) == len(P)
    assert all(is_adjacent(a, b) for a, b in zip(P, P[1:]))


@given(vertices(F3), vertices(F3), vertices(F3))
def test_median_lies_on_all_three_geodesics(a, b, c):
    m = median(a, b, c)
    for x, y in ((a, b), (b, c), (a, c)):
        assert m in geodesic(x, y)


@given(words(F3), vertices(F3), vertices(F3))
def test_action_is_an_isometry(phi, u, v):
    assert distance(act(phi, u), act(phi, v)) == distance(u, v)
    assert act_path(phi, geodesic(u, v)) == geodesic(act(phi, u), act(phi, v))


@given(words(F3), words(F3), vertices(F3))
def test_action_is_a_left_action(a, b, v):
    assert act(a * b, v) == act(a, act(b, v))
    assert act(ReducedWord.identity(F3), v) == v


@given(vertices(F3), vertices(F3), vertices(F3))
def test_projection_to_geodesic(v, a, b):
    P = geodesic(a, b)
    q = project(v, P)
    assert q in P
    assert all(distance(v, q) <= distance(v, x) for x in P)


@given(vertices(F3))
def test_vertex_text_round_trip(v):
    assert parse_vertex(F3, vertex_to_str(F3, v)) == v


@given(vertices(F3))
def test_vertex_text_round_trip_f9(v):
    F9 = get_field(3, 2)
    w = ReducedWord(F9, (), ReducedWord.identity(F9).core)
    assert parse_vertex(F9, vertex_to_str(F9, act(w, ID_A))) == ID_A


@pytest.mark.parametrize("text", ["A[0]", "Q[1]|A", "A[0] junk|B"])
def test_parse_vertex_rejects(text):
    with pytest.raises(ValueError):
        parse_vertex(F3, text)


def test_named_vertices():
    assert named_vertex(F3, "id", "A") == ID_A
    assert distance(named_vertex(F3, "tb", "A"), ID_A) == 2


@given(vertices(F3), vertices(F3))
def test_edge_word_moves_base_edge(u, v):
    P = geodesic(u, v)
    for a, b in zip(P, P[1:]):
        psi = edge_word(F3, a, b)
        assert {act(psi, ID_A), act(psi, ID_B)} == {a, b}


def test_axis_of_bt():
    ax = Axis(BT)
    assert ax.length == 2
    assert ax.contains(ax.base)
    for k in range(-6, 7):
        assert act(BT, ax.vertex_at(k)) == ax.vertex_at(k + 2)
        assert ax.position(ax.vertex_at(k)) == k
    W = ax.vertices(-5, 5)
    assert diameter(W) == 10
    assert geodesic(W[0], W[-1]) == W


def test_elliptic_has_no_axis():
    with pytest.raises(ValueError):
        Axis(standard_maps(F3)["t"].to_word())


@given(words(F3, 4), vertices(F3))
def test_axis_projection_is_nearest(phi, v):
    ax = Axis(BT.conj(phi))
    q = ax.project(v)
    assert ax.contains(q)
    k = ax.position(q)
    near = ax.vertices(k - 3, k + 3)
    assert all(distance(v, q) <= distance(v, x) for x in near)
    assert ax.position(act(ax.g, q)) == k + ax.length


def test_axis_window():
    W = axis_window(BT**3, ID_A, 4)
    assert len(W) == 9
    assert geodesic(W.window[0], W.window[-1]) == list(W.window)


def test_axis_intersection_diam_saturates():
    assert axis_intersection_diam(BT, BT, 20) == 20
    assert axis_intersection_diam(BT, BT**2, 11) == 11
    # t conjugates bt to its inverse, which shares the axis
    t = standard_maps(F3)["t"].to_word()
    assert axis_intersection_diam(BT, BT.conj(t), 50) == 50


@given(words(F3, 3))
def test_axis_intersection_diam_matches_window_count(phi):
    other = BT.conj(phi)
    ax1, ax2 = Axis(BT), Axis(other)
    common = [v for v in ax1.vertices(-40, 40) if ax2.contains(v)]
    expected = max(len(common) - 1, 0)
    assert axis_intersection_diam(BT, other, 30) == min(expected, 30)


@given(vertices(F3), vertices(F3), vertices(F3))
def test_triangles_are_tripods(x, y, z):
    m = median(x, y, z)
    for a, b in ((x, y), (y, z), (x, z)):
        assert distance(a, m) + distance(m, b) == distance(a, b)
    assert distance(x, m) + distance(y, m) + distance(z, m) == (
        distance(x, y) + distance(y, z) + distance(x, z)
    ) // 2


@given(words(F3, 3), vertices(F3))
def test_displacement_grows_with_distance_to_axis(phi, v):
    g = BT.conj(phi)
    ax = Axis(g)
    assert distance(v, act(g, v)) == ax.length + 2 * distance(v, ax.project(v))
