import pytest
from hypothesis import given

from sctree.acceptance import seven_path
from sctree.automorphism import standard_maps
from sctree.bassserre import ID_A, ID_B, act, act_path, geodesic
from sctree.galois import get_field
from sctree.stabilizers import (
    InfiniteStabilizer,
    WpdInconclusive,
    affine_group_order,
    core_group_order,
    fix_pair,
    is_finite_proxy,
    path_stabilizer,
    transporter,
    wpd_certify,
)

from strategies import words

F3 = get_field(3)


def test_group_orders():
    assert affine_group_order(F3) == 432
    assert core_group_order(F3) == 108


def test_vertex_and_edge_stabilizers():
    assert path_stabilizer(F3, [ID_A]).order == 432
    assert fix_pair(F3, ID_A, ID_B).order == 108


def test_lone_b_vertex_is_infinite():
    with pytest.raises(InfiniteStabilizer):
        path_stabilizer(F3, [ID_B])


def test_seven_path_orders():
    assert path_stabilizer(F3, seven_path(F3)).order == 1
    F7 = get_field(7)
    assert path_stabilizer(F7, seven_path(F7)).order == 3


def test_stabilizer_elements_fix_the_path():
    P = seven_path(F3)[:4]
    st = path_stabilizer(F3, P)
    assert all(act_path(c, P) == list(P) for c in st.elements)
    # closed under products
    els = set(st.elements)
    a, b = st.elements[1], st.elements[-1]
    assert a * b in els and a.inverse() in els


@given(words(F3, 4))
def test_stabilizer_orders_are_conjugation_invariant(phi):
    P = seven_path(F3)[1:5]
    assert path_stabilizer(F3, act_path(phi, P)).order == path_stabilizer(F3, P).order


@given(words(F3, 4))
def test_transporter_is_a_coset(phi):
    P = seven_path(F3)[2:6]
    Q = act_path(phi, P)
    T = transporter(F3, P, Q)
    assert len(T.witnesses) == path_stabilizer(F3, P).order
    assert all(act_path(w, P) == Q for w in T.witnesses)
    assert phi in T.witnesses


def test_transporter_rejects_mismatched_paths():
    P = seven_path(F3)
    with pytest.raises(ValueError):
        transporter(F3, P[:3], P[1:4])
    t = standard_maps(F3)["t"].to_word()
    T = transporter(F3, [ID_A, ID_B], [ID_A, act(t, ID_B)])
    assert t in T.witnesses and len(T.witnesses) == 108


def test_path_must_be_geodesic():
    P = seven_path(F3)
    with pytest.raises(ValueError):
        path_stabilizer(F3, [P[0], P[2]])


def test_finite_proxy():
    assert is_finite_proxy(F3, 1)
    assert is_finite_proxy(F3, 8)
    assert not is_finite_proxy(F3, 18)


def test_wpd_certificate_for_bt():
    bt = standard_maps(F3)["bt"].to_word()
    cert = wpd_certify(bt, 6)
    assert cert.stabilizer_order % 3 != 0
    assert path_stabilizer(F3, cert.path).order == cert.stabilizer_order
    assert geodesic(cert.u, cert.v) == list(cert.path)


def test_wpd_inconclusive_reports_orders():
    bt = standard_maps(F3)["bt"].to_word()
    with pytest.raises(WpdInconclusive) as err:
        wpd_certify(bt, 1)
    assert err.value.orders and all(o % 3 == 0 for o in err.value.orders.values())


def test_transporter_examples():
    s = standard_maps(F3)
    bt, t = s["bt"].to_word(), s["t"].to_word()
    P = [ID_A, ID_B]
    assert bt in transporter(F3, P, act_path(bt, P)).witnesses
    from sctree.bassserre import Axis

    W = Axis(bt).vertices(-1, 1)
    assert W[0].side == W[-1].side
    assert t in transporter(F3, W, W[::-1]).witnesses
