from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weberhex import config16 as c16
from weberhex import f2geom as fg
from weberhex import latticekit as lk
from weberhex.errors import WrongKind

N = c16.DivisorClass.node
T = c16.DivisorClass.trope
H = c16.class_H()

hexads = st.sampled_from(fg.enumerate_weber_hexads())
elements = st.sampled_from(fg.TWO_TORSION)


def test_gram_presentation_shape():
    g = c16.gram_matrix()
    assert len(g) == 32 and all(len(r) == 32 for r in g)
    assert all(g[i][i] == -2 for i in range(32))
    assert all(g[i][j] == g[j][i] for i in range(32) for j in range(32))
    for row in c16.incidence_matrix():
        assert sum(row) == 6
    assert c16.generator_names()[0] == "N_0" and c16.generator_names()[16] == "T_1"


def test_pairing_rule_examples():
    assert N("12").pair(T("1")) == 1
    assert N("0").pair(T("1")) == 1
    assert N("23").pair(T("1")) == 0
    assert N("12").pair(N("12")) == -2


def test_H_pairings():
    assert H.self_pair() == 4
    assert H.pair(N("0")) == 0
    assert H.pair(T("2")) == 2
    assert all(H.pair(N(a)) == 0 for a in fg.TWO_TORSION)
    assert all(H.pair(T(b)) == 2 for b in fg.THETA_CHARS)


def test_H_relations():
    rel = c16.check_H_relations()
    assert len(rel) == 17
    assert all(r["pass"] for r in rel)


def test_rank():
    assert c16.lattice_rank() == 17
    n_block = [row[:16] for row in c16.gram_matrix()[:16]]
    from weberhex import _exact as ex

    assert ex.rank(n_block) == 16
    assert len(ex.nullspace(c16.gram_matrix())) == 15


@settings(max_examples=40)
@given(hexads)
def test_hessian_class(w):
    big_l = c16.hessian_class(w)
    assert big_l.self_pair() == 4
    for a in fg.TWO_TORSION:
        assert big_l.pair(N(a)) == (2 if a in w.elements else 0)


def test_S_divisors():
    rep = c16.check_S_divisors()
    assert all(r["pass"] for r in rep)
    total = c16.DivisorClass.zero()
    for d in c16.s_divisors().values():
        total = total + d
    assert total.coords[c16.t_index(fg.ThetaChar("134"))] == 2
    assert total.coords[c16.n_index(fg.TwoTorsion("56"))] == 3


def test_S_divisors_transport():
    for w in fg.enumerate_weber_hexads()[::17]:
        big_l = c16.hessian_class(w)
        assert all(d.equivalent(big_l) for d in c16.s_divisors(w).values())


@settings(max_examples=20, deadline=None)
@given(hexads)
def test_node_coverage(w):
    cover = c16.node_coverage(w)
    assert len(cover) == 10
    assert not cover & w.elements
    assert cover | w.elements == set(fg.TWO_TORSION)


def test_eleventh_node_class_canonical():
    w = c16.canonical_hexad()
    e = c16.eleventh_node_class(w)
    assert e.pair(H) == 3
    assert e.self_pair() == Fraction(-3, 4)
    assert e.is_dual()
    assert e.equivalent(c16.solve_eleventh_node_class(w))
    assert Fraction(-2) - e.self_pair() == Fraction(-5, 4)


@settings(max_examples=30)
@given(hexads)
def test_eleventh_node_class_all(w):
    e = c16.eleventh_node_class(w)
    assert e.pair(H) == 3
    assert e.self_pair() == Fraction(-3, 4)
    assert e.is_dual()
    for a in fg.TWO_TORSION:
        assert e.pair(N(a)) == (1 if a in w.elements else 0)


def test_switch_obstruction():
    for r in fg.enumerate_tetrads("rosenhain"):
        e = c16.switch_obstruction(r)
        assert e.self_pair() == Fraction(-7, 4)
        flipped = Fraction(-1, 4) * H + Fraction(1, 2) * c16.nodes_sum(r.elements)
        assert flipped.self_pair() == Fraction(-7, 4)
    with pytest.raises(WrongKind):
        c16.switch_obstruction(fg.enumerate_tetrads("goepel")[0])


def test_translation_and_switch_preserve_pairing():
    for a in fg.TWO_TORSION[:4]:
        assert c16.translation_action(a).preserves_pairing()
    for b in fg.THETA_CHARS[:4]:
        assert c16.switch_action(b).preserves_pairing()
    ident = c16.translation_action(fg.ZERO)
    assert ident.images == tuple(range(32))


@settings(max_examples=16)
@given(st.sampled_from(fg.THETA_CHARS))
def test_switch_action_on_H(b):
    s = c16.switch_action(b)
    image = s(H)
    target = 3 * H - c16.nodes_sum(fg.TWO_TORSION)
    assert image.equivalent(target)
    assert target.self_pair() == 4
    v = c16.DivisorClass.node(fg.TWO_TORSION[3]) + 2 * T(b)
    assert s(s(v)).equivalent(v)


@settings(max_examples=30)
@given(hexads, elements)
def test_translation_covariance(w, a):
    t = c16.translation_action(a)
    assert t(H).equivalent(H)
    assert t(c16.hessian_class(w)).equivalent(c16.hessian_class(w.translate(a)))
    assert t(c16.eleventh_node_class(w)).equivalent(c16.eleventh_node_class(w.translate(a)))
    assert lk.patching_subgroup(w.translate(a)) == lk.patching_subgroup(w)


def test_perp_moves_keep_patching_subgroup():
    for w in fg.enumerate_weber_hexads()[:30]:
        for v in fg.perp_moves(w):
            assert lk.patching_subgroup(v) == lk.patching_subgroup(w)


def test_four_nodes_of_a_hexad_not_coplanar():
    for w in fg.enumerate_weber_hexads()[::7]:
        for f in combinations(w.elements, 4):
            assert any(sum(N(a).pair(T(b)) for a in f) == 3 for b in fg.THETA_CHARS)


def test_to_json_sparse():
    d = c16.eleventh_node_class(c16.canonical_hexad()).to_json()
    assert d["T_1"] == "3/2"
    assert d["N_12"] == "1/4"
