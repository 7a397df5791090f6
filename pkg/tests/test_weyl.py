import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rootlimits import rootsys as R
from rootlimits import vec as V
from rootlimits import weyl as W
from rootlimits.errors import DomainError, ResourceLimitError
from rootlimits.vec import vec


def test_reflection_examples():
    s = W.reflection(vec(-1, 1, 0))          # f_2 - f_1 in three coordinates
    assert s.perm == (1, 0, 2) and s.signs == (1, 1, 1)

    s = W.reflection(vec(1, 0))              # f_1 in B_2
    assert s.perm == (0, 1) and s.signs == (-1, 1)

    s = W.reflection(vec(1, 1, 0, 0))        # f_1 + f_2 in D_4
    assert s.perm == (1, 0, 2, 3) and s.signs == (-1, -1, 1, 1)

    with pytest.raises(DomainError):
        W.reflection(vec(0, 0))


def test_reflection_is_involution_and_negates_root(rng):
    for fam, rank in [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("BC", 2)]:
        rs = R.build_root_system(fam, rank)
        for a in rs.positive_roots:
            s = W.reflection(a)
            assert s.compose(s).is_identity()
            assert s.act(a) == V.neg(a)


def test_action_examples():
    e = W.identity_element(3)
    assert e.act(vec(1, 2, 3)) == vec(1, 2, 3)

    s = W.reflection(vec(1, 0))
    assert s.act(vec(3, 5)) == vec(-3, 5)

    w = W.WeylElement((1, 0, 2, 3), (-1, -1, 1, 1))
    assert w.act(vec("a1", 0, 0, 0) if False else vec(1, 2, 3, 4)) == vec(-2, -1, 3, 4)


def test_action_preserves_inner_products(rng):
    g = W.weyl_group(R.build_root_system("D", 4), extended=True)
    elems = g.element_list()
    for _ in range(40):
        w = elems[rng.randrange(len(elems))]
        u = tuple(Fraction(rng.randrange(-5, 6)) for _ in range(4))
        v = tuple(Fraction(rng.randrange(-5, 6)) for _ in range(4))
        assert V.dot(w.act(u), w.act(v)) == V.dot(u, v)


def test_enumeration_orders():
    cases = [
        ("A", 1, False, 2),
        ("A", 3, False, 24),
        ("B", 3, False, 48),
        ("C", 3, False, 48),
        ("D", 4, False, 192),
        ("D", 4, True, 384),
        ("BC", 2, False, 8),
    ]
    for fam, rank, ext, order in cases:
        g = W.weyl_group(R.build_root_system(fam, rank), ext)
        elems = g.element_list()
        assert len(elems) == order == g.order()
        assert len(set(elems)) == order
        assert all(g.contains(w) for w in elems)


def test_enumeration_order_formulas():
    assert W.weyl_group(R.build_root_system("A", 4)).order() == math.factorial(5)
    assert W.weyl_group(R.build_root_system("B", 5)).order() == 2**5 * math.factorial(5)
    assert W.weyl_group(R.build_root_system("D", 5)).order() == 2**4 * math.factorial(5)


def test_enumeration_limit():
    g = W.weyl_group(R.build_root_system("B", 4))
    with pytest.raises(ResourceLimitError):
        list(g.elements(limit=3))


def test_group_axioms_exhaustive_small_and_sampled(rng):
    g = W.weyl_group(R.build_root_system("B", 2))
    elems = set(g.element_list())
    for w in elems:
        assert w.inverse() in elems
        for u in elems:
            assert w.compose(u) in elems

    big = W.weyl_group(R.build_root_system("D", 4), extended=True)
    elems = big.element_list()
    index = set(elems)
    for _ in range(1000):
        w = elems[rng.randrange(len(elems))]
        u = elems[rng.randrange(len(elems))]
        assert w.compose(u) in index
    for _ in range(100):
        w = elems[rng.randrange(len(elems))]
        assert w.inverse() in index


def test_reflections_preserve_root_systems():
    for fam in R.FAMILIES:
        rank = min(4, max(R.MIN_RANK[fam], 2))
        rs = R.build_root_system(fam, rank)
        roots = set(rs.roots)
        for a in roots:
            s = W.reflection(a)
            assert {s.act(b) for b in roots} == roots, (fam, a)


def test_diagram_involution():
    b3 = R.build_root_system("B", 3)
    assert W.diagram_involution(b3).is_identity()

    d4 = R.build_root_system("D", 4)
    sig = W.diagram_involution(d4)
    assert sig.signs == (-1, 1, 1, 1) and sig.perm == (0, 1, 2, 3)
    # swaps alpha_1 and alpha_2, fixes the others
    a1, a2 = d4.simple_roots[0], d4.simple_roots[1]
    assert sig.act(a1) == a2 and sig.act(a2) == a1
    for a in d4.simple_roots[2:]:
        assert sig.act(a) == a
    assert sig.compose(sig).is_identity()

    # sigma_k restricted to the small flat is sigma_n
    pair = R.propagation_pair("D", 4, 5)
    sig5 = W.diagram_involution(pair.big)
    for i in range(4):
        e = V.basis(i, 4)
        assert pair.restrict_weight(sig5.act(pair.embed_weight(e))) == sig.act(e)


def test_sigma_normalizes_w_and_splits_extension():
    d4 = R.build_root_system("D", 4)
    w_plain = set(W.weyl_group(d4).element_list())
    w_ext = set(W.weyl_group(d4, extended=True).element_list())
    sig = W.diagram_involution(d4)
    assert {sig.compose(w).compose(sig) for w in w_plain} == w_plain
    assert w_ext == w_plain | {w.compose(sig) for w in w_plain}


def test_stabilizer_examples():
    # full space: the whole group
    b3 = R.build_root_system("B", 3)
    g = W.weyl_group(b3)
    pair_full = R.propagation_pair("B", 3, 3)
    assert len(W.stabilizer(g, pair_full)) == g.order()

    # W(B_3) stabilizing the first coordinate line
    pair = R.propagation_pair("B", 1, 3)
    stab = W.stabilizer(g, pair)
    assert all(w.perm[0] == 0 for w in stab.elements)
    assert len(stab) == 2 * 8  # signs on coordinate 1 x signed perms of {2,3}
    restricted = {W.restrict_element(w, pair) for w in stab.elements}
    assert restricted == set(W.weyl_group(pair.small).element_list())


def test_orbit_stabilizer_counts(rng):
    for fam, rank in [("A", 3), ("B", 3), ("C", 3), ("D", 4)]:
        g = W.weyl_group(R.build_root_system(fam, rank))
        elems = g.element_list()
        for _ in range(4):
            v = tuple(Fraction(rng.randrange(-3, 4)) for _ in range(g.dim))
            if fam == "A":
                v = V.centered(v)
            orbit = {w.act(v) for w in elems}
            stab = [w for w in elems if w.act(v) == v]
            assert len(orbit) * len(stab) == g.order(), (fam, v)


def test_restriction_theorem_examples():
    cert = W.verify_restriction_theorem(R.propagation_pair("A", 2, 3))
    assert cert.ok and cert.order_restricted == 6

    cert = W.verify_restriction_theorem(R.propagation_pair("D", 4, 5))
    assert cert.ok and cert.order_restricted == 384
    assert cert.order_restricted > W.weyl_group(R.build_root_system("D", 4)).order()

    cert = W.verify_restriction_theorem(R.propagation_pair("B", 2, 2))
    assert cert.ok and cert.order_restricted == 8


def test_restriction_theorem_generator_preimages():
    pair = R.propagation_pair("D", 4, 6)
    cert = W.verify_restriction_theorem(pair)
    for small_gen, big_elem in cert.generator_preimages:
        assert W.restrict_element(big_elem, pair) == small_gen


def test_skew_sign_character():
    d4 = R.build_root_system("D", 4)
    g = W.weyl_group(d4, extended=True)
    sig = W.diagram_involution(d4)
    assert g.skew_sign(sig) == 1 and sig.det() == -1
    for a in d4.positive_roots:
        assert g.skew_sign(W.reflection(a)) == -1
    # multiplicative on a sample of pairs
    elems = g.element_list()
    for w in elems[:20]:
        for u in elems[::37]:
            assert g.skew_sign(w.compose(u)) == g.skew_sign(w) * g.skew_sign(u)
    # on non-D families the character is the determinant
    gb = W.weyl_group(R.build_root_system("B", 2))
    for w in gb.element_list():
        assert gb.skew_sign(w) == w.det()
