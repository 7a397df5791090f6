import math
from fractions import Fraction

import pytest

from rootlimits import rootsys as R
from rootlimits import vec as V
from rootlimits.errors import DomainError
from rootlimits.vec import vec


POSITIVE_COUNTS = {
    "A": lambda k: k * (k + 1) // 2,
    "B": lambda k: k * k,
    "C": lambda k: k * k,
    "D": lambda k: k * (k - 1),
    "BC": lambda k: k * k + k,
}


def test_positive_root_counts_by_enumeration():
    for fam, counter in POSITIVE_COUNTS.items():
        for rank in range(R.MIN_RANK[fam], 6):
            rs = R.build_root_system(fam, rank)
            assert len(rs.positive_roots) == counter(rank), (fam, rank)
            # roots = positive u -positive, disjoint
            assert len(rs.roots) == 2 * len(rs.positive_roots)
            assert not set(rs.positive_roots) & {V.neg(a) for a in rs.positive_roots}


def test_smallest_a1():
    rs = R.build_root_system("A", 1)
    assert set(rs.roots) == {vec(-1, 1), vec(1, -1)}


def test_b2_description():
    rs = R.build_root_system("B", 2)
    assert set(rs.positive_roots) == {vec(1, 0), vec(0, 1), vec(-1, 1), vec(1, 1)}
    assert list(rs.simple_roots) == [vec(1, 0), vec(-1, 1)]


def test_d4_fork():
    rs = R.build_root_system("D", 4)
    assert len(rs.roots) == 24
    total = V.zero(4)
    for a in rs.simple_roots:
        total = V.add(total, a)
    # 2 * (sum of simple roots) = 2 (f_2 + f_4)
    assert V.scale(2, total) == vec(0, 2, 0, 2)


def test_positive_roots_are_nonneg_simple_combinations():
    for fam in R.FAMILIES:
        rs = R.build_root_system(fam, max(R.MIN_RANK[fam], 3))
        for a in rs.positive_roots:
            coeffs = R.root_coefficients(rs, a)
            assert all(c >= 0 and c.denominator == 1 for c in coeffs), (fam, a)


def test_inadmissible_ranks_rejected():
    for fam, bad in [("B", 1), ("C", 2), ("D", 3), ("A", 0)]:
        with pytest.raises(DomainError):
            R.build_root_system(fam, bad)
    with pytest.raises(DomainError):
        R.Family("E", 6)


def test_root_string_condition_exhaustive():
    # alpha + beta is a root iff the root string through beta allows it
    for fam, rank in [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("BC", 2), ("A", 5)]:
        rs = R.build_root_system(fam, rank)
        roots = set(rs.roots)
        for a in roots:
            for b in roots:
                if b == a or b == V.neg(a):
                    continue
                # p = max k with b - k a a root
                p = 0
                cur = V.sub(b, a)
                while cur in roots:
                    p += 1
                    cur = V.sub(cur, a)
                cartan = 2 * V.dot(b, a) / V.norm_sq(a)
                expected = p - cartan >= 1
                assert (V.add(a, b) in roots) == expected, (fam, a, b)


def test_reduced_systems():
    b3 = R.build_root_system("B", 3)
    half, two = R.reduced_systems(b3)
    assert half is b3 and two is b3

    bc2 = R.build_root_system("BC", 2)
    half, two = R.reduced_systems(bc2)
    assert half.family == "B" and two.family == "C"
    assert set(two.positive_roots) == {vec(2, 0), vec(0, 2), vec(-1, 1), vec(1, 1)}

    bc1 = R.build_root_system("BC", 1)
    half, two = R.reduced_systems(bc1)
    assert set(half.roots) == {vec(1), vec(-1)}
    assert set(two.roots) == {vec(2), vec(-2)}


def test_multiplicities_w_invariant():
    desc = R.space_descriptor(5, 2, 4)  # BC_2 with three length classes
    rs = desc.restricted
    classes = rs.mult_classes()
    for a in rs.positive_roots:
        assert rs.mult[a] == classes[V.norm_sq(a)]


def test_rho_examples():
    a1 = R.build_root_system("A", 1)
    assert R.rho(a1) == vec(Fraction(-1, 2), Fraction(1, 2))
    b2 = R.build_root_system("B", 2)
    assert R.rho(b2) == vec(Fraction(1, 2), Fraction(3, 2))
    group_a1 = a1.with_mult({Fraction(2): 2})
    assert R.rho(group_a1) == vec(-1, 1)


def test_highest_root_examples_and_leftend_coefficients():
    a2 = R.build_root_system("A", 2)
    assert R.highest_root(a2) == vec(-1, 0, 1)
    assert R.root_coefficients(a2, R.highest_root(a2)) == [1, 1]

    c3 = R.build_root_system("C", 3)
    assert R.highest_root(c3) == vec(0, 0, 2)
    assert R.root_coefficients(c3, R.highest_root(c3)) == [1, 2, 2]

    d4 = R.build_root_system("D", 4)
    assert R.highest_root(d4) == vec(0, 0, 1, 1)

    # coefficient patterns on (alpha_1 .. alpha_r)
    b4 = R.build_root_system("B", 4)
    assert R.root_coefficients(b4, R.highest_root(b4)) == [2, 2, 2, 1]
    d5 = R.build_root_system("D", 5)
    assert R.root_coefficients(d5, R.highest_root(d5)) == [1, 1, 2, 2, 1]
    a4 = R.build_root_system("A", 4)
    assert R.root_coefficients(a4, R.highest_root(a4)) == [1, 1, 1, 1]


def test_class_one_weights():
    # 1x1 solve for A_1: the defining relation forces xi_1 = alpha_1
    a1 = R.build_root_system("A", 1)
    (xi,) = R.class_one_fundamental_weights(a1)
    assert xi == vec(-1, 1)
    assert R.lambda_plus_member(xi, a1)

    # independent 2x2 oracle for B_2: solve <xi, a_j> = delta |a_j|^2 by hand
    b2 = R.build_root_system("B", 2)
    xi1, xi2 = R.class_one_fundamental_weights(b2)
    assert xi1 == vec(1, 1) and xi2 == vec(0, 2)

    # Gram matrix <xi_i, a_j>/<a_j, a_j> is exactly the identity
    for fam, rank in [("A", 3), ("B", 3), ("C", 3), ("D", 4)]:
        rs = R.build_root_system(fam, rank)
        xis = R.class_one_fundamental_weights(rs)
        for i, xi in enumerate(xis):
            for j, a in enumerate(rs.simple_roots):
                want = Fraction(1 if i == j else 0)
                assert V.dot(xi, a) / V.norm_sq(a) == want
            assert R.lambda_plus_member(xi, rs), (fam, rank, i)


def test_class_one_rejects_nonreduced():
    with pytest.raises(DomainError):
        R.class_one_fundamental_weights(R.build_root_system("BC", 2))


def test_lambda_plus_member():
    b2 = R.build_root_system("B", 2)
    assert R.lambda_plus_member(V.zero(2), b2)
    xi1 = R.class_one_fundamental_weights(b2)[0]
    assert R.lambda_plus_member(xi1, b2)
    assert not R.lambda_plus_member(V.scale(Fraction(1, 2), xi1), b2)


def test_mu_of_index():
    b2 = R.build_root_system("B", 2)
    assert R.mu_of_index((0, 0), b2).weight == V.zero(2)
    assert R.mu_of_index((1, 0), b2).weight == vec(1, 1)
    assert R.mu_of_index((2, 1), b2).weight == vec(2, 4)
    with pytest.raises(DomainError):
        R.mu_of_index((1,), b2)
    # non-reduced systems index through Sigma_2
    bc1 = R.build_root_system("BC", 1)
    pt = R.mu_of_index((1,), bc1)
    assert pt.weight == vec(2)
    assert R.lambda_plus_member(pt.weight, bc1)


def test_space_descriptor_examples():
    d = R.space_descriptor(6, 3)
    assert (d.rank, d.dim) == (2, 5)
    d = R.space_descriptor(5, 1, 3)
    assert (d.rank, d.dim) == (1, 6) and d.restricted.family == "BC"
    d = R.space_descriptor(1, 2)
    assert (d.rank, d.dim) == (1, 3)
    assert all(m == 2 for m in d.restricted.mult.values())
    with pytest.raises(DomainError):
        R.space_descriptor(12, 2)
    with pytest.raises(DomainError):
        R.space_descriptor(1, 1)


def test_table_dimension_identity_all_rows():
    # dim = rank + sum of multiplicities, every row, small parameters
    cases = []
    for row, j0 in [(1, 2), (2, 1), (3, 2), (4, 1), (6, 2), (7, 2), (9, 2), (11, 1)]:
        cases += [(row, (j,)) for j in range(j0, 7)]
    for row in (5, 10):
        cases += [(row, (p, q)) for p in range(1, 6) for q in range(p, 6)]
    cases += [(8, (p, q)) for p in range(1, 6) for q in range(p, 6) if p + q >= 3]
    for row, params in cases:
        desc = R.space_descriptor(row, *params)
        total = desc.rank + sum(desc.restricted.mult[a]
                                for a in desc.restricted.positive_roots)
        assert total == desc.dim, (row, params)


def test_propagation_identity_and_examples():
    pair = R.propagation_pair("B", 2, 2)
    assert pair.is_identity

    pair = R.propagation_pair("B", 2, 4)
    for j in range(2):
        restricted = pair.restrict_weight(pair.big.simple_roots[j])
        assert restricted == pair.small.simple_roots[j]
    assert pair.restrict_weight(pair.big.simple_roots[3]) == V.zero(2)

    pair = R.propagation_pair("A", 2, 3)
    xi_small = R.class_one_fundamental_weights(pair.small)
    xi_big = R.class_one_fundamental_weights(pair.big)
    for j in range(2):
        assert pair.restrict_weight(xi_big[j]) == xi_small[j]


def test_propagation_constraints():
    with pytest.raises(DomainError):
        R.propagate(R.build_root_system("B", 3), 2)
    with pytest.raises(DomainError):
        R.propagation_pair("D", 2, 5)


def test_lemma_x_unique_simple_restriction():
    for fam, lo, hi in [("A", 2, 4), ("B", 2, 5), ("C", 3, 5), ("D", 4, 6), ("BC", 2, 4)]:
        pair = R.propagation_pair(fam, lo, hi)
        for j, target in enumerate(pair.small.simple_roots):
            hits = [i for i, a in enumerate(pair.big.simple_roots)
                    if pair.restrict_weight(a) == target]
            assert hits == [j], (fam, lo, hi, j)


def test_simple_res_unique_fundamental_restriction():
    for fam, lo, hi in [("A", 1, 3), ("A", 2, 3), ("B", 2, 4), ("C", 3, 4), ("D", 4, 5)]:
        pair = R.propagation_pair(fam, lo, hi)
        xi_small = R.class_one_fundamental_weights(pair.small)
        xi_big = R.class_one_fundamental_weights(pair.big)
        for j, target in enumerate(xi_small):
            hits = [i for i, xi in enumerate(xi_big)
                    if pair.restrict_weight(xi) == target]
            assert hits == [j], (fam, lo, hi, j)


def test_restricted_lattice_points_stay_in_lattice(rng):
    # le-ResInLambdan: mu_I at the big level restricts into the small lattice
    for fam, lo, hi in [("A", 2, 4), ("B", 2, 4), ("C", 3, 5), ("D", 4, 5), ("BC", 1, 3)]:
        pair = R.propagation_pair(fam, lo, hi)
        for _ in range(20):
            index = tuple(rng.randrange(4) for _ in range(pair.big.rank))
            mu = R.mu_of_index(index, pair.big).weight
            assert R.lambda_plus_member(pair.restrict_weight(mu), pair.small)


def test_weight_validation():
    a2 = R.build_root_system("A", 2)
    with pytest.raises(DomainError):
        a2.validate_weight(vec(1, 0, 0))  # not trace zero
    with pytest.raises(DomainError):
        a2.validate_weight(vec(1, -1))  # wrong dimension
