import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, Poly, groebner, symbols

from fanosod import generality as gn
from fanosod.checks import random_invertible_3x3
from fanosod.generality import SectionPhi

x, y, z = symbols("x y z")


def as_poly(q):
    return sum(Fraction(c) * x**a * y**b * z**e for c, (a, b, e) in zip(q, gn.QUADRICS))


def groebner_oracle(conics):
    """
    Independent test: a homogeneous ideal has no projective zeros iff it is
    zero-dimensional, i.e. every variable has a pure power among the leading
    monomials of a Groebner basis.
    """
    G = groebner([as_poly(q) for q in conics], x, y, z, order="grevlex")
    leads = [Poly(g, x, y, z).monoms(order="grevlex")[0] for g in G.exprs]
    for var in range(3):
        if not any(m[var] > 0 and sum(m) == m[var] for m in leads):
            return False
    return True


conic = st.lists(st.integers(-5, 5), min_size=6, max_size=6)


def test_monomial_order():
    assert gn.QUADRICS == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    assert len(gn.QUARTICS) == 15 and gn.QUARTICS[0] == (4, 0, 0) and gn.QUARTICS[-1] == (0, 0, 4)


def test_multiplication_matrix_shape_and_rank_against_sympy():
    phi = gn.random_section(1)
    for i in (1, 2):
        M = gn.multiplication_matrix(phi.block(i))
        assert len(M) == 18 and all(len(r) == 15 for r in M)
        assert Matrix(M).rank() == 15


def test_coordinate_conics():
    # x^2, y^2, z^2: complete intersection
    assert gn.conics_common_zero_empty([1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 1])
    # x^2, xy, xz vanish on the line x = 0
    assert not gn.conics_common_zero_empty([1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0])
    # three conics through (0:0:1): no z^2 terms
    assert not gn.conics_common_zero_empty([1, 0, 0, 1, 0, 0], [0, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 0])
    # a repeated conic
    assert not gn.conics_common_zero_empty([1, 0, 0, 1, 0, 1], [1, 0, 0, 1, 0, 1], [0, 1, 0, 0, 0, 0])


@settings(max_examples=60, deadline=None)
@given(conic, conic, conic)
def test_rank_criterion_matches_groebner(q1, q2, q3):
    assert gn.conics_common_zero_empty(q1, q2, q3) == groebner_oracle([q1, q2, q3])


def test_golden_section_seed1(golden):
    assert gn.random_section(1).to_text() == golden("section_seed1.txt")
    assert SectionPhi.from_text(golden("section_seed1.txt")) == gn.random_section(1)


def test_seed1_section_is_disjoint():
    phi = gn.random_section(1)
    assert gn.check_disjoint_from_exceptional(phi) == (True, True)
    assert all(groebner_oracle(phi.block(i)) for i in (1, 2))


def test_degenerate_sections():
    assert gn.check_disjoint_from_exceptional(gn.degenerate_section(1)) == (False, True)
    assert gn.check_disjoint_from_exceptional(gn.degenerate_section(2)) == (True, False)
    zeros = gn.common_zeros_mod_p([[int(c) for c in q] for q in gn.degenerate_section(1).block(1)], 31)
    assert len(zeros) == 32  # the whole line x = 0 over F_31


def test_projective_points_count():
    for p in (2, 3, 5, 31):
        pts = list(gn.projective_points(p))
        assert len(pts) == p * p + p + 1 == len(set(pts))


def test_mod_p_cross_check():
    """Full rank mod p certifies emptiness over F_p-bar, so brute force finds nothing."""
    for seed in range(1, 21):
        phi = gn.random_section(seed)
        for i in (1, 2):
            conics = [[int(c) for c in q] for q in phi.block(i)]
            if gn.rank_mod_p(conics, 31) == 15:
                assert gn.common_zeros_mod_p(conics, 31, limit=1) == []


def test_row_operations_on_w_do_not_matter():
    rng = random.Random(3)
    phi = gn.random_section(5)
    base = gn.check_disjoint_from_exceptional(phi)
    for _ in range(10):
        A = random_invertible_3x3(rng)
        mixed = SectionPhi.from_rows(
            [[sum(A[i][k] * phi.rows[k][j] for k in range(3)) for j in range(12)] for i in range(3)]
        )
        assert gn.check_disjoint_from_exceptional(mixed) == base


def test_coordinate_change_invariance():
    rng = random.Random(11)
    cases = [gn.random_section(s).block(1) for s in range(1, 6)] + [gn.degenerate_section(1).block(1)]
    for conics in cases:
        verdict = gn.conics_common_zero_empty(*conics)
        for _ in range(5):
            A = random_invertible_3x3(rng)
            moved = [gn.change_coordinates(q, A) for q in conics]
            assert gn.conics_common_zero_empty(*moved) == verdict


def test_change_coordinates_example():
    # x^2 under x -> x + y becomes x^2 + 2xy + y^2
    A = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    assert gn.change_coordinates([1, 0, 0, 0, 0, 0], A) == [1, 2, 0, 1, 0, 0]


def test_section_parsing():
    phi = SectionPhi.from_text("# comment\n" + gn.random_section(2).to_text())
    assert phi == gn.random_section(2)
    assert SectionPhi.from_text("1/2 " * 12 + "\n" + "0 " * 12 + "\n" + "1 " * 12).rows[0][0] == Fraction(1, 2)
    with pytest.raises(ValueError):
        SectionPhi.from_text("1 2 3\n")
    with pytest.raises(ValueError):
        gn.multiplication_matrix([[1, 2, 3]])
