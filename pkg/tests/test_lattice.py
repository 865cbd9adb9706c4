from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockhrt.cyclo import CycloElement, euler_phi
from fockhrt.errors import ConductorMismatch, InputError
from fockhrt.lattice import (MembershipResult, bareiss_rank, lattice_membership_decision,
                             rational_rank, roots_in_lattice, roots_of_unity)


def test_bareiss_frozen():
    assert bareiss_rank([[1, 2, 3], [2, 4, 6], [1, 0, 1]]) == 2
    assert bareiss_rank([[0, 0], [0, 0]]) == 0
    assert rational_rank([[Fraction(1, 2), 1], [1, 2]]) == 1


@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=6))
@settings(max_examples=100, deadline=None)
def test_rank_matches_sympy_free_reference(rows):
    # reference: Gaussian elimination over Fractions
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for c in range(4):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    assert bareiss_rank(rows) == rank


@pytest.mark.parametrize("d", [1, 2, 3, 4, 6])
def test_embeddable_roots_have_verified_witness(d):
    res = roots_in_lattice(d)
    assert res.embeddable and res.verify()
    back = MembershipResult.from_dict(res.to_dict())
    assert back.verify() and back.witness == res.witness


@pytest.mark.parametrize("d,rank", [(5, 4), (7, 6), (8, 4), (9, 6), (10, 4), (12, 4)])
def test_nonembeddable_rank(d, rank):
    res = roots_in_lattice(d)
    assert not res.embeddable and res.rank_certificate == rank


@given(st.integers(-3, 3), st.integers(-3, 3), st.lists(
    st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=8))
@settings(max_examples=60, deadline=None)
def test_lattice_samples_in_q_zeta3_embed(p, q, coords):
    z = CycloElement.zeta(3)
    e = CycloElement.rational(3, p) + z * q
    e1 = CycloElement.rational(3, Fraction(1, 2))
    pts = list(dict.fromkeys(e1 * m + z * k + e for m, k in coords))
    res = lattice_membership_decision(pts)
    assert res.embeddable and res.rank_certificate <= 2 and res.verify()


def test_collinear_irrational_ratio_is_rejected():
    # 0, 1, sqrt(2) lie on the real line but in no lattice
    z = CycloElement.zeta(8)
    sqrt2 = z + z.conj()
    pts = [CycloElement.rational(8, 0), CycloElement.rational(8, 1), sqrt2]
    res = lattice_membership_decision(pts)
    assert not res.embeddable and res.collinear and res.rank_certificate == 2


def test_single_and_rational_points():
    assert lattice_membership_decision([CycloElement.zeta(5)]).embeddable
    res = lattice_membership_decision([CycloElement.rational(1, k) for k in (0, 2, 5)])
    assert res.embeddable and res.verify()


def test_input_checks():
    with pytest.raises(InputError):
        lattice_membership_decision([])
    with pytest.raises(ConductorMismatch):
        lattice_membership_decision([CycloElement.zeta(3), CycloElement.zeta(4)])
    with pytest.raises(InputError):
        roots_of_unity(0)


def test_rank_bounded_by_phi():
    for d in range(1, 40):
        assert roots_in_lattice(d).rank_certificate <= max(euler_phi(d), 2)
