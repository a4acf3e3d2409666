"""Divisor classes on blowups: intersection form, named classes, collision calculus."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from morirays import (
    DivisorClass,
    MultiplicityProfile,
    QuadNum,
    ShapeError,
    canonical_class,
    defernex_class,
    exceptional_class,
    is_line_pencil_up_to_permutation,
    line_class,
    line_pencil_class,
    nagata_class,
)


def test_basis_form():
    # signature (1, -1, ..., -1): H^2 = 1, E_i^2 = -1, mixed products 0
    s = 6
    h = line_class(s)
    assert h.self_intersection() == 1
    for i in range(1, s + 1):
        e = exceptional_class(i, s)
        assert e.self_intersection() == -1
        assert h.intersect(e) == 0
        for j in range(i + 1, s + 1):
            assert e.intersect(exceptional_class(j, s)) == 0


def test_coordinates_vector():
    # the (d, m_1, ..., m_s) vector the characteristic matrices act on
    x = DivisorClass(4, [2, 1, 1])
    assert x.coordinates() == (QuadNum(4), QuadNum(2), QuadNum(1), QuadNum(1))


@pytest.mark.parametrize("s", range(3, 16))
def test_canonical_class(s):
    k = canonical_class(s)
    assert k.self_intersection() == 9 - s
    assert k.canonical_pairing() == k.self_intersection()
    assert k.intersect(line_class(s)) == -3


@pytest.mark.parametrize("s", range(3, 16))
def test_defernex_class(s):
    f = defernex_class(s)
    assert f.self_intersection() == -1
    assert f.degree == QuadNum.sqrt(s - 1)
    # K.F = s - 3*sqrt(s-1) changes sign between s=7 and s=8
    assert f.canonical_pairing().sign() == (-1 if s <= 7 else 1)


@pytest.mark.parametrize("s,expect", [(7, -1), (9, 0), (10, 1), (11, 1), (14, 1)])
def test_nagata_class(s, expect):
    w = nagata_class(s)
    assert w.self_intersection() == 0
    assert w.canonical_pairing().sign() == expect  # s - 3*sqrt(s), zero exactly at s=9
    assert w.defernex_sign() == -1


def test_line_pencil():
    p = line_pencil_class(5)
    assert p.self_intersection() == 0
    assert p.canonical_pairing() == -2
    assert is_line_pencil_up_to_permutation(p)
    assert is_line_pencil_up_to_permutation(p.permuted([3, 1, 2, 5, 4]))
    assert not is_line_pencil_up_to_permutation(line_class(5))
    assert not is_line_pencil_up_to_permutation(DivisorClass(1, [1, 1, 0]))
    assert not is_line_pencil_up_to_permutation(DivisorClass(2, [1, 0, 0]))


def test_vector_ops():
    x = DivisorClass(3, [2, 1, 0])
    y = DivisorClass(1, [1, 1, 1])
    assert x + y == DivisorClass(4, [3, 2, 1])
    assert x - y == DivisorClass(2, [1, 0, -1])
    assert 2 * x == DivisorClass(6, [4, 2, 0])
    assert x * Fraction(1, 2) == DivisorClass(Fraction(3, 2), [1, Fraction(1, 2), 0])
    with pytest.raises(ValueError):
        x + DivisorClass(1, [0, 0])


def test_integrality():
    assert DivisorClass(3, [2, 1]).is_integral
    assert not DivisorClass(Fraction(1, 2), [0]).is_integral
    assert not DivisorClass(1, [QuadNum(0, 1, 2)]).is_integral


def test_uncollide_frozen():
    x = DivisorClass(6, [4, 3, 1])
    y = x.uncollide(1, 2)
    assert y == DivisorClass(6, [2] * 4 + [3, 1])
    assert y.self_intersection() == x.self_intersection()
    # canonical pairing grows by (r^2 - r) * new multiplicity
    assert y.canonical_pairing() == x.canonical_pairing() + 2 * 2
    assert y.collide(1, 2) == x


def test_uncollide_interior_point():
    x = DivisorClass(9, [5, 3, 1])
    y = x.uncollide(2, 3)
    assert y == DivisorClass(9, [5] + [1] * 9 + [1])
    assert y.s == 11
    assert y.self_intersection() == x.self_intersection()
    assert y.collide(2, 3) == x


def test_collide_errors():
    with pytest.raises(ShapeError):
        DivisorClass(6, [2, 2, 2, 1], ).collide(1, 2)
    with pytest.raises(IndexError):
        DivisorClass(6, [2, 2, 2]).collide(1, 2)
    with pytest.raises(IndexError):
        DivisorClass(6, [2, 2, 2]).uncollide(4, 2)
    with pytest.raises(ValueError):
        DivisorClass(6, [2, 2, 2]).uncollide(1, 0)


def test_profile_round_trip():
    x = DivisorClass(13, [9, 4, 4, 4, 4, 2, 2, 2, 2, 2, 2])
    p = MultiplicityProfile.compress(x, (1, 4, 6))
    assert p.degree == 13 and p.blocks == ((QuadNum(9), 1), (QuadNum(4), 4), (QuadNum(2), 6))
    assert p.expand() == x
    assert MultiplicityProfile.group(x) == p
    assert str(p) == "L_13(9, 4^4, 2^6)"
    with pytest.raises(ShapeError):
        MultiplicityProfile.compress(x, (2, 3, 6))
    with pytest.raises(ShapeError):
        MultiplicityProfile.compress(x, (1, 4, 4))


def test_profile_collision_calculus():
    p = MultiplicityProfile(14, [(6, 1), (4, 2)])
    q = p.uncollide(1, 2)
    assert q.blocks == ((QuadNum(3), 4), (QuadNum(4), 2))
    assert q.collide(1, 2).canonical() == p
    # collision window may span several equal-valued blocks
    r = MultiplicityProfile(10, [(2, 3), (2, 1), (5, 1)])
    assert r.collide(1, 2).canonical() == MultiplicityProfile(10, [(4, 1), (5, 1)])
    with pytest.raises(ShapeError):
        MultiplicityProfile(10, [(2, 3), (3, 2)]).collide(1, 2)


def test_profile_pairings_match_expansion():
    p = MultiplicityProfile(QuadNum(0, 14, 2), [(QuadNum(6, 2, 2), 1), (QuadNum(3, 1, 2), 4)])
    x = p.expand()
    assert p.self_intersection() == x.self_intersection()
    assert p.canonical_pairing() == x.canonical_pairing()
    assert p.defernex_value() == x.defernex_value()
    assert p.scale(2).expand() == 2 * x


def test_json_round_trip():
    x = DivisorClass(QuadNum(0, 1, 5), [QuadNum(1, -1, 5), Fraction(2, 3)])
    assert DivisorClass.from_json(x.to_json()) == x
    p = MultiplicityProfile(28, [(QuadNum(12, 4, 2), 1), (QuadNum(6, 2, 2), 4)])
    assert MultiplicityProfile.from_json(p.to_json()) == p


small_ints = st.integers(min_value=-9, max_value=9)


@st.composite
def classes(draw, s=None):
    n = s if s is not None else draw(st.integers(min_value=2, max_value=10))
    return DivisorClass(draw(small_ints), [draw(small_ints) for _ in range(n)])


@st.composite
def class_triples(draw):
    s = draw(st.integers(min_value=2, max_value=10))
    return tuple(draw(classes(s=s)) for _ in range(3))


@given(class_triples())
def test_intersection_bilinear_symmetric(xyz):
    x, y, z = xyz
    assert x.intersect(y) == y.intersect(x)
    assert (x + y).intersect(z) == x.intersect(z) + y.intersect(z)
    assert (3 * x).intersect(y) == 3 * x.intersect(y)


@given(classes(), st.randoms())
def test_permutation_preserves_pairings(x, rng):
    order = list(range(1, x.s + 1))
    rng.shuffle(order)
    y = x.permuted(order)
    assert y.self_intersection() == x.self_intersection()
    assert y.canonical_pairing() == x.canonical_pairing()
    assert y.defernex_value() == x.defernex_value()


@given(classes(), st.integers(min_value=1, max_value=4), st.data())
def test_uncollision_conservation(x, r, data):
    point = data.draw(st.integers(min_value=1, max_value=x.s))
    y = x.uncollide(point, r)
    assert y.s == x.s + r * r - 1
    assert y.degree == x.degree
    assert y.self_intersection() == x.self_intersection()
    grown = y.canonical_pairing() - x.canonical_pairing()
    assert grown == (r * r - r) * (x.mults[point - 1] / r)
    assert y.collide(point, r) == x
