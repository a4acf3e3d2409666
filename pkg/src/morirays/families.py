"""The two shape-matrix families and everything built from their orbits.

Naming follows the supported surfaces:

  odd        X_{2n+7}, matrix A_n from the Jonquieres/Sturm composite
  even       X_{2n+8}, matrix B_n from the double-Jonquieres/Geiser composite
  even_plus  X_{2n+10}, order-2 uncollision of the odd family
  odd_plus   X_{2n+11}, order-2 uncollision of the even family
  sq4        X_{(n+2)^2+4}, order-(n+1) uncollision of the even family
  sq2        X_{(n+3)^2+2}, order-(n+2) uncollision of the even family

Pencil orbits and the good-ray families carry integer classes; the six
`wonderful_*` constructors return the irrational limit rays in their
conventional display scaling (the Ray class normalizes away the scaling).
"""

from __future__ import annotations

from .cremona import ShapeMatrix
from .dynamics import Ray, iterate
from .lattice import MultiplicityProfile
from .quadfield import QuadNum

WONDERFUL_TAGS = ("odd", "even", "even_plus", "odd_plus", "sq4", "sq2")
GOOD_TAGS = ("even", "odd", "sq4", "sq2")

LINE_SEED = (1, 0, 0, 0)
PENCIL_SEED = (1, 1, 0, 0)


def _check_n(n: int) -> int:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"family index must be a positive integer, got {n!r}")
    return n


def alpha(n: int) -> QuadNum:
    """sqrt(n(n-1)); rational only for n = 1."""
    return QuadNum.sqrt(_check_n(n) * (n - 1))


def beta(n: int) -> QuadNum:
    """sqrt(49n^2 - 28); never rational (a square would force 7 | 4)."""
    return QuadNum.sqrt(49 * _check_n(n) * n - 28)


# -- shape matrices -----------------------------------------------------------------


def odd_shape_matrix(n: int) -> ShapeMatrix:
    """A_n, the composite Jonquieres/Sturm action on shape (1, 2n, 6)."""
    _check_n(n)
    return ShapeMatrix(
        [
            [5 * n + 5, -n, -2 * n, -12 * n - 12],
            [5 * n, 1 - n, -2 * n, -12 * n],
            [5, -1, -1, -12],
            [2, 0, 0, -5],
        ],
        (1, 2 * n, 6),
    )


def even_shape_matrix(n: int) -> ShapeMatrix:
    """B_n, the composite double-Jonquieres/Geiser action on shape (1, 7, 2n)."""
    _check_n(n)
    return ShapeMatrix(
        [
            [8 * n * n + 27 * n + 17, -n * n - 5 * n - 6, -21 * n * n - 70 * n - 42, -2 * n * n - 6 * n],
            [8 * n * n + 19 * n + 6, -n * n - 4 * n - 3, -21 * n * n - 49 * n - 14, -2 * n * n - 4 * n],
            [8 * n + 6, -n - 2, -21 * n - 15, -2 * n],
            [8 * n + 3, -n - 2, -21 * n - 7, -2 * n + 1],
        ],
        (1, 7, 2 * n),
    )


def shape_matrix(tag: str, n: int) -> ShapeMatrix:
    if tag == "odd":
        return odd_shape_matrix(n)
    if tag == "even":
        return even_shape_matrix(n)
    raise ValueError(f"no shape matrix for tag {tag!r}")


def js_homaloidal(n: int) -> MultiplicityProfile:
    """Homaloidal net of the Jonquieres/Sturm composite on 2n+7 points."""
    _check_n(n)
    return MultiplicityProfile(5 * n + 5, [(5 * n, 1), (5, 2 * n), (2, 6)])


def cg_homaloidal(n: int) -> MultiplicityProfile:
    """Homaloidal net of the double-Jonquieres/Geiser composite on 2n+8 points."""
    _check_n(n)
    return MultiplicityProfile(
        8 * n * n + 27 * n + 17,
        [(8 * n * n + 19 * n + 6, 1), (8 * n + 6, 7), (8 * n + 3, 2 * n)],
    )


# -- pencil orbits --------------------------------------------------------------------


def _orbit_profile(m: ShapeMatrix, k: int) -> MultiplicityProfile:
    if k < 0:
        raise ValueError(f"orbit index must be >= 0, got {k}")
    row = iterate(m, PENCIL_SEED, k).term(k)
    return MultiplicityProfile(row[0], list(zip(row[1:], m.counts)))


def pencil_profile(n: int, k: int) -> MultiplicityProfile:
    """k-th pencil class of the odd family, L_d(a, b^{2n}, c^6) on 2n+7 points."""
    return _orbit_profile(odd_shape_matrix(n), k)


def primed_pencil_profile(n: int, k: int) -> MultiplicityProfile:
    """k-th pencil class of the even family, L_d(a, b^7, c^{2n}) on 2n+8 points."""
    return _orbit_profile(even_shape_matrix(n), k)


# -- good-ray families -----------------------------------------------------------------


def good_even(n: int, k: int) -> MultiplicityProfile:
    """L_{2d}(a^4, (2b)^{2n}, (2c)^6) on 2n+10 points."""
    return (2 * pencil_profile(n, k)).uncollide(1, 2)


def good_odd(n: int, k: int) -> MultiplicityProfile:
    """L_{2d'}(a'^4, (2b')^7, (2c')^{2n}) on 2n+11 points."""
    return (2 * primed_pencil_profile(n, k)).uncollide(1, 2)


def good_sq4(n: int, k: int) -> MultiplicityProfile:
    """Order n+1 uncollision of the scaled even pencil, on (n+2)^2+4 points."""
    return ((n + 1) * primed_pencil_profile(n, k)).uncollide(1, n + 1)


def good_sq2(n: int, k: int) -> MultiplicityProfile:
    """Order n+2 uncollision of the scaled even pencil, on (n+3)^2+2 points."""
    return ((n + 2) * primed_pencil_profile(n, k)).uncollide(1, n + 2)


def good_profile(tag: str, n: int, k: int) -> MultiplicityProfile:
    try:
        build = {"even": good_even, "odd": good_odd, "sq4": good_sq4, "sq2": good_sq2}[tag]
    except KeyError:
        raise ValueError(f"unknown good-ray family {tag!r}; expected one of {GOOD_TAGS}") from None
    return build(n, k)


# -- wonderful limit rays ----------------------------------------------------------------


def wonderful_odd(n: int) -> MultiplicityProfile:
    """Dominant ray of the odd family on X_{2n+7}; irrational for n >= 2."""
    a = alpha(n)
    return MultiplicityProfile(
        5 * n * n + 4 * n,
        [(n * (3 * n + 2 * a), 1), (3 * n + 2 * a, 2 * n), (n * (2 + n - a), 6)],
    )


def wonderful_even(n: int) -> MultiplicityProfile:
    """Dominant ray of the even family on X_{2n+8}."""
    b = beta(n)
    return MultiplicityProfile(
        14 * n * (8 * n * n + 27 * n + 16),
        [
            (7 * n * (n + 2) * (9 * n + 6 + b), 1),
            (n * (21 * n * n + 126 * n + 84) - n * (3 * n + 2) * b, 7),
            (7 * n * (9 * n + 6 + b), 2 * n),
        ],
    )


def wonderful_even_plus(n: int) -> MultiplicityProfile:
    """Order-2 uncollision of the odd limit ray, on X_{2n+10}."""
    a = alpha(n)
    return MultiplicityProfile(
        10 * n * n + 8 * n,
        [(n * (3 * n + 2 * a), 4), (6 * n + 4 * a, 2 * n), (2 * n * (2 + n - a), 6)],
    )


def wonderful_odd_plus(n: int) -> MultiplicityProfile:
    """Order-2 uncollision of the even limit ray, on X_{2n+11}."""
    b = beta(n)
    return MultiplicityProfile(
        28 * n * (8 * n * n + 27 * n + 16),
        [
            (7 * n * (n + 2) * (9 * n + 6 + b), 4),
            (2 * (n * (21 * n * n + 126 * n + 84) - n * (3 * n + 2) * b), 7),
            (14 * n * (9 * n + 6 + b), 2 * n),
        ],
    )


def wonderful_sq4(n: int) -> MultiplicityProfile:
    """Order n+1 uncollision of the even limit ray, on X_{(n+2)^2+4}."""
    b = beta(n)
    v1 = 7 * n * (n + 2) * (9 * n + 6 + b)
    return MultiplicityProfile(
        14 * n * (8 * n * n + 27 * n + 16),
        [
            (v1 / (n + 1), (n + 1) * (n + 1)),
            (n * (21 * n * n + 126 * n + 84) - n * (3 * n + 2) * b, 7),
            (7 * n * (9 * n + 6 + b), 2 * n),
        ],
    )


def wonderful_sq2(n: int) -> MultiplicityProfile:
    """Order n+2 uncollision of the even limit ray, on X_{(n+3)^2+2}.

    The split multiplicity v1/(n+2) collapses to the last block's value, so
    the profile is a rearrangement of the even limit ray's entries.
    """
    b = beta(n)
    v3 = 7 * n * (9 * n + 6 + b)
    return MultiplicityProfile(
        14 * n * (8 * n * n + 27 * n + 16),
        [
            (v3, (n + 2) * (n + 2)),
            (n * (21 * n * n + 126 * n + 84) - n * (3 * n + 2) * b, 7),
            (v3, 2 * n),
        ],
    )


_WONDERFUL = {
    "odd": wonderful_odd,
    "even": wonderful_even,
    "even_plus": wonderful_even_plus,
    "odd_plus": wonderful_odd_plus,
    "sq4": wonderful_sq4,
    "sq2": wonderful_sq2,
}


def wonderful_profile(tag: str, n: int) -> MultiplicityProfile:
    try:
        return _WONDERFUL[tag](n)
    except KeyError:
        raise ValueError(f"unknown limit-ray family {tag!r}; expected one of {WONDERFUL_TAGS}") from None


def wonderful_ray(tag: str, n: int) -> Ray:
    return Ray.from_profile(wonderful_profile(tag, n))


def surface_points(tag: str, n: int) -> int:
    _check_n(n)
    return {
        "odd": 2 * n + 7,
        "even": 2 * n + 8,
        "even_plus": 2 * n + 10,
        "odd_plus": 2 * n + 11,
        "sq4": (n + 2) * (n + 2) + 4,
        "sq2": (n + 3) * (n + 3) + 2,
    }[tag]


# good family -> (pencil family tag, scale/uncollision order as a function of n)
GOOD_PARENTS = {
    "even": ("odd", lambda n: 2),
    "odd": ("even", lambda n: 2),
    "sq4": ("even", lambda n: n + 1),
    "sq2": ("even", lambda n: n + 2),
}

# good family -> limit ray family reached as k grows
GOOD_LIMITS = {"even": "even_plus", "odd": "odd_plus", "sq4": "sq4", "sq2": "sq2"}
