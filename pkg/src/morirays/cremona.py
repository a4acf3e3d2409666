"""Characteristic matrices of plane Cremona maps and their action.

A map on the blowup at s points is an integer (s+1)x(s+1) matrix in the basis
(H, E_1, ..., E_s): column 0 is the coordinate vector (d, -m_1, ..., -m_s) of
the homaloidal net L_d(m_1, ..., m_s), and the matrix acts on coordinate
vectors by left multiplication.  compose(m1, m2) = m1 @ m2 applies m2's map
first.  Base points are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .lattice import DivisorClass, ShapeError, is_line_pencil_up_to_permutation


class CharMatrix:
    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square and nonempty")
        if any(not isinstance(x, int) for r in rows for x in r):
            raise TypeError("entries must be integers")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("CharMatrix is immutable")

    @property
    def s(self) -> int:
        return len(self.rows) - 1

    @classmethod
    def identity(cls, s: int) -> "CharMatrix":
        return cls([[1 if i == j else 0 for j in range(s + 1)] for i in range(s + 1)])

    def __matmul__(self, other: "CharMatrix") -> "CharMatrix":
        if not isinstance(other, CharMatrix):
            return NotImplemented
        if self.s != other.s:
            raise ValueError(f"sizes differ: {self.s} vs {other.s}")
        cols = tuple(zip(*other.rows))
        return CharMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def transpose(self) -> "CharMatrix":
        return CharMatrix(tuple(zip(*self.rows)))

    def apply(self, x: DivisorClass) -> DivisorClass:
        """Image of a divisor class; exact for QuadNum coordinates too."""
        if x.s != self.s:
            raise ValueError(f"class has s={x.s}, matrix acts on s={self.s}")
        vec = [x.degree] + [-m for m in x.mults]
        out = []
        for row in self.rows:
            acc = row[0] * vec[0]
            for c, v in zip(row[1:], vec[1:]):
                if c:
                    acc = acc + c * v
            out.append(acc)
        return DivisorClass(out[0], [-w for w in out[1:]])

    def homaloidal_net(self) -> DivisorClass:
        """The net L_d(m_1, ..., m_s) from the first column."""
        return DivisorClass(self.rows[0][0], [-self.rows[i][0] for i in range(1, self.s + 1)])

    def is_involution(self) -> bool:
        return self @ self == CharMatrix.identity(self.s)

    def validate(self) -> None:
        """Check: preserves the intersection form, fixes K, valid first column."""
        n = self.s + 1
        sig = [1] + [-1] * self.s
        for i in range(n):
            for j in range(i, n):
                # (M^T J M)[i][j] with J = diag(1, -1, ..., -1)
                val = sum(sig[t] * self.rows[t][i] * self.rows[t][j] for t in range(n))
                want = sig[i] if i == j else 0
                if val != want:
                    raise ValueError(f"form not preserved at ({i},{j}): {val} != {want}")
        k = [-3] + [1] * self.s
        for i in range(n):
            if sum(self.rows[i][j] * k[j] for j in range(n)) != k[i]:
                raise ValueError(f"canonical vector moved at row {i}")
        net = self.homaloidal_net()
        d = net.degree.to_fraction()
        if d < 1:
            raise ValueError(f"homaloidal degree {d} < 1")
        if net.self_intersection() != 1 or net.canonical_pairing() != -3:
            raise ValueError(
                f"first column is not homaloidal: d^2-sum(m^2)={net.self_intersection()}, "
                f"3d-sum(m)={-net.canonical_pairing()}"
            )

    def is_valid(self) -> bool:
        try:
            self.validate()
        except ValueError:
            return False
        return True

    def pretty(self) -> str:
        width = max(len(str(x)) for r in self.rows for x in r)
        return "\n".join(" ".join(f"{x:>{width}}" for x in r) for r in self.rows)

    def __str__(self) -> str:
        return self.pretty()

    def __repr__(self) -> str:
        return f"CharMatrix({[list(r) for r in self.rows]!r})"

    def to_json(self) -> dict:
        return {"size": self.s, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "CharMatrix":
        m = cls(data["rows"])
        if m.s != data["size"]:
            raise ValueError(f"size field {data['size']} does not match rows ({m.s})")
        return m


def compose(m1: CharMatrix, m2: CharMatrix) -> CharMatrix:
    """Matrix product m1 @ m2: the composite applies m2's map first."""
    return m1 @ m2


def _embed(local: Sequence[Sequence[int]], points: Sequence[int], s: int) -> CharMatrix:
    points = tuple(points)
    if len(set(points)) != len(points):
        raise ValueError(f"repeated base points: {points}")
    if points and not (1 <= min(points) and max(points) <= s):
        raise ValueError(f"base points {points} out of range 1..{s}")
    if len(local) != len(points) + 1:
        raise ValueError(f"local matrix size {len(local)} != {len(points) + 1}")
    g = (0,) + points
    rows = [[1 if i == j else 0 for j in range(s + 1)] for i in range(s + 1)]
    for r in range(len(local)):
        for c in range(len(local)):
            rows[g[r]][g[c]] = local[r][c]
    return CharMatrix(rows)


def _homogeneous(points: Sequence[int], s: int | None, d: int, mu: int, diag: int, off: int) -> CharMatrix:
    points = tuple(points)
    if s is None:
        s = max(points)
    p = len(points)
    local = [[d] + [mu] * p]
    for i in range(1, p + 1):
        local.append([-mu] + [diag if i == j else off for j in range(1, p + 1)])
    return _embed(local, points, s)


def quadratic_map(points: Sequence[int], s: int | None = None) -> CharMatrix:
    """Degree-2 involution based at three points; net L_2(1, 1, 1)."""
    if len(points) != 3:
        raise ValueError(f"quadratic map needs 3 points, got {len(points)}")
    return _homogeneous(points, s, 2, 1, 0, -1)


def sturm_map(points: Sequence[int], s: int | None = None) -> CharMatrix:
    """Degree-5 involution based at six points; net L_5(2^6)."""
    if len(points) != 6:
        raise ValueError(f"sturm map needs 6 points, got {len(points)}")
    return _homogeneous(points, s, 5, 2, 0, -1)


def geiser_map(points: Sequence[int], s: int | None = None) -> CharMatrix:
    """Degree-8 involution based at seven points; net L_8(3^7)."""
    if len(points) != 7:
        raise ValueError(f"geiser map needs 7 points, got {len(points)}")
    return _homogeneous(points, s, 8, 3, -2, -1)


def bertini_map(points: Sequence[int], s: int | None = None) -> CharMatrix:
    """Degree-17 involution based at eight points; net L_17(6^8)."""
    if len(points) != 8:
        raise ValueError(f"bertini map needs 8 points, got {len(points)}")
    return _homogeneous(points, s, 17, 6, -3, -2)


def jonquieres_map(n: int, points: Sequence[int], s: int | None = None) -> CharMatrix:
    """De Jonquieres involution of degree n+1: one n-fold point plus 2n simple ones.

    Net L_(n+1)(n, 1^(2n)); each simple point pairs with itself.
    """
    points = tuple(points)
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if len(points) != 2 * n + 1:
        raise ValueError(f"jonquieres of order {n} needs {2 * n + 1} points, got {len(points)}")
    if s is None:
        s = max(points)
    p = 2 * n + 1
    local = [[1 + n, n] + [1] * (2 * n), [-n, 1 - n] + [-1] * (2 * n)]
    for i in range(2, p + 1):
        local.append([-1, -1] + [-1 if i == j else 0 for j in range(2, p + 1)])
    return _embed(local, points, s)


def double_jonquieres_map(n: int, points: Sequence[int], s: int | None = None) -> CharMatrix:
    """Involution of degree n^2+1 on 2n+2 points, a product of two de Jonquieres
    maps; net L_(n^2+1)(n^2-n, n^(2n+1))."""
    points = tuple(points)
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if len(points) != 2 * n + 2:
        raise ValueError(f"double jonquieres of order {n} needs {2 * n + 2} points, got {len(points)}")
    if s is None:
        s = max(points)
    p = 2 * n + 2
    local = [
        [1 + n * n, n * n - n] + [n] * (2 * n + 1),
        [n - n * n, 2 * n - n * n] + [1 - n] * (2 * n + 1),
    ]
    for i in range(2, p + 1):
        local.append([-n, 1 - n] + [0 if i == j else -1 for j in range(2, p + 1)])
    return _embed(local, points, s)


def permutation_map(order: Sequence[int], s: int) -> CharMatrix:
    """Relabel points: image of E_order[j-1] is E_j."""
    if sorted(order) != list(range(1, s + 1)):
        raise ValueError(f"not a permutation of 1..{s}: {order}")
    rows = [[0] * (s + 1) for _ in range(s + 1)]
    rows[0][0] = 1
    for j, src in enumerate(order, start=1):
        rows[j][src] = 1
    return CharMatrix(rows)


def jonquieres_sturm(n: int) -> CharMatrix:
    """Composite on s = 2n+7 points: Sturm at the last six, then de Jonquieres
    at the first 2n+1.  Net L_(5n+5)(5n, 5^(2n), 2^6)."""
    s = 2 * n + 7
    j = jonquieres_map(n, range(1, 2 * n + 2), s)
    st = sturm_map(range(2 * n + 2, 2 * n + 8), s)
    return compose(j, st)


def double_jonquieres_geiser(n: int) -> CharMatrix:
    """Composite on s = 2n+8 points: Geiser at points 2..8, then the order-(n+3)
    double de Jonquieres at all points.  Net L_(8n^2+27n+17)(8n^2+19n+6, (8n+6)^7, (8n+3)^(2n))."""
    s = 2 * n + 8
    dj = double_jonquieres_map(n + 3, range(1, s + 1), s)
    g = geiser_map(range(2, 9), s)
    return compose(dj, g)


# -- shape compression ---------------------------------------------------------


class ShapeMatrix:
    """Action of a characteristic matrix on block-constant classes.

    Acts on (d, v_1, ..., v_p) where v_i is the common multiplicity on the i-th
    block of `counts` consecutive points.
    """

    __slots__ = ("rows", "counts")

    def __init__(self, rows: Iterable[Iterable[int]], counts: Sequence[int]):
        rows = tuple(tuple(r) for r in rows)
        counts = tuple(int(c) for c in counts)
        if any(len(r) != len(rows) for r in rows) or len(rows) != len(counts) + 1:
            raise ValueError("rows must be square of size len(counts)+1")
        if any(not isinstance(x, int) for r in rows for x in r):
            raise TypeError("entries must be integers")
        if any(c < 1 for c in counts):
            raise ValueError(f"counts must be positive: {counts}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "counts", counts)

    def __setattr__(self, name, value):
        raise AttributeError("ShapeMatrix is immutable")

    @property
    def size(self) -> int:
        return len(self.rows)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.size:
            raise ValueError(f"vector length {len(vec)} != {self.size}")
        out = []
        for row in self.rows:
            acc = row[0] * vec[0]
            for c, v in zip(row[1:], vec[1:]):
                acc = acc + c * v
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "ShapeMatrix") -> "ShapeMatrix":
        if not isinstance(other, ShapeMatrix):
            return NotImplemented
        if self.counts != other.counts:
            raise ValueError(f"shapes differ: {self.counts} vs {other.counts}")
        cols = tuple(zip(*other.rows))
        return ShapeMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows],
            self.counts,
        )

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.size))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ShapeMatrix):
            return NotImplemented
        return self.rows == other.rows and self.counts == other.counts

    def __hash__(self) -> int:
        return hash((self.rows, self.counts))

    def pretty(self) -> str:
        width = max(len(str(x)) for r in self.rows for x in r)
        return "\n".join(" ".join(f"{x:>{width}}" for x in r) for r in self.rows)

    def __str__(self) -> str:
        return self.pretty()

    def __repr__(self) -> str:
        return f"ShapeMatrix({[list(r) for r in self.rows]!r}, {self.counts!r})"

    def to_json(self) -> dict:
        return {"counts": list(self.counts), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "ShapeMatrix":
        return cls(data["rows"], data["counts"])


def shape_action(m: CharMatrix, counts: Sequence[int]) -> ShapeMatrix:
    """Compress m to its action on (degree, block values); ShapeError if the
    matrix does not preserve block-constant classes of this shape."""
    counts = tuple(int(c) for c in counts)
    if sum(counts) != m.s:
        raise ShapeError(f"counts {counts} sum to {sum(counts)}, matrix acts on s={m.s}")
    p = len(counts)
    cols = []
    for b in range(p + 1):
        if b == 0:
            x = DivisorClass(1, [0] * m.s)
        else:
            lo = sum(counts[: b - 1])
            mults = [0] * m.s
            for i in range(lo, lo + counts[b - 1]):
                mults[i] = 1
            x = DivisorClass(0, mults)
        img = m.apply(x)
        col = [img.degree]
        pos = 0
        for c in counts:
            window = img.mults[pos : pos + c]
            if any(v != window[0] for v in window[1:]):
                raise ShapeError(f"image of block basis vector {b} breaks shape {counts}")
            col.append(window[0])
            pos += c
        fracs = [v.to_fraction() for v in col]
        assert all(f.denominator == 1 for f in fracs)  # integer matrix, integer basis
        cols.append([f.numerator for f in fracs])
    return ShapeMatrix([[cols[j][i] for j in range(p + 1)] for i in range(p + 1)], counts)


# -- degree reduction ------------------------------------------------------------


@dataclass(frozen=True)
class ReductionResult:
    start: DivisorClass
    reduced: DivisorClass
    steps: tuple[tuple[int, int, int], ...]
    is_reduced: bool

    @property
    def is_line_pencil(self) -> bool:
        return is_line_pencil_up_to_permutation(self.reduced)

    @property
    def has_negative_multiplicity(self) -> bool:
        from .quadfield import QuadNum

        return any(m < QuadNum(0) for m in self.reduced.mults)

    def trace_matrices(self) -> list[CharMatrix]:
        return [quadratic_map(t, self.start.s) for t in self.steps]

    def replay(self) -> bool:
        """Re-apply the recorded quadratic maps; must land on `reduced`."""
        x = self.start
        for t in self.steps:
            x = quadratic_map(t, x.s).apply(x)
        return x == self.reduced

    def to_json(self) -> dict:
        return {
            "start": self.start.to_json(),
            "reduced": self.reduced.to_json(),
            "steps": [list(t) for t in self.steps],
            "is_reduced": self.is_reduced,
            "is_line_pencil": self.is_line_pencil,
        }


def cremona_reduce(x: DivisorClass, max_steps: int = 100000) -> ReductionResult:
    """Apply quadratic maps at the three largest multiplicities until the degree
    is at least their sum (ties broken toward lower indices).

    The degree drops at every step, so this terminates; a run that would push
    the degree to zero or below stops unreduced (non-effective input).
    """
    if not x.is_integral:
        raise ValueError("reduction needs integer degree and multiplicities")
    d = int(x.degree.to_fraction())
    mults = [int(m.to_fraction()) for m in x.mults]
    steps: list[tuple[int, int, int]] = []
    if x.s < 3:
        return ReductionResult(x, x, (), True)
    for _ in range(max_steps):
        top = sorted(range(x.s), key=lambda i: (-mults[i], i))[:3]
        i, j, k = sorted(top)
        if d >= mults[i] + mults[j] + mults[k]:
            reduced = DivisorClass(d, mults)
            return ReductionResult(x, reduced, tuple(steps), True)
        if d <= 0:
            return ReductionResult(x, DivisorClass(d, mults), tuple(steps), False)
        a, b, c = mults[i], mults[j], mults[k]
        d, mults[i], mults[j], mults[k] = 2 * d - a - b - c, d - b - c, d - a - c, d - a - b
        steps.append((i + 1, j + 1, k + 1))
    raise RuntimeError(f"reduction did not settle within {max_steps} steps")
