"""Exact scalars, polynomials in D, and small rational linear algebra.

Scalars are :class:`fractions.Fraction`. Polynomial coefficients with
denominator 1 are kept as plain ints (equal and hash-equal to the Fraction),
which keeps the common integral case fast. Nothing ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import NoSolution

Rat = Fraction


def rat(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot read {value!r} as a rational")


def _norm(q):
    """int when integral, else the Fraction."""
    if type(q) is int:
        return q
    return q.numerator if q.denominator == 1 else q


def rat_str(q: Fraction) -> str:
    return str(q)


@lru_cache(maxsize=None)
def binom(n: int, k: int) -> int:
    """Binomial coefficient by Pascal's rule; zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    return binom(n - 1, k - 1) + binom(n - 1, k)


@lru_cache(maxsize=None)
def falling(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1); empty product is 1."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


class DPoly:
    """Polynomial in D with rational coefficients, stored sparsely."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        if coeffs:
            for deg, val in coeffs.items():
                if deg < 0:
                    raise ValueError("negative D-degree")
                q = rat(val)
                if q:
                    c[int(deg)] = _norm(q)
        self._c = dict(sorted(c.items()))
        self._hash = None

    @classmethod
    def const(cls, value) -> "DPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, deg: int, value=1) -> "DPoly":
        return cls({deg: value})

    @classmethod
    def _raw(cls, c: dict) -> "DPoly":
        p = cls.__new__(cls)
        if len(c) > 1:
            p._c = dict(sorted((d, _norm(q)) for d, q in c.items() if q))
        else:
            p._c = {d: _norm(q) for d, q in c.items() if q}
        p._hash = None
        return p

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def degree(self) -> int | None:
        return max(self._c) if self._c else None

    def __bool__(self) -> bool:
        return bool(self._c)

    def __getitem__(self, deg: int) -> Fraction:
        return self._c.get(deg, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = DPoly.const(other)
        return isinstance(other, DPoly) and self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def __add__(self, other: "DPoly") -> "DPoly":
        c = dict(self._c)
        for d, q in other._c.items():
            c[d] = c.get(d, 0) + q
        return DPoly._raw(c)

    def __neg__(self) -> "DPoly":
        return DPoly._raw({d: -q for d, q in self._c.items()})

    def __sub__(self, other: "DPoly") -> "DPoly":
        return self + (-other)

    def __mul__(self, other) -> "DPoly":
        if not isinstance(other, DPoly):
            return self.scale(other)
        c: dict[int, Fraction] = {}
        for d1, q1 in self._c.items():
            for d2, q2 in other._c.items():
                c[d1 + d2] = c.get(d1 + d2, 0) + q1 * q2
        return DPoly._raw(c)

    __rmul__ = __mul__

    def scale(self, s) -> "DPoly":
        s = _norm(rat(s))
        if not s:
            return DPoly()
        return DPoly._raw({d: q * s for d, q in self._c.items()})

    def shift(self, k: int) -> "DPoly":
        """Multiply by D**k."""
        return DPoly._raw({d + k: q for d, q in self._c.items()})

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for d, q in self._c.items():
            mon = "" if d == 0 else ("D" if d == 1 else f"D^{d}")
            if d == 0:
                parts.append(str(q))
            elif q == 1:
                parts.append(mon)
            elif q == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{q}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [[d, rat_str(q)] for d, q in self._c.items()]

    @classmethod
    def from_json(cls, data: Sequence) -> "DPoly":
        out: dict[int, Fraction] = {}
        for pair in data:
            deg, val = pair
            if not isinstance(deg, int) or deg < 0:
                raise ValueError(f"bad degree {deg!r}")
            out[deg] = out.get(deg, 0) + rat(val)
        return cls(out)


D = DPoly.monomial(1)
ONE = DPoly.const(1)


def dpoly_arith(p: DPoly, q, op: str) -> DPoly:
    """Dispatch helper for the four basic operations (``scale`` takes a scalar q)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown op {op!r}")


# -- linear algebra ---------------------------------------------------------

Vector = list  # list[Fraction]
Matrix = list  # list[list[Fraction]]


class CoordSpace:
    """Span of rational vectors, held as reduced row-echelon rows.

    ``axes`` optionally names the coordinates (the orbit code uses
    (basis key, D-degree) pairs).
    """

    def __init__(self, dim: int, rows: Sequence[Sequence[Fraction]] = (), axes: Sequence = ()):
        self.dim = dim
        self.rows: tuple[tuple[Fraction, ...], ...] = tuple(tuple(r) for r in rows)
        self.axes = tuple(axes)
        self.pivots = tuple(next(j for j, v in enumerate(r) if v) for r in self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def coordinates(self, v: Sequence[Fraction]) -> list[Fraction] | None:
        """Coefficients of ``v`` in the row basis, or None if v is outside the span."""
        coeffs = [v[p] for p in self.pivots]
        resid = list(v)
        for c, row in zip(coeffs, self.rows):
            if c:
                for j, x in enumerate(row):
                    if x:
                        resid[j] -= c * x
        return coeffs if not any(resid) else None

    def contains(self, v: Sequence[Fraction]) -> bool:
        return self.coordinates(v) is not None

    def __eq__(self, other) -> bool:
        return isinstance(other, CoordSpace) and self.dim == other.dim and self.rows == other.rows

    def __repr__(self) -> str:
        return f"CoordSpace(dim={self.dim}, rank={self.rank})"


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rref(vectors: Iterable[Sequence], dim: int | None = None) -> CoordSpace:
    vecs = [[rat(x) for x in v] for v in vectors]
    if dim is None:
        dim = len(vecs[0]) if vecs else 0
    if any(len(v) != dim for v in vecs):
        raise ValueError("vectors of unequal length")
    rows, _ = _rref_rows(vecs, dim)
    return CoordSpace(dim, rows)


def solve_linear(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Exact solution of A x = b; free variables are set to zero.

    Raises NoSolution if the system is inconsistent.
    """
    m = len(A)
    if len(b) != m:
        raise ValueError("A and b disagree in length")
    n = len(A[0]) if m else 0
    aug = [[rat(x) for x in row] + [rat(bi)] for row, bi in zip(A, b)]
    if any(len(row) != n + 1 for row in aug):
        raise ValueError("ragged matrix")
    rows, pivots = _rref_rows(aug, n + 1)
    if n in pivots:
        raise NoSolution("inconsistent linear system")
    x = [Fraction(0)] * n
    for row, p in zip(rows, pivots):
        x[p] = row[n]
    return x


def mat_vec(A: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * x for a, x in zip(row, v) if a and x), Fraction(0)) for row in A]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = list(zip(*B)) if B else []
    return [[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in cols] for row in A]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_add(A: Matrix, B: Matrix, scale=1) -> Matrix:
    s = rat(scale)
    return [[a + s * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Matrix, s) -> Matrix:
    s = rat(s)
    return [[a * s for a in row] for row in A]


def is_zero_matrix(A: Matrix) -> bool:
    return not any(any(row) for row in A)
