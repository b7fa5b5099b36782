"""Free F[D]-module elements and the sesquilinear reduction shared by all products."""

from __future__ import annotations

from typing import Callable, Hashable, Iterable

from .exact import ONE, DPoly, binom, falling, rat


def key_order(key):
    """Total order on basis keys (ints, strings, and tuples of those)."""
    if isinstance(key, bool):
        return (3, str(key))
    if isinstance(key, int):
        return (0, key)
    if isinstance(key, str):
        return (1, key)
    if isinstance(key, tuple):
        return (2, tuple(key_order(k) for k in key))
    return (3, repr(key))


class HElem:
    """Finite sum of p_e(D) * e over basis keys e."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict | None = None):
        t = {}
        for key, poly in (terms or {}).items():
            if not isinstance(poly, DPoly):
                poly = DPoly.const(poly)
            if poly:
                t[self._check_key(key)] = poly
        self._terms = t
        self._hash = None

    @staticmethod
    def _check_key(key):
        return key

    @classmethod
    def _raw(cls, terms: dict):
        e = cls.__new__(cls)
        e._terms = terms
        e._hash = None
        return e

    @classmethod
    def basis(cls, key, poly: DPoly = ONE):
        return cls({key: poly})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, key) -> DPoly:
        return self._terms.get(key, DPoly())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        return isinstance(other, HElem) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        acc = Accumulator()
        acc.add(self)
        acc.add(other)
        return acc.build(type(self))

    def __sub__(self, other):
        acc = Accumulator()
        acc.add(self)
        acc.add(other, -1)
        return acc.build(type(self))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        s = rat(s)
        if not s:
            return type(self)._raw({})
        return type(self)._raw({k: p.scale(s) for k, p in self._terms.items()})

    def __rmul__(self, s):
        if isinstance(s, DPoly):
            return self.hmul(s)
        return self.scale(s)

    def hmul(self, p: DPoly):
        """Action of p(D) on the element."""
        acc = Accumulator()
        for k, q in self._terms.items():
            for d, c in (p * q).items():
                acc.add_mono(k, d, c)
        return acc.build(type(self))

    def d(self, times: int = 1):
        """Apply D ``times`` times."""
        return type(self)._raw({k: p.shift(times) for k, p in self._terms.items()})

    def max_degree(self) -> int:
        return max((p.degree() for p in self._terms.values()), default=0)

    def coords(self) -> dict:
        """Flat map (key, D-degree) -> coefficient."""
        return {(k, d): c for k, p in self._terms.items() for d, c in p.items()}

    @classmethod
    def from_coords(cls, coords: dict):
        acc = Accumulator()
        for (k, d), c in coords.items():
            acc.add_mono(k, d, c)
        return acc.build(cls)

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: key_order(kv[0]))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, p in self.sorted_items():
            name = self._key_repr(k)
            if p == ONE:
                parts.append(name)
            else:
                parts.append(f"({p})*{name}")
        return " + ".join(parts)

    @staticmethod
    def _key_repr(k) -> str:
        return repr(k)


class Accumulator:
    """Mutable builder for element sums."""

    __slots__ = ("_c",)

    def __init__(self):
        self._c: dict = {}

    def add_mono(self, key, deg: int, coef) -> None:
        row = self._c.setdefault(key, {})
        row[deg] = row.get(deg, 0) + coef

    def add(self, elem: HElem, coef=1, dshift: int = 0) -> None:
        if not coef:
            return
        unit = coef == 1
        for k, p in elem._terms.items():
            row = self._c.setdefault(k, {})
            for d, c in p.items():
                d += dshift
                row[d] = row.get(d, 0) + (c if unit else coef * c)

    def build(self, cls):
        terms = {}
        for k, row in self._c.items():
            p = DPoly._raw(row)
            if p:
                terms[k] = p
        return cls._raw(terms)


def sesquilinear(
    basis_op: Callable[[int, Hashable, Hashable], HElem],
    n: int,
    left: HElem,
    right: HElem,
    result_cls: type,
) -> HElem:
    """Extend a basis-level n-product to D-laden arguments.

    Uses (D a)_n b = -n a_{n-1} b and a_n (D b) = D(a_n b) + n a_{n-1} b, which in
    closed form give
        (D^i a)_n (D^j b) = (-1)^i (n)_i sum_r C(j, r) (n-i)_r D^{j-r} a_{n-i-r} b.
    ``basis_op(m, ka, kb)`` returns ka_m kb for basis keys.
    """
    if n < 0:
        return result_cls._raw({})
    lt, rt = left._terms, right._terms
    if len(lt) == 1 and len(rt) == 1:
        (ka, pa), = lt.items()
        (kb, pb), = rt.items()
        if pa is ONE or pa == ONE:
            if pb is ONE or pb == ONE:
                return basis_op(n, ka, kb)
    acc = Accumulator()
    for ka, pa in left._terms.items():
        for i, ca in pa.items():
            if i > n:
                continue
            n1 = n - i
            fa = falling(n, i) * (-1 if i % 2 else 1)
            if ca != 1:
                fa = ca * fa
            for kb, pb in right._terms.items():
                for j, cb in pb.items():
                    base = fa if cb == 1 else fa * cb
                    if j == 0:
                        acc.add(basis_op(n1, ka, kb), base, 0)
                        continue
                    for r in range(min(j, n1) + 1):
                        coef = base * (binom(j, r) * falling(n1, r))
                        if coef:
                            acc.add(basis_op(n1 - r, ka, kb), coef, j - r)
    return acc.build(result_cls)


def locality_scan(op: Callable[[int], HElem], upper: int) -> int:
    """Smallest N <= upper with op(k) == 0 for every N <= k < upper.

    ``upper`` must be a certified bound beyond which op vanishes.
    """
    n = upper
    while n > 0 and not op(n - 1):
        n -= 1
    return n


def sum_elems(elems: Iterable[HElem], cls: type) -> HElem:
    acc = Accumulator()
    for e in elems:
        acc.add(e)
    return acc.build(cls)
