"""The associative conformal algebra Cend_{1,x} = x Cend_1.

As an F[D]-module it is free on x, x^2, x^3, ...  The n-product of basis
elements is x^l o_n x^q = x^l * (d/dx)^n x^q = n! C(q, n) x^{l+q-n}; products
of D-laden elements are reduced to basis pairs by the sesquilinearity axioms.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Callable

from .elements import HElem, locality_scan, sesquilinear
from .exact import ONE, DPoly, binom


class AlgElem(HElem):
    """sum_k p_k(D) x^k with k >= 1."""

    __slots__ = ()

    @staticmethod
    def _check_key(key):
        if isinstance(key, bool) or not isinstance(key, int) or key < 1:
            raise ValueError(f"Cend_1,x basis index must be an int >= 1, got {key!r}")
        return key

    @staticmethod
    def _key_repr(k) -> str:
        return "x" if k == 1 else f"x^{k}"


def xpow(k: int, poly: DPoly = ONE) -> AlgElem:
    """poly(D) * x^k."""
    return AlgElem({k: poly})


X = xpow(1)
ZERO = AlgElem()


@lru_cache(maxsize=None)
def basis_product(l: int, q: int, m: int) -> AlgElem:
    """x^l o_m x^q."""
    c = factorial(m) * binom(q, m)
    if not c or m < 0:
        return ZERO
    return AlgElem._raw({l + q - m: DPoly.const(c)})


ProductTable = Callable[[int, int, int], AlgElem]


def nproduct(a: AlgElem, b: AlgElem, n: int, table: ProductTable | None = None) -> AlgElem:
    """a o_n b. ``table`` overrides the basis rule (used for negative controls)."""
    if n < 0:
        raise ValueError("n-products need n >= 0")
    table = table or basis_product
    return sesquilinear(lambda m, k, l: table(k, l, m), n, a, b, AlgElem)


def locality(a: AlgElem, b: AlgElem) -> int:
    """Least N with a o_k b = 0 for all k >= N."""
    if not a or not b:
        return 0
    # x^l survives at most l differentiations; each D on either side adds one.
    upper = max(l for l in b.keys()) + a.max_degree() + b.max_degree() + 1
    return locality_scan(lambda k: nproduct(a, b, k), upper)


def associativity_defects(
    a: AlgElem, b: AlgElem, c: AlgElem, n: int, m: int, table: ProductTable | None = None
) -> tuple[AlgElem, AlgElem]:
    """Differences LHS - RHS of both associativity identities at (n, m)."""
    def p(u, v, k):
        return nproduct(u, v, k, table)

    first = p(p(a, b, n), c, m)
    for s in range(n + 1):
        term = p(a, p(b, c, m + s), n - s)
        first = first - term.scale(binom(n, s) * (-1) ** s)
    second = p(a, p(b, c, m), n)
    for t in range(n + 1):
        second = second - p(p(a, b, n - t), c, m + t).scale(binom(n, t))
    return first, second


def check_associativity(
    a: AlgElem, b: AlgElem, c: AlgElem, n: int, m: int, table: ProductTable | None = None
) -> bool:
    first, second = associativity_defects(a, b, c, n, m, table)
    return not first and not second
