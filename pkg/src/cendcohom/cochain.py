"""Hochschild cochains of Cend_{1,x} with coefficients in a bimodule.

A 1-cochain is an H-linear map tau: A -> M, stored by its values on x^l.  A
2-cochain is a family phi_s(a, b), s >= 0, of bilinear maps obeying

    phi_s(D a, b) = -s phi_{s-1}(a, b)
    phi_s(a, D b) = D phi_s(a, b) + s phi_{s-1}(a, b)

so it is fixed by its values on basis pairs (x^k, x^l).  2-cochains are lazy,
memoised evaluators, because they have infinitely many basis values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .algebra import AlgElem, basis_product, nproduct, xpow
from .bimodule import BimoduleSpec, ModElem, act_left, act_right
from .elements import Accumulator, sesquilinear
from .errors import Unbounded
from .exact import binom
from .report import Report

X = xpow(1)


class Cochain1:
    """tau(x^l) given by a finite table and, optionally, a rule for other l."""

    def __init__(self, spec: BimoduleSpec, values: dict[int, ModElem] | None = None,
                 rule: Callable[[int], ModElem] | None = None, support: int | None = None):
        self.spec = spec
        self.values = {int(l): v for l, v in (values or {}).items() if v}
        if any(l < 1 for l in self.values):
            raise ValueError("1-cochain values are indexed by l >= 1")
        self.rule = rule
        # largest l the rule is meant to be materialised to when serialising
        self.support = support
        self._memo: dict[int, ModElem] = {}

    def value(self, l: int) -> ModElem:
        """tau(x^l)."""
        if l in self.values:
            return self.values[l]
        if self.rule is None:
            return ModElem()
        v = self._memo.get(l)
        if v is None:
            v = self._memo[l] = self.rule(l)
        return v

    def __call__(self, a: AlgElem) -> ModElem:
        return eval1(self, a)

    def materialize(self, upto: int | None = None) -> dict[int, ModElem]:
        top = upto or self.support or max(self.values, default=0)
        out = {l: self.value(l) for l in range(1, top + 1)}
        return {l: v for l, v in out.items() if v}

    def _combine(self, other: "Cochain1", sign: int) -> "Cochain1":
        sup = None
        if self.support is not None or other.support is not None:
            sup = max(self.support or 0, other.support or 0)
        if self.rule is None and other.rule is None:
            keys = set(self.values) | set(other.values)
            return Cochain1(self.spec, {l: self.value(l) + other.value(l).scale(sign) for l in keys})
        return Cochain1(self.spec, rule=lambda l: self.value(l) + other.value(l).scale(sign), support=sup)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Cochain1(self.spec).__sub__(self)

    def __repr__(self) -> str:
        vals = ", ".join(f"x^{l}: {v}" for l, v in sorted(self.values.items()))
        tail = ", ..." if self.rule is not None else ""
        return f"Cochain1({{{vals}{tail}}})"


def eval1(tau: Cochain1, a: AlgElem) -> ModElem:
    acc = Accumulator()
    for k, p in a.items():
        v = tau.value(k)
        for d, c in p.items():
            acc.add(v, c, d)
    return acc.build(ModElem)


class Cochain2:
    """Base 2-cochain: subclasses implement ``_basis(s, k, l)`` = phi_s(x^k, x^l)."""

    tag = "Cochain2"

    def __init__(self, spec: BimoduleSpec):
        self.spec = spec
        self._memo: dict[tuple[int, int, int], ModElem] = {}

    def basis(self, s: int, k: int, l: int) -> ModElem:
        if s < 0:
            return ModElem()
        key = (s, k, l)
        v = self._memo.get(key)
        if v is None:
            v = self._memo[key] = self._basis(s, k, l)
        return v

    def _basis(self, s, k, l) -> ModElem:
        raise NotImplementedError

    def diag(self, t: int) -> ModElem:
        """phi_t(x, x)."""
        return self.basis(t, 1, 1)

    def row0(self, l: int) -> ModElem:
        """phi_0(x, x^l)."""
        return self.basis(0, 1, l)

    def __call__(self, s: int, a: AlgElem, b: AlgElem) -> ModElem:
        return eval2(self, s, a, b)

    def __sub__(self, other: "Cochain2") -> "Cochain2":
        return Difference(self, other)

    def _upper_bound(self) -> int:
        raise Unbounded(f"cannot certify a locality bound for {self.tag}")

    def __repr__(self) -> str:
        return f"<{self.tag} over {self.spec.name}>"


def eval2(phi: Cochain2, s: int, a: AlgElem, b: AlgElem) -> ModElem:
    """phi_s(a, b), reducing D-coefficients by the sesquilinearity rules."""
    if s < 0:
        raise ValueError("s must be >= 0")
    return sesquilinear(lambda n, k, l: phi.basis(n, k, l), s, a, b, ModElem)


class ZeroCochain(Cochain2):
    tag = "Zero"

    def _basis(self, s, k, l):
        return ModElem()

    def _upper_bound(self):
        return 0


class Coboundary(Cochain2):
    """(delta tau)_n(a, b) = tau(a) o_n b - tau(a o_n b) + a o_n tau(b)."""

    tag = "FromCoboundary"

    def __init__(self, tau: Cochain1):
        super().__init__(tau.spec)
        self.tau = tau

    def _basis(self, s, k, l):
        tau, spec = self.tau, self.spec
        a, b = xpow(k), xpow(l)
        out = act_right(tau.value(k), s, b, spec)
        out = out - eval1(tau, basis_product(k, l, s))
        out = out + act_left(a, s, tau.value(l), spec)
        return out

    def _upper_bound(self):
        # on (x, x): x o_s x vanishes for s >= 2, the module terms by table locality
        t = self.tau.value(1)
        return max(2, self.spec.right_bound(t), self.spec.left_bound(t))


def d1(tau: Cochain1) -> Cochain2:
    return Coboundary(tau)


class Difference(Cochain2):
    tag = "Difference"

    def __init__(self, phi: Cochain2, other: Cochain2):
        super().__init__(phi.spec)
        self.phi, self.other = phi, other

    def _basis(self, s, k, l):
        return self.phi.basis(s, k, l) - self.other.basis(s, k, l)

    def _upper_bound(self):
        return max(locality_bound(self.phi), locality_bound(self.other))


class Perturbed(Cochain2):
    """phi plus fixed offsets at chosen basis values; a negative-control device."""

    tag = "Perturbed"

    def __init__(self, phi: Cochain2, offsets: dict[tuple[int, int, int], ModElem]):
        super().__init__(phi.spec)
        self.phi = phi
        self.offsets = dict(offsets)

    def _basis(self, s, k, l):
        out = self.phi.basis(s, k, l)
        off = self.offsets.get((s, k, l))
        return out + off if off is not None else out

    def _upper_bound(self):
        extra = [s + 1 for (s, k, l) in self.offsets if k == l == 1]
        return max([locality_bound(self.phi)] + extra)


@dataclass
class SeedData:
    """phi_t(x, x) for t >= 1 and phi_0(x, x^l) for l >= 1.

    ``row0`` entries take precedence; ``row0_rule`` supplies the rest (e.g. when
    seeds are read off an existing cochain).  Missing values are zero.
    """

    diag: dict[int, ModElem] = field(default_factory=dict)
    row0: dict[int, ModElem] = field(default_factory=dict)
    row0_rule: Callable[[int], ModElem] | None = None
    row0_cutoff: int | None = None

    def __post_init__(self):
        if any(t < 1 for t in self.diag):
            raise ValueError("diag seeds are indexed by t >= 1")
        if any(l < 1 for l in self.row0):
            raise ValueError("row0 seeds are indexed by l >= 1")
        self.diag = {t: v for t, v in self.diag.items() if v}
        self.row0 = {l: v for l, v in self.row0.items() if v}

    def diag_value(self, t: int) -> ModElem:
        return self.diag.get(t, ModElem())

    def row0_value(self, l: int) -> ModElem:
        if l in self.row0:
            return self.row0[l]
        if self.row0_rule is not None:
            return self.row0_rule(l)
        return ModElem()

    def materialize(self, row0_upto: int) -> "SeedData":
        row0 = {l: self.row0_value(l) for l in range(1, row0_upto + 1)}
        return SeedData(dict(self.diag), row0, row0_cutoff=row0_upto)


class SeedCochain(Cochain2):
    """The 2-cochain determined by seed data through the cocycle recurrences.

    With a = x, b = x^{l-1}, c = x^q and the (m, n) = (0, s) component of the
    cocycle identity,
        phi_s(x^l, x^q) = x o_0 phi_s(x^{l-1}, x^q) + phi_0(x, x^{l-1} o_s x^q)
                          - phi_0(x, x^{l-1}) o_s x^q.
    With (m, n) = (s, 0) and a = b = x,
        phi_s(x, x^{q+1}) = phi_s(x^2, x^q) + s phi_{s-1}(x, x^q)
                            + sum_j C(s, j) phi_{s-j}(x, x) o_j x^q - x o_s phi_0(x, x^q).
    The first row is filled by induction on s and q, then the first argument is raised.
    """

    tag = "FromSeeds"

    def __init__(self, seeds: SeedData, spec: BimoduleSpec):
        super().__init__(spec)
        self.seeds = seeds

    def _basis(self, s, k, l):
        spec = self.spec
        if k > 1:
            out = spec.L(0, self.basis(s, k - 1, l))
            out = out + eval2(self, 0, X, basis_product(k - 1, l, s))
            out = out - act_right(self.basis(0, 1, k - 1), s, xpow(l), spec)
            return out
        if s == 0:
            return self.seeds.row0_value(l)
        if l == 1:
            return self.seeds.diag_value(s)
        q = l - 1
        xq = xpow(q)
        out = self.basis(s, 2, q) + self.basis(s - 1, 1, q).scale(s)
        for j in range(s + 1):
            out = out + act_right(self.basis(s - j, 1, 1), j, xq, spec).scale(binom(s, j))
        out = out - act_left(X, s, self.basis(0, 1, q), spec)
        return out

    def _upper_bound(self):
        return max(self.seeds.diag, default=0) + 1


def reconstruct_from_seeds(seeds: SeedData, spec: BimoduleSpec) -> Cochain2:
    return SeedCochain(seeds, spec)


def locality_bound(phi: Cochain2) -> int:
    """Least N with phi_s(x, x) = 0 for s >= N, from a certified upper bound."""
    upper = phi._upper_bound()
    n = upper
    while n > 0 and not phi.diag(n - 1):
        n -= 1
    return n


def seeds_of(phi: Cochain2, row0_upto: int | None = None) -> SeedData:
    """Seed data read off a 2-cochain; row0 stays lazy unless ``row0_upto`` is given."""
    n = locality_bound(phi)
    diag = {t: phi.diag(t) for t in range(1, n)}
    seeds = SeedData(diag, row0_rule=phi.row0)
    return seeds.materialize(row0_upto) if row0_upto else seeds


def d2_eval(phi: Cochain2, m: int, n: int, a: AlgElem, b: AlgElem, c: AlgElem,
            cache: dict | None = None) -> ModElem:
    """(delta_2 phi)_{mn}(a, b, c)
       = a o_m phi_n(b, c) + phi_m(a, b o_n c)
         - sum_s C(m, s) (phi_{n+s}(a o_{m-s} b, c) + phi_{m-s}(a, b) o_{n+s} c).

    ``cache`` may be shared between calls with the same (a, b, c); it stores
    phi_i(a, b) o_j c, which recurs for every (m, n, s) with the same (m - s, n + s).
    """
    spec = phi.spec
    if cache is None:
        cache = {}
    acc = Accumulator()
    acc.add(act_left(a, m, eval2(phi, n, b, c), spec))
    bc = nproduct(b, c, n)
    if bc:
        acc.add(eval2(phi, m, a, bc))
    for s in range(m + 1):
        coef = -binom(m, s)
        ab = nproduct(a, b, m - s)
        if ab:
            acc.add(eval2(phi, n + s, ab, c), coef)
        key = (m - s, n + s)
        w = cache.get(key)
        if w is None:
            w = eval2(phi, m - s, a, b)
            w = cache[key] = act_right(w, n + s, c, spec) if w else w
        if w:
            acc.add(w, coef)
    return acc.build(ModElem)


def is_cocycle(phi: Cochain2, kmax: int, nmax: int, stop_at_first: bool = False) -> Report:
    if kmax < 1 or nmax < 0:
        raise ValueError("bounds must be positive")
    report = Report("cocycle", {"kmax": kmax, "nmax": nmax})
    for k, l, q in itertools.product(range(1, kmax + 1), repeat=3):
        a, b, c = xpow(k), xpow(l), xpow(q)
        cache: dict = {}
        for m in range(nmax + 1):
            for n in range(nmax + 1):
                ok = not d2_eval(phi, m, n, a, b, c, cache)
                report.record(ok, k=k, l=l, q=q, m=m, n=n)
                if not ok and stop_at_first:
                    return report
    return report


def seeds_agree(phi: Cochain2, psi: Cochain2, lcut: int = 8) -> bool:
    """Equality on seed data: diag up to both locality bounds, row0 up to lcut.

    For genuine cocycles this is full equality (a cocycle with vanishing seeds is zero).
    """
    top = max(locality_bound(phi), locality_bound(psi))
    if any(phi.diag(t) != psi.diag(t) for t in range(1, top + 1)):
        return False
    return all(phi.row0(l) == psi.row0(l) for l in range(1, lcut + 1))
