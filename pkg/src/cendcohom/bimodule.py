"""Conformal bimodules over Cend_{1,x}.

A bimodule is presented by the action of the generator x alone: the values
x o_n e and e o_n x on a basis of a free F[D]-module, together with locality
bounds.  Actions of x^k are derived from the m = 0 associativity recursions

    x^k o_n v = x o_0 (x^{k-1} o_n v)
    v o_n x^k = sum_t C(n, t) (v o_{n-t} x) o_t x^{k-1}

and D-coefficients are handled by sesquilinearity.  Right-module
associativity is taken in the form v o_n (a o_m b) = sum_t C(n,t) (v o_{n-t} a) o_{m+t} b.
"""

from __future__ import annotations

import itertools
import re
from typing import Callable, Hashable, Iterable, Sequence

from .algebra import AlgElem, basis_product, nproduct, xpow
from .elements import HElem, key_order, sesquilinear
from .errors import MissingTableEntry
from .exact import binom
from .report import Report


class ModElem(HElem):
    """Element of a bimodule: sum_e p_e(D) e."""

    __slots__ = ()

    @staticmethod
    def _key_repr(k) -> str:
        if isinstance(k, int):
            return "x" if k == 1 else f"x^{k}"
        return str(k)


def as_module(a: AlgElem) -> ModElem:
    """View an algebra element inside the regular bimodule."""
    return ModElem._raw(dict(a.items()))


def as_algebra(v: ModElem) -> AlgElem:
    return AlgElem(dict(v.items()))


class BimoduleSpec:
    """Base class; subclasses supply the x-tables.

    Derived actions are memoised per instance.  Memo entries are pure
    functions of the immutable tables, so concurrent fills are benign.
    """

    name = "bimodule"

    def __init__(self):
        self._left_memo: dict = {}
        self._right_memo: dict = {}

    # -- tables, overridden by subclasses --------------------------------
    def has_key(self, key) -> bool:
        raise NotImplementedError

    def basis_keys(self, limit: int | None = None) -> list:
        raise NotImplementedError

    @property
    def finite(self) -> bool:
        return False

    def n_left(self, key) -> int:
        raise NotImplementedError

    def n_right(self, key) -> int:
        raise NotImplementedError

    def _left_entry(self, key, n: int) -> ModElem:
        raise NotImplementedError

    def _right_entry(self, key, n: int) -> ModElem:
        raise NotImplementedError

    # -- generator actions ----------------------------------------------
    def _require(self, key):
        if not self.has_key(key):
            raise MissingTableEntry(f"{self.name}: unknown basis key {key!r}")

    def left_x(self, key, n: int) -> ModElem:
        """x o_n e."""
        self._require(key)
        if n >= self.n_left(key):
            return ModElem()
        return self._left_entry(key, n)

    def right_x(self, key, n: int) -> ModElem:
        """e o_n x."""
        self._require(key)
        if n >= self.n_right(key):
            return ModElem()
        return self._right_entry(key, n)

    # -- derived actions on basis ---------------------------------------
    def left_basis(self, k: int, n: int, key) -> ModElem:
        """x^k o_n e."""
        memo = self._left_memo.get((k, n, key))
        if memo is not None:
            return memo
        if k == 1:
            out = self.left_x(key, n)
        else:
            out = self.L(0, self.left_basis(k - 1, n, key))
        self._left_memo[(k, n, key)] = out
        return out

    def right_basis(self, key, n: int, k: int) -> ModElem:
        """e o_n x^k."""
        memo = self._right_memo.get((key, n, k))
        if memo is not None:
            return memo
        if k == 1:
            out = self.right_x(key, n)
        else:
            acc = ModElem()
            rest = xpow(k - 1)
            for t in range(n + 1):
                head = self.right_x(key, n - t)
                if head:
                    acc = acc + act_right(head, t, rest, self).scale(binom(n, t))
            out = acc
        self._right_memo[(key, n, k)] = out
        return out

    # -- multiplication operators L_m = (x o_m .), R_m = (. o_m x) --------
    def L(self, m: int, v: ModElem) -> ModElem:
        return sesquilinear(lambda n, _k, e: self.left_x(e, n), m, _X, v, ModElem)

    def R(self, m: int, v: ModElem) -> ModElem:
        return sesquilinear(lambda n, e, _k: self.right_x(e, n), m, v, _X, ModElem)

    def left_bound(self, v: ModElem) -> int:
        """Certified N with x o_n v = 0 for n >= N."""
        return max((self.n_left(e) + (p.degree() or 0) for e, p in v.items()), default=0)

    def right_bound(self, v: ModElem) -> int:
        """Certified N with v o_n x = 0 for n >= N."""
        return max((self.n_right(e) + (p.degree() or 0) for e, p in v.items()), default=0)

    def max_right_locality(self) -> int | None:
        """Largest declared right bound over the basis, when the basis is finite."""
        if not self.finite:
            return None
        return max((self.n_right(e) for e in self.basis_keys()), default=0)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


_X = xpow(1)


def act_left(a: AlgElem, n: int, v: ModElem, spec: BimoduleSpec) -> ModElem:
    """a o_n v."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sesquilinear(lambda m, k, e: spec.left_basis(k, m, e), n, a, v, ModElem)


def act_right(v: ModElem, n: int, a: AlgElem, spec: BimoduleSpec) -> ModElem:
    """v o_n a."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sesquilinear(lambda m, e, k: spec.right_basis(e, m, k), n, v, a, ModElem)


class TableBimodule(BimoduleSpec):
    """Finite basis with explicit x-tables."""

    def __init__(
        self,
        name: str,
        keys: Sequence[Hashable],
        n_left: dict,
        n_right: dict,
        left: dict,
        right: dict,
    ):
        super().__init__()
        self.name = name
        self.keys = list(keys)
        self._keyset = set(self.keys)
        self._n_left = dict(n_left)
        self._n_right = dict(n_right)
        self.left = dict(left)
        self.right = dict(right)
        for (e, n), val in itertools.chain(self.left.items(), self.right.items()):
            if e not in self._keyset:
                raise ValueError(f"table entry for unknown key {e!r}")
            for k in val.keys():
                if k not in self._keyset:
                    raise ValueError(f"table value mentions unknown key {k!r}")

    @property
    def finite(self) -> bool:
        return True

    def has_key(self, key) -> bool:
        return key in self._keyset

    def basis_keys(self, limit=None):
        return self.keys if limit is None else self.keys[:limit]

    def n_left(self, key):
        return self._n_left.get(key, 0)

    def n_right(self, key):
        return self._n_right.get(key, 0)

    def _left_entry(self, key, n):
        try:
            return self.left[(key, n)]
        except KeyError:
            raise MissingTableEntry(f"{self.name}: no entry for x o_{n} {key!r}") from None

    def _right_entry(self, key, n):
        try:
            return self.right[(key, n)]
        except KeyError:
            raise MissingTableEntry(f"{self.name}: no entry for {key!r} o_{n} x") from None


class RuleBimodule(BimoduleSpec):
    """Basis and tables given by functions; allows the infinite basis {x^k}."""

    def __init__(
        self,
        name: str,
        has_key: Callable[[Hashable], bool],
        keys: Callable[[int | None], list],
        n_left: Callable[[Hashable], int],
        n_right: Callable[[Hashable], int],
        left: Callable[[Hashable, int], ModElem],
        right: Callable[[Hashable, int], ModElem],
        finite: bool = False,
    ):
        super().__init__()
        self.name = name
        self._has_key = has_key
        self._keys = keys
        self._nl = n_left
        self._nr = n_right
        self._left = left
        self._right = right
        self._finite = finite

    @property
    def finite(self):
        return self._finite

    def has_key(self, key):
        return self._has_key(key)

    def basis_keys(self, limit=None):
        if limit is None and not self._finite:
            raise ValueError(f"{self.name} has an infinite basis; pass a limit")
        return self._keys(limit)

    def n_left(self, key):
        return self._nl(key)

    def n_right(self, key):
        return self._nr(key)

    def _left_entry(self, key, n):
        return self._left(key, n)

    def _right_entry(self, key, n):
        return self._right(key, n)


def _is_power(key) -> bool:
    return isinstance(key, int) and not isinstance(key, bool) and key >= 1


def _power_keys(limit):
    return list(range(1, limit + 1))


def _regular_left(q, n):
    return as_module(basis_product(1, q, n))


def _regular_right(q, n):
    return as_module(basis_product(q, 1, n))


def _zero(*_):
    return ModElem()


def regular() -> BimoduleSpec:
    """Cend_{1,x} acting on itself on both sides."""
    return RuleBimodule("regular", _is_power, _power_keys, lambda q: q + 1, lambda q: 2,
                        _regular_left, _regular_right)


def regular_zero_right() -> BimoduleSpec:
    return RuleBimodule("regular_zero_right", _is_power, _power_keys, lambda q: q + 1, lambda q: 0,
                        _regular_left, _zero)


def zero_left_regular_right() -> BimoduleSpec:
    return RuleBimodule("zero_left_regular_right", _is_power, _power_keys, lambda q: 0, lambda q: 2,
                        _zero, _regular_right)


def zero() -> BimoduleSpec:
    """Rank one, all actions zero."""
    return TableBimodule("zero", ["e"], {}, {}, {}, {})


def unit_quotient() -> BimoduleSpec:
    """F[D,x] / x F[D,x] as a right module (1 o_n x^k = k! [n == k]); left action zero."""
    return TableBimodule("unit_quotient", ["u"], {}, {"u": 2}, {},
                         {("u", 0): ModElem(), ("u", 1): ModElem.basis("u")})


def direct_sum(*specs: BimoduleSpec) -> BimoduleSpec:
    """Keys of the sum are (summand index, key)."""
    specs = tuple(specs)

    def has_key(key):
        return (isinstance(key, tuple) and len(key) == 2 and isinstance(key[0], int)
                and 0 <= key[0] < len(specs) and specs[key[0]].has_key(key[1]))

    def tag(i, v: ModElem) -> ModElem:
        return ModElem._raw({(i, k): p for k, p in v.items()})

    finite = all(s.finite for s in specs)

    def keys(limit):
        if finite and limit is None:
            return [(i, k) for i, s in enumerate(specs) for k in s.basis_keys()]
        per = [iter(s.basis_keys(limit)) for s in specs]
        out = []
        for group in itertools.zip_longest(*per):
            for i, k in enumerate(group):
                if k is not None:
                    out.append((i, k))
        return out if limit is None else out[:limit]

    name = "+".join(s.name for s in specs)
    return RuleBimodule(
        name, has_key, keys,
        lambda key: specs[key[0]].n_left(key[1]),
        lambda key: specs[key[0]].n_right(key[1]),
        lambda key, n: tag(key[0], specs[key[0]].left_x(key[1], n)),
        lambda key, n: tag(key[0], specs[key[0]].right_x(key[1], n)),
        finite=finite,
    )


BUILTINS: dict[str, Callable[[], BimoduleSpec]] = {
    "regular": regular,
    "regular_zero_right": regular_zero_right,
    "zero_left_regular_right": zero_left_regular_right,
    "zero": zero,
    "unit_quotient": unit_quotient,
}


def builtin_bimodule(name: str) -> BimoduleSpec:
    """Look up a builtin; ``a+b`` or ``direct_sum(a,b)`` builds a direct sum."""
    name = name.strip()
    m = re.fullmatch(r"direct_sum\((.*)\)", name)
    parts = m.group(1).split(",") if m else name.split("+")
    parts = [p.strip() for p in parts if p.strip()]
    if len(parts) > 1 or m:
        return direct_sum(*(builtin_bimodule(p) for p in parts))
    try:
        return BUILTINS[name]()
    except KeyError:
        raise ValueError(f"unknown bimodule {name!r}; builtins: {sorted(BUILTINS)}") from None


def apply_op(word, v: ModElem, spec: BimoduleSpec) -> ModElem:
    """Apply an operator word written as composition, e.g. "L0 L2" = L_0(L_2(v)).

    ``word`` is a string of tokens L<n>/R<n> or a sequence of ("L"|"R", n); the
    rightmost factor acts first.
    """
    if isinstance(word, str):
        word = [(t[0], int(t[1:])) for t in word.replace("*", " ").split()]
    for kind, n in reversed(list(word)):
        if kind == "L":
            v = spec.L(n, v)
        elif kind == "R":
            v = spec.R(n, v)
        else:
            raise ValueError(f"unknown operator {kind!r}")
    return v


def check_bimodule_axioms(spec: BimoduleSpec, kmax: int, nmax: int, keys: Iterable | None = None) -> Report:
    """Check left associativity, right associativity and the compatibility axiom.

    Covers a = x^k, b = x^l with k, l <= kmax, n, m <= nmax and basis keys e
    (the first kmax keys for an infinite basis).  Locality and the D-rules hold
    by construction of the tables and are not re-checked here.
    """
    if kmax < 1 or nmax < 0:
        raise ValueError("bounds must be positive")
    report = Report("bimodule_axioms", {"kmax": kmax, "nmax": nmax, "bimodule": spec.name})
    keys = list(keys) if keys is not None else spec.basis_keys(None if spec.finite else kmax)
    keys = sorted(keys, key=key_order)
    pw = [xpow(k) for k in range(1, kmax + 1)]
    for e in keys:
        v = ModElem.basis(e)
        for a, b in itertools.product(pw, pw):
            ka, kb = next(iter(a.keys())), next(iter(b.keys()))
            for m in range(nmax + 1):
                for n in range(nmax + 1):
                    # (a o_m b) o_n v = sum_s (-1)^s C(m,s) a o_{m-s} (b o_{n+s} v)
                    lhs = act_left(nproduct(a, b, m), n, v, spec)
                    rhs = ModElem()
                    for s in range(m + 1):
                        rhs = rhs + act_left(a, m - s, act_left(b, n + s, v, spec), spec).scale(
                            binom(m, s) * (-1) ** s)
                    report.record(lhs == rhs, axiom="left", k=ka, l=kb, key=e, m=m, n=n)
                    # v o_n (a o_m b) = sum_t C(n,t) (v o_{n-t} a) o_{m+t} b
                    lhs = act_right(v, n, nproduct(a, b, m), spec)
                    rhs = ModElem()
                    for t in range(n + 1):
                        rhs = rhs + act_right(act_right(v, n - t, a, spec), m + t, b, spec).scale(binom(n, t))
                    report.record(lhs == rhs, axiom="right", k=ka, l=kb, key=e, m=m, n=n)
                    # (a o_m v) o_n b = sum_s (-1)^s C(m,s) a o_{m-s} (v o_{n+s} b)
                    lhs = act_right(act_left(a, m, v, spec), n, b, spec)
                    rhs = ModElem()
                    for s in range(m + 1):
                        rhs = rhs + act_left(a, m - s, act_right(v, n + s, b, spec), spec).scale(
                            binom(m, s) * (-1) ** s)
                    report.record(lhs == rhs, axiom="compat", k=ka, l=kb, key=e, m=m, n=n)
    return report
