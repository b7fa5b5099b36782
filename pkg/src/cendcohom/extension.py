"""Singular extensions (A; M, phi) = A + M with product twisted by a 2-cochain.

    (a, u) o_n (b, w) = (a o_n b, a o_n w + u o_n b + phi_n(a, b))

M o_n M = 0.  D acts componentwise.  If phi = delta(psi) then a -> (a, -psi(a))
embeds A as a subalgebra: the module part of (a, -psi a) o_n (b, -psi b) is
-(a o_n psi b + psi a o_n b) + phi_n(a, b) = -psi(a o_n b).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .algebra import AlgElem, nproduct, xpow
from .bimodule import BimoduleSpec, ModElem, act_left, act_right
from .cochain import Cochain2, eval2
from .elements import key_order
from .errors import NotClosed
from .exact import binom
from .report import Report
from .splitter import SplitCertificate


@dataclass(frozen=True)
class ExtElem:
    alg: AlgElem
    mod: ModElem

    def __add__(self, other: "ExtElem") -> "ExtElem":
        return ExtElem(self.alg + other.alg, self.mod + other.mod)

    def __sub__(self, other: "ExtElem") -> "ExtElem":
        return ExtElem(self.alg - other.alg, self.mod - other.mod)

    def scale(self, s) -> "ExtElem":
        return ExtElem(self.alg.scale(s), self.mod.scale(s))

    def __bool__(self) -> bool:
        return bool(self.alg) or bool(self.mod)

    def __repr__(self) -> str:
        return f"({self.alg}, {self.mod})"


def ext(alg: AlgElem | None = None, mod: ModElem | None = None) -> ExtElem:
    return ExtElem(alg if alg is not None else AlgElem(), mod if mod is not None else ModElem())


@dataclass
class ExtensionAlgebra:
    spec: BimoduleSpec
    phi: Cochain2

    def product(self, p: ExtElem, q: ExtElem, n: int) -> ExtElem:
        return ext_product(p, q, n, self)

    def sigma(self, p: ExtElem) -> AlgElem:
        """Projection onto A."""
        return p.alg


def ext_product(p: ExtElem, q: ExtElem, n: int, B: ExtensionAlgebra) -> ExtElem:
    spec = B.spec
    alg = nproduct(p.alg, q.alg, n)
    mod = act_left(p.alg, n, q.mod, spec) + act_right(p.mod, n, q.alg, spec)
    mod = mod + eval2(B.phi, n, p.alg, q.alg)
    return ExtElem(alg, mod)


def _generators(B: ExtensionAlgebra, kmax: int, module_keys: int) -> list[tuple[str, ExtElem]]:
    gens = [(f"x^{k}", ext(xpow(k))) for k in range(1, kmax + 1)]
    spec = B.spec
    keys = spec.basis_keys(None if spec.finite else module_keys)
    for e in sorted(keys, key=key_order)[:module_keys]:
        gens.append((f"e[{e!r}]", ext(mod=ModElem.basis(e))))
    return gens


def check_extension_associativity(B: ExtensionAlgebra, kmax: int, nmax: int,
                                  module_keys: int | None = None) -> Report:
    """Both associativity identities on triples of generators (x^k, 0), (0, e).

    Triples with two or more module generators vanish identically and are skipped.
    """
    if kmax < 1 or nmax < 0:
        raise ValueError("bounds must be positive")
    module_keys = kmax if module_keys is None else module_keys
    report = Report("extension_associativity", {"kmax": kmax, "nmax": nmax, "module_keys": module_keys})
    gens = _generators(B, kmax, module_keys)

    def prod(u, v, k):
        return ext_product(u, v, k, B)

    for (na, a), (nb, b), (nc, c) in itertools.product(gens, repeat=3):
        if sum(1 for g in (a, b, c) if g.mod) > 1:
            continue
        for n in range(nmax + 1):
            for m in range(nmax + 1):
                # (a o_n b) o_m c = sum_s (-1)^s C(n,s) a o_{n-s} (b o_{m+s} c)
                lhs = prod(prod(a, b, n), c, m)
                rhs = ext()
                for s in range(n + 1):
                    rhs = rhs + prod(a, prod(b, c, m + s), n - s).scale(binom(n, s) * (-1) ** s)
                report.record(not (lhs - rhs), form=1, a=na, b=nb, c=nc, n=n, m=m)
                # a o_n (b o_m c) = sum_t C(n,t) (a o_{n-t} b) o_{m+t} c
                lhs = prod(a, prod(b, c, m), n)
                rhs = ext()
                for t in range(n + 1):
                    rhs = rhs + prod(prod(a, b, n - t), c, m + t).scale(binom(n, t))
                report.record(not (lhs - rhs), form=2, a=na, b=nb, c=nc, n=n, m=m)
    return report


def splitting_embedding(cert: SplitCertificate, B: ExtensionAlgebra, kmax: int = 4,
                        nmax: int = 5) -> Callable[[AlgElem], ExtElem]:
    """a -> (a, -psi_total(a)); closure under n-products is checked before returning."""
    psi = cert.psi_total

    def embed(a: AlgElem) -> ExtElem:
        return ExtElem(a, -psi(a))

    rep = embedding_closure(embed, B, kmax, nmax)
    if not rep.passed:
        raise NotClosed(f"embedding not closed at {rep.first_violation()}")
    embed.report = rep
    return embed


def embedding_closure(embed: Callable[[AlgElem], ExtElem], B: ExtensionAlgebra,
                      kmax: int, nmax: int) -> Report:
    report = Report("embedding_closure", {"kmax": kmax, "nmax": nmax})
    for k, l in itertools.product(range(1, kmax + 1), repeat=2):
        a, b = xpow(k), xpow(l)
        for n in range(nmax + 1):
            got = ext_product(embed(a), embed(b), n, B)
            want = embed(nproduct(a, b, n))
            report.record(not (got - want), k=k, l=l, n=n)
    return report
