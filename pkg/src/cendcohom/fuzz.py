"""Seeded random inputs: module elements, 1-cochains, coboundaries."""

from __future__ import annotations

import random

from .bimodule import BimoduleSpec, ModElem
from .cochain import Cochain1, Cochain2, Perturbed, d1
from .elements import key_order
from .exact import DPoly


def _keys(spec: BimoduleSpec, limit: int) -> list:
    return sorted(spec.basis_keys(None if spec.finite else limit), key=key_order)[:limit]


def random_poly(rng: random.Random, max_deg: int = 2, coeff: int = 3) -> DPoly:
    while True:
        p = DPoly({d: rng.randint(-coeff, coeff) for d in range(max_deg + 1)})
        if p:
            return p


def random_modelem(spec: BimoduleSpec, rng: random.Random, terms: int = 2, max_deg: int = 2,
                   key_limit: int = 4) -> ModElem:
    keys = _keys(spec, key_limit)
    out = ModElem()
    for _ in range(terms):
        out = out + ModElem({rng.choice(keys): random_poly(rng, max_deg)})
    return out


def random_cochain1(spec: BimoduleSpec, rng: random.Random, support: int = 3, max_deg: int = 2,
                    max_index: int = 4) -> Cochain1:
    """Values on ``support`` distinct x^l with l <= max_index."""
    ls = rng.sample(range(1, max_index + 1), min(support, max_index))
    return Cochain1(spec, {l: random_modelem(spec, rng, max_deg=max_deg, key_limit=max_index)
                           for l in sorted(ls)})


def random_coboundary(spec: BimoduleSpec, rng: random.Random, **kw) -> tuple[Cochain1, Cochain2]:
    tau = random_cochain1(spec, rng, **kw)
    return tau, d1(tau)


def perturb_diag(phi: Cochain2, rng: random.Random, t: int = 1) -> Cochain2:
    """phi with a random nonzero offset added to phi_t(x, x)."""
    off = random_modelem(phi.spec, rng, terms=1, max_deg=0)
    return Perturbed(phi, {(t, 1, 1): off})
