import random

import pytest

from cendcohom.algebra import X, nproduct, xpow
from cendcohom.bimodule import ModElem, as_module, builtin_bimodule
from cendcohom.cochain import Cochain1, Perturbed, ZeroCochain, d1, is_cocycle
from cendcohom.errors import NotClosed
from cendcohom.extension import (ExtensionAlgebra, check_extension_associativity, embedding_closure,
                                 ext, ext_product, splitting_embedding)
from cendcohom.fuzz import perturb_diag, random_coboundary
from cendcohom.splitter import SplitBounds, split_cocycle

REG = builtin_bimodule("regular")


def worked_phi():
    return d1(Cochain1(REG, {1: as_module(xpow(2))}))


def test_product_formula():
    B = ExtensionAlgebra(REG, worked_phi())
    p = ext_product(ext(X), ext(X), 1, B)
    assert p.alg == nproduct(X, X, 1)
    assert p.mod == as_module(xpow(2)).scale(2)
    # module parts multiply to zero
    u = ext(mod=as_module(X))
    assert not ext_product(u, u, 0, B)
    assert B.sigma(p) == p.alg


def test_trivial_extension_is_associative():
    B = ExtensionAlgebra(REG, ZeroCochain(REG))
    assert check_extension_associativity(B, 2, 3).passed


@pytest.mark.parametrize("name", ["regular", "unit_quotient", "regular_zero_right"])
def test_agrees_with_cocycle_check(name):
    spec = builtin_bimodule(name)
    rng = random.Random(name)
    _, phi = random_coboundary(spec, rng)
    for cand in (phi, perturb_diag(phi, rng)):
        B = ExtensionAlgebra(spec, cand)
        assert check_extension_associativity(B, 2, 3).passed == is_cocycle(cand, 2, 3).passed


def test_non_cocycle_fails_with_location():
    bad = Perturbed(worked_phi(), {(1, 1, 1): as_module(X)})
    rep = check_extension_associativity(ExtensionAlgebra(REG, bad), 2, 3)
    assert not rep.passed
    assert {"a", "b", "c", "n", "m"} <= set(rep.first_violation())


def test_splitting_embedding():
    phi = worked_phi()
    cert = split_cocycle(phi, REG, SplitBounds(3, 4, 6))
    B = ExtensionAlgebra(REG, phi)
    embed = splitting_embedding(cert, B)
    assert embed.report.passed
    assert embed(X).mod == -as_module(xpow(2))


def test_wrong_section_not_closed():
    phi = worked_phi()
    cert = split_cocycle(phi, REG, SplitBounds(3, 4, 6))
    cert.psi_total = Cochain1(REG, {1: ModElem()})
    with pytest.raises(NotClosed):
        splitting_embedding(cert, ExtensionAlgebra(REG, phi), 2, 2)
    rep = embedding_closure(lambda a: ext(a), ExtensionAlgebra(REG, phi), 2, 2)
    assert not rep.passed
