import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cendcohom.algebra import X, xpow
from cendcohom.bimodule import ModElem, as_module, builtin_bimodule
from cendcohom.cochain import (Cochain1, Perturbed, SeedData, ZeroCochain, d1, d2_eval, eval1,
                               is_cocycle, locality_bound, reconstruct_from_seeds, seeds_agree,
                               seeds_of)
from cendcohom.errors import Unbounded
from cendcohom.exact import D
from cendcohom.fuzz import perturb_diag, random_coboundary

from conftest import BUILTIN_NAMES, alg_elems

REG = builtin_bimodule("regular")


def worked_tau():
    return Cochain1(REG, {1: as_module(xpow(2))})


def test_worked_trace_values():
    phi = d1(worked_tau())
    assert phi.diag(0) == as_module(xpow(3)).scale(2)
    assert phi.diag(1) == as_module(xpow(2)).scale(2)
    assert phi.diag(2) == as_module(X).scale(2)
    assert not phi.diag(3)
    assert phi.row0(2) == as_module(xpow(4))
    assert locality_bound(phi) == 3


def test_cochain1_eval_is_linear_and_d_equivariant():
    tau = Cochain1(REG, {1: ModElem({3: D}), 2: as_module(X)})
    a = xpow(1, D) + xpow(2).scale(3)
    assert eval1(tau, a) == ModElem({3: D * D}) + as_module(X).scale(3)
    assert tau(a) == eval1(tau, a)


def test_cochain1_rejects_bad_index():
    with pytest.raises(ValueError):
        Cochain1(REG, {0: as_module(X)})


def test_seed_indices_validated():
    with pytest.raises(ValueError):
        SeedData({0: as_module(X)})


@pytest.mark.parametrize("name", ["regular", "regular_zero_right", "unit_quotient"])
def test_d2_d1_vanishes(name):
    spec = builtin_bimodule(name)
    rng = random.Random(name)
    for _ in range(3):
        _, phi = random_coboundary(spec, rng)
        assert is_cocycle(phi, 3, 4).passed


@given(st.integers(0, 10**6), alg_elems(kmax=3, terms=1), alg_elems(kmax=3, terms=1),
       alg_elems(kmax=3, terms=1), st.integers(0, 3), st.integers(0, 3))
def test_d2_d1_on_d_laden_arguments(seed, a, b, c, m, n):
    _, phi = random_coboundary(REG, random.Random(seed))
    assert not d2_eval(phi, m, n, a, b, c)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_seed_round_trip(name):
    spec = builtin_bimodule(name)
    rng = random.Random(7)
    for _ in range(3):
        _, phi = random_coboundary(spec, rng)
        psi = reconstruct_from_seeds(seeds_of(phi), spec)
        N = locality_bound(phi)
        for s in range(N + 1):
            for k in range(1, 8):
                for l in range(1, 9 - k):
                    assert psi.basis(s, k, l) == phi.basis(s, k, l), (s, k, l)
        assert seeds_agree(phi, psi)


def test_zero_seeds_give_zero():
    psi = reconstruct_from_seeds(SeedData(), REG)
    for s in range(7):
        for k in range(1, 8):
            for l in range(1, 9 - k):
                assert not psi.basis(s, k, l)


def test_seed_from_materialized_file_data():
    phi = d1(worked_tau())
    seeds = seeds_of(phi, row0_upto=15)
    assert seeds.row0_cutoff == 15
    assert seeds.row0[1] == as_module(xpow(3)).scale(2)
    assert all(seeds.row0[l] == as_module(xpow(l + 2)) for l in range(2, 16))
    assert set(seeds.diag) == {1, 2}


def test_perturbation_breaks_cocycle():
    phi = d1(worked_tau())
    bad = Perturbed(phi, {(1, 1, 1): as_module(X)})
    rep = is_cocycle(bad, 3, 3, stop_at_first=True)
    assert not rep.passed
    assert rep.first_violation() is not None
    assert not is_cocycle(perturb_diag(phi, random.Random(1)), 3, 3, stop_at_first=True).passed


def test_difference_and_zero():
    phi = d1(worked_tau())
    assert is_cocycle(phi - phi, 2, 2).passed
    assert not (phi - phi).basis(1, 2, 3)
    assert locality_bound(ZeroCochain(REG)) == 0


def test_cochain2_without_bound():
    from cendcohom.cochain import Cochain2
    with pytest.raises(Unbounded):
        locality_bound(Cochain2(REG))


def test_coboundary_is_linear():
    rng = random.Random(3)
    t1, p1 = random_coboundary(REG, rng)
    t2, p2 = random_coboundary(REG, rng)
    p12 = d1(t1 + t2)
    for s in range(4):
        for k in range(1, 4):
            for l in range(1, 4):
                assert p12.basis(s, k, l) == p1.basis(s, k, l) + p2.basis(s, k, l)
