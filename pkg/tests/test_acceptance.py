"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed
at the end of the session (and inline under ``pytest -s``)."""

import itertools
import random
import time
from math import comb, factorial


from cendcohom.algebra import AlgElem, check_associativity, nproduct, xpow
from cendcohom.bimodule import BUILTINS, ModElem, apply_op, as_module, builtin_bimodule
from cendcohom.cochain import (Cochain1, SeedData, d1, is_cocycle, locality_bound,
                               reconstruct_from_seeds, seeds_of)
from cendcohom.exact import binom, falling
from cendcohom.extension import (ExtensionAlgebra, check_extension_associativity, embedding_closure,
                                 ext)
from cendcohom.fuzz import perturb_diag, random_coboundary, random_modelem
from cendcohom.splitter import diag_descent_sides, recurrence_defect, split_cocycle

RESULTS: list[str] = []
BUILTIN_NAMES = sorted(BUILTINS)
REG = builtin_bimodule("regular")


def verdict(n: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_c1_structure_constants():
    t0 = time.perf_counter()
    bad = []
    for l, q in itertools.product(range(1, 9), repeat=2):
        for m in range(q + 2):
            want = xpow(l + q - m).scale(factorial(m) * comb(q, m)) if m <= q else AlgElem()
            if nproduct(xpow(l), xpow(q), m) != want:
                bad.append((l, q, m))
    dt = time.perf_counter() - t0
    verdict(1, "structure constants l, q <= 8, m <= q+1", not bad and dt < 1,
            f"{len(bad)} mismatches, {dt:.2f}s")


def test_c2_associativity():
    t0 = time.perf_counter()
    bad = [(k, l, q, n, m)
           for k, l, q in itertools.product(range(1, 6), repeat=3)
           for n, m in itertools.product(range(7), repeat=2)
           if not check_associativity(xpow(k), xpow(l), xpow(q), n, m)]
    dt = time.perf_counter() - t0
    verdict(2, "both associativity forms k, l, q <= 5, n, m <= 6", not bad and dt < 10,
            f"{len(bad)} failures, {dt:.2f}s")


def test_c3_complex_property():
    t0 = time.perf_counter()
    failures = 0
    for name in ("regular", "regular_zero_right"):
        spec = builtin_bimodule(name)
        rng = random.Random(f"c3-{name}")
        for _ in range(20):
            _, phi = random_coboundary(spec, rng, support=3, max_deg=2, max_index=4)
            failures += is_cocycle(phi, 4, 5).n_violations
    dt = time.perf_counter() - t0
    verdict(3, "delta2 delta1 = 0, 2 x 20 random tau, k, l, q <= 4, m, n <= 5",
            failures == 0 and dt < 60, f"{failures} nonzero components, {dt:.1f}s")


def _left_commutator(spec, u, n, m):
    rhs = apply_op([("L", 0), ("L", m + n)], u, spec)
    if n:
        rhs = rhs + spec.L(m + n - 1, u).scale(n)
    return apply_op([("L", n), ("L", m)], u, spec) == rhs


def _right_product(spec, u, n, m):
    if n == 0:
        return True
    return apply_op([("R", n), ("R", m)], u, spec) == (spec.R(m, u) if n == 1 else ModElem())


def _right_left_exchange(spec, u, n, m):
    rhs = ModElem()
    for s in range(m + 1):
        rhs = rhs + apply_op([("L", m - s), ("R", n + s)], u, spec).scale((-1) ** s * binom(m, s))
    return apply_op([("R", n), ("L", m)], u, spec) == rhs


def _descent_scaling(spec, u, k):
    lhs = apply_op([("L", 0)] * (k - 1) + [("L", k)], u, spec)
    rhs = u
    for j in range(k):
        rhs = spec.L(1, rhs) - rhs.scale(j)
    return lhs == rhs


def test_c4_operator_identities():
    bad = []
    for name in BUILTIN_NAMES:
        spec = builtin_bimodule(name)
        rng = random.Random(f"c4-{name}")
        for i in range(20):
            u = random_modelem(spec, rng)
            for n, m in itertools.product(range(6), repeat=2):
                for label, f in (("LnLm", _left_commutator), ("RnRm", _right_product),
                                 ("RnLm", _right_left_exchange)):
                    if not f(spec, u, n, m):
                        bad.append((name, label, i, n, m))
            for k in range(1, 7):
                if not _descent_scaling(spec, u, k):
                    bad.append((name, "descent", i, k))
    for k in range(1, 7):
        for q in range(1, 9):
            v = as_module(xpow(q))
            if apply_op([("L", 0)] * (k - 1) + [("L", k)], v, REG) != v.scale(falling(q, k)):
                bad.append(("regular", "falling", k, q))
    verdict(4, "operator identities on 20 elements per builtin, falling-factorial scaling",
            not bad, f"{len(bad)} failures")


def test_c5_seed_round_trip():
    bad, checked = [], 0
    rng = random.Random("c5")
    for i in range(10):
        spec = builtin_bimodule(BUILTIN_NAMES[i % len(BUILTIN_NAMES)])
        _, phi = random_coboundary(spec, rng)
        psi = reconstruct_from_seeds(seeds_of(phi), spec)
        N = locality_bound(phi)
        for s in range(N + 1):
            for k in range(1, 8):
                for l in range(1, 9 - k):
                    checked += 1
                    if psi.basis(s, k, l) != phi.basis(s, k, l):
                        bad.append((i, s, k, l))
    verdict(5, "reconstruction from seeds on 10 coboundaries, s <= N, k + l <= 8",
            not bad, f"{checked} values, {len(bad)} mismatches")


def test_c6_zero_seeds():
    bad = []
    for name in BUILTIN_NAMES:
        psi = reconstruct_from_seeds(SeedData(), builtin_bimodule(name))
        bad += [(name, s, k, l) for s in range(7) for k in range(1, 8) for l in range(1, 9 - k)
                if psi.basis(s, k, l)]
    verdict(6, "zero seeds reconstruct to zero, s <= 6, k + l <= 8", not bad, f"{len(bad)} nonzero")


def test_c7_constructive_split():
    phi = d1(Cochain1(REG, {1: as_module(xpow(2))}))
    cert = split_cocycle(phi)
    trace_ok = (cert.passed
                and cert.xi.value(1) == as_module(xpow(2)).scale(2)
                and cert.psi1 == -as_module(xpow(2))
                and cert.psi_total.value(1) == as_module(xpow(2))
                and all(not cert.psi_total.value(l) for l in range(2, 12)))
    failures, slowest, count = [], 0.0, 0
    for name in BUILTIN_NAMES:
        spec = builtin_bimodule(name)
        rng = random.Random(f"c7-{name}")
        for i in range(10):
            _, phi = random_coboundary(spec, rng)
            t0 = time.perf_counter()
            cert = split_cocycle(phi, spec)
            dt = time.perf_counter() - t0
            slowest = max(slowest, dt)
            count += 1
            if not cert.passed or dt >= 60:
                failures.append((name, i))
    verdict(7, "worked trace and 10 fuzzed splits per builtin, transcripts exact",
            trace_ok and not failures,
            f"trace {'ok' if trace_ok else 'wrong'}, {count} splits, {len(failures)} failed, slowest {slowest:.1f}s")


def test_c8_extension_equivalence():
    kmax, nmax = 3, 4
    names = ["regular", "regular_zero_right", "unit_quotient", "zero_left_regular_right", "regular"]
    rng = random.Random("c8")
    cases, disagreements, closure_bad, nonperturbed = 0, [], [], []
    for i, name in enumerate(names):
        spec = builtin_bimodule(name)
        _, phi = random_coboundary(spec, rng)
        bad = perturb_diag(phi, rng)
        for label, cand in (("cocycle", phi), ("perturbed", bad)):
            ext_ok = check_extension_associativity(ExtensionAlgebra(spec, cand), kmax, nmax).passed
            coc_ok = is_cocycle(cand, kmax, nmax).passed
            cases += 1
            if ext_ok != coc_ok:
                disagreements.append((i, label))
            if label == "perturbed" and coc_ok:
                nonperturbed.append(i)
        cert = split_cocycle(phi, spec)
        psi = cert.psi_total
        rep = embedding_closure(lambda a: ext(a, -psi(a)), ExtensionAlgebra(spec, phi), 4, 5)
        if not (cert.passed and rep.passed):
            closure_bad.append(i)
    verdict(8, "extension associativity agrees with cocycle check; embeddings closed",
            cases == 10 and not disagreements and not closure_bad and not nonperturbed,
            f"{cases} cases, {len(disagreements)} disagreements, {len(closure_bad)} closure failures")


def test_c9_cocycle_consequences():
    bad, count = [], 0
    for name in BUILTIN_NAMES:
        spec = builtin_bimodule(name)
        rng = random.Random(f"c9-{name}")
        pool = [random_coboundary(spec, rng)[1] for _ in range(6)]
        pool.append(seeds_as_cocycle(spec, pool[0]))
        for j, phi in enumerate(pool):
            count += 1
            for m in range(1, 6):
                if recurrence_defect(phi, m):
                    bad.append((name, j, "recurrence", m))
                lhs, rhs = diag_descent_sides(phi, m)
                if lhs != rhs:
                    bad.append((name, j, "descent", m))
    verdict(9, "diagonal recurrences and descent identity on generated cocycles, m <= 5",
            not bad, f"{count} cocycles, {len(bad)} failures")


def seeds_as_cocycle(spec, phi):
    """The same cocycle rebuilt from its seeds."""
    return reconstruct_from_seeds(seeds_of(phi), spec)
