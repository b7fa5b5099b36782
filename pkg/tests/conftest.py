import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cendcohom.algebra import xpow
from cendcohom.bimodule import BUILTINS, ModElem, builtin_bimodule
from cendcohom.exact import DPoly

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

BUILTIN_NAMES = sorted(BUILTINS)

small_rat = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def dpolys(draw, max_deg=2):
    return DPoly({d: draw(small_rat) for d in range(draw(st.integers(0, max_deg)) + 1)})


@st.composite
def alg_elems(draw, kmax=4, terms=2, max_deg=2):
    out = xpow(1).scale(0)
    for _ in range(draw(st.integers(1, terms))):
        out = out + xpow(draw(st.integers(1, kmax)), draw(dpolys(max_deg)))
    return out


def mod_elems(spec, key_limit=4, terms=2, max_deg=2):
    keys = sorted(spec.basis_keys(None if spec.finite else key_limit), key=repr)[:key_limit]

    @st.composite
    def build(draw):
        out = ModElem()
        for _ in range(draw(st.integers(1, terms))):
            out = out + ModElem({draw(st.sampled_from(keys)): draw(dpolys(max_deg))})
        return out

    return build()


@pytest.fixture(params=BUILTIN_NAMES)
def builtin(request):
    return builtin_bimodule(request.param)


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
