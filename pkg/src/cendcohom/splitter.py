"""Split a 2-cocycle phi on Cend_{1,x} as a coboundary delta(psi).

Pipeline, with phi_m = phi_m(x, x), L_m = (x o_m .), R_m = (. o_m x):

1. V = A phi_1, the span of phi_1 under L_1 and the L_0^m R_{m+1}; it is finite
   dimensional and L_1 acts on it semisimply with eigenvalues in Z_+.
2. Split phi_1 = sum_i v_i into L_1-eigencomponents, put z = sum_{i != 1} v_i / (i - 1)
   and xi(x) = z.  Then phi' = phi - delta(xi) has R_k phi'_1 = 0 for k >= 2.
3. R_1 is a projection commuting with L_1 on A phi'_1.  Solve
   (L_1 - 1) psi^(0) = (1 - R_1) phi'_1 and L_1 psi^(1) = R_1 phi'_1 eigenspace by
   eigenspace; psi_1 = psi^(0) + psi^(1) satisfies
   phi'_1 = x o_1 psi_1 - psi_1 + psi_1 o_1 x.
4. psi(x^{l+1}) = -phi'_0(x, x^l) + x o_0 psi(x^l) + psi_1 o_0 x^l.

Then delta(xi + psi) = phi.  The final equality is certified on the seed data
(phi_t(x, x), t >= 1, and phi_0(x, x^l)), which determine a cocycle, and a
cocycle with phi_1(x, x) = 0 and phi_0(x, x^l) = 0 vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .algebra import xpow
from .bimodule import BimoduleSpec, ModElem, act_right
from .cochain import Cochain1, Cochain2, d1, is_cocycle, locality_bound
from .elements import Accumulator, key_order
from .errors import ClosureDiverged, NoSolution, NormalizationFailed, NotACocycle, NotSemisimple
from .exact import CoordSpace, Matrix, identity, mat_add, mat_mul, mat_scale, mat_vec, rref

X = xpow(1)


def _coord_order(c):
    key, deg = c
    return (key_order(key), deg)


class _Echelon:
    """Incremental fully reduced echelon basis of sparse vectors over (key, deg)."""

    def __init__(self):
        self.rows: list[tuple[Any, dict]] = []  # (pivot, vector with vector[pivot] == 1)

    def reduce(self, vec: dict) -> dict:
        vec = {c: x for c, x in vec.items() if x}
        for piv, row in self.rows:
            f = vec.get(piv)
            if f:
                for c, x in row.items():
                    y = vec.get(c, 0) - f * x
                    if y:
                        vec[c] = y
                    else:
                        vec.pop(c, None)
        return vec

    def add(self, vec: dict) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        piv = min(vec, key=_coord_order)
        inv = 1 / Fraction(vec[piv])
        vec = {c: x * inv for c, x in vec.items()}
        for i, (p, row) in enumerate(self.rows):
            f = row.get(piv)
            if f:
                new = dict(row)
                for c, x in vec.items():
                    y = new.get(c, 0) - f * x
                    if y:
                        new[c] = y
                    else:
                        new.pop(c, None)
                self.rows[i] = (p, new)
        self.rows.append((piv, vec))
        return True


@dataclass
class OrbitSpace:
    """Finite-dimensional subspace of M closed under the orbit generators.

    ``basis`` is in reduced echelon form, so the coordinate of w along basis[i]
    is the coefficient of w at pivots[i].
    """

    spec: BimoduleSpec
    basis: list[ModElem]
    pivots: list[tuple]
    provenance: list[str]
    space: CoordSpace

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, v: ModElem) -> list[Fraction]:
        """Coordinates of v in the basis; raises ValueError if v lies outside."""
        flat = v.coords()
        c = [Fraction(flat.get(p, 0)) for p in self.pivots]
        if self.elem(c) != v:
            raise ValueError(f"{v} is not in the orbit space")
        return c

    def contains(self, v: ModElem) -> bool:
        try:
            self.coords(v)
        except ValueError:
            return False
        return True

    def elem(self, c) -> ModElem:
        acc = Accumulator()
        for x, b in zip(c, self.basis):
            if x:
                acc.add(b, x)
        return acc.build(ModElem)

    def matrix(self, op: Callable[[ModElem], ModElem]) -> Matrix:
        """Matrix of op on the space; column j is the image of basis[j]."""
        cols = [self.coords(op(b)) for b in self.basis]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def L(self, m: int) -> Matrix:
        return self.matrix(lambda v: self.spec.L(m, v))

    def R(self, m: int) -> Matrix:
        return self.matrix(lambda v: self.spec.R(m, v))


def generators(spec: BimoduleSpec, v: ModElem) -> list[tuple[str, ModElem]]:
    """Images of v under L_1 and L_0^m R_{m+1}, for the m where R_{m+1} v can be nonzero."""
    out = [("L1", spec.L(1, v))]
    for m in range(spec.right_bound(v)):
        w = spec.R(m + 1, v)
        for _ in range(m):
            w = spec.L(0, w)
        out.append((f"L0^{m} R{m + 1}", w))
    return out


def orbit_subspace(seed: ModElem, spec: BimoduleSpec, cap: int | None = None) -> OrbitSpace:
    ech = _Echelon()
    provenance: list[str] = []
    if cap is None:
        cap = 64 + len(seed.coords())
    queue: list[tuple[str, ModElem]] = []
    if ech.add(seed.coords()):
        queue.append(("seed", seed))
        provenance.append("seed")
    while queue:
        word, v = queue.pop(0)
        for name, w in generators(spec, v):
            if ech.add(w.coords()):
                label = f"{name} ({word})"
                provenance.append(label)
                queue.append((label, w))
                if len(ech.rows) > cap:
                    raise ClosureDiverged(f"orbit of {seed} exceeded dimension {cap}")
    rows = sorted(ech.rows, key=lambda r: _coord_order(r[0]))
    axes = sorted({c for _, row in rows for c in row}, key=_coord_order)
    index = {c: i for i, c in enumerate(axes)}
    dense = []
    for _, row in rows:
        vec = [Fraction(0)] * len(axes)
        for c, x in row.items():
            vec[index[c]] = Fraction(x)
        dense.append(vec)
    return OrbitSpace(
        spec=spec,
        basis=[ModElem.from_coords(row) for _, row in rows],
        pivots=[p for p, _ in rows],
        provenance=provenance,
        space=CoordSpace(len(axes), dense, axes),
    )


@dataclass
class EigenDecomposition:
    """L_1 = sum_i i P_i on an orbit space."""

    eigenvalues: list[int]
    projections: dict[int, Matrix]
    bases: dict[int, list[ModElem]]
    l1: Matrix
    annihilator_degree: int  # least k with L_1 (L_1 - 1) ... (L_1 - k) = 0, or -1 when V = 0

    def component(self, i: int, c: list[Fraction]) -> list[Fraction]:
        if i not in self.projections:
            return [Fraction(0)] * len(c)
        return mat_vec(self.projections[i], c)


def _rank(A: Matrix) -> int:
    if not A or not A[0]:
        return 0
    cols = [list(col) for col in zip(*A)]
    return rref(cols).rank


def l1_eigendecompose(V: OrbitSpace) -> EigenDecomposition:
    n = V.dim
    A = V.L(1)
    if n == 0:
        return EigenDecomposition([], {}, {}, A, -1)
    I = identity(n)
    trace = sum(A[i][i] for i in range(n))
    # eigenvalues are non-negative integers summing to the trace
    if trace.denominator != 1 or trace < 0:
        raise NotSemisimple(f"trace {trace} of L_1 is not a non-negative integer")
    eigs: list[int] = []
    P = I
    rank = n
    i = 0
    while rank:
        if i > trace:
            raise NotSemisimple("L_1 (L_1 - 1) ... (L_1 - k) does not annihilate the orbit space")
        P = mat_mul(mat_add(A, I, -i), P)
        r = _rank(P)
        if r < rank:
            eigs.append(i)
        rank = r
        i += 1
    if len(eigs) > 0 and sum(eigs) > trace:
        raise NotSemisimple("eigenvalue multiplicities inconsistent with the trace")
    projections: dict[int, Matrix] = {}
    bases: dict[int, list[ModElem]] = {}
    for e in eigs:
        Pe = I
        for f in eigs:
            if f != e:
                Pe = mat_mul(mat_scale(mat_add(A, I, -f), Fraction(1, e - f)), Pe)
        projections[e] = Pe
        cols = [list(col) for col in zip(*Pe)]
        bases[e] = [V.elem(row) for row in rref(cols).rows]
    return EigenDecomposition(eigs, projections, bases, A, i - 1)


def right_annihilated(spec: BimoduleSpec, v: ModElem, start: int = 2) -> list[int]:
    """Indices k >= start with R_k v != 0 (empty means annihilated)."""
    return [k for k in range(start, spec.right_bound(v)) if spec.R(k, v)]


@dataclass
class Normalization:
    phi: Cochain2  # phi - delta(xi)
    xi: Cochain1
    z: ModElem
    v1: ModElem
    components: dict[int, ModElem]
    orbit: OrbitSpace
    eigen: EigenDecomposition


def normalize_cocycle(phi: Cochain2, spec: BimoduleSpec | None = None) -> Normalization:
    spec = spec or phi.spec
    phi1 = phi.diag(1)
    V = orbit_subspace(phi1, spec)
    E = l1_eigendecompose(V)
    c = V.coords(phi1) if V.dim else []
    comps = {i: V.elem(E.component(i, c)) for i in E.eigenvalues}
    z = ModElem()
    for i, v in comps.items():
        if i != 1:
            z = z + v.scale(Fraction(1, i - 1))
    xi = Cochain1(spec, {1: z})
    normalized = phi - d1(xi)
    bad = right_annihilated(spec, normalized.diag(1))
    if bad:
        raise NormalizationFailed(f"R_k phi'_1 != 0 for k in {bad}")
    return Normalization(normalized, xi, z, comps.get(1, ModElem()), comps, V, E)


@dataclass
class Psi1Solution:
    psi1: ModElem
    psi_kernel: ModElem  # psi^(0), in ker R_1
    psi_fixed: ModElem  # psi^(1), fixed by R_1
    phi_kernel: ModElem
    phi_fixed: ModElem


def solve_psi1(phi1: ModElem, V: OrbitSpace, E: EigenDecomposition) -> Psi1Solution:
    """Solve (L_1 + R_1 - 1) psi_1 = phi1 inside V, given R_k phi1 = 0 for k >= 2."""
    spec = V.spec
    if right_annihilated(spec, phi1):
        raise NormalizationFailed("R_k phi'_1 != 0 for some k >= 2")
    if not V.dim:
        if phi1:
            raise NoSolution("phi'_1 lies outside the orbit space")
        z = ModElem()
        return Psi1Solution(z, z, z, z, z)
    c = V.coords(phi1)
    fixed = mat_vec(V.R(1), c)
    kernel = [a - b for a, b in zip(c, fixed)]
    n = V.dim
    psi0 = [Fraction(0)] * n
    psi1 = [Fraction(0)] * n
    for i in E.eigenvalues:
        k_i = E.component(i, kernel)
        f_i = E.component(i, fixed)
        if i == 1:
            if any(k_i):
                raise NoSolution("(1 - R_1) phi'_1 has an L_1-eigenvalue-1 component")
        else:
            psi0 = [a + Fraction(x) / (i - 1) for a, x in zip(psi0, k_i)]
        if i == 0:
            if any(f_i):
                raise NoSolution("R_1 phi'_1 has an L_1-eigenvalue-0 component")
        else:
            psi1 = [a + Fraction(x) / i for a, x in zip(psi1, f_i)]
    sol = Psi1Solution(
        psi1=V.elem([a + b for a, b in zip(psi0, psi1)]),
        psi_kernel=V.elem(psi0),
        psi_fixed=V.elem(psi1),
        phi_kernel=V.elem(kernel),
        phi_fixed=V.elem(fixed),
    )
    if diff1(spec, sol.psi1) != phi1:
        raise NoSolution("x o_1 psi_1 - psi_1 + psi_1 o_1 x != phi'_1")
    return sol


def diff1(spec: BimoduleSpec, psi1: ModElem) -> ModElem:
    """x o_1 psi_1 - psi_1 + psi_1 o_1 x, i.e. (delta psi)_1(x, x) when psi(x) = psi_1."""
    return spec.L(1, psi1) - psi1 + spec.R(1, psi1)


def build_psi(phi: Cochain2, psi1: ModElem, l_max: int) -> Cochain1:
    """psi(x) = psi_1, psi(x^{l+1}) = -phi_0(x, x^l) + x o_0 psi(x^l) + psi_1 o_0 x^l.

    Values are produced lazily for every l; ``l_max`` is how far they are
    materialised when the cochain is written out.
    """
    spec = phi.spec

    def rule(l: int) -> ModElem:
        if l == 1:
            return psi1
        prev = psi.value(l - 1)
        return -phi.row0(l - 1) + spec.L(0, prev) + act_right(psi1, 0, xpow(l - 1), spec)

    psi = Cochain1(spec, rule=rule, support=l_max)
    for l in range(1, l_max + 1):
        psi.value(l)
    return psi


@dataclass
class SplitBounds:
    kmax: int = 5
    nmax: int = 6
    l_check: int = 8
    check_input: bool = True

    def __post_init__(self):
        if self.kmax < 1 or self.nmax < 1 or self.l_check < 1:
            raise ValueError("bounds must be positive")


VANISHING_NOTE = (
    "phi - delta(psi_total) is a cocycle whose values phi_t(x, x), t >= 1, and "
    "phi_0(x, x^l), l >= 1, vanish: the first by the psi_1 equation and diag checks, the "
    "second by construction of psi(x^{l+1}) (re-checked up to l_check). Such a "
    "cocycle is zero, so delta(psi_total) = phi."
)


@dataclass
class SplitCertificate:
    spec: BimoduleSpec
    bounds: SplitBounds
    psi_total: Cochain1
    xi: Cochain1
    psi: Cochain1
    z: ModElem
    v_components: dict[int, ModElem]
    psi1: ModElem
    psi_kernel: ModElem
    psi_fixed: ModElem
    m_effective: int
    locality: int
    transcript: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.transcript) and all(t["passed"] for t in self.transcript)

    def record(self, check: str, passed: bool, **index) -> None:
        self.transcript.append({"check": check, **index, "passed": bool(passed)})

    def checked_indices(self, check: str) -> list[dict]:
        return [t for t in self.transcript if t["check"] == check]


def falling_l1(spec: BimoduleSpec, v: ModElem, hi: int, lo: int) -> ModElem:
    """(L_1 - hi)(L_1 - hi + 1) ... (L_1 - lo) v; identity when hi < lo."""
    for j in range(lo, hi + 1):
        v = spec.L(1, v) - v.scale(j)
    return v


def diag_descent_sides(phi: Cochain2, m: int) -> tuple[ModElem, ModElem]:
    """Both sides of L_0^m phi_{m+1} = (L_1-m)...(L_1-2) L_1 phi_1
    - sum_{s=1}^m (L_1-m)...(L_1-(s+1)) L_0^{s-1} R_s phi_1."""
    spec = phi.spec
    lhs = phi.diag(m + 1)
    for _ in range(m):
        lhs = spec.L(0, lhs)
    phi1 = phi.diag(1)
    rhs = falling_l1(spec, spec.L(1, phi1), m, 2)
    for s in range(1, m + 1):
        w = spec.R(s, phi1)
        for _ in range(s - 1):
            w = spec.L(0, w)
        rhs = rhs - falling_l1(spec, w, m, s + 1)
    return lhs, rhs


def recurrence_defect(phi: Cochain2, m: int) -> ModElem:
    """x o_0 phi_{m+1} minus its expression through lower diagonal values:
    m = 1: x o_1 phi_1 - phi_1 o_1 x;  m > 1: x o_1 phi_m - phi_m - phi_1 o_m x."""
    spec = phi.spec
    lhs = spec.L(0, phi.diag(m + 1))
    if m == 1:
        rhs = spec.L(1, phi.diag(1)) - spec.R(1, phi.diag(1))
    else:
        rhs = spec.L(1, phi.diag(m)) - phi.diag(m) - spec.R(m, phi.diag(1))
    return lhs - rhs


def split_cocycle(phi: Cochain2, spec: BimoduleSpec | None = None,
                  bounds: SplitBounds | None = None) -> SplitCertificate:
    spec = spec or phi.spec
    bounds = bounds or SplitBounds()
    if bounds.check_input:
        rep = is_cocycle(phi, bounds.kmax, bounds.nmax, stop_at_first=True)
        if not rep.passed:
            raise NotACocycle(f"input fails the cocycle identity at {rep.first_violation()}",
                              rep.first_violation())

    norm = normalize_cocycle(phi, spec)
    phi_n = norm.phi
    V = orbit_subspace(phi_n.diag(1), spec)
    E = l1_eigendecompose(V)
    sol = solve_psi1(phi_n.diag(1), V, E)
    psi = build_psi(phi_n, sol.psi1, bounds.l_check + 1)
    psi_total = norm.xi + psi

    n_phi = locality_bound(phi)
    top_eig = max(norm.eigen.eigenvalues, default=0)
    cert = SplitCertificate(
        spec=spec, bounds=bounds, psi_total=psi_total, xi=norm.xi, psi=psi, z=norm.z,
        v_components=norm.components, psi1=sol.psi1, psi_kernel=sol.psi_kernel,
        psi_fixed=sol.psi_fixed, m_effective=max(top_eig + 2, n_phi + 1), locality=n_phi,
    )

    # stage checks
    v1 = norm.v1
    cert.record("R_k v_1 = 0, k >= 2", not right_annihilated(spec, v1))
    cert.record("R_k phi'_1 = 0, k >= 2", not right_annihilated(spec, phi_n.diag(1)))
    cert.record("R_k V = 0, k >= 2", all(not right_annihilated(spec, b) for b in V.basis), dim=V.dim)
    m = cert.m_effective
    lhs = falling_l1(spec, spec.L(1, phi.diag(1)), m, 2)
    rhs = ModElem()
    for s in range(1, m + 1):
        w = spec.R(s, phi.diag(1))
        for _ in range(s - 1):
            w = spec.L(0, w)
        rhs = rhs + falling_l1(spec, w, m, s + 1)
    cert.record("diag descent vanishes", lhs == rhs, m=m)
    cert.record("psi_1 equation", diff1(spec, sol.psi1) == phi_n.diag(1))

    # delta(psi_total) against phi on the seed data
    delta = d1(psi_total)
    top = max(n_phi, locality_bound(delta))
    for t in range(1, max(top, 1) + 1):
        cert.record("diag", phi.diag(t) == delta.diag(t), t=t)
    for l in range(1, bounds.l_check + 1):
        cert.record("row0", phi.row0(l) == delta.row0(l), l=l)
    # direct spot check on small basis pairs
    for s in range(top + 1):
        for k in range(1, bounds.kmax + 1):
            for l in range(1, bounds.kmax + 2 - k):
                cert.record("direct", phi.basis(s, k, l) == delta.basis(s, k, l), s=s, k=k, l=l)
    return cert
