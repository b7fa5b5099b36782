#!/usr/bin/env python3
"""Split delta(tau) for tau(x) = x^2 on the regular bimodule and print every stage."""

from cendcohom import Cochain1, builtin_bimodule, d1, split_cocycle, xpow
from cendcohom.bimodule import as_module
from cendcohom.cochain import locality_bound


def main() -> int:
    spec = builtin_bimodule("regular")
    tau = Cochain1(spec, {1: as_module(xpow(2))})
    phi = d1(tau)
    print(f"tau(x) = {tau.value(1)}")
    print(f"locality bound N = {locality_bound(phi)}")
    for t in range(locality_bound(phi)):
        print(f"  phi_{t}(x, x) = {phi.diag(t)}")
    for l in range(1, 5):
        print(f"  phi_0(x, x^{l}) = {phi.row0(l)}")

    cert = split_cocycle(phi)
    print(f"xi(x) = {cert.xi.value(1)}   z = {cert.z}")
    print(f"L_1-components of phi_1: { {i: repr(v) for i, v in sorted(cert.v_components.items())} }")
    print(f"psi_1 = {cert.psi1}  (kernel part {cert.psi_kernel}, fixed part {cert.psi_fixed})")
    for l in range(1, 6):
        print(f"  psi_total(x^{l}) = {cert.psi_total.value(l)}")
    print(f"m_effective = {cert.m_effective}")
    failed = [t for t in cert.transcript if not t["passed"]]
    print(f"{len(cert.transcript)} transcript checks, {len(failed)} failed")
    return 0 if cert.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
