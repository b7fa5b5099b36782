"""Command-line front end.

Exit codes: 0 success, 1 failed check / NotACocycle, 2 bad input or I/O,
3 NormalizationFailed, 4 NoSolution.
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .algebra import check_associativity, locality, nproduct, xpow
from .bimodule import BimoduleSpec, check_bimodule_axioms
from .cochain import Cochain2, d1, is_cocycle, reconstruct_from_seeds, seeds_of
from .errors import ClosureDiverged, NoSolution, NormalizationFailed, NotACocycle, NotSemisimple
from .exact import D, binom
from .extension import ExtensionAlgebra, check_extension_associativity, embedding_closure, ext, ext_product
from .fuzz import random_coboundary, random_poly
from .report import Report
from .serialize import (FormatError, bimodule_to_json, cochain1_from_json, cochain1_to_json,
                        dump_json, load_json, modelem_to_json, resolve_bimodule,
                        seeds_from_json, seeds_to_json)
from .splitter import VANISHING_NOTE, SplitBounds, SplitCertificate, split_cocycle

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NORMALIZE, EXIT_NOSOLUTION = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    bimodule: str = "regular"
    kmax: int = 5
    nmax: int = 6
    lcheck: int = 8
    seed: int = 0
    fuzz: int = 0
    output: str | None = None
    inputs: dict = field(default_factory=dict)

    def __post_init__(self):
        if min(self.kmax, self.nmax, self.lcheck) < 1:
            raise ValueError("--kmax, --nmax and --lcheck must be positive")

    def header(self) -> dict:
        d = asdict(self)
        d.pop("output")
        return d


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _emit(cfg: RunConfig, payload: dict) -> None:
    text = dump_json({"config": cfg.header(), **payload})
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def _spec(cfg: RunConfig) -> BimoduleSpec:
    try:
        return resolve_bimodule(cfg.bimodule)
    except OSError as exc:
        raise CliError(f"cannot load bimodule {cfg.bimodule!r}: {exc.strerror or exc}")
    except (FormatError, ValueError) as exc:
        raise CliError(f"cannot load bimodule: {exc}")


def _read(path: str):
    try:
        return load_json(path)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}")
    except FormatError as exc:
        raise CliError(str(exc))


def _load_cochain(cfg: RunConfig, spec: BimoduleSpec, seeds_path: str | None, tau_path: str | None) -> Cochain2:
    if tau_path:
        try:
            tau = cochain1_from_json(_read(tau_path), spec)
        except FormatError as exc:
            raise CliError(f"{tau_path}: {exc}")
        cfg.inputs["tau"] = tau_path
        return d1(tau)
    if seeds_path:
        try:
            seeds = seeds_from_json(_read(seeds_path), spec)
        except FormatError as exc:
            raise CliError(f"{seeds_path}: {exc}")
        cfg.inputs["seeds"] = seeds_path
        return reconstruct_from_seeds(seeds, spec)
    raise CliError("give a seed file or --tau FILE")


# -- check-algebra ----------------------------------------------------------

def cmd_check_algebra(cfg: RunConfig) -> int:
    k, nm = cfg.kmax, cfg.nmax
    reports = []
    rep = Report("structure_constants", {"lmax": k, "qmax": k})
    for l, q in itertools.product(range(1, k + 1), repeat=2):
        for m in range(q + 2):
            want = xpow(l + q - m).scale(binom(q, m) * _fact(m)) if m <= q else xpow(1).scale(0)
            rep.record(nproduct(xpow(l), xpow(q), m) == want, l=l, q=q, m=m)
    reports.append(rep)
    rep = Report("associativity", {"kmax": k, "nmax": nm})
    for a, b, c in itertools.product(range(1, k + 1), repeat=3):
        for n, m in itertools.product(range(nm + 1), repeat=2):
            rep.record(check_associativity(xpow(a), xpow(b), xpow(c), n, m), k=a, l=b, q=c, n=n, m=m)
    reports.append(rep)
    rep = Report("locality", {"kmax": k})
    for l, q in itertools.product(range(1, k + 1), repeat=2):
        rep.record(locality(xpow(l), xpow(q)) == q + 1, l=l, q=q)
    reports.append(rep)
    rng = random.Random(cfg.seed)
    rep = Report("sesquilinearity", {"nmax": nm, "samples": 20})
    for _ in range(20):
        a = xpow(rng.randint(1, k), random_poly(rng))
        b = xpow(rng.randint(1, k), random_poly(rng))
        for n in range(nm + 1):
            ok2 = nproduct(a.hmul(D), b, n) == nproduct(a, b, n - 1).scale(-n) if n else not nproduct(a.hmul(D), b, 0)
            rhs = nproduct(a, b, n).hmul(D)
            if n:
                rhs = rhs + nproduct(a, b, n - 1).scale(n)
            ok3 = nproduct(a, b.hmul(D), n) == rhs
            rep.record(ok2 and ok3, a=repr(a), b=repr(b), n=n)
    reports.append(rep)
    for r in reports:
        print(r.line(), file=sys.stderr)
    _emit(cfg, {"reports": [r.to_dict() for r in reports], "passed": all(r.passed for r in reports)})
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _fact(m: int) -> int:
    out = 1
    for i in range(2, m + 1):
        out *= i
    return out


# -- bimodule ---------------------------------------------------------------

def cmd_bimodule(cfg: RunConfig, action: str) -> int:
    spec = _spec(cfg)
    if action == "export":
        try:
            payload = bimodule_to_json(spec)
        except FormatError as exc:
            raise CliError(str(exc))
        text = dump_json(payload)
        if cfg.output:
            Path(cfg.output).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    rep = check_bimodule_axioms(spec, cfg.kmax, cfg.nmax)
    print(rep.line(), file=sys.stderr)
    _emit(cfg, {"reports": [rep.to_dict()], "passed": rep.passed})
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- cocycle ----------------------------------------------------------------

def _row0_cutoff(cfg: RunConfig) -> int:
    # reconstructing phi on triples up to x^kmax reaches phi_0(x, x^l) for l < 3 kmax
    return max(cfg.lcheck, 3 * cfg.kmax)


def cmd_cocycle(cfg: RunConfig, action: str, path: str | None, tau_path: str | None) -> int:
    spec = _spec(cfg)
    if action == "from-tau":
        phi = _load_cochain(cfg, spec, None, tau_path or path)
        seeds = seeds_of(phi, row0_upto=_row0_cutoff(cfg))
        text = dump_json(seeds_to_json(seeds))
        if cfg.output:
            Path(cfg.output).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    phi = _load_cochain(cfg, spec, path, tau_path)
    if action == "from-seeds":
        probe = []
        for s in range(cfg.nmax + 1):
            for k in range(1, cfg.lcheck):
                for l in range(1, cfg.lcheck - k + 1):
                    v = phi.basis(s, k, l)
                    if v:
                        probe.append({"s": s, "k": k, "l": l, "value": modelem_to_json(v)})
        _emit(cfg, {"probe": probe, "range": {"s": cfg.nmax, "k+l": cfg.lcheck}})
        return EXIT_OK
    rep = is_cocycle(phi, cfg.kmax, cfg.nmax)
    print(rep.line(), file=sys.stderr)
    if not rep.passed:
        print(f"NotACocycle: first violation at {rep.first_violation()}", file=sys.stderr)
    _emit(cfg, {"reports": [rep.to_dict()], "passed": rep.passed})
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- split ------------------------------------------------------------------

def certificate_to_json(cert: SplitCertificate, phi: Cochain2, lcheck: int) -> dict:
    upto = lcheck + 1
    return {
        "bimodule": cert.spec.name,
        "bounds": asdict(cert.bounds),
        "input": {
            "diag": [[t, modelem_to_json(phi.diag(t))] for t in range(1, cert.locality)],
            "row0": [[l, modelem_to_json(phi.row0(l))] for l in range(1, lcheck + 1)],
            "locality": cert.locality,
        },
        "xi": cochain1_to_json(cert.xi),
        "z": modelem_to_json(cert.z),
        "v_components": [[i, modelem_to_json(v)] for i, v in sorted(cert.v_components.items())],
        "psi1": modelem_to_json(cert.psi1),
        "psi_kernel": modelem_to_json(cert.psi_kernel),
        "psi_fixed": modelem_to_json(cert.psi_fixed),
        "psi": cochain1_to_json(cert.psi, upto),
        "psi_total": cochain1_to_json(cert.psi_total, upto),
        "m_effective": cert.m_effective,
        "transcript": cert.transcript,
        "argument": VANISHING_NOTE,
        "passed": cert.passed,
    }


def _split_one(cfg: RunConfig, phi: Cochain2, spec: BimoduleSpec) -> tuple[int, dict]:
    bounds = SplitBounds(cfg.kmax, cfg.nmax, cfg.lcheck)
    try:
        cert = split_cocycle(phi, spec, bounds)
    except NotACocycle as exc:
        return EXIT_FAIL, {"passed": False, "stage": "NotACocycle", "error": str(exc), "violation": exc.violation}
    except NormalizationFailed as exc:
        return EXIT_NORMALIZE, {"passed": False, "stage": "NormalizationFailed", "error": str(exc)}
    except (NoSolution, NotSemisimple, ClosureDiverged) as exc:
        return EXIT_NOSOLUTION, {"passed": False, "stage": type(exc).__name__, "error": str(exc)}
    return (EXIT_OK if cert.passed else EXIT_FAIL), certificate_to_json(cert, phi, cfg.lcheck)


def cmd_split(cfg: RunConfig, path: str | None, tau_path: str | None) -> int:
    spec = _spec(cfg)
    if cfg.fuzz:
        rng = random.Random(cfg.seed)
        certs, worst = [], EXIT_OK
        for i in range(cfg.fuzz):
            tau, phi = random_coboundary(spec, rng)
            code, payload = _split_one(cfg, phi, spec)
            payload = {"index": i, "tau": cochain1_to_json(tau), **payload}
            certs.append(payload)
            print(f"{'PASS' if code == EXIT_OK else 'FAIL'} split #{i}", file=sys.stderr)
            worst = max(worst, code)
        _emit(cfg, {"certificates": certs, "passed": worst == EXIT_OK})
        return worst
    phi = _load_cochain(cfg, spec, path, tau_path)
    code, payload = _split_one(cfg, phi, spec)
    print(f"{'PASS' if code == EXIT_OK else 'FAIL'} split ({payload.get('stage', 'certificate')})", file=sys.stderr)
    _emit(cfg, {"certificate": payload})
    return code


# -- extension --------------------------------------------------------------

def cmd_extension(cfg: RunConfig, action: str, path: str | None, tau_path: str | None) -> int:
    spec = _spec(cfg)
    phi = _load_cochain(cfg, spec, path, tau_path)
    B = ExtensionAlgebra(spec, phi)
    if action == "build":
        table = []
        for k, l in itertools.product(range(1, cfg.kmax + 1), repeat=2):
            for n in range(cfg.nmax + 1):
                p = ext_product(ext(xpow(k)), ext(xpow(l)), n, B)
                if p:
                    table.append({"k": k, "l": l, "n": n,
                                  "alg": [{"k": kk, "poly": pp.to_json()} for kk, pp in p.alg.sorted_items()],
                                  "mod": modelem_to_json(p.mod)})
        _emit(cfg, {"extension": {"bimodule": spec.name, "products": table}})
        return EXIT_OK
    if action == "check":
        kmax, nmax = min(cfg.kmax, 3), min(cfg.nmax, 4)
        rep = check_extension_associativity(B, kmax, nmax)
        coc = is_cocycle(phi, kmax, nmax)
        for r in (rep, coc):
            print(r.line(), file=sys.stderr)
        _emit(cfg, {"reports": [rep.to_dict(), coc.to_dict()], "passed": rep.passed,
                    "agrees_with_cocycle_check": rep.passed == coc.passed})
        return EXIT_OK if rep.passed else EXIT_FAIL
    code, payload = _split_one(cfg, phi, spec)
    if code != EXIT_OK:
        _emit(cfg, {"certificate": payload, "passed": False})
        return code
    cert = split_cocycle(phi, spec, SplitBounds(cfg.kmax, cfg.nmax, cfg.lcheck, check_input=False))
    psi = cert.psi_total
    rep = embedding_closure(lambda a: ext(a, -psi(a)), B, min(cfg.kmax, 4), min(cfg.nmax, 5))
    print(rep.line(), file=sys.stderr)
    _emit(cfg, {"certificate": payload, "reports": [rep.to_dict()], "passed": rep.passed})
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bimodule", default="regular", help="builtin name (a+b for sums) or bimodule JSON file")
    common.add_argument("--kmax", type=int, default=5)
    common.add_argument("--nmax", type=int, default=6)
    common.add_argument("--lcheck", type=int, default=8)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-o", "--output", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="cendcohom", description="Hochschild 2-cocycles of Cend_{1,x}")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("check-algebra", parents=[common], help="check the algebra axioms")

    bim = sub.add_parser("bimodule", help="bimodule utilities")
    bsub = bim.add_subparsers(dest="action", required=True)
    bsub.add_parser("check", parents=[common], help="check bimodule axioms")
    bsub.add_parser("export", parents=[common], help="write a finite builtin as a bimodule file")

    coc = sub.add_parser("cocycle", help="2-cochain utilities")
    csub = coc.add_subparsers(dest="action", required=True)
    for name, hlp in [("from-tau", "seeds of delta(tau)"), ("from-seeds", "reconstruction probe"),
                      ("check", "cocycle check")]:
        p = csub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("input", nargs="?")
        p.add_argument("--tau", help="1-cochain file; the cochain is delta(tau)")

    sp = sub.add_parser("split", parents=[common], help="split a cocycle as a coboundary")
    sp.add_argument("input", nargs="?", help="seed file")
    sp.add_argument("--tau", help="1-cochain file; split delta(tau)")
    sp.add_argument("--fuzz", type=int, default=0, help="split N random coboundaries instead")

    ex = sub.add_parser("extension", help="singular extension (A; M, phi)")
    esub = ex.add_subparsers(dest="action", required=True)
    for name in ("build", "check", "split-check"):
        p = esub.add_parser(name, parents=[common])
        p.add_argument("input", nargs="?")
        p.add_argument("--tau")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=" ".join(filter(None, [args.command, getattr(args, "action", None)])),
            bimodule=args.bimodule, kmax=args.kmax, nmax=args.nmax, lcheck=args.lcheck,
            seed=args.seed, fuzz=getattr(args, "fuzz", 0), output=args.output,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.command == "check-algebra":
            if args.bimodule != "regular":
                _spec(cfg)
            return cmd_check_algebra(cfg)
        if args.command == "bimodule":
            return cmd_bimodule(cfg, args.action)
        if args.command == "cocycle":
            return cmd_cocycle(cfg, args.action, args.input, args.tau)
        if args.command == "split":
            return cmd_split(cfg, args.input, args.tau)
        if args.command == "extension":
            return cmd_extension(cfg, args.action, args.input, args.tau)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    parser.error(f"unknown command {args.command}")
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
