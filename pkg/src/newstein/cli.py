"""Batch command-line front end.

Subcommands: jacobi, cohomology, extensions, grouplaw, spectrum, evolve,
oracle, verify-all.  Machine-readable JSON goes to stdout with a stable key
order; human-readable tables go to stderr.  Identical configurations produce
byte-identical reports.

Exit codes: 0 success (verify-all: every non-conditional claim matches),
1 claim mismatch, 2 unknown algebra, 3 invalid parameters, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_UNKNOWN_ALGEBRA = 2
EXIT_BAD_PARAMS = 3
EXIT_IO = 4


def _emit(doc, path=None) -> None:
    text = json.dumps(doc, indent=1, default=_json_default) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not serializable: {type(obj)}")


def _note(text: str) -> None:
    print(text, file=sys.stderr)


def load_algebra(selector: str):
    from .algebras import build_extended, build_newstein, build_newstein2, heisenberg3, sl2
    from .liealg import LieAlgebra

    if selector == "newstein":
        return build_newstein()
    if selector == "newstein2":
        return build_newstein2()
    if selector.startswith("newstein-ext:"):
        case = int(selector.split(":", 1)[1])
        return build_extended(case)
    if selector == "h3":
        return heisenberg3()
    if selector == "sl2":
        return sl2()
    if selector.startswith("file:"):
        return LieAlgebra.load(selector.split(":", 1)[1])
    raise KeyError(selector)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("NEWSTEIN_WORKERS", "1")))
    except ValueError:
        return 1


# -- subcommands -----------------------------------------------------------


def cmd_jacobi(args) -> int:
    alg = load_algebra(args.algebra)
    violations = alg.jacobi_check(workers=worker_count())
    _emit({
        "command": "jacobi",
        "algebra": alg.name,
        "dimension": alg.dim,
        "violations": len(violations),
        "first_violations": violations[:10],
    }, args.out)
    _note(f"{alg.dim}-dim, {len(violations)} violations")
    return EXIT_OK if not violations else EXIT_MISMATCH


def cmd_cohomology(args) -> int:
    from .algebras import NewSteinAlgebra
    from .cohomology import CoefficientModule, betti, h1_via_reduction, h2_via_reduction

    alg = load_algebra(args.algebra)
    if args.via_reduction:
        if not isinstance(alg, NewSteinAlgebra):
            raise ValueError("--via-reduction needs the structured algebra family")
        report = (h1_via_reduction if args.degree == 1 else h2_via_reduction)(alg)
    else:
        coeffs = (CoefficientModule.trivial() if args.coeffs == "trivial"
                  else CoefficientModule.adjoint(alg))
        report = betti(alg, coeffs, args.degree, method=args.method)
    doc = {"command": "cohomology"}
    doc.update(report.as_dict())
    _emit(doc, args.out)
    _note(f"H^{args.degree}({alg.name}, {args.coeffs}) = {report.betti}  [{report.method}]")
    return EXIT_OK


def cmd_extensions(args) -> int:
    from .extensions import ExtensionMatrix, classify

    b, bp, g, gp = (Fraction(x) for x in args.matrix)
    cls = classify(ExtensionMatrix(b, bp, g, gp))
    _emit({
        "command": "extensions-classify",
        "matrix": [str(b), str(bp), str(g), str(gp)],
        "case": cls.case,
        "zeta2": None if cls.zeta2 is None else float(cls.zeta2),
        "cos_sin": None if cls.cos_sin is None else [float(cls.cos_sin[0]), float(cls.cos_sin[1])],
        "rescale": cls.rescale,
        "jordan_type": cls.jordan_type,
        "note": cls.note,
    }, args.out)
    _note(f"case ({cls.case}): {cls.jordan_type}")
    return EXIT_OK


def cmd_grouplaw(args) -> int:
    from . import grouplaw as gl

    rng = np.random.default_rng(args.seed)
    worst_plain = worst_ext = 0.0
    for _ in range(args.count):
        g1, g2, g3 = (gl.random_element(rng) for _ in range(3))
        lhs = gl.compose(gl.compose(g1, g2), g3)
        rhs = gl.compose(g1, gl.compose(g2, g3))
        worst_plain = max(worst_plain, gl.element_distance(lhs, rhs))
        worst_plain = max(worst_plain, gl.element_distance(
            gl.compose(g1, gl.inverse(g1)), gl.identity()))
        es = [gl.ExtendedGroupElement(rng.normal(), gl.random_element(rng))
              for _ in range(3)]
        elhs = gl.compose_extended(gl.compose_extended(es[0], es[1]), es[2])
        erhs = gl.compose_extended(es[0], gl.compose_extended(es[1], es[2]))
        worst_ext = max(worst_ext, abs(elhs.k - erhs.k),
                        gl.element_distance(elhs.g, erhs.g))
    _emit({
        "command": "grouplaw-check",
        "seed": args.seed,
        "triples": args.count,
        "max_deviation": worst_plain,
        "max_deviation_extended": worst_ext,
        "tolerance": 1e-9,
        "pass": bool(worst_plain <= 1e-9 and worst_ext <= 1e-9),
    }, args.out)
    _note(f"associativity/inverse deviation {worst_plain:.2e} (extended {worst_ext:.2e})")
    return EXIT_OK if worst_plain <= 1e-9 and worst_ext <= 1e-9 else EXIT_MISMATCH


def cmd_spectrum(args) -> int:
    from .oscillator import FockBasis, RepParams, spectrum

    params = RepParams(m0=args.m0, alpha=args.alpha, ell=args.ell)
    basis = FockBasis(args.cutoff)
    rows = spectrum(params, basis)
    _emit({
        "command": "spectrum",
        "ell": args.ell,
        "cutoff": args.cutoff,
        "m0": args.m0,
        "alpha": args.alpha,
        "rows": [{"eigenvalue": v, "multiplicity": m} for v, m in rows],
    }, args.out)
    for v, m in rows[:8]:
        _note(f"  {v:12.6f}  x{m}")
    return EXIT_OK


def cmd_evolve(args) -> int:
    from .oscillator import FockBasis, RepParams, WaveFunction, evolve

    params = RepParams(m0=args.m0, alpha=args.alpha, ell=args.ell)
    basis = FockBasis(args.cutoff)
    coeffs = np.zeros(basis.dim, dtype=complex)
    try:
        with open(args.state) as fh:
            for line in fh:
                parts = line.split()
                if len(parts) != 3:
                    continue
                coeffs[int(parts[0])] = float(parts[1]) + 1j * float(parts[2])
    except OSError as err:
        _note(f"cannot read state file: {err}")
        return EXIT_IO
    psi = evolve(WaveFunction(coeffs, basis), args.tau, params, basis)
    lines = [f"{i} {float(v.real)!r} {float(v.imag)!r}" for i, v in enumerate(psi.coeffs)]
    out_path = args.out or (args.state + ".out")
    try:
        with open(out_path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as err:
        _note(f"cannot write state file: {err}")
        return EXIT_IO
    _note(f"evolved tau={args.tau}, norm {np.linalg.norm(psi.coeffs):.12f} -> {out_path}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    from . import labels as lb
    from .oscillator import RepParams, generator_oracle

    params = RepParams(m0=args.m0, alpha=args.alpha, lam=args.lam, s=args.s, j=args.j)
    labels = ([lb.T(m) for m in range(1, 5)] + [lb.Tp(m) for m in range(1, 5)]
              + [lb.C(m, n) for m in range(1, 5) for n in range(m, 5)]
              + [lb.A(i, m) for i in range(1, 4) for m in range(1, 5)]
              + [lb.Q(i, m) for i in range(1, 4) for m in range(1, 5)]
              + [lb.J(i, j) for i in range(1, 3) for j in range(i + 1, 4)]
              + [lb.L(m, n) for m in range(1, 4) for n in range(m + 1, 5)])
    rows = []
    for X in labels:
        rep = generator_oracle(X, params, seed=args.seed)
        rows.append(rep)
        mark = "" if rep["printed"] <= 1e-5 else "  suspected typo (rederived passes)" \
            if rep["rederived"] <= 1e-5 else "  FAIL"
        _note(f"  {rep['label']:>4}: printed {rep['printed']:.2e} "
              f"rederived {rep['rederived']:.2e}{mark}")
    _emit({"command": "oracle-generators", "seed": args.seed, "rows": rows}, args.out)
    bad = [r for r in rows if min(r["printed"], r["rederived"]) > 1e-5]
    return EXIT_OK if not bad else EXIT_MISMATCH


# -- verify-all -------------------------------------------------------------


def _claim(claim, claimed, computed, method, *, conditional=False, note="", command=""):
    if conditional:
        status = "conditional"
    else:
        status = "match" if claimed == computed else "mismatch"
    doc = {
        "claim": claim,
        "claimed": claimed,
        "computed": computed,
        "method": method,
        "status": status,
        "note": note,
    }
    if status == "mismatch":
        doc["command"] = command or f"newstein verify-all --only {claim}"
    return doc


def run_verification(only: str | None = None) -> list[dict]:
    from . import grouplaw as gl
    from . import labels as lb
    from .algebras import build_extended, build_newstein, build_newstein2
    from .cohomology import (CoefficientModule, betti, h1_via_reduction,
                             h2_via_reduction, reduction_data)
    from .extensions import ExtensionClass, canonical_matrices, classify
    from .oscillator import (FockBasis, RepParams, W_operator, WaveFunction, casimir_MA,
                             casimir_MN, evolve, free_mass_check,
                             gaussian_polynomial_test_functions, generator_oracle,
                             hamiltonian_K, internal_generator, iur_apply,
                             minus_laplacian, random_sample_points, spectrum,
                             z_squared_scaled)

    claims: list[dict] = []

    def wanted(name):
        return only is None or only == name

    G = build_newstein()

    if wanted("jacobi-newstein"):
        claims.append(_claim("jacobi-newstein", 0, len(G.jacobi_check()), "exact",
                             note="51-dim, all unordered basis triples"))

    if wanted("center-dim"):
        r = betti(G, CoefficientModule.adjoint(G), 0, method="exact")
        cen = G.centralizer([G.basis_element(l) for l in G.labels])
        ok = len(cen) == 1 and all(G.labels[k].kind == "C" for k in cen[0].coeffs)
        claims.append(_claim("center-dim", 1, r.betti if ok else -1, "exact",
                             note="generator proportional to the metric trace of C"))

    if wanted("h1-adjoint"):
        red = h1_via_reduction(G)
        direct = betti(G, CoefficientModule.adjoint(G), 1, method="modular",
                       check_dd=False)
        agree = red.betti == direct.betti
        claims.append(_claim(
            "h1-adjoint", 6, red.betti, "invariant-reduction-exact + modular-direct",
            note=("reduction and direct computation agree" if agree else
                  "reduction and direct computation DISAGREE")
            + "; the printed six-parameter family omits the two outer derivations "
              "mixing the translation blocks (T -> T' and T' -> T)",
            command="newstein cohomology --algebra newstein --coeffs adjoint "
                    "--degree 1 --method modular"))

    if wanted("h2-adjoint"):
        red = h2_via_reduction(G)
        direct = betti(G, CoefficientModule.adjoint(G), 2, method="exact",
                       check_dd=False)
        agree = "agree" if red.betti == direct.betti else "DISAGREE"
        claims.append(_claim(
            "h2-adjoint", 0, red.betti, "invariant-reduction-exact + direct-exact",
            note=f"invariant reduction and full-scale direct exact rank {agree}; "
                 "the two surviving classes deform [T, T'] into the C block "
                 "(both integrate to honest Lie algebras, so the algebra is not rigid)",
            command="newstein cohomology --algebra newstein --coeffs adjoint "
                    "--degree 2 --method exact"))

    if wanted("h2-trivial"):
        r = betti(G, CoefficientModule.trivial(), 2, method="exact")
        claims.append(_claim(
            "h2-trivial", 11, r.betti, "exact",
            note="computed class space is spanned by the t/t' pairing exponent",
            command="newstein cohomology --algebra newstein --coeffs trivial --degree 2"))

    if wanted("h2-trivial-planar"):
        G2 = build_newstein2()
        r = betti(G2, CoefficientModule.trivial(), 2, method="exact")
        claims.append(_claim(
            "h2-trivial-planar", 13, r.betti, "exact", conditional=True,
            note="conditional on the documented planar rotation action; computed "
                 "basis: t/t' pairing plus three epsilon pairings on (A,Q), (A,A), (Q,Q)"))

    if wanted("one-cochain-family"):
        data = reduction_data(G, 1)
        claims.append(_claim(
            "one-cochain-family", 6, len(data.cocycles), "invariant-reduction-exact",
            note="computed invariant cocycle space strictly contains the printed "
                 "six-parameter family; the two extras are the translation mixers"))

    if wanted("extension-classification"):
        reps = canonical_matrices()
        own = all(classify(m).case == c for c, m in reps.items() if c != 8)
        jacobi_ok = all(not build_extended(c).jacobi_check() for c in range(1, 10))
        claims.append(_claim(
            "extension-classification", True, bool(own and jacobi_ok), "exact",
            note="case (8) as printed classifies under case (4); see case8-printed"))

    if wanted("case8-printed"):
        ext = build_extended(ExtensionClass(8, cos_sin=(Fraction(3, 5), Fraction(4, 5))),
                             as_printed=True)
        bad = len(ext.jacobi_check())
        claims.append(_claim(
            "case8-printed", 0, bad, "exact", conditional=True,
            note="the displayed case (8) bracket list satisfies the Jacobi identity "
                 "only at cos phi = 1; with the trace rule for [K, C] every case "
                 "passes (that rule is the default constructor)"))

    if wanted("group-law"):
        rng = np.random.default_rng(2161)
        worst = 0.0
        for _ in range(1000):
            g1, g2, g3 = (gl.random_element(rng) for _ in range(3))
            worst = max(worst, gl.element_distance(
                gl.compose(gl.compose(g1, g2), g3), gl.compose(g1, gl.compose(g2, g3))))
            es = [gl.ExtendedGroupElement(rng.normal(), gl.random_element(rng))
                  for _ in range(3)]
            lhs = gl.compose_extended(gl.compose_extended(es[0], es[1]), es[2])
            rhs = gl.compose_extended(es[0], gl.compose_extended(es[1], es[2]))
            worst = max(worst, abs(lhs.k - rhs.k), gl.element_distance(lhs.g, rhs.g))
        pairs = [(lb.L(1, 2), lb.T(2)), (lb.A(1, 1), lb.Q(1, 2)), (lb.J(1, 2), lb.A(1, 3)),
                 (lb.L(1, 4), lb.L(2, 4)), (lb.T(1), lb.Tp(1))]
        sc_dev = 0.0
        for x, y in pairs:
            got = gl.commutator_coords(G, x, y)
            want = {G.labels[k]: float(c)
                    for k, c in G.bracket_basis(G.index[x], G.index[y]).items()}
            for key in set(got) | set(want):
                sc_dev = max(sc_dev, abs(got.get(key, 0.0) - want.get(key, 0.0)))
        ok = worst <= 1e-9 and sc_dev <= 1e-5
        claims.append(_claim("group-law", True, bool(ok), "seeded-numerical",
                             note=f"associativity {worst:.2e}, derivative {sc_dev:.2e}"))

    if wanted("mass-spectrum"):
        basis = FockBasis(12)
        rng = np.random.default_rng(21)
        ok = True
        for _ in range(5):
            p = RepParams(m0=float(rng.uniform(0.5, 3)), alpha=float(rng.uniform(0.3, 2)),
                          ell=float(rng.uniform(-4, 4)))
            for n, (val, mult) in enumerate(spectrum(p, basis)):
                if n > 10:
                    break
                ok &= abs(val - (n + 1.5 + p.ell / 2)) <= 1e-9
                ok &= mult == (n + 1) * (n + 2) // 2
        ground = spectrum(RepParams(ell=-3.0), basis)[0][0]
        ok &= abs(ground) <= 1e-12
        claims.append(_claim("mass-spectrum", True, bool(ok), "numerical",
                             note="n + 3/2 + ell/2 with multiplicity (n+1)(n+2)/2; "
                                  "zero-energy vacuum at ell = -3"))

    if wanted("operator-identities"):
        basis = FockBasis(12)
        p = RepParams(m0=1.2, alpha=0.9, ell=-1.0)
        xi = gl.shell_point([0.3, -0.2, 0.5], p.m0)
        idx = np.where(basis.interior)[0]
        MN = casimir_MN(p, xi, basis).matrix
        MA = casimir_MA(p, xi, basis).matrix
        H = hamiltonian_K(p, basis).matrix
        d1 = np.abs((MN - minus_laplacian(p, basis))[np.ix_(idx, idx)]).max()
        d2 = np.abs((MA - z_squared_scaled(p, basis))[np.ix_(idx, idx)]).max()
        B = (MN + MA) / (2 * p.alpha) + p.ell / 2 * np.eye(basis.dim)
        d3 = np.abs((B - H)[np.ix_(idx, idx)]).max()
        ok = max(d1, d2, d3) <= 1e-10
        claims.append(_claim("operator-identities", True, bool(ok), "numerical",
                             note=f"interior deviations {d1:.1e}, {d2:.1e}, {d3:.1e}"))

    if wanted("w-operator"):
        basis = FockBasis(12)
        p = RepParams()
        idx = np.where(basis.interior)[0]
        W = W_operator(2 * math.pi, p, basis).matrix
        d1 = np.abs((W + np.eye(basis.dim))[np.ix_(idx, idx)]).max()
        k = 0.37
        Wk = W_operator(k, p, basis).matrix
        xi = gl.shell_point([0.3, -0.2, 0.5], p.m0)
        A = internal_generator(lb.A(1, 1), xi, p, basis).matrix
        Q = internal_generator(lb.Q(1, 1), xi, p, basis).matrix
        d2 = np.abs((Wk @ A @ Wk.conj().T
                     - (math.cos(k) * A - math.sin(k) * Q))[np.ix_(idx, idx)]).max()
        ok = d1 <= 1e-9 and d2 <= 1e-8
        claims.append(_claim("w-operator", True, bool(ok), "numerical",
                             note=f"W(2pi)+1 {d1:.1e}; conjugation rotation {d2:.1e}"))

    if wanted("null-free-mass"):
        p = RepParams(m0=1.2, lam=0.8)
        rng = np.random.default_rng(6)
        worst, p4min, done = 0.0, float("inf"), 0
        while done < 100:
            v = rng.normal(0, 1, 3)
            if v[2] / np.linalg.norm(v) < -0.5:
                continue
            r = free_mass_check(gl.shell_point(rng.normal(0, 1.5, 3), p.m0),
                                gl.sphere_point(v, p.lam), p)
            worst = max(worst, abs(r["mass_squared"]))
            p4min = min(p4min, r["p4"])
            done += 1
        ok = worst <= 1e-10 * p.lam**2 and p4min > 0
        claims.append(_claim("null-free-mass", True, bool(ok), "numerical",
                             note=f"max |p.p| = {worst:.1e}, min p4 = {p4min:.3f}"))

    if wanted("master-oracle"):
        p = RepParams(m0=1.2, alpha=0.9, lam=0.8, ell=-1.0, s=0.5, j=0.0)
        rng = np.random.default_rng(99)
        pts = random_sample_points(rng, 20, p)
        fns = gaussian_polynomial_test_functions(rng, 2, dim=1)
        worst = 0.0
        for _ in range(10):
            g1, g2 = gl.random_element(rng, 0.4), gl.random_element(rng, 0.4)
            g12 = gl.compose(g1, g2)
            for fn in fns:
                lhs = iur_apply(g1, iur_apply(g2, fn.f, p), p)
                rhs = iur_apply(g12, fn.f, p)
                for pt in pts:
                    try:
                        a, b = lhs(pt.xi, pt.eta, pt.z), rhs(pt.xi, pt.eta, pt.z)
                    except gl.SectionSingularityError:
                        continue
                    worst = max(worst, float(np.abs(a - b).max() / max(1.0, np.abs(b).max())))
        claims.append(_claim("master-oracle", True, bool(worst <= 1e-7), "numerical",
                             note=f"homomorphism deviation {worst:.2e} over 10 pairs "
                                  f"x 20 points"))

    if wanted("l24-generator"):
        p = RepParams(m0=1.3, alpha=0.7, lam=1.1, s=0.5, j=0.0)
        rep = generator_oracle(lb.L(2, 4), p)
        claims.append(_claim(
            "l24-generator", 0.0, rep["printed"], "finite-difference", conditional=True,
            note="the displayed entry carries a duplicated xi^1 eta^2 term and a "
                 "garbled eta-coefficient; the rederived flow "
                 "[-x1 e2, x1 e1 + x3 e3, -e2 x3]/(x4 + m0) deviates by "
                 f"{rep['rederived']:.2e}"))

    if wanted("generator-oracle"):
        p = RepParams(m0=1.3, alpha=0.7, lam=1.1, s=0.5, j=0.0)
        labels = ([lb.T(1), lb.Tp(4), lb.C(1, 2), lb.C(4, 4), lb.A(1, 2), lb.Q(2, 3),
                   lb.J(1, 2), lb.J(1, 3), lb.L(1, 2), lb.L(2, 3), lb.L(1, 4), lb.L(3, 4)])
        worst = 0.0
        for X in labels:
            worst = max(worst, generator_oracle(X, p)["printed"])
        claims.append(_claim("generator-oracle", True, bool(worst <= 1e-5),
                             "finite-difference",
                             note=f"max deviation {worst:.2e} over the unflagged "
                                  f"generator sample"))

    if wanted("small-oracles"):
        from .algebras import heisenberg3, sl2

        h3, s2 = heisenberg3(), sl2()
        got = (betti(h3, CoefficientModule.trivial(), 1).betti,
               betti(h3, CoefficientModule.trivial(), 2).betti,
               betti(s2, CoefficientModule.adjoint(s2), 1).betti,
               betti(s2, CoefficientModule.adjoint(s2), 2).betti)
        claims.append(_claim("small-oracles", [2, 2, 0, 0], list(got), "exact",
                             note="reference Betti numbers on the 3-dim algebras"))

    if wanted("evolution"):
        basis = FockBasis(10)
        p = RepParams(ell=-1.0)
        rng = np.random.default_rng(4)
        psi = WaveFunction(rng.normal(size=basis.dim)
                           + 1j * rng.normal(size=basis.dim), basis).normalized()
        H = hamiltonian_K(p, basis).matrix
        e0 = (psi.coeffs.conj() @ H @ psi.coeffs).real
        ok = True
        for tau in (0.5, 3.0, 10.0):
            out = evolve(psi, tau, p, basis)
            ok &= abs(out.norm() - 1.0) <= 1e-10
            ok &= abs((out.coeffs.conj() @ H @ out.coeffs).real - e0) <= 1e-10
        claims.append(_claim("evolution", True, bool(ok), "numerical",
                             note="unitarity and energy conservation over tau in [0, 10]"))

    return claims


def cmd_verify_all(args) -> int:
    claims = run_verification(args.only)
    doc = {"command": "verify-all", "claims": claims}
    mismatches = [c for c in claims if c["status"] == "mismatch"]
    doc["summary"] = {
        "total": len(claims),
        "match": sum(1 for c in claims if c["status"] == "match"),
        "mismatch": len(mismatches),
        "conditional": sum(1 for c in claims if c["status"] == "conditional"),
    }
    _emit(doc, args.out)
    for c in claims:
        _note(f"  [{c['status']:>11}] {c['claim']}: claimed {c['claimed']!r}, "
              f"computed {c['computed']!r}")
    return EXIT_OK if not mismatches else EXIT_MISMATCH


# -- parser -----------------------------------------------------------------


_SUBPARSERS: dict[str, argparse.ArgumentParser] = {}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newstein",
        description="Workbench for the New-Stein algebra, group, and representation.",
    )
    parser.add_argument("--config", help="JSON file with default option values")
    subparsers = parser.add_subparsers(dest="command", required=True)

    class _Registry:
        def add_parser(self, name, **kw):
            p = subparsers.add_parser(name, **kw)
            _SUBPARSERS[name] = p
            return p

    sub = _Registry()

    p = sub.add_parser("jacobi", help="verify the Jacobi identity exactly")
    p.add_argument("--algebra", default="newstein")
    p.add_argument("--out")
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("cohomology", help="Betti numbers by exact or modular rank")
    p.add_argument("--algebra", default="newstein")
    p.add_argument("--coeffs", choices=["trivial", "adjoint"], default="trivial")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--method", choices=["exact", "modular"], default="exact")
    p.add_argument("--via-reduction", action="store_true",
                   help="use the invariant ideal-complex reduction (adjoint, degree 1 or 2)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("extensions", help="classify a 2x2 extension matrix")
    p.add_argument("action", choices=["classify"])
    p.add_argument("--matrix", nargs=4, required=True,
                   metavar=("BETA", "BETAP", "GAMMA", "GAMMAP"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_extensions)

    p = sub.add_parser("grouplaw", help="seeded associativity and inverse check")
    p.add_argument("action", choices=["check"])
    p.add_argument("--seed", type=int, default=2161)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_grouplaw)

    p = sub.add_parser("spectrum", help="mass spectrum rows of the evolution generator")
    p.add_argument("--ell", type=float, required=True)
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--m0", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("evolve", help="historical-time evolution of a state file")
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--state", required=True, help="plain text: index re im")
    p.add_argument("--cutoff", type=int, default=12)
    p.add_argument("--ell", type=float, default=0.0)
    p.add_argument("--m0", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("oracle", help="generator discrepancy table")
    p.add_argument("action", choices=["generators"])
    p.add_argument("--seed", type=int, default=5)
    p.add_argument("--m0", type=float, default=1.3)
    p.add_argument("--alpha", type=float, default=0.7)
    p.add_argument("--lam", type=float, default=1.1)
    p.add_argument("--s", type=float, default=0.5)
    p.add_argument("--j", type=float, default=0.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify-all", help="claim-by-claim verification report")
    p.add_argument("--only", help="run a single named claim")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        # config supplies defaults; explicit flags win on the re-parse
        try:
            defaults = json.loads(open(args.config).read())
        except OSError as err:
            _note(f"cannot read config: {err}")
            return EXIT_IO
        subparser = _SUBPARSERS.get(args.command)
        if subparser is not None:
            subparser.set_defaults(**defaults)
            args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KeyError as err:
        _note(f"unknown algebra selector: {err}")
        return EXIT_UNKNOWN_ALGEBRA
    except (ValueError, ArithmeticError) as err:
        _note(f"invalid parameters: {err}")
        return EXIT_BAD_PARAMS
    except OSError as err:
        _note(f"I/O failure: {err}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
