"""Command-line front end.

Every subcommand prints a short human summary and, with ``--out``, writes a
JSON report echoing its inputs.  Exit codes: 0 success, 1 error, 2 when
``--require-contraction`` is given and no contraction exists.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone


from . import __version__, linalg
from .algebra import JACOBI, KNOWN_AXIOMS, check_axioms, satisfies
from .engine import (
    ContractionReport,
    classify_and_contract,
    family_contract,
    gilmore_check,
    is_homomorphism,
    levy_nahas_contract,
)
from .errors import SaletanError
from .hierarchy import hierarchy, hierarchy_laws_check, subideal_check
from .io import algebra_to_json, matrix_to_json, resolve_algebra, resolve_tensor, save_json, tensor_to_json
from .nary import coproduct_contract, nary_contract
from .oracle import LimitProbeConfig, default_lambdas, limit_probe
from .polynomial import (
    contractible,
    fa_contract,
    fa_delta,
    fa_delta_closed,
    fa_torsion,
    fa_torsion_closed,
    parse_poly,
)
from .riesz import riesz_decompose

EXIT_OK, EXIT_ERROR, EXIT_NOT_CONTRACTIBLE = 0, 1, 2


class Outcome:
    """What a command produced: summary lines, JSON payload and contractibility."""

    def __init__(self, lines, result, contractible=True):
        self.lines = lines
        self.result = result
        self.contractible = contractible


def _vec(v) -> list[str]:
    return [linalg.render_rational(x) for x in v]


def _brackets(t, labels=None) -> list[str]:
    """Human-readable nonzero products on basis tuples."""
    name = (lambda i: labels[i]) if labels else (lambda i: f"e{i}")
    by_input = {}
    for idx, value in t.nonzero():
        key, out = (idx[:-1], idx[-1]) if t.kind == "product" else (idx[:1], idx[1:])
        by_input.setdefault(key, []).append((out, value))
    lines = []
    for key, outs in by_input.items():
        terms = []
        for out, value in outs:
            basis = name(out) if isinstance(out, int) else "(x)".join(name(o) for o in out)
            coeff = "" if value == 1 else "-" if value == -1 else f"{value}*"
            terms.append(coeff + basis)
        args = ", ".join(name(i) for i in key)
        lhs = f"[{args}]" if t.kind == "product" else f"D({args})"
        lines.append(f"  {lhs} = " + " + ".join(terms).replace("+ -", "- "))
    return lines or ["  (zero)"]


def _report_json(report: ContractionReport) -> dict:
    out = {
        "classification": report.classification.value,
        "witness": list(report.witness) if report.witness else None,
        "delta": tensor_to_json(report.delta),
        "torsion": tensor_to_json(report.torsion),
        "tau": tensor_to_json(report.tau) if report.tau is not None else None,
        "contracted": tensor_to_json(report.contracted) if report.contracted is not None else None,
    }
    if report.reduction:
        out["reduction"] = report.reduction
        out["base_product"] = tensor_to_json(report.base_product)
    return out


def _contraction_lines(report: ContractionReport, labels) -> list[str]:
    lines = [f"classification: {report.classification.value}"]
    if report.witness is not None:
        lines.append(f"witness: {tuple(report.witness)}")
    if report.contracted is not None:
        lines.append("contracted product:")
        lines += _brackets(report.contracted, labels)
    return lines


# -- commands -------------------------------------------------------------------


def cmd_decompose(args) -> Outcome:
    n = resolve_tensor(args.tensor)
    rz = riesz_decompose(n)
    lines = [f"dim E1 = {rz.e1.dim}", f"dim E2 = {rz.e2.dim}", f"q = {rz.q}"]
    lines += [f"E1 basis: {[_vec(v) for v in rz.e1.basis]}", f"E2 basis: {[_vec(v) for v in rz.e2.basis]}"]
    result = {
        "dim_e1": rz.e1.dim,
        "dim_e2": rz.e2.dim,
        "q": rz.q,
        "e1_basis": [_vec(v) for v in rz.e1.basis],
        "e2_basis": [_vec(v) for v in rz.e2.basis],
        "proj1": matrix_to_json(rz.proj1)["matrix"],
        "proj2": matrix_to_json(rz.proj2)["matrix"],
    }
    return Outcome(lines, result)


def cmd_check(args) -> Outcome:
    alg, n = resolve_algebra(args.algebra), resolve_tensor(args.tensor)
    report = classify_and_contract(alg.tensor, n)
    lines = [f"classification: {report.classification.value}"]
    if report.witness is not None:
        lines.append(f"witness: {tuple(report.witness)}")
    result = {"classification": report.classification.value,
              "witness": list(report.witness) if report.witness else None}
    return Outcome(lines, result, report.contractible)


def cmd_contract(args) -> Outcome:
    alg, n = resolve_algebra(args.algebra), resolve_tensor(args.tensor)
    report = classify_and_contract(alg.tensor, n)
    lines = _contraction_lines(report, alg.labels)
    result = _report_json(report)
    if report.contractible:
        hom = is_homomorphism(n, report.contracted, alg.tensor)
        axioms = sorted(alg.axioms)
        preserved = satisfies(report.contracted, axioms) if axioms else True
        result["homomorphism"] = hom
        result["axioms_preserved"] = preserved
        lines.append(f"N is a homomorphism: {hom}; axioms {axioms} preserved: {preserved}")
    return Outcome(lines, result, report.contractible)


def cmd_hierarchy(args) -> Outcome:
    alg, n = resolve_algebra(args.algebra), resolve_tensor(args.tensor)
    kmax = args.kmax if args.kmax is not None else alg.dim
    levels = hierarchy(alg.tensor, n, kmax)
    lines, result = [], {"levels": [tensor_to_json(t) for t in levels]}
    for k, t in enumerate(levels):
        lines.append(f"D_N^{k}:")
        lines += _brackets(t, alg.labels)
    checks = {}
    if args.laws:
        bound = max(1, kmax // 2)
        checks["laws"] = hierarchy_laws_check(alg.tensor, n, bound, bound).results
    if args.subideals:
        checks["subideals"] = subideal_check(alg.tensor, n, kmax, kmax).results
    for group, res in checks.items():
        lines += [f"{group}: {'PASS' if ok else 'FAIL'} {name}" for name, ok in res.items()]
    if checks:
        result["checks"] = checks
    return Outcome(lines, result)


def _scale_function(text):
    if text is None:
        return None
    poly = parse_poly(text.replace("x", "p").replace("lambda", "p"))
    if poly(0) != 1:
        raise SaletanError(f"scale function must satisfy f(0) = 1, got f(0) = {poly(0)}")
    return lambda lam: float(poly(lam))


def cmd_limit_probe(args) -> Outcome:
    alg, n = resolve_algebra(args.algebra), resolve_tensor(args.tensor)
    lambdas = tuple(float(x) for x in args.lambdas.split(",")) if args.lambdas else default_lambdas()
    cfg = LimitProbeConfig(lambdas=lambdas, f_scale=_scale_function(args.scale_f), p=args.p)
    if args.p >= 1:
        expected, target = levy_nahas_contract(alg.tensor, n, args.p), "levy-nahas bracket"
    else:
        report = classify_and_contract(alg.tensor, n)
        if report.contractible:
            expected, target = report.contracted, "exact contraction"
        else:
            expected, target = report.delta, "derived product (no contraction exists)"
    probe = limit_probe(alg.tensor, n, cfg, expected)
    lines = [f"target: {target}"]
    lines += [f"lambda={lam:.0e}  error={err:.3e}" + ("" if used else "  (dropped: ill-conditioned)")
              for lam, err, used in zip(probe.lambdas, probe.errors, probe.used)]
    order = "exact" if probe.exact else (f"{probe.order:.4f}" if probe.order is not None else "n/a")
    lines.append(f"convergence order: {order}; converged: {probe.converged}; diverging: {probe.diverging}")
    result = {"target": target, "expected": tensor_to_json(expected), "probe": probe.as_dict()}
    return Outcome(lines, result, probe.converged)


def cmd_levy_nahas(args) -> Outcome:
    alg, n = resolve_algebra(args.algebra), resolve_tensor(args.tensor)
    bracket = levy_nahas_contract(alg.tensor, n, args.p)
    result = {"p": args.p, "bracket": tensor_to_json(bracket)}
    lines = [f"Levy-Nahas bracket (p={args.p}):"] + _brackets(bracket, alg.labels)
    if JACOBI in alg.axioms:
        ok = satisfies(bracket, sorted(alg.axioms))
        result["axioms_preserved"] = ok
        lines.append(f"axioms preserved: {ok}")
    return Outcome(lines, result)


def cmd_gilmore(args) -> Outcome:
    alg, n = resolve_algebra(args.algebra), resolve_tensor(args.tensor)
    rep = gilmore_check(alg.tensor, n, args.pmax, args.smax)
    result = {"holds": rep.holds, "torsion_e2_zero": rep.torsion2_zero, "agree": rep.agree,
              "failure": list(rep.failure) if rep.failure else None}
    lines = [f"Gilmore identity holds for p<={args.pmax}, s<={args.smax}: {rep.holds}",
             f"E2 part of the torsion vanishes: {rep.torsion2_zero}",
             f"verdicts agree: {rep.agree}"]
    if rep.failure:
        lines.append("first failure (p, s, i, j): " + str(rep.failure))
    return Outcome(lines, result, rep.holds)


def cmd_family(args) -> Outcome:
    alg, n, a = resolve_algebra(args.algebra), resolve_tensor(args.tensor), resolve_tensor(args.a)
    report = family_contract(alg.tensor, a, n)
    lines = [f"reduction: {report.reduction}"] + _contraction_lines(report, alg.labels)
    return Outcome(lines, _report_json(report), report.contractible)


def cmd_nary(args) -> Outcome:
    alg, n = resolve_algebra(args.algebra), resolve_tensor(args.tensor)
    report = nary_contract(alg.tensor, n)
    result = _report_json(report)
    if report.contractible:
        result["homomorphism"] = is_homomorphism(n, report.contracted, alg.tensor)
    return Outcome(_contraction_lines(report, alg.labels), result, report.contractible)


def cmd_coproduct(args) -> Outcome:
    alg, n = resolve_algebra(args.algebra), resolve_tensor(args.tensor)
    report = coproduct_contract(alg.tensor, n)
    result = _report_json(report)
    if report.contractible:
        result["homomorphism"] = is_homomorphism(n, report.contracted, alg.tensor)
    return Outcome(_contraction_lines(report, alg.labels), result, report.contractible)


def cmd_function_example(args) -> Outcome:
    phi, f, g = parse_poly(args.phi), parse_poly(args.f), parse_poly(args.g)
    delta, torsion = fa_delta(f, g, phi), fa_torsion(f, g, phi)
    ok = contractible(phi)
    result = {
        "phi": str(phi), "f": str(f), "g": str(g),
        "delta": str(delta), "torsion": str(torsion),
        "delta_matches_closed_form": delta == fa_delta_closed(f, g, phi),
        "torsion_matches_closed_form": torsion == fa_torsion_closed(f, g, phi),
        "contractible": ok,
        "contracted": str(fa_contract(f, g, phi)) if ok else None,
    }
    lines = [f"delta = {delta}", f"torsion = {torsion}"]
    if ok:
        lines.append(f"contracted = {result['contracted']}")
    else:
        lines.append(f"not contractible: {phi} does not divide {phi.derivative() * phi.derivative()}")
    return Outcome(lines, result, ok)


def cmd_axioms(args) -> Outcome:
    alg = resolve_algebra(args.algebra)
    report = check_axioms(alg.tensor, KNOWN_AXIOMS)
    lines = [f"{name}: " + ("pass" if w is None else f"fails at {w}") + (" (declared)" if name in alg.axioms else "")
             for name, w in report.items()]
    result = {"declared": sorted(alg.axioms),
              "checks": {name: (list(w) if w else None) for name, w in report.items()}}
    return Outcome(lines, result)


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="saletan", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, algebra=True, tensor=True):
        p = sub.add_parser(name, help=help_text)
        if algebra:
            p.add_argument("--algebra", required=True, help="algebra JSON file or builtin name")
        if tensor:
            p.add_argument("--tensor", required=True, help="tensor map JSON file or bundled name")
        p.add_argument("--out", help="write the full JSON report here")
        p.add_argument("--require-contraction", action="store_true",
                       help="exit with status 2 when no contraction exists")
        p.set_defaults(func=func)
        return p

    add("decompose", cmd_decompose, "Riesz decomposition of a tensor map", algebra=False)
    add("check", cmd_check, "classify a tensor map (Nijenhuis / Saletan / NotContractible)")
    add("contract", cmd_contract, "full contraction report")
    p = add("hierarchy", cmd_hierarchy, "contraction hierarchy D_{N^k}")
    p.add_argument("--kmax", type=int)
    p.add_argument("--laws", action="store_true")
    p.add_argument("--subideals", action="store_true")
    p = add("limit-probe", cmd_limit_probe, "floating-point limit oracle")
    p.add_argument("--lambdas", help="comma-separated decreasing probe values")
    p.add_argument("--scale-f", help="polynomial f(x) with f(0) = 1 for the family lam I + f(lam) N")
    p.add_argument("--p", type=int, default=0, help="singular order of the family lam^p (N + lam I)")
    p = add("levy-nahas", cmd_levy_nahas, "singular contraction along lam^p (N + lam I)")
    p.add_argument("--p", type=int, default=1)
    p = add("gilmore", cmd_gilmore, "Gilmore identities vs the E2 torsion")
    p.add_argument("--pmax", type=int, default=4)
    p.add_argument("--smax", type=int, default=4)
    p = add("family", cmd_family, "contract along lam A + N")
    p.add_argument("--a", required=True, help="tensor map A")
    add("nary-contract", cmd_nary, "contract an n-ary product")
    add("coproduct-contract", cmd_coproduct, "contract an n-ary coproduct")
    p = add("function-example", cmd_function_example, "polynomial algebra f*g = f'g' with N = phi", False, False)
    p.add_argument("--phi", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    add("axioms", cmd_axioms, "check all known axioms on an algebra", tensor=False)
    return parser


def _echo_inputs(args) -> dict:
    inputs = {"command": args.command, "options": {}}
    for key, value in sorted(vars(args).items()):
        if key in ("func", "command", "out"):
            continue
        if key == "algebra":
            inputs["algebra"] = algebra_to_json(resolve_algebra(value))
        elif key in ("tensor", "a"):
            inputs[key] = matrix_to_json(resolve_tensor(value))
        else:
            inputs["options"][key] = value
    return inputs


def run(argv=None) -> tuple[dict | None, int]:
    """Parse and execute one command; returns (report, exit code)."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors must not look like "not contractible"
        return None, EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        outcome = args.func(args)
        report = {
            "tool": {"name": "saletan", "version": __version__},
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "inputs": _echo_inputs(args),
            "result": outcome.result,
        }
    except (SaletanError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return None, EXIT_ERROR
    print("\n".join(outcome.lines))
    if args.out:
        save_json(report, args.out)
    if args.require_contraction and not outcome.contractible:
        return report, EXIT_NOT_CONTRACTIBLE
    return report, EXIT_OK


def main(argv=None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
