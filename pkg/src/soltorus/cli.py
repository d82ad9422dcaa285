"""Command line driver: runs verification pipelines from a JSON config and writes JSON reports."""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone

from . import __version__
from .algebras import (
    DerivationAlgebra,
    GapVirasoro,
    GlDGamma,
    GlN,
    L_plus_ideal_check,
    SolenoidalAlgebra,
    check_gamma_grading,
    check_ideal_gR_prime,
    check_wmu_iso,
    lattice_str,
    matrix_bracket_check,
    quotient_iso_check,
    verify_lie_axioms,
)
from .config import ConfigError, load
from .correspondence import (
    analyze_rep,
    compare_actions,
    compare_reps,
    constant_term_check,
    extract_D_operators,
    fit_polynomials,
    module_from_rep,
    rep_from_family,
    verify_P_brackets,
)
from .cover import build_cover, cuspidality_probe
from .scalars import format_scalar, parse_scalar
from .tensor_modules import (
    GradedGlnModule,
    TensorFieldModule,
    VirpModule,
    reducibility_criterion,
    make_F,
    param_scalar,
    param_vector,
    reachability_irreducible,
    validate_F,
    verify_module_axioms,
)
from .torus import PresentationError, TorusPresentation

EXIT_OK, EXIT_VIOLATION, EXIT_INCONCLUSIVE, EXIT_CONFIG = 0, 1, 2, 3

COUNTED_KEYS = ("violations", "mismatches", "shape_errors")


# -- building objects from a config ------------------------------------------------


def presentation_from(cfg) -> TorusPresentation:
    p = cfg["presentation"]
    try:
        return TorusPresentation(p["d"], p["z"], tuple(p["orders"]))
    except PresentationError as exc:
        raise ConfigError("/presentation/orders", str(exc)) from exc


def _lattice_key(text: str) -> tuple:
    return tuple(int(x) for x in text.strip("()[] ").split(",") if x.strip())


def W_from(P: TorusPresentation, w_cfg: dict) -> GradedGlnModule:
    kind = w_cfg["type"]
    if kind == "regular":
        return GradedGlnModule.regular(P)
    if kind == "trivial":
        return GradedGlnModule.trivial(P, w_cfg.get("degree"))
    if "degrees" not in w_cfg or "actions" not in w_cfg:
        raise ConfigError("/module/W", "custom W needs 'degrees' and 'actions'")
    actions = {}
    for key, rows in w_cfg["actions"].items():
        try:
            actions[_lattice_key(key)] = [[parse_scalar(str(x)) for x in row] for row in rows]
        except ValueError as exc:
            raise ConfigError(f"/module/W/actions/{key}", str(exc)) from exc
    return GradedGlnModule(P, w_cfg["degrees"], actions)


def module_from(cfg, P=None) -> tuple:
    P = P or presentation_from(cfg)
    m = cfg["module"]
    try:
        alpha = param_vector(m["alpha"], "a", P.d)
        beta = param_scalar(m["beta"], "b")
    except ValueError as exc:
        raise ConfigError("/module", str(exc)) from exc
    W = W_from(P, m["W"])
    try:
        M = TensorFieldModule(P, alpha, beta, W)
    except ValueError as exc:
        raise ConfigError("/module/W", str(exc)) from exc
    return M, alpha, beta, W


# -- suites ---------------------------------------------------------------------------


def suite_algebra(cfg) -> dict:
    P = presentation_from(cfg)
    a = cfg["algebra"]
    sm = cfg["sampling"]
    kw = {"sample_count": sm["sample_count"], "seed": cfg["seed"], "threshold": sm["threshold"]}
    out = {}
    g = SolenoidalAlgebra(P)
    out["g"] = verify_lie_axioms(g, g.window(a["B"]), window={"B": a["B"]}, **kw)
    for p in a["vir_p"]:
        v = GapVirasoro(p)
        out[f"Vir_{p}"] = verify_lie_axioms(v, v.window(a["vir_window"]), window={"index_bound": a["vir_window"]}, **kw)
    L = DerivationAlgebra(P, a["D_max"])
    out["L"] = verify_lie_axioms(L, L.window(), window={"D_max": a["D_max"]}, **kw)
    gln = GlN(P)
    out["gl_N"] = verify_lie_axioms(gln, gln.window(), **kw)
    out["gl_N_matrices"] = matrix_bracket_check(gln, gln.window())
    gld = GlDGamma(P.d)
    out["gl_d_gamma"] = verify_lie_axioms(gld, gld.window(), **kw)
    out["gl_d_gamma_matrices"] = matrix_bracket_check(gld, gld.window())
    out["wmu_iso"] = check_wmu_iso(P, a["B"])
    out["gR_prime_ideal"] = check_ideal_gR_prime(P, a["B"])
    out["L_plus_ideal"] = L_plus_ideal_check(P, a["D_max"])
    out["quotient_iso"] = quotient_iso_check(P)
    out["gamma_grading"] = check_gamma_grading(L)
    failed = []
    if not out["L_plus_ideal"]["commutator_claim_holds"]:
        failed.append("L_plus_ideal.commutator_claim_holds")
    if not out["quotient_iso"]["gl_d_gamma_solvable"]:
        failed.append("quotient_iso.gl_d_gamma_solvable")
    out["failed_checks"] = failed
    return out


def suite_module(cfg) -> dict:
    M, alpha, beta, W = module_from(cfg)
    out = {"W": W.validate(), "tensor_module": verify_module_axioms(M, cfg["module"]["B"])}
    failed = [] if out["W"]["valid"] else ["W.valid"]
    if "virp" in cfg:
        v = cfg["virp"]
        F = make_F(v["p"], [[parse_scalar(str(x)) for x in row] for row in v["F"]])
        diag = validate_F(F)
        out["F"] = diag
        if diag["valid"]:
            VM = VirpModule(param_scalar(v.get("a", "sym"), "a"), param_scalar(v.get("b", "sym"), "b"), F)
            out["virp_module"] = verify_module_axioms(VM, v.get("B", 3))
        else:
            failed.append("F.valid")
    out["failed_checks"] = failed
    return out


def suite_irreducible(cfg) -> dict:
    M, alpha, beta, W = module_from(cfg)
    m = cfg["module"]
    verdict = reachability_irreducible(M, m["B"], m["margin"])
    degree = W.degrees[0] if W.dim == 1 else None
    reducible = reducibility_criterion(alpha, beta, W.dim, M.P, degree)
    out = {"reachability": verdict, "criterion_reducible": reducible}
    failed, inconclusive = [], 0
    if verdict["verdict"] == "inconclusive":
        inconclusive = 1
    else:
        agrees = (verdict["verdict"] == "reducible") == reducible
        out["agrees_with_criterion"] = agrees
        if not agrees:
            failed.append("agrees_with_criterion")
        if verdict["verdict"] == "reducible" and verdict["witness_invariant"]["violations"]:
            failed.append("witness_invariant")
    expect = m.get("expect_verdict")
    if expect is not None and verdict["verdict"] != "inconclusive" and verdict["verdict"] != expect:
        failed.append("expect_verdict")
    out["failed_checks"] = failed
    out["inconclusive"] = inconclusive
    return out


def suite_correspond(cfg) -> dict:
    M, alpha, beta, W = module_from(cfg)
    c = cfg["correspond"]
    samples = extract_D_operators(M, c["B"])
    fam = fit_polynomials(samples, c["D_cap"])
    rep = rep_from_family(fam)
    M2 = module_from_rep(rep, alpha)
    back = rep_from_family(fit_polynomials(extract_D_operators(M2, c["B"]), c["D_cap"]))
    analysis = analyze_rep(rep)
    out = {
        "fit": {"degree": fam.degree, "per_family": fam.info},
        "P_brackets": verify_P_brackets(fam),
        "constant_term": constant_term_check(fam, alpha),
        "representation": rep.check(),
        "round_trip_module": compare_actions(M, M2, c["B"]),
        "round_trip_rep": compare_reps(rep, back),
        "analysis": analysis,
        "representation_data": rep.to_json(),
    }
    failed = []
    if analysis["classification"] != "not irreducible" and analysis.get("beta") != format_scalar(beta):
        failed.append("analysis.beta")
    out["failed_checks"] = failed
    return out


def suite_cover(cfg) -> dict:
    M, alpha, beta, W = module_from(cfg)
    c = cfg["cover"]
    if M.P.z == 0:
        return {"probe": cuspidality_probe(M, c["sizes"], c["margin"]), "failed_checks": []}
    covers, sizes, failed = {}, {}, []
    for b in c["sizes"]:
        cw = build_cover(M, b, c["margin"])
        covers[b] = cw
        rep = cw.report()
        if b in c["check_sizes"]:
            rep["homomorphism_residual"] = cw.homomorphism_residual()
            rep["J_invariance"] = cw.J_invariance()
            rep["centre_compatibility"] = cw.z_compatibility()
        sizes[str(b)] = rep
        if not rep["J_in_ker_pi"]:
            failed.append(f"{b}.J_in_ker_pi")
        if not rep["pi_surjective_inner"]:
            failed.append(f"{b}.pi_surjective_inner")
    probe = cuspidality_probe(M, c["sizes"], c["margin"], covers)
    if not probe["bounded"]:
        failed.append("probe.bounded")
    return {"sizes": sizes, "probe": probe, "failed_checks": failed}


SUITES = {
    "algebra": suite_algebra,
    "module": suite_module,
    "irreducible": suite_irreducible,
    "correspond": suite_correspond,
    "cover": suite_cover,
}

COMMANDS = {
    "verify-algebra": ["algebra"],
    "build-module": ["module"],
    "check-irreducible": ["irreducible"],
    "correspond": ["correspond"],
    "cover": ["cover"],
}


def count_violations(node) -> int:
    if isinstance(node, dict):
        total = 0
        for k, v in node.items():
            if k in COUNTED_KEYS and isinstance(v, list):
                total += len(v)
            elif k == "failed_checks" and isinstance(v, list):
                total += len(v)
            else:
                total += count_violations(v)
        return total
    if isinstance(node, list):
        return sum(count_violations(x) for x in node)
    return 0


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def run(command: str, cfg: dict, suites: list | None = None) -> dict:
    names = COMMANDS.get(command) or suites or cfg["suites"]
    results, durations, summary = {}, {}, {}
    started = _now()
    for name in names:
        t0 = time.perf_counter()
        res = SUITES[name](cfg)
        durations[name] = round(time.perf_counter() - t0, 3)
        results[name] = res
        summary[name] = {"violations": count_violations(res), "inconclusive": res.get("inconclusive", 0)}
    violations = sum(s["violations"] for s in summary.values())
    inconclusive = sum(s["inconclusive"] for s in summary.values())
    code = EXIT_VIOLATION if violations else EXIT_INCONCLUSIVE if inconclusive else EXIT_OK
    return {
        "tool": {"name": "soltorus", "version": __version__},
        "command": command,
        "config": cfg,
        "seed": cfg["seed"],
        "results": results,
        "summary": {"suites": summary, "violations": violations, "inconclusive": inconclusive, "exit_code": code},
        "timestamps": {"started": started, "finished": _now(), "durations_s": durations},
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def human_summary(report: dict) -> str:
    lines = [f"soltorus {report['tool']['version']} {report['command']}"]
    for name, s in report["summary"]["suites"].items():
        status = "ok" if not s["violations"] and not s["inconclusive"] else "FAIL" if s["violations"] else "INCONCLUSIVE"
        secs = report["timestamps"]["durations_s"].get(name, 0)
        lines.append(f"  {name:<12} {status:<13} violations={s['violations']} inconclusive={s['inconclusive']} ({secs:.1f}s)")
    irr = report["results"].get("irreducible")
    if irr:
        lines.append(f"  verdict: {irr['reachability']['verdict']} (criterion says reducible={irr['criterion_reducible']})")
    ana = report["results"].get("correspond", {}).get("analysis")
    if ana:
        lines.append(f"  classification: {ana['classification']}")
    lines.append(f"exit code {report['summary']['exit_code']}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="soltorus", description="Exact checks for solenoidal Lie algebras on quantum tori.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in list(COMMANDS) + ["suite"]:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config (default: built-in k=2 config)")
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--seed", type=int, help="override the seed for sampled checks")
        p.add_argument("--suite", help="comma separated suites for 'suite': " + ",".join(SUITES))
        p.add_argument("--json-only", action="store_true", help="print the JSON report instead of the summary")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load(args.config)
        if args.seed is not None:
            cfg["seed"] = args.seed
        suites = None
        if args.suite:
            suites = [s.strip() for s in args.suite.split(",") if s.strip()]
            unknown = [s for s in suites if s not in SUITES]
            if unknown:
                raise ConfigError("--suite", f"unknown suite(s): {', '.join(unknown)}")
        presentation_from(cfg)
        report = run(args.command, cfg, suites)
    except ConfigError as exc:
        print(f"config error at {exc.pointer}: {exc.message}", file=sys.stderr)
        return EXIT_CONFIG
    text = dumps(report)
    out = args.out or cfg.get("output")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text if args.json_only else human_summary(report))
    return report["summary"]["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
