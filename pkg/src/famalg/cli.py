"""Command-line front end: family checks, builds, verifications, reports.

Families come from a JSON file or the named constructors green:l, kk:n,
random:n,m,(k1,...,km),seed. Reports are printed as plain-text summaries;
--out writes the full JSON (sorted keys, so identical runs are
byte-identical). Exit codes: 0 all assertions passed, 1 an assertion or
cutoff failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import curve as curve_mod
from . import dcat as dcat_mod
from . import homology as homology_mod
from . import quiverpath
from . import ralgebra
from . import twist as twist_mod
from .family import (
    Family,
    check_G,
    family_from_json,
    family_to_dict,
    green_family,
    kk_family,
    random_family,
)


class InputError(Exception):
    pass


def parse_int_list(text: str) -> list:
    text = text.strip().strip("()")
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def parse_family(spec: str, seed_offset: int = 0) -> Family:
    try:
        if spec.startswith("green:"):
            return green_family(int(spec.split(":", 1)[1]))
        if spec.startswith("kk:"):
            return kk_family(int(spec.split(":", 1)[1]))
        if spec.startswith("random:"):
            body = spec.split(":", 1)[1]
            head, _, tail = body.partition("(")
            kseq_text, _, rest = tail.partition(")")
            parts = [p for p in head.strip(",").split(",") if p]
            if len(parts) != 2:
                raise InputError("random family needs n,m,(kseq),seed")
            n, m = int(parts[0]), int(parts[1])
            kseq = parse_int_list(kseq_text)
            seed_part = rest.strip(",")
            if not seed_part:
                raise InputError("random family needs a seed")
            seed = int(seed_part) + seed_offset
            return random_family(n, m, kseq, seed)
        path = Path(spec)
        if not path.exists():
            raise InputError(f"family file not found: {spec}")
        return family_from_json(path.read_text())
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def emit(report: dict, summary: str, out: str | None) -> None:
    print(summary)
    if out:
        Path(out).write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
        print(f"report written to {out}")


def cmd_check_family(args) -> int:
    f = parse_family(args.family)
    cert = check_G(f)
    report = {
        "family": family_to_dict(f),
        "kseq": list(f.kseq),
        "checked": [[i, j, d] for i, j, d in cert.checked],
        "holds": cert.holds,
    }
    verdict = "holds" if cert.holds else f"FAILS at pair {cert.first_failure}"
    emit(report, f"family n={f.n} m={f.m} kseq={list(f.kseq)}: transversality {verdict}", args.out)
    return 0 if cert.holds else 1


def cmd_build_algebra(args) -> int:
    f = parse_family(args.family)
    alg = ralgebra.build_R(f)
    if args.chi is not None:
        chi = parse_int_list(args.chi)
        alg = ralgebra.apply_grading(alg, chi)
    report = alg.to_dict()
    report["component_dims"] = [[u, list(p), d] for (u, p), d in sorted(alg.component_dims().items())]
    report["cartan"] = ralgebra.cartan_matrix(alg)
    lines = [
        f"algebra dim = {alg.dim} over family n={f.n} m={f.m}",
        f"cartan = {ralgebra.cartan_matrix(alg)}",
    ]
    if args.chi is not None:
        degrees = {}
        for z in alg.zdegrees():
            degrees[z] = degrees.get(z, 0) + 1
        lines.append(f"degree dims = {dict(sorted(degrees.items()))}")
    emit(report, "\n".join(lines), args.out)
    return 0


def cmd_verify_oracle(args) -> int:
    f = parse_family(args.family)
    rep = ralgebra.verify_against_oracle(f, cutoff=args.cutoff)
    report = {
        "dim_closed_form": rep.dim_closed,
        "dim_oracle": rep.dim_oracle,
        "bijective": rep.bijective,
        "multiplicative": rep.multiplicative,
        "first_failure": list(rep.first_failure) if rep.first_failure else None,
        "ok": rep.ok,
    }
    emit(report, f"closed form dim {rep.dim_closed}, oracle dim {rep.dim_oracle}: "
                 f"{'AGREE' if rep.ok else 'MISMATCH'}", args.out)
    return 0 if rep.ok else 1


def cmd_gldim(args) -> int:
    f = parse_family(args.family)
    alg = ralgebra.build_R(f)
    cutoff = args.cutoff if args.cutoff is not None else 2 * f.m + 2 * f.n + 4
    report_obj = homology_mod.resolution_report(alg, cutoff=cutoff)
    report = report_obj.to_dict()
    emit(report, f"gldim = {report_obj.gldim}, loewy = {report_obj.loewy}", args.out)
    return 0 if isinstance(report_obj.gldim, int) else 1


def cmd_factorize(args) -> int:
    f = parse_family(args.family)
    chi = parse_int_list(args.chi) if args.chi is not None else None
    cert = twist_mod.factorize_R(f, chi)
    report = cert.to_dict()
    emit(
        report,
        f"factorization in {len(cert.steps)} steps, terminal Kronecker with {f.n} arrows: "
        f"{report['smoothness']}",
        args.out,
    )
    return 0 if cert.ok else 1


def cmd_dcat_verify(args) -> int:
    f = parse_family(args.family)
    delta = parse_int_list(args.delta) if args.delta is not None else [0] * f.m
    d = dcat_mod.build_D(f, delta)
    exc = dcat_mod.exceptionality_suite(d)
    chi = parse_int_list(args.chi) if args.chi is not None else None
    qi = dcat_mod.endomorphism_cohomology(d, chi_target=chi)
    report = {
        "delta": list(delta),
        "algebra_dim": d.algebra.dim,
        "hom_table_ok": True,  # checked during construction
        "exceptionality": exc,
        "quasi_isomorphism": qi.to_dict(),
    }
    ok = exc["ok"] and qi.ok
    emit(report, f"auxiliary algebra dim {d.algebra.dim}; exceptionality "
                 f"{'ok' if exc['ok'] else 'FAILED'}; cohomology comparison "
                 f"{'ok' if qi.ok else 'FAILED'}", args.out)
    return 0 if ok else 1


def cmd_curve(args) -> int:
    f = parse_family(args.family)
    report = curve_mod.curve_report(f)
    consistent = curve_mod.forest_lambda_consistency(f)
    reduced = curve_mod.spanning_forest_reduce(f)
    report["forest_lambda_consistent"] = consistent
    report["reduced_pairs_kept"] = reduced.m
    summary = (
        f"{report['singular_count']} singular point(s), modest={report['modest']}, "
        f"lambda rank {report['lambda_rank']} ({'surjective' if report['lambda_surjective'] else 'not surjective'})"
    )
    emit(report, summary, args.out)
    return 0 if consistent and report["c_bound_ok"] else 1


# -- the consolidated demo -------------------------------------------------


def _random_battery(count: int, seed: int) -> list:
    shapes = [
        (2, 1, (1,)),
        (2, 2, (1, 1)),
        (3, 2, (2, 1)),
        (3, 3, (1, 1, 1)),
        (4, 2, (2, 2)),
        (3, 2, (2, 2)),
        (4, 3, (2, 1, 1)),
        (2, 3, (1, 1, 1)),
        (3, 3, (2, 1, 1)),
        (4, 4, (2, 2, 1, 1)),
    ]
    out = []
    for idx in range(count):
        n, m, kseq = shapes[idx % len(shapes)]
        out.append((f"random n={n} m={m} k={kseq} #{idx}", random_family(n, m, kseq, seed + idx)))
    return out


def _equidim_battery(count: int, seed: int) -> list:
    shapes = [(2, 1, 1), (2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 1, 3), (3, 2, 1), (3, 2, 2), (3, 2, 3), (2, 1, 2), (3, 2, 3)]
    out = []
    for idx in range(count):
        n, k, m = shapes[idx % len(shapes)]
        out.append((f"equidim n={n} k={k} m={m} #{idx}", random_family(n, m, [k] * m, seed + 100 + idx)))
    return out


def run_demo(quick: bool = False, seed: int = 0) -> tuple:
    """(all_ok, consolidated report). The workhorse behind `famalg demo`."""
    sections: dict = {}
    ok = True

    def record(section: str, name: str, passed: bool, detail=None):
        nonlocal ok
        entry = {"name": name, "pass": bool(passed)}
        if detail is not None:
            entry["detail"] = detail
        sections.setdefault(section, []).append(entry)
        ok = ok and bool(passed)

    green_range = range(2, 6) if quick else range(2, 9)
    for l in green_range:
        f = green_family(l)
        alg = ralgebra.build_R(f)
        g = homology_mod.gldim(alg, cutoff=2 * f.m + 2 * f.n + 4)
        record("green_regression", f"gldim green:{l}", g == l, {"gldim": g})
    for l in (2, 3):
        q, rels = quiverpath.green_quiver(l)
        o = quiverpath.build_oracle(q, rels, cutoff=8)
        expected = {2: 5, 3: 8}[l]
        record("green_regression", f"dim green:{l} oracle", o.dim == expected, {"dim": o.dim})

    kk_range = (2,) if quick else (2, 3)
    for n in kk_range:
        alg = ralgebra.build_R(kk_family(n))
        g = homology_mod.gldim(alg, cutoff=2 * n + 2 * n + 4)
        t = homology_mod.loewy_length(alg)
        record("kk_regression", f"kk:{n}", g == 2 * n + 1 and t == 4, {"gldim": g, "loewy": t})

    named = [("empty n=2", Family(2, ())), ("empty n=3", Family(3, ()))]
    named += [(f"green:{l}", green_family(l)) for l in (range(2, 5) if quick else range(2, 7))]
    named += [(f"kk:{n}", kk_family(n)) for n in ((1, 2) if quick else (1, 2, 3))]
    named += _random_battery(4 if quick else 20, 1000 + seed)
    for name, f in named:
        rep = ralgebra.verify_against_oracle(f)
        record("oracle_equivalence", name, rep.ok, {"dim": rep.dim_closed})
        alg = ralgebra.build_R(f)
        dims_ok = alg.component_dims() == ralgebra.predicted_component_dims(f)
        record("dimension_formulas", name, dims_ok)
        if f.is_equidimensional() and f.n == 2 and f.m and f.kseq[0] == 1:
            record("dimension_formulas", f"{name} total 4+4m", alg.dim == 4 + 4 * f.m)
        cert = twist_mod.factorize_R(f)
        record(
            "twisted_factorization",
            name,
            cert.ok and len(cert.steps) == f.m,
            {"steps": len(cert.steps)},
        )

    equi = _equidim_battery(4 if quick else 10, seed)
    for idx, (name, f) in enumerate(equi):
        deltas = [[0] * f.m, [1] * f.m, [(-1) ** t * t for t in range(1, f.m + 1)]]
        delta = deltas[idx % 3]
        d = dcat_mod.build_D(f, delta)
        record("hom_table", f"{name} delta={delta}", d.check_hom_spaces())
        exc = dcat_mod.exceptionality_suite(d)
        record("exceptionality", f"{name} delta={delta}", exc["ok"], {"failures": exc["failures"]})
        qi = dcat_mod.endomorphism_cohomology(d)
        record("quasi_isomorphism", f"{name} delta={delta}", qi.ok)

    curve_count = 10 if quick else 50
    for idx in range(curve_count):
        m = 1 + idx % 4
        f = random_family(2, m, [1] * m, seed=2000 + seed + idx)
        consistent = curve_mod.forest_lambda_consistency(f)
        reduced = curve_mod.spanning_forest_reduce(f)
        g0 = curve_mod.build_graph(f)
        g1 = curve_mod.build_graph(reduced)
        reduce_ok = curve_mod.is_modest(g1) and set(map(str, g0.vertices)) == set(map(str, g1.vertices))
        rep = curve_mod.curve_report(f)
        rank, _ = curve_mod.lambda_rank(f)
        d_used = max(len(g0.vertices) - 1, 0)
        nullity_ok = len(curve_mod.coordinate_ring_basis(f, d_used)) == d_used + 1 + f.m - rank
        record(
            "curve_suite",
            f"random m={m} #{idx}",
            consistent and reduce_ok and rep["c_bound_ok"] and nullity_ok,
        )
    adversarial = {
        "parallel": Family(2, ((_line(1, 0), _line(0, 1)), (_line(1, 0), _line(0, 1)))),
        "chain": Family(2, ((_line(1, 0), _line(0, 1)), (_line(1, 1), _line(1, 0)))),
        "triangle": Family(
            2,
            (
                (_line(0, 1), _line(1, 0)),
                (_line(1, 1), _line(0, 1)),
                (_line(1, 1), _line(1, 0)),
            ),
        ),
    }
    for name, f in adversarial.items():
        consistent = curve_mod.forest_lambda_consistency(f)
        reduced = curve_mod.spanning_forest_reduce(f)
        record("curve_suite", name, consistent and curve_mod.is_modest(curve_mod.build_graph(reduced)))

    report = {
        "quick": quick,
        "seed": seed,
        "sections": sections,
        "ok": ok,
    }
    return ok, report


def _line(a, b):
    from .exactla import Subspace

    return Subspace.from_vectors(2, [[a, b]])


def cmd_demo(args) -> int:
    ok, report = run_demo(quick=args.quick, seed=args.seed)
    lines = []
    for section, entries in report["sections"].items():
        passed = sum(1 for e in entries if e["pass"])
        lines.append(f"{section}: {passed}/{len(entries)} passed")
        for e in entries:
            if not e["pass"]:
                lines.append(f"  FAIL {e['name']}")
    lines.append("overall: " + ("PASS" if ok else "FAIL"))
    out = args.out or "famalg_demo.json"
    emit(report, "\n".join(lines), out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="famalg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **flags):
        p = sub.add_parser(name)
        if flags.get("family", True):
            p.add_argument("--family", required=True, help="file path, green:l, kk:n, or random:n,m,(kseq),seed")
        if flags.get("chi"):
            p.add_argument("--chi", default=None, help="comma-separated integers, m+1 entries")
        if flags.get("delta"):
            p.add_argument("--delta", default=None, help="comma-separated integers, m entries")
        if flags.get("cutoff"):
            p.add_argument("--cutoff", type=int, default=None)
        p.add_argument("--out", default=None, help="write the JSON report here")
        p.set_defaults(fn=fn)
        return p

    add("check-family", cmd_check_family)
    add("build-algebra", cmd_build_algebra, chi=True)
    add("verify-oracle", cmd_verify_oracle, cutoff=True)
    add("gldim", cmd_gldim, cutoff=True)
    add("factorize", cmd_factorize, chi=True)
    add("dcat-verify", cmd_dcat_verify, delta=True, chi=True)
    add("curve", cmd_curve)
    demo = sub.add_parser("demo")
    demo.add_argument("--quick", action="store_true", help="smaller battery, finishes fast")
    demo.add_argument("--seed", type=int, default=0, help="offset for the random-family seeds")
    demo.add_argument("--out", default=None)
    demo.set_defaults(fn=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, json.JSONDecodeError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except quiverpath.CutoffExceeded as exc:
        print(f"cutoff exceeded: {exc}", file=sys.stderr)
        return 1
    except (ValueError, AssertionError) as exc:
        print(f"assertion failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
