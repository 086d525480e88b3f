"""Command-line interface.

Subcommands: certify, connection, extend, topology.  Each reads one JSON
configuration (see config.py and the shipped sample configs), runs the
corresponding library routines, and emits a JSON report (verdicts with
certificates) and/or CSV tables (grid dumps).

Exit status contract, stable across commands:
    0  run succeeded and the computed answer is affirmative
       (all points Cartan / criterion holds everywhere / decision
       affirmative or a decision table fully determinate / all
       topology predicates true)
    1  run succeeded but the answer is negative or indeterminate
    2  configuration or input-data error (message on standard error)
    3  evaluation/runtime error (message on standard error)

Reports are deterministic: fixed key order, floats serialized with
repr (shortest round-trip form), no timestamps, results independent of
--threads.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import __version__, backend
from .certify import (
    STATUS_CARTAN, STATUS_ERROR, certify_grid, report_csv_rows,
)
from .config import (
    CertifyJob, ConnectionJob, ExtendJob, TopologyJob, load_certify,
    load_config, load_connection, load_extend, load_topology,
)
from .connections import (
    SuspensionSpec, builtin, cartan_criterion_algebra, criterion_grid,
    suspend, suspension_det_power,
)
from .errors import (
    Cartan235Error, ConfigError, IncompleteData, InconsistentInput,
)
from .extension import (
    ConeProblem, EXTENDABLE, INDETERMINATE, band_latitude_loop,
    cap_region_points, cone_membership, decide_extension, verify_certificate,
)
from .topology import decide_decomposition, kervaire, rokhlin_check, smale_remark

__all__ = ["main"]

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def _jsonable(value):
    """Recursively convert numpy scalars/arrays and tuples for json.dump."""
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def _csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _emit(args, report: dict, tables: list[tuple[str, list]]) -> None:
    """Write the JSON report and CSV tables per --out/--format."""
    text = json.dumps(_jsonable(report), indent=2) + "\n"
    want_json = args.format in ("json", "both")
    want_csv = args.format in ("csv", "both")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        if want_json:
            path = os.path.join(args.out, "report.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        if want_csv:
            for name, rows in tables:
                path = os.path.join(args.out, f"{name}.csv")
                with open(path, "w", encoding="utf-8", newline="") as fh:
                    fh.write(_csv_text(rows))
    else:
        if want_json:
            sys.stdout.write(text)
        elif want_csv:
            for name, rows in tables:
                sys.stdout.write(f"# {name}\n")
                sys.stdout.write(_csv_text(rows))


# ---------------------------------------------------------------- certify

def _run_certify(job: CertifyJob, tol: float, threads: int):
    report = certify_grid(job.subject, job.box, job.steps, tol=tol,
                          threads=threads)
    counts = report.counts
    doc = {
        "command": "certify",
        "subject": job.kind,
        "tol": tol,
        **report.to_json_dict(),
    }
    tables = [("grid", report_csv_rows(report))]
    if counts.get(STATUS_ERROR, 0) > 0:
        return doc, tables, EXIT_RUNTIME
    return doc, tables, EXIT_OK if report.all_cartan else EXIT_NEGATIVE


# -------------------------------------------------------------- connection

def _run_connection(job: ConnectionJob, tol: float, threads: int):
    doc: dict = {"command": "connection", "tol": tol}
    tables: list[tuple[str, list]] = []
    ok = True
    had_error = False

    if job.points:
        rows = [["x1", "x2", "holds", "det", "margin", "reason"]]
        entries = []
        for p in job.points:
            res = cartan_criterion_algebra(job.form, p, tol)
            entries.append({
                "point": list(p),
                "holds": res.holds,
                "det": res.det,
                "margin": res.margin,
                "scale": res.scale,
                "reason": res.reason,
            })
            rows.append([repr(p[0]), repr(p[1]), res.holds, repr(res.det),
                         repr(res.margin), res.reason or ""])
            ok = ok and res.holds
        doc["points"] = entries
        tables.append(("criterion_points", rows))

    if job.grid is not None:
        box, steps = job.grid
        rep = criterion_grid(job.form, box, steps, tol=tol, threads=threads)
        doc["criterion_grid"] = rep.to_json_dict()
        rows = [["x1", "x2", "holds", "det", "margin", "note"]]
        for p in rep.points:
            if p.holds is None:
                had_error = True
            rows.append([
                repr(p.coords[0]), repr(p.coords[1]),
                "" if p.holds is None else p.holds,
                "" if p.det is None else repr(p.det),
                "" if p.margin is None else repr(p.margin),
                p.note or "",
            ])
        tables.append(("criterion_grid", rows))
        ok = ok and rep.all_hold

    if job.sweep is not None:
        power = suspension_det_power(job.sweep.model)
        sweep_doc = {
            "model": job.sweep.model,
            "det_power": power,
            "runs": [],
        }
        rows = [["epsilon", "all_cartan", "points", "min_abs_det",
                 "scaled_min_abs_det"]]
        for eps in job.sweep.epsilons:
            dist = suspend(SuspensionSpec(job.form, eps, model=job.sweep.model))
            rep = certify_grid(dist, job.sweep.box, job.sweep.steps,
                               tol=tol, threads=threads)
            counts = rep.counts
            if counts.get(STATUS_ERROR, 0) > 0:
                had_error = True
            min_det = rep.min_abs_det
            scaled = None if min_det is None else min_det / eps ** power
            sweep_doc["runs"].append({
                "epsilon": eps,
                "all_cartan": rep.all_cartan,
                "counts": counts,
                "min_abs_det": min_det,
                "scaled_min_abs_det": scaled,
            })
            rows.append([repr(eps), rep.all_cartan, len(rep.points),
                         "" if min_det is None else repr(min_det),
                         "" if scaled is None else repr(scaled)])
            ok = ok and rep.all_cartan
        doc["suspension"] = sweep_doc
        tables.append(("suspension", rows))

    if had_error:
        return doc, tables, EXIT_RUNTIME
    return doc, tables, EXIT_OK if ok else EXIT_NEGATIVE


# ------------------------------------------------------------------ extend

def _decision_doc(decision) -> dict:
    cone = decision.cone
    return {
        "verdict": decision.verdict,
        "target": decision.target,
        "cone_status": cone.status,
        "coefficients": cone.coefficients,
        "normal": cone.normal,
        "residual": cone.residual,
        "certificate_verified": verify_certificate(decision.problem, cone),
        "loop_points_checked": decision.loop_points_checked,
        "region_samples": decision.region_samples,
    }


def _run_extend(job: ExtendJob, tol: float, threads: int):
    doc: dict = {"command": "extend", "mode": job.mode, "tol": tol}
    tables: list[tuple[str, list]] = []

    if job.mode == "family":
        doc["alpha"] = job.alpha
        doc["n_quad"] = job.n_quad
        decisions = []
        rows = [["h", "verdict", "target_1", "target_2", "target_3",
                 "cone_status", "certificate_verified"]]
        for h in job.heights:
            form = builtin("cext_family", chart="band", alpha=job.alpha)
            loop = band_latitude_loop(h)
            region = cap_region_points(h, n_theta=job.n_theta, n_z=job.n_z,
                                       z_top=job.z_top)
            decision = decide_extension(form, loop, region,
                                        n_quad=job.n_quad, tol=tol)
            entry = {"h": h, **_decision_doc(decision)}
            decisions.append(entry)
            rows.append([repr(h), decision.verdict,
                         *[repr(float(v)) for v in decision.target],
                         decision.cone.status, entry["certificate_verified"]])
        doc["decisions"] = decisions
        tables.append(("decisions", rows))
        determinate = all(d["verdict"] != INDETERMINATE for d in decisions)
        verified = all(d["certificate_verified"] for d in decisions)
        code = EXIT_OK if determinate and verified else EXIT_NEGATIVE
        return doc, tables, code

    if job.mode == "single":
        decision = decide_extension(job.form, job.loop.loop,
                                    job.region.points,
                                    n_quad=job.n_quad, tol=tol)
        entry = {"loop": job.loop.label, "region": job.region.label,
                 **_decision_doc(decision)}
        doc["decision"] = entry
        tables.append(("decisions", [
            ["loop", "region", "verdict", "target_1", "target_2", "target_3",
             "cone_status", "certificate_verified"],
            [job.loop.label, job.region.label, decision.verdict,
             *[repr(float(v)) for v in decision.target],
             decision.cone.status, entry["certificate_verified"]],
        ]))
        good = decision.verdict == EXTENDABLE and entry["certificate_verified"]
        return doc, tables, EXIT_OK if good else EXIT_NEGATIVE

    problem = ConeProblem(samples=np.array(job.samples, dtype=np.float64),
                          target=np.array(job.target, dtype=np.float64),
                          tol=tol)
    verdict = cone_membership(problem)
    verified = verify_certificate(problem, verdict)
    doc["cone"] = {
        "status": verdict.status,
        "coefficients": verdict.coefficients,
        "normal": verdict.normal,
        "residual": verdict.residual,
        "certificate_verified": verified,
    }
    tables.append(("decisions", [
        ["status", "residual", "certificate_verified"],
        [verdict.status, repr(verdict.residual), verified],
    ]))
    good = verdict.status == "Inside" and verified
    return doc, tables, EXIT_OK if good else EXIT_NEGATIVE


# ---------------------------------------------------------------- topology

def _run_topology(job: TopologyJob, tol: float, threads: int):
    doc: dict = {"command": "topology"}
    rows = [["section", "name", "result", "detail"]]
    all_true = True

    if job.kervaire:
        entries = []
        for name, betti in job.kervaire:
            k = kervaire(betti)
            entries.append({"name": name, "betti": list(betti), "k": k})
            rows.append(["kervaire", name, k, f"betti={list(betti)}"])
        doc["kervaire"] = entries

    if job.decompositions:
        entries = []
        for inv in job.decompositions:
            verdict = decide_decomposition(inv)
            entries.append({
                "name": inv.name,
                "admits": verdict.value,
                "clauses": [
                    {"name": c.name, "passed": c.passed, "detail": c.detail}
                    for c in verdict.clauses
                ],
                "failed": list(verdict.failed),
            })
            rows.append(["decomposition", inv.name, verdict.value,
                         "; ".join(f"{c.name}={'pass' if c.passed else 'FAIL'}"
                                   for c in verdict.clauses)])
            all_true = all_true and verdict.value
        doc["decompositions"] = entries

    if job.smale:
        entries = []
        for data in job.smale:
            rep = smale_remark(data)
            entries.append({
                "name": data.name,
                "admits": rep.admits,
                "b2": rep.b2,
                "torsion": list(rep.torsion),
                "w2_zero": rep.w2_zero,
                "description": rep.description,
                "reason": rep.reason,
            })
            rows.append(["smale", data.name, rep.admits,
                         f"{rep.reason}; M = {rep.description or 'n/a'}"])
            all_true = all_true and rep.admits
        doc["smale"] = entries

    if job.rokhlin:
        entries = []
        for name, p1 in job.rokhlin:
            res = rokhlin_check(p1)
            entries.append({"name": name, "p1": list(p1),
                            "per_class": list(res.per_class),
                            "all_pass": res.all_pass})
            rows.append(["rokhlin", name, res.all_pass, f"p1={list(p1)}"])
            all_true = all_true and res.all_pass
        doc["rokhlin"] = entries

    return doc, [("predicates", rows)], EXIT_OK if all_true else EXIT_NEGATIVE


_COMMANDS = {
    "certify": (load_certify, _run_certify,
                "Certify Cartan type over a 5-chart grid"),
    "connection": (load_connection, _run_connection,
                   "Evaluate the connection-form criterion and suspensions"),
    "extend": (load_extend, _run_extend,
               "Decide germ extension via loop integrals and cone membership"),
    "topology": (load_topology, _run_topology,
                 "Evaluate existence predicates on manifold invariants"),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cartan235",
        description="Construct, certify, and decide properties of rank-two "
                    "distributions of Cartan type on 5-dimensional charts.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__} ({backend()} backend)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, _, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to a JSON run config")
        p.add_argument("--out", default=None,
                       help="directory for report files (default: JSON to stdout)")
        p.add_argument("--format", choices=("json", "csv", "both"),
                       default="both", help="which reports to emit (default both)")
        p.add_argument("--tol", type=float, default=None,
                       help="override the config tolerance")
        p.add_argument("--threads", type=int, default=None,
                       help="evaluation threads (default: available cores); "
                            "reports do not depend on this")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    loader, runner, _ = _COMMANDS[args.command]
    try:
        cfg = load_config(args.config)
        job = loader(cfg)
        tol = args.tol if args.tol is not None else job.tol if hasattr(job, "tol") else 1e-9
        if tol <= 0:
            raise ConfigError("tol", "tolerance must be positive")
    except (ConfigError, InconsistentInput, IncompleteData) as err:
        print(f"cartan235: config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    threads = args.threads if args.threads else (os.cpu_count() or 1)
    if threads < 1:
        print("cartan235: config error: --threads must be positive", file=sys.stderr)
        return EXIT_CONFIG
    try:
        doc, tables, code = runner(job, tol, threads)
    except (InconsistentInput, IncompleteData) as err:
        print(f"cartan235: input error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except Cartan235Error as err:
        print(f"cartan235: error: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    _emit(args, doc, tables)
    return code


if __name__ == "__main__":
    sys.exit(main())
