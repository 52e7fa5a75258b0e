"""Command-line front end: run manifest tasks and report verdicts.

Exit codes: 0 when every verdict is positive, 1 when some verdict is
negative, 2 on input errors (bad JSON, unresolved names, inconsistent
dimensions, invalid structures).
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .algcore import check_algebra
from .coring import (
    check_comodule,
    check_coring,
    check_retraction,
    coseparability,
    counit_comparison,
    regular_comodule,
)
from .exactla import Field, Mat
from .examples import extensions as ext_ex
from .examples import quasi as quasi_ex
from .galois import can_displayed, can_map, structure_report
from .manifest import (
    COMMANDS,
    Manifest,
    ManifestError,
    parse_field,
    parse_manifest_text,
)
from .report import Report

EXIT_PASS, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


def _floats(m: Mat) -> list[list[float]]:
    p = m.field.p
    out = []
    for row in m.tolist():
        vals = []
        for v in row:
            if p:
                r = int(v)
                vals.append(float(r - p if r > p // 2 else r))
            else:
                vals.append(float(int(v.p)) / float(int(v.q)))
        out.append(vals)
    return out


class TaskOutcome:
    def __init__(self, status: str, facts: dict, failures: list[dict], plot: dict | None = None, matrix=None):
        self.status, self.facts, self.failures = status, facts, failures
        self.plot = plot or {}
        self.matrix = matrix


def _from_report(rep: Report, plot=None, matrix=None) -> TaskOutcome:
    return TaskOutcome("pass" if rep.ok else "fail", dict(rep.facts), [f.to_record() for f in rep.failures], plot, matrix)


def _task_check_algebra(m: Manifest, target: str) -> TaskOutcome:
    A = m.get("algebras", target)
    rep = check_algebra(A)
    rep.facts["dim"] = A.dim
    return _from_report(rep)


def _task_check_coring(m: Manifest, target: str) -> TaskOutcome:
    C = m.get("corings", target)
    rep = check_coring(C)
    rep.facts.update({"dim": C.dim, "algebra dim": C.algebra.dim})
    return _from_report(rep, {"source": C.dim, "target": C.cc.dim}, ("comultiplication", C.comult.mat))


def _task_check_comodule(m: Manifest, target: str) -> TaskOutcome:
    M = m.get("comodules", target)
    rep = check_comodule(M)
    rep.facts.update({"dim": M.dim, "coring": M.coring.name})
    return _from_report(rep, {"source": M.dim, "target": M.coaction.dst.dim}, ("coaction", M.coaction.mat))


def _task_comatrix(m: Manifest, target: str) -> TaskOutcome:
    ctx = m.get("contexts", target)
    cm = ctx.comatrix
    rep = check_coring(cm)
    rep.facts.update({"dim": cm.dim, "dim p": ctx.p.dim, "dim q": ctx.q.dim, "dim B": ctx.B.dim, "dim A": ctx.A.dim})
    return _from_report(rep, {"source": cm.dim, "target": cm.cc.dim}, ("comatrix comultiplication", cm.comult.mat))


def _task_can(m: Manifest, target: str) -> TaskOutcome:
    ctx = m.get("contexts", target)
    can = can_map(ctx)
    rank = can.rank()
    rep = Report(f"can {target}")
    rep.facts.update({"source dim": can.src.dim, "target dim": can.dst.dim, "rank": rank,
                      "rank deficit": max(can.src.dim, can.dst.dim) - rank})
    if ctx.sigma is not None:
        shown = can_displayed(ctx)
        rep.facts["matches element formula"] = shown.mat == can.mat
        rep.expect_equal("element formula", shown.mat, can.mat)
    rep.facts["bijective"] = can.is_bijective()
    if not can.is_bijective():
        rep.fail("can bijective", f"rank {rank}", f"{can.src.dim} -> {can.dst.dim}")
    return _from_report(rep, {"source": can.src.dim, "target": can.dst.dim, "rank": rank}, ("can", can.mat))


def _task_galois_report(m: Manifest, target: str) -> TaskOutcome:
    ctx = m.get("contexts", target)
    gr = structure_report(ctx)
    rec = gr.to_record()
    failures = []
    if not gr.equivalence:
        failures = [{"check": "strong verdict", "where": k, "detail": "no"} for k, v in gr.verdicts.items() if not v]
        failures += [{"check": "purity", "where": p} for p in gr.purity_failures]
    facts = {k: v for k, v in rec.items() if k != "name"}
    plot = {"source": gr.can_dims[0], "target": gr.can_dims[1], "rank": gr.can_rank} if gr.can_dims else {}
    return TaskOutcome("pass" if gr.equivalence else "fail", facts, failures, plot, ("can", can_map(ctx).mat))


def _task_coseparable(m: Manifest, target: str) -> TaskOutcome:
    C = m.get("corings", target)
    cs = coseparability(C)
    rep = Report(f"coseparable {target}")
    rep.facts["coseparable"] = bool(cs)
    rep.facts["solution space dim"] = cs.solution_dim
    if not cs:
        rep.fail("coseparability", "gamma system", "no bicomodule splitting of the comultiplication")
        return _from_report(rep)
    rep.merge(check_retraction(regular_comodule(C), cs.gamma), "regular comodule ")
    return _from_report(rep, {"source": C.cc.dim, "target": C.dim, "rank": cs.gamma.rank()}, ("gamma", cs.gamma.mat))


def _task_descent(m: Manifest, target: str) -> TaskOutcome:
    ext = m.get("extensions", target)
    return _from_report(ext_ex.descent_report(ext))


def _task_quasi(m: Manifest, target: str) -> TaskOutcome:
    if target in m.data.get("quasi", {}):
        H = m.get("quasi", target)
        return _from_report(quasi_ex.check_dual_quasi_bialgebra(H))
    data = m.get("quasi_data", target)
    rep = quasi_ex.check_quasi_data(data)
    if not rep.ok:
        return _from_report(rep)
    qc = quasi_ex.quasi_comatrix_coring(data, check=False)
    rep.merge(quasi_ex.check_quasi_coring(data, qc))
    rep.facts.update({"dim": qc.coring.dim, "terms with nontrivial φ factor": qc.nontrivial_factors,
                      "comultiplication formulas agree": qc.second_formula == qc.coring.comult.mat})
    c = qc.coring
    return _from_report(rep, {"source": c.dim, "target": c.cc.dim}, ("quasi comultiplication", c.comult.mat))


def _task_cotensor(m: Manifest, target: str) -> TaskOutcome:
    M = m.get("comodules", target)
    to, back, cot = counit_comparison(M)
    rep = Report(f"cotensor {target}")
    rep.facts.update({"dim m": M.dim, "dim m□c": cot.dim, "bijective": to.is_bijective()})
    if cot.dim != M.dim:
        rep.fail("dimension", "m□c", f"{cot.dim} != {M.dim}")
    rep.expect_equal("back ∘ to", (back @ to).mat, Mat.identity(M.carrier.field, M.dim))
    return _from_report(rep, {"source": M.dim, "target": cot.dim, "rank": to.rank()})


TASKS = {
    "check-algebra": _task_check_algebra,
    "check-coring": _task_check_coring,
    "check-comodule": _task_check_comodule,
    "comatrix": _task_comatrix,
    "can": _task_can,
    "galois-report": _task_galois_report,
    "coseparable": _task_coseparable,
    "descent-report": _task_descent,
    "quasi-check": _task_quasi,
    "cotensor-dim": _task_cotensor,
}


def run_task(m: Manifest, index: int, command: str, target: str, want_matrix: bool = False) -> dict:
    try:
        out = TASKS[command](m, target)
    except ManifestError as exc:
        out = TaskOutcome("error", {}, [e.to_record() for e in exc.errors])
    except (ValueError, ArithmeticError) as exc:
        out = TaskOutcome("error", {}, [{"check": "input", "where": f"{command} {target}", "detail": f"{type(exc).__name__}: {exc}"}])
    rec = {
        "index": index,
        "command": command,
        "target": target,
        "field": m.field.name,
        "status": out.status,
        "facts": _jsonable(out.facts),
        "failures": _jsonable(out.failures),
        "plot": _jsonable(out.plot),
    }
    if want_matrix and out.matrix is not None:
        title, mat = out.matrix
        rec["_matrix"] = (f"{title}: {command} {target}", _floats(mat))
    return rec


def _worker(args) -> dict:
    text, p, index, command, target, want = args
    m = parse_manifest_text(text, Field(p))
    return run_task(m, index, command, target, want)


def execute(m: Manifest, tasks: list[tuple[str, str]], jobs: int = 1, want_matrix: bool = False) -> list[dict]:
    """Run tasks and return records ordered by task index whatever the completion order."""
    if jobs <= 1 or len(tasks) <= 1:
        return [run_task(m, i, c, t, want_matrix) for i, (c, t) in enumerate(tasks)]
    jobs_args = [(m.text, m.field.p, i, c, t, want_matrix) for i, (c, t) in enumerate(tasks)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_worker, jobs_args))
    return sorted(results, key=lambda r: r["index"])


def exit_code(records: list[dict]) -> int:
    statuses = {r["status"] for r in records}
    if "error" in statuses:
        return EXIT_INPUT
    if "fail" in statuses:
        return EXIT_NEGATIVE
    return EXIT_PASS


def _human(rec: dict) -> str:
    lines = [f"[{rec['index']}] {rec['command']} {rec['target']} over {rec['field']}: {rec['status'].upper()}"]
    for k, v in rec["facts"].items():
        if isinstance(v, dict):
            for kk, vv in v.items():
                lines.append(f"    {k} / {kk}: {json.dumps(vv, ensure_ascii=False)}")
        else:
            lines.append(f"    {k}: {json.dumps(v, ensure_ascii=False)}")
    for f in rec["failures"]:
        where = f.get("where") or "/".join(str(x) for x in f.get("path", []))
        detail = f.get("detail", f.get("message", ""))
        line = f"    ! {f.get('check', 'error')} at {where}"
        if detail:
            line += f" ({detail})"
        if f.get("line"):
            line += f" [line {f['line']}, column {f['column']}]"
        lines.append(line)
        if f.get("residual"):
            lines.append(f"      residual entries (row, col, value): {f['residual']}")
    return "\n".join(lines)


def _emit(records: list[dict], as_records: bool, out) -> None:
    for rec in records:
        if as_records:
            out.write(json.dumps(rec, sort_keys=True, ensure_ascii=False) + "\n")
        else:
            out.write(_human(rec) + "\n")
    counts = {s: sum(r["status"] == s for r in records) for s in ("pass", "fail", "error")}
    if as_records:
        out.write(json.dumps({"summary": counts, "exit": exit_code(records)}, sort_keys=True) + "\n")
    else:
        out.write(f"{len(records)} tasks: {counts['pass']} pass, {counts['fail']} fail, {counts['error']} error\n")


def _input_error(exc: ManifestError, as_records: bool, out) -> int:
    for e in exc.errors:
        if as_records:
            out.write(json.dumps({"input_error": e.to_record()}, sort_keys=True, ensure_ascii=False) + "\n")
        else:
            out.write(f"input error: {e}\n")
    return EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coring-galois", description="Exact checks for corings, comatrix corings and Galois conditions.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ["run", *COMMANDS]:
        p = sub.add_parser(name, help="run the manifest task list" if name == "run" else f"{name} on a manifest definition")
        p.add_argument("manifest")
        if name != "run":
            p.add_argument("--target", help="definition name (default: every definition of the matching kind)")
        p.add_argument("--records", action="store_true", help="emit JSON lines instead of the readable summary")
        p.add_argument("--field", help="override the manifest field: Q or Fp:P")
        p.add_argument("--jobs", type=int, default=1, help="parallel worker processes for independent tasks")
        p.add_argument("--figures", metavar="DIR", help="write matrix and summary figures (PNG) to DIR")
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        override = parse_field(args.field) if args.field else None
    except ValueError as exc:
        out.write(f"input error: {exc}\n")
        return EXIT_INPUT
    try:
        with open(args.manifest, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        out.write(f"input error: {exc}\n")
        return EXIT_INPUT
    try:
        m = parse_manifest_text(text, override, source=args.manifest)
    except ManifestError as exc:
        return _input_error(exc, args.records, out)
    if args.command == "run":
        tasks = [(t["command"], t["target"]) for t in m.tasks]
    else:
        sections = COMMANDS[args.command]
        sections = sections if isinstance(sections, tuple) else (sections,)
        if args.target:
            if not any(args.target in m.data.get(s, {}) for s in sections):
                line = f"no definition {args.target!r} in {' or '.join(sections)}"
                return _input_error(ManifestError([_missing(m, sections, args.target, line)]), args.records, out)
            tasks = [(args.command, args.target)]
        else:
            tasks = [(args.command, n) for s in sections for n in m.names(s)]
    records = execute(m, tasks, jobs=max(1, args.jobs), want_matrix=bool(args.figures))
    matrices = {}
    for rec in records:
        if "_matrix" in rec:
            matrices[rec["index"]] = rec.pop("_matrix")
    if args.figures:
        from .plotting import render

        paths = render(records, matrices, args.figures)
        for rec in records:
            rec["figures"] = sorted(p.rsplit("/", 1)[-1] for p in paths if p.rsplit("/", 1)[-1].startswith(f"{rec['index']:02d}_"))
    _emit(records, args.records, out)
    if args.figures and not args.records:
        out.write(f"figures written to {args.figures}\n")
    return exit_code(records)


def _missing(m: Manifest, sections, name: str, message: str):
    from .manifest import LocatedError

    return LocatedError((sections[0],), message, 0, 0, name)


if __name__ == "__main__":
    sys.exit(main())
