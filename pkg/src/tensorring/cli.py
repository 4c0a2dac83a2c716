"""Command line front end: ``tensorring preset | check | render``.

Exit codes: 0 every task passed, 1 some task failed (or a definition or
hypothesis error), 2 nothing failed but some verdict was inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, fields, replace
from typing import Dict, List, Optional

import numpy as np

from .definition import (
    PRESETS,
    SCHEMA_VERSION,
    TENSOR_TASKS,
    DefinitionError,
    Workspace,
    parse,
    render,
)
from .gorenstein import (
    INCONCLUSIVE,
    NO,
    YES,
    Window,
    check_condition_T,
    is_gf,
    is_gorenstein_projective,
    is_pgf,
)
from .tensor_ring import DEFAULT_NIL_BOUND, NotNilpotent
from .verify import HypothesisFailure

CONFIG_ENV = "TENSORRING_CONFIG"
EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2
PASS, FAIL = "pass", "fail"


@dataclass(frozen=True)
class WorkbenchConfig:
    p: int = 7
    resolution_depth: int = 8
    coresolution_depth: int = 8
    degrees: int = 6
    nil_bound: int = DEFAULT_NIL_BOUND
    samples: int = 200
    seed: int = 0

    @property
    def window(self) -> Window:
        return Window(self.resolution_depth, self.coresolution_depth, self.degrees)

    @classmethod
    def load(cls, path: Optional[str]) -> "WorkbenchConfig":
        if not path:
            return cls()
        with open(path) as fh:
            raw = json.load(fh)
        known = {f.name for f in fields(cls)}
        bad = sorted(set(raw) - known)
        if bad:
            raise DefinitionError(f"config {path}", f"unknown keys {bad}")
        return cls(**raw)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.integer):
        return int(x)
    return x


def _witness_dump(w) -> Optional[dict]:
    if w is None:
        return None
    return {"terms": [list(t.labels) for t in w.terms], "split": w.split,
            "maps": [m.tolist() for m in w.maps]}


# ----------------------------------------------------------------------------
# tasks


def _status_of(verdict: str) -> str:
    return {YES: PASS, NO: FAIL}.get(verdict, INCONCLUSIVE)


def task_gorenstein(ws: Workspace, cfg: WorkbenchConfig, kind: str, name: str) -> dict:
    test = {"pgf": is_pgf, "gf": is_gf, "gp": is_gorenstein_projective}[kind]
    x = ws.module(name)
    v = test(x, cfg.window)
    return {
        "task": f"{kind} {name}",
        "status": _status_of(v.verdict),
        "verdict": v.verdict,
        "summary": v.summary(),
        "obstruction": v.obstruction,
        "certificate": v.certificate,
        "details": _jsonable(v.details),
        "witness": _witness_dump(v.witness),
    }


def task_condition_t(ws: Workspace, cfg: WorkbenchConfig) -> dict:
    rep = check_condition_T(ws.tensor_ring(), cfg.degrees)
    w = rep.witness
    return {
        "task": "condition-t",
        "status": PASS if rep.holds else FAIL,
        "verdict": rep.verdict,
        "summary": f"condition T {rep.verdict} ({len(rep.slots)} Tor groups, degrees 1..{rep.degrees})",
        "witness": None if w is None else {"layer": w.layer, "degree": w.degree,
                                           "projective": w.projective + 1, "dim": w.dim},
    }


def task_phi(ws: Workspace, cfg: WorkbenchConfig, name: str) -> dict:
    from .pairs import pair_to_module
    from .verify import phi_verdict
    pr = ws.pair(name)
    rhs = phi_verdict(pr, cfg.window)
    lhs = is_pgf(pair_to_module(pr), cfg.window).verdict
    status = INCONCLUSIVE if INCONCLUSIVE in (lhs, rhs) else PASS if lhs == rhs else FAIL
    return {
        "task": f"phi {name}",
        "status": status,
        "verdict": rhs,
        "summary": f"(X, u) in Phi(PGF): {rhs}; module over T is PGF: {lhs}",
        "u_monic": bool(pr.is_mono()),
        "pair": {"X_action": pr.base.action.tolist(), "u": pr.u.tolist()},
    }


def _report_status(reps) -> str:
    if any(r.disagreements for r in reps):
        return FAIL
    if any(r.inconclusive for r in reps):
        return INCONCLUSIVE
    return PASS


def task_verify(ws: Workspace, cfg: WorkbenchConfig, which: str) -> dict:
    from . import verify as V
    extra: Dict[str, object] = {}
    if which == "theorem-a":
        reps = [V.verify_theorem_A(ws.tensor_ring(), cfg.samples, cfg.seed, cfg.window)]
        extra["lemma_1_5"] = V.verify_lemma_1_5(ws.tensor_ring())
        extra["lemma_2_3"] = V.verify_lemma_2_3(ws.tensor_ring())
    elif which == "theorem-b":
        reps = list(V.verify_theorem_B(ws.tensor_ring(), cfg.samples, cfg.seed, cfg.window))
    elif which == "lemma-1.6":
        reps = [V.verify_lemma_1_6(ws.tensor_ring(), cfg.samples, cfg.seed)]
    elif which == "cor-1.7":
        reps = [V.verify_cor_1_7(ws.tensor_ring(), cfg.samples, cfg.seed)]
    elif which == "section-4":
        from .quadruples import verify_section4
        reps = verify_section4(ws.morita(), cfg.samples, cfg.seed, cfg.window).reports
    else:
        raise DefinitionError("task", f"unknown verifier {which!r}")
    return {
        "task": f"verify {which}",
        "status": _report_status(reps),
        "verdict": "agree" if _report_status(reps) == PASS else _report_status(reps),
        "summary": "; ".join(r.line() for r in reps),
        "reports": [_jsonable(r.to_dict()) for r in reps],
        "extra": _jsonable(extra),
        "_seconds": sum(r.seconds for r in reps),
    }


def run_task(ws: Workspace, cfg: WorkbenchConfig, task: str) -> dict:
    words = task.split()
    head = words[0]
    arg = words[1] if len(words) > 1 else None
    refused = (head in TENSOR_TASKS and not (head == "verify" and arg == "section-4")
               and ws.warnings)
    if refused:
        return {"task": task, "status": FAIL, "verdict": "refused",
                "summary": "refused: nilpotency unproven (" + "; ".join(ws.warnings) + ")"}
    try:
        if head == "condition-t":
            return task_condition_t(ws, cfg)
        if head in ("pgf", "gf", "gp"):
            return task_gorenstein(ws, cfg, head, arg)
        if head == "phi":
            return task_phi(ws, cfg, arg)
        if head == "verify":
            return task_verify(ws, cfg, arg)
    except NotNilpotent as e:
        return {"task": task, "status": FAIL, "verdict": "refused", "summary": f"refused: {e}"}
    except (DefinitionError, ValueError, HypothesisFailure) as e:
        # hypothesis failures and schema problems surface as failed tasks
        return {"task": task, "status": FAIL, "verdict": "error", "summary": str(e)}
    raise DefinitionError("task", f"unknown task {task!r}")


def run_check(defn: dict, cfg: WorkbenchConfig, tasks: List[str], source: str = "",
              timing: bool = True) -> dict:
    ws = Workspace(defn, cfg.nil_bound)
    items = []
    clock: Dict[str, float] = {}
    t_all = time.perf_counter()
    for t in tasks:
        t0 = time.perf_counter()
        item = run_task(ws, cfg, t)
        item.pop("_seconds", None)
        clock[t] = round(time.perf_counter() - t0, 4)
        items.append(item)
    report = {
        "schema_version": SCHEMA_VERSION,
        "source": source,
        "config": asdict(replace(cfg, p=defn["mod_p"])),
        "warnings": ws.warnings,
        "items": items,
        "exit_code": exit_code(items),
    }
    if timing:
        clock["total"] = round(time.perf_counter() - t_all, 4)
        report["timing"] = clock
    return report


def exit_code(items: List[dict]) -> int:
    st = [i["status"] for i in items]
    if FAIL in st:
        return EXIT_FAIL
    if INCONCLUSIVE in st:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


# ----------------------------------------------------------------------------
# rendering


def _matrix_lines(m, indent: str = "    ") -> List[str]:
    a = np.asarray(m)
    if a.ndim == 3:
        out = []
        for k, sl in enumerate(a):
            out.append(f"{indent}[{k}]")
            out.extend(_matrix_lines(sl, indent + "  "))
        return out
    if a.ndim == 2:
        return [indent + " ".join(str(int(v)) for v in row) for row in a] or [indent + "(empty)"]
    return [indent + " ".join(str(int(v)) for v in a.ravel())]


def render_text(report: dict) -> str:
    out = [f"tensorring report (schema {report['schema_version']})"]
    if report.get("source"):
        out.append(f"definition: {report['source']}")
    cfg = report.get("config", {})
    order = [f.name for f in fields(WorkbenchConfig)]
    keys = sorted(cfg, key=lambda k: (order.index(k) if k in order else len(order), k))
    out.append("config: " + ", ".join(f"{k}={cfg[k]}" for k in keys))
    for w in report.get("warnings", []):
        out.append(f"warning: {w}")
    if not report.get("items"):
        out.append("no tasks")
    for item in report.get("items", []):
        out.append(f"[{item['status'].upper()}] {item['task']}: {item['summary']}")
        for rep in item.get("reports", []):
            table = rep.get("table", {})
            if table:
                cols = sorted({c for row in table.values() for c in row})
                width = max(len(s) for s in table) + 2
                out.append("    " + "stratum".ljust(width) + "".join(c.rjust(18) for c in cols))
                for s, row in table.items():
                    out.append("    " + s.ljust(width)
                               + "".join(str(row.get(c, 0)).rjust(18) for c in cols))
            for d in rep.get("disagreements", []):
                out.append(f"    disagreement #{d['index']} ({d['stratum']}): "
                           f"lhs={d['lhs']} rhs={d['rhs']}")
                for key, val in d.get("data", {}).items():
                    out.append(f"      {key}:")
                    out.extend(_matrix_lines(val, "        "))
        wit = item.get("witness")
        if isinstance(wit, dict) and "maps" in wit:
            terms = " -> ".join("P" + "".join(str(i + 1) for i in t) if t else "0"
                                for t in wit["terms"])
            out.append(f"    witness complex (X at position {wit['split']}): {terms}")
        elif isinstance(wit, dict):
            out.append("    witness: " + ", ".join(f"{k}={v}" for k, v in wit.items()))
    timing = report.get("timing")
    if timing:
        out.append("timing: " + ", ".join(f"{k}={v:.3f}s" for k, v in timing.items()))
    out.append(f"exit code {report.get('exit_code', exit_code(report.get('items', [])))}")
    return "\n".join(out) + "\n"


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


# ----------------------------------------------------------------------------
# argparse


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tensorring",
                                 description="Exact workbench for tensor rings over F_p.")
    ap.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    sub = ap.add_subparsers(dest="verb", required=True)

    pre = sub.add_parser("preset", help="emit a definition file for a preset")
    pre.add_argument("name", choices=sorted(PRESETS))
    pre.add_argument("--n", type=int, default=3)
    pre.add_argument("--h", type=int, default=2)
    pre.add_argument("--i", type=int, default=1)
    pre.add_argument("--j", type=int, default=3)
    pre.add_argument("--p", type=int)
    pre.add_argument("-o", "--output")

    chk = sub.add_parser("check", help="run tasks on a definition file")
    chk.add_argument("file")
    chk.add_argument("task", nargs="*",
                     help="task words, e.g. 'pgf S1' or 'verify theorem-a' "
                          "(default: the file's task list)")
    chk.add_argument("--samples", type=int)
    chk.add_argument("--seed", type=int)
    chk.add_argument("--degrees", type=int)
    chk.add_argument("--format", choices=("text", "json"), default="text")
    chk.add_argument("--no-timing", action="store_true",
                     help="omit wall-clock timing so reports are byte-reproducible")
    chk.add_argument("-o", "--output", help="also write the JSON report here")

    ren = sub.add_parser("render", help="render a JSON report or definition as text")
    ren.add_argument("file")
    return ap


def _group_tasks(words: List[str]) -> List[str]:
    """['pgf', 'S1', 'condition-t'] -> ['pgf S1', 'condition-t']."""
    out: List[str] = []
    i = 0
    while i < len(words):
        w = words[i]
        if " " in w:
            out.append(w)
            i += 1
        elif w in ("pgf", "gf", "gp", "phi", "verify") and i + 1 < len(words):
            out.append(f"{w} {words[i + 1]}")
            i += 2
        else:
            out.append(w)
            i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = WorkbenchConfig.load(args.config or os.environ.get(CONFIG_ENV))
        if args.verb == "preset":
            kw = {"p": args.p if args.p is not None else cfg.p}
            if args.name != "triangular":
                kw.update(n=args.n, h=args.h, i=args.i, j=args.j)
            text = render(PRESETS[args.name](**kw))
            if args.output:
                with open(args.output, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return EXIT_PASS
        if args.verb == "render":
            with open(args.file) as fh:
                doc = json.load(fh)
            if "items" in doc:
                sys.stdout.write(render_text(doc))
            else:
                sys.stdout.write(render(parse(json.dumps(doc))))
            return EXIT_PASS
        # check
        with open(args.file) as fh:
            defn = parse(fh.read())
        over = {k: v for k, v in (("samples", args.samples), ("seed", args.seed),
                                  ("degrees", args.degrees)) if v is not None}
        cfg = replace(cfg, **over)
        tasks = _group_tasks(args.task) if args.task else list(defn.get("tasks") or [])
        probe = dict(defn, tasks=tasks)
        parse(json.dumps(probe))  # validates task names against the file
        report = run_check(defn, cfg, tasks, os.path.basename(args.file), not args.no_timing)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(dump_report(report))
        sys.stdout.write(dump_report(report) if args.format == "json" else render_text(report))
        return report["exit_code"]
    except (DefinitionError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
