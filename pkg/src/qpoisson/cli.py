"""Command line: verify scenarios, compute harmonic spaces, run the theorem suite.

Verbs::

    qpoisson verify   FILE...   axiom deviations only
    qpoisson harmonic FILE...   plus ergodicity, non-degeneracy and the harmonic algebra
    qpoisson suite    FILE...   plus every theorem check and the classical oracle
    qpoisson battery [FILE...]  the suite over the built-in corpus, shipped files and FILEs

The exit code is 0 exactly when every scenario report is ok, and it is
computed from the report alone.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .checks import AxiomError
from .classical import OracleError, cross_check
from .corpus import builtin_corpus, shipped_files
from .harmonic import HarmonicError
from .numeric import DEFAULT_TOL, DecompositionError, Tolerance
from .scenario import ScenarioSchemaError, build_scenario, to_pairs
from .theorems import FAIL, NONDEGENERACY_NOTE, ScenarioAnalysis, run_theorem_suite

REPORT_SCHEMA = 1
TOLERANCE_ENV = "QPOISSON_TOLERANCE"
VERBS = ("verify", "harmonic", "suite", "battery")
EXPECTATION_KEYS = ("ergodic", "nondegenerate", "dim_H")


def _read(path: str) -> tuple[dict | None, str | None]:
    try:
        return json.loads(Path(path).read_text()), None
    except (OSError, json.JSONDecodeError) as exc:
        return None, f"cannot read scenario: {exc}"


def _failure(report: dict, message: str) -> dict:
    report["ok"] = False
    report.setdefault("failures", []).append(message)
    return report


def analyze(doc: dict, verb: str, tol: Tolerance = DEFAULT_TOL, seed: int = 0, max_dim: int = 64,
            source: str = "") -> dict:
    """Run one scenario through the pipeline up to ``verb``; returns a JSON-ready report."""
    start = time.perf_counter()
    report = {"name": doc.get("name", source) if isinstance(doc, dict) else source,
              "source": source, "ok": True, "failures": []}
    try:
        _analyze(doc, verb, tol, seed, max_dim, report)
    except ScenarioSchemaError as exc:
        _failure(report, str(exc))
    except AxiomError as exc:
        _failure(report, f"verification failed: {exc}")
    except (HarmonicError, DecompositionError, OracleError, ValueError) as exc:
        _failure(report, f"{type(exc).__name__}: {exc}")
    report["wall_time"] = round(time.perf_counter() - start, 6)
    return report


def _analyze(doc, verb, tol, seed, max_dim, report):
    s = build_scenario(doc, tol, verify=False)
    dims = {"dim_A": s.hopf.dim, "dim_N": s.action.target.dim}
    report.update(dims)
    for k, d in dims.items():
        if d > max_dim:
            _failure(report, f"{k} = {d} exceeds --max-dim {max_dim}")
            return
    reps = s.verify(tol)
    report["verification"] = {k: r.to_dict() for k, r in reps.items()}
    for k, r in reps.items():
        if not r.ok:
            a = r.failures[0]
            _failure(report, f"verification failed: {k} axiom '{a}' violated (deviation {r.deviations[a]:.3e})")
    if not report["ok"] or verb == "verify":
        return

    an = ScenarioAnalysis(s.action, s.measure, tol, seed)
    report.update({
        "ergodic": an.ergodic,
        "dim_fixed_point_algebra": an.fixed_points.shape[1],
        "nondegenerate": an.nondegenerate,
        "support_ranks": an.support_ranks,
        "dim_H": an.harmonic.dim,
        "markov": {"unital": an.markov.checks.get("unital"), "cp_margin": an.markov.checks.get("cp_margin"),
                   "intertwining": an.markov.checks.get("intertwining")},
        "choi_effros": {"table": to_pairs(an.harmonic.table), "unit": to_pairs(an.harmonic.unit),
                        "invol": to_pairs(an.harmonic.invol),
                        "deviations": {k: float(v) for k, v in an.harmonic.deviations.items()}},
    })
    if max(an.harmonic.deviations.values(), default=0.0) > tol.eps_compare:
        _failure(report, "Choi-Effros algebra axioms violated")
    for key in EXPECTATION_KEYS:
        if key in s.expected and s.expected[key] != report[key]:
            _failure(report, f"expectation mismatch: {key} expected {s.expected[key]}, computed {report[key]}")
    report["expected"] = dict(s.expected)
    if verb == "harmonic":
        return

    result = run_theorem_suite(s.action, s.measure, tol, seed)
    report["verdicts"] = {k: v.to_dict() for k, v in result["verdicts"].items()}
    for k, v in result["verdicts"].items():
        if v.status == FAIL:
            _failure(report, f"theorem check failed: {k}")
    if s.classical is not None:
        c = s.classical
        oracle = cross_check(c["table"], c["n_points"], c["act"], c["weights"], an.markov.matrix,
                             an.harmonic.basis)
        report["oracle"] = {k: (bool(v) if k == "ok" else v) for k, v in oracle.items()}
        if not oracle["ok"]:
            _failure(report, "classical oracle mismatch")


def _worker(args):
    doc, verb, tol, seed, max_dim, source, error = args
    if error is not None:
        return {"name": source, "source": source, "ok": False, "failures": [error], "wall_time": 0.0}
    return analyze(doc, verb, tol, seed, max_dim, source)


def exit_code(report: dict) -> int:
    """0 iff every scenario report is ok."""
    return 0 if report["scenarios"] and all(r["ok"] for r in report["scenarios"]) else 1


def run(paths: list[str], verb: str, tol: Tolerance = DEFAULT_TOL, seed: int = 0, max_dim: int = 64,
        jobs: int = 1, include_builtin: bool = True) -> dict:
    """Assemble the report for ``verb`` over the given files (and the corpus for ``battery``)."""
    stage = "suite" if verb == "battery" else verb
    tasks = []
    if verb == "battery":
        if include_builtin:
            tasks += [(d, stage, tol, seed, max_dim, "builtin", None) for d in builtin_corpus()]
        paths = [str(p) for p in shipped_files()] + list(paths)
    for p in paths:
        doc, err = _read(p)
        tasks.append((doc, stage, tol, seed, max_dim, p, err))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map keeps input order whatever the completion order
            scenarios = list(pool.map(_worker, tasks, chunksize=8))
    else:
        scenarios = [_worker(t) for t in tasks]
    passed = sum(r["ok"] for r in scenarios)
    report = {
        "report_schema": REPORT_SCHEMA,
        "verb": verb,
        "nondegeneracy_definition": NONDEGENERACY_NOTE if verb != "verify" else None,
        "tolerance": {"eps_kernel": tol.eps_kernel, "eps_psd": tol.eps_psd, "eps_compare": tol.eps_compare},
        "seed": seed,
        "scenarios": scenarios,
        "summary": {"total": len(scenarios), "passed": passed, "failed": len(scenarios) - passed,
                    "wall_time": round(sum(r["wall_time"] for r in scenarios), 3)},
    }
    report["summary"]["first_failure"] = next(
        (f"{r['name']}: {r['failures'][0]}" for r in scenarios if not r["ok"]), None)
    return report


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"not serializable: {type(obj)}")


def format_json(report: dict) -> str:
    return json.dumps(report, indent=1, default=_json_default)


def format_text(report: dict) -> str:
    lines = []
    for r in report["scenarios"]:
        status = "PASS" if r["ok"] else "FAIL"
        bits = []
        for key in ("ergodic", "nondegenerate"):
            if key in r:
                bits.append(key if r[key] else f"not {key}")
        if "dim_H" in r:
            bits.append(f"dim H = {r['dim_H']}")
        if "verdicts" in r:
            counts = {}
            for v in r["verdicts"].values():
                counts[v["verdict"]] = counts.get(v["verdict"], 0) + 1
            bits.append(", ".join(f"{n} {k}" for k, n in sorted(counts.items())))
        if "oracle" in r:
            bits.append("oracle " + ("match" if r["oracle"]["ok"] else "MISMATCH"))
        if report["verb"] == "verify" and "verification" in r:
            worst = max(v["deviations"] and max(v["deviations"].values()) or 0.0
                        for v in r["verification"].values())
            bits.append(f"max deviation {worst:.1e}")
        lines.append(f"{status}  {r['name']}  [{'; '.join(bits)}]  ({r['wall_time']:.2f}s)")
        for f in r["failures"]:
            lines.append(f"      {f}")
    s = report["summary"]
    lines.append(f"{s['passed']}/{s['total']} scenarios passed in {s['wall_time']:.1f}s")
    if s["first_failure"]:
        lines.append(f"first failure: {s['first_failure']}")
    if report.get("nondegeneracy_definition"):
        lines.append(f"note: {report['nondegeneracy_definition']}")
    return "\n".join(lines)


def _tolerance(flag: float | None) -> Tolerance:
    if flag is not None:
        return DEFAULT_TOL.with_compare(flag)
    env = os.environ.get(TOLERANCE_ENV)
    if env:
        return DEFAULT_TOL.with_compare(float(env))
    return DEFAULT_TOL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qpoisson", description=__doc__.split("\n")[0])
    p.add_argument("verb", choices=VERBS)
    p.add_argument("paths", nargs="*", help="scenario JSON files")
    p.add_argument("--tolerance", type=float, default=None,
                   help=f"comparison tolerance eps_compare (default 1e-8, or ${TOLERANCE_ENV})")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0, help="seed for randomly sampled states")
    p.add_argument("--max-dim", type=int, default=64, help="refuse algebras larger than this")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for the battery")
    p.add_argument("--no-builtin", action="store_true", help="battery: skip the built-in corpus")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verb != "battery" and not args.paths:
        build_parser().error(f"'{args.verb}' needs at least one scenario file")
    try:
        tol = _tolerance(args.tolerance)
    except ValueError as exc:
        build_parser().error(str(exc))
    report = run(args.paths, args.verb, tol, args.seed, args.max_dim, args.jobs, not args.no_builtin)
    text = format_json(report) if args.report == "json" else format_text(report)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    code = exit_code(report)
    if code and args.out:
        print(f"first failure: {report['summary']['first_failure']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
