"""Command-line entry points.

Exit status contract: 0 = clean run, 1 = conclusion violation (a theorem
alarm), 2 = input error.  An unsolvable instance is a clean outcome for
``solve``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import canvas as canvasmod
from . import instance as instmod
from .coloring import (
    check_cor_distflaws_hypotheses,
    check_thm_2flaws_hypotheses,
    check_thm_cyl_hypotheses,
    compute_c,
    is_pc_disjoint,
)
from .common import FraccolError, InputError, Subgraph
from .harness.suites import CSV_HEADER, SUITES, run_suite, suite_defaults
from .solver import ExtensionProblem, iter_solutions, solve

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2

THEOREMS = ("thm-cyl", "cor-distflaws", "thm-2flaws", "thm-canvas", "hypcyl")


def _default_threads() -> int:
    env = os.environ.get("FRACCOL_THREADS")
    return int(env) if env else 1


def _print_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def cmd_solve(args: argparse.Namespace) -> int:
    inst = instmod.load(args.instance)
    sol = solve(ExtensionProblem(inst.pm, inst.lists))
    if args.json:
        doc = {"instance": instmod.emit(inst), "sat": sol is not None}
        if sol is not None:
            doc["coloring"] = {str(v): sorted(s) for v, s in sorted(sol.items())}
        _print_json(doc)
    elif sol is None:
        print(f"no (L:{inst.a})-coloring")
    else:
        for v in sorted(sol):
            print(f"{v}: {sorted(sol[v])}")
    return EXIT_OK


def _check_two_faces(inst: instmod.Instance, one_face: bool) -> dict:
    if inst.f1 is None or (not one_face and inst.f2 is None):
        raise InputError("instance must mark f1" + ("" if one_face else " and f2"))
    if one_face:
        rep = check_cor_distflaws_hypotheses(inst.pm, inst.f1, inst.lists)
    else:
        rep = check_thm_cyl_hypotheses(inst.pm, inst.f1, inst.f2, inst.lists)
    doc = {"hypotheses": rep.to_json()}
    if rep.passed:
        sat = solve(ExtensionProblem(inst.pm, inst.lists)) is not None
        doc["conclusion"] = {"solver": "SAT" if sat else "UNSAT", "passed": sat}
    return doc


def _check_two_flaws(inst: instmod.Instance) -> dict:
    if inst.path is None:
        raise InputError("instance must mark a path")
    rep = check_thm_2flaws_hypotheses(inst.pm, inst.path, inst.lists)
    doc = {"hypotheses": rep.to_json()}
    if not rep.passed:
        return doc
    c = compute_c(inst.pm, inst.path, inst.lists)
    path_sub = Subgraph.of(
        inst.path, [(inst.path[i], inst.path[i + 1]) for i in range(len(inst.path) - 1)]
    )
    p0 = inst.path[0]
    total = extended = 0
    failing = None
    path_lists = inst.lists.drop(set(inst.lists.lists) - set(inst.path))
    from .planemap import restrict_to

    path_map = restrict_to(inst.pm, path_sub)
    for psi in iter_solutions(path_map, path_lists):
        if not is_pc_disjoint(psi, p0, c):
            continue
        total += 1
        if solve(ExtensionProblem(inst.pm, inst.lists, path_sub, psi)) is not None:
            extended += 1
        elif failing is None:
            failing = {str(v): sorted(s) for v, s in sorted(psi.items())}
    doc["conclusion"] = {
        "c": sorted(c),
        "eligible_path_colorings": total,
        "extended": extended,
        "passed": extended == total,
    }
    if failing:
        doc["conclusion"]["failing"] = failing
    return doc


def _check_canvas(inst: instmod.Instance) -> dict:
    if inst.marked is None:
        raise InputError("instance must mark a subgraph")
    t = canvasmod.Canvas(inst.a, inst.pm, inst.marked, inst.lists)
    shape, normal = canvasmod.classify(t)
    pot = canvasmod.potentials(t)
    from .solver import is_critical

    rep = is_critical(inst.pm, inst.marked, inst.lists)
    doc = {
        "hypotheses": {
            "shape": shape,
            "normal": normal,
            "components": t.components,
            "critical": rep.critical,
            "passed": shape == "non-singular" and t.components <= 2 and rep.critical,
        },
        "potentials": pot.to_json(),
    }
    if doc["hypotheses"]["passed"]:
        doc["conclusion"] = {
            "d88": pot.d88,
            "bound": canvasmod.BOUND_D88,
            "passed": pot.d88 >= canvasmod.BOUND_D88,
        }
    return doc


def _check_hypcyl(inst: instmod.Instance) -> dict:
    if inst.f1 is None or inst.f2 is None:
        raise InputError("instance must mark f1 and f2")
    c1 = inst.pm.face_vertices(inst.f1)
    c2 = inst.pm.face_vertices(inst.f2)
    rep = canvasmod.verify_hypcyl(inst.pm, c1, c2, inst.lists)
    return {
        "hypotheses": {"passed": True},
        "conclusion": dict(rep.to_json(), passed=rep.euler_ok and rep.bound_ok),
    }


def cmd_check(args: argparse.Namespace) -> int:
    inst = instmod.load(args.instance)
    if args.theorem == "thm-cyl":
        doc = _check_two_faces(inst, one_face=False)
    elif args.theorem == "cor-distflaws":
        doc = _check_two_faces(inst, one_face=True)
    elif args.theorem == "thm-2flaws":
        doc = _check_two_flaws(inst)
    elif args.theorem == "thm-canvas":
        doc = _check_canvas(inst)
    else:
        doc = _check_hypcyl(inst)
    doc["theorem"] = args.theorem
    if args.json:
        _print_json(doc)
    else:
        hyp = doc["hypotheses"]
        if not hyp.get("passed", True):
            failed = [c["clause"] for c in hyp.get("clauses", []) if not c["passed"]]
            print(f"hypotheses: FAIL ({', '.join(failed) or 'preconditions'}); conclusion not attempted")
        else:
            concl = doc.get("conclusion", {})
            verdict = "PASS" if concl.get("passed") else "FAIL"
            if "solver" in concl:
                extra = concl["solver"]
            elif "d88" in concl:
                extra = f"d88={concl['d88']}"
            elif "extended" in concl:
                extra = f"{concl['extended']}/{concl['eligible_path_colorings']} precolorings extend"
            elif "euler_value" in concl:
                extra = f"euler={concl['euler_value']}, |V|={concl['v']}<={concl['bound']}"
            else:
                extra = ""
            print(f"hypotheses: PASS; conclusion: {verdict}" + (f" ({extra})" if extra else ""))
    if "conclusion" in doc and not doc["conclusion"].get("passed", True):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_suite(args: argparse.Namespace) -> int:
    params = {}
    defaults = suite_defaults(args.name)
    if args.nmax is not None:
        params["nmax"] = args.nmax
    if args.a is not None:
        values = [int(x) for x in args.a.split(",")]
        params["a"] = values if isinstance(defaults.get("a"), list) else values[0]
    if args.universe is not None:
        params["universe"] = args.universe
    if args.seed is not None:
        params["seed"] = args.seed
    if args.samples is not None:
        params["samples"] = args.samples
    if args.budget is not None:
        params["budget"] = args.budget
        params["enum_cap"] = max(args.budget * 10, defaults.get("enum_cap", 0)) if args.budget else 0
    if args.threads is not None:
        params["threads"] = args.threads
    elif "threads" in defaults:
        params["threads"] = _default_threads()
    if args.timeout_per_instance is not None:
        params["node_cap"] = int(args.timeout_per_instance * 2_000_000)
    if args.import_path is not None:
        params["import"] = args.import_path
    unknown = set(params) - set(defaults) - {"import", "node_cap"}
    if unknown:
        raise InputError(f"suite {args.name} does not take: {', '.join(sorted(unknown))}")
    result = run_suite(args.name, params)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        base = os.path.join(args.out, args.name)
        with open(base + ".json", "w", encoding="utf-8") as fh:
            fh.write(result.to_json_text())
        with open(base + ".csv", "w", encoding="utf-8") as fh:
            fh.write(CSV_HEADER + "\n" + result.csv_line() + "\n")
    if args.json:
        _print_json(result.to_json())
    else:
        print(CSV_HEADER)
        print(result.csv_line())
        if result.violations:
            print(f"FIRST VIOLATION: {json.dumps(result.violations[0].to_json(), sort_keys=True)}")
    return EXIT_VIOLATION if result.violations else EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    inst = instmod.load(args.instance)
    if args.dot:
        sys.stdout.write(instmod.to_dot(inst))
    if args.json:
        _print_json(instmod.emit(inst))
    if not args.dot and not args.json:
        raise InputError("nothing to export: pass --dot and/or --json")
    return EXIT_OK


def _bench_inline(args: argparse.Namespace) -> int:
    import subprocess

    rows = {}
    for backend in ("numba", "py"):
        env = dict(os.environ, FRACCOL_KERNEL=backend)
        try:
            out = subprocess.run(
                [sys.executable, "-m", "fraccol._benchwork", str(args.nmax), str(args.repeat)],
                env=env,
                capture_output=True,
                text=True,
                check=True,
            ).stdout.split()
        except subprocess.CalledProcessError as exc:
            print(f"{backend}: failed ({exc.stderr.strip().splitlines()[-1] if exc.stderr else exc})")
            continue
        rows[backend] = (int(out[1]), float(out[2]))
        n, dt = rows[backend]
        print(f"{backend:6s}: {n} solves in {dt:.3f}s ({1e6 * dt / n:.1f} us/solve)")
    if len(rows) == 2:
        print(f"speedup: {rows['py'][1] / rows['numba'][1]:.1f}x")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fraccol", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide an instance and print a coloring or UNSAT")
    p.add_argument("instance")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("check", help="run a theorem's hypothesis checker and conclusion")
    p.add_argument("instance")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("suite", help="run a verification suite")
    p.add_argument("name", choices=sorted(SUITES))
    p.add_argument("--nmax", type=int)
    p.add_argument("--a", type=str, help="comma-separated fold parameters, e.g. 1,2")
    p.add_argument("--universe", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--budget", type=int, help="per-combo conclusion budget; 0 = unlimited")
    p.add_argument("--threads", type=int, help="worker threads (default $FRACCOL_THREADS or 1)")
    p.add_argument("--timeout-per-instance", type=float, dest="timeout_per_instance",
                   help="approximate per-solve cap in seconds (mapped to a node budget)")
    p.add_argument("--import", dest="import_path", help="planar-code file replacing the generated corpus")
    p.add_argument("--out", help="directory for result JSON + CSV")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_suite)

    p = sub.add_parser("export", help="export an instance as DOT and/or JSON")
    p.add_argument("instance")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("bench", help="compare the numba kernel against the pure fallback")
    p.add_argument("--nmax", type=int, default=7)
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(fn=_bench_inline)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FraccolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
