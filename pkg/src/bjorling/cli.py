"""Command-line front end.

Exit codes: 0 solved with all residuals in tolerance, 1 usage / I-O /
parse problems, 2 rejected problem (lightlike curve, causal mismatch,
violated invariant, unsupported group), 3 solved but residuals above
tolerance.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus, problemfile
from .errors import (
    BjorlingError,
    CausalMismatch,
    CharacteristicData,
    ConstraintDrift,
    DomainError,
    NonIntegrable,
    ProblemValidationError,
    SchemaError,
    UnsupportedRecipe,
)
from .solver import solve_bjorling

_REJECTIONS = (
    CharacteristicData,
    CausalMismatch,
    ProblemValidationError,
    UnsupportedRecipe,
    DomainError,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bjorling",
        description=(
            "Construct minimal surfaces in Lorentzian 3-dimensional Lie "
            "groups from curve-and-normal initial data, and verify them."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one problem file")
    p_solve.add_argument("problem", help="path to a problem JSON file")
    p_solve.add_argument("--order", type=int, default=None, help="series order override")
    p_solve.add_argument(
        "--tol",
        type=float,
        default=None,
        help="override the series and conformality acceptance tolerance",
    )
    p_solve.add_argument("--mesh", choices=("obj", "csv"), default=None)
    p_solve.add_argument("--out", default=".", help="output directory")

    p_ex = sub.add_parser("examples", help="list or materialize built-in examples")
    p_ex.add_argument("name", nargs="?", default=None)
    p_ex.add_argument("--out", default=".", help="output directory")

    p_mesh = sub.add_parser("export-mesh", help="mesh a stored solution file")
    p_mesh.add_argument("solution", help="path to a solution JSON file")
    p_mesh.add_argument("--format", choices=("obj", "csv"), required=True)
    p_mesh.add_argument("--out", required=True, help="output file")
    return parser


def _stem(path: Path) -> str:
    name = path.name
    if name.endswith(".json"):
        name = name[: -len(".json")]
    if name.endswith(".problem"):
        name = name[: -len(".problem")]
    return name


def _cmd_solve(args) -> int:
    path = Path(args.problem)
    overrides = None
    if args.tol is not None:
        overrides = {"series": args.tol, "conformality": args.tol}
    try:
        problem, _ = problemfile.load_problem(
            path, order_override=args.order, tolerance_overrides=overrides
        )
    except (OSError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        solution = solve_bjorling(problem)
    except _REJECTIONS as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return 2
    except (ConstraintDrift, NonIntegrable) as exc:
        print(f"solver consistency failure: {exc}", file=sys.stderr)
        return 3

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = _stem(path)
    solution_path = out_dir / f"{stem}.solution.json"
    report_path = out_dir / f"{stem}.report.json"
    problemfile.write_solution(solution, solution_path)
    problemfile.write_report(solution, report_path)
    written = [solution_path, report_path]
    if args.mesh:
        stored = problemfile.StoredSolution.load(solution_path)
        mesh = problemfile.build_mesh(stored)
        if mesh.clipped:
            print(
                f"warning: clipped {mesh.clipped} grid points outside the chart",
                file=sys.stderr,
            )
        mesh_path = out_dir / f"{stem}.surface.{args.mesh}"
        if args.mesh == "obj":
            problemfile.write_obj(mesh, mesh_path)
        else:
            problemfile.write_csv(mesh, mesh_path)
        written.append(mesh_path)

    report = solution.report
    for key, val in sorted(report.as_flat_dict().items()):
        if isinstance(val, float):
            print(f"{key} = {val:.3e}")
        else:
            print(f"{key} = {val}")
    for p in written:
        print(f"wrote {p}")
    if report.passes(problem.tolerances):
        return 0
    failing = []
    tol = problem.tolerances
    checks = (
        ("cone_residual", report.cone_residual, tol.cone),
        ("pde_residual", report.pde_residual, tol.series),
        ("boundary_curve_residual", report.boundary_curve_residual, tol.series),
        ("normal_residual", report.normal_residual, tol.series),
        ("conformality_residual", report.conformality_residual, tol.conformality),
        ("minimality_residual", report.minimality_residual, tol.minimality),
    )
    for name, val, bound in checks:
        if not val <= bound:
            failing.append(f"{name} = {val:.3e} > {bound:.3e}")
    if not report.strip_valid:
        failing.append("no validated strip")
    print("residual failure: " + "; ".join(failing), file=sys.stderr)
    return 3


def _cmd_examples(args) -> int:
    if args.name is None:
        for info in corpus.list_examples():
            print(f"{info.example_id:28s} {info.group:11s} {info.description}")
        return 0
    try:
        doc = corpus.build_problem_dict(args.name)
        stub = corpus.reference_stub(args.name)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 1
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    problem_path = out_dir / f"{args.name}.problem.json"
    reference_path = out_dir / f"{args.name}.reference.json"
    problem_path.write_text(json.dumps(doc, indent=1), encoding="utf-8")
    reference_path.write_text(json.dumps(stub, indent=1), encoding="utf-8")
    print(f"wrote {problem_path}")
    print(f"wrote {reference_path}")
    return 0


def _cmd_export_mesh(args) -> int:
    try:
        stored = problemfile.StoredSolution.load(args.solution)
    except (OSError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    mesh = problemfile.build_mesh(stored)
    if mesh.clipped:
        print(
            f"warning: clipped {mesh.clipped} grid points outside the chart",
            file=sys.stderr,
        )
    out = Path(args.out)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)
    if args.format == "obj":
        problemfile.write_obj(mesh, out)
    else:
        problemfile.write_csv(mesh, out)
    print(f"wrote {out} ({mesh.vertices.shape[0]} vertices, {len(mesh.faces)} faces)")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; keep 1 for usage per our contract
        return 1 if exc.code not in (0, None) else 0
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "examples":
            return _cmd_examples(args)
        if args.command == "export-mesh":
            return _cmd_export_mesh(args)
    except BjorlingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
