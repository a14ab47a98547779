"""Problem and solution files, report serialization, and mesh export.

Problem files are flat JSON documents; unknown keys are rejected so typos
fail loudly.  Solution files dump the raw coefficient tables, which is
enough to re-evaluate the surface anywhere without re-solving.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import GridSpec, ProblemKind, Tolerances
from .errors import SchemaError
from .expressions import evaluate_jet
from .groups import GroupModel, by_name, generic_group, lorentz_dot
from .series import BiSeries, USeries
from .solver import BjorlingProblem, BjorlingSolution

_REQUIRED_KEYS = {"group", "mode", "beta", "V", "order", "grid"}
_OPTIONAL_KEYS = {
    "schema_version",
    "params",
    "u0",
    "tolerances",
    "name",
    "description",
    "structure_constants",
    "frame_matrix",
}
_GRID_KEYS = {"u_min", "u_max", "v_min", "v_max", "nu", "nv"}
_TOL_KEYS = {
    "cone",
    "causal",
    "compat",
    "series",
    "conformality",
    "minimality",
    "fd_step",
}


def _jet_entry(entry, order: int, center: float, params: dict, label: str) -> USeries:
    if isinstance(entry, str):
        return evaluate_jet(entry, order, center, params)
    if isinstance(entry, dict) and set(entry) == {"coeffs"}:
        coeffs = np.asarray(entry["coeffs"], dtype=float)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise SchemaError(f"{label}: coefficient list must be 1-D and nonempty")
        # The list length is the jet's order: padding with zeros would
        # claim accuracy the file does not contain.
        return USeries(coeffs[: order + 1], center)
    if isinstance(entry, (int, float)):
        return USeries.constant(float(entry), order, center)
    raise SchemaError(
        f"{label}: expected an expression string, a number, or "
        '{"coeffs": [...]}'
    )


def _resolve_group(doc: dict) -> GroupModel:
    name = doc["group"]
    if name == "generic":
        if "structure_constants" not in doc:
            raise SchemaError("generic groups need an inline structure_constants table")
        return generic_group(
            doc["structure_constants"], frame_exprs=doc.get("frame_matrix")
        )
    if "structure_constants" in doc or "frame_matrix" in doc:
        raise SchemaError(
            "structure_constants / frame_matrix apply only to group 'generic'"
        )
    try:
        return by_name(name)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def problem_from_dict(
    doc: dict,
    order_override: int | None = None,
    tolerance_overrides: dict | None = None,
) -> BjorlingProblem:
    if not isinstance(doc, dict):
        raise SchemaError("problem document must be a JSON object")
    unknown = set(doc) - _REQUIRED_KEYS - _OPTIONAL_KEYS
    if unknown:
        raise SchemaError(f"unknown problem keys: {sorted(unknown)}")
    missing = _REQUIRED_KEYS - set(doc)
    if missing:
        raise SchemaError(f"missing problem keys: {sorted(missing)}")

    grid_doc = doc["grid"]
    if not isinstance(grid_doc, dict) or set(grid_doc) != _GRID_KEYS:
        raise SchemaError(f"grid must have exactly the keys {sorted(_GRID_KEYS)}")
    grid = GridSpec(
        float(grid_doc["u_min"]),
        float(grid_doc["u_max"]),
        float(grid_doc["v_min"]),
        float(grid_doc["v_max"]),
        int(grid_doc["nu"]),
        int(grid_doc["nv"]),
    )

    tol_doc = dict(doc.get("tolerances") or {})
    unknown_tol = set(tol_doc) - _TOL_KEYS
    if unknown_tol:
        raise SchemaError(f"unknown tolerance keys: {sorted(unknown_tol)}")
    if tolerance_overrides:
        tol_doc.update(tolerance_overrides)
    tolerances = Tolerances().merged({k: float(v) for k, v in tol_doc.items()})

    try:
        kind = ProblemKind.from_string(doc["mode"])
    except ValueError as exc:
        raise SchemaError(str(exc)) from None

    order = int(order_override if order_override is not None else doc["order"])
    center = float(doc.get("u0", 0.5 * (grid.u_min + grid.u_max)))
    params = {str(k): float(v) for k, v in (doc.get("params") or {}).items()}

    beta_doc, field_doc = doc["beta"], doc["V"]
    for label, entries in (("beta", beta_doc), ("V", field_doc)):
        if not isinstance(entries, list) or len(entries) != 3:
            raise SchemaError(f"{label} must be a list of three components")

    # Curve jets carry one extra order so differentiated data is full order.
    curve = tuple(
        _jet_entry(beta_doc[i], order + 1, center, params, f"beta[{i}]")
        for i in range(3)
    )
    field = tuple(
        _jet_entry(field_doc[i], order + 1, center, params, f"V[{i}]")
        for i in range(3)
    )
    return BjorlingProblem(
        group=_resolve_group(doc),
        curve=curve,
        normal_field=field,
        kind=kind,
        order=order,
        grid=grid,
        tolerances=tolerances,
    )


def load_problem(
    path,
    order_override: int | None = None,
    tolerance_overrides: dict | None = None,
) -> tuple[BjorlingProblem, dict]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc.msg})") from None
    return problem_from_dict(doc, order_override, tolerance_overrides), doc


# ---------------------------------------------------------------------------
# solution files


def solution_payload(sol: BjorlingSolution) -> dict:
    return {
        "schema_version": 1,
        "group": sol.group.name,
        "mode": sol.kind.value,
        "order": sol.order,
        "center_u": sol.center,
        "base_point": sol.base.tolist(),
        "grid": {
            "u_min": sol.grid.u_min,
            "u_max": sol.grid.u_max,
            "v_min": sol.grid.v_min,
            "v_max": sol.grid.v_max,
            "nu": sol.grid.nu,
            "nv": sol.grid.nv,
        },
        "frame_data": [
            {"re": comp.re.coeffs.tolist(), "im": comp.im.coeffs.tolist()}
            for comp in sol.frame_data
        ],
        "surface": [f.coeffs.tolist() for f in sol.surface],
        "report": sol.report.as_flat_dict(),
    }


def write_solution(sol: BjorlingSolution, path) -> None:
    Path(path).write_text(
        json.dumps(solution_payload(sol), indent=1), encoding="utf-8"
    )


def write_report(sol: BjorlingSolution, path) -> None:
    Path(path).write_text(
        json.dumps(sol.report.as_flat_dict(), indent=1, sort_keys=True),
        encoding="utf-8",
    )


@dataclass
class StoredSolution:
    """Solution file contents rehydrated enough to evaluate and mesh."""

    group: GroupModel
    kind: ProblemKind
    surface: tuple
    grid: GridSpec
    report: dict

    @staticmethod
    def load(path) -> "StoredSolution":
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON ({exc.msg})") from None
        try:
            grid_doc = doc["grid"]
            grid = GridSpec(
                float(grid_doc["u_min"]),
                float(grid_doc["u_max"]),
                float(grid_doc["v_min"]),
                float(grid_doc["v_max"]),
                int(grid_doc["nu"]),
                int(grid_doc["nv"]),
            )
            center = float(doc["center_u"])
            surface = tuple(
                BiSeries(np.asarray(tab, dtype=float), center)
                for tab in doc["surface"]
            )
            kind = ProblemKind.from_string(doc["mode"])
            group = by_name(doc["group"])
            report = doc.get("report", {})
        except (KeyError, ValueError, TypeError) as exc:
            raise SchemaError(f"{path}: malformed solution file ({exc})") from None
        return StoredSolution(group, kind, surface, grid, report)


# ---------------------------------------------------------------------------
# meshes


@dataclass
class SurfaceMesh:
    vertices: np.ndarray  # (n, 3) chart coordinates
    uv: np.ndarray  # (n, 2) parameters, row-major in (u, v)
    residual: np.ndarray  # (n,) per-vertex conformality defect
    faces: list  # quads as 4-tuples of 0-based vertex indices
    clipped: int  # count of grid points outside the chart


def build_mesh(stored: StoredSolution) -> SurfaceMesh:
    """Evaluate the stored surface on its grid and assemble quads.

    Grid points that violate the chart guard are clipped: they get no
    vertex, and no face touches them.  Ordering is row-major in (u, v),
    deterministic.
    """
    us, vs = stored.grid.us(), stored.grid.vs()
    pts = [f.eval_grid(us, vs) for f in stored.surface]
    fu = [f.du() for f in stored.surface]
    fv = [f.dv() for f in stored.surface]
    fug = [f.eval_grid(us, vs) for f in fu]
    fvg = [f.eval_grid(us, vs) for f in fv]
    sigma = stored.kind.sigma

    nu, nv = stored.grid.nu, stored.grid.nv
    index = -np.ones((nu, nv), dtype=int)
    vertices, uv, residual = [], [], []
    clipped = 0
    for i in range(nu):
        for j in range(nv):
            x = np.array([pts[0][i, j], pts[1][i, j], pts[2][i, j]])
            if not stored.group.in_chart(x):
                clipped += 1
                continue
            _, ainv = stored.group.frame_matrix(x)
            vec_u = ainv @ np.array([fug[0][i, j], fug[1][i, j], fug[2][i, j]])
            vec_v = ainv @ np.array([fvg[0][i, j], fvg[1][i, j], fvg[2][i, j]])
            defect = abs(lorentz_dot(vec_u, vec_v)) + abs(
                lorentz_dot(vec_u, vec_u) + sigma * lorentz_dot(vec_v, vec_v)
            )
            index[i, j] = len(vertices)
            vertices.append(x)
            uv.append((us[i], vs[j]))
            residual.append(defect)
    faces = []
    for i in range(nu - 1):
        for j in range(nv - 1):
            corners = (index[i, j], index[i + 1, j], index[i + 1, j + 1], index[i, j + 1])
            if all(k >= 0 for k in corners):
                faces.append(corners)
    return SurfaceMesh(
        vertices=np.asarray(vertices, dtype=float).reshape(-1, 3),
        uv=np.asarray(uv, dtype=float).reshape(-1, 2),
        residual=np.asarray(residual, dtype=float),
        faces=faces,
        clipped=clipped,
    )


def write_obj(mesh: SurfaceMesh, path) -> None:
    lines = []
    for x in mesh.vertices:
        lines.append(f"v {x[0]:.17g} {x[1]:.17g} {x[2]:.17g}")
    for quad in mesh.faces:
        a, b, c, d = (k + 1 for k in quad)  # OBJ indices are 1-based
        lines.append(f"f {a} {b} {c} {d}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_csv(mesh: SurfaceMesh, path) -> None:
    lines = ["u,v,x1,x2,x3,residual"]
    for (u, v), x, r in zip(mesh.uv, mesh.vertices, mesh.residual):
        lines.append(
            f"{u:.17g},{v:.17g},{x[0]:.17g},{x[1]:.17g},{x[2]:.17g},{r:.17g}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
