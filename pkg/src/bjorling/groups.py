"""Three-dimensional Lorentzian Lie group models.

Each model carries an orthonormal left-invariant frame E1, E2, E3 with
signature (+, +, -), the structure constants of the frame bracket, the
derived connection table that drives the frame-field PDE system, and the
chart data (frame matrix A, domain guard, coordinate metric).

Conventions: ``C[a, b, c]`` is the c-component of [E_a, E_b] (0-based
indices).  The connection table gamma satisfies nabla_{E_a} E_b =
sum_c gamma[a, b, c] E_c and equals half of the Koszul combination
``L[a,b,c] = C[a,b,c] - C[b,c,a] e_a e_c - C[a,c,b] e_b e_c``.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, UnsupportedRecipe
from .series import USeries

SIGNATURE = np.array([1.0, 1.0, -1.0])


def lorentz_cross(y, w):
    """Frame-component cross product adapted to the (+, +, -) metric.

    Works on any triple of multiplicable components (floats, arrays, jets).
    Antisymmetric; the output is g-orthogonal to both inputs.
    """
    return (
        y[1] * w[2] - w[1] * y[2],
        y[2] * w[0] - w[2] * y[0],
        y[1] * w[0] - w[1] * y[0],
    )


def lorentz_dot(y, w):
    """Frame-component inner product y1*w1 + y2*w2 - y3*w3."""
    return y[0] * w[0] + y[1] * w[1] - y[2] * w[2]


def connection_from_structure(C: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Koszul table L and connection table gamma = L/2 from structure constants.

    The structure constants must be exactly antisymmetric in their lower
    pair.  Metric compatibility of the result (gamma[a,b,c] e_c =
    -gamma[a,c,b] e_b) is automatic and covered by tests.
    """
    C = np.asarray(C, dtype=float)
    if C.shape != (3, 3, 3):
        raise ValueError("structure constants must form a 3x3x3 table")
    if not np.array_equal(C, -np.transpose(C, (1, 0, 2))):
        raise ValueError("structure constants must be antisymmetric in a, b")
    e = SIGNATURE
    L = np.zeros((3, 3, 3))
    for a in range(3):
        for b in range(3):
            for c in range(3):
                L[a, b, c] = (
                    C[a, b, c]
                    - C[b, c, a] * e[a] * e[c]
                    - C[a, c, b] * e[b] * e[c]
                )
    return L, L / 2.0


class GroupModel:
    """Immutable bundle of one group's frame, chart and PDE data."""

    def __init__(
        self,
        name: str,
        structure_constants,
        frame_matrix_at=None,
        chart_guard=None,
        jet_frame_from_coords=None,
        jet_coords_from_frame=None,
        recipe: str | None = None,
        description: str = "",
    ):
        self.name = name
        self.C = np.asarray(structure_constants, dtype=float)
        self.L, self.gamma = connection_from_structure(self.C)
        self._frame_matrix_at = frame_matrix_at
        self._chart_guard = chart_guard or (lambda x: True)
        self._jet_frame_from_coords = jet_frame_from_coords
        self._jet_coords_from_frame = jet_coords_from_frame
        self.recipe = recipe
        self.description = description
        self._gamma_terms = [
            (a, b, c, self.gamma[a, b, c])
            for a in range(3)
            for b in range(3)
            for c in range(3)
            if self.gamma[a, b, c] != 0.0
        ]

    # chart ---------------------------------------------------------------

    def in_chart(self, x) -> bool:
        return bool(self._chart_guard(np.asarray(x, dtype=float)))

    def frame_matrix(self, x) -> tuple[np.ndarray, np.ndarray]:
        """Frame matrix A (columns are the frame fields in coordinates)
        and its inverse at one chart point."""
        x = np.asarray(x, dtype=float)
        if not self._chart_guard(x):
            raise DomainError(f"point {x.tolist()} outside the {self.name} chart")
        if self._frame_matrix_at is None:
            raise UnsupportedRecipe(f"group {self.name} has no frame matrix")
        return self._frame_matrix_at(x)

    def metric(self, x) -> np.ndarray:
        """Coordinate metric pulled back through the frame: Ainv^T diag Ainv."""
        _, ainv = self.frame_matrix(x)
        return ainv.T @ (SIGNATURE[:, None] * ainv)

    def christoffels(self, x, step: float | None = None) -> np.ndarray:
        """Coordinate Christoffel symbols by central differences of the metric.

        Returns Gamma[k, i, j], symmetric in (i, j).  Used only as the
        independent, coordinate-level certificate; nothing in the solver
        depends on it.
        """
        x = np.asarray(x, dtype=float)
        h = step if step is not None else 1e-5 * max(1.0, float(np.max(np.abs(x))))
        g0 = self.metric(x)
        dg = np.zeros((3, 3, 3))  # dg[l] = d g / d x_l
        for l in range(3):
            e = np.zeros(3)
            e[l] = h
            dg[l] = (self.metric(x + e) - self.metric(x - e)) / (2.0 * h)
        ginv = np.linalg.inv(g0)
        d = np.transpose(dg, (1, 2, 0))  # d[i, j, l] = d_l g_ij
        t = np.zeros((3, 3, 3))  # t[i, j, l] = d_i g_jl + d_j g_il - d_l g_ij
        for i in range(3):
            for j in range(3):
                for l in range(3):
                    t[i, j, l] = d[j, l, i] + d[i, l, j] - d[i, j, l]
        return 0.5 * np.einsum("kl,ijl->kij", ginv, t)

    # PDE -----------------------------------------------------------------

    def pde_quadratic(self, frame_data):
        """Quadratic right side G of the frame system d psi_c / dzbar + G_c = 0.

        G_c = sum_{a,b} gamma[a,b,c] conj(psi_a) psi_b, skipping zero table
        entries.  Works for series triples and scalar triples alike.
        """
        zero = frame_data[0] * 0.0
        out = [zero, zero, zero]
        for a, b, c, coef in self._gamma_terms:
            out[c] = out[c] + coef * (frame_data[a].conj() * frame_data[b])
        return tuple(out)

    # jets along a curve ----------------------------------------------------

    def frame_jet_from_coords(self, curve, w):
        """Apply A^{-1}(curve(u)) to a coordinate-component jet triple."""
        if self._jet_frame_from_coords is None:
            raise UnsupportedRecipe(
                f"group {self.name} has no frame matrix description"
            )
        return self._jet_frame_from_coords(curve, w)

    def coords_jet_from_frame(self, curve, w):
        """Apply A(curve(u)) to a frame-component jet triple."""
        if self._jet_coords_from_frame is None:
            raise UnsupportedRecipe(
                f"group {self.name} has no frame matrix description"
            )
        return self._jet_coords_from_frame(curve, w)

    def __repr__(self) -> str:
        return f"GroupModel({self.name!r})"


# ---------------------------------------------------------------------------
# built-in models


def heisenberg() -> GroupModel:
    """Heisenberg group, Lorentzian metric with timelike center direction.

    Chart is all of R^3.  Frame: E1 = dx - (y/2) dz, E2 = dy + (x/2) dz,
    E3 = dz, with [E1, E2] = E3.
    """
    C = np.zeros((3, 3, 3))
    C[0, 1, 2] = 1.0
    C[1, 0, 2] = -1.0

    def frame_matrix_at(x):
        a = np.array(
            [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-x[1] / 2.0, x[0] / 2.0, 1.0]]
        )
        ainv = np.array(
            [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [x[1] / 2.0, -x[0] / 2.0, 1.0]]
        )
        return a, ainv

    def jet_frame_from_coords(curve, w):
        third = 0.5 * curve[1] * w[0] - 0.5 * curve[0] * w[1] + w[2]
        return (w[0], w[1], third)

    def jet_coords_from_frame(curve, w):
        third = -0.5 * curve[1] * w[0] + 0.5 * curve[0] * w[1] + w[2]
        return (w[0], w[1], third)

    return GroupModel(
        "heisenberg",
        C,
        frame_matrix_at=frame_matrix_at,
        chart_guard=lambda x: True,
        jet_frame_from_coords=jet_frame_from_coords,
        jet_coords_from_frame=jet_coords_from_frame,
        recipe="heisenberg",
        description="Lorentzian Heisenberg group (entire chart)",
    )


def de_sitter() -> GroupModel:
    """De Sitter space as the Lorentzian upper halfspace x3 > 0.

    Frame: E_a = x3 * d/dx_a, with [E1, E3] = -E1 and [E2, E3] = -E2.
    """
    C = np.zeros((3, 3, 3))
    C[0, 2, 0] = -1.0
    C[2, 0, 0] = 1.0
    C[1, 2, 1] = -1.0
    C[2, 1, 1] = 1.0

    def frame_matrix_at(x):
        a = np.diag([x[2], x[2], x[2]])
        ainv = np.diag([1.0 / x[2], 1.0 / x[2], 1.0 / x[2]])
        return a, ainv

    def jet_frame_from_coords(curve, w):
        return (w[0] / curve[2], w[1] / curve[2], w[2] / curve[2])

    def jet_coords_from_frame(curve, w):
        return (w[0] * curve[2], w[1] * curve[2], w[2] * curve[2])

    return GroupModel(
        "desitter",
        C,
        frame_matrix_at=frame_matrix_at,
        chart_guard=lambda x: x[2] > 0.0,
        jet_frame_from_coords=jet_frame_from_coords,
        jet_coords_from_frame=jet_coords_from_frame,
        recipe="desitter",
        description="de Sitter space, halfspace chart x3 > 0",
    )


def h2xr() -> GroupModel:
    """Hyperbolic plane times a timelike line, halfplane chart x2 > 0.

    Frame: E1 = x2 dx1, E2 = x2 dx2, E3 = dx3, with [E1, E2] = -E1.
    """
    C = np.zeros((3, 3, 3))
    C[0, 1, 0] = -1.0
    C[1, 0, 0] = 1.0

    def frame_matrix_at(x):
        a = np.diag([x[1], x[1], 1.0])
        ainv = np.diag([1.0 / x[1], 1.0 / x[1], 1.0])
        return a, ainv

    def jet_frame_from_coords(curve, w):
        return (w[0] / curve[1], w[1] / curve[1], w[2])

    def jet_coords_from_frame(curve, w):
        return (w[0] * curve[1], w[1] * curve[1], w[2])

    return GroupModel(
        "h2xr",
        C,
        frame_matrix_at=frame_matrix_at,
        chart_guard=lambda x: x[1] > 0.0,
        jet_frame_from_coords=jet_frame_from_coords,
        jet_coords_from_frame=jet_coords_from_frame,
        recipe="h2xr",
        description="hyperbolic plane x a timelike line, chart x2 > 0",
    )


def generic_group(
    structure_constants,
    frame_exprs=None,
    chart_guard=None,
    name: str = "generic",
) -> GroupModel:
    """Group given by raw structure constants, optionally with a frame matrix.

    ``frame_exprs`` is a 3x3 nest of expression strings in x1, x2, x3
    (columns are the frame fields).  Without it only the frame-level
    residual machinery is available.  Reconstruction of a surface is never
    available for generic groups: there is no closed integration recipe.
    """
    from .expressions import evaluate_series  # local import, avoids a cycle

    frame_matrix_at = None
    jet_frame = None
    jet_coords = None
    if frame_exprs is not None:
        rows = [list(r) for r in frame_exprs]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("frame matrix description must be 3x3")

        def frame_matrix_at(x):
            env = {"x1": float(x[0]), "x2": float(x[1]), "x3": float(x[2])}
            a = np.array(
                [[evaluate_series(rows[i][j], env) for j in range(3)] for i in range(3)],
                dtype=float,
            )
            try:
                ainv = np.linalg.inv(a)
            except np.linalg.LinAlgError as exc:
                raise DomainError(f"frame matrix singular at {x}") from exc
            return a, ainv

        def _entry_jets(curve):
            order = min(c.order for c in curve)
            center = curve[0].center
            env = {"x1": curve[0], "x2": curve[1], "x3": curve[2]}
            out = []
            for i in range(3):
                row = []
                for j in range(3):
                    val = evaluate_series(rows[i][j], env)
                    if not isinstance(val, USeries):
                        val = USeries.constant(float(val), order, center)
                    row.append(val)
                out.append(row)
            return out

        def jet_coords(curve, w):
            m = _entry_jets(curve)
            return tuple(
                m[i][0] * w[0] + m[i][1] * w[1] + m[i][2] * w[2] for i in range(3)
            )

        def jet_frame(curve, w):
            m = _entry_jets(curve)
            det = (
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            )
            adj = [
                [
                    m[1][1] * m[2][2] - m[1][2] * m[2][1],
                    m[0][2] * m[2][1] - m[0][1] * m[2][2],
                    m[0][1] * m[1][2] - m[0][2] * m[1][1],
                ],
                [
                    m[1][2] * m[2][0] - m[1][0] * m[2][2],
                    m[0][0] * m[2][2] - m[0][2] * m[2][0],
                    m[0][2] * m[1][0] - m[0][0] * m[1][2],
                ],
                [
                    m[1][0] * m[2][1] - m[1][1] * m[2][0],
                    m[0][1] * m[2][0] - m[0][0] * m[2][1],
                    m[0][0] * m[1][1] - m[0][1] * m[1][0],
                ],
            ]
            return tuple(
                (adj[i][0] * w[0] + adj[i][1] * w[1] + adj[i][2] * w[2]) / det
                for i in range(3)
            )

    return GroupModel(
        name,
        structure_constants,
        frame_matrix_at=frame_matrix_at,
        chart_guard=chart_guard,
        jet_frame_from_coords=jet_frame,
        jet_coords_from_frame=jet_coords,
        recipe=None,
        description="user-supplied structure constants (residual checks only)",
    )


_BUILTINS = {"heisenberg": heisenberg, "desitter": de_sitter, "h2xr": h2xr}


def by_name(name: str) -> GroupModel:
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise ValueError(
            f"unknown group {name!r}; built-ins are {sorted(_BUILTINS)}"
        ) from None
