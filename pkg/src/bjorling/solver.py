"""Curve-and-normal (Bjorling) problems and their power-series solution.

Pipeline: validate the data, classify the curve's causal character, build
the initial frame-field jet on v = 0, march the frame system order by
order in v, then integrate the group's closed reconstruction recipe to get
the immersion as a real series triple.  Verification lives in `verify`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .config import CurveClass, GridSpec, ProblemKind, Tolerances
from .errors import (
    CausalMismatch,
    CharacteristicData,
    ConstraintDrift,
    ProblemValidationError,
    UnsupportedRecipe,
)
from .groups import GroupModel, lorentz_cross, lorentz_dot
from .scalars import Mode
from .series import BiSeries, KSeries, USeries, antiderivative_from_partials


@dataclass(frozen=True)
class BjorlingProblem:
    """One solvable problem: a group, a curve with a unit normal field,
    the causal kind, and solver parameters.

    The curve is given in chart coordinates, the field in frame
    components, both as jets about the same center.
    """

    group: GroupModel
    curve: tuple[USeries, USeries, USeries]
    normal_field: tuple[USeries, USeries, USeries]
    kind: ProblemKind
    order: int = 12
    grid: GridSpec = field(default_factory=lambda: GridSpec(-1.0, 1.0, -0.5, 0.5))
    tolerances: Tolerances = field(default_factory=Tolerances)

    @property
    def center(self) -> float:
        return self.curve[0].center

    @property
    def mode(self) -> Mode:
        return self.kind.mode

    def base_point(self) -> np.ndarray:
        return np.array([c.coeffs[0] for c in self.curve])

    def curve_velocity(self) -> tuple[USeries, USeries, USeries]:
        return tuple(c.deriv() for c in self.curve)

    def frame_velocity(self) -> tuple[USeries, USeries, USeries]:
        return self.group.frame_jet_from_coords(self.curve, self.curve_velocity())

    def validate(self) -> None:
        """Check the stated invariants; raises ProblemValidationError."""
        if self.order < 2:
            raise ProblemValidationError("truncation order must be at least 2")
        self.grid.validate()
        centers = {c.center for c in self.curve} | {
            w.center for w in self.normal_field
        }
        if len(centers) != 1:
            raise ProblemValidationError("curve and field jets must share a center")
        base = self.base_point()
        if not self.group.in_chart(base):
            raise ProblemValidationError(
                f"curve base point {base.tolist()} violates the "
                f"{self.group.name} chart guard"
            )
        want = self.kind.normal_square
        vdotv = lorentz_dot(self.normal_field, self.normal_field) - want
        if vdotv.maxabs() > 1e-9 * max(1.0, max(w.maxabs() for w in self.normal_field) ** 2):
            raise ProblemValidationError(
                f"invariant g(V, V) = {want:+g} violated: largest deviation "
                f"{vdotv.maxabs():.3e}"
            )
        vel = self.frame_velocity()
        ortho = lorentz_dot(vel, self.normal_field)
        scale = max(1.0, max(w.maxabs() for w in vel), max(w.maxabs() for w in self.normal_field))
        if ortho.maxabs() > 1e-9 * scale * scale:
            raise ProblemValidationError(
                f"invariant g(curve', V) = 0 violated: largest deviation "
                f"{ortho.maxabs():.3e}"
            )


def classify_curve(
    group: GroupModel,
    curve,
    u_lo: float,
    u_hi: float,
    samples: int = 33,
    causal_rtol: float = 1e-10,
) -> CurveClass:
    """Causal character of the curve from the sign of g(curve', curve').

    The velocity is converted to frame components first, then the squared
    speed is sampled across [u_lo, u_hi].  Any numerically null sample
    makes the curve lightlike (characteristic data); a strict sign change
    without a null sample is reported as mixed.
    """
    vel = tuple(c.deriv() for c in curve)
    frame_vel = group.frame_jet_from_coords(curve, vel)
    speed2 = lorentz_dot(frame_vel, frame_vel)
    vals = speed2.eval(np.linspace(u_lo, u_hi, samples))
    scale = max(1.0, float(np.max(np.abs(vals))))
    if np.any(np.abs(vals) <= causal_rtol * scale):
        return CurveClass.LIGHTLIKE
    if np.all(vals > 0.0):
        return CurveClass.SPACELIKE
    if np.all(vals < 0.0):
        return CurveClass.TIMELIKE
    return CurveClass.MIXED


def initial_data(problem: BjorlingProblem):
    """Initial tangent jets on v = 0.

    Returns (tangent_coords, frame_data0): the coordinate components of
    d f / dz restricted to the curve and the same vector in frame
    components.  Both are series triples with no v-dependence yet.
    """
    n = problem.order
    mode = problem.mode
    sign = problem.kind.tangent_sign
    vel_coords = problem.curve_velocity()
    vel = problem.group.frame_jet_from_coords(problem.curve, vel_coords)
    cross = lorentz_cross(problem.normal_field, vel)
    cross_coords = problem.group.coords_jet_from_frame(problem.curve, cross)

    def embed(re_jet, im_jet):
        return KSeries(
            BiSeries.from_univariate_u(0.5 * re_jet, n),
            BiSeries.from_univariate_u((0.5 * sign) * im_jet, n),
            mode,
        )

    frame0 = tuple(embed(vel[i], cross[i]) for i in range(3))
    tangent0 = tuple(embed(vel_coords[i], cross_coords[i]) for i in range(3))
    return tangent0, frame0


def _times_unit(x: KSeries) -> KSeries:
    # Multiply by the mode's imaginary unit.
    if x.mode is Mode.PARACOMPLEX:
        return KSeries(x.im, x.re, x.mode)
    return KSeries(-1.0 * x.im, x.re, x.mode)


def cone_series(frame_data) -> KSeries:
    """The quadratic cone combination psi1^2 + psi2^2 - psi3^2."""
    p1, p2, p3 = frame_data
    return p1 * p1 + p2 * p2 - p3 * p3


def ck_march(
    group: GroupModel,
    frame_data0,
    mode: Mode,
    order: int,
    cone_tol: float | None = None,
):
    """March the frame system order by order in v.

    The system d psi_c / dzbar + G_c = 0 rearranges, using the definition
    of dzbar, into psi_v = unit * (psi_u + 2 G); the v-degree (n+1) slice
    of each component then follows from slices <= n because G is quadratic.
    The recurrence is evaluated strictly lower-triangularly; with the
    built-in connection tables the cone combination is preserved to
    roundoff, and a drift beyond ``cone_tol`` raises ConstraintDrift.
    """
    n = order
    center = frame_data0[0].center
    parts = []
    for comp in frame_data0:
        re = np.zeros((n + 1, n + 1))
        im = np.zeros((n + 1, n + 1))
        k = min(n, comp.order)
        re[: k + 1, 0] = comp.re.coeffs[: k + 1, 0]
        im[: k + 1, 0] = comp.im.coeffs[: k + 1, 0]
        parts.append((re, im))

    for level in range(n):
        current = tuple(
            KSeries(BiSeries(re, center), BiSeries(im, center), mode)
            for re, im in parts
        )
        quad = group.pde_quadratic(current)
        denom = float(level + 1)
        for c in range(3):
            rhs = _times_unit(current[c].du() + 2.0 * quad[c])
            re, im = parts[c]
            rows = n - level  # entries (m, level) with m + level <= n - 1
            re[:rows, level + 1] = rhs.re.coeffs[:rows, level] / denom
            im[:rows, level + 1] = rhs.im.coeffs[:rows, level] / denom

    out = tuple(
        KSeries(BiSeries(re, center), BiSeries(im, center), mode) for re, im in parts
    )
    if cone_tol is not None:
        drift = cone_series(out).maxabs()
        if drift > cone_tol:
            raise ConstraintDrift(
                f"cone constraint drifted to {drift:.3e} during marching "
                f"(tolerance {cone_tol:.3e}); connection table inconsistent"
            )
    return out


def ck_march_cone_lift(
    group: GroupModel,
    first0: KSeries,
    second0: KSeries,
    mode: Mode,
    order: int,
):
    """March only the first two frame equations, lifting the third component
    as a series square root of psi1^2 + psi2^2 at every order.

    This is the harness for checking that the lifted component then
    satisfies the third equation on its own.  The lift needs an invertible
    branch at the center, otherwise DegenerateSqrt.
    """
    n = order
    center = first0.center
    parts = []
    for comp in (first0, second0):
        re = np.zeros((n + 1, n + 1))
        im = np.zeros((n + 1, n + 1))
        k = min(n, comp.order)
        re[: k + 1, 0] = comp.re.coeffs[: k + 1, 0]
        im[: k + 1, 0] = comp.im.coeffs[: k + 1, 0]
        parts.append((re, im))

    def wrap(pair):
        return KSeries(BiSeries(pair[0], center), BiSeries(pair[1], center), mode)

    sq0 = (wrap(parts[0]) * wrap(parts[0]) + wrap(parts[1]) * wrap(parts[1])).eval(
        center, 0.0
    )
    branch = sq0.sqrt()

    third = None
    for level in range(n):
        p1, p2 = wrap(parts[0]), wrap(parts[1])
        third = (p1 * p1 + p2 * p2).sqrt(branch)
        quad = group.pde_quadratic((p1, p2, third))
        denom = float(level + 1)
        for c in range(2):
            rhs = _times_unit(wrap(parts[c]).du() + 2.0 * quad[c])
            re, im = parts[c]
            rows = n - level
            re[:rows, level + 1] = rhs.re.coeffs[:rows, level] / denom
            im[:rows, level + 1] = rhs.im.coeffs[:rows, level] / denom

    p1, p2 = wrap(parts[0]), wrap(parts[1])
    third = (p1 * p1 + p2 * p2).sqrt(branch)
    return p1, p2, third


def _partials_from_tangent(tangent: KSeries) -> tuple[BiSeries, BiSeries]:
    # f_u and f_v of the real potential behind a tangent component.
    if tangent.mode is Mode.PARACOMPLEX:
        return 2.0 * tangent.re, 2.0 * tangent.im
    return 2.0 * tangent.re, -2.0 * tangent.im


def _real_integral(tangent: KSeries, compat_rtol: float) -> BiSeries:
    fu, fv = _partials_from_tangent(tangent)
    return antiderivative_from_partials(fu, fv, compat_rtol)


def reconstruct_surface(
    group: GroupModel,
    frame_data,
    base,
    mode: Mode,
    compat_rtol: float = 1e-9,
):
    """Integrate the group's staged recipe to coordinate series.

    Each stage is one exact antidifferentiation of the coordinate tangent
    components; the frame matrix entries that appear are rebuilt from the
    already-integrated coordinates, which is what makes the staging exact
    rather than an integral equation.
    """
    p1, p2, p3 = frame_data
    b1, b2, b3 = (float(x) for x in base)
    if group.recipe == "heisenberg":
        f1 = _real_integral(p1, compat_rtol) + b1
        f2 = _real_integral(p2, compat_rtol) + b2
        third_tangent = p2 * (0.5 * f1) - p1 * (0.5 * f2) + p3
        f3 = _real_integral(third_tangent, compat_rtol) + b3
        return f1, f2, f3
    if group.recipe == "desitter":
        growth = _real_integral(p3, compat_rtol)
        f3 = growth.exp() * b3
        f1 = _real_integral(p1 * f3, compat_rtol) + b1
        f2 = _real_integral(p2 * f3, compat_rtol) + b2
        return f1, f2, f3
    if group.recipe == "h2xr":
        growth = _real_integral(p2, compat_rtol)
        f2 = growth.exp() * b2
        f1 = _real_integral(p1 * f2, compat_rtol) + b1
        f3 = _real_integral(p3, compat_rtol) + b3
        return f1, f2, f3
    raise UnsupportedRecipe(
        f"no closed reconstruction recipe for group {group.name!r}"
    )


@dataclass
class StripInfo:
    """Validated parameter strip: the v-range that passed all grid checks."""

    v_min: float
    v_max: float
    halvings: int
    valid: bool


@dataclass
class BjorlingSolution:
    """Everything the solve produced, plus its residual report."""

    group: GroupModel
    kind: ProblemKind
    order: int
    center: float
    base: np.ndarray
    curve: tuple
    normal_field: tuple
    initial_tangent: tuple
    frame_data: tuple
    surface: tuple
    grid: GridSpec
    report: object = None  # verify.ResidualReport; typed loosely to avoid a cycle
    strip: StripInfo | None = None
    solve_seconds: float = 0.0

    @property
    def mode(self) -> Mode:
        return self.kind.mode

    def surface_point(self, u: float, v: float) -> np.ndarray:
        return np.array([f.eval(u, v) for f in self.surface])

    def surface_evaluator(self):
        surface = self.surface
        return lambda u, v: np.array([f.eval(u, v) for f in surface])


def solve_bjorling(problem: BjorlingProblem) -> BjorlingSolution:
    """Solve one problem end to end and attach a full residual report.

    Deterministic: identical inputs give bit-identical coefficient tables.
    Raises CharacteristicData for lightlike curves, CausalMismatch when the
    curve's character does not match the declared kind, UnsupportedRecipe
    for groups without a reconstruction recipe, and propagates
    NonIntegrable / ConstraintDrift as internal-consistency failures.
    """
    from . import verify  # deferred to keep module import light

    t0 = time.perf_counter()
    problem.validate()
    if problem.group.recipe is None:
        raise UnsupportedRecipe(
            f"group {problem.group.name!r} supports residual checks only"
        )
    observed = classify_curve(
        problem.group,
        problem.curve,
        problem.grid.u_min,
        problem.grid.u_max,
        causal_rtol=problem.tolerances.causal,
    )
    if observed is CurveClass.LIGHTLIKE:
        raise CharacteristicData(
            "characteristic (lightlike) initial curve: the Cauchy problem "
            "is not well posed along it"
        )
    if observed is not problem.kind.curve_class:
        raise CausalMismatch(
            f"curve is {observed.value} but kind {problem.kind.value} "
            f"needs a {problem.kind.curve_class.value} curve"
        )

    tangent0, frame0 = initial_data(problem)
    cone0 = cone_series(frame0).maxabs()
    scale = max(1.0, max(c.maxabs() for c in frame0) ** 2)
    if cone0 > problem.tolerances.cone * scale:
        raise ConstraintDrift(
            f"initial data violates the cone constraint by {cone0:.3e}"
        )

    frame_data = ck_march(
        problem.group,
        frame0,
        problem.mode,
        problem.order,
        cone_tol=problem.tolerances.cone * scale,
    )
    surface = reconstruct_surface(
        problem.group,
        frame_data,
        problem.base_point(),
        problem.mode,
        compat_rtol=problem.tolerances.compat,
    )

    report, strip = verify.build_report(
        problem.group,
        problem.kind,
        frame_data,
        surface,
        problem.curve,
        problem.normal_field,
        problem.grid,
        problem.tolerances,
    )
    return BjorlingSolution(
        group=problem.group,
        kind=problem.kind,
        order=problem.order,
        center=problem.center,
        base=problem.base_point(),
        curve=problem.curve,
        normal_field=problem.normal_field,
        initial_tangent=tangent0,
        frame_data=frame_data,
        surface=surface,
        grid=problem.grid,
        report=report,
        strip=strip,
        solve_seconds=time.perf_counter() - t0,
    )
