"""Shared vocabulary: problem kinds, curve classes, grids, tolerances."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .scalars import Mode


class CurveClass(Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"
    MIXED = "mixed"


class ProblemKind(Enum):
    """Causal type of the prescribed data and of the surface built on it.

    TIMELIKE_CURVE and SPACELIKE_CURVE both produce timelike surfaces over
    the split-complex plane; SPACELIKE_SURFACE is the Riemannian case over
    the ordinary complex plane.
    """

    TIMELIKE_CURVE = "timelike"
    SPACELIKE_CURVE = "spacelike-curve"
    SPACELIKE_SURFACE = "spacelike-surface"

    @property
    def mode(self) -> Mode:
        if self is ProblemKind.SPACELIKE_SURFACE:
            return Mode.COMPLEX
        return Mode.PARACOMPLEX

    @property
    def sigma(self) -> float:
        """+1 for timelike surfaces (wave operator), -1 for spacelike."""
        return -1.0 if self is ProblemKind.SPACELIKE_SURFACE else 1.0

    @property
    def fv_sign(self) -> float:
        """Sign s in ``f_v(u, 0) = s * (V x curve_velocity)``."""
        return 1.0 if self is ProblemKind.TIMELIKE_CURVE else -1.0

    @property
    def tangent_sign(self) -> float:
        """Sign of the unit part of the initial tangent,
        ``2 phi(u, 0) = curve' + sign * unit * (V x curve')``.

        Differs from fv_sign in the complex mode because there the v
        partial is minus twice the imaginary part.
        """
        return -1.0 if self is ProblemKind.SPACELIKE_CURVE else 1.0

    @property
    def normal_square(self) -> float:
        """Required g(V, V) of the prescribed unit field."""
        return -1.0 if self is ProblemKind.SPACELIKE_SURFACE else 1.0

    @property
    def curve_class(self) -> CurveClass:
        if self is ProblemKind.TIMELIKE_CURVE:
            return CurveClass.TIMELIKE
        return CurveClass.SPACELIKE

    @staticmethod
    def from_string(text: str) -> "ProblemKind":
        for kind in ProblemKind:
            if kind.value == text:
                return kind
        raise ValueError(f"unknown problem kind {text!r}")


@dataclass(frozen=True)
class GridSpec:
    """Rectangular evaluation grid in the parameter plane."""

    u_min: float
    u_max: float
    v_min: float
    v_max: float
    nu: int = 17
    nv: int = 9

    def us(self) -> np.ndarray:
        return np.linspace(self.u_min, self.u_max, self.nu)

    def vs(self) -> np.ndarray:
        return np.linspace(self.v_min, self.v_max, self.nv)

    def coarse(self, nu_cap: int = 17, nv_cap: int = 9) -> "GridSpec":
        return replace(self, nu=min(self.nu, nu_cap), nv=min(self.nv, nv_cap))

    def scaled_v(self, factor: float) -> "GridSpec":
        return replace(self, v_min=self.v_min * factor, v_max=self.v_max * factor)

    def validate(self) -> None:
        if not (self.u_min < self.u_max and self.v_min < self.v_max):
            raise ValueError("grid ranges must be increasing")
        if self.nu < 2 or self.nv < 2:
            raise ValueError("grid needs at least 2 samples per direction")


@dataclass(frozen=True)
class Tolerances:
    """Numerical acceptance thresholds.

    cone / compat / series are coefficient-level, conformality and
    minimality are grid-level (the latter is limited by finite differences,
    not by the series).  causal is the relative band for "this velocity is
    numerically lightlike".
    """

    cone: float = 1e-9
    causal: float = 1e-10
    compat: float = 1e-9
    series: float = 1e-8
    conformality: float = 1e-6
    minimality: float = 1e-4
    fd_step: float = 1e-3

    def merged(self, overrides: dict | None) -> "Tolerances":
        if not overrides:
            return self
        return replace(self, **overrides)
