"""Truncated power series used throughout the solver.

Three layers:

* ``USeries``: univariate real jets in t = u - center, used for curve and
  field data along the initial curve.
* ``BiSeries``: bivariate real series with a dense triangular coefficient
  table, c[m, n] multiplying ``(u - center)^m * v^n`` for ``m + n <= order``.
  Truncation is by total degree, which is the shape the order-by-order
  marching recurrence produces naturally.
* ``KSeries``: a pair of BiSeries forming one complex- or split-complex-
  valued function, with the mode-dependent d/dz and d/dzbar operators.

Everything is immutable in practice: operations return new objects and
never mutate their inputs.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import BranchError, DegenerateSqrt, DomainError, NonIntegrable, NotInvertible
from .scalars import KScalar, Mode


@lru_cache(maxsize=None)
def _triangle_mask(order: int) -> np.ndarray:
    m = np.add.outer(np.arange(order + 1), np.arange(order + 1)) <= order
    m.setflags(write=False)
    return m


def _conv2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Full 2-D polynomial product via one flattened 1-D convolution.

    Rows are padded to the full output width so column degrees never wrap
    into the next row (Kronecker substitution).
    """
    ra, ca = a.shape
    rb, cb = b.shape
    width = ca + cb - 1
    fa = np.zeros((ra, width))
    fa[:, :ca] = a
    fb = np.zeros((rb, width))
    fb[:, :cb] = b
    flat = np.convolve(fa.ravel(), fb.ravel())
    rows = ra + rb - 1
    return flat[: rows * width].reshape(rows, width)


def _check_centers(a, b) -> None:
    if a.center != b.center:
        raise ValueError(f"center mismatch: {a.center} vs {b.center}")


# ---------------------------------------------------------------------------
# univariate jets


class USeries:
    """Taylor jet of one real-analytic function of u about ``center``."""

    __slots__ = ("coeffs", "center")

    def __init__(self, coeffs, center: float = 0.0):
        c = np.array(coeffs, dtype=float)
        if c.ndim != 1 or c.size < 1:
            raise ValueError("coefficients must be a nonempty 1-D sequence")
        self.coeffs = c
        self.center = float(center)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @staticmethod
    def constant(value: float, order: int, center: float = 0.0) -> "USeries":
        c = np.zeros(order + 1)
        c[0] = value
        return USeries(c, center)

    @staticmethod
    def variable(order: int, center: float = 0.0) -> "USeries":
        """The function u itself: constant term is the center."""
        c = np.zeros(order + 1)
        c[0] = center
        if order >= 1:
            c[1] = 1.0
        return USeries(c, center)

    def truncated(self, order: int) -> "USeries":
        if order >= self.order:
            return self
        return USeries(self.coeffs[: order + 1], self.center)

    def _pair(self, other):
        if isinstance(other, USeries):
            _check_centers(self, other)
            n = min(self.order, other.order)
            return self.coeffs[: n + 1], other.coeffs[: n + 1]
        if isinstance(other, (int, float)):
            c = np.zeros_like(self.coeffs)
            c[0] = float(other)
            return self.coeffs, c
        return None, None

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return USeries(a + b, self.center)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return USeries(a - b, self.center)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return USeries(-self.coeffs, self.center)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return USeries(self.coeffs * float(other), self.center)
        if isinstance(other, USeries):
            _check_centers(self, other)
            n = min(self.order, other.order)
            full = np.convolve(self.coeffs[: n + 1], other.coeffs[: n + 1])
            return USeries(full[: n + 1], self.center)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return USeries(self.coeffs / float(other), self.center)
        if isinstance(other, USeries):
            return _udiv(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, float)):
            return _udiv(USeries.constant(float(other), self.order, self.center), self)
        return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise TypeError("series powers must have integer exponents")
        if exponent < 0:
            return (1.0 / self) ** (-exponent)
        out = USeries.constant(1.0, self.order, self.center)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def deriv(self) -> "USeries":
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        k = np.arange(1, self.order + 1)
        return USeries(self.coeffs[1:] * k, self.center)

    def sqrt(self) -> "USeries":
        """Positive-branch square root; needs a positive leading value."""
        a0 = self.coeffs[0]
        if a0 <= 0.0:
            raise DomainError(
                f"square root of negative leading value {a0:g} in a real jet"
            )
        n = self.order
        r = np.zeros(n + 1)
        r[0] = math.sqrt(a0)
        for k in range(1, n + 1):
            acc = self.coeffs[k] - np.dot(r[1:k], r[k - 1:0:-1])
            r[k] = acc / (2.0 * r[0])
        return USeries(r, self.center)

    def _shifted_taylor(self, derivs) -> "USeries":
        # Evaluate sum_k derivs[k]/k! * (self - a0)^k by Horner.
        n = self.order
        h = self - float(self.coeffs[0])
        out = USeries.constant(derivs[n] / math.factorial(n), n, self.center)
        for k in range(n - 1, -1, -1):
            out = out * h + derivs[k] / math.factorial(k)
        return out

    def exp(self) -> "USeries":
        e0 = math.exp(self.coeffs[0])
        return self._shifted_taylor([e0] * (self.order + 1))

    def sin(self) -> "USeries":
        a0 = self.coeffs[0]
        cyc = [math.sin(a0), math.cos(a0), -math.sin(a0), -math.cos(a0)]
        return self._shifted_taylor([cyc[k % 4] for k in range(self.order + 1)])

    def cos(self) -> "USeries":
        a0 = self.coeffs[0]
        cyc = [math.cos(a0), -math.sin(a0), -math.cos(a0), math.sin(a0)]
        return self._shifted_taylor([cyc[k % 4] for k in range(self.order + 1)])

    def sinh(self) -> "USeries":
        a0 = self.coeffs[0]
        pair = [math.sinh(a0), math.cosh(a0)]
        return self._shifted_taylor([pair[k % 2] for k in range(self.order + 1)])

    def cosh(self) -> "USeries":
        a0 = self.coeffs[0]
        pair = [math.cosh(a0), math.sinh(a0)]
        return self._shifted_taylor([pair[k % 2] for k in range(self.order + 1)])

    def eval(self, x):
        t = np.asarray(x, dtype=float) - self.center
        return np.polynomial.polynomial.polyval(t, self.coeffs)

    def maxabs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def __repr__(self) -> str:
        return f"USeries(order={self.order}, center={self.center:g})"


def _udiv(a: USeries, b: USeries) -> USeries:
    _check_centers(a, b)
    n = min(a.order, b.order)
    b0 = b.coeffs[0]
    if abs(b0) <= 1e-300:
        raise NotInvertible("division by a jet with zero constant term")
    q = np.zeros(n + 1)
    for k in range(n + 1):
        acc = a.coeffs[k] - np.dot(q[:k], b.coeffs[k:0:-1])
        q[k] = acc / b0
    return USeries(q, a.center)


def ode_taylor(rhs, y0: float, order: int, center: float = 0.0) -> USeries:
    """Taylor coefficients of the solution of ``y' = rhs(y)``.

    ``rhs`` must map a USeries to a USeries using only the arithmetic
    defined here (so coefficient k of the output depends on coefficients
    <= k of the input).  The k-th output coefficient then feeds the
    (k+1)-st solution coefficient; one sweep fills the whole jet.
    """
    y = np.zeros(order + 1)
    y[0] = float(y0)
    for k in range(order):
        f = rhs(USeries(y, center))
        if not isinstance(f, USeries):
            f = USeries.constant(float(f), order, center)
        y[k + 1] = f.coeffs[k] / (k + 1)
    return USeries(y, center)


# ---------------------------------------------------------------------------
# bivariate series


class BiSeries:
    """Dense triangular table of a real function of (u, v) near (center, 0)."""

    __slots__ = ("coeffs", "center")

    def __init__(self, coeffs, center: float = 0.0):
        c = np.array(coeffs, dtype=float)
        if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] < 1:
            raise ValueError("coefficient table must be square and nonempty")
        c[~_triangle_mask(c.shape[0] - 1)] = 0.0
        self.coeffs = c
        self.center = float(center)

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @staticmethod
    def zeros(order: int, center: float = 0.0) -> "BiSeries":
        return BiSeries(np.zeros((order + 1, order + 1)), center)

    @staticmethod
    def constant(value: float, order: int, center: float = 0.0) -> "BiSeries":
        c = np.zeros((order + 1, order + 1))
        c[0, 0] = value
        return BiSeries(c, center)

    @staticmethod
    def variable_u(order: int, center: float = 0.0) -> "BiSeries":
        c = np.zeros((order + 1, order + 1))
        c[0, 0] = center
        if order >= 1:
            c[1, 0] = 1.0
        return BiSeries(c, center)

    @staticmethod
    def variable_v(order: int, center: float = 0.0) -> "BiSeries":
        c = np.zeros((order + 1, order + 1))
        if order >= 1:
            c[0, 1] = 1.0
        return BiSeries(c, center)

    @staticmethod
    def from_univariate_u(jet: USeries, order: int) -> "BiSeries":
        c = np.zeros((order + 1, order + 1))
        k = min(order, jet.order)
        c[: k + 1, 0] = jet.coeffs[: k + 1]
        return BiSeries(c, jet.center)

    @staticmethod
    def from_univariate_v(jet: USeries, order: int, center: float = 0.0) -> "BiSeries":
        # A pure function of v; the jet must be expanded about v = 0.
        if jet.center != 0.0:
            raise ValueError("v-jets must be centered at 0")
        c = np.zeros((order + 1, order + 1))
        k = min(order, jet.order)
        c[0, : k + 1] = jet.coeffs[: k + 1]
        return BiSeries(c, center)

    def truncated(self, order: int) -> "BiSeries":
        if order >= self.order:
            return self
        return BiSeries(self.coeffs[: order + 1, : order + 1], self.center)

    def _pair(self, other):
        if isinstance(other, BiSeries):
            _check_centers(self, other)
            n = min(self.order, other.order)
            return (
                self.truncated(n).coeffs,
                other.truncated(n).coeffs,
            )
        if isinstance(other, (int, float)):
            c = np.zeros_like(self.coeffs)
            c[0, 0] = float(other)
            return self.coeffs, c
        return None, None

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return BiSeries(a + b, self.center)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return BiSeries(a - b, self.center)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return BiSeries(-self.coeffs, self.center)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return BiSeries(self.coeffs * float(other), self.center)
        if isinstance(other, BiSeries):
            _check_centers(self, other)
            n = min(self.order, other.order)
            full = _conv2(
                self.coeffs[: n + 1, : n + 1], other.coeffs[: n + 1, : n + 1]
            )
            return BiSeries(full[: n + 1, : n + 1], self.center)
        return NotImplemented

    __rmul__ = __mul__

    def du(self) -> "BiSeries":
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 series")
        n = self.order
        k = np.arange(1, n + 1)[:, None]
        return BiSeries((self.coeffs[1:, :] * k)[:, :n], self.center)

    def dv(self) -> "BiSeries":
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 series")
        n = self.order
        k = np.arange(1, n + 1)[None, :]
        return BiSeries((self.coeffs[:, 1:] * k)[:n, :], self.center)

    def exp(self) -> "BiSeries":
        """exp of the series, exact to the truncation order.

        The constant term is peeled off and the remaining nilpotent part is
        summed by Horner; ``(a - a0)^k`` has total degree >= k, so order+1
        terms suffice.
        """
        n = self.order
        a0 = self.coeffs[0, 0]
        h = self - a0
        out = BiSeries.constant(1.0 / math.factorial(n), n, self.center)
        for k in range(n - 1, -1, -1):
            out = out * h + 1.0 / math.factorial(k)
        return out * math.exp(a0)

    def eval(self, u: float, v: float) -> float:
        t = float(u) - self.center
        n = self.order
        tp = np.power(t, np.arange(n + 1))
        vp = np.power(float(v), np.arange(n + 1))
        return float(tp @ self.coeffs @ vp)

    def eval_grid(self, us, vs) -> np.ndarray:
        """Values on the tensor grid, shape (len(us), len(vs))."""
        t = np.asarray(us, dtype=float) - self.center
        n = self.order
        tp = np.power(t[:, None], np.arange(n + 1)[None, :])
        vp = np.power(np.asarray(vs, dtype=float)[None, :], np.arange(n + 1)[:, None])
        return tp @ self.coeffs @ vp

    def maxabs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def __repr__(self) -> str:
        return f"BiSeries(order={self.order}, center={self.center:g})"


def antiderivative_from_partials(fu: BiSeries, fv: BiSeries, rtol: float = 1e-9) -> BiSeries:
    """The potential F with dF/du = fu, dF/dv = fv and F(center, 0) = 0.

    Requires the cross derivatives to agree: dv(fu) == du(fv) within
    ``rtol * max(1, largest input coefficient)``.  A violation means the
    data was not closed (a solver bug, or a non-minimal frame field), so it
    raises NonIntegrable instead of silently integrating one path.
    """
    _check_centers(fu, fv)
    n = min(fu.order, fv.order)
    fu = fu.truncated(n)
    fv = fv.truncated(n)
    scale = max(1.0, fu.maxabs(), fv.maxabs())
    if n >= 1:
        mismatch = (fu.dv() - fv.du()).maxabs()
        if mismatch > rtol * scale:
            raise NonIntegrable(
                f"cross-derivative mismatch {mismatch:.3e} exceeds "
                f"{rtol * scale:.3e}"
            )
    out = np.zeros((n + 2, n + 2))
    m = np.arange(1, n + 2)[:, None]
    out[1:, : n + 1] = fu.coeffs / m
    out[0, 1:] = fv.coeffs[0, :] / np.arange(1, n + 2)
    return BiSeries(out, fu.center)


# ---------------------------------------------------------------------------
# algebra-valued series


class KSeries:
    """Complex- or split-complex-valued bivariate series (a pair of tables)."""

    __slots__ = ("re", "im", "mode")

    def __init__(self, re: BiSeries, im: BiSeries, mode: Mode):
        if re.center != im.center or re.order != im.order:
            raise ValueError("real and unit parts must share center and order")
        self.re = re
        self.im = im
        self.mode = mode

    @property
    def order(self) -> int:
        return self.re.order

    @property
    def center(self) -> float:
        return self.re.center

    @staticmethod
    def from_real(b: BiSeries, mode: Mode) -> "KSeries":
        return KSeries(b, BiSeries.zeros(b.order, b.center), mode)

    @staticmethod
    def constant(value: KScalar, order: int, center: float = 0.0) -> "KSeries":
        return KSeries(
            BiSeries.constant(value.re, order, center),
            BiSeries.constant(value.im, order, center),
            value.mode,
        )

    @staticmethod
    def variable_z(order: int, center: float, mode: Mode) -> "KSeries":
        """The coordinate z = u + unit*v itself."""
        return KSeries(
            BiSeries.variable_u(order, center),
            BiSeries.variable_v(order, center),
            mode,
        )

    def _check(self, other: "KSeries") -> None:
        if other.mode is not self.mode:
            raise ValueError(
                f"mode mismatch: {self.mode.value} vs {other.mode.value}"
            )

    def truncated(self, order: int) -> "KSeries":
        return KSeries(self.re.truncated(order), self.im.truncated(order), self.mode)

    def __add__(self, other):
        if isinstance(other, KSeries):
            self._check(other)
            return KSeries(self.re + other.re, self.im + other.im, self.mode)
        if isinstance(other, (int, float, BiSeries)):
            return KSeries(self.re + other, self.im + 0.0 * self.im, self.mode)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return KSeries(-self.re, -self.im, self.mode)

    def __mul__(self, other):
        if isinstance(other, KSeries):
            self._check(other)
            s = self.mode.unit_square
            re = self.re * other.re + s * (self.im * other.im)
            im = self.re * other.im + self.im * other.re
            return KSeries(re, im, self.mode)
        if isinstance(other, (int, float, BiSeries)):
            return KSeries(self.re * other, self.im * other, self.mode)
        if isinstance(other, KScalar):
            if other.mode is not self.mode:
                raise ValueError("mode mismatch in scalar multiplication")
            s = self.mode.unit_square
            re = self.re * other.re + s * (self.im * other.im)
            im = self.re * other.im + self.im * other.re
            return KSeries(re, im, self.mode)
        return NotImplemented

    __rmul__ = __mul__

    def conj(self) -> "KSeries":
        return KSeries(self.re, -self.im, self.mode)

    def du(self) -> "KSeries":
        return KSeries(self.re.du(), self.im.du(), self.mode)

    def dv(self) -> "KSeries":
        return KSeries(self.re.dv(), self.im.dv(), self.mode)

    def dz(self) -> "KSeries":
        """Holomorphic derivative for the mode's coordinate z = u + unit*v."""
        a_u, b_u = self.re.du(), self.im.du()
        a_v, b_v = self.re.dv(), self.im.dv()
        if self.mode is Mode.PARACOMPLEX:
            return KSeries(0.5 * (a_u + b_v), 0.5 * (b_u + a_v), self.mode)
        return KSeries(0.5 * (a_u + b_v), 0.5 * (b_u - a_v), self.mode)

    def dzbar(self) -> "KSeries":
        """Conjugate derivative; vanishing characterizes analyticity."""
        a_u, b_u = self.re.du(), self.im.du()
        a_v, b_v = self.re.dv(), self.im.dv()
        if self.mode is Mode.PARACOMPLEX:
            return KSeries(0.5 * (a_u - b_v), 0.5 * (b_u - a_v), self.mode)
        return KSeries(0.5 * (a_u - b_v), 0.5 * (b_u + a_v), self.mode)

    def sqrt(self, branch: KScalar) -> "KSeries":
        """Series square root with the stated value at the center.

        The branch must satisfy branch^2 == constant term (BranchError
        otherwise) and must be invertible (DegenerateSqrt otherwise); the
        remaining coefficients follow degree by degree from matching the
        graded parts of r*r against the input.
        """
        if branch.mode is not self.mode:
            raise ValueError("branch mode mismatch")
        n = self.order
        s = self.mode.unit_square
        a_re, a_im = self.re.coeffs, self.im.coeffs
        b2 = branch * branch
        scale = max(1.0, abs(a_re[0, 0]), abs(a_im[0, 0]))
        if max(abs(b2.re - a_re[0, 0]), abs(b2.im - a_im[0, 0])) > 1e-10 * scale:
            raise BranchError(
                f"branch {branch} squares to {b2}, constant term is "
                f"({a_re[0, 0]:g}, {a_im[0, 0]:g})"
            )
        try:
            inv2 = (2.0 * branch).inverse()
        except NotInvertible as exc:
            raise DegenerateSqrt(f"branch {branch} is not invertible") from exc
        r_re = np.zeros_like(a_re)
        r_im = np.zeros_like(a_im)
        r_re[0, 0] = branch.re
        r_im[0, 0] = branch.im
        for d in range(1, n + 1):
            # Entries of degree d in r are still zero here, so the full
            # product r*r contributes only strictly lower-degree pairs.
            sq_re = _conv2(r_re, r_re) + s * _conv2(r_im, r_im)
            sq_im = 2.0 * _conv2(r_re, r_im)
            for m in range(d + 1):
                k = d - m
                c_re = a_re[m, k] - sq_re[m, k]
                c_im = a_im[m, k] - sq_im[m, k]
                r_re[m, k] = inv2.re * c_re + s * inv2.im * c_im
                r_im[m, k] = inv2.re * c_im + inv2.im * c_re
        return KSeries(
            BiSeries(r_re, self.center), BiSeries(r_im, self.center), self.mode
        )

    def eval(self, u: float, v: float) -> KScalar:
        return KScalar(self.re.eval(u, v), self.im.eval(u, v), self.mode)

    def maxabs(self) -> float:
        return max(self.re.maxabs(), self.im.maxabs())

    def __repr__(self) -> str:
        return (
            f"KSeries(order={self.order}, center={self.center:g}, "
            f"mode={self.mode.value})"
        )


def para_cr_residual(f: KSeries) -> float:
    """Largest coefficient violating the split-complex analyticity equations.

    Computed twice, once from the component equations a_u = b_v, a_v = b_u
    and once as the largest coefficient of 2*dzbar(f); the two must agree
    to working precision.
    """
    if f.mode is not Mode.PARACOMPLEX:
        raise ValueError("the split Cauchy-Riemann check is paracomplex-only")
    a_u, b_u = f.re.du(), f.im.du()
    a_v, b_v = f.re.dv(), f.im.dv()
    res_parts = max((a_u - b_v).maxabs(), (a_v - b_u).maxabs())
    g = f.dzbar()
    res_dzbar = max((2.0 * g.re).maxabs(), (2.0 * g.im).maxabs())
    assert abs(res_parts - res_dzbar) <= 1e-14 * max(1.0, res_parts)
    return res_parts
