"""
Cauchy, reciprocal Cauchy and Voiculescu transforms.

``G(z) = int mu(dx) / (z - x)`` is available through several independent
routes, selected with :class:`EvalMethod`:

``quadrature``
    direct numerical integration (``Im z > 0`` only).
``residue_series``
    the Mittag-Leffler expansion over the poles of the continuation
    (Meixner laws with ``t <= 1/2``, and the logistic law).
``continuation``
    Meixner laws anywhere in the plane, by iterating the half-step relation
    between ``G_t`` and ``G_{t+1/2}`` until the argument sits high enough in
    the upper half-plane for quadrature.
``trigamma_closed``
    logistic law, ``G(z) = -i psi'(1/2 - i z)``.
``closed_form``
    the explicit formulas of the oracle laws.
``contour_shift``
    user densities that are analytic in a strip: integrate along
    ``R - i c`` instead of ``R``, which continues ``G`` below the axis.

All evaluators accept scalars or numpy arrays of points.
"""

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import measures as _m
from .exceptions import ConvergenceError, PoleError
from .quadrature import FixedRule, integrate
from .specfun import trigamma

__all__ = [
    "ConeSpec",
    "EvalMethod",
    "default_cone",
    "default_method",
    "cauchy_transform",
    "g_quadrature",
    "g_contour_shift",
    "g_meixner_series",
    "g_meixner_continued",
    "recursion_residual",
    "g_logistic",
    "g_logistic_curve_im",
    "logistic_curve_series",
    "f_of",
    "f_inverse_numeric",
    "voiculescu_phi",
    "char_function_meixner",
    "stieltjes_invert",
]

# quadrature is never asked for points closer than this to the integration line
MIN_QUAD_DISTANCE = 0.05
# points at least this far from the line use the cached fixed rule
FIXED_RULE_DISTANCE = 0.5
POLE_RADIUS = 1e-12


class EvalMethod(str, enum.Enum):
    RESIDUE_SERIES = "residue_series"
    QUADRATURE = "quadrature"
    CONTINUATION = "continuation"
    CLOSED_FORM = "closed_form"
    TRIGAMMA_CLOSED = "trigamma_closed"
    CONTOUR_SHIFT = "contour_shift"


@dataclass(frozen=True)
class ConeSpec:
    """Truncated cone ``{Im z > M, |Re z| < alpha Im z}``."""

    alpha: float = 1.0
    M: float = 8.0

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        return (z.imag > self.M) & (np.abs(z.real) < self.alpha * z.imag)


def default_cone(measure):
    return ConeSpec(1.0, 8.0 * measure.scale + 8.0)


def _arr(z):
    a = np.asarray(z, dtype=complex)
    return a, a.ndim == 0


def _ret(val, err, scalar, full_output):
    if scalar:
        val, err = complex(np.ravel(val)[0]), float(np.ravel(err)[0])
    if full_output:
        return val, err
    return val


# ------------------------------------------------------------- quadrature

def _base_breakpoints(measure, shift=0.0, h=0.25):
    pts = {0.0}
    pts.update(measure.features)
    if not measure.smooth:
        return sorted(pts)
    s = max(measure.strip - shift, 1e-3)
    v = s / 4.0
    while v < h:
        pts.update((v, -v))
        v *= 2.0
    X = measure.tail_start
    grid = np.arange(h, X + 0.5 * h, h)
    pts.update(grid)
    pts.update(-grid)
    return sorted(pts)


@lru_cache(maxsize=64)
def _fixed_rule(measure, shift):
    rule = FixedRule(_base_breakpoints(measure, shift), support=measure.support, X=measure.tail_start)
    nodes = rule.x - 1j * shift if shift else rule.x
    dens = measure.density(nodes)
    return nodes, rule.w * dens, rule.wg * dens


def _line_fixed(measure, z, shift):
    nodes, wp, wgp = _fixed_rule(measure, shift)
    out = np.empty(z.shape, dtype=complex)
    err = np.empty(z.shape)
    flat_z = z.ravel()
    o, e = out.ravel(), err.ravel()
    chunk = max(1, 2_000_000 // len(nodes))
    for i in range(0, len(flat_z), chunk):
        kern = 1.0 / (flat_z[i:i + chunk, None] - nodes[None, :])
        k = kern @ wp
        g = kern @ wgp
        o[i:i + chunk] = k
        e[i:i + chunk] = np.abs(k - g)
    return out, err


def _line_adaptive(measure, z0, shift, tol):
    c = z0.real
    d = z0.imag + shift
    bps = set(_base_breakpoints(measure, shift, h=1.0)) if measure.smooth else set(measure.features)
    for f in (0.0, 1.0, 3.0, 10.0, 30.0):
        bps.update((c - f * d, c + f * d))

    def f(x):
        xs = x - 1j * shift if shift else x
        return measure.density(xs) / (z0 - xs)

    return integrate(f, support=measure.support, breakpoints=sorted(bps), tol=tol,
                     X=measure.tail_start, full_output=True)


def _line_cauchy(measure, z, shift, tol):
    """Integral of ``p(w) / (z - w)`` along ``w in R - i*shift``."""
    if measure.density is None:
        raise ValueError(f"{measure.name} has no density; quadrature is unavailable")
    dist = z.imag + shift
    # slack so that e.g. 0.5 - 0.45 counts as 0.05
    if np.any(dist < MIN_QUAD_DISTANCE * (1 - 1e-9)):
        raise ValueError(
            f"quadrature point too close to the integration line (distance {dist.min():.3g} "
            f"< {MIN_QUAD_DISTANCE}); use continuation or a closed form")
    out = np.empty(z.shape, dtype=complex)
    err = np.zeros(z.shape)
    far = dist >= FIXED_RULE_DISTANCE if measure.smooth else np.zeros(z.shape, bool)
    if np.any(far):
        out[far], err[far] = _line_fixed(measure, z[far], shift)
        # the fixed rule is only trusted when its own error indicator agrees
        bad = np.zeros(z.shape, bool)
        bad[far] = err[far] > tol
        far &= ~bad
    for idx in zip(*np.nonzero(~far)):
        out[idx], err[idx] = _line_adaptive(measure, complex(z[idx]), shift, tol)
    return out, err


def g_quadrature(measure, z, tol=1e-12, full_output=False):
    """
    Cauchy transform by numerical integration of the density, ``Im z > 0``.

    Points at least 0.5 above the axis reuse a cached composite rule (batched
    as one matrix-vector product); closer points use adaptive Gauss-Kronrod
    with extra breakpoints clustered around ``Re z``.

    Raises
    ------
    ValueError
        If some ``Im z < 0.05``, where the kernel is too sharp to resolve
        reliably; use a continuation route there.
    ConvergenceError
        If adaptive refinement fails; carries the achieved error estimate.
    """
    z, scalar = _arr(z)
    if np.any(z.imag <= 0):
        raise ValueError("g_quadrature needs Im z > 0")
    val, err = _line_cauchy(measure, np.atleast_1d(z), 0.0, tol)
    return _ret(val, err, scalar, full_output)


def g_contour_shift(measure, z, tol=1e-12, full_output=False):
    """
    Continue ``G`` below the axis for densities analytic in a strip.

    The real line is replaced by ``R - i c`` with ``c`` at 80% of the strip
    half-width; the integral over the shifted line equals ``G`` in the upper
    half-plane and is analytic above the shifted line.
    """
    if not (measure.complex_density and measure.strip > 0):
        raise ValueError(f"{measure.name} does not provide an analytic density")
    z, scalar = _arr(z)
    z1 = np.atleast_1d(z)
    c = 0.8 * measure.strip
    val = np.empty(z1.shape, dtype=complex)
    err = np.zeros(z1.shape)
    up = z1.imag >= FIXED_RULE_DISTANCE
    if np.any(up):
        val[up], err[up] = _line_cauchy(measure, z1[up], 0.0, tol)
    if np.any(~up):
        val[~up], err[~up] = _line_cauchy(measure, z1[~up], c, tol)
    return _ret(val, err, scalar, full_output)


# ------------------------------------------------------- Meixner routes

def _meixner_t(measure):
    return float(measure.extra["t"])


def _check_meixner_poles(t, z, n_max):
    n = np.arange(n_max + 1)
    d = np.abs(z[..., None] + 1j * (t + n))
    if np.any(d < POLE_RADIUS):
        k = np.argwhere(d < POLE_RADIUS)[0]
        raise PoleError(f"z = -{t + k[-1]:g}i is a pole of G_t")


def _euler_average(s):
    """Repeated pairwise averaging along the last axis down to one value."""
    while s.shape[-1] > 1:
        s = 0.5 * (s[..., 1:] + s[..., :-1])
    return s[..., 0]


def g_meixner_series(t, z, tol=1e-10, max_terms=10**6, full_output=False):
    """
    Residue series of the Meixner Cauchy transform, ``0 < t <= 1/2``.

    ``G_t(z) = 4^t/Gamma(2t) sum_n (-1)^n Gamma(n+2t)/n! / (z + i(t+n))``.
    The series alternates and, at ``t = 1/2``, converges only conditionally,
    so the tail is handled by repeated averaging of consecutive partial sums
    (Euler's transformation). The error estimate is the change between the
    transformed values started one term apart.
    """
    if not 0 < t <= 0.5:
        raise ValueError("the residue series is used for 0 < t <= 1/2")
    z, scalar = _arr(z)
    z1 = np.atleast_1d(z)
    depth = 40
    n_terms = max(64, int(4 * np.max(np.abs(z1))) + 8)
    _check_meixner_poles(t, z1, n_terms + depth)
    while True:
        total = n_terms + depth
        n = np.arange(total + 1)
        ratios = np.ones(total + 1)
        ratios[1:] = (n[1:] - 1 + 2.0 * t) / n[1:]
        b = 4.0**t * np.cumprod(ratios)
        sign = np.where(n % 2 == 0, 1.0, -1.0)
        terms = (sign * b) / (z1[..., None] + 1j * (t + n))
        partial = np.cumsum(terms, axis=-1)
        est_a = _euler_average(partial[..., n_terms - 1:total])
        est_b = _euler_average(partial[..., n_terms:total + 1])
        err = np.abs(est_b - est_a)
        if np.all(err < tol):
            return _ret(est_b, err, scalar, full_output)
        n_terms *= 2
        if n_terms + depth > max_terms:
            raise ConvergenceError(
                f"residue series hit the {max_terms}-term cap (estimate {err.max():.2e})",
                value=est_b, error=float(err.max()))


def g_meixner_continued(t, z, tol=1e-12, min_im=FIXED_RULE_DISTANCE, max_depth=64,
                        full_output=False):
    """
    Meixner Cauchy transform anywhere off the pole set ``{-(t+n) i}``.

    Applies ``G_t(w) = 1/(w + t i) + (i t / (w + t i)) G_{t+1/2}(w + i/2)``
    ``k`` times, with ``k`` the smallest count putting ``Im w + k/2`` at or
    above ``min_im``, and evaluates ``G_{t+k/2}`` there by quadrature.
    """
    if t <= 0:
        raise ValueError("Meixner parameter must be positive")
    z, scalar = _arr(z)
    z1 = np.atleast_1d(z)
    k = np.maximum(0, np.ceil((min_im - z1.imag) / 0.5)).astype(int)
    if k.max(initial=0) > max_depth:
        raise ConvergenceError(f"continuation depth {k.max()} exceeds {max_depth}")
    acc = np.zeros(z1.shape, dtype=complex)
    coef = np.ones(z1.shape, dtype=complex)
    for j in range(int(k.max(initial=0))):
        active = k > j
        d = z1[active] + 1j * (t + j)
        if np.any(np.abs(d) < POLE_RADIUS):
            raise PoleError(f"z = -{t + j:g}i is a pole of G_t")
        acc[active] += coef[active] / d
        coef[active] *= 1j * (t + 0.5 * j) / d
    val = np.empty(z1.shape, dtype=complex)
    err = np.zeros(z1.shape)
    for kk in np.unique(k):
        sel = k == kk
        g, e = g_quadrature(_m.meixner(t + 0.5 * kk), z1[sel] + 0.5j * kk, tol=tol, full_output=True)
        val[sel] = acc[sel] + coef[sel] * g
        err[sel] = np.abs(coef[sel]) * e
    return _ret(val, err, scalar, full_output)


def recursion_residual(t, z, tol=1e-12):
    """
    ``|LHS - RHS|`` of ``G_t(z - t i) = 1/z + (i t / z) G_{t+1/2}(z + (1/2 - t) i)``.

    Both sides are evaluated directly by quadrature of their own densities,
    so the check is independent of the continuation route.
    """
    z, scalar = _arr(z)
    if np.any(z.imag <= t):
        raise ValueError("recursion_residual needs Im z > t")
    lhs = g_quadrature(_m.meixner(t), z - 1j * t, tol=tol)
    rhs = 1.0 / z + (1j * t / z) * g_quadrature(_m.meixner(t + 0.5), z + (0.5 - t) * 1j, tol=tol)
    res = np.abs(lhs - rhs)
    return float(res) if scalar else res


# ------------------------------------------------------- logistic routes

def _check_logistic_poles(z):
    # poles at -(n - 1/2) i, n >= 1
    near = (np.abs(z.real) < POLE_RADIUS) & (z.imag < 0)
    if np.any(near):
        m = -z.imag[near] + 0.5
        if np.any(np.abs(m - np.round(m)) < POLE_RADIUS):
            raise PoleError("z is a pole -(n - 1/2) i of the logistic Cauchy transform")


def g_logistic(z, method=EvalMethod.TRIGAMMA_CLOSED, n_terms=10**4, full_output=False):
    """
    Cauchy transform of the logistic law.

    ``residue_series`` sums ``i / (z + (n - 1/2) i)^2`` for ``n <= n_terms``
    and adds the midpoint-rule integral of the rest, ``1/(z + i n_terms)``;
    the reported error bound is ``1/(12 d^3)`` with ``d`` the distance from
    the remaining poles. ``trigamma_closed`` evaluates ``-i psi'(1/2 - i z)``.
    """
    method = EvalMethod(method)
    z, scalar = _arr(z)
    z1 = np.atleast_1d(z)
    _check_logistic_poles(z1)
    if method == EvalMethod.TRIGAMMA_CLOSED:
        val = -1j * trigamma(0.5 - 1j * z1)
        err = 1e-15 * np.abs(val)
    elif method == EvalMethod.RESIDUE_SERIES:
        n = np.arange(1, n_terms + 1)
        val = np.empty(z1.shape, dtype=complex)
        flat, out = z1.ravel(), val.ravel()
        for i in range(0, len(flat), 256):
            zz = flat[i:i + 256, None]
            out[i:i + 256] = (1j / (zz + 1j * (n - 0.5)) ** 2).sum(axis=-1)
        val = out.reshape(z1.shape) + 1.0 / (z1 + 1j * n_terms)
        d = np.hypot(z1.real, np.maximum(z1.imag + n_terms, 0.0))
        err = 1.0 / (12.0 * d**3)
    else:
        raise ValueError(f"method {method.value} is not available for the logistic law")
    return _ret(val, err, scalar, full_output)


def g_logistic_curve_im(x):
    """``Im G(x - i/2) = (1/x^2 + (pi / sinh(pi x))^2) / 2`` for the logistic law."""
    x = np.asarray(x, dtype=float)
    if np.any(x == 0):
        raise PoleError("the curve value is singular at x = 0")
    with np.errstate(over="ignore"):
        out = 0.5 * (1.0 / x**2 + (math.pi / np.sinh(math.pi * x)) ** 2)
    return float(out) if out.ndim == 0 else out


def logistic_curve_series(x, n_terms=None, tol=1e-10, full_output=False):
    """
    ``sum_{n>=0} (x^2 - n^2) / (x^2 + n^2)^2`` by partial summation.

    The summand is the derivative of ``n / (x^2 + n^2)``, so the tail past
    ``N`` is replaced by its midpoint-rule integral ``-(N + 1/2) / (x^2 + (N + 1/2)^2)``.
    The remaining error is bounded by ``1 / (12 (N - |x|)^3)`` once ``N > 2|x|``;
    ``N`` is chosen from ``tol`` when not given.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x == 0):
        raise PoleError("the curve value is singular at x = 0")
    ax = float(np.max(np.abs(x)))
    if n_terms is None:
        n_terms = int(math.ceil(2 * ax + (12.0 * tol) ** (-1.0 / 3.0))) + 1
    if n_terms <= 2 * ax:
        raise ValueError("n_terms must exceed 2 |x| for the tail bound to hold")
    n = np.arange(n_terms + 1, dtype=float)
    x2 = x[..., None] ** 2
    partial = ((x2 - n**2) / (x2 + n**2) ** 2).sum(axis=-1)
    h = n_terms + 0.5
    val = partial - h / (x**2 + h**2)
    bound = np.full(x.shape, 1.0 / (12.0 * (n_terms - ax) ** 3))
    if val.ndim == 0:
        val, bound = float(val), float(bound)
    return (val, bound) if full_output else val


# ------------------------------------------------------------ dispatch

def default_method(measure, z=None):
    if measure.cauchy is not None:
        return EvalMethod.CLOSED_FORM
    if measure.is_meixner:
        return EvalMethod.CONTINUATION
    if measure.tag == "logistic":
        return EvalMethod.TRIGAMMA_CLOSED
    if z is not None and np.all(np.asarray(z).imag > 0):
        return EvalMethod.QUADRATURE
    if measure.complex_density and measure.strip > 0:
        return EvalMethod.CONTOUR_SHIFT
    return EvalMethod.QUADRATURE


def cauchy_transform(measure, z, method=None, tol=1e-12, full_output=False, **kw):
    """
    Evaluate ``G_mu(z)`` with the chosen (or default) method.

    Defaults: closed form when known, continuation for Meixner laws, the
    trigamma form for the logistic law, quadrature (or contour shift below
    the axis) for user densities.
    """
    method = EvalMethod(method) if method is not None else default_method(measure, z)
    if method == EvalMethod.CLOSED_FORM:
        if measure.cauchy is None:
            raise ValueError(f"no closed-form Cauchy transform for {measure.name}")
        z, scalar = _arr(z)
        if np.any(_pole_mask(measure, z)):
            raise PoleError(f"z is a pole of the Cauchy transform of {measure.name}")
        val = measure.cauchy(z)
        return _ret(val, np.zeros(np.shape(val)), scalar, full_output)
    if method == EvalMethod.QUADRATURE:
        return g_quadrature(measure, z, tol=tol, full_output=full_output)
    if method == EvalMethod.CONTOUR_SHIFT:
        return g_contour_shift(measure, z, tol=tol, full_output=full_output)
    if method == EvalMethod.CONTINUATION:
        if not measure.is_meixner:
            raise ValueError("continuation is only valid for Meixner laws")
        return g_meixner_continued(_meixner_t(measure), z, tol=tol, full_output=full_output, **kw)
    if method == EvalMethod.RESIDUE_SERIES:
        if measure.is_meixner:
            return g_meixner_series(_meixner_t(measure), z, tol=max(tol, 1e-13),
                                    full_output=full_output, **kw)
        if measure.tag == "logistic":
            return g_logistic(z, EvalMethod.RESIDUE_SERIES, full_output=full_output, **kw)
    if method == EvalMethod.TRIGAMMA_CLOSED and measure.tag == "logistic":
        return g_logistic(z, method, full_output=full_output)
    raise ValueError(f"method {method.value} is not available for {measure.name}")


def _pole_mask(measure, z):
    if measure.poles is None:
        return np.zeros(z.shape, bool)
    poles = np.asarray(measure.poles(float(np.max(np.abs(z), initial=0.0)) + 1.0), dtype=complex)
    if poles.size == 0:
        return np.zeros(z.shape, bool)
    return np.min(np.abs(z[..., None] - poles), axis=-1) < POLE_RADIUS


def f_of(measure, z, method=None, tol=1e-12, full_output=False):
    """
    Reciprocal Cauchy transform ``F = 1/G``.

    At poles of ``G`` the value is 0. Raises ``ZeroDivisionError`` where ``G``
    vanishes.
    """
    z, scalar = _arr(z)
    z1 = np.atleast_1d(z)
    at_pole = _pole_mask(measure, z1)
    val = np.zeros(z1.shape, dtype=complex)
    err = np.zeros(z1.shape)
    if np.any(~at_pole):
        g, e = cauchy_transform(measure, z1[~at_pole], method=method, tol=tol, full_output=True)
        if np.any(g == 0):
            raise ZeroDivisionError(f"G vanishes at a sample point of {measure.name}")
        val[~at_pole] = 1.0 / g
        err[~at_pole] = e / np.abs(g) ** 2
    return _ret(val, err, scalar, full_output)


def f_inverse_numeric(measure, z, cone=None, method=None, tol=1e-12, max_iter=100):
    """
    Solve ``F(w) = z`` by damped Newton iteration from ``w = z``.

    The derivative is a central difference with step ``1e-6 (1 + |w|)``.
    A step is halved (up to 10 times) while it fails to reduce the residual
    or leaves the upper half-plane. Once the residual is below tolerance, one
    more full step is taken if it lowers the residual further.

    Raises
    ------
    ValueError
        If ``z`` is outside the cone.
    ConvergenceError
        If the residual does not fall below ``tol * |z|`` in ``max_iter`` steps.
    """
    cone = cone or default_cone(measure)
    z = complex(z)
    if not cone.contains(z):
        raise ValueError(f"{z} is outside the cone alpha={cone.alpha}, M={cone.M}")
    def step(w, r):
        h = 1e-6 * (1.0 + abs(w))
        fp, fm = f_of(measure, np.array([w + h, w - h]), method, tol=1e-14)
        return r / ((fp - fm) / (2.0 * h))

    w = z
    r = complex(f_of(measure, w, method, tol=1e-14)) - z
    for _ in range(max_iter):
        if abs(r) < tol * abs(z):
            # one undamped polishing step, kept only if it helps
            w_new = w - step(w, r)
            if w_new.imag > 0:
                r_new = complex(f_of(measure, w_new, method, tol=1e-14)) - z
                if abs(r_new) < abs(r):
                    return w_new
            return w
        dw = step(w, r)
        lam = 1.0
        for _ in range(11):
            w_new = w - lam * dw
            if w_new.imag > 0:
                r_new = complex(f_of(measure, w_new, method, tol=1e-14)) - z
                if abs(r_new) < abs(r):
                    break
            lam *= 0.5
        else:
            raise ConvergenceError(f"Newton stalled at w={w} (residual {abs(r):.2e})",
                                   value=w, error=abs(r))
        w, r = w_new, r_new
    if abs(r) < tol * abs(z):
        return w
    raise ConvergenceError(f"Newton did not converge in {max_iter} steps (residual {abs(r):.2e})",
                           value=w, error=abs(r))


def voiculescu_phi(measure, z, cone=None, method=None, tol=1e-12, max_iter=100):
    """``phi(z) = F^{-1}(z) - z``."""
    return f_inverse_numeric(measure, z, cone, method, tol, max_iter) - complex(z)


# --------------------------------------------------- other integrals

def char_function_meixner(t, s, tol=1e-13, full_output=False):
    """Fourier integral ``int exp(i s x) rho_t(dx)``, computed by quadrature."""
    mu = _m.meixner(t)
    val, err = integrate(lambda x: np.exp(1j * s * x) * mu.density(x), breakpoints=(0.0,),
                         tol=tol, X=mu.tail_start, full_output=True)
    val = complex(val)
    return (val, err) if full_output else val


DEFAULT_EPS_LADDER = tuple(0.1 / 2**k for k in range(8))


def stieltjes_invert(measure, x, eps_ladder=DEFAULT_EPS_LADDER, method=None, full_output=False):
    """
    Density at ``x`` from ``-Im G(x + i eps) / pi``, extrapolated to ``eps = 0``.

    Uses Neville's polynomial extrapolation in ``eps`` over the ladder.

    Raises
    ------
    ConvergenceError
        If the successive extrapolants grow apart instead of settling.
    """
    eps = np.asarray(eps_ladder, dtype=float)
    g = cauchy_transform(measure, x + 1j * eps, method=method)
    vals = -np.imag(g) / math.pi
    # Neville tableau at 0; est[j] uses the first j+1 ladder points
    table = list(vals)
    est = [vals[0]]
    n = len(eps)
    for level in range(1, n):
        table = [
            (eps[i + level] * table[i] - eps[i] * table[i + 1]) / (eps[i + level] - eps[i])
            for i in range(n - level)
        ]
        est.append(table[0])
    result = float(est[-1])
    err = abs(est[-1] - est[-2]) if n > 1 else float("inf")
    if n > 2:
        prev = abs(est[-2] - est[-3])
        if err > prev and err > 1e-6 * max(1.0, abs(result)):
            raise ConvergenceError("Stieltjes extrapolation diverges", value=result, error=err)
    return (result, err) if full_output else result
