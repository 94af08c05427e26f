"""
Sampled evidence for the univalent-inverse (UI) criterion.

A measure qualifies when some curve ``x -> x - d i`` in the closed lower
half-plane satisfies:

* B: ``Im F <= 0`` on the curve;
* D: ``G`` has no zeros in the region above the curve (argument principle on
  a closed contour made of the curve and a large upper arc);
* E: ``F(z) = z + o(z)`` uniformly as ``z -> infinity`` in that region.

The horizontal-line condition on the curve itself holds by construction.
Every check samples finitely many points, so a pass is evidence and not a
proof; reports carry the grid metadata and worst margins for auditing.
"""

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .config import RunConfig
from .exceptions import ConvergenceError, PoleError
from .transforms import POLE_RADIUS, cauchy_transform

__all__ = [
    "CurveSpec",
    "SubReport",
    "CheckReport",
    "Contour",
    "circle_contour",
    "curve_contour",
    "winding_number",
    "check_condition_B",
    "check_condition_D_zeros",
    "check_condition_E_asymptotic",
    "check_quadrant_positivity",
    "run_full_check",
]

MARGIN_TOL = 1e-12
MIN_ABS_G = 1e-10
POLE_EVIDENCE = 1e3
MAX_SAMPLES = 10**6


@dataclass(frozen=True)
class CurveSpec:
    """Horizontal curve ``x - depth i`` sampled for ``|x| <= x_max``."""

    depth: float
    x_max: float = 50.0
    exclusion_radius: float = 1e-3

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be nonnegative (curve in the closed lower half-plane)")
        if self.x_max <= 0:
            raise ValueError("x_max must be positive")
        if not 0 <= self.exclusion_radius < self.x_max:
            raise ValueError("exclusion radius must lie in [0, x_max)")


@dataclass
class SubReport:
    name: str
    passed: bool
    margin: float
    location: object = None
    details: dict = field(default_factory=dict)
    exploratory: bool = False

    def to_dict(self):
        d = asdict(self)
        d["location"] = _jsonable(self.location)
        d["details"] = _jsonable(self.details)
        return d


@dataclass
class CheckReport:
    measure: str
    condition_B: SubReport
    condition_D: SubReport
    condition_E: SubReport
    grid: dict
    exploratory_flags: list = field(default_factory=list)

    @property
    def overall(self):
        return self.condition_B.passed and self.condition_D.passed and self.condition_E.passed

    def to_dict(self):
        return {
            "measure": self.measure,
            "overall": "pass" if self.overall else "fail",
            "condition_A": "pass (horizontal curve, structural)",
            "condition_B": self.condition_B.to_dict(),
            "condition_D": self.condition_D.to_dict(),
            "condition_E": self.condition_E.to_dict(),
            "grid": _jsonable(self.grid),
            "exploratory_flags": list(self.exploratory_flags),
            "note": "sampled evidence, not a proof",
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _evaluator(measure, method=None, tol=1e-12):
    def G(z):
        return np.asarray(cauchy_transform(measure, np.asarray(z, dtype=complex),
                                           method=method, tol=tol), dtype=complex)
    return G


def _curve_poles(measure, depth, x_max):
    """Real parts of the poles of ``G`` lying on the curve, ``|x| <= x_max``."""
    if measure.poles is None:
        return []
    poles = measure.poles(math.hypot(x_max, depth) + 1.0)
    return sorted(float(p.real) + 0.0 for p in np.asarray(poles, dtype=complex)
                  if abs(p.imag + depth) < 1e-12 and abs(p.real) <= x_max)


def _curve_grid(curve, n_points, pole_xs):
    lo = curve.exclusion_radius if curve.exclusion_radius > 0 else 1e-3
    mags = np.geomspace(lo, curve.x_max, n_points)
    xs = np.concatenate([-mags[::-1], mags])
    if 0.0 not in pole_xs:
        xs = np.insert(xs, n_points, 0.0)
    for x0 in pole_xs:
        if x0 != 0.0:
            xs = xs[np.abs(xs - x0) >= curve.exclusion_radius]
    return xs


# ----------------------------------------------------------- condition B

def check_condition_B(measure, curve, n_points=400, method=None, tol=1e-12):
    """
    ``Im F(x - d i) <= 0`` on a symmetric log-spaced grid.

    ``n_points`` abscissae per side in ``[delta, x_max]``; points within
    ``delta`` of a pole on the curve are excluded, and ``|G|`` just beside each
    such pole is recorded as evidence that ``F`` vanishes there.
    """
    d = curve.depth
    pole_xs = _curve_poles(measure, d, curve.x_max)
    xs = _curve_grid(curve, n_points, pole_xs)
    G = _evaluator(measure, method, tol)
    g = G(xs - 1j * d)
    with np.errstate(divide="ignore", invalid="ignore"):
        im_f = np.where(np.isfinite(g), (1.0 / g).imag, 0.0)
    if np.any(g == 0):
        raise ZeroDivisionError(f"G vanishes on the curve of {measure.name}")
    margins = -im_f
    i = int(np.argmin(margins))
    evidence = []
    for x0 in pole_xs:
        delta = curve.exclusion_radius
        if delta > 0:
            near = np.abs(G(np.array([x0 - delta, x0 + delta]) - 1j * d))
            evidence.append({"x": x0, "abs_G": float(near.min()),
                             "passed": bool(near.min() >= POLE_EVIDENCE)})
    return SubReport(
        name="B",
        passed=bool(margins[i] >= -MARGIN_TOL),
        margin=float(margins[i]),
        location=float(xs[i]),
        details={"samples": int(xs.size), "max_im_F": float(im_f[i]),
                 "min_im_G": float(np.min(g.imag)),
                 "excluded_poles": pole_xs, "pole_evidence": evidence},
    )


# ------------------------------------------------------------- contours

class Contour:
    """Closed piecewise path of segments and circular arcs, traversed in order."""

    def __init__(self):
        self.pieces = []

    def segment(self, a, b):
        self.pieces.append(("segment", complex(a), complex(b)))
        return self

    def arc(self, center, radius, theta0, theta1):
        self.pieces.append(("arc", complex(center), float(radius), float(theta0), float(theta1)))
        return self

    def piece_length(self, i):
        p = self.pieces[i]
        if p[0] == "segment":
            return abs(p[2] - p[1])
        return abs(p[2] * (p[4] - p[3]))

    def __call__(self, s):
        """Point at parameter ``s`` in ``[0, n_pieces]``; piece ``i`` covers ``[i, i+1]``."""
        s = np.asarray(s, dtype=float)
        idx = np.minimum(np.floor(s).astype(int), len(self.pieces) - 1)
        u = s - idx
        out = np.empty(s.shape, dtype=complex)
        for i, p in enumerate(self.pieces):
            sel = idx == i
            if p[0] == "segment":
                out[sel] = p[1] + (p[2] - p[1]) * u[sel]
            else:
                out[sel] = p[1] + p[2] * np.exp(1j * (p[3] + (p[4] - p[3]) * u[sel]))
        return out

    def initial_parameters(self, min_samples=2000, min_per_piece=64):
        lengths = [self.piece_length(i) for i in range(len(self.pieces))]
        total = sum(lengths)
        s = []
        for i, length in enumerate(lengths):
            n = max(min_per_piece, int(round(min_samples * length / total)))
            s.append(i + np.arange(n) / n)
        s.append([float(len(self.pieces))])
        return np.concatenate(s)


def circle_contour(center, radius):
    return Contour().arc(center, radius, 0.0, 2 * math.pi)


def curve_contour(depth, R, pole_xs=(), delta=1e-3):
    """
    Curve segment ``x - depth i`` for ``|x| <= R``, closed by the upper arc.

    Poles on the segment are bypassed by semicircles of radius ``delta`` on
    the upper side, which keeps them outside the enclosed region.
    """
    c = Contour()
    x = -R
    for x0 in sorted(p for p in pole_xs if -R + delta < p < R - delta):
        c.segment(complex(x, -depth), complex(x0 - delta, -depth))
        c.arc(complex(x0, -depth), delta, math.pi, 0.0)
        x = x0 + delta
    c.segment(complex(x, -depth), complex(R, -depth))
    a = math.atan2(depth, R)
    c.arc(0.0, math.hypot(R, depth), -a, math.pi + a)
    return c


def _phase_steps(g):
    return np.angle(g[1:] / g[:-1])


def winding_number(func, contour, min_samples=2000, max_samples=MAX_SAMPLES):
    """
    Winding number of ``func`` along ``contour`` by sampled argument tracking.

    Intervals whose phase step reaches ``pi/2`` are bisected until every step
    is smaller.

    Returns
    -------
    winding : int
    info : dict
        ``samples``, ``min_abs`` (smallest ``|func|`` seen), ``points`` and the
        sampled values.
    """
    s = contour.initial_parameters(min_samples)
    z = contour(s)
    g = func(z)
    while True:
        if not np.all(np.isfinite(g)):
            raise PoleError("contour passes through a pole")
        if np.any(g == 0):
            raise ZeroDivisionError("function vanishes on the contour")
        steps = _phase_steps(g)
        bad = np.nonzero(np.abs(steps) >= math.pi / 2)[0]
        if bad.size == 0:
            break
        if s.size + bad.size > max_samples:
            raise ConvergenceError(f"winding refinement exceeded {max_samples} samples",
                                   value=None, error=float(np.abs(steps).max()))
        s_mid = 0.5 * (s[bad] + s[bad + 1])
        z_mid = contour(s_mid)
        g_mid = func(z_mid)
        s = np.insert(s, bad + 1, s_mid)
        z = np.insert(z, bad + 1, z_mid)
        g = np.insert(g, bad + 1, g_mid)
    total = steps.sum() / (2 * math.pi)
    return int(round(total)), {"samples": int(s.size), "min_abs": float(np.abs(g).min()),
                               "raw": float(total), "points": z, "values": g}


def _enclosed(points, p):
    return int(round(_phase_steps(points - p).sum() / (2 * math.pi)))


# ----------------------------------------------------------- condition D

def check_condition_D_zeros(measure, curve, R=20.0, method=None, tol=1e-12, min_samples=2000):
    """
    Count zeros of ``G`` above the curve inside ``|z| < R``.

    Zero count = winding number of ``G`` + number of enclosed poles; the check
    passes when it is 0 and ``|G|`` stays above ``1e-10`` on the contour.
    """
    d = curve.depth
    pole_xs = _curve_poles(measure, d, R)
    delta = curve.exclusion_radius if curve.exclusion_radius > 0 else 1e-3
    contour = curve_contour(d, R, pole_xs, delta)
    G = _evaluator(measure, method, tol)
    wind, info = winding_number(G, contour, min_samples=min_samples)
    pts = info["points"]
    poles = [] if measure.poles is None else np.asarray(measure.poles(math.hypot(R, d) + 1.0),
                                                           dtype=complex)
    if len(poles) and np.min(np.abs(pts[:, None] - poles[None, :])) < POLE_RADIUS:
        raise PoleError("contour hits a pole")
    enclosed = [complex(p) for p in poles if _enclosed(pts, p) != 0]
    zeros = wind + len(enclosed)
    passed = zeros == 0 and info["min_abs"] > MIN_ABS_G
    return SubReport(
        name="D",
        passed=bool(passed),
        margin=info["min_abs"],
        location=None,
        details={"winding": wind, "enclosed_poles": enclosed, "zero_count": zeros,
                 "min_abs_G": info["min_abs"], "samples": info["samples"], "radius": R,
                 "indented_poles": pole_xs},
    )


# ----------------------------------------------------------- condition E

def _e_points(R, d, n_dir=16):
    theta = math.pi * (np.arange(n_dir) + 0.5) / n_dir
    blended = R * np.exp(1j * theta) - 1j * d * (1.0 - np.sin(theta))
    edge = np.array([R - 1j * d + 0.05j, -R - 1j * d + 0.05j,
                     R - 1j * d + 0.5j, -R - 1j * d + 0.5j])
    return np.concatenate([blended, edge])


def check_condition_E_asymptotic(measure, curve, R_ladder=(50.0, 100.0, 200.0), method=None,
                                 tol=1e-12):
    """
    ``max |F(z)/z - 1|`` over 16 directions and 4 points just above the curve,
    for each radius; passes when it decreases along the ladder and ends below 0.05.
    """
    G = _evaluator(measure, method, tol)
    worst = []
    for R in R_ladder:
        z = _e_points(R, curve.depth)
        dev = np.abs(1.0 / (G(z) * z) - 1.0)
        worst.append(float(dev.max()))
    decreasing = all(b < a for a, b in zip(worst, worst[1:]))
    passed = decreasing and worst[-1] < 0.05
    return SubReport(
        name="E",
        passed=bool(passed),
        margin=0.05 - worst[-1],
        location=float(R_ladder[-1]),
        details={"radii": list(map(float, R_ladder)), "max_deviation": worst,
                 "decreasing": decreasing},
    )


# ------------------------------------------------------------ quadrant

def check_quadrant_positivity(measure, x_grid, y_grid, method=None, tol=1e-12):
    """
    ``Re G(x + y i) > 0`` for ``x > 0`` on a grid.

    Holds in the upper half-plane for symmetric laws with a density that
    decreases on ``(0, inf)``. Negative ``y`` on Meixner laws is outside what
    is known and is reported as exploratory.
    """
    x = np.asarray(x_grid, dtype=float)
    y = np.asarray(y_grid, dtype=float)
    if np.any(x <= 0):
        raise ValueError("x grid must be positive")
    X, Y = np.meshgrid(x, y)
    G = _evaluator(measure, method, tol)
    re = G(X + 1j * Y).real
    i = np.unravel_index(int(np.argmin(re)), re.shape)
    exploratory = bool(measure.is_meixner and np.any(y < 0))
    return SubReport(
        name="quadrant_positivity",
        passed=bool(re[i] > 0),
        margin=float(re[i]),
        location=complex(X[i], Y[i]),
        details={"x_range": [float(x.min()), float(x.max())],
                 "y_range": [float(y.min()), float(y.max())], "samples": int(re.size)},
        exploratory=exploratory,
    )


# -------------------------------------------------------------- driver

def _exploratory_flags(measure):
    flags = []
    if measure.tag == "meixner" and measure.extra.get("t", 0) > 0.5:
        flags.append("meixner with t > 1/2: membership is an open problem")
    if measure.tag == "user":
        flags.append("user-defined measure: no reference result")
    return flags


def run_full_check(measure, curve, config=None, method=None):
    """
    Conditions B, D and E for ``measure`` on ``curve``.

    Grid sizes, contour radius and quadrature tolerance come from ``config``
    (``grid.points``, ``contour.radius``, ``quadrature.tol``); ``curve``
    supplies depth, ``x_max`` and the exclusion radius.
    """
    config = config or RunConfig()
    tol = config["quadrature.tol"]
    n_points = config["grid.points"]
    R = config["contour.radius"]
    b = check_condition_B(measure, curve, n_points=n_points, method=method, tol=tol)
    dd = check_condition_D_zeros(measure, curve, R=R, method=method, tol=tol)
    e = check_condition_E_asymptotic(measure, curve, method=method, tol=tol)
    grid = {"depth": curve.depth, "x_max": curve.x_max, "exclusion_radius": curve.exclusion_radius,
            "points_per_side": n_points, "spacing": "log", "contour_radius": R,
            "config": config.to_dict()}
    flags = _exploratory_flags(measure)
    for sub in (b, dd, e):
        sub.exploratory = bool(flags)
    return CheckReport(measure.name, b, dd, e, grid, flags)
