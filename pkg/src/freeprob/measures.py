"""
Catalog of probability measures on the real line.

Each entry is a :class:`MeasureSpec` carrying a density evaluator, the
support, a symmetry flag and whatever closed forms are known: the Cauchy
transform, the inverse reciprocal Cauchy transform, the Jacobi recurrence and
exact moments. Evaluators are vectorized over numpy arrays.

Measures are addressed from the command line by tags such as
``meixner:t=0.3``, ``secant``, ``logistic``, ``semicircle``, ``free_poisson``,
``cauchy``, ``beta:a=0.5`` or ``two_point``.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from . import orthopoly
from ._numbers import bernoulli_numbers, catalan, secant_numbers
from .sequences import MomentSequence, to_fraction
from .specfun import log_gamma

__all__ = [
    "MeasureSpec",
    "meixner",
    "hyperbolic_secant",
    "logistic",
    "semicircle",
    "free_poisson",
    "cauchy",
    "beta",
    "two_point",
    "user_defined",
    "parse_measure",
    "density_meixner",
    "density_logistic",
    "reference_moments",
    "rescale_moments",
    "closed_form_F_inverse",
    "meixner_tail_cutoff",
    "UNIMPLEMENTED_TAGS",
]

UNIMPLEMENTED_TAGS = ("gaussian", "q_gaussian", "ultraspherical", "student", "boolean_stable")


@dataclass(frozen=True, eq=False)
class MeasureSpec:
    """A probability measure together with the analytic data known about it.

    ``cauchy`` is a closed-form Cauchy transform valid on the whole domain of
    its meromorphic continuation; ``poles`` returns the poles of that
    continuation inside a radius. ``strip`` is the half-width of the horizontal
    strip where the density is analytic (0 when it is not). ``features`` are
    abscissae where the density needs extra quadrature resolution.
    """

    tag: str
    params: tuple = ()
    density: Optional[Callable] = None
    support: tuple = (-math.inf, math.inf)
    symmetric: bool = False
    cauchy: Optional[Callable] = None
    F_inverse: Optional[Callable] = None
    jacobi: Optional[orthopoly.PolynomialRecurrence] = None
    moment_gen: Optional[Callable] = None
    poles: Optional[Callable] = None
    scale: float = 1.0
    strip: float = 0.0
    tail_start: float = 30.0
    features: tuple = ()
    complex_density: bool = False
    description: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def name(self):
        if not self.params:
            return self.tag
        return self.tag + ":" + ",".join(f"{k}={v}" for k, v in self.params)

    def param(self, key):
        return dict(self.params)[key]

    @property
    def is_meixner(self):
        return self.tag in ("meixner", "secant")

    @property
    def smooth(self):
        """True for analytic densities on the whole line."""
        return self.density is not None and self.strip > 0 and math.isinf(self.support[0])

    def moments(self, N):
        if self.moment_gen is not None:
            return self.moment_gen(N)
        if self.jacobi is not None:
            return orthopoly.moments_from_jacobi(self.jacobi, N)
        raise ValueError(f"no exact moments known for {self.name}")

    def __repr__(self):
        return f"MeasureSpec({self.name})"


# ---------------------------------------------------------------- densities

def _meixner_const(t):
    return 4.0**t / (2.0 * math.pi * math.exp(math.lgamma(2.0 * t)))


def density_meixner(t, x):
    """
    Density of the symmetric Meixner law ``rho_t``.

    ``4^t / (2 pi Gamma(2t)) |Gamma(t + i x)|^2``. Complex ``x`` is accepted
    and gives the analytic continuation ``Gamma(t + i x) Gamma(t - i x)``,
    valid for ``|Im x| < t``.
    """
    if t <= 0:
        raise ValueError("Meixner density requires t > 0")
    c = _meixner_const(t)
    if np.iscomplexobj(x):
        x = np.asarray(x)
        return c * np.exp(log_gamma(t + 1j * x) + log_gamma(t - 1j * x))
    x = np.asarray(x, dtype=float)
    out = c * np.exp(2.0 * np.real(log_gamma(t + 1j * x)))
    return float(out) if out.ndim == 0 else out


def _reflect(x):
    """``x`` flipped into the right half-plane; the densities below are even."""
    return np.where(np.real(x) < 0, -x, x)


def density_logistic(x):
    """Logistic density ``pi / (2 cosh^2(pi x))``; accepts complex ``x``."""
    # 2 / cosh^2 rewritten with exp(-2 pi x), Re x >= 0, to avoid overflow in the tails
    e = np.exp(-2.0 * math.pi * _reflect(np.asarray(x)))
    out = 2.0 * math.pi * e / (1.0 + e) ** 2
    return out if out.ndim else out[()]


def _density_secant(x):
    e = np.exp(-math.pi * _reflect(np.asarray(x)))
    out = 2.0 * e / (1.0 + e * e)
    return out if out.ndim else out[()]


def meixner_tail_cutoff(t, mass=1e-12):
    """Abscissa beyond which ``rho_t`` carries less than ``mass`` (one side).

    Stirling gives ``|Gamma(t+ix)|^2 ~ 2 pi |x|^(2t-1) exp(-pi |x|)`` for large
    ``|x|``; the tail mass is bounded by the integral of that envelope.
    """
    c = _meixner_const(t) * 2.0 * math.pi
    X = 5.0
    while True:
        # int_X^inf x^(2t-1) e^(-pi x) dx <= X^(2t-1) e^(-pi X) / (pi - (2t-1)/X) for 2t-1 >= 0
        p = max(2.0 * t - 1.0, 0.0)
        bound = c * X**p * math.exp(-math.pi * X) / (math.pi - p / X if p / X < math.pi else 1e-300)
        if bound < mass:
            return X
        X += 1.0


# ---------------------------------------------------------- closed-form G's

def _sqrt_prod(z, a, b):
    """``sqrt(z - a) * sqrt(z - b)``: branch cut on [a, b], ~ z at infinity."""
    return np.sqrt(z - a) * np.sqrt(z - b)


def _g_semicircle(z):
    z = np.asarray(z, dtype=complex)
    return (z - _sqrt_prod(z, 2.0, -2.0)) / 2.0


def _g_free_poisson(z):
    z = np.asarray(z, dtype=complex)
    return (z - _sqrt_prod(z, 4.0, 0.0)) / (2.0 * z)


def _g_cauchy(z):
    return 1.0 / (np.asarray(z, dtype=complex) + 1j)


def _g_two_point(z):
    z = np.asarray(z, dtype=complex)
    return z / (z * z - 1.0)


def _make_g_beta(a):
    def g(z):
        z = np.asarray(z, dtype=complex)
        return (1.0 - (1.0 - 1.0 / z) ** a) / a
    return g


# ------------------------------------------------------------ F^{-1} forms

def _finv_semicircle(z):
    return z + 1.0 / z


def _finv_free_poisson(z):
    return z + z / (z - 1.0)


def _finv_cauchy(z):
    return z - 1j


def _make_finv_beta(a):
    def finv(z):
        return 1.0 / (1.0 - (1.0 - a / z) ** (1.0 / a))
    return finv


# ------------------------------------------------------------- catalog

def _meixner_poles(t):
    def poles(R):
        n = np.arange(0, max(int(R - t) + 1, 0))
        return list(-1j * (t + n[t + n <= R]))
    return poles


def _even_moments(seq_even, N):
    vals = []
    for n in range(1, N + 1):
        vals.append(Fraction(0) if n % 2 else seq_even[n // 2])
    return MomentSequence(vals)


def meixner(t):
    """Symmetric Meixner law ``rho_t``; ``t = 1/2`` is the hyperbolic secant law."""
    return _meixner(float(t))


@lru_cache(maxsize=256)
def _meixner(t):
    t_exact = to_fraction(t)
    t = float(t)
    if t <= 0:
        raise ValueError("Meixner parameter must be positive")
    X = max(30.0, meixner_tail_cutoff(t, 1e-16))
    return MeasureSpec(
        tag="meixner",
        params=(("t", _fmt(t)),),
        density=lambda x, t=t: density_meixner(t, x),
        symmetric=True,
        jacobi=orthopoly.meixner_pollaczek(t_exact),
        poles=_meixner_poles(t),
        scale=math.sqrt(t / 2.0),
        strip=t,
        tail_start=X,
        features=(0.0,),
        complex_density=True,
        description="symmetric Meixner distribution, density ~ |Gamma(t + ix)|^2",
        extra={"t": t},
    )


@lru_cache(maxsize=None)
def hyperbolic_secant():
    """``mu_1(dx) = dx / cosh(pi x)``, identical to ``meixner(1/2)``."""
    return MeasureSpec(
        tag="secant",
        density=_density_secant,
        symmetric=True,
        jacobi=orthopoly.meixner_pollaczek(Fraction(1, 2)),
        poles=_meixner_poles(0.5),
        scale=0.5,
        strip=0.5,
        tail_start=30.0,
        features=(0.0,),
        complex_density=True,
        description="hyperbolic secant law (Levy stochastic area)",
        extra={"t": 0.5},
    )


def _logistic_poles(R):
    n = np.arange(1, int(R + 0.5) + 1)
    return list(-1j * (n - 0.5))


@lru_cache(maxsize=None)
def logistic():
    """``mu_2(dx) = pi / (2 cosh^2(pi x)) dx``."""
    return MeasureSpec(
        tag="logistic",
        density=density_logistic,
        symmetric=True,
        jacobi=orthopoly.continuous_hahn(),
        poles=_logistic_poles,
        scale=math.sqrt(1.0 / 12.0),
        strip=0.5,
        tail_start=20.0,
        features=(0.0,),
        complex_density=True,
        description="logistic distribution",
    )


@lru_cache(maxsize=None)
def semicircle():
    return MeasureSpec(
        tag="semicircle",
        density=lambda x: np.sqrt(np.clip(4.0 - np.asarray(x) ** 2, 0.0, None)) / (2.0 * math.pi),
        support=(-2.0, 2.0),
        symmetric=True,
        cauchy=_g_semicircle,
        F_inverse=_finv_semicircle,
        moment_gen=lambda N: reference_moments("semicircle", N),
        poles=lambda R: [],
        scale=1.0,
        description="Wigner semicircle law",
    )


@lru_cache(maxsize=None)
def free_poisson():
    def dens(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where((x > 0) & (x <= 4), np.sqrt(np.clip((4.0 - x) / x, 0, None)), 0.0)
        return out / (2.0 * math.pi)

    return MeasureSpec(
        tag="free_poisson",
        density=dens,
        support=(0.0, 4.0),
        cauchy=_g_free_poisson,
        F_inverse=_finv_free_poisson,
        moment_gen=lambda N: reference_moments("free_poisson", N),
        poles=lambda R: [],
        scale=math.sqrt(2.0),
        description="free Poisson (Marchenko-Pastur) law of rate 1",
    )


@lru_cache(maxsize=None)
def cauchy():
    return MeasureSpec(
        tag="cauchy",
        density=lambda x: 1.0 / (math.pi * (1.0 + np.asarray(x) ** 2)),
        symmetric=True,
        cauchy=_g_cauchy,
        F_inverse=_finv_cauchy,
        poles=lambda R: [-1j] if R >= 1 else [],
        scale=1.0,
        tail_start=10.0,
        features=(0.0,),
        description="standard Cauchy law",
    )


@lru_cache(maxsize=64)
def beta(a):
    """Beta law ``sin(pi a)/(pi a) ((1-x)/x)^a dx`` on (0, 1), ``1/2 <= |a| < 1``."""
    a = float(a)
    if not 0.5 <= abs(a) < 1.0:
        raise ValueError("beta law needs 1/2 <= |a| < 1")

    def dens(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where((x > 0) & (x < 1), ((1.0 - x) / x) ** a, 0.0)
        return math.sin(math.pi * a) / (math.pi * a) * out

    return MeasureSpec(
        tag="beta",
        params=(("a", _fmt(a)),),
        density=dens,
        support=(0.0, 1.0),
        cauchy=_make_g_beta(a),
        F_inverse=_make_finv_beta(a),
        poles=lambda R: [],
        scale=0.5,
        description="beta law from the UI examples",
    )


@lru_cache(maxsize=None)
def two_point():
    """Symmetric Bernoulli law ``(delta_{-1} + delta_1) / 2``; not freely infinitely divisible."""
    return MeasureSpec(
        tag="two_point",
        density=None,
        support=(-1.0, 1.0),
        symmetric=True,
        cauchy=_g_two_point,
        moment_gen=lambda N: MomentSequence([Fraction((n + 1) % 2) for n in range(1, N + 1)]),
        poles=lambda R: [p for p in (-1.0 + 0j, 1.0 + 0j) if abs(p) <= R],
        scale=1.0,
        description="two-point negative control",
    )


def user_defined(density, support=(-math.inf, math.inf), symmetric=False, name="user",
                 strip=0.0, complex_density=False, scale=1.0, tail_start=30.0,
                 features=(0.0,), poles=None):
    """
    Wrap a caller-supplied density.

    With ``complex_density=True`` and ``strip > 0`` the density must accept
    complex arguments with ``|Im x| < strip``; the Cauchy transform can then be
    continued below the real axis by shifting the integration line.
    """
    return MeasureSpec(
        tag="user",
        params=(("name", name),),
        density=density,
        support=tuple(support),
        symmetric=symmetric,
        poles=poles,
        scale=scale,
        strip=strip,
        tail_start=tail_start,
        features=tuple(features),
        complex_density=complex_density,
        description="user-defined density",
    )


def _fmt(v):
    return repr(float(v)).rstrip("0").rstrip(".") if isinstance(v, float) else str(v)


# ----------------------------------------------------------- parsing

def _parse_params(text):
    out = {}
    for item in filter(None, text.split(",")):
        if "=" not in item:
            raise ValueError(f"bad measure parameter {item!r}; expected key=value")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def parse_measure(text):
    """Build a catalog measure from a tag such as ``meixner:t=0.3``."""
    tag, _, rest = text.strip().partition(":")
    tag = tag.lower().replace("-", "_")
    params = _parse_params(rest)
    if tag in UNIMPLEMENTED_TAGS:
        raise NotImplementedError(f"measure {tag!r} is listed in the catalog but not implemented")
    if tag == "meixner":
        if "t" not in params:
            raise ValueError("meixner needs a parameter, e.g. meixner:t=0.3")
        return meixner(float(Fraction(params["t"])))
    if params and tag not in ("beta",):
        raise ValueError(f"measure {tag!r} takes no parameters")
    simple = {
        "secant": hyperbolic_secant,
        "hyperbolic_secant": hyperbolic_secant,
        "mu1": hyperbolic_secant,
        "logistic": logistic,
        "mu2": logistic,
        "semicircle": semicircle,
        "free_poisson": free_poisson,
        "cauchy": cauchy,
        "two_point": two_point,
    }
    if tag in simple:
        return simple[tag]()
    if tag == "beta":
        if "a" not in params:
            raise ValueError("beta needs a parameter, e.g. beta:a=0.5")
        return beta(float(Fraction(params["a"])))
    raise ValueError(f"unknown measure tag {tag!r}")


# ---------------------------------------------------------- moments

MAX_MOMENT_ORDER = 40


def reference_moments(tag, N):
    """
    Exact reference moments ``m_1..m_N``.

    ``rescaled_secant``
        law with density ``1 / (2 cosh(pi x / 2))``; even moments are the
        secant (Euler) numbers 1, 1, 5, 61, 1385, ...
    ``rescaled_logistic``
        law with density ``pi / (4 cosh^2(pi x / 2))``; ``m_n = |(2 - 2^n) B_n|``.
    ``semicircle``
        Catalan numbers at even orders.
    ``free_poisson``
        ``m_n = Catalan(n)``.
    """
    if N > MAX_MOMENT_ORDER:
        raise ValueError(f"order {N} exceeds the supported maximum {MAX_MOMENT_ORDER}")
    if tag == "rescaled_secant":
        return _even_moments(secant_numbers(N // 2), N)
    if tag == "rescaled_logistic":
        B = bernoulli_numbers(N)
        return MomentSequence([abs((2 - 2**n) * B[n]) if n % 2 == 0 else 0 for n in range(1, N + 1)])
    if tag == "semicircle":
        return _even_moments([catalan(k) for k in range(N // 2 + 1)], N)
    if tag == "free_poisson":
        return MomentSequence([catalan(n) for n in range(1, N + 1)])
    raise ValueError(f"no reference moments for {tag!r}")


def rescale_moments(m, c):
    """Moments of ``c X`` from those of ``X``: ``m_n -> c^n m_n`` (exact)."""
    c = to_fraction(c)
    return MomentSequence([c**n * v for n, v in enumerate(m.values, start=1)])


_FINV = {
    "semicircle": _finv_semicircle,
    "free_poisson": _finv_free_poisson,
    "cauchy": _finv_cauchy,
}


def closed_form_F_inverse(tag, z, a=None):
    """Closed-form ``F^{-1}`` for the semicircle, free Poisson, Cauchy and beta laws."""
    z = np.asarray(z, dtype=complex)
    if tag == "semicircle" and np.any(z == 0):
        raise ZeroDivisionError("F^{-1} of the semicircle law is singular at z = 0")
    if tag == "free_poisson" and np.any(z == 1):
        raise ZeroDivisionError("F^{-1} of the free Poisson law is singular at z = 1")
    if tag == "beta":
        if a is None:
            raise ValueError("beta needs the parameter a")
        out = _make_finv_beta(float(a))(z)
    elif tag in _FINV:
        out = _FINV[tag](z)
    else:
        raise ValueError(f"no closed-form F^-1 for {tag!r}")
    return complex(out) if out.ndim == 0 else out
