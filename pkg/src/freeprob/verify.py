"""
Acceptance checks, one function per criterion.

Each check returns a :class:`CriterionResult`; :func:`run_all` runs them in
order. Everything is seeded, so repeated runs give identical results.
"""

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import measures as M
from .cumulants import (
    cond_psd_check,
    cumulants_by_series_reversion,
    free_convolve_moments,
    free_cumulants_to_moments,
    moments_to_free_cumulants,
)
from .fidcheck import CurveSpec, run_full_check
from .orthopoly import continuous_hahn, meixner_pollaczek, moments_from_jacobi
from .quadrature import integrate
from .sequences import FreeCumulantSequence, format_rational
from .transforms import (
    ConeSpec,
    char_function_meixner,
    f_inverse_numeric,
    g_logistic,
    g_logistic_curve_im,
    logistic_curve_series,
    recursion_residual,
    voiculescu_phi,
)

__all__ = ["CriterionResult", "CRITERIA", "run_all", "noncrossing_partitions",
           "moments_by_enumeration"]

SEED = 20240531


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    metrics: dict = field(default_factory=dict)

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.title}: {self.detail}"

    def to_dict(self):
        return {"number": self.number, "title": self.title, "passed": self.passed,
                "detail": self.detail, "metrics": self.metrics}


def _fmt_seq(vals):
    return "(" + ", ".join(format_rational(v) for v in vals) + ")"


# ------------------------------------------------------ oracle: NC partitions

def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _crossing(a, b):
    for p, r in itertools.combinations(sorted(a), 2):
        for q, s in itertools.combinations(sorted(b), 2):
            if p < q < r < s or q < p < s < r:
                return True
    return False


@lru_cache(maxsize=None)
def noncrossing_partitions(n):
    """All non-crossing partitions of ``{1..n}`` by brute-force filtering of set partitions."""
    out = []
    for part in _set_partitions(list(range(1, n + 1))):
        if not any(_crossing(a, b) for a, b in itertools.combinations(part, 2)):
            out.append(tuple(sorted(tuple(sorted(b)) for b in part)))
    return tuple(out)


def moments_by_enumeration(r, n_max):
    """``m_n = sum over NC(n) of prod r_{|block|}``."""
    out = []
    for n in range(1, n_max + 1):
        total = Fraction(0)
        for part in noncrossing_partitions(n):
            term = Fraction(1)
            for block in part:
                term *= r[len(block) - 1]
            total += term
        out.append(total)
    return out


# ------------------------------------------------------------- criteria

def criterion_1():
    m = M.reference_moments("rescaled_secant", 10)
    a = moments_to_free_cumulants(m)
    b = cumulants_by_series_reversion(m)
    expected = (1, 3, 38, 947, 37394)
    ok = a.even() == expected and a == b and a.is_odd_vanishing()
    return CriterionResult(1, "cumulant reproduction", ok,
                           f"(r2..r10) = {_fmt_seq(a.even())}, reversion agrees: {a == b}")


def criterion_2():
    mp = M.rescale_moments(moments_from_jacobi(meixner_pollaczek(Fraction(1, 2)), 10), 2)
    ch = M.rescale_moments(moments_from_jacobi(continuous_hahn(), 8), 2)
    ok_mp = mp.even() == (1, 5, 61, 1385, 50521) and mp.is_odd_vanishing()
    ok_ch = ch.even() == (Fraction(1, 3), Fraction(7, 15), Fraction(31, 21), Fraction(127, 15))
    return CriterionResult(2, "moment reproduction", ok_mp and ok_ch and ch.is_odd_vanishing(),
                           f"Meixner-Pollaczek {_fmt_seq(mp.even())}; continuous Hahn {_fmt_seq(ch.even())}")


def criterion_3():
    r = moments_to_free_cumulants(M.reference_moments("rescaled_secant", 10))
    good = cond_psd_check(r, 5)
    bad = cond_psd_check(FreeCumulantSequence([0, 0, 0, -1]), 2)
    ok = good.passed and good.min_eigenvalue >= -1e-9 * good.norm and not bad.passed
    return CriterionResult(3, "PSD check", ok,
                           f"5x5 min eigenvalue {good.min_eigenvalue:.6g}; "
                           f"r4=-1 counterexample min eigenvalue {bad.min_eigenvalue:.3g} (rejected: {not bad.passed})")


def criterion_4():
    errs = {}
    for t in (0.1, 0.25, 0.5):
        mu = M.meixner(t)
        total = integrate(mu.density, breakpoints=mu.features, tol=1e-12, X=mu.tail_start)
        errs[t] = abs(total - 1.0)
    x = np.linspace(-5, 5, 2001)
    ident = float(np.max(np.abs(M.density_meixner(0.5, x) - 1.0 / np.cosh(np.pi * x))))
    ok = max(errs.values()) < 1e-8 and ident < 1e-12
    return CriterionResult(4, "normalization and secant identity", ok,
                           f"max |mass - 1| = {max(errs.values()):.2e}; max identity error {ident:.2e}",
                           {"mass_errors": errs, "identity_error": ident})


def criterion_5(n_points=50):
    rng = np.random.default_rng(SEED)
    worst = {}
    for t in (0.1, 0.3, 0.5):
        z = rng.uniform(-5, 5, n_points) + 1j * (t + rng.uniform(0.05, 5, n_points))
        worst[t] = float(np.max(recursion_residual(t, z)))
    ok = max(worst.values()) < 1e-8
    return CriterionResult(5, "half-step recursion identity", ok,
                           f"max residual over {3 * n_points} points {max(worst.values()):.2e}",
                           {"worst": worst})


def criterion_6():
    x = np.geomspace(0.1, 20, 400)
    closed = g_logistic_curve_im(x)
    series, bound = logistic_curve_series(x, tol=1e-10, full_output=True)
    err_sum = float(np.max(np.abs(series - closed)))
    xs = np.concatenate([-x[::-1], x])
    im_g = np.imag(g_logistic(xs - 0.5j))
    err_g = float(np.max(np.abs(im_g - g_logistic_curve_im(xs))))
    ok = err_sum < 1e-8 and err_g < 1e-10
    return CriterionResult(6, "logistic curve closed form", ok,
                           f"partial sum error {err_sum:.2e} (tail bound {float(bound.max()):.1e}); "
                           f"Im G(x - i/2) error {err_g:.2e}")


def criterion_7():
    rows = []
    ok = True
    for t in (0.1, 0.25, 0.5):
        rep = run_full_check(M.meixner(t), CurveSpec(t))
        rows.append(f"meixner({t}) {'pass' if rep.overall else 'fail'}")
        ok &= rep.overall
    rep = run_full_check(M.logistic(), CurveSpec(0.5))
    rows.append(f"logistic {'pass' if rep.overall else 'fail'}")
    ok &= rep.overall
    for d in (0.5, 1.5):
        rep = run_full_check(M.two_point(), CurveSpec(d))
        zeros = rep.condition_D.details["zero_count"]
        rows.append(f"two_point@{d} {'pass' if rep.overall else 'fail'} (zeros {zeros})")
        ok &= (not rep.overall) and (not rep.condition_D.passed) and zeros == 1
    return CriterionResult(7, "UI condition checks", ok, "; ".join(rows))


def _cone_points(cone, n, rng):
    y = cone.M + rng.uniform(1.0, 20.0, n)
    x = rng.uniform(-0.9, 0.9, n) * y
    return x + 1j * y


def criterion_8(n_points=20):
    rng = np.random.default_rng(SEED + 8)
    worst = {}
    for tag in ("semicircle", "free_poisson", "cauchy"):
        mu = M.parse_measure(tag)
        cone = ConeSpec(1.0, 8.0 * mu.scale + 8.0)
        zs = _cone_points(cone, n_points, rng)
        worst[tag] = max(abs(f_inverse_numeric(mu, z, cone) - M.closed_form_F_inverse(tag, z))
                         for z in zs)
    mu = M.cauchy()
    zs = _cone_points(ConeSpec(1.0, 16.0), n_points, rng)
    phi_err = max(abs(voiculescu_phi(mu, z) + 1j) for z in zs)
    ok = max(worst.values()) < 1e-10 and phi_err < 1e-10
    return CriterionResult(8, "closed-form inverse oracles", ok,
                           ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
                           + f"; Cauchy phi + i {phi_err:.1e}", {"worst": worst})


def criterion_9():
    worst = 0.0
    for t in (0.25, 0.5):
        for s in (0.5, 1.0, 2.0):
            ref = (1.0 / math.cosh(s / 2.0)) ** (2 * t)
            worst = max(worst, abs(char_function_meixner(t, s) - ref))
    return CriterionResult(9, "characteristic function", worst < 1e-6, f"max error {worst:.2e}")


def criterion_10(n_samples=100, n_max=8):
    rnd = random.Random(SEED)
    mismatches = 0
    for _ in range(n_samples):
        r = [Fraction(rnd.randint(-9, 9), rnd.randint(1, 9)) for _ in range(n_max)]
        brute = moments_by_enumeration(r, n_max)
        m = free_cumulants_to_moments(FreeCumulantSequence(r))
        back = moments_to_free_cumulants(m)
        if list(m.values) != brute or list(back.values) != r:
            mismatches += 1
    return CriterionResult(10, "non-crossing partition oracle", mismatches == 0,
                           f"{n_samples - mismatches}/{n_samples} random inputs agree exactly up to n = {n_max}")


def criterion_11():
    sc = M.reference_moments("semicircle", 6)
    out = free_convolve_moments(sc, sc)
    ok = out.even() == (2, 8, 40) and out.is_odd_vanishing()
    return CriterionResult(11, "free convolution", ok, f"(m2, m4, m6) = {_fmt_seq(out.even())}")


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11)


def run_all():
    results = []
    for check in CRITERIA:
        try:
            results.append(check())
        except Exception as exc:  # a crashing check is a failing check
            n = int(check.__name__.rsplit("_", 1)[1])
            results.append(CriterionResult(n, check.__name__, False, f"error: {exc!r}"))
    return results
