"""The I-function: data model, Mellin-Barnes evaluation and reductions.

An I-function of orders (m, n, p, q) is defined by a contour integral of a
product of gamma-function powers chi(s) against z**(-s) along a vertical
line.  This module owns the parameter lists, the chi integrand, the
convergence functionals (mu, Omega, Delta), numerical contour evaluation,
a residue-series oracle for all-exponent-one instances, and structural
reductions to well-known special cases.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    ChiPoleError,
    ContourError,
    GammaPoleError,
    NonConvergenceError,
)
from .numutil import pairwise_sum
from .special import gauss_2f1, log_gamma
from . import special

__all__ = [
    "GammaTriple",
    "IFunction",
    "ConvergenceReport",
    "ContourConfig",
    "KnownFormTag",
    "KnownForm",
    "chi",
    "convergence_report",
    "evaluate",
    "known_forms",
    "residue_series",
    "closed_form_value",
    "exp_instance",
    "gauss_2f1_instance",
    "mittag_leffler_instance",
    "resolve_offset",
]

# Window (in Re(s)) used to enumerate gamma poles for invariant checks.
_POLE_WINDOW = 25.0
_CONTOUR_CLEARANCE = 1e-6
_PHASE_TOL = 1e-12


@dataclass(frozen=True)
class GammaTriple:
    """One (parameter, scale, exponent) entry of an I-function list."""

    param: complex
    scale: float = 1.0
    exponent: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "param", complex(self.param))
        object.__setattr__(self, "scale", float(self.scale))
        object.__setattr__(self, "exponent", float(self.exponent))
        if not (math.isfinite(self.param.real) and math.isfinite(self.param.imag)):
            raise ValueError("triple parameter must be finite")
        if not self.scale > 0.0:
            raise ValueError("scale > 0 violated")
        if not self.exponent > 0.0:
            raise ValueError("exponent > 0 violated")


@dataclass(frozen=True)
class IFunction:
    """Full I^{m,n}_{p,q} specification plus the argument multiplier.

    ``upper`` holds the p upper triples (a_i, A_i, alpha_i), ``lower`` the q
    lower triples (b_j, B_j, beta_j).  ``coeff`` is the multiplier ``a`` of
    the argument in the power-weighted object t**(rho-1) I(a t**mu); plain
    evaluation ignores it.
    """

    m: int
    n: int
    upper: tuple[GammaTriple, ...] = ()
    lower: tuple[GammaTriple, ...] = ()
    coeff: complex = 1.0 + 0j

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "coeff", complex(self.coeff))
        if not (0 <= self.n <= self.p):
            raise ValueError("0 <= n <= p violated")
        if not (0 <= self.m <= self.q):
            raise ValueError("0 <= m <= q violated")
        _check_pole_separation(self)

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    @property
    def orders(self) -> tuple[int, int, int, int]:
        return (self.m, self.n, self.p, self.q)


def _lower_pole_group(f: IFunction, window: float = _POLE_WINDOW) -> list[complex]:
    """Poles of the numerator factors Gamma^{beta_j}(b_j + B_j s), j < m."""
    poles = []
    for tr in f.lower[: f.m]:
        b, B = tr.param, tr.scale
        k = 0
        while True:
            pole = -(b + k) / B
            if pole.real < -window:
                break
            if abs(pole.real) <= window and abs(pole.imag) <= window:
                poles.append(pole)
            k += 1
    return poles


def _upper_pole_group(f: IFunction, window: float = _POLE_WINDOW) -> list[complex]:
    """Poles of the numerator factors Gamma^{alpha_i}(1 - a_i - A_i s), i < n."""
    poles = []
    for tr in f.upper[: f.n]:
        a, A = tr.param, tr.scale
        k = 0
        while True:
            pole = (1.0 - a + k) / A
            if pole.real > window:
                break
            if abs(pole.real) <= window and abs(pole.imag) <= window:
                poles.append(pole)
            k += 1
    return poles


def _check_pole_separation(f: IFunction) -> None:
    lower = _lower_pole_group(f)
    upper = _upper_pole_group(f)
    if not lower or not upper:
        return
    for pl in lower:
        for pu in upper:
            if abs(pl - pu) < 1e-10:
                raise ValueError(
                    f"pole of a lower gamma factor coincides with a pole of an "
                    f"upper gamma factor at s={pl}"
                )


def pole_real_bounds(f: IFunction) -> tuple[float | None, float | None]:
    """(sup Re of lower-group poles, inf Re of upper-group poles)."""
    left = None
    if f.m:
        left = max(-tr.param.real / tr.scale for tr in f.lower[: f.m])
    right = None
    if f.n:
        right = min((1.0 - tr.param.real) / tr.scale for tr in f.upper[: f.n])
    return left, right


def resolve_offset(f: IFunction, offset: float = 0.0) -> float:
    """Apply the pole-separation rule to a requested contour offset.

    Keeps ``offset`` whenever it already separates the two numerator pole
    clusters with clearance; otherwise returns the midpoint of the gap
    between the rightmost lower-gamma pole and the leftmost upper-gamma
    pole (shifted by 1/2 into the unbounded side when one cluster is
    absent).
    """
    left, right = pole_real_bounds(f)
    lo = -math.inf if left is None else left
    hi = math.inf if right is None else right
    if lo + _CONTOUR_CLEARANCE < offset < hi - _CONTOUR_CLEARANCE:
        return offset
    if left is None and right is None:
        return offset
    if left is None:
        return right - 0.5
    if right is None:
        return left + 0.5
    if left < right - 2.0 * _CONTOUR_CLEARANCE:
        return 0.5 * (left + right)
    raise ContourError(
        f"no separating vertical contour: lower poles reach Re(s)={left:.6g}, "
        f"upper poles start at Re(s)={right:.6g}"
    )


def _assert_contour_ok(f: IFunction, offset: float) -> None:
    left, right = pole_real_bounds(f)
    if left is not None and offset <= left + _CONTOUR_CLEARANCE:
        raise ContourError(
            f"contour Re(s)={offset:.6g} touches or crosses the lower-gamma "
            f"pole cluster (rightmost pole Re(s)={left:.6g}); shift the offset"
        )
    if right is not None and offset >= right - _CONTOUR_CLEARANCE:
        raise ContourError(
            f"contour Re(s)={offset:.6g} touches or crosses the upper-gamma "
            f"pole cluster (leftmost pole Re(s)={right:.6g}); shift the offset"
        )


# --------------------------------------------------------------------------
# chi and the convergence functionals
# --------------------------------------------------------------------------


def _log_chi(f: IFunction, s: complex) -> tuple[complex, bool]:
    """(log chi(s), is_zero).  Denominator gamma poles make chi vanish."""
    total = 0j
    zero = False
    for j, tr in enumerate(f.lower):
        if j < f.m:
            try:
                total += tr.exponent * log_gamma(tr.param + tr.scale * s)
            except GammaPoleError:
                raise ChiPoleError(f"lower[{j}]", s) from None
        else:
            try:
                total -= tr.exponent * log_gamma(1.0 - tr.param - tr.scale * s)
            except GammaPoleError:
                zero = True
    for i, tr in enumerate(f.upper):
        if i < f.n:
            try:
                total += tr.exponent * log_gamma(1.0 - tr.param - tr.scale * s)
            except GammaPoleError:
                raise ChiPoleError(f"upper[{i}]", s) from None
        else:
            try:
                total -= tr.exponent * log_gamma(tr.param + tr.scale * s)
            except GammaPoleError:
                zero = True
    return total, zero


def chi(f: IFunction, s: complex) -> complex:
    """The Mellin-Barnes integrand's gamma-ratio factor at s.

    Raises :class:`ChiPoleError` naming the offending factor when s is a
    pole of a numerator gamma power; denominator poles yield 0.
    """
    total, zero = _log_chi(f, complex(s))
    if zero:
        return 0j
    return cmath.exp(total)


@dataclass(frozen=True)
class ConvergenceReport:
    """The scalar functionals governing analyticity and convergence."""

    mu: float
    omega: float
    delta: float
    analytic: bool
    abs_convergent_sector: float


def convergence_report(f: IFunction) -> ConvergenceReport:
    mu = sum(tr.exponent * tr.scale for tr in f.lower) - sum(
        tr.exponent * tr.scale for tr in f.upper
    )
    omega = sum((0.5 - tr.param.real) * tr.exponent for tr in f.upper) - sum(
        (0.5 - tr.param.real) * tr.exponent for tr in f.lower
    )
    delta = (
        sum(tr.exponent * tr.scale for tr in f.lower[: f.m])
        - sum(tr.exponent * tr.scale for tr in f.lower[f.m :])
        + sum(tr.exponent * tr.scale for tr in f.upper[: f.n])
        - sum(tr.exponent * tr.scale for tr in f.upper[f.n :])
    )
    return ConvergenceReport(
        mu=mu,
        omega=omega,
        delta=delta,
        analytic=mu >= 0.0,
        abs_convergent_sector=delta * math.pi / 2.0 if delta > 0.0 else 0.0,
    )


def admits_absolute_convergence(rep: ConvergenceReport, z: complex, offset: float) -> bool:
    """Absolute-convergence test for the contour integral at argument z.

    Interior of the sector |arg z| < Delta*pi/2 (Delta > 0) always
    converges.  On the boundary |arg z| = Delta*pi/2 with Delta >= 0 the
    two auxiliary conditions apply: (i) mu = 0 and Omega < -1, or (ii)
    mu != 0 and Omega + sigma*mu < -1 with sigma the contour offset.
    Exact equality Omega + sigma*mu = -1 is rejected.
    """
    phase = abs(cmath.phase(z))
    half = rep.delta * math.pi / 2.0
    if rep.delta > 0.0 and phase < half - _PHASE_TOL:
        return True
    if rep.delta >= 0.0 and abs(phase - half) <= _PHASE_TOL:
        if rep.mu == 0.0:
            return rep.omega < -1.0
        return rep.omega + offset * rep.mu < -1.0
    return False


# --------------------------------------------------------------------------
# contour evaluation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ContourConfig:
    """Numerical policy for evaluating the Mellin-Barnes integral.

    ``half_height=None`` selects the truncation height adaptively from the
    Stirling decay estimate |chi(c+it)| ~ |t|**(Omega+c*mu) e^{-Delta pi
    |t|/2}.
    """

    offset: float = 0.0
    half_height: float | None = None
    nodes: int = 257
    tol: float = 1e-10
    max_refinements: int = 10

    def __post_init__(self):
        if self.nodes < 16:
            raise ValueError("nodes >= 16 violated")
        if not 0.0 < self.tol < 1.0:
            raise ValueError("tol must lie in (0, 1)")
        if self.half_height is not None and not self.half_height > 0.0:
            raise ValueError("half_height must be positive")
        if self.max_refinements < 1:
            raise ValueError("max_refinements >= 1 violated")


def _refined_trapezoid(g, T: float, nodes: int, tol: float, max_refinements: int) -> complex:
    n = max(17, nodes)
    if n % 2 == 0:
        n += 1
    h = 2.0 * T / (n - 1)
    vals = [g(-T + k * h) for k in range(n)]
    total = h * (pairwise_sum(vals[1:-1]) + 0.5 * (vals[0] + vals[-1]))
    for _ in range(max_refinements):
        mids = [g(-T + (k + 0.5) * h) for k in range(n - 1)]
        refined = 0.5 * total + 0.5 * h * pairwise_sum(mids)
        err = abs(refined - total)
        total = refined
        h *= 0.5
        n = 2 * n - 1
        if err <= tol * max(abs(total), 1e-30):
            return total
    raise NonConvergenceError(
        f"contour quadrature did not converge within {max_refinements} refinements"
    )


def _tail_bound(g, T: float, lam: float, wpow: float) -> float:
    probes = [abs(g(t)) for t in (T, -T, 0.93 * T, -0.93 * T)]
    mag = max(probes)
    if mag == 0.0:
        return 0.0
    if lam > 1e-12:
        return 2.0 * mag / lam * (1.0 + max(wpow, 0.0) / (lam * T))
    if wpow < -1.0:
        return 2.0 * mag * T / (-wpow - 1.0)
    return math.inf


def _initial_half_height(lam: float, wpow: float, tol: float) -> float:
    if lam > 1e-12:
        T = (math.log(1.0 / tol) + 8.0 + max(wpow, 0.0) * 5.0) / lam
        return min(max(15.0, T), 2000.0)
    if wpow < -1.0:
        return min(max(30.0, tol ** (1.0 / (wpow + 1.0))), 1e6)
    return 50.0


def evaluate(f: IFunction, z: complex, cfg: ContourConfig | None = None) -> complex:
    """(1/2 pi i) * integral of chi(s) z**(-s) along Re(s) = offset.

    With ``cfg=None`` the offset is resolved by the pole-separation rule and
    the truncation height by the decay estimate.  An explicit config is
    honoured as given; a pole on (or on the wrong side of) the requested
    contour raises :class:`ContourError` -- the caller must shift the
    offset.  The argument multiplier ``f.coeff`` is *not* applied here.
    """
    z = complex(z)
    if z == 0:
        raise ValueError("z must be nonzero")
    rep = convergence_report(f)
    if cfg is None:
        cfg = ContourConfig(offset=resolve_offset(f, 0.0))
        auto_height = True
    else:
        auto_height = cfg.half_height is None
    _assert_contour_ok(f, cfg.offset)
    if not admits_absolute_convergence(rep, z, cfg.offset):
        raise NonConvergenceError(
            f"contour integral not absolutely convergent at z={z}: "
            f"|arg z|={abs(cmath.phase(z)):.6g}, sector half-angle="
            f"{rep.delta * math.pi / 2.0:.6g}, mu={rep.mu:.6g}, Omega={rep.omega:.6g}"
        )
    lam = rep.delta * math.pi / 2.0 - abs(cmath.phase(z))
    wpow = rep.omega + cfg.offset * rep.mu
    logz = cmath.log(z)
    offset = cfg.offset

    def g(t: float) -> complex:
        s = complex(offset, t)
        lg, zero = _log_chi(f, s)
        if zero:
            return 0j
        return cmath.exp(lg - s * logz)

    T = cfg.half_height if cfg.half_height is not None else _initial_half_height(
        lam, wpow, cfg.tol
    )
    expansions = 0
    while True:
        val = _refined_trapezoid(g, T, cfg.nodes, cfg.tol, cfg.max_refinements)
        tail = _tail_bound(g, T, lam, wpow)
        if tail <= cfg.tol * max(abs(val), 1e-30):
            return val / (2.0 * math.pi)
        if not auto_height or expansions >= 4:
            raise NonConvergenceError(
                f"tail bound {tail:.3e} above tolerance after truncating the "
                f"contour at |Im(s)|={T:.6g}"
            )
        T *= 1.6
        expansions += 1


# --------------------------------------------------------------------------
# residue-series oracle (all exponents equal to one)
# --------------------------------------------------------------------------


def residue_series(
    f: IFunction, z: complex, tol: float = 1e-13, max_terms: int = 500
) -> complex:
    """Sum of residues over the lower-gamma poles.

    Only valid when every exponent equals one and the lower numerator poles
    are simple; used as an independent oracle for closed-form fixtures, not
    as a production evaluator.
    """
    if any(tr.exponent != 1.0 for tr in f.upper + f.lower):
        raise ValueError("residue series requires all exponents equal to one")
    if f.m == 0:
        raise ValueError("residue series needs at least one lower numerator factor")
    z = complex(z)
    if z == 0:
        raise ValueError("z must be nonzero")
    logz = cmath.log(z)
    total = 0j
    small_rounds = 0
    for k in range(max_terms):
        round_mag = 0.0
        for j in range(f.m):
            b, B = f.lower[j].param, f.lower[j].scale
            s0 = -(b + k) / B
            lg = -log_gamma(k + 1.0) - math.log(B) - s0 * logz
            sign = -1.0 if k % 2 else 1.0
            try:
                for j2, tr in enumerate(f.lower):
                    if j2 == j:
                        continue
                    w = tr.param + tr.scale * s0
                    if j2 < f.m:
                        lg += log_gamma(w)
                    else:
                        lg -= log_gamma(1.0 - tr.param - tr.scale * s0)
                for i, tr in enumerate(f.upper):
                    if i < f.n:
                        lg += log_gamma(1.0 - tr.param - tr.scale * s0)
                    else:
                        lg -= log_gamma(tr.param + tr.scale * s0)
            except GammaPoleError:
                raise NonConvergenceError(
                    f"residue series hit a higher-order pole at s={s0}"
                ) from None
            term = sign * cmath.exp(lg)
            total += term
            round_mag += abs(term)
        if round_mag <= tol * (abs(total) + 1e-300):
            small_rounds += 1
            if small_rounds >= 3:
                return total
        else:
            small_rounds = 0
    raise NonConvergenceError(f"residue series did not converge in {max_terms} rounds")


# --------------------------------------------------------------------------
# known closed forms
# --------------------------------------------------------------------------


class KnownFormTag(Enum):
    EXP = "exp"
    GAUSS_2F1 = "gauss_2f1"
    MITTAG_LEFFLER = "mittag_leffler"
    MEIJER_G = "meijer_g"
    FOX_H = "fox_h"
    H_BAR = "h_bar"
    NONE = "none"


@dataclass(frozen=True)
class KnownForm:
    tag: KnownFormTag
    parameters: tuple[complex, ...] = ()


def _is_unit_triple(tr: GammaTriple) -> bool:
    return tr.param == 0 and tr.scale == 1.0 and tr.exponent == 1.0


def known_forms(f: IFunction) -> KnownForm:
    """Most specific structural reduction of f (exact parameter checks)."""
    exps_one = all(tr.exponent == 1.0 for tr in f.upper + f.lower)
    if f.orders == (1, 0, 0, 1) and _is_unit_triple(f.lower[0]):
        return KnownForm(KnownFormTag.EXP)
    if (
        f.orders == (1, 2, 2, 2)
        and exps_one
        and all(tr.scale == 1.0 for tr in f.upper + f.lower)
        and f.lower[0].param == 0
    ):
        a = 1.0 - f.upper[0].param
        b = 1.0 - f.upper[1].param
        c = 1.0 - f.lower[1].param
        return KnownForm(KnownFormTag.GAUSS_2F1, (a, b, c))
    if (
        f.orders == (1, 1, 1, 2)
        and exps_one
        and _is_unit_triple(f.upper[0])
        and _is_unit_triple(f.lower[0])
    ):
        alpha = complex(f.lower[1].scale)
        beta = 1.0 - f.lower[1].param
        return KnownForm(KnownFormTag.MITTAG_LEFFLER, (alpha, beta))
    if exps_one and all(tr.scale == 1.0 for tr in f.upper + f.lower):
        return KnownForm(KnownFormTag.MEIJER_G)
    if exps_one:
        return KnownForm(KnownFormTag.FOX_H)
    if all(tr.exponent == 1.0 for tr in f.upper[f.n :]) and all(
        tr.exponent == 1.0 for tr in f.lower[: f.m]
    ):
        return KnownForm(KnownFormTag.H_BAR)
    return KnownForm(KnownFormTag.NONE)


def exp_instance(coeff: complex = 1.0) -> IFunction:
    """I^{1,0}_{0,1}[z | (0,1,1)] = exp(-z)."""
    return IFunction(m=1, n=0, upper=(), lower=(GammaTriple(0.0),), coeff=coeff)


def gauss_2f1_instance(a: complex, b: complex, c: complex, coeff: complex = 1.0) -> IFunction:
    """Instance whose value is Gamma(a)Gamma(b)/Gamma(c) 2F1(a, b; c; -z)."""
    return IFunction(
        m=1,
        n=2,
        upper=(GammaTriple(1.0 - complex(a)), GammaTriple(1.0 - complex(b))),
        lower=(GammaTriple(0.0), GammaTriple(1.0 - complex(c))),
        coeff=coeff,
    )


def mittag_leffler_instance(alpha: float, beta: complex, coeff: complex = 1.0) -> IFunction:
    """Instance whose value is E_{alpha,beta}(-z)."""
    return IFunction(
        m=1,
        n=1,
        upper=(GammaTriple(0.0),),
        lower=(GammaTriple(0.0), GammaTriple(1.0 - complex(beta), float(alpha))),
        coeff=coeff,
    )


def closed_form_value(f: IFunction, z: complex) -> complex:
    """Evaluate a reducible instance through its closed form (test oracle)."""
    form = known_forms(f)
    z = complex(z)
    if form.tag is KnownFormTag.EXP:
        return cmath.exp(-z)
    if form.tag is KnownFormTag.GAUSS_2F1:
        a, b, c = form.parameters
        pref = cmath.exp(log_gamma(a) + log_gamma(b) - log_gamma(c))
        return pref * gauss_2f1(a, b, c, -z)
    if form.tag is KnownFormTag.MITTAG_LEFFLER:
        alpha, beta = form.parameters
        total = 0j
        term_small = 0
        for k in range(2000):
            term = (-z) ** k * cmath.exp(-log_gamma(alpha * k + beta))
            total += term
            if abs(term) <= 1e-16 * (abs(total) + 1e-300):
                term_small += 1
                if term_small >= 3:
                    return total
            else:
                term_small = 0
        raise NonConvergenceError("Mittag-Leffler series did not converge")
    raise ValueError(f"no closed-form evaluator for tag {form.tag}")
