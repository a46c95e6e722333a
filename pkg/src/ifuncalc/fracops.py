"""Symbolic fractional-operator engine.

Implements the power-moment formulas of the MSM integral, derivative and
Caputo-type derivative operators, and the parameter-shift rules that map a
power-weighted I-function to a new I-function with enlarged orders, for the
Marichev-Saigo-Maeda family and its Saigo, Erdelyi-Kober and
Riemann-Liouville specializations (integral, derivative and Caputo-type
variants, both sides).

Everything here is a pure transformation on immutable values.  The
structural identity backing each rule is

    chi_out(s) = chi_in(s) * gamma_ratio(s)

with gamma_ratio the operator's power-moment coefficient evaluated at
rho - mu*s; tests exercise it pointwise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    GammaPoleError,
    HypothesisError,
    OrientationError,
    ReductionError,
)
from .ifun import ContourConfig, GammaTriple, IFunction, convergence_report, evaluate
from .special import log_gamma

__all__ = [
    "Family",
    "Side",
    "Orientation",
    "SubstitutionDirection",
    "OperatorSpec",
    "PowerWeightedIFunction",
    "GammaRatio",
    "ApplyResult",
    "HypothesisCheck",
    "power_moment",
    "apply_operator",
    "insertion_gamma_ratio",
    "reduce_operator",
    "remark_substitution",
    "check_hypotheses",
    "weighted_value",
]

_EQ_TOL = 1e-12


class Family(Enum):
    MSM_I = "msm_i"
    MSM_D = "msm_d"
    MSM_CD = "msm_cd"
    SAIGO_I = "saigo_i"
    SAIGO_D = "saigo_d"
    SAIGO_CD = "saigo_cd"
    EK_I = "ek_i"
    EK_D = "ek_d"
    EK_CD = "ek_cd"
    RL_I = "rl_i"
    RL_D = "rl_d"


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


class Orientation(Enum):
    """Power-weight shape: t**(rho-1) I(a t**mu) vs t**(-rho) I(a t**-mu)."""

    LEFT_WEIGHTED = "left"
    RIGHT_WEIGHTED = "right"


class SubstitutionDirection(Enum):
    HYPOTHESIS = "hypothesis"
    RHS = "rhs"


_ARITY = {
    Family.MSM_I: 5,
    Family.MSM_D: 5,
    Family.MSM_CD: 5,
    Family.SAIGO_I: 3,
    Family.SAIGO_D: 3,
    Family.SAIGO_CD: 3,
    Family.EK_I: 2,
    Family.EK_D: 2,
    Family.EK_CD: 2,
    Family.RL_I: 1,
    Family.RL_D: 1,
}

_INTEGRAL_FAMILIES = frozenset({Family.MSM_I, Family.SAIGO_I, Family.EK_I, Family.RL_I})
_CAPUTO_FAMILIES = frozenset({Family.MSM_CD, Family.SAIGO_CD, Family.EK_CD})

# Index of the fractional-order parameter inside the params tuple.
# MSM: (alpha, alpha', beta, beta', gamma); Saigo: (alpha, beta, gamma);
# EK: (gamma, alpha) following the I_{gamma,alpha} subscript order; RL: (alpha,).
_ORDER_INDEX = {
    Family.MSM_I: 4,
    Family.MSM_D: 4,
    Family.MSM_CD: 4,
    Family.SAIGO_I: 0,
    Family.SAIGO_D: 0,
    Family.SAIGO_CD: 0,
    Family.EK_I: 1,
    Family.EK_D: 1,
    Family.EK_CD: 1,
    Family.RL_I: 0,
    Family.RL_D: 0,
}


@dataclass(frozen=True)
class OperatorSpec:
    """A fractional operator: family, side and parameter tuple.

    Positivity of the fractional order (Re(gamma) > 0 for MSM, Re(alpha) > 0
    for the others) is enforced by the hypothesis gate of every operation
    that uses the spec rather than at construction: the remark substitution
    legitimately produces specs with negated order that exist only to be
    read as formulas.
    """

    family: Family
    side: Side
    params: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(complex(v) for v in self.params))
        want = _ARITY[self.family]
        if len(self.params) != want:
            raise ValueError(
                f"{self.family.value} takes {want} parameters, got {len(self.params)}"
            )

    @property
    def order(self) -> complex:
        return self.params[_ORDER_INDEX[self.family]]

    @property
    def is_integral(self) -> bool:
        return self.family in _INTEGRAL_FAMILIES

    @property
    def is_caputo(self) -> bool:
        return self.family in _CAPUTO_FAMILIES


def _int_part(x: float) -> int:
    """[x] of the paper: integer part, defined here for x >= 0 as floor."""
    if x < 0.0:
        raise HypothesisError("Re(order) > 0", x)
    return int(math.floor(x))


def _smoothing_order(spec: OperatorSpec) -> int:
    """m = [Re(order)] + 1 used by derivative and Caputo-type families."""
    return _int_part(spec.order.real) + 1


@dataclass(frozen=True)
class PowerWeightedIFunction:
    """t**(rho-1) I(a t**mu) (left) or t**(-rho) I(a t**-mu) (right).

    By default the t-exponent is forced to equal the convergence functional
    mu of the base; passing ``exponent_override=True`` permits any positive
    exponent.
    """

    rho: complex
    orientation: Orientation
    base: IFunction
    exponent: float | None = None
    exponent_override: bool = False

    def __post_init__(self):
        object.__setattr__(self, "rho", complex(self.rho))
        mu = convergence_report(self.base).mu
        if self.exponent is None:
            object.__setattr__(self, "exponent", mu)
        else:
            object.__setattr__(self, "exponent", float(self.exponent))
        if not self.exponent > 0.0:
            raise ValueError(f"t-exponent must be positive, got {self.exponent}")
        if not self.exponent_override and abs(self.exponent - mu) > _EQ_TOL:
            raise ValueError(
                f"t-exponent {self.exponent} differs from the base's mu={mu}; "
                "pass exponent_override=True to decouple them"
            )


@dataclass(frozen=True)
class GammaRatio:
    """prod Gamma(shift - slope*s) / prod Gamma(shift - slope*s).

    Entries are (shift, slope) pairs; with slope 0 this is the constant
    power-moment coefficient, with slope mu it is the chi-ratio of the
    parameter-shift theorems.
    """

    numerator: tuple[tuple[complex, float], ...]
    denominator: tuple[tuple[complex, float], ...]

    def value(self, s: complex = 0j) -> complex:
        total = 0j
        for shift, slope in self.numerator:
            total += log_gamma(shift - slope * s)
        for shift, slope in self.denominator:
            try:
                total -= log_gamma(shift - slope * s)
            except GammaPoleError:
                return 0j
        return cmath.exp(total)

    def with_slope(self, slope: float) -> "GammaRatio":
        return GammaRatio(
            tuple((shift, slope) for shift, _ in self.numerator),
            tuple((shift, slope) for shift, _ in self.denominator),
        )


@dataclass(frozen=True)
class HypothesisCheck:
    condition: str
    passed: bool
    margin: float


@dataclass(frozen=True)
class ApplyResult:
    """Outcome of a parameter-shift theorem application."""

    prefactor_exponent: complex
    output: PowerWeightedIFunction
    hypothesis_report: tuple[HypothesisCheck, ...]


# --------------------------------------------------------------------------
# the lemma/theorem shift tables
# --------------------------------------------------------------------------


def _moment_shifts(spec: OperatorSpec, rho: complex):
    """(numerator shifts, denominator shifts, x-exponent) of the operator's
    power moment: the left moment of t**(rho-1) or right moment of t**(-rho).

    These six MSM tables are the content of the three power-function lemmas
    (integral, derivative, Caputo derivative; both sides); the Saigo, EK and
    RL tables are their reductions with the pairwise-cancelling gamma
    factors removed.
    """
    fam, side = spec.family, spec.side
    left = side is Side.LEFT
    if fam in (Family.MSM_I, Family.MSM_D, Family.MSM_CD):
        al, alp, be, bep, ga = spec.params
        if fam is Family.MSM_I:
            if left:
                num = (rho, -alp + bep + rho, -al - alp - be + ga + rho)
                den = (bep + rho, -al - alp + ga + rho, -alp - be + ga + rho)
                expo = -al - alp + ga + rho - 1.0
            else:
                num = (-be + rho, al + alp - ga + rho, al + bep - ga + rho)
                den = (rho, al - be + rho, al + alp + bep - ga + rho)
                expo = -al - alp + ga - rho
        elif fam is Family.MSM_D:
            if left:
                num = (rho, al - be + rho, al + alp + bep - ga + rho)
                den = (-be + rho, al + alp - ga + rho, al + bep - ga + rho)
                expo = al + alp - ga + rho - 1.0
            else:
                num = (bep + rho, -al - alp + ga + rho, -alp - be + ga + rho)
                den = (rho, -alp + bep + rho, -al - alp - be + ga + rho)
                expo = al + alp - ga - rho
        else:  # MSM_CD
            m = _smoothing_order(spec)
            if left:
                num = (rho, al - be + rho - m, al + alp + bep - ga + rho - m)
                den = (-be + rho - m, al + alp - ga + rho, al + bep - ga + rho - m)
                expo = al + alp - ga + rho - 1.0
            else:
                num = (bep + rho + m, -al - alp + ga + rho, -alp - be + ga + rho + m)
                den = (rho, -alp + bep + rho + m, -al - alp - be + ga + rho + m)
                expo = al + alp - ga - rho
        return num, den, expo
    if fam in (Family.SAIGO_I, Family.SAIGO_D, Family.SAIGO_CD):
        al, be, ga = spec.params
        if fam is Family.SAIGO_I:
            if left:
                num = (rho, ga - be + rho)
                den = (-be + rho, al + ga + rho)
                expo = -be + rho - 1.0
            else:
                num = (be + rho, ga + rho)
                den = (rho, al + be + ga + rho)
                expo = -be - rho
        elif fam is Family.SAIGO_D:
            if left:
                num = (rho, al + be + ga + rho)
                den = (ga + rho, be + rho)
                expo = be + rho - 1.0
            else:
                num = (-be + rho, al + ga + rho)
                den = (rho, -be + ga + rho)
                expo = be - rho
        else:  # SAIGO_CD
            m = _smoothing_order(spec)
            if left:
                num = (rho, al + be + ga + rho - m)
                den = (be + rho, ga + rho - m)
                expo = be + rho - 1.0
            else:
                num = (-be + rho, al + ga + rho + m)
                den = (rho, -be + ga + rho + m)
                expo = be - rho
        return num, den, expo
    if fam in (Family.EK_I, Family.EK_D, Family.EK_CD):
        ga, al = spec.params
        if fam is Family.EK_I:
            num = (ga + rho,)
            den = (al + ga + rho,)
        elif fam is Family.EK_D:
            num = (al + ga + rho,)
            den = (ga + rho,)
        else:  # EK_CD
            m = _smoothing_order(spec)
            if left:
                num = (al + ga + rho - m,)
                den = (ga + rho - m,)
            else:
                num = (al + ga + rho + m,)
                den = (ga + rho + m,)
        expo = rho - 1.0 if left else -rho
        return num, den, expo
    if fam in (Family.RL_I, Family.RL_D):
        (al,) = spec.params
        if fam is Family.RL_I:
            if left:
                num, den, expo = (rho,), (al + rho,), al + rho - 1.0
            else:
                num, den, expo = (-al + rho,), (rho,), al - rho
        else:
            if left:
                num, den, expo = (rho,), (-al + rho,), -al + rho - 1.0
            else:
                num, den, expo = (al + rho,), (rho,), -al - rho
        return num, den, expo
    raise ValueError(f"unknown family {fam}")


def _hypothesis_conditions(spec: OperatorSpec, rho: complex) -> list[tuple[str, float]]:
    """(name, margin) pairs; margin > 0 means the strict inequality holds."""
    fam, side = spec.family, spec.side
    left = side is Side.LEFT
    r = rho.real
    out: list[tuple[str, float]] = []
    if fam in (Family.MSM_I, Family.MSM_D, Family.MSM_CD):
        al, alp, be, bep, ga = spec.params
        out.append(("Re(gamma) > 0", ga.real))
        if fam is Family.MSM_I:
            if left:
                out += [
                    ("Re(rho) > 0", r),
                    ("Re(rho) > Re(alpha' - beta')", r - (alp - bep).real),
                    ("Re(rho) > Re(alpha + alpha' + beta - gamma)", r - (al + alp + be - ga).real),
                ]
            else:
                out += [
                    ("Re(rho) > Re(beta)", r - be.real),
                    ("Re(rho) > Re(-alpha - alpha' + gamma)", r - (-al - alp + ga).real),
                    ("Re(rho) > Re(-alpha - beta' + gamma)", r - (-al - bep + ga).real),
                ]
        elif fam is Family.MSM_D:
            if left:
                out += [
                    ("Re(rho) > 0", r),
                    ("Re(rho) > Re(-alpha + beta)", r - (-al + be).real),
                    ("Re(rho) > Re(-alpha - alpha' - beta' + gamma)", r - (-al - alp - bep + ga).real),
                ]
            else:
                m = ga.real > 0.0 and _smoothing_order(spec) or 0
                out += [
                    ("Re(rho) > Re(-beta')", r - (-bep).real),
                    ("Re(rho) > Re(alpha' + beta - gamma)", r - (alp + be - ga).real),
                    (
                        "Re(rho) > Re(alpha + alpha' - gamma) + [Re(gamma)] + 1",
                        r - ((al + alp - ga).real + m),
                    ),
                ]
        else:  # MSM_CD
            m = ga.real > 0.0 and _smoothing_order(spec) or 0
            if left:
                out += [
                    ("Re(rho) - m > 0", r - m),
                    ("Re(rho) - m > Re(-alpha + beta)", r - m - (-al + be).real),
                    (
                        "Re(rho) - m > Re(-alpha - alpha' - beta' + gamma)",
                        r - m - (-al - alp - bep + ga).real,
                    ),
                ]
            else:
                out += [
                    ("Re(rho) + m > Re(-beta')", r + m - (-bep).real),
                    ("Re(rho) + m > Re(alpha' + beta - gamma)", r + m - (alp + be - ga).real),
                    (
                        "Re(rho) + m > Re(alpha + alpha' - gamma) + m",
                        r - (al + alp - ga).real,
                    ),
                ]
        return out
    if fam in (Family.SAIGO_I, Family.SAIGO_D, Family.SAIGO_CD):
        al, be, ga = spec.params
        out.append(("Re(alpha) > 0", al.real))
        if fam is Family.SAIGO_I:
            if left:
                out += [
                    ("Re(rho) > 0", r),
                    ("Re(rho) > Re(beta - gamma)", r - (be - ga).real),
                ]
            else:
                out += [
                    ("Re(rho) > Re(-beta)", r + be.real),
                    ("Re(rho) > Re(-gamma)", r + ga.real),
                ]
        elif fam is Family.SAIGO_D:
            if left:
                out += [
                    ("Re(rho) > 0", r),
                    ("Re(rho) > Re(-alpha - beta - gamma)", r + (al + be + ga).real),
                ]
            else:
                m = al.real > 0.0 and _smoothing_order(spec) or 0
                out += [
                    ("Re(rho) > Re(-alpha - gamma)", r + (al + ga).real),
                    ("Re(rho) > Re(beta) + [Re(alpha)] + 1", r - (be.real + m)),
                ]
        else:  # SAIGO_CD
            m = al.real > 0.0 and _smoothing_order(spec) or 0
            if left:
                out += [
                    ("Re(rho) - m > 0", r - m),
                    ("Re(rho) - m > Re(-alpha - beta - gamma)", r - m + (al + be + ga).real),
                ]
            else:
                out += [
                    ("Re(rho) + m > Re(beta) + m", r - be.real),
                    ("Re(rho) + m > Re(-alpha - gamma)", r + m + (al + ga).real),
                ]
        return out
    if fam in (Family.EK_I, Family.EK_D, Family.EK_CD):
        ga, al = spec.params
        out.append(("Re(alpha) > 0", al.real))
        if fam is Family.EK_I:
            out += [
                ("Re(rho) > 0", r),
                ("Re(rho) > Re(-gamma)", r + ga.real),
            ]
        elif fam is Family.EK_D:
            if left:
                out += [
                    ("Re(rho) > 0", r),
                    ("Re(rho) > Re(-alpha - gamma)", r + (al + ga).real),
                ]
            else:
                m = al.real > 0.0 and _smoothing_order(spec) or 0
                out += [
                    ("Re(rho) > [Re(alpha)] + 1", r - m),
                    ("Re(rho) > Re(-alpha - gamma)", r + (al + ga).real),
                ]
        else:  # EK_CD
            m = al.real > 0.0 and _smoothing_order(spec) or 0
            if left:
                out += [
                    ("Re(rho) - m > 0", r - m),
                    ("Re(rho) - m > Re(-alpha - gamma)", r - m + (al + ga).real),
                ]
            else:
                out += [
                    ("Re(rho) + m > m", r),
                    ("Re(rho) + m > Re(-alpha - gamma)", r + m + (al + ga).real),
                ]
        return out
    if fam in (Family.RL_I, Family.RL_D):
        (al,) = spec.params
        out.append(("Re(alpha) > 0", al.real))
        if fam is Family.RL_I:
            if left:
                out.append(("Re(rho) > 0", r))
            else:
                out.append(("Re(rho) > Re(alpha)", r - al.real))
        else:
            if left:
                out.append(("Re(rho) > 0", r))
            else:
                m = al.real > 0.0 and _smoothing_order(spec) or 0
                out.append(
                    ("Re(rho) > [Re(alpha)] + 1 - Re(alpha)", r - (m - al.real))
                )
        return out
    raise ValueError(f"unknown family {fam}")


def moment_hypotheses(spec: OperatorSpec, rho: complex) -> tuple[HypothesisCheck, ...]:
    """Lemma-level hypothesis report for the power moment at rho."""
    return tuple(
        HypothesisCheck(name, margin > 0.0, margin)
        for name, margin in _hypothesis_conditions(spec, complex(rho))
    )


def _raise_on_failure(checks) -> None:
    for chk in checks:
        if not chk.passed:
            raise HypothesisError(chk.condition, chk.margin)


def power_moment(
    spec: OperatorSpec, rho: complex, *, enforce_hypotheses: bool = True
) -> tuple[GammaRatio, complex]:
    """Gamma-ratio coefficient and x-exponent of the operator's power moment.

    Left side: operator applied to t**(rho-1); right side: to t**(-rho).
    The returned ratio carries slope 0 (a plain constant); ``with_slope(mu)``
    turns it into the chi-ratio of the corresponding shift theorem.
    """
    rho = complex(rho)
    if enforce_hypotheses:
        _raise_on_failure(moment_hypotheses(spec, rho))
    num, den, expo = _moment_shifts(spec, rho)
    ratio = GammaRatio(
        tuple((shift, 0.0) for shift in num),
        tuple((shift, 0.0) for shift in den),
    )
    return ratio, expo


def insertion_gamma_ratio(spec: OperatorSpec, rho: complex, mu: float) -> GammaRatio:
    """The chi-ratio chi_out/chi_in of the shift theorem for this operator."""
    num, den, _ = _moment_shifts(spec, complex(rho))
    return GammaRatio(
        tuple((shift, float(mu)) for shift in num),
        tuple((shift, float(mu)) for shift in den),
    )


def check_hypotheses(
    spec: OperatorSpec, w: PowerWeightedIFunction
) -> tuple[HypothesisCheck, ...]:
    """Every inequality of the matching theorem, with numeric margins.

    Includes the positivity of the t-exponent mu (equal to the base's
    convergence mu unless overridden).
    """
    checks = list(moment_hypotheses(spec, w.rho))
    checks.append(HypothesisCheck("mu > 0", w.exponent > 0.0, w.exponent))
    return tuple(checks)


def apply_operator(
    spec: OperatorSpec,
    w: PowerWeightedIFunction,
    *,
    enforce_hypotheses: bool = True,
) -> ApplyResult:
    """Apply a fractional operator to a power-weighted I-function.

    Returns the theorem's output: a power prefactor x**(prefactor_exponent)
    and a new power-weighted I-function whose base carries the inserted
    parameter triples (3 for MSM, 2 for Saigo, 1 for EK/RL).
    """
    expected = (
        Orientation.LEFT_WEIGHTED if spec.side is Side.LEFT else Orientation.RIGHT_WEIGHTED
    )
    if w.orientation is not expected:
        raise OrientationError(
            f"{spec.side.value}-sided operator requires a "
            f"{expected.value}-weighted operand, got {w.orientation.value}"
        )
    report = check_hypotheses(spec, w)
    if enforce_hypotheses:
        _raise_on_failure(report)
    mu = w.exponent
    num, den, expo = _moment_shifts(spec, w.rho)
    inserted_upper = tuple(GammaTriple(1.0 - shift, mu, 1.0) for shift in num)
    inserted_lower = tuple(GammaTriple(1.0 - shift, mu, 1.0) for shift in den)
    base = w.base
    out_base = IFunction(
        m=base.m,
        n=base.n + len(inserted_upper),
        upper=inserted_upper + base.upper,
        lower=base.lower + inserted_lower,
        coeff=base.coeff,
    )
    out_rho = expo + 1.0 if spec.side is Side.LEFT else -expo
    output = PowerWeightedIFunction(
        rho=out_rho,
        orientation=w.orientation,
        base=out_base,
        exponent=mu,
        exponent_override=w.exponent_override,
    )
    return ApplyResult(prefactor_exponent=expo, output=output, hypothesis_report=report)


def weighted_value(
    w: PowerWeightedIFunction, t: float, cfg: ContourConfig | None = None
) -> complex:
    """Pointwise value of the power-weighted I-function at t > 0."""
    if not t > 0.0:
        raise ValueError("t must be positive")
    if w.orientation is Orientation.LEFT_WEIGHTED:
        z = w.base.coeff * t**w.exponent
        return t ** (w.rho - 1.0) * evaluate(w.base, z, cfg)
    z = w.base.coeff * t ** (-w.exponent)
    return t ** (-w.rho) * evaluate(w.base, z, cfg)


# --------------------------------------------------------------------------
# reductions and the remark substitution
# --------------------------------------------------------------------------


def _is_zero(z: complex) -> bool:
    return abs(z) <= _EQ_TOL


def reduce_operator(spec: OperatorSpec) -> OperatorSpec:
    """Collapse a degenerate operator onto its lower family.

    MSM_I with alpha'=0 becomes the Saigo integral (gamma, alpha-gamma,
    -beta); MSM_D/MSM_CD with alpha=0 become the Saigo derivative forms
    (gamma, alpha'-gamma, beta'-gamma); a Saigo operator with beta=-alpha
    is Riemann-Liouville and with beta=0 Erdelyi-Kober.
    """
    fam = spec.family
    if fam is Family.MSM_I:
        al, alp, be, bep, ga = spec.params
        if _is_zero(alp):
            return OperatorSpec(Family.SAIGO_I, spec.side, (ga, al - ga, -be))
        raise ReductionError("MSM integral reduces only when alpha' = 0")
    if fam in (Family.MSM_D, Family.MSM_CD):
        al, alp, be, bep, ga = spec.params
        if _is_zero(al):
            target = Family.SAIGO_D if fam is Family.MSM_D else Family.SAIGO_CD
            return OperatorSpec(target, spec.side, (ga, alp - ga, bep - ga))
        raise ReductionError(f"{fam.value} reduces only when alpha = 0")
    if fam in (Family.SAIGO_I, Family.SAIGO_D, Family.SAIGO_CD):
        al, be, ga = spec.params
        if _is_zero(be + al):
            if fam is Family.SAIGO_I:
                return OperatorSpec(Family.RL_I, spec.side, (al,))
            if fam is Family.SAIGO_D:
                return OperatorSpec(Family.RL_D, spec.side, (al,))
            raise ReductionError("no Caputo Riemann-Liouville family is defined")
        if _is_zero(be):
            target = {
                Family.SAIGO_I: Family.EK_I,
                Family.SAIGO_D: Family.EK_D,
                Family.SAIGO_CD: Family.EK_CD,
            }[fam]
            return OperatorSpec(target, spec.side, (ga, al))
        raise ReductionError("Saigo reduces only for beta = -alpha or beta = 0")
    raise ReductionError(f"no reduction applies to family {fam.value}")


def remark_substitution(
    spec: OperatorSpec, direction: SubstitutionDirection
) -> OperatorSpec:
    """The parameter changes linking the MSM integral and derivative lemmas.

    HYPOTHESIS direction returns the inner integral spec of the derivative
    definition (the changes applied to the lemma hypotheses); RHS returns
    the pure sign-flipped spec whose integral-moment formula *is* the
    derivative-moment formula.  The family toggles MSM_I <-> MSM_D; the RHS
    substitution is an involution.
    """
    if spec.family not in (Family.MSM_I, Family.MSM_D):
        raise ValueError("remark substitution applies to MSM_I and MSM_D only")
    al, alp, be, bep, ga = spec.params
    other = Family.MSM_D if spec.family is Family.MSM_I else Family.MSM_I
    if direction is SubstitutionDirection.RHS:
        params = (-alp, -al, -bep, -be, -ga)
    else:
        m = _int_part(ga.real) + 1
        if spec.side is Side.LEFT:
            params = (-alp, -al, -bep + m, -be, -ga + m)
        else:
            params = (-alp, -al, -bep, -be + m, -ga + m)
    return OperatorSpec(other, spec.side, params)
