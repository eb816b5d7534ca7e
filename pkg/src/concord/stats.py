"""Self-contained statistics: paired t-test, McNemar, and the special
functions they need (regularized incomplete beta via Lentz's continued
fraction, inverse normal CDF via Acklam's rational approximation)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ArgumentError

_BETACF_MAX_ITER = 300
_BETACF_EPS = 3e-14
_FPMIN = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _BETACF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETACF_EPS:
            return h
    return h  # converged to working precision in practice


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b), absolute error well below 1e-9 for the df ranges used here."""
    if a <= 0 or b <= 0:
        raise ArgumentError("incomplete beta needs a > 0 and b > 0")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_bt = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    bt = math.exp(ln_bt)
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * _betacf(a, b, x) / a
    return 1.0 - bt * _betacf(b, a, 1.0 - x) / b


def t_two_sided_p(t: float, df: int) -> float:
    """P(|T_df| >= |t|) via the incomplete beta identity."""
    if df < 1:
        raise ArgumentError(f"t distribution needs df >= 1, got {df}")
    if math.isinf(t):
        return 0.0
    if t == 0.0:
        return 1.0
    x = df / (df + t * t)
    return regularized_incomplete_beta(df / 2.0, 0.5, x)


@dataclass(frozen=True)
class TTestResult:
    t: float
    p: float
    df: int
    degenerate: bool = False  # zero-variance nonzero differences

    def __iter__(self):
        return iter((self.t, self.p, self.df))


def paired_t_test(a, b) -> TTestResult:
    """Standard paired t statistic on d_i = a_i - b_i, two-sided p.

    Identical vectors give (t=0, p=1); constant nonzero differences have
    infinite t and are reported as p=0 with the degenerate flag set.
    """
    a = list(a)
    b = list(b)
    if len(a) != len(b):
        raise ArgumentError(f"paired vectors differ in length: {len(a)} vs {len(b)}")
    n = len(a)
    if n < 2:
        raise ArgumentError("paired t-test needs at least 2 observations")
    d = [ai - bi for ai, bi in zip(a, b)]
    df = n - 1
    mean = sum(d) / n
    ss = sum((di - mean) ** 2 for di in d)
    if ss == 0.0:
        if mean == 0.0:
            return TTestResult(0.0, 1.0, df, False)
        t = math.inf if mean > 0 else -math.inf
        return TTestResult(t, 0.0, df, True)
    sd = math.sqrt(ss / df)
    t = mean / (sd / math.sqrt(n))
    return TTestResult(t, t_two_sided_p(t, df), df, False)


def chi2_sf_1df(x: float) -> float:
    """Survival function of chi-square with 1 degree of freedom."""
    if x <= 0:
        return 1.0
    return math.erfc(math.sqrt(x / 2.0))


def mcnemar_test(correct_a, correct_b) -> tuple[float, float]:
    """Continuity-corrected McNemar statistic on paired 0/1 correctness."""
    correct_a = list(correct_a)
    correct_b = list(correct_b)
    if len(correct_a) != len(correct_b):
        raise ArgumentError("McNemar needs paired vectors of equal length")
    b01 = sum(1 for x, y in zip(correct_a, correct_b) if x and not y)
    b10 = sum(1 for x, y in zip(correct_a, correct_b) if y and not x)
    if b01 + b10 == 0:
        return 0.0, 1.0
    stat = (max(abs(b01 - b10) - 1, 0)) ** 2 / (b01 + b10)
    return stat, chi2_sf_1df(stat)


# Acklam's rational approximation to the inverse normal CDF; relative error
# below 1.2e-9 over (0, 1), ample for confidence-bound pruning.
_ACKLAM_A = (
    -3.969683028665376e01,
    2.209460984245205e02,
    -2.759285104469687e02,
    1.383577518672690e02,
    -3.066479806614716e01,
    2.506628277459239e00,
)
_ACKLAM_B = (
    -5.447609879822406e01,
    1.615858368580409e02,
    -1.556989798598866e02,
    6.680131188771972e01,
    -1.328068155288572e01,
)
_ACKLAM_C = (
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e00,
    -2.549732539343734e00,
    4.374664141464968e00,
    2.938163982698783e00,
)
_ACKLAM_D = (
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e00,
    3.754408661907416e00,
)


def norm_ppf(p: float) -> float:
    """Inverse standard normal CDF."""
    if not 0.0 < p < 1.0:
        raise ArgumentError(f"norm_ppf needs p in (0, 1), got {p}")
    p_low = 0.02425
    a, b, c, d = _ACKLAM_A, _ACKLAM_B, _ACKLAM_C, _ACKLAM_D
    if p < p_low:
        q = math.sqrt(-2.0 * math.log(p))
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / (
            (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
        )
    if p <= 1.0 - p_low:
        q = p - 0.5
        r = q * q
        return (
            (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5])
            * q
            / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)
        )
    q = math.sqrt(-2.0 * math.log1p(-p))
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) / (
        (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
    )
