"""Special-function substrate.

Jacobi polynomials (values, endpoint values, derivatives, squared norms,
largest zeros), Gauss-Jacobi quadrature including tail rules on [delta, 1],
log-gamma, incomplete beta integrals, and Bessel functions of the first
kind with their first positive zero.

Everything is plain double precision; gamma ratios go through log-gamma
differences so endpoint values and norms stay finite for large degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "JacobiIndex",
    "ZeroResult",
    "QuadratureRule",
    "jacobi_eval",
    "jacobi_at_one",
    "jacobi_derivative",
    "jacobi_norm_sq",
    "euler_rayleigh_bound",
    "largest_zero",
    "gauss_jacobi_rule",
    "tail_quadrature",
    "log_gamma",
    "beta_function",
    "incomplete_beta",
    "bessel_j",
    "bessel_first_zero",
    "mehler_heine_residual",
]

_T_TOL = 1e-12


@dataclass(frozen=True)
class JacobiIndex:
    """Parameter pair (alpha, beta) plus degree n of a Jacobi polynomial."""

    alpha: float
    beta: float
    n: int

    def __post_init__(self) -> None:
        if not self.alpha >= -0.5:
            raise ValueError(f"alpha must be >= -1/2, got {self.alpha}")
        if not self.beta > -1.0:
            raise ValueError(f"beta must be > -1, got {self.beta}")
        if self.n < 0 or self.n != int(self.n):
            raise ValueError(f"degree must be a nonnegative integer, got {self.n}")


@dataclass(frozen=True)
class ZeroResult:
    """Largest zero of a Jacobi polynomial with its arccos and final bracket."""

    t_nn: float
    theta_n1: float
    bracket_width: float


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int


# ---------------------------------------------------------------------------
# log-gamma (Lanczos, g = 7, 9 coefficients) and beta integrals
# ---------------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if not x > 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    if x < 0.5:
        # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def beta_function(a: float, b: float) -> float:
    """Complete beta integral B(a, b)."""
    return math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))


def incomplete_beta(x: float, a: float, b: float) -> float:
    """B_x(a,b) = integral of t^(a-1) (1-t)^(b-1) over [0, x].

    For x below the mean a/(a+b) the hypergeometric series of
    x^a/a * F(a, 1-b; a+1; x) is summed directly; otherwise the value is
    obtained through the reflection B(a,b) - B_{1-x}(b,a).
    """
    if not (0.0 <= x <= 1.0):
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if not (a > 0.0 and b > 0.0):
        raise ValueError("a and b must be positive")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return beta_function(a, b)
    if x <= a / (a + b):
        return _beta_series(x, a, b)
    return beta_function(a, b) - _beta_series(1.0 - x, b, a)


def _beta_series(x: float, a: float, b: float) -> float:
    # sum_m  (1-b)_m x^m / (m! (a+m)),  times x^a
    s = 0.0
    p = 1.0
    for m in range(100000):
        term = p / (a + m)
        s += term
        p *= (m + 1.0 - b) * x / (m + 1.0)
        if abs(p) <= 1e-18 * abs(s) * (a + m + 1.0):
            break
    else:  # pragma: no cover
        raise RuntimeError("incomplete beta series did not converge")
    return s * math.pow(x, a)


# ---------------------------------------------------------------------------
# Jacobi polynomials
# ---------------------------------------------------------------------------


def _check_t(t):
    arr = np.asarray(t, dtype=np.float64)
    if np.any(arr > 1.0 + _T_TOL) or np.any(arr < -1.0 - _T_TOL):
        raise ValueError("argument outside [-1, 1]")
    return np.clip(arr, -1.0, 1.0)


def _jacobi_raw(alpha: float, beta: float, n: int, t):
    """Upward three-term recurrence; t may be scalar or ndarray."""
    ab = alpha + beta
    if n == 0:
        return np.ones_like(t) if isinstance(t, np.ndarray) else 1.0
    pm = np.ones_like(t) if isinstance(t, np.ndarray) else 1.0
    pc = 0.5 * ((ab + 2.0) * t + (alpha - beta))
    for k in range(1, n):
        tmp = 2.0 * k + ab
        den = 2.0 * (k + 1.0) * (k + ab + 1.0)
        a_k = (tmp + 1.0) * (tmp + 2.0) / den
        b_k = (alpha * alpha - beta * beta) * (tmp + 1.0) / (den * tmp)
        c_k = (k + alpha) * (k + beta) * (tmp + 2.0) / (0.5 * den * tmp)
        pm, pc = pc, (a_k * t + b_k) * pc - c_k * pm
    return pc


def jacobi_eval(idx: JacobiIndex, t):
    """P_n^(alpha,beta)(t) by upward recurrence; t scalar or array in [-1, 1]."""
    tt = _check_t(t)
    out = _jacobi_raw(idx.alpha, idx.beta, idx.n, tt)
    if np.isscalar(t) or np.ndim(t) == 0:
        return float(out)
    return out


def jacobi_at_one(idx: JacobiIndex) -> float:
    """P_n^(alpha,beta)(1) = Gamma(n+alpha+1) / (n! Gamma(alpha+1))."""
    n, alpha = idx.n, idx.alpha
    return math.exp(log_gamma(n + alpha + 1.0) - log_gamma(n + 1.0)
                    - log_gamma(alpha + 1.0))


def jacobi_derivative(idx: JacobiIndex, t):
    """d/dt P_n^(alpha,beta)(t) = (n+alpha+beta+1)/2 * P_{n-1}^(alpha+1,beta+1)(t)."""
    tt = _check_t(t)
    if idx.n == 0:
        out = np.zeros_like(tt)
    else:
        fac = 0.5 * (idx.n + idx.alpha + idx.beta + 1.0)
        out = fac * _jacobi_raw(idx.alpha + 1.0, idx.beta + 1.0, idx.n - 1, tt)
    if np.isscalar(t) or np.ndim(t) == 0:
        return float(out)
    return out


def jacobi_norm_sq(idx: JacobiIndex, projective: bool = False) -> float:
    """Squared weighted L2 norm of P_n^(alpha,beta).

    Standard form integrates over (-1, 1); with ``projective`` set the
    integral runs over (0, 1), which requires even degree and alpha == beta
    (the integrand is then even and the value halves).
    """
    n, alpha, beta = idx.n, idx.alpha, idx.beta
    if projective:
        if n % 2 != 0:
            raise ValueError("projective norm needs even degree")
        if alpha != beta:
            raise ValueError("projective norm needs alpha == beta")
    lg = (log_gamma(n + alpha + 1.0) + log_gamma(n + beta + 1.0)
          - log_gamma(n + 1.0) - log_gamma(n + alpha + beta + 1.0))
    val = math.exp((alpha + beta + 1.0) * math.log(2.0) + lg) / (2 * n + alpha + beta + 1.0)
    return 0.5 * val if projective else val


def euler_rayleigh_bound(idx: JacobiIndex) -> float:
    """Upper bound 1 - 2(alpha+1)/(n(n+alpha+beta+1)) on the largest zero."""
    n = idx.n
    if n < 1:
        raise ValueError("degree must be >= 1")
    return 1.0 - 2.0 * (idx.alpha + 1.0) / (n * (n + idx.alpha + idx.beta + 1.0))


def largest_zero(idx: JacobiIndex) -> ZeroResult:
    """Largest zero t_nn of P_n^(alpha,beta), n >= 1.

    Scans downward from the Euler-Rayleigh upper bound until the polynomial
    changes sign, then bisects the bracket to width 1e-15.  The scan step
    starts at (1 - bound)/8 and is halved on the (unreachable in exact
    arithmetic) event that no sign change is found above -1.
    """
    if idx.n < 1:
        raise ValueError("degree must be >= 1")
    alpha, beta, n = idx.alpha, idx.beta, idx.n

    def f(x: float) -> float:
        return float(_jacobi_raw(alpha, beta, n, x))

    ub = euler_rayleigh_bound(idx)
    f_ub = f(ub)
    if f_ub <= 0.0:
        # the bound itself sits on the zero to within roundoff (exact for n=1)
        t = ub
        return ZeroResult(t_nn=t, theta_n1=math.acos(t), bracket_width=0.0)

    h = (1.0 - ub) / 8.0
    for _attempt in range(64):
        hi, f_hi = ub, f_ub
        lo = hi - h
        found = False
        while lo > -1.0 - h:
            f_lo = f(max(lo, -1.0))
            if f_lo <= 0.0:
                found = True
                break
            hi, f_hi = lo, f_lo
            lo -= h
        if found:
            lo = max(lo, -1.0)
            break
        h *= 0.5
    else:  # pragma: no cover
        raise RuntimeError("failed to bracket the largest zero")

    while hi - lo > 1e-15:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    t = 0.5 * (lo + hi)
    return ZeroResult(t_nn=t, theta_n1=math.acos(min(t, 1.0)), bracket_width=hi - lo)


# ---------------------------------------------------------------------------
# Gauss-Jacobi quadrature (Golub-Welsch on the symmetric tridiagonal matrix)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=128)
def _gauss_jacobi_cached(alpha: float, beta: float, m: int):
    ab = alpha + beta
    diag = np.empty(m)
    diag[0] = (beta - alpha) / (ab + 2.0)
    if m > 1:
        i = np.arange(1, m, dtype=np.float64)
        diag[1:] = (beta * beta - alpha * alpha) / ((2 * i + ab) * (2 * i + ab + 2.0))
        off = np.empty(m - 1)
        # i = 1 written in cancelled form: (i + ab) / ((2i+ab)^2 - 1) has a
        # removable 0/0 at ab = -1
        off[0] = math.sqrt(4.0 * (1.0 + alpha) * (1.0 + beta)
                           / ((2.0 + ab) ** 2 * (3.0 + ab)))
        if m > 2:
            j = np.arange(2, m, dtype=np.float64)
            s = 2 * j + ab
            off[1:] = np.sqrt(4.0 * j * (j + alpha) * (j + beta) * (j + ab)
                              / (s * s * (s * s - 1.0)))
        jac = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    else:
        jac = diag.reshape(1, 1)
    nodes, vecs = np.linalg.eigh(jac)
    mu0 = math.exp((ab + 1.0) * math.log(2.0) + log_gamma(alpha + 1.0)
                   + log_gamma(beta + 1.0) - log_gamma(ab + 2.0))
    weights = mu0 * vecs[0, :] ** 2
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def gauss_jacobi_rule(alpha: float, beta: float, m: int) -> QuadratureRule:
    """m-point rule for the weight (1-t)^alpha (1+t)^beta on (-1, 1).

    Exact for polynomial integrands up to degree 2m - 1.
    """
    if m < 1:
        raise ValueError("node count must be >= 1")
    if not (alpha > -1.0 and beta > -1.0):
        raise ValueError("alpha, beta must exceed -1")
    nodes, weights = _gauss_jacobi_cached(float(alpha), float(beta), int(m))
    if not np.all(np.isfinite(nodes)):  # pragma: no cover
        raise RuntimeError("eigen solver failed to converge")
    return QuadratureRule(nodes=nodes, weights=weights, exactness_degree=2 * m - 1)


def tail_quadrature(alpha: float, beta: float, delta: float, m: int) -> QuadratureRule:
    """Rule for integrals of f(t) (1-t)^alpha (1+t)^beta over [delta, 1].

    The substitution t = 1 - (1-delta) x turns the (1-t)^alpha factor into
    x^alpha, handled exactly by a (0, alpha) Gauss-Jacobi rule; the remaining
    (1+t)^beta factor is analytic on the tail and folded into the weights.
    Weights therefore absorb the full weight function: sum_i w_i f(t_i)
    approximates the integral of f * omega.
    """
    if not (-1.0 <= delta < 1.0):
        raise ValueError("delta must lie in [-1, 1)")
    base = gauss_jacobi_rule(0.0, alpha, m)
    x = 0.5 * (1.0 + base.nodes)  # in (0, 1), increasing
    width = 1.0 - delta
    t = 1.0 - width * x
    w = (width ** (alpha + 1.0) * 2.0 ** (-alpha - 1.0)
         * base.weights * (2.0 - width * x) ** beta)
    t = t[::-1].copy()
    w = w[::-1].copy()
    t.flags.writeable = False
    w.flags.writeable = False
    return QuadratureRule(nodes=t, weights=w, exactness_degree=2 * m - 1)


# ---------------------------------------------------------------------------
# Bessel J_alpha and its first positive zero
# ---------------------------------------------------------------------------

_BESSEL_SERIES_CUT = 18.0
_BESSEL_Z_MAX = 50.0


def bessel_j(alpha: float, z: float) -> float:
    """Bessel function of the first kind J_alpha(z) for 0 <= z <= 50.

    The ascending series is summed in extended precision up to z = 18
    (beyond which its alternating terms lose too many digits even in 80-bit
    arithmetic); larger arguments use the Bessel integral representation
    with the exponential correction term for non-integer order.
    """
    if not (-0.5 <= alpha <= 10.0):
        raise ValueError(f"order must lie in [-1/2, 10], got {alpha}")
    if not (0.0 <= z <= _BESSEL_Z_MAX):
        raise ValueError(f"argument must lie in [0, {_BESSEL_Z_MAX}], got {z}")
    if z == 0.0:
        return 1.0 if alpha == 0.0 else 0.0
    if z <= _BESSEL_SERIES_CUT:
        return _bessel_series(alpha, z)
    return _bessel_integral(alpha, z)


def _bessel_series(alpha: float, z: float) -> float:
    half = np.longdouble(0.5) * np.longdouble(z)
    q = half * half  # (z/2)^2
    term = np.longdouble(math.exp(alpha * math.log(z / 2.0) - log_gamma(alpha + 1.0)))
    total = term
    m = np.longdouble(0.0)
    one = np.longdouble(1.0)
    for _ in range(400):
        m += one
        term = -term * q / (m * (m + np.longdouble(alpha)))
        total += term
        if abs(term) <= np.longdouble(1e-18) * max(abs(total), np.longdouble(1e-30)) \
                and float(m) > z / 2.0:
            break
    else:  # pragma: no cover
        raise RuntimeError("Bessel series did not terminate")
    return float(total)


@lru_cache(maxsize=4)
def _gl_rule(m: int):
    return gauss_jacobi_rule(0.0, 0.0, m)


def _bessel_integral(alpha: float, z: float) -> float:
    # J_a(z) = (1/pi) int_0^pi cos(z sin h - a h) dh
    #          - sin(a pi)/pi int_0^inf exp(-z sinh s - a s) ds
    rule = _gl_rule(512)
    h = 0.5 * math.pi * (rule.nodes + 1.0)
    w = 0.5 * math.pi * rule.weights
    osc = float(np.dot(w, np.cos(z * np.sin(h) - alpha * h))) / math.pi

    corr = 0.0
    s_ap = math.sin(alpha * math.pi)
    if s_ap != 0.0:
        s_max = math.asinh(46.0 / z)
        rule2 = _gl_rule(192)
        s = 0.5 * s_max * (rule2.nodes + 1.0)
        ws = 0.5 * s_max * rule2.weights
        corr = s_ap / math.pi * float(np.dot(ws, np.exp(-z * np.sinh(s) - alpha * s)))
    return osc - corr


def bessel_first_zero(alpha: float) -> float:
    """Smallest positive zero j_{alpha,1}, by sign scan (step 0.05) and bisection."""
    if not (-0.5 <= alpha <= 10.0):
        raise ValueError(f"order must lie in [-1/2, 10], got {alpha}")
    step = 0.05
    z_prev = step
    f_prev = bessel_j(alpha, z_prev)
    z_hi = 2.0 * max(alpha, 0.0) + 20.0
    z = z_prev + step
    while z <= z_hi + step:
        f = bessel_j(alpha, min(z, _BESSEL_Z_MAX))
        if f_prev > 0.0 >= f:
            lo, hi = z_prev, z
            while hi - lo > 1e-13:
                mid = 0.5 * (lo + hi)
                if bessel_j(alpha, mid) > 0.0:
                    lo = mid
                else:
                    hi = mid
            return 0.5 * (lo + hi)
        z_prev, f_prev = z, f
        z += step
    raise RuntimeError("failed to bracket the first Bessel zero")  # pragma: no cover


def mehler_heine_residual(idx: JacobiIndex, z: float) -> float:
    """|n^-alpha P_n(1 - z^2/(2 n^2)) - (2/z)^alpha J_alpha(z)|."""
    if not (0.0 < z <= 18.0):
        raise ValueError("z must lie in (0, 18]")
    n, alpha = idx.n, idx.alpha
    t = 1.0 - z * z / (2.0 * n * n)
    left = float(_jacobi_raw(idx.alpha, idx.beta, n, t)) * math.exp(-alpha * math.log(n))
    right = (2.0 / z) ** alpha * bessel_j(alpha, z)
    return abs(left - right)
