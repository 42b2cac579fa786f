"""Special-function kernel.

Everything transcendental the radial solvers consume: the Gamma family
(including the entire reciprocal 1/Gamma and its W-derivative along
Gamma-argument ladders), Bessel J_nu / Y_0 / K_nu, the Kummer function
Phi(a, b; z) = M(a, b, z), the Tricomi function Psi(a, b; z) = U(a, b, z),
the entire combination Phi(a, b; z)/Gamma(b), and the mantissa derivative
d/dmu Phi(a0 + mu, 1 + 2mu; z) at mu = 0 that builds the logarithmic
second solution of the kappa = 0 channel.

Accuracy targets (relative, verified in tests against mpmath oracles):
gamma 1e-13 for |x| <= 50, digamma 1e-12, J/Y0/K 1e-10, Phi 1e-10 over
a in [-200, 200], b in (0, 100], z in [0, 500], Psi 1e-8.  scipy.special
meets those targets everywhere except Psi at integer b with z <= 30,
which is computed here by the logarithmic limit series (never by the
two-term connection formula, whose terms are individually singular).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

EULER_GAMMA = float(np.euler_gamma)

# direct series/limit formulas below this z, library asymptotics above
Z_SWITCH = 30.0

# parameters this close to an integer are treated as exactly integer
INT_SNAP_TOL = 1e-9


class DomainError(ValueError):
    """Argument outside the function's real domain (e.g. x <= 0)."""


class PoleError(ValueError):
    """Evaluation at a pole of Gamma or psi (nonpositive integer)."""


class ParameterError(ValueError):
    """Function parameter (not argument) at a singular value."""


@dataclass(frozen=True)
class SpecFunResult:
    """Value plus a forward-accumulated absolute error estimate."""

    value: float
    abs_error_estimate: float


def nonpositive_int_or_none(x: float, tol: float = INT_SNAP_TOL):
    """Return the nonpositive integer x snaps to, or None.

    Pole and series-termination conditions are decided by this exact
    integer test, never by a large-value threshold.
    """
    n = round(x)
    if n <= 0 and abs(x - n) <= tol * max(1.0, abs(x)):
        return int(n)
    return None


def gamma(x: float) -> float:
    """Gamma(x) for real x away from the poles at 0, -1, -2, ..."""
    if nonpositive_int_or_none(x) is not None:
        raise PoleError(f"gamma pole at x = {x}")
    return float(_sp.gamma(x))


def gamma_reciprocal(x: float) -> float:
    """1/Gamma(x): entire, vanishing at the nonpositive integers."""
    return float(_sp.rgamma(x))


def gammaln(x: float) -> float:
    """log Gamma(x) for x > 0 (used to build overflow-safe ratios)."""
    if x <= 0:
        raise DomainError(f"gammaln needs x > 0, got {x}")
    return float(_sp.gammaln(x))


def digamma(x: float) -> float:
    """psi(x) away from the poles at 0, -1, -2, ..."""
    if nonpositive_int_or_none(x) is not None:
        raise PoleError(f"digamma pole at x = {x}")
    return float(_sp.digamma(x))


def trigamma(x: float) -> float:
    """psi'(x) away from the poles at 0, -1, -2, ..."""
    if nonpositive_int_or_none(x) is not None:
        raise PoleError(f"trigamma pole at x = {x}")
    return float(_sp.polygamma(1, x))


def deriv_gamma_reciprocal(u: float) -> float:
    """d/du of 1/Gamma(u), finite for all real u.

    Equals -psi(u)/Gamma(u) away from the poles; at u = -k the removable
    value is (-1)^k k!.
    """
    k = nonpositive_int_or_none(u)
    if k is not None:
        k = -k
        return (-1.0) ** k * float(_sp.gamma(k + 1))
    return -float(_sp.digamma(u) * _sp.rgamma(u))


def bessel_j(nu: float, x: float) -> float:
    """Bessel J_nu(x) for x > 0."""
    if x <= 0:
        raise DomainError(f"bessel_j needs x > 0, got {x}")
    return float(_sp.jv(nu, x))


def bessel_y0(x: float) -> float:
    """Bessel Y_0(x) (a.k.a. N_0) for x > 0."""
    if x <= 0:
        raise DomainError(f"bessel_y0 needs x > 0, got {x}")
    return float(_sp.y0(x))


def bessel_k(nu: float, x: float) -> float:
    """Modified Bessel K_nu(x) for x > 0; symmetric in nu."""
    if x <= 0:
        raise DomainError(f"bessel_k needs x > 0, got {x}")
    return float(_sp.kv(nu, x))


def kummer_m(alpha: float, beta: float, z: float) -> float:
    """Kummer Phi(alpha, beta; z) for beta not a nonpositive integer.

    Callers needing the beta-pole limit use kummer_m_over_gamma_beta,
    which is entire in beta.
    """
    if nonpositive_int_or_none(beta) is not None:
        raise ParameterError(f"kummer_m pole at beta = {beta}")
    na = nonpositive_int_or_none(alpha)
    if na is not None:
        return _kummer_poly(na, beta, z)
    return float(_sp.hyp1f1(alpha, beta, z))


def _kummer_poly(neg_n: int, beta: float, z: float) -> float:
    """Terminating Phi(-n, beta; z) via the stable Laguerre route."""
    n = -neg_n
    if n == 0:
        return 1.0
    # Phi(-n, b; z) = n!/(b)_n * L_n^{(b-1)}(z); ratio in logs for large n
    lag = float(_sp.eval_genlaguerre(n, beta - 1.0, z))
    log_ratio = _sp.gammaln(n + 1.0) + _sp.gammaln(beta) - _sp.gammaln(beta + n)
    return math.exp(log_ratio) * lag


def kummer_m_over_gamma_beta(alpha: float, beta: float, z: float) -> float:
    """Phi(alpha, beta; z)/Gamma(beta), entire in beta.

    At beta = -n the value is the limit
    z^{n+1} (alpha)_{n+1}/(n+1)! * Phi(alpha+n+1, n+2; z).
    """
    n = nonpositive_int_or_none(beta)
    if n is None:
        na = nonpositive_int_or_none(alpha)
        phi = _kummer_poly(na, beta, z) if na is not None else float(_sp.hyp1f1(alpha, beta, z))
        return phi * float(_sp.rgamma(beta))
    n = -n
    lead = float(_sp.poch(alpha, n + 1)) * z ** (n + 1) / math.factorial(n + 1)
    if lead == 0.0:
        return 0.0
    return lead * kummer_m(alpha + n + 1, float(n + 2), z)


_LD = np.longdouble
_LD_EPS = float(np.finfo(np.longdouble).eps)


def _tricomi_int_beta_series(a: float, n: int, z: float, max_terms: int = 700):
    """U(a, n+1, z) for integer n >= 0, non-integer a, by the log series.

    Extended-precision accumulation with a forward cancellation estimate;
    the caller falls back to mpmath when the estimate is too large.
    """
    a_ld = _LD(a)
    z_ld = _LD(z)
    lg = _LD(math.log(z))
    pa = _LD(float(_sp.digamma(a)))
    p1 = _LD(-EULER_GAMMA)
    pn = _LD(float(_sp.digamma(n + 1)))
    term = _LD(1.0)
    s1 = _LD(0.0)
    maxmag = _LD(0.0)
    for k in range(max_terms):
        contrib = term * (lg + pa - p1 - pn)
        s1 += contrib
        maxmag = max(maxmag, abs(contrib))
        term *= (a_ld + k) * z_ld / _LD((n + 1 + k) * (k + 1))
        pa += 1 / (a_ld + k)
        p1 += _LD(1.0) / (1 + k)
        pn += _LD(1.0) / (n + 1 + k)
        if k > 4 and abs(term) * (abs(lg) + abs(pa) + abs(p1) + abs(pn)) < _LD(1e-24) * max(
            maxmag, _LD(1e-300)
        ):
            break
    pref = (-1.0) ** (n + 1) * float(_sp.rgamma(a - n)) / math.factorial(n)
    value = pref * float(s1)
    err = abs(pref) * float(maxmag) * _LD_EPS * 8.0
    if n >= 1:
        s2 = _LD(0.0)
        t = _LD(1.0)
        for k in range(n):
            s2 += t
            if k < n - 1:
                t *= (a_ld - n + k) * z_ld / _LD((1 - n + k) * (k + 1))
        value += math.factorial(n - 1) * float(_sp.rgamma(a)) * z ** (-n) * float(s2)
    return value, err


def tricomi_u(alpha: float, beta: float, z: float) -> float:
    """Tricomi Psi(alpha, beta; z) = U(alpha, beta, z) for z > 0.

    Integer beta is routed through the logarithmic limit series (z below
    Z_SWITCH) or the library's asymptotic branch, never the two-term
    connection formula.  Deep-cancellation corners (|alpha| large with z
    near Z_SWITCH at integer beta) escalate to mpmath.
    """
    if z <= 0:
        raise DomainError(f"tricomi_u needs z > 0, got {z}")
    if alpha == 0.0:
        return 1.0
    na = nonpositive_int_or_none(alpha)
    if na is not None:
        # U(-n, b, z) = (-1)^n n! L_n^{(b-1)}(z), a polynomial
        n = -na
        return (-1.0) ** n * math.factorial(n) * float(_sp.eval_genlaguerre(n, beta - 1.0, z))
    m = round(beta)
    if abs(beta - m) > INT_SNAP_TOL:
        return float(_sp.hyperu(alpha, beta, z))
    if z > Z_SWITCH:
        return float(_sp.hyperu(alpha, float(m), z))
    if m <= 0:
        # Kummer transform to beta' = 2 - m >= 2
        return z ** (1.0 - m) * tricomi_u(alpha - m + 1.0, float(2 - m), z)
    value, err = _tricomi_int_beta_series(alpha, m - 1, z)
    if err <= 5e-9 * max(abs(value), 1e-280):
        return value
    import mpmath

    with mpmath.workdps(40):
        return float(mpmath.hyperu(alpha, m, z))


def kummer_m_dmu_at0_with_error(alpha0: float, z: float) -> SpecFunResult:
    """d/dmu Phi(alpha0 + mu, 1 + 2mu; z) at mu = 0, with error estimate.

    Term-wise differentiated series: with P_k = (alpha0)_k z^k/(k!)^2 and
    its alpha-derivative partner D_k, the term is D_k - 2 H_k P_k (the
    -2 H_k from the beta slot moving at twice the mantissa rate).  The
    P/D recurrence never divides by (alpha0 + j), so nonpositive-integer
    alpha0 needs no special casing.
    """
    if z < 0:
        raise DomainError(f"kummer_m_dmu_at0 needs z >= 0, got {z}")
    if z == 0.0:
        return SpecFunResult(0.0, 0.0)
    P = 1.0
    D = 0.0
    H = 0.0
    s = 0.0
    maxmag = 0.0
    for k in range(700):
        term = D - 2.0 * H * P
        s += term
        maxmag = max(maxmag, abs(term))
        scale = z / ((k + 1.0) * (k + 1.0))
        P, D = P * (alpha0 + k) * scale, (D * (alpha0 + k) + P) * scale
        H += 1.0 / (k + 1.0)
        if k > 4 and (abs(D) + 2.0 * (H + 1.0) * abs(P)) < 1e-18 * max(abs(s), 1e-300):
            break
    return SpecFunResult(s, maxmag * 1e-15)


def kummer_m_dmu_at0(alpha0: float, z: float) -> float:
    """d/dmu Phi(alpha0 + mu, 1 + 2mu; z) at mu = 0."""
    return kummer_m_dmu_at0_with_error(alpha0, z).value
