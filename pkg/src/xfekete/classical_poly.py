"""Classical Laguerre and Jacobi polynomials with general real parameters.

Coefficient builders use explicit sums with generalized binomials computed
as falling-factorial products, so negative and non-integer parameters are
handled without gamma-function poles.  Pointwise evaluation goes through
the three-term recurrences, which stay accurate far beyond the degrees at
which monomial coefficients become unusable.  Also provides Gauss-type
zeros via the symmetric tridiagonal eigenproblem and the first positive
zero of the Bessel function J_a from its ascending series.
"""

import numpy as np
import numpy.polynomial.polynomial as npoly
from math import lgamma, log

from .errors import DegreeCollapse, NoSignChange, SeriesDivergence

TRIM_REL = 1e-13


def trim(coeffs):
    """Drop trailing coefficients below TRIM_REL relative to the largest.

    Returns a float array of length >= 1.
    """
    c = np.atleast_1d(np.asarray(coeffs, dtype=float))
    scale = np.max(np.abs(c))
    if scale == 0.0:
        return np.zeros(1)
    keep = np.nonzero(np.abs(c) > TRIM_REL * scale)[0]
    return c[: keep[-1] + 1].copy()


def gen_binom(z, k):
    """Generalized binomial C(z, k) as a falling-factorial product.

    Division is interleaved so intermediates stay near the result's scale.
    """
    out = 1.0
    for i in range(k):
        out *= (z - i) / (i + 1)
    return out


def laguerre_coeffs(m, a):
    """Monomial coefficients (ascending) of the Laguerre polynomial L_m^(a).

    L_m^(a)(x) = sum_k (-1)^k C(m+a, m-k) x^k / k!.  Valid for any real a;
    the leading coefficient is (-1)^m/m! and never vanishes.
    """
    if m < 0:
        raise ValueError("degree must be nonnegative")
    c = np.zeros(m + 1)
    for k in range(m + 1):
        t = gen_binom(m + a, m - k)
        for r in range(2, k + 1):
            t /= r
        c[k] = -t if k % 2 else t
    return c


def jacobi_coeffs(m, a, b):
    """Monomial coefficients (ascending) of the Jacobi polynomial P_m^(a,b).

    Expanded from 2^-m sum_k C(m+a,k) C(m+b,m-k) (x-1)^(m-k) (x+1)^k.
    Raises DegreeCollapse when the leading coefficient 2^-m C(2m+a+b, m)
    vanishes, which happens on the excluded negative-integer parameter set.
    """
    if m < 0:
        raise ValueError("degree must be nonnegative")
    c = np.zeros(m + 1)
    for k in range(m + 1):
        term = gen_binom(m + a, k) * gen_binom(m + b, m - k)
        if term == 0.0:
            continue
        part = npoly.polymul(npoly.polypow([-1.0, 1.0], m - k),
                             npoly.polypow([1.0, 1.0], k))
        c[: len(part)] += term * part
    c /= 2.0 ** m
    scale = np.max(np.abs(c)) if np.max(np.abs(c)) > 0 else 1.0
    if abs(c[-1]) <= TRIM_REL * scale:
        raise DegreeCollapse(
            f"P_{m}^({a},{b}) has leading coefficient "
            f"{c[-1]:.3e}; degree drops below {m}")
    return c


def poly_eval(p, x, k=0):
    """k-th derivative of the polynomial with ascending coefficients p at x.

    Differentiation acts on the coefficient sequence; evaluation is Horner.
    Orders beyond the degree return 0.
    """
    c = np.atleast_1d(np.asarray(p, dtype=float))
    if k > 0:
        if k >= len(c):
            return np.zeros_like(np.asarray(x, dtype=float)) + 0.0
        c = npoly.polyder(c, k)
    return npoly.polyval(x, c)


def _as_float_or_complex(x):
    x = np.asarray(x)
    if np.issubdtype(x.dtype, np.complexfloating):
        return x.astype(complex)
    return x.astype(float)


def laguerre_eval(n, a, x):
    """L_n^(a)(x) by the three-term recurrence, vectorized, complex-safe."""
    x = _as_float_or_complex(x)
    if n == 0:
        return np.ones_like(x)
    pm1 = np.ones_like(x)
    p = 1.0 + a - x
    for k in range(1, n):
        pm1, p = p, ((2 * k + 1 + a - x) * p - (k + a) * pm1) / (k + 1)
    return p


def laguerre_eval_deriv(n, a, x, d):
    """d-th derivative of L_n^(a): equals (-1)^d L_{n-d}^(a+d)."""
    if n - d < 0:
        return np.zeros_like(_as_float_or_complex(x))
    val = laguerre_eval(n - d, a + d, x)
    return -val if d % 2 else val


def jacobi_eval(n, a, b, x):
    """P_n^(a,b)(x) by the three-term recurrence, vectorized, complex-safe."""
    x = _as_float_or_complex(x)
    if n == 0:
        return np.ones_like(x)
    pm1 = np.ones_like(x)
    p = 0.5 * (a - b + (a + b + 2) * x)
    for k in range(1, n):
        k1 = k + 1
        c1 = 2 * k1 * (k1 + a + b) * (2 * k1 + a + b - 2)
        c2 = (2 * k1 + a + b - 1) * (a * a - b * b)
        c3 = (2 * k1 + a + b - 2) * (2 * k1 + a + b - 1) * (2 * k1 + a + b)
        c4 = 2 * (k1 + a - 1) * (k1 + b - 1) * (2 * k1 + a + b)
        pm1, p = p, ((c2 + c3 * x) * p - c4 * pm1) / c1
    return p


def jacobi_eval_deriv(n, a, b, x, d):
    """d-th derivative of P_n^(a,b) via the parameter-raising identity."""
    if n - d < 0:
        return np.zeros_like(_as_float_or_complex(x))
    fac = 1.0
    for i in range(d):
        fac *= 0.5 * (n + a + b + 1 + i)
    return fac * jacobi_eval(n - d, a + d, b + d, x)


def laguerre_zeros(n, a):
    """Zeros of L_n^(a) (a > -1) as eigenvalues of the Jacobi matrix."""
    if n == 0:
        return np.empty(0)
    k = np.arange(n)
    diag = 2 * k + a + 1
    off = np.sqrt(k[1:] * (k[1:] + a))
    return np.linalg.eigvalsh(np.diag(diag) + np.diag(off, 1) + np.diag(off, -1))


def jacobi_zeros(n, a, b):
    """Zeros of P_n^(a,b) (a, b > -1) as eigenvalues of the Jacobi matrix."""
    if n == 0:
        return np.empty(0)
    diag = np.empty(n)
    diag[0] = (b - a) / (a + b + 2)
    k = np.arange(1, n, dtype=float)
    if n > 1:
        diag[1:] = (b * b - a * a) / ((2 * k + a + b) * (2 * k + a + b + 2))
    num = 4 * k * (k + a) * (k + b) * (k + a + b)
    den = (2 * k + a + b) ** 2 * (2 * k + a + b + 1) * (2 * k + a + b - 1)
    off = np.sqrt(num / den)
    return np.linalg.eigvalsh(np.diag(diag) + np.diag(off, 1) + np.diag(off, -1))


_BESSEL_TERM_CAP = 500


def bessel_j(a, z):
    """J_a(z) for z > 0 from the ascending series, log-scaled terms.

    Terms are accumulated until the next one falls below 1e-18 of the
    partial sum.  Raises SeriesDivergence if the cap is hit first.
    """
    if z <= 0:
        raise ValueError("series evaluation requires z > 0")
    lh = log(z / 2.0)
    total = 0.0
    for k in range(_BESSEL_TERM_CAP):
        lt = (2 * k + a) * lh - lgamma(k + 1) - lgamma(k + a + 1)
        term = np.exp(lt)
        if k % 2:
            term = -term
        total += term
        if abs(term) < 1e-18 * max(abs(total), 1e-300):
            return total
    raise SeriesDivergence(f"Bessel series did not settle within "
                           f"{_BESSEL_TERM_CAP} terms at a={a}, z={z}")


def bessel_first_zero(a):
    """Smallest positive zero of J_a, a > -1.

    A coarse scan over (0, 50) brackets the first sign change; bisection
    then resolves it to machine precision.
    """
    if a <= -1:
        raise ValueError("requires a > -1")
    zs = np.linspace(1e-3, 50.0, 2001)
    prev_z, prev_f = zs[0], bessel_j(a, zs[0])
    lo = hi = None
    for z in zs[1:]:
        f = bessel_j(a, z)
        if prev_f == 0.0:
            return prev_z
        if prev_f * f < 0:
            lo, flo, hi = prev_z, prev_f, z
            break
        prev_z, prev_f = z, f
    if lo is None:
        raise NoSignChange(f"no sign change of J_{a} found in (0, 50)")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = bessel_j(a, mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
        if hi - lo < 1e-15 * hi:
            break
    return 0.5 * (lo + hi)
