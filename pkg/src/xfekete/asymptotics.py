"""Transfinite-diameter sequence and the exact zero-sum identity.

For n nodes and the modified pair kernel

    k_n(x, y) = -log((c/n) |x-y| v(x)^{1/(2(n-1))} v(y)^{1/(2(n-1))})

the diameter functional is d = (2/(n(n-1))) sum_{i<j} k_n(u_i, u_j),
which collapses to -log(c/n) - log T / (n(n-1)) with the same log T the
energy module computes.  Evaluated at the regular zeros (the Fekete set
of the v weight) this gives the sequence d_n whose consecutive
differences decay like log^2(n)/n^2.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import numpy.polynomial.polynomial as npoly

from .energy import log_energy, v_weight
from .errors import CoincidentNodes, ValidationError, XFeketeError
from .exceptional import FamilySpec, build_S
from .roots import find_zeros

# log-domain pair sums stay within the 1e-8 budget up to here
N_CAP = 200


def transfinite_d(nodes, v=None, c=1.0):
    """Diameter functional of a node configuration under weight v.

    v=None means the unit weight.  The value is
    -log(c/n) - log T / (n(n-1)); larger log T (better configurations)
    gives smaller d, so the Fekete set minimizes d at fixed n.
    """
    nodes = np.asarray(nodes, dtype=float)
    n = nodes.size
    if n < 2:
        raise ValidationError("diameter needs at least two nodes")
    if v is None:
        srt = np.sort(nodes)
        if np.min(np.diff(srt)) < 1e-14 * max(1.0, np.max(np.abs(nodes))):
            raise CoincidentNodes("node separation below 1e-14 relative")
        i, j = np.triu_indices(n, k=1)
        logT = 2.0 * math.fsum(np.log(np.abs(nodes[i] - nodes[j])))
    else:
        logT = log_energy(nodes, v)
    return -math.log(c / n) - logT / (n * (n - 1))


@dataclass(frozen=True)
class DiameterSeries:
    """d_n over a range of n, with consecutive differences.

    deltas[i] = d(n_i) - d(n_i - 1), NaN when the predecessor was not
    computed.  rate_stat is the sup of |delta| * n^2 / log^2(n).
    skipped lists (n, reason) for members that failed to build or
    certify.  ps_ratio_max records max over a domain grid of
    (P(x)/S(x))^2 per n, the constant the kernel modification relies on.
    """

    m: int
    alpha: float
    c: float
    n_values: np.ndarray
    d: np.ndarray
    deltas: np.ndarray
    rate_stat: float
    skipped: tuple
    ps_ratio_max: np.ndarray


def _one_diameter(m, alpha, n, c):
    spec = FamilySpec("laguerre1", m, alpha, n)
    zs = find_zeros(spec)
    v = v_weight(spec, zs)
    dval = transfinite_d(zs.regular, v, c)
    # sup of (P/S)^2 over a stretch of the positive axis, recorded as
    # supporting data for the kernel normalization
    hi = 4.0 * n + 2.0 * alpha + 4.0 * m
    grid = np.geomspace(1e-3, hi, 200)
    P = npoly.polyfromroots(zs.exceptional).real
    num = npoly.polyval(grid, P.astype(float))
    den = npoly.polyval(grid, np.asarray(build_S(spec), dtype=float))
    ratio = float(np.max((num / den) ** 2))
    return dval, ratio


def d_sequence(m, alpha, n_range, c=1.0):
    """DiameterSeries at the regular zeros for each n in n_range.

    Every d value comes from a certified ZeroSet; per-n failures are
    skipped and logged in the series rather than aborting the sweep.
    One extra member below the range start is computed so the first
    delta is defined.  XF_THREADS > 1 parallelizes across n with a
    deterministic reduction.
    """
    wanted = sorted(set(int(n) for n in n_range))
    if not wanted:
        raise ValidationError("empty n range")
    if wanted[0] < 2:
        raise ValidationError("diameter sequence needs n >= 2")
    if wanted[-1] > N_CAP:
        raise ValidationError(f"n above {N_CAP} exceeds the double "
                              f"precision budget")
    compute = sorted(set(wanted) | ({wanted[0] - 1} if wanted[0] > 2
                                    else set()))
    results, skipped = {}, []

    def job(n):
        try:
            return n, _one_diameter(m, alpha, n, c), None
        except XFeketeError as exc:
            return n, None, f"{type(exc).__name__}: {exc}"

    workers = int(os.environ.get("XF_THREADS", "1"))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outs = list(pool.map(job, compute))
    else:
        outs = [job(n) for n in compute]
    for n, payload, err in outs:
        if err is None:
            results[n] = payload
        else:
            skipped.append((n, err))

    n_values = np.array([n for n in wanted if n in results], dtype=int)
    d = np.array([results[n][0] for n in n_values])
    ratios = np.array([results[n][1] for n in n_values])
    deltas = np.array([results[n][0] - results[n - 1][0]
                       if (n - 1) in results else np.nan
                       for n in n_values])
    with np.errstate(invalid="ignore"):
        stats = np.abs(deltas) * n_values ** 2 / np.log(n_values) ** 2
    rate = float(np.nanmax(stats)) if np.any(np.isfinite(stats)) else np.nan
    return DiameterSeries(m=m, alpha=alpha, c=c, n_values=n_values, d=d,
                          deltas=deltas, rate_stat=rate,
                          skipped=tuple(skipped), ps_ratio_max=ratios)


@dataclass(frozen=True)
class ZeroSumReport:
    """Vieta check: the zeros of the degree-(m+n) member sum to
    (n - m)(n + m + alpha), n being the regular count."""

    spec: FamilySpec
    lhs: float
    rhs: float
    abs_err: float
    regular_sum: float
    exceptional_sum: float
    flags: tuple


def zero_sum_check(spec):
    """Evaluate the zero-sum identity for a laguerre1 member.

    lhs sums every zero (regular plus real parts of the exceptional
    ones, which pair off conjugate).  A negative rhs marks an
    out-of-regime instance; it is flagged, not asserted against.
    """
    if spec.family != "laguerre1":
        raise ValidationError("zero-sum identity applies to laguerre1")
    zs = find_zeros(spec)
    reg = float(np.sum(zs.regular))
    exc = float(np.sum(zs.exceptional.real))
    lhs = reg + exc
    rhs = float((spec.n - spec.m) * (spec.n + spec.m + spec.alpha))
    flags = []
    if rhs < 0:
        flags.append("rhs negative: identity holds only for n >= m")
    if spec.regime_warnings():
        flags.extend(spec.regime_warnings())
    return ZeroSumReport(spec=spec, lhs=lhs, rhs=rhs,
                         abs_err=abs(lhs - rhs), regular_sum=reg,
                         exceptional_sum=exc, flags=tuple(flags))
