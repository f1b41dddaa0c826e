"""Complex log-gamma, Pochhammer symbols, and generalized hypergeometric sums.

This is the numerical kernel of the package.  Everything downstream reduces
to three primitives:

* ``log_gamma`` -- principal branch of log Gamma(z) on the cut plane,
* ``pochhammer`` -- shifted factorials (a)_n,
* ``hyp_sum`` -- the sum of a generalized hypergeometric series
  pFq(tops; bottoms; z) with an a-posteriori truncation bound.

Unit-argument series deserve a comment.  The balanced 4F3(1) series that
dominate this package have terms decaying like n^(-2), so a plain partial
sum converges far too slowly for the target tolerances (the tail after N
terms is O(1/N)).  Once the term index is safely past every parameter's
modulus, the terms sit in their asymptotic power-law regime

    t_n ~ sum_j c_j n^(-s-j),      s = 1 + sum(bottoms) - sum(tops),

so ``hyp_sum`` fits the c_j on a window of sampled indices and sums the
tail exactly in terms of Hurwitz zeta functions.  This reaches close to
machine precision with a few hundred term evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import loggamma as _loggamma
from scipy.special import rgamma as _rgamma

# Distance below which a parameter counts as sitting on a gamma pole.
POLE_TOL = 1e-12

DEFAULT_REL_TOL = 1e-14
DEFAULT_MAX_TERMS = 20000


class PoleError(ValueError):
    """A gamma-function argument landed on a non-positive integer."""


class DivergenceError(ValueError):
    """The requested series does not converge."""


class ConvergenceError(RuntimeError):
    """The term budget ran out before the stopping rule fired."""


def _near_nonpositive_int(z, tol=POLE_TOL):
    """Elementwise distance check against {0, -1, -2, ...}."""
    z = np.asarray(z, dtype=complex)
    k = np.round(z.real)
    return (np.abs(z - k) <= tol) & (k <= 0.5)


def log_gamma(z):
    """Principal-branch log Gamma, raising on (near) non-positive integers.

    Accepts scalars or arrays; the imaginary part is continuous along any
    path avoiding the negative real axis, so exp(log_gamma(z)) == Gamma(z).
    """
    z = np.asarray(z, dtype=complex)
    if np.any(_near_nonpositive_int(z)):
        raise PoleError(f"log_gamma pole at non-positive integer, z={z}")
    out = _loggamma(z)
    return complex(out) if out.ndim == 0 else out


def rgamma(z):
    """Entire reciprocal gamma 1/Gamma(z); exactly zero on the poles."""
    z = np.asarray(z, dtype=complex)
    out = np.asarray(_rgamma(z))
    pole = _near_nonpositive_int(z)
    if np.any(pole):
        out = np.where(pole, 0.0, out)
    return complex(out) if out.ndim == 0 else out


def gammaprod(tops, bottoms=()):
    """prod Gamma(tops) / prod Gamma(bottoms), evaluated in log space.

    A pole in a bottom argument sends the whole product to zero; a pole in
    a top argument raises PoleError (the caller must cancel it first).
    """
    tops = [complex(t) for t in tops]
    bottoms = [complex(b) for b in bottoms]
    if any(_near_nonpositive_int(t) for t in tops):
        raise PoleError(f"gamma pole in numerator: {tops}")
    if any(_near_nonpositive_int(b) for b in bottoms):
        return 0.0 + 0.0j
    s = sum(_loggamma(t) for t in tops) - sum(_loggamma(b) for b in bottoms)
    return complex(np.exp(s))


def log_gamma_pm(a, b):
    """log of the shorthand Gamma(a +- b) = Gamma(a+b) Gamma(a-b)."""
    return log_gamma(a + b) + log_gamma(a - b)


def pochhammer(a, n):
    """Pochhammer symbol (a)_n = Gamma(a+n)/Gamma(a) for integer n.

    A finite product for moderate |n| (exact up to rounding); negative n
    uses (a)_{-m} = 1/(a-m)_m; large n falls back to the log-gamma ratio.
    """
    n = int(n)
    a = complex(a)
    if n == 0:
        return 1.0 + 0.0j
    if n < 0:
        denom = pochhammer(a + n, -n)
        if denom == 0:
            raise PoleError(f"pochhammer({a}, {n}) undefined: zero factor")
        return 1.0 / denom
    if n <= 128:
        out = 1.0 + 0.0j
        for k in range(n):
            out *= a + k
        return out
    return complex(np.exp(_loggamma(a + n) - _loggamma(a)))


@dataclass
class SeriesSpec:
    """Parameters of a generalized hypergeometric series pFq."""

    tops: list = field(default_factory=list)
    bottoms: list = field(default_factory=list)
    argument: complex = 1.0

    def termination_index(self):
        """Smallest m >= 0 with some top parameter equal to -m, else None."""
        best = None
        for t in self.tops:
            t = complex(t)
            k = int(round(t.real))
            if k <= 0 and abs(t - k) <= POLE_TOL:
                best = -k if best is None else min(best, -k)
        return best

    def validate(self):
        term = self.termination_index()
        for b in self.bottoms:
            b = complex(b)
            if _near_nonpositive_int(b):
                q = -int(round(b.real))
                if term is None or term > q:
                    raise PoleError(
                        f"bottom parameter {b} hits a pole before termination"
                    )


@dataclass
class SeriesValue:
    """Value of a hypergeometric sum plus bookkeeping for its accuracy."""

    value: complex
    terms_used: int
    truncation_bound: float


# ----------------------------------------------------------------------
# Hurwitz zeta (complex s, real shift) via Euler-Maclaurin.

_BERNOULLI = np.array(
    [1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510]
)


def hurwitz_zeta(s, a):
    """Hurwitz zeta(s, a) for complex s (Re s > 1) and real a > 0.

    Euler-Maclaurin, with the head summed directly until the shift is
    large enough that eight Bernoulli terms reach double precision.
    """
    s = np.asarray(s, dtype=complex)
    a = float(a)
    head = np.zeros(s.shape, dtype=complex) if s.ndim else 0.0
    k = 0
    while a + k < 40.0:
        head = head + (a + k) ** (-s)
        k += 1
    q = a + k
    out = q ** (1.0 - s) / (s - 1.0) + 0.5 * q ** (-s)
    poch = s.copy() if s.ndim else s
    qpow = q ** (-s - 1.0)
    fact = 1.0
    for j, b2j in enumerate(_BERNOULLI, start=1):
        fact *= (2 * j - 1) * (2 * j)
        out = out + (b2j / fact) * poch * qpow
        poch = poch * (s + 2 * j - 1) * (s + 2 * j)
        qpow = qpow / (q * q)
    return out + head


# ----------------------------------------------------------------------
# Unit-argument summation with zeta-accelerated tails.

_FIT_ORDER = 14
_FIT_VMIN = 0.125
# Chebyshev nodes in the variable v = n_fit/n on [1/8, 1]; the sampled
# term indices therefore span [n_fit, 8 n_fit].
_FIT_NODES_V = 0.5 * (1 + _FIT_VMIN) - 0.5 * (1 - _FIT_VMIN) * np.cos(
    np.pi * (2 * np.arange(_FIT_ORDER) + 1) / (2 * _FIT_ORDER)
)


def unit_sum_batch(tops, bottoms, rel_tol=DEFAULT_REL_TOL, max_terms=DEFAULT_MAX_TERMS):
    """Sum pFq(tops; bottoms; 1) for a batch of parameter columns.

    ``tops`` has shape (T, m) and ``bottoms`` (B, m) with T = B + 1 (unit
    argument).  Returns (values, terms_used, bounds), each of shape (m,).
    Non-terminating columns must satisfy Re(sum(bottoms) - sum(tops)) > 0.
    """
    tops = np.atleast_2d(np.asarray(tops, dtype=complex))
    bottoms = np.atleast_2d(np.asarray(bottoms, dtype=complex))
    m = tops.shape[1]

    s_exp = 1.0 + bottoms.sum(axis=0) - tops.sum(axis=0)

    # Columns where a top parameter is a non-positive integer terminate.
    term_at = np.full(m, np.inf)
    for t in tops:
        k = np.round(t.real)
        is_term = (np.abs(t - k) <= POLE_TOL) & (k <= 0.0)
        term_at = np.where(is_term, np.minimum(term_at, -k), term_at)
    terminating = np.isfinite(term_at)

    bad = ~terminating & (s_exp.real <= 1.0 + 1e-12)
    if np.any(bad):
        raise DivergenceError(
            "non-terminating unit-argument series with "
            f"Re(sum(bottoms)-sum(tops)) <= 0 in columns {np.where(bad)[0].tolist()}"
        )

    scale = max(
        1.0,
        float(np.max(np.abs(tops))),
        float(np.max(np.abs(bottoms))),
        float(np.max(term_at[terminating])) if np.any(terminating) else 0.0,
    )
    n_fit = int(max(48, np.ceil(4.0 * scale)))
    sample_n = np.unique(np.round(n_fit / _FIT_NODES_V).astype(int))
    n_last = int(sample_n.max())
    if n_last + 1 > max_terms:
        raise ConvergenceError(
            f"unit-argument series needs ~{n_last} terms, budget is {max_terms}"
        )

    # Blockwise summation with an all-columns early exit: once every term
    # in the batch is dead (below 1e-18 of its running sum, four rows in a
    # row), the power-law tail is below rounding and the fit is skipped.
    block = 128
    chunks = []
    t_cur = np.ones((1, m), dtype=complex)
    s_run = np.ones(m, dtype=complex)
    n_done = 0
    dead_run = 0
    exited = False
    while n_done < n_last:
        hi = min(n_done + block, n_last)
        n = np.arange(n_done, hi, dtype=float)[:, None]
        num = np.ones((hi - n_done, m), dtype=complex)
        for t in tops:
            num *= t + n
        den = np.ones((hi - n_done, m), dtype=complex)
        for b in bottoms:
            den *= b + n
        den *= 1.0 + n
        tb = np.cumprod(num / den, axis=0) * t_cur
        sb = np.cumsum(tb, axis=0) + s_run
        tiny_rows = np.all(
            np.abs(tb) <= 1e-18 * (np.abs(sb) + 1e-300), axis=1
        )
        stop = -1
        for i, tr in enumerate(tiny_rows):
            dead_run = dead_run + 1 if tr else 0
            if dead_run >= 4:
                stop = i
                break
        if stop >= 0:
            s_run = sb[stop]
            n_done = n_done + stop + 1
            exited = True
            break
        chunks.append(tb)
        s_run = sb[-1]
        t_cur = tb[-1:].copy()
        n_done = hi

    if exited:
        values = s_run
        used = np.full(m, n_done + 1)
        bounds = 1e-17 * np.abs(values) + 1e-300
        return values, used, bounds

    terms = np.concatenate([np.ones((1, m), dtype=complex)] + chunks, axis=0)
    partial = np.cumsum(terms, axis=0)
    tail_start = n_last + 1
    ks = np.arange(sample_n.size)
    v_actual = n_fit / sample_n.astype(float)
    vand = np.vander(v_actual, increasing=True)
    u = terms[sample_n, :] * np.exp(np.log(sample_n.astype(float))[:, None] * s_exp)
    # One shared Vandermonde solve for the whole batch.
    gamma_fit = np.linalg.solve(vand, u)
    zetas = hurwitz_zeta(s_exp[None, :] + ks[:, None], tail_start)
    tail_terms = gamma_fit * np.power(float(n_fit), ks)[:, None] * zetas
    tail = tail_terms.sum(axis=0)
    tail_lo = tail_terms[:-2].sum(axis=0)

    values = partial[tail_start - 1] + tail
    used = np.full(m, tail_start)
    bounds = np.abs(tail - tail_lo) + 4e-16 * np.abs(values)

    if np.any(terminating):
        cols = np.where(terminating)[0]
        kidx = term_at[cols].astype(int)
        values[cols] = partial[kidx, cols]
        used[cols] = kidx + 1
        bounds[cols] = 0.0
    return values, used, bounds


def _forward_sum(tops, bottoms, z, rel_tol, max_terms):
    """Plain forward summation for |z| < 1 (geometric-ish decay)."""
    term = 1.0 + 0.0j
    total = term
    small = 0
    q = abs(z)
    for n in range(max_terms):
        num = 1.0 + 0.0j
        for t in tops:
            num *= t + n
        den = 1.0 + 0.0j
        for b in bottoms:
            den *= b + n
        den *= n + 1
        term = term * z * num / den
        if term == 0:
            return SeriesValue(total, n + 2, 0.0)
        total += term
        if abs(term) <= rel_tol * abs(total):
            small += 1
            if small >= 3:
                bound = abs(term) * q / max(1e-300, 1.0 - q)
                return SeriesValue(total, n + 2, bound)
        else:
            small = 0
    raise ConvergenceError(f"series did not converge within {max_terms} terms")


def hyp_sum(spec, rel_tol=DEFAULT_REL_TOL, max_terms=DEFAULT_MAX_TERMS):
    """Evaluate the hypergeometric series described by ``spec``.

    Terminating series are summed exactly (any argument).  Non-terminating
    series are supported for |z| < 1 (forward summation with the
    three-consecutive-small-terms stopping rule) and z = 1 (accelerated
    tail; requires Re(sum(bottoms) - sum(tops)) > 0).
    """
    spec.validate()
    z = complex(spec.argument)
    term = spec.termination_index()
    if term is not None:
        total = 1.0 + 0.0j
        t = 1.0 + 0.0j
        for n in range(term):
            num = 1.0 + 0.0j
            for a in spec.tops:
                num *= a + n
            den = 1.0 + 0.0j
            for b in spec.bottoms:
                den *= b + n
            den *= n + 1
            t = t * z * num / den
            total += t
        return SeriesValue(total, term + 1, 0.0)
    if abs(z) < POLE_TOL:
        return SeriesValue(1.0 + 0.0j, 1, 0.0)
    if abs(z) < 1.0 - 1e-12:
        return _forward_sum(spec.tops, spec.bottoms, z, rel_tol, max_terms)
    if abs(z - 1.0) <= 1e-12:
        tops = np.asarray(spec.tops, dtype=complex).reshape(-1, 1)
        bottoms = np.asarray(spec.bottoms, dtype=complex).reshape(-1, 1)
        values, used, bounds = unit_sum_batch(tops, bottoms, rel_tol, max_terms)
        return SeriesValue(complex(values[0]), int(used[0]), float(bounds[0]))
    raise DivergenceError(
        f"non-terminating series at z={z} is outside the supported domain "
        "(|z| < 1 or z = 1)"
    )


def w_7f6(a, b, c, d, e, f, rel_tol=DEFAULT_REL_TOL, max_terms=DEFAULT_MAX_TERMS):
    """Bailey's very-well-poised W(a; b,c,d,e,f) at unit argument.

    Requires the series to terminate or Re(2a+2-b-c-d-e-f) > 0.
    """
    a, b, c, d, e, f = (complex(v) for v in (a, b, c, d, e, f))
    spec = SeriesSpec(
        tops=[a, 1 + 0.5 * a, b, c, d, e, f],
        bottoms=[0.5 * a, 1 + a - b, 1 + a - c, 1 + a - d, 1 + a - e, 1 + a - f],
        argument=1.0,
    )
    if spec.termination_index() is None:
        margin = (2 * a + 2 - b - c - d - e - f).real
        if margin <= 1e-12:
            raise DivergenceError(
                f"W-series diverges: Re(2a+2-b-c-d-e-f) = {margin:.3g} <= 0"
            )
    return hyp_sum(spec, rel_tol, max_terms)
