"""The Wilson function phi_lambda(x), its expansions, and the operator L.

The canonical evaluation is the sum of two balanced 4F3(1) series (the
"always convergent" representation).  Three practical facts shape the
implementation:

* The two 4F3 terms cancel catastrophically for large real x (their size
  grows like e^{2|x|} while the sum stays at e^{pi |x|}), so beyond a
  moderate |x| the function is evaluated through its c-expansion

      phi_lambda(x) = c(lambda) Phi_lambda(x) + c(-lambda) Phi_{-lambda}(x),

  whose series is stable there.
* At the type-II mass points x = i(t-k) the same cancellation grows like
  4^k; the d-expansion in Theta_{+-lambda}(k) is the stable route.
* The two-4F3 representation singles out the pair (a, 1-d) and degenerates
  when a+d is an integer, although phi itself is symmetric in the multiset
  {a, b, c, 1-d} and analytic.  The evaluator therefore picks, per
  parameter set, the role assignment of that multiset that is farthest
  from degeneracy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hyperg import (
    DivergenceError,
    PoleError,
    gammaprod,
    log_gamma,
    pochhammer,
    rgamma,
    unit_sum_batch,
    w_7f6,
)
from .params import ParameterSet, TypeIIContext
from .wilsonpoly import SINGULAR_TOL, SingularPointError

# Below this |lambda| the 1/lambda blow-up of the c-function costs more
# accuracy than the two-4F3 route loses at small |x|.
LAMBDA_SWITCH = 0.02


class SpectralOriginError(ValueError):
    """The c-function is singular at lambda = 0."""


def _sigma(p: ParameterSet) -> complex:
    """(a + b + c + (1-d)) / 2: the symmetric half-sum in the c-expansion."""
    a, b, c, d = p.as_tuple()
    return 0.5 * (a + b + c + 1 - d)


def _dual_quad(p: ParameterSet):
    """The dual multiset (a~, b~, c~, 1-d~)."""
    return p.dual().type_i_quad()


def _conj_stable(p: ParameterSet) -> bool:
    """True if the multiset {a,b,c,1-d} is closed under conjugation, which
    makes phi real on real (x, lambda)."""
    quad = list(p.type_i_quad())
    for e in quad:
        if not any(abs(np.conj(e) - f) <= 1e-12 * (1 + abs(e)) for f in quad):
            return False
    return True


# ----------------------------------------------------------------------
# Pairing choice for the two-4F3 representation.

def _pairing_score(q1, q2, q3, q4):
    """Distance from degeneracy of the role assignment (a,b,c,1-d) = q."""
    def dist_int(z):
        return abs(z - round(z.real))

    def dist_pole(z):
        # distance to the non-positive integers
        k = min(0.0, round(z.real))
        return abs(z - k) if z.real < 0.5 else abs(z - 0.0) + 1.0

    score = dist_int(q1 - q4)
    bottoms = [q1 + q2, q1 + q3, 1 + q1 - q4, q2 + q4, q3 + q4, 1 - q1 + q4]
    return min([score] + [dist_pole(b) for b in bottoms])


def _best_pairing(p: ParameterSet) -> ParameterSet:
    """Reorder {a,b,c,1-d} to keep the two-4F3 representation non-degenerate."""
    quad = list(p.type_i_quad())
    best, best_score = None, -1.0
    for i in range(4):
        for j in range(4):
            if i == j:
                continue
            rest = [quad[k] for k in range(4) if k not in (i, j)]
            sc = _pairing_score(quad[i], rest[0], rest[1], quad[j])
            if sc > best_score:
                best_score = sc
                best = ParameterSet(quad[i], rest[0], rest[1], 1 - quad[j])
    if best_score < 1e-6:
        raise PoleError(
            "parameters are degenerate for the Wilson function (every role "
            "assignment has a+d within 1e-6 of an integer); perturb them"
        )
    return best


# ----------------------------------------------------------------------
# Route 1: the two balanced 4F3 series (canonical, moderate |x|).

def _phi_expansion1_batch(xs, lam, p: ParameterSet):
    """phi_lambda at an array of points x via the two-4F3 representation.

    Denominator gammas go through ``rgamma`` so that a pole kills the
    corresponding term exactly (e.g. at mass points, or at the spectral
    points lambda = i(a~+n) where phi reduces to a Wilson polynomial).
    """
    q = _best_pairing(p)
    a, b, c, d = q.as_tuple()
    qd = q.dual()
    at, dt = qd.a, qd.d
    lam = complex(lam)
    xs = np.asarray(xs, dtype=complex).ravel()
    m = xs.size
    ix = 1j * xs
    il = 1j * lam
    ones = np.ones(m, dtype=complex)

    out = np.zeros(m, dtype=complex)

    c1 = log_gamma(1 - a - d)
    coeff1 = np.exp(c1) * (
        rgamma(a + b) * rgamma(a + c) * rgamma(1 - dt + il) * rgamma(1 - dt - il)
    )
    if coeff1 != 0:
        pref1 = coeff1 * rgamma(1 - d + ix) * rgamma(1 - d - ix)
        live = pref1 != 0
        if np.any(live):
            tops1 = np.stack(
                [a + ix[live], a - ix[live], (at + il) * ones[live], (at - il) * ones[live]]
            )
            bots1 = np.stack(
                [(a + b) * ones[live], (a + c) * ones[live], (a + d) * ones[live]]
            )
            f1, _, _ = unit_sum_batch(tops1, bots1)
            out[live] += pref1[live] * f1

    c2 = log_gamma(a + d - 1)
    coeff2 = np.exp(c2) * (
        rgamma(1 + b - d) * rgamma(1 + c - d) * rgamma(at + il) * rgamma(at - il)
    )
    if coeff2 != 0:
        pref2 = coeff2 * rgamma(a + ix) * rgamma(a - ix)
        live = pref2 != 0
        if np.any(live):
            tops2 = np.stack(
                [
                    1 - d + ix[live],
                    1 - d - ix[live],
                    (1 - dt + il) * ones[live],
                    (1 - dt - il) * ones[live],
                ]
            )
            bots2 = np.stack(
                [
                    (1 + b - d) * ones[live],
                    (1 + c - d) * ones[live],
                    (2 - a - d) * ones[live],
                ]
            )
            f2, _, _ = unit_sum_batch(tops2, bots2)
            out[live] += pref2[live] * f2
    return out


def _loggamma_arr(z):
    from scipy.special import loggamma

    return loggamma(np.asarray(z, dtype=complex))


# ----------------------------------------------------------------------
# Route 2: the c-expansion (stable for large real x).

def c_tilde(lam, p: ParameterSet) -> complex:
    """The c-function: Gamma(-2 i lam) / prod Gamma(e~ - i lam), e~ over the
    dual multiset (a~, b~, c~, 1-d~).  Zero at the dual mass points."""
    lam = complex(lam)
    if abs(lam) < 1e-13:
        raise SpectralOriginError("c-function is singular at lambda = 0")
    il = 1j * lam
    return gammaprod([-2 * il], [e - il for e in _dual_quad(p)])


def big_phi_batch(xs, lam, p: ParameterSet):
    """Phi_lambda(x) on an array of x: the asymptotically pure component."""
    lam = complex(lam)
    xs = np.asarray(xs, dtype=complex).ravel()
    m = xs.size
    il = 1j * lam
    sg = _sigma(p)
    ones = np.ones(m, dtype=complex)
    tops = np.stack([(e + il) * ones for e in _dual_quad(p)])
    bots = np.stack([sg + il + 1j * xs, sg + il - 1j * xs, (1 + 2 * il) * ones])
    f, _, _ = unit_sum_batch(tops, bots)
    pref = np.exp(-_loggamma_arr(sg + il + 1j * xs) - _loggamma_arr(sg + il - 1j * xs))
    return pref * f


def big_phi(x, lam, p: ParameterSet) -> complex:
    return complex(big_phi_batch([x], lam, p)[0])


@dataclass
class CExpansion:
    """phi = c_plus * phi_plus + c_minus * phi_minus."""

    c_plus: complex
    c_minus: complex
    phi_plus: complex
    phi_minus: complex

    def reconstruct(self) -> complex:
        return self.c_plus * self.phi_plus + self.c_minus * self.phi_minus


def c_expansion(x, lam, p: ParameterSet) -> CExpansion:
    """Split phi_lambda(x) into its asymptotically pure components."""
    lam = complex(lam)
    cp = c_tilde(lam, p)
    cm = c_tilde(-lam, p)
    pp = big_phi(x, lam, p)
    pm = big_phi(x, -lam, p) if cm != 0 else 0.0 + 0.0j
    return CExpansion(c_plus=cp, c_minus=cm, phi_plus=pp, phi_minus=pm)


def _phi_cexp_batch(xs, lam, p: ParameterSet):
    lam = complex(lam)
    xs = np.asarray(xs, dtype=complex).ravel()
    cp = c_tilde(lam, p)
    cm = c_tilde(-lam, p)
    if (
        abs(lam.imag) < 1e-13
        and np.all(np.abs(xs.imag) < 1e-13)
        and _conj_stable(p)
    ):
        # phi = 2 Re(c(lam) Phi_lam(x)) on the real-real slice
        return 2.0 * np.real(cp * big_phi_batch(xs, lam, p)) + 0.0j
    out = cp * big_phi_batch(xs, lam, p)
    if cm != 0:
        out = out + cm * big_phi_batch(xs, -lam, p)
    return out


def _phi_cexp_dual_batch(xs, lam, p: ParameterSet):
    """The c-expansion applied on the dual side (x as spectral variable):

        phi_lambda(x; p) = phi_x(lambda; p~)
                         = c~_dual(x) Phi~_x(lambda) + c~_dual(-x) Phi~_{-x}(lambda).

    Stable where the direct expansion cancels, i.e. for |lambda| > |x|;
    batches over x since the dual tops/bottoms vary per point.
    """
    lam = complex(lam)
    xs = np.asarray(xs, dtype=complex).ravel()
    sg = _sigma(p)   # sigma is self-dual
    quad = p.type_i_quad()
    il = 1j * lam

    def c_dual(ix_arr):
        den = np.zeros(ix_arr.shape, dtype=complex)
        for e in quad:
            den += _loggamma_arr(e - ix_arr)
        return np.exp(_loggamma_arr(-2 * ix_arr) - den)

    def phi_dual(ix_arr):
        tops = np.stack([e + ix_arr for e in quad])
        bots = np.stack([sg + ix_arr + il, sg + ix_arr - il, 1 + 2 * ix_arr])
        f, _, _ = unit_sum_batch(tops, bots)
        pref = np.exp(-_loggamma_arr(sg + ix_arr + il) - _loggamma_arr(sg + ix_arr - il))
        return pref * f

    ix = 1j * xs
    if (
        abs(lam.imag) < 1e-13
        and np.all(np.abs(xs.imag) < 1e-13)
        and _conj_stable(p)
    ):
        return 2.0 * np.real(c_dual(ix) * phi_dual(ix)) + 0.0j
    out = c_dual(ix) * phi_dual(ix)
    cm = c_dual(-ix)
    live = cm != 0
    if np.any(live):
        out[live] = out[live] + cm[live] * phi_dual(-ix[live])
    return out


# ----------------------------------------------------------------------
# Route 3: the d-expansion at type-II mass points x = i(t-k).

def d_tilde(lam, ctx: TypeIIContext) -> complex:
    """d~(lambda) = c~(lambda) sin pi(t~ - i lambda)."""
    lam = complex(lam)
    return c_tilde(lam, ctx.params) * complex(np.sin(np.pi * (ctx.t_dual - 1j * lam)))


def big_theta_batch(ks, lam, ctx: TypeIIContext):
    """Theta_lambda(k) for an integer array k with t - k < 0."""
    lam = complex(lam)
    ks = np.asarray(ks, dtype=int).ravel()
    if np.any(ctx.t - ks >= 0):
        raise ValueError("Theta is defined on the mass points i(t-k), t-k < 0")
    il = 1j * lam
    sg = _sigma(ctx.params)
    tau = ctx.t - ks.astype(float)
    m = ks.size
    ones = np.ones(m, dtype=complex)
    tops = np.stack([(e + il) * ones for e in _dual_quad(ctx.params)])
    bots = np.stack([sg + il - tau, sg + il + tau, (1 + 2 * il) * ones])
    f, _, _ = unit_sum_batch(tops, bots)
    pref = (
        np.power(-1.0, ks % 2)
        / np.pi
        * np.exp(_loggamma_arr(1 - sg - il - tau) - _loggamma_arr(sg + il - tau))
    )
    return pref * f


def big_theta(k, lam, ctx: TypeIIContext) -> complex:
    return complex(big_theta_batch([k], lam, ctx)[0])


@dataclass
class DExpansion:
    """phi(i(t-k)) = d_plus * theta_plus + d_minus * theta_minus."""

    d_plus: complex
    d_minus: complex
    theta_plus: complex
    theta_minus: complex
    k: int

    def reconstruct(self) -> complex:
        return self.d_plus * self.theta_plus + self.d_minus * self.theta_minus


def d_expansion(k: int, lam, ctx: TypeIIContext) -> DExpansion:
    """Expansion of phi_lambda at the mass point i(t-k)."""
    k = int(k)
    if ctx.t - k >= 0:
        raise ValueError(f"i(t-k) with t-k = {ctx.t - k} >= 0 is not a mass point")
    lam = complex(lam)
    dp = d_tilde(lam, ctx)
    dm = d_tilde(-lam, ctx)
    tp = big_theta(k, lam, ctx)
    tm = big_theta(k, -lam, ctx) if dm != 0 else 0.0 + 0.0j
    return DExpansion(d_plus=dp, d_minus=dm, theta_plus=tp, theta_minus=tm, k=k)


def _phi_minus_resolved_batch(ks, lam, ctx: TypeIIContext):
    """The limit of d~(-lam') Theta_{-lam'}(k) as lam' -> lam in D~+.

    At lam = i(t~-j) the factor d~(-lam) vanishes while the Theta series
    bottom sigma - i lam + t - k = 1-j-k sits on a gamma pole; written with
    reciprocal gammas the first j+k terms of Phi_{-lam}(i(t-k)) vanish and
    the remainder reindexes to another balanced unit series:

        c~(-lam) Phi_res,  Phi_res = P * 4F3-type tail from n = j+k.
    """
    from scipy.special import loggamma

    lam = complex(lam)
    ks = np.asarray(ks, dtype=int).ravel()
    p = ctx.params
    sg = _sigma(p)
    quad_dual = _dual_quad(p)
    mu = -lam
    imu = 1j * mu
    j_idx = int(round((1j * lam - ctx.t_dual).real))   # lam = i(t~ - j)
    cm = c_tilde(mu, p)
    out = np.empty(ks.shape, dtype=complex)
    ms = ks + j_idx
    ix = 1j * (1j * (ctx.t - ks))   # = k - t, real
    ix = ks - ctx.t
    tops = np.stack([(e + imu + m) * np.ones(1)[0] for e in quad_dual for m in [0]])  # placeholder
    # assemble per-point shifted series (batched)
    tops = np.stack([e + imu + ms for e in quad_dual])
    b1 = 1 + 2 * imu + ms
    b2 = 1.0 + ms
    b3 = sg + imu + ix + ms
    f, _, _ = unit_sum_batch(tops.astype(complex), np.stack([b1, b2, b3]).astype(complex))
    # prefactor P = prod (e+imu)_m / ((1+2imu)_m m! Gamma(sigma+imu+ix+m))
    logP = np.zeros(ks.shape, dtype=complex)
    for e in quad_dual:
        logP += loggamma(e + imu + ms.astype(complex)) - loggamma(complex(e + imu))
    logP -= loggamma(1 + 2 * imu + ms.astype(complex)) - loggamma(complex(1 + 2 * imu))
    logP -= loggamma(1.0 + ms.astype(complex))
    logP -= loggamma(np.asarray(b3, dtype=complex))
    return cm * np.exp(logP) * f


def phi_type2_masses(ks, lam, ctx: TypeIIContext):
    """phi_lambda(i(t-k)) over an array of mass indices, via the d-expansion.

    At the dual discrete points lam = i(t~-j) the second expansion term is
    a 0*inf limit (d~(-lam) = 0 against a pole of Theta_{-lam}); it is
    replaced by its resolved value there.
    """
    lam = complex(lam)
    ks = np.asarray(ks, dtype=int).ravel()
    dp = d_tilde(lam, ctx)
    out = dp * big_theta_batch(ks, lam, ctx)
    # degenerate second term exactly when sin pi(t~ + i lam) = 0
    phase = ctx.t_dual + 1j * lam
    if abs(phase - round(phase.real)) < 1e-9 and abs(phase.imag) < 1e-9:
        out = out + _phi_minus_resolved_batch(ks, lam, ctx)
    else:
        dm = d_tilde(-lam, ctx)
        if dm != 0:
            out = out + dm * big_theta_batch(ks, -lam, ctx)
    return out


# ----------------------------------------------------------------------
# Public evaluators.

def _cexp_pointwise_ok(xs, lam, p: ParameterSet):
    """Points where the c-expansion bottoms stay clear of gamma poles."""
    from .hyperg import _near_nonpositive_int

    sg = _sigma(p)
    il = 1j * complex(lam)
    ok = np.ones(xs.shape, dtype=bool)
    for sgn in (1.0, -1.0):
        ok &= ~_near_nonpositive_int(sg + sgn * il + 1j * xs, 1e-8)
        ok &= ~_near_nonpositive_int(sg + sgn * il - 1j * xs, 1e-8)
    return ok


def _cexp_lam_ok(lam) -> bool:
    from .hyperg import _near_nonpositive_int

    lam = complex(lam)
    if abs(lam) < LAMBDA_SWITCH:
        return False
    # Gamma(-+2 i lam) and the bottom 1 +- 2 i lam must stay off the poles
    for z in (2j * lam, -2j * lam, 1 + 2j * lam, 1 - 2j * lam):
        if _near_nonpositive_int(z, 1e-8):
            return False
    return True


def _dual_pointwise_ok(xs, lam, p: ParameterSet):
    """Points usable as the spectral variable of the dual c-expansion."""
    from .hyperg import _near_nonpositive_int

    sg = _sigma(p)
    il = 1j * complex(lam)
    ix = 1j * xs
    ok = np.abs(xs) >= LAMBDA_SWITCH
    for z in (2 * ix, -2 * ix, 1 + 2 * ix, 1 - 2 * ix):
        ok &= ~_near_nonpositive_int(z, 1e-8)
    for sgn in (1.0, -1.0):
        ok &= ~_near_nonpositive_int(sg + sgn * ix + il, 1e-8)
        ok &= ~_near_nonpositive_int(sg + sgn * ix - il, 1e-8)
    return ok


def _buckets(order_by, start):
    """Index buckets with geometrically growing magnitude bands, so a batch
    never pays the term budget of its largest member."""
    groups = []
    lo = 0.0
    hi = max(start, 1.0)
    remaining = np.arange(order_by.size)
    while remaining.size:
        mask = (order_by[remaining] >= lo) & (order_by[remaining] < hi)
        sel = remaining[mask]
        if sel.size:
            groups.append(sel)
        remaining = remaining[~mask]
        lo, hi = hi, hi * 2.0
    return groups


def wilson_fn_row(xs, lam, p: ParameterSet):
    """phi_lambda(x) over an array of x at one lambda.

    The c-expansion is evaluated on whichever side of the duality is
    numerically stable: directly for |x| >= |lambda| (its real-part
    extraction cancels like e^(pi(lambda-x)) the other way), and with the
    roles of x and lambda swapped for |x| < |lambda|.  The two-4F3
    representation covers the small-small corner and guard failures.
    """
    xs = np.asarray(xs, dtype=complex).ravel()
    lam = complex(lam)
    out = np.full(xs.shape, np.nan, dtype=complex)
    done = np.zeros(xs.shape, dtype=bool)

    mag = np.abs(xs)
    direct_ok = _cexp_pointwise_ok(xs, lam, p) if _cexp_lam_ok(lam) else np.zeros(xs.shape, bool)
    dual_ok = _dual_pointwise_ok(xs, lam, p)
    use_dual = dual_ok & ((mag < abs(lam)) | ~direct_ok)
    use_direct = direct_ok & ~use_dual

    if np.any(use_dual):
        idx = np.where(use_dual)[0]
        out[idx] = _phi_cexp_dual_batch(xs[idx], lam, p)
        done[idx] = True
    if np.any(use_direct):
        idx = np.where(use_direct)[0]
        for grp in _buckets(mag[idx], start=2.0 * max(abs(lam), 4.0)):
            sel = idx[grp]
            out[sel] = _phi_cexp_batch(xs[sel], lam, p)
        done[idx] = True
    rest = ~done | ~np.isfinite(out)
    if np.any(rest):
        out[rest] = _phi_expansion1_batch(xs[rest], lam, p)
    return out


def wilson_fn(x, lam, p: ParameterSet) -> complex:
    """The Wilson function phi_lambda(x; a, b, c, d).

    Analytic in (x, lambda), even in both, symmetric in {a, b, c, 1-d},
    and self-dual: phi_lambda(x; p) = phi_x(lambda; dual p).
    """
    return complex(wilson_fn_row([x], lam, p)[0])


def phi_matrix(xs, lams, p: ParameterSet):
    """Matrix phi[lam_j, x_i]; the workhorse of the nested transforms."""
    xs = np.asarray(xs, dtype=complex).ravel()
    lams = np.asarray(lams, dtype=complex).ravel()
    out = np.empty((lams.size, xs.size), dtype=complex)
    for j, lam in enumerate(lams):
        out[j] = wilson_fn_row(xs, lam, p)
    return out


def k_factor(x, lam, p: ParameterSet) -> complex:
    """K(x, lambda): the gamma product linking phi to the 7F6 solution psi."""
    a, b, c, d = p.as_tuple()
    dt = p.dual().d
    x, lam = complex(x), complex(lam)
    return gammaprod(
        [
            a + b,
            a + c,
            b + c,
            1 + a - d,
            1 - d + 1j * x,
            1 - d - 1j * x,
            1 - dt + 1j * lam,
            1 - dt - 1j * lam,
        ]
    )


def psi_fn(x, lam, p: ParameterSet) -> complex:
    """psi_lambda(x): the very-well-poised 7F6 eigenfunction, K * phi.

    Converges for Re(1 - d~ - i lambda) > 0 only.
    """
    a, b, c, d = p.as_tuple()
    pd = p.dual()
    at, bt, ct, dt = pd.as_tuple()
    x, lam = complex(x), complex(lam)
    il = 1j * lam
    sg = _sigma(p)
    w = w_7f6(
        at + bt + ct - 1 + il,
        a + 1j * x,
        a - 1j * x,
        at + il,
        bt + il,
        ct + il,
    )
    pref = gammaprod(
        [b + c, at + bt + ct + il, 1 - dt + il],
        [sg + il + 1j * x, sg + il - 1j * x],
    )
    return pref * w.value


def wilson_fn_w76(x, lam, p: ParameterSet) -> complex:
    """phi_lambda(x) through the very-well-poised 7F6 (cross-check route).

    Raises DivergenceError outside the half-plane Re(1 - d~ - i lambda) > 0.
    """
    a, b, c, d = p.as_tuple()
    pd = p.dual()
    at, bt, ct, dt = pd.as_tuple()
    x, lam = complex(x), complex(lam)
    il = 1j * lam
    if (1 - dt - il).real <= 1e-12:
        raise DivergenceError(
            f"7F6 route diverges: Re(1-d~-i lambda) = {(1 - dt - il).real:.3g} <= 0"
        )
    sg = _sigma(p)
    w = w_7f6(
        at + bt + ct - 1 + il,
        a + 1j * x,
        a - 1j * x,
        at + il,
        bt + il,
        ct + il,
    )
    pref = gammaprod(
        [at + bt + ct + il],
        [a + b, a + c, 1 + a - d, 1 - dt - il, sg + il + 1j * x, sg + il - 1j * x],
    )
    return pref * w.value


# ----------------------------------------------------------------------
# The difference operator L.

@dataclass
class OperatorCoeffs:
    """A(x) and B(x) of the operator L = B(-x)T_i + [A(-x)+A(x)] + B(x)T_{-i}."""

    A_at: complex
    B_at: complex


def operator_coeffs(x, p: ParameterSet) -> OperatorCoeffs:
    a, b, c, d = p.as_tuple()
    x = complex(x)
    ix = 1j * x
    den = 2 * ix * (2 * ix + 1)
    core = (a + ix) * (b + ix) * (c + ix)
    return OperatorCoeffs(A_at=core * (d + ix) / den, B_at=core * (1 - d + ix) / den)


def apply_L(f, x, p: ParameterSet) -> complex:
    """(L f)(x) = B(-x) f(x+i) + [A(-x) + A(x)] f(x) + B(x) f(x-i).

    The Wilson function satisfies L phi_lambda = (lambda^2 + a~^2) phi_lambda.
    """
    x = complex(x)
    if abs(2j * x) < SINGULAR_TOL or min(abs(2j * x + 1), abs(2j * x - 1)) < SINGULAR_TOL:
        raise SingularPointError(f"L is singular at x = {x}")
    plus = operator_coeffs(x, p)
    minus = operator_coeffs(-x, p)
    return minus.B_at * f(x + 1j) + (minus.A_at + plus.A_at) * f(x) + plus.B_at * f(x - 1j)


# ----------------------------------------------------------------------
# Expansion in products of terminating 4F3 / 3F2 pairs.

def _wilson_4f3_sequence(arg_param, y, b2, b3, b4, n_max):
    """Values of 4F3(-n, n+s-1, A+iy, A-iy; A+b2', ...; 1) for n = 0..n_max,
    i.e. Wilson polynomials R_n(y; A, B, C, D), by the three-term recurrence.

    Stable where forward term summation of the terminating series is not.
    """
    from .wilsonpoly import recurrence_coeffs

    q = ParameterSet(arg_param, b2, b3, b4)
    out = np.empty(n_max + 1, dtype=complex)
    r_prev, r_cur = 0.0 + 0.0j, 1.0 + 0.0j
    z = -(arg_param * arg_param + y * y)
    out[0] = 1.0
    for k in range(n_max):
        rc = recurrence_coeffs(k, q)
        r_next = r_cur + (z * r_cur - rc.D_n * (r_prev - r_cur)) / rc.C_n
        r_prev, r_cur = r_cur, r_next
        out[k + 1] = r_cur
    return out


def _cdh_3f2_sequence(t1, t2, b1, b2, n_max):
    """Values of 3F2(-n, t1, t2; b1, b2; 1) for n = 0..n_max via the
    continuous-dual-Hahn three-term recurrence."""
    out = np.empty(n_max + 1, dtype=complex)
    p_prev, p_cur = 0.0 + 0.0j, 1.0 + 0.0j
    out[0] = 1.0
    z = -t1 * t2
    for n in range(n_max):
        e_n = (n + b1) * (n + b2)
        f_n = n * (n + b1 + b2 - t1 - t2 - 1)
        p_next = p_cur + (z * p_cur - f_n * (p_prev - p_cur)) / e_n
        p_prev, p_cur = p_cur, p_next
        out[n + 1] = p_cur
    return out


def expansion_4f3_products(x, lam, p: ParameterSet, f, g, n_max: int):
    """Partial sum of the expansion of phi in products of two terminating
    4F3 polynomials, with coefficients C_n(x, lambda).

    Requires Re(f) > 0, Re(f+g) > 0, Re(a~+g) > 0, Re(1-d~+g) > 0.
    Returns (value, tail_estimate).  Both 4F3 factors are Wilson
    polynomials and are generated by their recurrences.
    """
    a, b, c, d = p.as_tuple()
    pd = p.dual()
    at, bt, ct, dt = pd.as_tuple()
    f, g = complex(f), complex(g)
    x, lam = complex(x), complex(lam)
    for cond, name in [
        (f.real, "Re(f)"),
        ((f + g).real, "Re(f+g)"),
        ((at + g).real, "Re(a~+g)"),
        ((1 - dt + g).real, "Re(1-d~+g)"),
    ]:
        if cond <= 0:
            raise ValueError(f"expansion requires {name} > 0")
    il, ix = 1j * lam, 1j * x
    sg = _sigma(p)
    base = gammaprod(
        [a - d + f + g + 1, g + at, g + 1 - dt, f + il, f - il],
        [
            1 + a - d,
            f + g,
            f + bt,
            f + ct,
            g + sg + ix,
            g + sg - ix,
            at + il,
            at - il,
            1 - dt + il,
            1 - dt - il,
        ],
    )
    w = a + f + g - d
    # first factor: R_n(lam; f, g, b~, c~)
    f1 = _wilson_4f3_sequence(f, lam, g, bt, ct, n_max)
    # second factor: Wilson polynomial with argument -i(a+d-1)/2
    alpha2 = g + 0.5 * (b + c)
    y2 = -0.5j * (a + d - 1)
    f2 = _wilson_4f3_sequence(
        alpha2, y2, f - 0.5 * (b + c), 0.5 * (a + 1 - d) + ix, 0.5 * (a + 1 - d) - ix, n_max
    )
    total = 0.0 + 0.0j
    cn = base
    last = 0.0
    for n in range(n_max + 1):
        if n > 0:
            cn = cn * (w + 2 * n) / (w + 2 * n - 2) * (w + n - 1) * (f + g + n - 1) / (
                (a + 1 - d + n - 1) * n
            )
        term = cn * f1[n] * f2[n]
        total += term
        last = abs(term)
    return total, 2.0 * last


def expansion_3f2_products(x, lam, p: ParameterSet, f, n_max: int):
    """The g -> infinity limit of the product expansion (3F2 factors).

    Requires Re(f) > 0.  Returns (value, tail_estimate).
    """
    a, b, c, d = p.as_tuple()
    pd = p.dual()
    at, bt, ct, dt = pd.as_tuple()
    f = complex(f)
    x, lam = complex(x), complex(lam)
    if f.real <= 0:
        raise ValueError("expansion requires Re(f) > 0")
    il, ix = 1j * lam, 1j * x
    base = gammaprod(
        [f + il, f - il],
        [f + bt, f + ct, at + il, at - il, 1 - dt + il, 1 - dt - il, 1 + a - d],
    )
    u_plus = f + ct - c + ix
    u_minus = f + ct - c - ix
    f1 = _cdh_3f2_sequence(f + il, f - il, bt + f, ct + f, n_max)
    f2 = _cdh_3f2_sequence(f - at, f + dt - 1, u_minus, u_plus, n_max)
    total = 0.0 + 0.0j
    cn = base
    last = 0.0
    for n in range(n_max + 1):
        if n > 0:
            cn = cn * (u_plus + n - 1) * (u_minus + n - 1) / (n * (a - d + n))
        term = cn * f1[n] * f2[n]
        total += term
        last = abs(term)
    return total, 2.0 * last
