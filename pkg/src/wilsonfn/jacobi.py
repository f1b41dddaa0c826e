"""Jacobi functions and polynomials, and the integral identities tying the
Jacobi transform to the Wilson function.

The verifications here pit a quadrature route against a closed form:

* the Beta/Gauss evaluation of the basic 2F1 integral,
* the product-of-2F1 integral equal to a very-well-poised 7F6,
* Koornwinder's formula mapping Jacobi polynomials to Wilson polynomials.

All integrals run over (0, 1) after u = y/(1-y); the integrands have
algebraic endpoint behaviour handled by QUADPACK's extrapolating rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad as _quad

from .hyperg import (
    DivergenceError,
    PoleError,
    SeriesSpec,
    gammaprod,
    hyp_sum,
    log_gamma,
    pochhammer,
)


def hyp2f1(a, b, c, z, max_terms=100000):
    """Gauss 2F1(a, b; c; z) for complex parameters, principal branch.

    Stable on the negative real axis through Pfaff (moderate |z|) or the
    1/z connection (large |z|); direct series elsewhere for |z| < 0.95.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    for t in (a, b):
        k = round(t.real)
        if k <= 0 and abs(t - k) <= 1e-12:
            # terminating: a finite sum at any argument
            total = 1.0 + 0.0j
            term = 1.0 + 0.0j
            for n in range(-k):
                term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
                total += term
            return total
    if abs(z) < 1e-14:
        return 1.0 + 0.0j
    if z.real < 0 and abs(z.imag) < 1e-14:
        if z.real >= -1.5:
            # Pfaff: argument z/(z-1) in (0, 0.6]
            w = z / (z - 1.0)
            val = hyp2f1(a, c - b, c, w, max_terms)
            return (1.0 - z) ** (-a) * val
        # |z| large: connect to argument 1/z
        if abs((a - b) - round((a - b).real)) < 1e-6 and abs((a - b).imag) < 1e-6:
            # logarithmic case: 2F1 is analytic in b, so symmetric
            # perturbation + Richardson removes the degeneracy to O(eps^4)
            def avg(eps):
                return 0.5 * (
                    hyp2f1(a, b + eps, c, z, max_terms)
                    + hyp2f1(a, b - eps, c, z, max_terms)
                )

            eps = 2e-3
            return (4.0 * avg(0.5 * eps) - avg(eps)) / 3.0
        t1 = gammaprod([c, b - a], [b, c - a]) * (-z) ** (-a) * hyp2f1(
            a, a - c + 1, a - b + 1, 1.0 / z, max_terms
        )
        t2 = gammaprod([c, a - b], [a, c - b]) * (-z) ** (-b) * hyp2f1(
            b, b - c + 1, b - a + 1, 1.0 / z, max_terms
        )
        return t1 + t2
    if abs(z) < 0.95:
        sv = hyp_sum(SeriesSpec([a, b], [c], z), rel_tol=1e-15, max_terms=max_terms)
        return sv.value
    raise DivergenceError(f"2F1 argument {z} outside the supported region")


# ----------------------------------------------------------------------
# Jacobi functions, polynomials, transform data.

@dataclass
class JacobiParams:
    """Parameters (alpha, beta) of the Jacobi function transform."""

    alpha: complex
    beta: complex

    def weight(self, x):
        """Delta_{alpha,beta}(x) = x^alpha (1+x)^beta."""
        x = np.asarray(x, dtype=float)
        return x**self.alpha * (1 + x) ** self.beta

    def c_function(self, lam) -> complex:
        """c_{alpha,beta}(lambda), the harmonic-analysis c-function."""
        lam = complex(lam)
        il = 1j * lam
        return 2 ** (-il) * gammaprod(
            [self.alpha + 1, il],
            [0.5 * (self.alpha + self.beta + 1 + il), 0.5 * (self.alpha - self.beta + 1 + il)],
        )

    def spectral_density(self, lam) -> float:
        """|c(lambda)|^(-2) for real lambda (continuous spectral measure)."""
        c = self.c_function(lam)
        return float(1.0 / abs(c) ** 2)

    def discrete_set(self):
        """The finite set E of discrete spectral points i(|beta|-alpha-1-2j)."""
        beta = complex(self.beta)
        alpha = complex(self.alpha)
        if abs(beta.imag) > 1e-12:
            return []
        out = []
        j = 0
        while abs(beta.real) - alpha.real - 1 - 2 * j > 0:
            out.append(1j * (abs(beta.real) - alpha.real - 1 - 2 * j))
            j += 1
        return out


def jacobi_fn(lam, x, jp: JacobiParams) -> complex:
    """The Jacobi function: 2F1((a+b+1-il)/2, (a+b+1+il)/2; a+1; -x),
    with the one-valued continuation for x >= 1."""
    al, be = complex(jp.alpha), complex(jp.beta)
    k = round((al + 1).real)
    if k <= 0 and abs(al + 1 - k) <= 1e-12:
        raise PoleError(f"alpha+1 = {al + 1} is a non-positive integer")
    il = 1j * complex(lam)
    return hyp2f1(0.5 * (al + be + 1 - il), 0.5 * (al + be + 1 + il), al + 1, -float(x))


def jacobi_poly_ratio(n: int, x, jp: JacobiParams) -> complex:
    """P_n^(alpha,beta)((1-x)/(1+x)) via the terminating 2F1 of argument -x."""
    al, be = complex(jp.alpha), complex(jp.beta)
    x = float(x)
    pref = pochhammer(al + 1, n) / math.factorial(n) * (1 + x) ** (-n)
    return pref * hyp2f1(-n, -be - n, al + 1, -x)


def jacobi_poly_norm(n: int, jp: JacobiParams) -> float:
    """Squared norm of P_n^(alpha,beta)((1-x)/(1+x)) under
    x^alpha (1+x)^(-alpha-beta-2) dx on (0, inf)."""
    al, be = complex(jp.alpha), complex(jp.beta)
    val = gammaprod([n + al + 1, n + be + 1], [n + al + be + 1]) / (
        (2 * n + al + be + 1) * math.factorial(n)
    )
    return float(val.real)


# ----------------------------------------------------------------------
# Quadrature helpers on (0, 1) after u = y/(1-y).

def _quad01(fn, rel_tol=1e-11):
    val, err = _quad(fn, 0.0, 1.0, epsabs=1e-13, epsrel=rel_tol, limit=400)
    return val, err


def verify_h1(alpha, beta, gamma, delta, rho, rel_tol=1e-11):
    """The Beta/Gauss integral: quadrature of

        y^(2a-1) (1-y)^(c+d-a-b-1) 2F1(a+b+r, a+b-r; 2a; y/(y-1))

    against Gamma(2a)Gamma(c+d+r)Gamma(c+d-r) / (Gamma(a-b+c+d)Gamma(a+b+c+d)).
    Returns (lhs, rhs, deviation).
    """
    alpha, beta, gamma, delta, rho = (
        float(alpha), float(beta), float(gamma), float(delta), float(rho)
    )
    if alpha <= 0:
        raise ValueError("requires Re(alpha) > 0")
    for s in (+1, -1):
        if gamma + delta + s * rho <= 0:
            raise ValueError("requires Re(gamma + delta +- rho) > 0")

    def fn(y):
        if y <= 0.0 or y >= 1.0:
            return 0.0
        f = hyp2f1(alpha + beta + rho, alpha + beta - rho, 2 * alpha, y / (y - 1.0))
        return y ** (2 * alpha - 1) * (1 - y) ** (gamma + delta - alpha - beta - 1) * f.real

    lhs, _ = _quad01(fn, rel_tol)
    rhs = gammaprod(
        [2 * alpha, gamma + delta + rho, gamma + delta - rho],
        [alpha - beta + gamma + delta, alpha + beta + gamma + delta],
    ).real
    return lhs, rhs, abs(lhs - rhs) / abs(rhs)


@dataclass
class WilJacParams:
    """The six parameters of the product-of-Jacobi-functions integral."""

    alpha: float
    beta: float
    gamma: float
    delta: float
    mu: float
    rho: float

    def validate(self):
        if self.alpha <= 0:
            raise ValueError("requires Re(alpha) > 0")
        for s in (+1, -1):
            if self.gamma + self.delta + s * self.rho <= 0:
                raise ValueError("requires Re(gamma + delta +- rho) > 0")

    def integrable(self) -> bool:
        """Absolute integrability of the defining integral requires every
        exponent delta +- gamma +- rho to be positive (the proposition
        extends past that by analytic continuation, where quadrature
        cannot follow)."""
        return min(
            self.delta + s1 * self.gamma + s2 * self.rho
            for s1 in (1, -1)
            for s2 in (1, -1)
        ) > 1e-9


def wil_jac_rhs(wp: WilJacParams) -> complex:
    """Closed form of the product integral: the pair of balanced 4F3 sums
    I_gamma + I_(-gamma) (the two-4F3 splitting of the very-well-poised
    7F6, which converges even where the 7F6 series itself does not)."""
    al, be, ga, de, mu, rho = (
        wp.alpha, wp.beta, wp.gamma, wp.delta, wp.mu, wp.rho,
    )

    def i_branch(g):
        pref = gammaprod(
            [2 * al, 2 * al, -2 * g, de + g + rho, de + g - rho],
            [al - g + mu, al - g - mu, al + be + g + de, al - be + g + de],
        )
        series = hyp_sum(
            SeriesSpec(
                tops=[al + g + mu, al + g - mu, de + g + rho, de + g - rho],
                bottoms=[2 * g + 1, al + be + g + de, al - be + g + de],
                argument=1.0,
            )
        )
        return pref * series.value

    return i_branch(ga) + i_branch(-ga)


def wil_jac_rhs_w76(wp: WilJacParams) -> complex:
    """The same closed form through the gamma prefactor times the W-series
    (only where the 7F6 converges: Re(delta - gamma - rho) > 0)."""
    from .hyperg import w_7f6

    al, be, ga, de, mu, rho = (
        wp.alpha, wp.beta, wp.gamma, wp.delta, wp.mu, wp.rho,
    )
    pref = gammaprod(
        [2 * al, 2 * al + de + rho + ga, de + ga + rho, de + ga - rho, de - ga + rho],
        [al + de + rho + mu, al + de + rho - mu, al + de + ga + be, al + de + ga - be],
    )
    w = w_7f6(
        2 * al + de + ga - 1 + rho,
        al + ga + mu,
        al + ga - mu,
        al + be + rho,
        al - be + rho,
        de + ga + rho,
    )
    return pref * w.value


def verify_wil_jac(wp: WilJacParams, rel_tol=1e-11):
    """Quadrature of the product-of-2F1 integral against its closed form.

    Returns (lhs, rhs, deviation).  Raises DivergenceError when the
    integral is not absolutely convergent at the given parameters (the
    identity only continues analytically there).
    """
    wp.validate()
    if not wp.integrable():
        raise DivergenceError(
            "product integral diverges: min(delta +- gamma +- rho) <= 0; "
            "the identity holds only by analytic continuation here"
        )
    al, be, ga, de, mu, rho = (
        wp.alpha, wp.beta, wp.gamma, wp.delta, wp.mu, wp.rho,
    )

    def fn(y):
        if y <= 0.0 or y >= 1.0:
            return 0.0
        z = y / (y - 1.0)
        f1 = hyp2f1(al + mu + ga, al + mu - ga, 2 * al, z)
        f2 = hyp2f1(al + be + rho, al + be - rho, 2 * al, z)
        return (
            y ** (2 * al - 1)
            * (1 - y) ** (de - mu - be - 2 * al - 1)
            * (f1 * f2).real
        )

    lhs, _ = _quad01(fn, rel_tol)
    rhs = wil_jac_rhs(wp).real
    return lhs, rhs, abs(lhs - rhs) / abs(rhs)


def verify_koornwinder(n: int, alpha, beta, gamma, delta, rho, rel_tol=1e-11):
    """Koornwinder's formula: quadrature of the Jacobi-polynomial x 2F1
    integral against its terminating 4F3 closed form.

    Returns (lhs, rhs, deviation).
    """
    if alpha <= 0:
        raise ValueError("requires Re(alpha) > 0")
    for s in (+1, -1):
        if gamma + delta + s * rho <= 0:
            raise ValueError("requires Re(gamma + delta +- rho) > 0")
    jp = JacobiParams(2 * alpha - 1, 2 * gamma)

    def fn(y):
        if y <= 0.0 or y >= 1.0:
            return 0.0
        u = y / (1.0 - y)
        pn = jacobi_poly_ratio(n, u, jp)
        f2 = hyp2f1(alpha + beta + rho, alpha + beta - rho, 2 * alpha, -u)
        return (
            y ** (2 * alpha - 1)
            * (1 - y) ** (gamma + delta - alpha - beta - 1)
            * (pn * f2).real
        )

    lhs, _ = _quad01(fn, rel_tol)
    pref = (
        (-1) ** n
        * pochhammer(2 * gamma + 1, n)
        / math.factorial(n)
        * gammaprod(
            [2 * alpha, gamma + delta + rho, gamma + delta - rho],
            [alpha + beta + gamma + delta, alpha - beta + gamma + delta],
        )
    )
    series = hyp_sum(
        SeriesSpec(
            tops=[-n, 2 * alpha + 2 * gamma + n, delta + gamma + rho, delta + gamma - rho],
            bottoms=[2 * gamma + 1, alpha + beta + gamma + delta, alpha - beta + gamma + delta],
            argument=1.0,
        )
    )
    rhs = (pref * series.value).real
    return lhs, rhs, abs(lhs - rhs) / abs(rhs)


def verify_jacobi_orthogonality(n: int, m: int, jp: JacobiParams, rel_tol=1e-11):
    """Orthogonality of P_n^(alpha,beta)((1-x)/(1+x)) under the weight
    x^alpha (1+x)^(-alpha-beta-2).  Returns (lhs, rhs, deviation scale)."""
    al, be = complex(jp.alpha).real, complex(jp.beta).real
    if al <= -1 or be <= -1:
        raise ValueError("requires Re(alpha), Re(beta) > -1")

    def fn(y):
        if y <= 0.0 or y >= 1.0:
            return 0.0
        u = y / (1.0 - y)
        pn = jacobi_poly_ratio(n, u, jp) * jacobi_poly_ratio(m, u, jp)
        return (u**al * (1 + u) ** (-al - be - 2) * pn).real / (1 - y) ** 2

    lhs, _ = _quad01(fn, rel_tol)
    rhs = jacobi_poly_norm(n, jp) if n == m else 0.0
    scale = math.sqrt(jacobi_poly_norm(n, jp) * jacobi_poly_norm(m, jp))
    return lhs, rhs, abs(lhs - rhs) / scale


def connection_2f1_deviation(alpha, gamma, mu, y) -> float:
    """The two-term connection formula expanding 2F1(..; y/(y-1)) in
    2F1-functions of argument 1-y; returns the relative deviation."""
    lhs = hyp2f1(alpha + mu + gamma, alpha + mu - gamma, 2 * alpha, y / (y - 1.0))

    def branch(g):
        pref = gammaprod(
            [2 * alpha, -2 * g], [alpha + mu - g, alpha - mu - g]
        )
        return (
            pref
            * (1 - y) ** (alpha + mu + g)
            * hyp2f1(alpha + g + mu, alpha + g - mu, 1 + 2 * g, 1 - y)
        )

    rhs = branch(gamma) + branch(-gamma)
    return abs(lhs - rhs) / abs(lhs)
