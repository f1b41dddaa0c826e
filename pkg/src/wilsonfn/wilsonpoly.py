"""Wilson polynomials: series and recurrence evaluation, the difference
operator, and the closed-form orthogonality norm.

R_n(x; a,b,c,d) is the terminating balanced series

    4F3(-n, n+a+b+c+d-1, a+ix, a-ix; a+b, a+c, a+d; 1),

a polynomial of degree n in x^2.  It satisfies the three-term recurrence

    -(a^2+x^2) R_n = C_n [R_{n+1} - R_n] + D_n [R_{n-1} - R_n]

and the second-order difference equation Lambda R_n = n(n+a+b+c+d-1) R_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hyperg import SeriesSpec, gammaprod, hyp_sum, pochhammer
from .params import ParameterSet

SINGULAR_TOL = 1e-10


class SingularPointError(ValueError):
    """The difference operator was applied at one of its singular points."""


@dataclass
class RecurrenceCoeffs:
    """Coefficients C_n, D_n of the Wilson three-term recurrence."""

    C_n: complex
    D_n: complex
    degree: int


def recurrence_coeffs(n: int, p: ParameterSet) -> RecurrenceCoeffs:
    """The recurrence coefficients at degree n.

    Raises on (near-)vanishing denominators 2n+a+b+c+d-2, -1, 0.
    """
    a, b, c, d = p.as_tuple()
    s = a + b + c + d
    if n == 0:
        # the common factor (n+a+b+c+d-1) cancels in C_0
        if abs(s) < SINGULAR_TOL:
            raise ZeroDivisionError("recurrence denominator a+b+c+d vanishes")
        C = (a + b) * (a + c) * (a + d) / s
        return RecurrenceCoeffs(C_n=C, D_n=0.0 + 0.0j, degree=0)
    for off in (-2.0, -1.0, 0.0):
        if abs(2 * n + s + off) < SINGULAR_TOL:
            raise ZeroDivisionError(
                f"recurrence denominator 2n+a+b+c+d{off:+g} vanishes at n={n}"
            )
    C = (
        (n + s - 1) * (n + a + b) * (n + a + c) * (n + a + d)
        / ((2 * n + s - 1) * (2 * n + s))
    )
    D = (
        n * (n + b + c - 1) * (n + b + d - 1) * (n + c + d - 1)
        / ((2 * n + s - 2) * (2 * n + s - 1))
    )
    return RecurrenceCoeffs(C_n=C, D_n=D, degree=n)


def wilson_poly_series(n: int, x, p: ParameterSet):
    """R_n(x) summed directly from its terminating 4F3 series."""
    a, b, c, d = p.as_tuple()
    x = np.asarray(x, dtype=complex)
    scalar = x.ndim == 0
    xs = np.atleast_1d(x)
    s = a + b + c + d
    out = np.empty(xs.shape, dtype=complex)
    for i, xi in enumerate(xs.ravel()):
        spec = SeriesSpec(
            tops=[-n, n + s - 1, a + 1j * xi, a - 1j * xi],
            bottoms=[a + b, a + c, a + d],
            argument=1.0,
        )
        out.ravel()[i] = hyp_sum(spec).value
    return complex(out[()]) if scalar else out


def wilson_poly_recurrence(n: int, x, p: ParameterSet):
    """R_n(x) from the three-term recurrence; vectorized over x.

    Forward recurrence is stable here: the polynomial is the dominant
    solution away from the oscillatory interior.
    """
    a, _, _, _ = p.as_tuple()
    x = np.asarray(x, dtype=complex)
    scalar = x.ndim == 0
    xs = np.atleast_1d(x)
    r_prev = np.zeros(xs.shape, dtype=complex)
    r_cur = np.ones(xs.shape, dtype=complex)
    z = -(a * a + xs * xs)
    for k in range(n):
        rc = recurrence_coeffs(k, p)
        r_next = r_cur + (z * r_cur - rc.D_n * (r_prev - r_cur)) / rc.C_n
        r_prev, r_cur = r_cur, r_next
    return complex(r_cur[()]) if scalar else r_cur


def wilson_poly(n: int, x, p: ParameterSet, method: str = "auto"):
    """Wilson polynomial R_n(x; a,b,c,d).

    ``method`` is "auto" (series for n <= 20, recurrence beyond), "series",
    or "recurrence".  Both routes accept complex x and are even in x.
    """
    if n < 0:
        return np.zeros_like(np.asarray(x, dtype=complex)) if np.ndim(x) else 0.0j
    if method == "auto":
        method = "series" if n <= 20 else "recurrence"
    if method == "series":
        return wilson_poly_series(n, x, p)
    if method == "recurrence":
        return wilson_poly_recurrence(n, x, p)
    raise ValueError(f"unknown method {method!r}")


def lambda_coeff(x, p: ParameterSet):
    """A(x) = (a+ix)(b+ix)(c+ix)(d+ix) / (2ix (2ix+1))."""
    a, b, c, d = p.as_tuple()
    x = np.asarray(x, dtype=complex)
    ix = 1j * x
    num = (a + ix) * (b + ix) * (c + ix) * (d + ix)
    out = num / (2 * ix * (2 * ix + 1))
    return complex(out) if out.ndim == 0 else out


def apply_Lambda(f, x, p: ParameterSet):
    """Apply the Wilson difference operator to an evaluator f at x:

        (Lambda f)(x) = A(x)[f(x-i) - f(x)] + A(-x)[f(x+i) - f(x)].

    Wilson polynomials are eigenfunctions with eigenvalue n(n+a+b+c+d-1).
    """
    x = complex(x)
    if abs(2j * x) < SINGULAR_TOL or min(abs(2j * x + 1), abs(2j * x - 1)) < SINGULAR_TOL:
        raise SingularPointError(f"Lambda is singular at x = {x}")
    fx = f(x)
    return lambda_coeff(x, p) * (f(x - 1j) - fx) + lambda_coeff(-x, p) * (f(x + 1j) - fx)


def wilson_norm(n: int, p: ParameterSet) -> float:
    """Squared norm of R_n under the Wilson measure (orthogonality relation).

    Requires every pairwise parameter sum to have positive real part (the
    classical admissibility condition for the measure).
    """
    a, b, c, d = p.as_tuple()
    quad = (a, b, c, d)
    for i in range(4):
        for j in range(i + 1, 4):
            if (quad[i] + quad[j]).real <= 0:
                raise ValueError(
                    f"inadmissible parameters: Re({quad[i]} + {quad[j]}) <= 0"
                )
    s = a + b + c + d
    pref = (s - 1) / (2 * n + s - 1) * gammaprod(
        [a + b, a + c, a + d, b + c + n, b + d + n, c + d + n], [s]
    )
    poch = (
        pochhammer(a + b, n)
        * pochhammer(a + c, n)
        * pochhammer(a + d, n)
        * pochhammer(s - 1, n)
    )
    val = pref * float(math.factorial(n)) / poch
    return float(val.real)
