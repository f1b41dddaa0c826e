"""Parameter quadruples, the dual involution, and admissible-domain checks.

The dual parameters are the half-sum combinations

    a~ = (a+b+c+d-1)/2,   b~ = (a+b-c-d+1)/2,
    c~ = (a-b+c-d+1)/2,   d~ = (a-b-c+d+1)/2,

an involution under which the geometric and spectral variables of the
Wilson function trade places.  Two admissible domains matter downstream:
the type-I domain (a,b,c,1-d real or in conjugate pairs with positive real
part, pairwise sums off the cut (-inf, 0]) and the type-II domain
(conj(a) = 1-d, conj(b) = c, real shift t).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

REAL_TOL = 1e-12
LATTICE_TOL = 1e-8
LATTICE_DEPTH = 40


class ValidationError(ValueError):
    """A parameter set violates an admissibility condition."""


@dataclass(frozen=True)
class ParameterSet:
    """The quadruple (a, b, c, d) of complex Wilson parameters."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)))

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    def dual(self):
        a, b, c, d = self.as_tuple()
        return ParameterSet(
            0.5 * (a + b + c + d - 1),
            0.5 * (a + b - c - d + 1),
            0.5 * (a - b + c - d + 1),
            0.5 * (a - b - c + d + 1),
        )

    def type_i_quad(self):
        """The symmetric multiset (a, b, c, 1-d) entering the weight M."""
        return (self.a, self.b, self.c, 1 - self.d)

    def to_json_dict(self, t=None):
        out = {k: [getattr(self, k).real, getattr(self, k).imag] for k in "abcd"}
        if t is not None:
            out["t"] = float(t)
        return out

    @classmethod
    def from_json_dict(cls, obj):
        vals = {}
        for k in "abcd":
            if k not in obj:
                raise ValidationError(f"missing parameter {k!r}")
            v = obj[k]
            if isinstance(v, (int, float)):
                vals[k] = complex(v)
            else:
                re, im = v
                vals[k] = complex(re, im)
        return cls(**vals)

    @classmethod
    def from_json(cls, text):
        return cls.from_json_dict(json.loads(text))


def dual(p: ParameterSet) -> ParameterSet:
    return p.dual()


def _is_realish(z, tol=REAL_TOL):
    return abs(complex(z).imag) <= tol


def _on_cut(z, tol=REAL_TOL):
    """Membership of the branch cut (-inf, 0]."""
    z = complex(z)
    return abs(z.imag) <= tol and z.real <= tol


def _conjugate_paired(values, tol=1e-10):
    """True if every non-real value can be matched with its conjugate."""
    pool = [complex(v) for v in values if not _is_realish(v)]
    while pool:
        v = pool.pop()
        if v.real <= 0:
            return False
        for i, w in enumerate(pool):
            if abs(w - np.conj(v)) <= tol * (1 + abs(v)):
                pool.pop(i)
                break
        else:
            return False
    return True


def _lattices_simple(quad, extra_real=None, tol=LATTICE_TOL):
    """Check that the pole lattices {+-i(e+n)} (and optionally the shift
    lattice {i(t-k)}) stay pairwise separated, i.e. all poles are simple.

    Collisions happen exactly when e - e' (same sign, distinct parameters)
    or e + e' (opposite signs, any pair) sits on an integer within reach of
    the lattice window; for the shift lattice the analogous combinations
    are e - t and e + t.
    """

    def near_int(z, lo=-LATTICE_DEPTH * 2, hi=LATTICE_DEPTH * 2):
        z = complex(z)
        k = round(z.real)
        return abs(z - k) <= tol and lo <= k <= hi

    quad = [complex(e) for e in quad]
    for i, e in enumerate(quad):
        for j, f in enumerate(quad):
            if i < j and near_int(e - f):
                return False
            # opposite-sign collision needs e + f on a non-positive integer
            if i <= j and near_int(e + f, hi=0):
                return False
    if extra_real is not None:
        t = float(extra_real)
        for e in quad:
            if near_int(e - t) or near_int(e + t):
                return False
    return True


@dataclass
class VMembership:
    """Verdict of the type-I domain check."""

    member: bool
    simple_poles: bool
    reasons: list

    def __bool__(self):
        return self.member


def validate_type_I(p: ParameterSet) -> VMembership:
    """Check membership of the type-I parameter domain.

    Requires a, b, c, 1-d real or in conjugate pairs with positive real
    part, and every pairwise sum of {a, b, c, 1-d} off the cut (-inf, 0].
    Also reports whether every pole of the weight M is simple.
    """
    quad = p.type_i_quad()
    reasons = []
    if not _conjugate_paired(quad):
        reasons.append(
            "a, b, c, 1-d must be real or occur in conjugate pairs with "
            "positive real part"
        )
    for i in range(4):
        for j in range(i + 1, 4):
            s = quad[i] + quad[j]
            if _on_cut(s):
                reasons.append(f"pairwise sum {i},{j} = {s} lies in (-inf, 0]")
    simple = _lattices_simple(quad)
    return VMembership(member=not reasons, simple_poles=simple, reasons=reasons)


@dataclass(frozen=True)
class TypeIIContext:
    """Type-II parameters: a quadruple, the real shift t, and the constant C."""

    params: ParameterSet
    t: float
    t_dual: float
    norm_const: float

    def dual(self):
        pd = self.params.dual()
        return TypeIIContext(pd, self.t_dual, self.t, self.norm_const)


def _sin_product(p: ParameterSet, t: float) -> complex:
    out = 1.0 + 0.0j
    for e in p.type_i_quad():
        out *= np.sin(np.pi * (e + t))
    return complex(out)


def validate_type_II(p: ParameterSet, t: float) -> TypeIIContext:
    """Validate (a,b,c,d,t) for the type-II domain and build its context.

    Raises ValidationError naming the violated condition; on success the
    context carries the dual shift t~ = 1 - b~ - c - t and the normalizing
    constant C = sqrt(sin pi(a+t) sin pi(b+t) sin pi(c+t) sin pi(1-d+t)).
    """
    t = float(t)
    a, b, c, d = p.as_tuple()
    if abs(np.conj(a) - (1 - d)) > 1e-10 * (1 + abs(a)):
        raise ValidationError(f"conj(a) = {np.conj(a)} must equal 1-d = {1 - d}")
    if abs(np.conj(b) - c) > 1e-10 * (1 + abs(b)):
        raise ValidationError(f"conj(b) = {np.conj(b)} must equal c = {c}")
    if abs(t - round(t)) < 1e-6:
        raise ValidationError(
            f"shift t = {t} too close to an integer: the weight H degenerates"
        )
    csq = _sin_product(p, t)
    if abs(csq.imag) > 1e-10 * abs(csq) or csq.real <= 0:
        raise ValidationError(
            f"sin-product under the square root of C is not positive: {csq}"
        )
    if not _lattices_simple(p.type_i_quad(), extra_real=t):
        raise ValidationError("poles of the weight H are not simple")
    bt = 0.5 * (a + b - c - d + 1)
    t_dual = 1 - bt - c - t
    if abs(t_dual.imag) > 1e-10:
        raise ValidationError(f"dual shift came out non-real: {t_dual}")
    return TypeIIContext(
        params=p, t=t, t_dual=float(t_dual.real), norm_const=float(np.sqrt(csq.real))
    )
