"""Spectral weights, their discrete mass points, and the quadrature engine.

Three measures appear downstream, all of the shape

    integral f dmu = (1/2pi) int_0^inf f(x) W(x) dx + sum_k f(x_k) m_k :

* the Wilson polynomial measure (weight w, finitely many masses),
* the type-I measure (weight M = w with d -> 1-d, finitely many masses),
* the type-II measure (weight C*H, infinitely many masses at i(t-k)).

Continuous parts are integrated by panel quadrature with an embedded
Gauss-Legendre 15/7 pair (interior nodes keep the integrands away from
the spectral origin), panels laid out on unit intervals, pre-split where
the kernel oscillates like x^(-2 i lambda), and bisected adaptively.
Mass weights come from the closed-form residues of the weights; the
numerical-residue extraction used to validate them lives in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import loggamma as _loggamma

from .hyperg import PoleError, log_gamma, pochhammer
from .params import ParameterSet, TypeIIContext, validate_type_I
from .wilsonfunc import operator_coeffs

TWO_PI = 2.0 * math.pi


class ToleranceError(RuntimeError):
    """The adaptive quadrature budget ran out before reaching tolerance."""


# ----------------------------------------------------------------------
# Continuous weights.

def _log_sinh_factor(x):
    """log of 1/(Gamma(2ix) Gamma(-2ix)) = 2x sinh(2 pi x)/pi, x real > 0."""
    x = np.asarray(x, dtype=float)
    return TWO_PI * x + np.log(x / math.pi) + np.log1p(-np.exp(-2 * TWO_PI * x))


def _log_gamma_quad(x, quad):
    """sum_e log Gamma(e + ix) + log Gamma(e - ix) over the multiset."""
    x = np.asarray(x, dtype=float)
    tot = np.zeros(x.shape, dtype=complex)
    for e in quad:
        tot += _loggamma(e + 1j * x) + _loggamma(e - 1j * x)
    return tot


def weight_w(x, p: ParameterSet):
    """The Wilson polynomial weight w(x; a,b,c,d) on (0, inf)."""
    return _weight_from_quad(x, p.as_tuple())


def weight_M(x, p: ParameterSet):
    """The type-I weight M(x) = w(x; a, b, c, 1-d)."""
    return _weight_from_quad(x, p.type_i_quad())


def _weight_from_quad(x, quad):
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    xs = np.atleast_1d(x).astype(float)
    if np.any(xs <= 0):
        raise ValueError("continuous weights are defined for x > 0")
    out = np.exp(_log_gamma_quad(xs, quad) + _log_sinh_factor(xs))
    out = out.real
    return float(out[0]) if scalar else out


def weight_H(x, ctx: TypeIIContext):
    """The type-II weight H(x) = M(x) / (sin pi(t+ix) sin pi(t-ix)).

    For real x the sine product equals sin^2(pi t) + sinh^2(pi x) > 0.
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    xs = np.atleast_1d(x).astype(float)
    m = weight_M(xs, ctx.params)
    denom = np.sin(math.pi * ctx.t) ** 2 + np.sinh(math.pi * xs) ** 2
    out = m / denom
    return float(out[0]) if scalar else out


_STIRLING = np.array(
    [1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188, -691.0 / 360360]
)


def _log_gamma_pair_flat(e, x):
    """log|Gamma(e+ix)|^2 + pi*x: the exponential factor removed
    analytically, stable for arbitrarily large real x.

    Uses 2 Re log Gamma directly for moderate x and the Stirling form with
    the exact cancellation 2x(pi/2 - atan2(x,e)) = -2x atan(e/x) beyond.
    """
    e = float(np.real(e))
    x = np.asarray(x, dtype=float)
    small = x < 30.0
    out = np.empty(x.shape)
    if np.any(small):
        xs = x[small]
        out[small] = 2.0 * _loggamma(e + 1j * xs).real + math.pi * xs
    if np.any(~small):
        xl = x[~small]
        z2 = e * e + xl * xl
        corr = np.zeros(xl.shape)
        zpow = 1.0 / (e + 1j * xl)
        z2inv = zpow * zpow
        for ck in _STIRLING:
            corr += 2.0 * (ck * zpow).real
            zpow = zpow * z2inv
        out[~small] = (
            (e - 0.5) * np.log(z2)
            + 2.0 * xl * np.arctan(e / xl)
            - 2.0 * e
            + math.log(2 * math.pi)
            + corr
        )
    return out


def weight_neretin(x, p: ParameterSet):
    """|Gamma(a+ix)Gamma(b+ix)Gamma(c+ix) / (Gamma(1-d+ix)Gamma(2ix))|^2.

    The weight of the finite orthogonality relation satisfied by Wilson
    polynomials whose parameter sum is negative.  Its exponential factors
    cancel exactly (three gamma pairs up, one down, one 2ix pair down), so
    the log is assembled from exponential-free pieces: the weight decays
    like a pure power of x and the quadrature grid may reach x ~ 1e30.
    """
    a, b, c, d = p.as_tuple()
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    xs = np.atleast_1d(x).astype(float)
    if np.any(xs <= 0):
        raise ValueError("continuous weights are defined for x > 0")
    lg = (
        _log_gamma_pair_flat(a, xs)
        + _log_gamma_pair_flat(b, xs)
        + _log_gamma_pair_flat(c, xs)
        - _log_gamma_pair_flat(1 - complex(d).real, xs)
        + np.log(xs / math.pi)
        + np.log1p(-np.exp(-2 * TWO_PI * xs))
    )
    out = np.exp(lg)
    return float(out[0]) if scalar else out


def weight_at_complex(z, quad):
    """M-type weight continued off the real axis (no sinh shortcut)."""
    z = complex(z)
    tot = 0.0 + 0.0j
    for e in quad:
        tot += log_gamma(e + 1j * z) + log_gamma(e - 1j * z)
    tot -= log_gamma(2j * z) + log_gamma(-2j * z)
    return complex(np.exp(tot))


# ----------------------------------------------------------------------
# Discrete mass points.

def _mass_at(quad, idx, n):
    """i * Res of the quad-weight at x = i(e+n), e = quad[idx], by the
    closed-form residue (symmetric under permuting which parameter leads)."""
    e = complex(quad[idx])
    others = [complex(q) for j, q in enumerate(quad) if j != idx]
    lg = -log_gamma(-2 * e)
    for q in others:
        lg += log_gamma(e + q) + log_gamma(q - e)
    val = complex(np.exp(lg))
    num = pochhammer(2 * e, n) * pochhammer(e + 1, n)
    den = pochhammer(e, n) * math.factorial(n)
    for q in others:
        num *= pochhammer(e + q, n)
        den *= pochhammer(1 + e - q, n)
    return val * num / den


def _is_nonneg_int(z, tol=1e-8):
    z = complex(z)
    k = round(z.real)
    return k >= 0 and abs(z - k) <= tol


def _pole_order_at(quad, z, tol=1e-8):
    """Pole order of the quad-weight at x = iz: gamma poles of Gamma(q +- ix)
    minus the zero of 1/Gamma(-2ix) when 2z is a negative integer."""
    poles = 0
    for q in quad:
        poles += int(_is_nonneg_int(z - q, tol))     # Gamma(q + ix)
        poles += int(_is_nonneg_int(-z - q, tol))    # Gamma(q - ix)
    zeros = int(_is_nonneg_int(-2 * complex(z), tol))
    return poles - zeros


def _masses_from_quad(quad):
    """All (point, mass) pairs i(e+n), e+n < 0 of a four-parameter weight.

    Every mass point must be a simple pole of the weight (the closed-form
    residue is only valid there); near-degenerate configurations raise.
    """
    out = []
    for idx, e in enumerate(quad):
        e = complex(e)
        if abs(e.imag) > 1e-12 or e.real >= 0:
            continue
        n = 0
        while e.real + n < 0:
            z = e + n
            order = _pole_order_at(quad, z)
            if order != 1:
                raise PoleError(
                    f"mass point i({z}) is not a simple pole (order {order}); "
                    "perturb the parameters"
                )
            m = _mass_at(quad, idx, n)
            if abs(m.imag) > 1e-8 * abs(m):
                raise PoleError(f"mass at i({e}+{n}) came out non-real: {m}")
            out.append((1j * z, m.real))
            n += 1
    out.sort(key=lambda pm: pm[0].imag)
    return out


def masses_type_I(p: ParameterSet, which: str):
    """Mass points + residues of d(mu) ('poly-mu') or dm ('type-I-m')."""
    if which == "poly-mu":
        quad = p.as_tuple()
    elif which == "type-I-m":
        quad = p.type_i_quad()
    else:
        raise ValueError(f"unknown measure kind {which!r}")
    return _masses_from_quad(quad)


def k0_type_II(t: float) -> int:
    """Smallest integer k with t - k < 0."""
    return int(math.floor(t)) + 1


def masses_type_II(ctx: TypeIIContext, k_max: int):
    """(point, mass) pairs (i(t-k), H_k) for k = k0 .. k_max.

    H_k = i C Res H at i(t-k); the closed form carries the constant
    2(k-t)/pi^2 (the residue of 1/(Gamma(+-2ix) sin pi(t+-ix)) pair).
    """
    t = ctx.t
    quad = ctx.params.type_i_quad()
    k0 = k0_type_II(t)
    if k_max < k0:
        return []
    lg = 0.0 + 0.0j
    for e in quad:
        lg += log_gamma(e + t) + log_gamma(e - t)
    base = complex(np.exp(lg)) * ctx.norm_const * 2.0 / math.pi**2
    # H_{k0} from the closed form, then the term ratio in k
    poch = 1.0 + 0.0j
    for e in quad:
        poch *= pochhammer(e - t, k0) / pochhammer(1 - e - t, k0)
    out = []
    h = base * (k0 - t) * poch
    for k in range(k0, k_max + 1):
        if k > k0:
            ratio = (k - t) / (k - 1 - t)
            for e in quad:
                ratio *= (e - t + k - 1) / (k - e - t)
            h = h * ratio
        if abs(h.imag) > 1e-8 * abs(h):
            raise PoleError(f"type-II mass H_{k} came out non-real: {h}")
        out.append((1j * (t - k), h.real))
    return out


# ----------------------------------------------------------------------
# Measure specifications.

@dataclass
class MeasureSpec:
    """A continuous weight on (0, inf) plus discrete mass points.

    ``weight`` includes the 1/2pi normalization (and the constant C for
    the type-II measure), so that

        integral f = int_0^inf f(x) weight(x) dx + sum f(point) * mass.

    ``decay_power`` is the algebraic part of the large-x envelope
    weight(x) ~ K x^decay_power e^(-decay_rate x).
    """

    kind: str
    weight: object
    masses: list
    decay_power: float
    decay_rate: float
    ctx: TypeIIContext | None = None
    params: ParameterSet | None = None

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "masses": [
                {"point": [z.real, z.imag], "mass": m} for z, m in self.masses
            ],
            "decay_power": self.decay_power,
            "decay_rate": self.decay_rate,
        }


def _sum_re(quad):
    return float(sum(complex(e).real for e in quad))


def measure_poly_mu(p: ParameterSet) -> MeasureSpec:
    quad = p.as_tuple()
    return MeasureSpec(
        kind="poly-mu",
        weight=lambda x: weight_w(x, p) / TWO_PI,
        masses=masses_type_I(p, "poly-mu"),
        decay_power=2 * _sum_re(quad) - 3,
        decay_rate=TWO_PI,
        params=p,
    )


def measure_type_i(p: ParameterSet) -> MeasureSpec:
    quad = p.type_i_quad()
    return MeasureSpec(
        kind="type-I-m",
        weight=lambda x: weight_M(x, p) / TWO_PI,
        masses=masses_type_I(p, "type-I-m"),
        decay_power=2 * _sum_re(quad) - 3,
        decay_rate=TWO_PI,
        params=p,
    )


def measure_neretin(p: ParameterSet) -> MeasureSpec:
    # three gamma pairs up, one down: the e^(-pi x) factors cancel exactly
    # and the weight decays like a pure power of x (finitely many moments)
    a, b, c, d = p.as_tuple()
    power = 2 * _sum_re((a, b, c)) - 2 * (1 - complex(d).real) - 1
    return MeasureSpec(
        kind="neretin",
        weight=lambda x: weight_neretin(x, p) / TWO_PI,
        masses=[],
        decay_power=power,
        decay_rate=0.0,
        params=p,
    )


def measure_type_ii(ctx: TypeIIContext, k_max: int = 500) -> MeasureSpec:
    quad = ctx.params.type_i_quad()
    C = ctx.norm_const
    return MeasureSpec(
        kind="type-II-h",
        weight=lambda x: C * weight_H(x, ctx) / TWO_PI,
        masses=masses_type_II(ctx, k_max),
        decay_power=2 * _sum_re(quad) - 3,
        decay_rate=2 * TWO_PI,
        ctx=ctx,
        params=ctx.params,
    )


# ----------------------------------------------------------------------
# Quadrature.

@dataclass
class QuadratureConfig:
    """Knobs of the quadrature engine.

    x_max = None lets the engine place the continuous cutoff from the
    weight envelope; k_max caps the type-II mass summation; osc_scale
    declares the spectral modulus of the kernel (phi_lambda oscillates
    like x^(-2 i lambda), so panels shrink proportionally to x/osc_scale).
    """

    rel_tol: float = 1e-9
    x_max: float | None = None
    k_max: int = 500
    nodes_per_panel: int = 15
    osc_scale: float = 0.0
    max_refine: int = 400


@dataclass
class TransformResult:
    value: complex
    quad_error: float
    tail_error: float

    def to_json_dict(self):
        return {
            "re": self.value.real,
            "im": self.value.imag,
            "quad_error": self.quad_error,
            "tail_error": self.tail_error,
        }


@dataclass
class GrowthEnvelope:
    """Declared large-x behaviour |f(x)| <= K x^power e^(rate x)."""

    power: float = 0.0
    rate: float = 0.0


_GL_CACHE: dict = {}


def _gl_rule(n):
    if n not in _GL_CACHE:
        xk, wk = np.polynomial.legendre.leggauss(n)
        _GL_CACHE[n] = (xk, wk)
    return _GL_CACHE[n]


def _auto_x_max(spec: MeasureSpec, env: GrowthEnvelope, rel_tol: float) -> float:
    """Smallest cutoff where the integrand envelope undercuts the target."""
    p = spec.decay_power + env.power
    r = spec.decay_rate - env.rate
    if r <= 0.05 and p >= -1.05:
        raise ValueError(
            "integrand envelope does not decay; declare a tighter growth class"
        )

    def log_env(x):
        return p * math.log(x) - r * x

    ref = max(log_env(x) for x in np.linspace(0.5, 12.0, 24))
    target = ref + math.log(rel_tol * 1e-2 + 1e-300)
    x = 10.0
    while x < 60.0 and log_env(x) > target:
        x += 1.0
    return min(60.0, x)


@dataclass
class Grid:
    """Panel quadrature nodes with an embedded high/low order pair.

    The measure weight is folded into the node weights, so integrating f
    against the continuous part is a dot product with f(nodes).
    """

    nodes: np.ndarray
    w_hi: np.ndarray
    w_lo: np.ndarray
    hi_slice: slice
    lo_slice: slice
    panels: list
    n_hi: int
    n_lo: int
    x_max: float

    def integrate(self, fvals):
        """Continuous integral of f from its values on ``self.nodes``."""
        fvals = np.asarray(fvals)
        hi = fvals[..., self.hi_slice] * self.w_hi
        lo = fvals[..., self.lo_slice] * self.w_lo
        val = hi.sum(axis=-1)
        # panel-wise embedded error
        nh, nl = self.n_hi, self.n_lo
        ph = hi.reshape(fvals.shape[:-1] + (-1, nh)).sum(axis=-1)
        pl = lo.reshape(fvals.shape[:-1] + (-1, nl)).sum(axis=-1)
        err = np.abs(ph - pl).sum(axis=-1)
        return val, err


def _panel_layout(x_max: float, osc_scale: float, far_edge: float | None = None):
    """Unit panels, pre-split where the kernel phase 2*lam*ln(x) is steep;
    power-law weights get geometrically growing far-field panels."""
    edges = [0.0]
    while edges[-1] < x_max - 1e-9:
        s = edges[-1]
        width = min(1.0, x_max - s)
        if s < 1.0:
            width = min(width, 0.25 if s < 0.5 else 0.5)
        if osc_scale > 0:
            width = min(width, max(0.02, 1.2 * max(s, 0.3) / osc_scale))
        edges.append(min(x_max, s + width))
    if far_edge is not None:
        while edges[-1] < far_edge:
            edges.append(min(far_edge, 2.0 * edges[-1]))
    return edges


def build_grid(spec: MeasureSpec, cfg: QuadratureConfig, env: GrowthEnvelope | None = None) -> Grid:
    """Lay out panels for the continuous part of a measure and fold the
    weight into the node weights.  Panels are refined by bisection until
    the embedded-pair error of the weight itself meets the tolerance."""
    env = env or GrowthEnvelope()
    x_max = cfg.x_max or _auto_x_max(spec, env, cfg.rel_tol)
    # slowly-decaying pure power-law envelopes need a geometric far field:
    # x^(p+1) must fall below the tolerance before truncation.  Faster
    # power laws (p < -3) are already negligible at the default cutoff.
    far_edge = None
    p_tot = spec.decay_power + env.power
    r_tot = spec.decay_rate - env.rate
    if cfg.x_max is None and r_tot <= 0.05 and -3.0 < p_tot < -1.05:
        ratio = (cfg.rel_tol * 1e-2) ** (1.0 / (p_tot + 1.0))
        far_edge = min(1e30, x_max * max(1.0, ratio))
    edges = _panel_layout(x_max, cfg.osc_scale, far_edge)
    panels = [(edges[i], edges[i + 1]) for i in range(len(edges) - 1)]

    n_hi = cfg.nodes_per_panel
    n_lo = max(4, n_hi // 2)
    xh, wh = _gl_rule(n_hi)
    xl, wl = _gl_rule(n_lo)

    def weight_err(panel_list):
        errs = []
        for lo, hi in panel_list:
            h = 0.5 * (hi - lo)
            mid = 0.5 * (hi + lo)
            fh = spec.weight(mid + h * xh)
            fl = spec.weight(mid + h * xl)
            errs.append(abs(h * (fh * wh).sum() - h * (fl * wl).sum()))
        return errs

    errs = weight_err(panels)
    total_w = abs(
        sum(
            0.5 * (hi - lo) * (spec.weight(0.5 * (hi + lo) + 0.5 * (hi - lo) * xh) * wh).sum()
            for lo, hi in panels
        )
    ) + 1e-300
    rounds = 0
    while (
        rounds < cfg.max_refine
        and len(panels) < 4000
        and sum(errs) > 0.02 * cfg.rel_tol * total_w
    ):
        worst = int(np.argmax(errs))
        lo, hi = panels.pop(worst)
        errs.pop(worst)
        mid = 0.5 * (lo + hi)
        new = [(lo, mid), (mid, hi)]
        panels[worst:worst] = new
        errs[worst:worst] = weight_err(new)
        rounds += 1
    panels.sort()

    hi_nodes, hi_w, lo_nodes, lo_w = [], [], [], []
    for lo, hi in panels:
        h = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        hi_nodes.append(mid + h * xh)
        hi_w.append(h * wh)
        lo_nodes.append(mid + h * xl)
        lo_w.append(h * wl)
    hi_nodes = np.concatenate(hi_nodes)
    lo_nodes = np.concatenate(lo_nodes)
    w_hi = np.concatenate(hi_w) * spec.weight(hi_nodes)
    w_lo = np.concatenate(lo_w) * spec.weight(lo_nodes)
    nodes = np.concatenate([hi_nodes, lo_nodes])
    return Grid(
        nodes=nodes,
        w_hi=w_hi,
        w_lo=w_lo,
        hi_slice=slice(0, hi_nodes.size),
        lo_slice=slice(hi_nodes.size, nodes.size),
        panels=panels,
        n_hi=n_hi,
        n_lo=n_lo,
        x_max=float(edges[-1]),
    )


def _continuous_tail_error(spec: MeasureSpec, env: GrowthEnvelope, grid: Grid, f_at_end: float):
    """Envelope bound on the truncated continuous tail beyond x_max.

    ``f_at_end`` is |f| near the cutoff; the integrand envelope beyond is
    continued as x^p e^(-r x) with p, r from the weight decay and the
    declared growth class of f.
    """
    p = spec.decay_power + env.power
    r = spec.decay_rate - env.rate
    x = grid.x_max
    w_end = float(np.atleast_1d(spec.weight(np.array([x - 1e-9])))[0])
    dens = abs(w_end) * f_at_end
    if r > 0.05:
        return dens / r * (1 + max(0.0, p) / (r * x))
    if p < -1.05:
        return dens * x / (-p - 1)
    return math.inf


def _discrete_sum(f, spec: MeasureSpec, cfg: QuadratureConfig, env: GrowthEnvelope):
    """Sum the mass-point contributions, lazily extending type-II tails."""
    masses = spec.masses
    if not masses:
        return 0.0 + 0.0j, 0.0
    if spec.kind != "type-II-h":
        tot = sum(m * f(z) for z, m in masses)
        return tot, 0.0
    tot = 0.0 + 0.0j
    small = 0
    quad = spec.ctx.params.type_i_quad()
    # H_k ~ (2 pi^2 / C) k^(2 Re(a+b+c-d) - 1), i.e. 2 sum(Re quad) - 3
    q_pow = 2 * _sum_re(quad) - 3
    last = 0.0
    k_used = 0
    for z, m in masses:
        term = m * f(z)
        tot += term
        k_used += 1
        last = abs(term)
        if last <= cfg.rel_tol * 1e-2 * (abs(tot) + 1e-300):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    pw = q_pow + env.power
    k_last = k0_type_II(spec.ctx.t) + k_used - 1
    if last == 0.0:
        tail = 0.0
    elif pw < -1.05:
        tail = last * max(k_last, 1) / (-pw - 1)
    else:
        tail = math.inf if small < 3 else last * max(k_last, 1)
    return tot, tail


def _vec_eval(f, nodes):
    """Evaluate f on a node array, falling back to a scalar loop for
    evaluators that only accept scalars."""
    try:
        out = np.asarray(f(nodes), dtype=complex)
        if out.shape == nodes.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([f(x) for x in nodes], dtype=complex)


def integrate(f, spec: MeasureSpec, cfg: QuadratureConfig | None = None, env: GrowthEnvelope | None = None) -> TransformResult:
    """integral of f against the measure: adaptive continuous part plus the
    discrete mass-point sum.  ``f`` must accept numpy arrays of real x (or
    scalars) and single complex mass points."""
    cfg = cfg or QuadratureConfig()
    env = env or GrowthEnvelope()
    grid = build_grid(spec, cfg, env)
    fvals = _vec_eval(f, grid.nodes)
    val, err = grid.integrate(fvals)
    f_end = float(np.abs(fvals[grid.hi_slice][-1]))
    tail = _continuous_tail_error(spec, env, grid, f_end)
    disc, disc_tail = _discrete_sum(f, spec, cfg, env)
    if err > cfg.rel_tol * (abs(val + disc) + 1e-300) * 1e3:
        raise ToleranceError(
            f"embedded quadrature error {err:.2e} exceeds budget for tolerance {cfg.rel_tol}"
        )
    return TransformResult(
        value=complex(val + disc),
        quad_error=float(err),
        tail_error=float(tail + disc_tail),
    )


def pairing_n(f, g, n_cut: float, p: ParameterSet, cfg: QuadratureConfig | None = None) -> complex:
    """The truncated pairing <f, g>_N: continuous part up to N plus the
    full discrete sum of the type-I measure."""
    cfg = cfg or QuadratureConfig()
    spec = measure_type_i(p)
    local = QuadratureConfig(
        rel_tol=cfg.rel_tol,
        x_max=float(n_cut),
        nodes_per_panel=cfg.nodes_per_panel,
        osc_scale=cfg.osc_scale,
    )
    grid = build_grid(spec, local)
    fv = _vec_eval(f, grid.nodes) * _vec_eval(g, grid.nodes)
    val, _ = grid.integrate(fv)
    disc = sum(m * f(z) * g(z) for z, m in spec.masses)
    return complex(val + disc)


def wronskian(f, g, z, p: ParameterSet, n_nodes: int = 64) -> complex:
    """The boundary pairing [f, g](z): a fixed-order line integral of

        (f(x) g(x-i) - f(x-i) g(x)) B(x) M(x) / 2pi

    along the vertical segment from z to z+i."""
    z = complex(z)
    xk, wk = _gl_rule(n_nodes)
    ts = 0.5 * (xk + 1.0)
    ws = 0.5 * wk
    quad = p.type_i_quad()
    total = 0.0 + 0.0j
    for t_, w_ in zip(ts, ws):
        x = z + 1j * t_
        for e in quad:
            if abs((e + 1j * x) - round((e + 1j * x).real)) < 1e-8 and (e + 1j * x).real < 0.5:
                raise PoleError(f"segment passes near a pole of M at x={x}")
        bm = operator_coeffs(x, p).B_at * weight_at_complex(x, quad)
        total += w_ * (f(x) * g(x - 1j) - f(x - 1j) * g(x)) * bm
    return total * 1j / TWO_PI
