"""The Wilson function transforms of type I and type II.

Both transforms integrate f against the kernel phi_lambda over a spectral
measure; the inverse transform is the forward transform with dual
parameters, so there is exactly one code path.  Evaluating a transform at
many spectral points shares one kernel matrix phi[lambda_j, x_i], which is
what makes nested (round-trip) quadrature affordable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hyperg import gammaprod, log_gamma, pochhammer
from .measures import (
    GrowthEnvelope,
    MeasureSpec,
    QuadratureConfig,
    TransformResult,
    build_grid,
    measure_type_i,
    measure_type_ii,
)
from .params import ParameterSet, TypeIIContext
from .wilsonfunc import phi_matrix, wilson_fn_row
from .wilsonpoly import wilson_poly

TWO_PI = 2.0 * math.pi


def _phi_growth_power(p: ParameterSet) -> float:
    """|phi_lambda(x)| ~ x^Re(d-a-b-c) e^(pi x) for real lambda."""
    a, b, c, d = p.as_tuple()
    return float((d - a - b - c).real)


# ----------------------------------------------------------------------
# The declared test-function grammar (closed-form integrands with known
# growth envelopes, matching the explicit-transform theorems).

@dataclass
class TestFunction:
    """A symbolic integrand: const, Wilson polynomial, its sin-damped
    variant, the Jacobi-function composite, or the gamma-damped polynomial.

    The declared kind fixes the growth envelope used for tail bounds.
    """

    kind: str
    n: int = 0
    u: float = 0.0
    f: float = 0.0
    g: float = 0.0

    @classmethod
    def from_json_dict(cls, obj):
        kind = obj.get("kind")
        if kind not in (
            "const",
            "wilson_poly",
            "sin_damped_wilson_poly",
            "jacobi_phi",
            "gamma_damped_poly",
        ):
            raise ValueError(f"unknown test-function kind {kind!r}")
        return cls(
            kind=kind,
            n=int(obj.get("n", 0)),
            u=float(obj.get("u", 0.0)),
            f=float(obj.get("f", 0.0)),
            g=float(obj.get("g", 0.0)),
        )

    def build(self, p: ParameterSet, ctx: TypeIIContext | None = None):
        """Return (evaluator, growth envelope, vanishes_at_type2_masses)."""
        a, b, c, d = p.as_tuple()
        if self.kind == "const":
            return (lambda x: np.ones_like(np.asarray(x, dtype=complex)),
                    GrowthEnvelope(0.0, 0.0), False)
        if self.kind == "wilson_poly":
            basis = ParameterSet(a, b, c, 1 - d)
            n = self.n
            return (lambda x: wilson_poly(n, np.asarray(x, dtype=complex), basis, "recurrence"),
                    GrowthEnvelope(2.0 * n, 0.0), False)
        if self.kind == "sin_damped_wilson_poly":
            if ctx is None:
                raise ValueError("sin-damped kinds need a type-II context")
            basis = ParameterSet(a, b, c, 1 - d)
            n, t = self.n, ctx.t

            def fn(x):
                x = np.asarray(x, dtype=complex)
                damp = np.sin(np.pi * (t + 1j * x)) * np.sin(np.pi * (t - 1j * x))
                return damp * wilson_poly(n, x, basis, "recurrence")

            return fn, GrowthEnvelope(2.0 * n, TWO_PI), True
        if self.kind == "jacobi_phi":
            u = self.u
            fn = _jacobi_composite(p, u)
            power = float(max(0.0, 1.0 - 2 * (b + c).real))
            if ctx is None:
                return fn, GrowthEnvelope(power, 0.0), False
            t = ctx.t

            def damped(x):
                x = np.asarray(x, dtype=complex)
                return np.sin(np.pi * (t + 1j * x)) * np.sin(np.pi * (t - 1j * x)) * fn(x)

            return damped, GrowthEnvelope(power, TWO_PI), True
        if self.kind == "gamma_damped_poly":
            ff, gg, n = self.f, self.g, self.n
            basis = ParameterSet(ff, b, c, gg)

            def fn(x):
                x = np.asarray(x, dtype=complex)
                damp = np.exp(log_gamma(gg + 1j * x) + log_gamma(gg - 1j * x))
                return damp * wilson_poly(n, x, basis, "recurrence")

            env = GrowthEnvelope(2 * gg - 1 + 2 * n, -math.pi)
            if ctx is None:
                return fn, env, False
            t = ctx.t

            def damped(x):
                x = np.asarray(x, dtype=complex)
                return np.sin(np.pi * (t + 1j * x)) * np.sin(np.pi * (t - 1j * x)) * fn(x)

            return damped, GrowthEnvelope(env.power, TWO_PI - math.pi), True
        raise ValueError(f"unknown test-function kind {self.kind!r}")


def _jacobi_composite(p: ParameterSet, u: float):
    """phi(x) = 2F1(c+ix, c-ix; b+c; -u): the Jacobi-function composite
    phi^(b+c-1, c-b)_{2x}(u) entering the explicit transform theorem."""
    from .jacobi import hyp2f1

    _, b, c, _ = p.as_tuple()

    def fn(x):
        x = np.asarray(x, dtype=complex)
        out = np.empty(x.shape, dtype=complex)
        for i, xi in enumerate(x.ravel()):
            out.ravel()[i] = hyp2f1(c + 1j * xi, c - 1j * xi, b + c, -u)
        return out

    return fn


# ----------------------------------------------------------------------
# Forward transforms.

def _eval_on_measure(fvals_nodes, fvals_masses, grid, masses):
    val, err = grid.integrate(fvals_nodes)
    disc = sum(m * v for (z, m), v in zip(masses, fvals_masses))
    return val + disc, err


def transform_I(f, lam, p: ParameterSet, cfg: QuadratureConfig | None = None,
                env: GrowthEnvelope | None = None) -> TransformResult:
    """(F f)(lambda) = integral f(x) phi_lambda(x) dm(x).

    ``env`` declares the growth class of f (default: bounded); membership
    of the transformable class is the caller's responsibility.
    """
    res = transform_I_many(f, [lam], p, cfg, env)
    return res[0]


def transform_I_many(f, lams, p: ParameterSet, cfg: QuadratureConfig | None = None,
                     env: GrowthEnvelope | None = None) -> list:
    cfg = cfg or QuadratureConfig()
    env = env or GrowthEnvelope()
    spec = measure_type_i(p)
    return _transform_many(f, lams, p, spec, cfg, env)


def transform_II(f, lam, ctx: TypeIIContext, cfg: QuadratureConfig | None = None,
                 env: GrowthEnvelope | None = None,
                 vanishes_at_masses: bool = False) -> TransformResult:
    """(G f)(lambda) = integral f(x) phi_lambda(x) dh(x)."""
    return transform_II_many(f, [lam], ctx, cfg, env, vanishes_at_masses)[0]


def transform_II_many(f, lams, ctx: TypeIIContext, cfg: QuadratureConfig | None = None,
                      env: GrowthEnvelope | None = None,
                      vanishes_at_masses: bool = False) -> list:
    cfg = cfg or QuadratureConfig()
    env = env or GrowthEnvelope()
    spec = measure_type_ii(ctx, cfg.k_max)
    if vanishes_at_masses:
        spec = MeasureSpec(
            kind=spec.kind, weight=spec.weight, masses=[],
            decay_power=spec.decay_power, decay_rate=spec.decay_rate,
            ctx=ctx, params=ctx.params,
        )
    return _transform_many(f, lams, ctx.params, spec, cfg, env, ctx=ctx)


def _transform_many(f, lams, p, spec, cfg, env, ctx=None):
    """Shared transform driver: one kernel matrix over all requested
    spectral points, continuous dot products plus mass sums."""
    lams = [complex(l) for l in lams]
    phi_env_rate = math.pi
    total_env = GrowthEnvelope(env.power + _phi_growth_power(p), env.rate + phi_env_rate)
    osc = 2.0 * max((abs(l) for l in lams), default=0.0)
    local = QuadratureConfig(
        rel_tol=cfg.rel_tol, x_max=cfg.x_max, k_max=cfg.k_max,
        nodes_per_panel=cfg.nodes_per_panel,
        osc_scale=max(cfg.osc_scale, osc), max_refine=cfg.max_refine,
    )
    grid = build_grid(spec, local, total_env)
    fn = np.asarray(f(grid.nodes), dtype=complex)
    mass_pts = [z for z, _ in spec.masses]
    fm = np.asarray(f(np.array(mass_pts)), dtype=complex) if mass_pts else np.array([])

    out = []
    from .measures import _continuous_tail_error, _discrete_sum

    for lam in lams:
        phi_n = wilson_fn_row(grid.nodes, lam, p)
        integrand = fn * phi_n
        val, err = grid.integrate(integrand)
        f_end = float(np.abs(integrand[grid.hi_slice][-1]))
        tail = _continuous_tail_error(spec, total_env, grid, f_end)
        disc_tail = 0.0
        if mass_pts:
            if spec.kind == "type-II-h":
                phi_m = _phi_at_type2_points(mass_pts, lam, ctx)
            else:
                phi_m = wilson_fn_row(np.array(mass_pts), lam, p)
            gm = fm * phi_m

            def g_at(z, _vals=dict(zip(mass_pts, gm))):
                return _vals[z]

            disc, disc_tail = _discrete_sum(g_at, spec, cfg, env)
            val = val + disc
        out.append(TransformResult(value=complex(val), quad_error=float(err),
                                   tail_error=float(tail + disc_tail)))
    return out


def _phi_at_type2_points(points, lam, ctx: TypeIIContext):
    """phi_lambda at the mass points i(t-k), via the d-expansion (stable
    for large k where the generic representations cancel badly)."""
    from .wilsonfunc import phi_type2_masses

    ks = np.array([int(round(ctx.t - (z / 1j).real)) for z in points])
    return phi_type2_masses(ks, lam, ctx)


def poly_transform_rhs(n: int, lam, p: ParameterSet) -> complex:
    """Closed form of the type-I transform of R_n(.; a,b,c,1-d):

        (F R_n)(lambda) = (-1)^n (b+c)_n / (1+a-d)_n R_n(lambda; dual basis).
    """
    a, b, c, d = p.as_tuple()
    pd = p.dual()
    basis = ParameterSet(pd.a, pd.b, pd.c, 1 - pd.d)
    coef = (-1) ** n * pochhammer(b + c, n) / pochhammer(1 + a - d, n)
    return coef * wilson_poly(n, complex(lam), basis)


def jacobi_transform_rhs(lam, u: float, p: ParameterSet) -> complex:
    """Closed form of the type-I transform of the Jacobi composite
    phi(x) = 2F1(c+ix, c-ix; b+c; -u):

        (F phi)(lambda) = (1+u)^(-c~ + i lam)
                          2F1(a~+i lam, 1-d~+i lam; 1+a~-d~; -u).

    (The exponent follows from the substitution mu - delta - beta = ix - c;
    verified numerically against the quadrature route.)
    """
    from .jacobi import hyp2f1

    pd = p.dual()
    at, _, ct, dt = pd.as_tuple()
    il = 1j * complex(lam)
    return (1 + u) ** (-ct + il) * hyp2f1(at + il, 1 - dt + il, 1 + at - dt, -u)


def gamma_damped_transform_rhs(n: int, lam, p: ParameterSet, f: float, g: float) -> complex:
    """Closed form of the type-I transform of Gamma(g +- ix) R_n(x; f,b,c,g):
    the terminating 4F3 with the Gamma(g+a)...Gamma(g+1-d) prefactor."""
    a, b, c, d = p.as_tuple()
    bt = p.dual().b
    il = 1j * complex(lam)
    pref = gammaprod(
        [g + a, g + b, g + c, g + 1 - d],
        [g + bt + c + il, g + bt + c - il],
    )
    coef = (
        pochhammer(g + b, n)
        * pochhammer(g + c, n)
        / (pochhammer(f + b, n) * pochhammer(f + c, n))
    )
    from .hyperg import SeriesSpec, hyp_sum

    series = hyp_sum(
        SeriesSpec(
            tops=[-n, b + c + f + g + n - 1, g + 1 - d, g + a],
            bottoms=[f + g, g + bt + c + il, g + bt + c - il],
            argument=1.0,
        )
    )
    return pref * coef * series.value


# ----------------------------------------------------------------------
# Nested quadrature: round trips and Parseval.

def _dual_measure_and_params(kind, p_or_ctx, k_max=500):
    if kind == "I":
        p = p_or_ctx
        pd = p.dual()
        return measure_type_i(p), measure_type_i(pd), p, pd, None, None
    ctx = p_or_ctx
    ctx_d = ctx.dual()
    return (
        measure_type_ii(ctx, k_max),
        measure_type_ii(ctx_d, k_max),
        ctx.params,
        ctx_d.params,
        ctx,
        ctx_d,
    )


def round_trip(kind: str, testfn: TestFunction, p_or_ctx, test_points,
               cfg: QuadratureConfig | None = None) -> float:
    """max over test points of |(inverse o forward) f - f| / (1 + |f|),
    computed by honest nested quadrature over the measure and its dual."""
    cfg = cfg or QuadratureConfig(rel_tol=1e-7)
    spec, spec_d, p, pd, ctx, ctx_d = _dual_measure_and_params(kind, p_or_ctx, cfg.k_max)
    f, env, vanishes = (
        testfn.build(p, ctx) if kind == "II" else testfn.build(p)
    )

    # outer measure: the dual; the outer integrand h(lam) phi_lam(x0) M~(lam)
    h_env = GrowthEnvelope(env.power, 0.0)
    outer_env = GrowthEnvelope(h_env.power + _phi_growth_power(pd), math.pi)
    test_points = [complex(z) for z in test_points]
    outer_cfg = QuadratureConfig(
        rel_tol=cfg.rel_tol, x_max=cfg.x_max, k_max=cfg.k_max,
        nodes_per_panel=cfg.nodes_per_panel,
        osc_scale=2.0 * max([abs(z) for z in test_points] + [1.0]),
        max_refine=cfg.max_refine,
    )
    grid_out = build_grid(spec_d, outer_cfg, outer_env)
    outer_masses = spec_d.masses

    lam_nodes = list(grid_out.nodes) + [z for z, _ in outer_masses]
    lam_max = max(abs(z) for z in lam_nodes)

    inner_cfg = QuadratureConfig(
        rel_tol=cfg.rel_tol * 1e-2, x_max=cfg.x_max, k_max=cfg.k_max,
        nodes_per_panel=cfg.nodes_per_panel, osc_scale=2.0 * lam_max,
        max_refine=cfg.max_refine,
    )
    inner_env = GrowthEnvelope(env.power + _phi_growth_power(p), env.rate + math.pi)
    grid_in = build_grid(spec, inner_cfg, inner_env)
    inner_masses = [] if (kind == "II" and vanishes) else spec.masses

    # kernel matrix over all outer nodes x all inner evaluation points
    xs = np.concatenate([grid_in.nodes, np.array([z for z, _ in inner_masses], dtype=complex)]) \
        if inner_masses else grid_in.nodes
    cols_f = np.asarray(f(xs), dtype=complex)
    n_cont = grid_in.nodes.size

    h_vals = []
    for lam in lam_nodes:
        if kind == "II" and inner_masses:
            phi_cont = wilson_fn_row(grid_in.nodes, lam, p)
            phi_mass = _phi_at_type2_points([z for z, _ in inner_masses], lam, ctx)
            row = np.concatenate([phi_cont, phi_mass])
        else:
            row = wilson_fn_row(xs, lam, p)
        integrand = cols_f * row
        val, _ = grid_in.integrate(integrand[:n_cont])
        val += sum(m * integrand[n_cont + i] for i, (z, m) in enumerate(inner_masses))
        h_vals.append(val)
    h_cont = np.array(h_vals[: grid_out.nodes.size])
    h_mass = h_vals[grid_out.nodes.size:]

    worst = 0.0
    for x0 in test_points:
        # kernel for the outer transform: phi_lambda(x0) over outer lambda
        ker_cont = wilson_fn_row(grid_out.nodes, x0, pd)
        val, _ = grid_out.integrate(h_cont * ker_cont)
        for (z, m), hv in zip(outer_masses, h_mass):
            if kind == "II":
                kv = _phi_at_type2_points([z], x0, ctx_d)[0]
            else:
                kv = wilson_fn_row(np.array([z]), x0, pd)[0]
            val += m * hv * kv
        fx = complex(np.asarray(f(np.array([x0])), dtype=complex)[0])
        worst = max(worst, abs(val - fx) / (1.0 + abs(fx)))
    return worst


def parseval_check(tf1: TestFunction, tf2: TestFunction, p: ParameterSet,
                   cfg: QuadratureConfig | None = None) -> float:
    """| <Ff, Fg>_m~ - <f, g>_m | / |<f, g>_m| for type-I transforms."""
    lhs, rhs = transform_pair_inner(tf1, tf2, p, cfg)
    return abs(lhs - rhs) / abs(rhs)


def transform_pair_inner(tf1: TestFunction, tf2: TestFunction, p: ParameterSet,
                         cfg: QuadratureConfig | None = None):
    """(<Ff, Fg>_m~, <f, g>_m) by nested quadrature (the Parseval pair)."""
    cfg = cfg or QuadratureConfig(rel_tol=1e-7)
    pd = p.dual()
    spec, spec_d = measure_type_i(p), measure_type_i(pd)
    f, env_f, _ = tf1.build(p)
    g, env_g, _ = tf2.build(p)

    outer_env = GrowthEnvelope(env_f.power + env_g.power, 0.0)
    grid_out = build_grid(spec_d, QuadratureConfig(rel_tol=cfg.rel_tol), outer_env)
    lam_nodes = list(grid_out.nodes) + [z for z, _ in spec_d.masses]
    lam_max = max(abs(z) for z in lam_nodes)

    inner_cfg = QuadratureConfig(rel_tol=cfg.rel_tol * 1e-2, osc_scale=2.0 * lam_max)
    inner_env = GrowthEnvelope(
        max(env_f.power, env_g.power) + _phi_growth_power(p), math.pi
    )
    grid_in = build_grid(spec, inner_cfg, inner_env)
    xs = np.concatenate(
        [grid_in.nodes, np.array([z for z, _ in spec.masses], dtype=complex)]
    ) if spec.masses else grid_in.nodes
    fv = np.asarray(f(xs), dtype=complex)
    gv = np.asarray(g(xs), dtype=complex)
    n_cont = grid_in.nodes.size

    Ff, Fg = [], []
    for lam in lam_nodes:
        row = wilson_fn_row(xs, lam, p)
        for vals, acc in ((fv, Ff), (gv, Fg)):
            integrand = vals * row
            v, _ = grid_in.integrate(integrand[:n_cont])
            v += sum(
                m * integrand[n_cont + i] for i, (z, m) in enumerate(spec.masses)
            )
            acc.append(v)
    Ff, Fg = np.array(Ff), np.array(Fg)
    nq = grid_out.nodes.size
    lhs, _ = grid_out.integrate(Ff[:nq] * np.conj(Fg[:nq]))
    lhs += sum(
        m * Ff[nq + i] * np.conj(Fg[nq + i]) for i, (z, m) in enumerate(spec_d.masses)
    )

    rhs_cont, _ = grid_in.integrate(fv[:n_cont] * np.conj(gv[:n_cont]))
    rhs = rhs_cont + sum(
        m * fv[n_cont + i] * np.conj(gv[n_cont + i])
        for i, (z, m) in enumerate(spec.masses)
    )
    return complex(lhs), complex(rhs)
