"""Identity-verification suites.

Every suite turns a family of identities into (lhs, rhs, deviation,
tolerance) cases at desk-scale parameters.  The same functions back both
the command-line ``verify`` command and the acceptance test module, so
there is exactly one definition of each check.

Random points are drawn from numpy's seeded PCG64 generator, which is
reproducible across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hyperg import (
    DivergenceError,
    SeriesSpec,
    gammaprod,
    hyp_sum,
    log_gamma,
    pochhammer,
    rgamma,
)
from .jacobi import (
    JacobiParams,
    WilJacParams,
    connection_2f1_deviation,
    verify_h1,
    verify_jacobi_orthogonality,
    verify_koornwinder,
    verify_wil_jac,
    wil_jac_rhs,
    wil_jac_rhs_w76,
)
from .measures import (
    GrowthEnvelope,
    QuadratureConfig,
    build_grid,
    integrate,
    k0_type_II,
    masses_type_I,
    masses_type_II,
    measure_neretin,
    measure_poly_mu,
    measure_type_i,
    measure_type_ii,
    pairing_n,
    weight_at_complex,
    weight_H,
    weight_M,
    weight_w,
    wronskian,
)
from .params import ParameterSet, TypeIIContext, validate_type_I, validate_type_II
from .transforms import (
    TestFunction,
    gamma_damped_transform_rhs,
    jacobi_transform_rhs,
    parseval_check,
    poly_transform_rhs,
    round_trip,
    transform_I,
    transform_I_many,
    transform_II_many,
)
from .wilsonfunc import (
    apply_L,
    big_phi,
    c_expansion,
    c_tilde,
    d_expansion,
    d_tilde,
    expansion_4f3_products,
    operator_coeffs,
    phi_type2_masses,
    wilson_fn,
    wilson_fn_row,
    wilson_fn_w76,
)
from .wilsonpoly import apply_Lambda, recurrence_coeffs, wilson_norm, wilson_poly

# Desk-scale parameter sets used across the suites.
P_MAIN = ParameterSet(0.7, 0.9, 1.1, 0.3)        # a+d = 1, in V, self-checks the
                                                 # degenerate-pairing handling
P_POLY = ParameterSet(0.7, 0.9, 1.1, 1.3)        # classical Wilson measure
P_POLY_MASS = ParameterSet(-0.35, 0.9, 1.1, 1.3)  # d(mu) with one mass point
P_MASS = ParameterSet(0.7, 0.9, 1.1, 1.45)       # dm with one mass point
P_SELF_DUAL = ParameterSet(1.4, 0.8, 0.8, 0.8)   # a = b+c+d-1
P_NORM = ParameterSet(0.38, 0.41, 0.43, -2.3)    # dual measure has mass points
P_NERETIN = ParameterSet(0.1, 0.1, 0.1, -1.5)
V_SETS = [
    P_MAIN,
    ParameterSet(0.7, 0.9, 1.1, 0.35),
    ParameterSet(0.6, 0.5 + 1.0j, 0.5 - 1.0j, 0.7),
    P_SELF_DUAL,
    P_MASS,
]


def type2_context(t: float = 0.25) -> TypeIIContext:
    return validate_type_II(
        ParameterSet(0.5 + 0.2j, 0.3 + 0.1j, 0.3 - 0.1j, 0.5 + 0.2j), t
    )


@dataclass
class Case:
    """One verified identity instance."""

    case_id: str
    inputs: dict
    lhs: complex
    rhs: complex
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    def to_json_dict(self):
        return {
            "id": self.case_id,
            "inputs": self.inputs,
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class VerifyReport:
    """Result of one suite run."""

    suite: str
    seed: int
    cases: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def worst(self) -> float:
        return max((c.deviation / c.tolerance for c in self.cases), default=0.0)

    def to_json_dict(self):
        return {
            "suite": self.suite,
            "seed": self.seed,
            "pass": self.passed,
            "cases": [c.to_json_dict() for c in self.cases],
        }


def _case(cid, inputs, lhs, rhs, tol, floor=0.0):
    lhs, rhs = complex(lhs), complex(rhs)
    dev = abs(lhs - rhs) / max(abs(rhs), floor, 1e-300)
    return Case(cid, inputs, lhs, rhs, dev, tol)


def _fmt(z):
    z = complex(z)
    if abs(z.imag) < 1e-14 * (1 + abs(z)):
        return round(z.real, 12)
    return [z.real, z.imag]


# ----------------------------------------------------------------------


def suite_duality(seed=42, tol=1e-10):
    """Self-duality of the Wilson function on random points in [0,4]^2."""
    rng = np.random.default_rng(seed)
    cases = []
    for ip, p in enumerate(V_SETS):
        pd = p.dual()
        pts = rng.uniform(0.0, 4.0, size=(20, 2))
        worst = (0.0, None, 0.0, 0.0)
        for x, lam in pts:
            v = wilson_fn(x, lam, p)
            vd = wilson_fn(lam, x, pd)
            dev = abs(v - vd) / max(abs(v), abs(vd), 1e-300)
            if dev >= worst[0]:
                worst = (dev, (x, lam), v, vd)
        dev, pt, v, vd = worst
        cases.append(
            Case(
                f"duality-set{ip}",
                {"params": [_fmt(v_) for v_ in p.as_tuple()], "worst_point": [round(pt[0], 6), round(pt[1], 6)]},
                complex(v), complex(vd), dev, tol,
            )
        )
    # evenness and realness ride along on the first set
    p = V_SETS[0]
    x, lam = 1.3, 0.8
    v = wilson_fn(x, lam, p)
    cases.append(_case("evenness-x", {"x": x, "lam": lam}, wilson_fn(-x, lam, p), v, 1e-12))
    cases.append(_case("evenness-lam", {"x": x, "lam": lam}, wilson_fn(x, -lam, p), v, 1e-12))
    cases.append(_case("realness", {"x": x, "lam": lam}, complex(v.imag), 0.0, 1e-12, floor=abs(v)))
    cases.append(
        _case("two-route-w76", {"x": 0.4, "lam": 0.3}, wilson_fn_w76(0.4, 0.3, p), wilson_fn(0.4, 0.3, p), 1e-10)
    )
    return cases


def suite_eigen(seed=42, tol=1e-8):
    """Difference-equation residuals and the kernel-level gamma identities."""
    rng = np.random.default_rng(seed)
    cases = []
    p = P_MAIN
    pd = p.dual()
    s = sum(p.as_tuple())
    worst_L = (0.0, None)
    worst_Lam = (0.0, None)
    for _ in range(25):
        x = float(rng.uniform(0.15, 4.0))
        lam = float(rng.uniform(0.05, 3.0))
        n = int(rng.integers(0, 7))
        fphi = lambda z: wilson_fn(z, lam, p)
        lhs = apply_L(fphi, x, p)
        rhs = (lam**2 + pd.a**2) * fphi(x)
        dev = abs(lhs - rhs) / (1 + abs(rhs))
        if dev > worst_L[0]:
            worst_L = (dev, (x, lam, lhs, rhs))
        fpol = lambda z: wilson_poly(n, z, p)
        lhs2 = apply_Lambda(fpol, x, p)
        rhs2 = n * (n + s - 1) * fpol(x)
        dev2 = abs(lhs2 - rhs2) / (1 + abs(rhs2))
        if dev2 > worst_Lam[0]:
            worst_Lam = (dev2, (x, n, lhs2, rhs2))
    dev, (x, lam, lhs, rhs) = worst_L
    cases.append(Case("L-eigen-phi", {"worst_x": round(x, 6), "lam": round(lam, 6)}, lhs, rhs, dev, tol))
    dev2, (x2, n2, lhs2, rhs2) = worst_Lam
    cases.append(Case("Lambda-eigen-poly", {"worst_x": round(x2, 6), "n": n2}, lhs2, rhs2, dev2, tol))

    # A(x) + B(x) collapses to a cubic over 2ix
    a, b, c, d = p.as_tuple()
    x = 0.37
    oc = operator_coeffs(x, p)
    ix = 1j * x
    cases.append(
        _case("A-plus-B", {"x": x}, oc.A_at + oc.B_at, (a + ix) * (b + ix) * (c + ix) / (2 * ix), 1e-13)
    )
    # L on R_n(.; a,b,c,1-d) is the three-term combination of the dual coeffs
    basis = ParameterSet(a, b, c, 1 - d)
    basis_dual = ParameterSet(pd.a, pd.b, pd.c, 1 - pd.d)
    n, x = 3, 0.8
    rc = recurrence_coeffs(n, basis)
    rcd = recurrence_coeffs(n, basis_dual)
    lhs = apply_L(lambda z: wilson_poly(n, z, basis), x, p)
    rhs = (
        rc.C_n * wilson_poly(n + 1, x, basis)
        + (rcd.C_n + rcd.D_n) * wilson_poly(n, x, basis)
        + rc.D_n * wilson_poly(n - 1, x, basis)
    )
    cases.append(_case("L-three-term", {"n": n, "x": x}, lhs, rhs, 1e-10))
    # recurrence-coefficient duality identity
    lhs = rc.C_n + rc.D_n + rcd.C_n + rcd.D_n
    rhs = n * (n + a + b + c - d) + a * a + a * b + a * c + b * c
    cases.append(_case("coeff-duality", {"n": n}, lhs, rhs, 1e-13))

    # kernel-level gamma identities (reflection, recurrence, Gauss, modulus)
    zs = rng.uniform(-5, 5, size=(200, 2))
    worst = 0.0
    for re, im in zs:
        z = complex(re, im)
        if min(abs(z - round(z.real)), abs(1 - z - round(1 - z.real))) < 0.05:
            continue
        lhs = np.exp(log_gamma(z) + log_gamma(1 - z))
        rhs = math.pi / np.sin(math.pi * z)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    cases.append(Case("gamma-reflection", {"points": 200}, worst, 0.0, worst, 1e-11))
    worst = 0.0
    for re, im in zs[:100]:
        z = complex(re, im)
        if abs(z - round(z.real)) < 0.05 or abs(z + 1 - round(z.real + 1)) < 0.05:
            continue
        lhs = np.exp(log_gamma(z + 1))
        rhs = z * np.exp(log_gamma(z))
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    cases.append(Case("gamma-recurrence", {"points": 100}, worst, 0.0, worst, 1e-12))
    a1, b1, c1 = 0.3, 0.4, 1.9
    sv = hyp_sum(SeriesSpec([a1, b1], [c1], 1.0))
    cases.append(
        _case("gauss-2f1", {"a": a1, "b": b1, "c": c1}, sv.value, gammaprod([c1, c1 - a1 - b1], [c1 - a1, c1 - b1]), 1e-11)
    )
    worst = 0.0
    for x in rng.uniform(0.05, 8.0, 50):
        lhs = 1.0 / np.exp(log_gamma(2j * x) + log_gamma(-2j * x))
        rhs = 2 * x * np.sinh(2 * math.pi * x) / math.pi
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    cases.append(Case("gamma-modulus", {"points": 50}, worst, 0.0, worst, 1e-11))
    return cases


def _gram_cases(p, measure, label, n_max, tol, rng):
    grid = build_grid(measure, QuadratureConfig(rel_tol=1e-10), GrowthEnvelope(power=4 * n_max, rate=0.0))
    polys = [wilson_poly(n, grid.nodes.astype(complex), p, "recurrence") for n in range(n_max + 1)]
    pmass = [[wilson_poly(n, z, p) for z, _ in measure.masses] for n in range(n_max + 1)]
    norms = [wilson_norm(n, p) for n in range(n_max + 1)]
    cases = []
    worst_diag = (0.0, 0, 0.0, 0.0)
    worst_off = (0.0, (0, 1), 0.0)
    for i in range(n_max + 1):
        for j in range(i, n_max + 1):
            val, _ = grid.integrate(polys[i] * polys[j])
            val += sum(m * pmass[i][k] * pmass[j][k] for k, (z, m) in enumerate(measure.masses))
            val = complex(val).real
            if i == j:
                dev = abs(val - norms[i]) / norms[i]
                if dev > worst_diag[0]:
                    worst_diag = (dev, i, val, norms[i])
            else:
                dev = abs(val) / math.sqrt(norms[i] * norms[j])
                if dev > worst_off[0]:
                    worst_off = (dev, (i, j), val)
    dev, i, val, ref = worst_diag
    cases.append(Case(f"{label}-diag", {"worst_n": i}, val, ref, dev, tol))
    dev, (i, j), val = worst_off
    cases.append(Case(f"{label}-offdiag", {"worst_nm": [i, j]}, val, 0.0, dev, tol))
    return cases


def suite_orthogonality(seed=42, tol=1e-8):
    """Gram matrices of R_0..R_6, the truncated-pairing/Wronskian identity,
    and the type-I discrete-spectrum norm."""
    rng = np.random.default_rng(seed)
    cases = []
    cases += _gram_cases(P_POLY, measure_poly_mu(P_POLY), "gram-cont", 6, tol, rng)
    cases += _gram_cases(P_POLY_MASS, measure_poly_mu(P_POLY_MASS), "gram-mass", 6, tol, rng)

    # n = 0 norm against the direct closed form
    cases.append(
        _case(
            "norm0-gammas",
            {"params": [_fmt(v) for v in P_POLY.as_tuple()]},
            wilson_norm(0, P_POLY),
            gammaprod(
                [P_POLY.a + P_POLY.b, P_POLY.a + P_POLY.c, P_POLY.a + P_POLY.d,
                 P_POLY.b + P_POLY.c, P_POLY.b + P_POLY.d, P_POLY.c + P_POLY.d],
                [sum(P_POLY.as_tuple())],
            ),
            1e-12,
        )
    )

    # truncated pairing vs Wronskian (N = 10)
    p = P_MAIN
    lam1, lam2 = 0.7, 1.3
    f1 = lambda z: wilson_fn(z, lam1, p)
    f2 = lambda z: wilson_fn(z, lam2, p)
    lhs = pairing_n(f1, f2, 10.0, p, QuadratureConfig(rel_tol=1e-10, osc_scale=2 * (lam1 + lam2)))
    rhs = wronskian(f1, f2, 10.0, p) / (lam1**2 - lam2**2)
    cases.append(_case("pairing-vs-wronskian", {"N": 10, "lams": [lam1, lam2]}, lhs, rhs, 1e-6))
    # Wronskian antisymmetry and oddness
    w12 = wronskian(f1, f2, 10.0, p)
    w21 = wronskian(f2, f1, 10.0, p)
    cases.append(_case("wronskian-antisym", {"z": 10.0}, w12, -w21, 1e-12))
    wneg = wronskian(f1, f2, -10.0 - 1e-9j * 0, p)
    cases.append(_case("wronskian-odd", {"z": 10.0}, wneg, -w12, 1e-9))
    cases.append(_case("wronskian-ff", {"z": 10.0}, wronskian(f1, f1, 10.0, p), 0.0, 1e-12, floor=abs(w12)))

    # discrete-spectrum norm (type I): <phi_lam, phi_lam> = 1/(i Res M~)
    cases.append(_discrete_norm_type_i_case())
    return cases


def _discrete_norm_type_i_case():
    p = P_NORM
    pd = p.dual()
    dual_masses = masses_type_I(pd, "type-I-m")
    point, dual_mass = dual_masses[0]   # deepest point i(a~), a~ ~ -1.04
    lam = point
    spec = measure_type_i(p)
    # |phi_lam(x)|^2 M(x) ~ x^(4 Im(lam) - 1): a pure power law at the
    # discrete spectral points, so the envelope rate exactly cancels
    pw = 2 * (p.d - p.a - p.b - p.c).real + 4 * lam.imag
    env = GrowthEnvelope(power=pw, rate=2 * math.pi)
    res = integrate(
        lambda x: wilson_fn_row(np.atleast_1d(x), lam, p) ** 2
        if isinstance(x, np.ndarray)
        else wilson_fn(x, lam, p) ** 2,
        spec,
        QuadratureConfig(rel_tol=1e-9),
        env,
    )
    return _case(
        "discrete-norm-I",
        {"lam": _fmt(lam), "params": [_fmt(v) for v in p.as_tuple()]},
        res.value,
        1.0 / dual_mass,
        1e-5,
    )


def suite_c_expansion(seed=42, tol=1e-10):
    """Reconstruction from the asymptotically pure components and the link
    between the c-function and the dual weight."""
    rng = np.random.default_rng(seed)
    p = P_MAIN
    pd = p.dual()
    cases = []
    worst_rec = (0.0, None)
    worst_w = (0.0, None)
    for _ in range(50):
        lam = float(rng.uniform(0.05, 4.0))
        x = float(rng.uniform(0.1, 3.0))
        ce = c_expansion(x, lam, p)
        v = wilson_fn(x, lam, p)
        dev = abs(ce.reconstruct() - v) / abs(v)
        if dev > worst_rec[0]:
            worst_rec = (dev, (x, lam, ce.reconstruct(), v))
        m_dual = weight_M(lam, pd)
        prod = ce.c_plus * ce.c_minus * m_dual
        devw = abs(prod - 1.0)
        if devw > worst_w[0]:
            worst_w = (devw, (lam, prod))
    dev, (x, lam, lhs, rhs) = worst_rec
    cases.append(Case("c-reconstruction", {"worst_x": round(x, 6), "lam": round(lam, 6)}, lhs, rhs, dev, tol))
    devw, (lam, prod) = worst_w
    cases.append(Case("dual-weight-link", {"worst_lam": round(lam, 6)}, prod, 1.0, devw, tol))

    # c~(-lam) vanishes on the dual discrete spectrum
    pn = P_NORM
    lam0 = masses_type_I(pn.dual(), "type-I-m")[0][0]
    cases.append(
        _case("c-discrete-zero", {"lam": _fmt(lam0)}, c_tilde(-lam0, pn), 0.0, 1e-14, floor=abs(c_tilde(lam0, pn)))
    )
    return cases


def suite_transforms_poly(seed=42, tol=1e-5):
    """The polynomial image of the type-I transform, norm preservation,
    self-duality, the unit transform, and the explicit 2F1/4F3 images."""
    cases = []
    lams = [0.3, 0.7, 1.2, 1.9, 2.6]
    cfg = QuadratureConfig(rel_tol=1e-9)
    for label, p in (("plain", P_MAIN), ("mass", P_MASS)):
        worst = (0.0, None)
        for n in range(5):
            f, env, _ = TestFunction("wilson_poly", n=n).build(p)
            res = transform_I_many(f, lams, p, cfg, env)
            for lam, r in zip(lams, res):
                rhs = poly_transform_rhs(n, lam, p)
                dev = abs(r.value - rhs) / abs(rhs)
                if dev > worst[0]:
                    worst = (dev, (n, lam, r.value, rhs))
        dev, (n, lam, lhs, rhs) = worst
        cases.append(Case(f"poly-map-{label}", {"worst_n": n, "lam": lam}, lhs, rhs, dev, tol))

    # norm preservation ||F R_n||~ / ||R_n|| = 1
    p = P_MAIN
    pd = p.dual()
    basis = ParameterSet(p.a, p.b, p.c, 1 - p.d)
    basis_d = ParameterSet(pd.a, pd.b, pd.c, 1 - pd.d)
    worst = (0.0, None)
    for n in range(5):
        coef = abs(pochhammer(p.b + p.c, n) / pochhammer(1 + p.a - p.d, n)) ** 2
        lhs = coef * wilson_norm(n, basis_d)
        rhs = wilson_norm(n, basis)
        dev = abs(lhs - rhs) / abs(rhs)
        if dev > worst[0]:
            worst = (dev, (n, lhs, rhs))
    dev, (n, lhs, rhs) = worst
    cases.append(Case("norm-preservation", {"worst_n": n}, lhs, rhs, dev, tol))

    # self-duality at a = b+c+d-1
    psd = P_SELF_DUAL
    f, env, _ = TestFunction("wilson_poly", n=2).build(psd)
    r1 = transform_I(f, 0.9, psd, cfg, env)
    f2, _, _ = TestFunction("wilson_poly", n=2).build(psd.dual())
    r2 = transform_I(f2, 0.9, psd.dual(), cfg, env)
    cases.append(_case("self-dual", {"lam": 0.9}, r1.value, r2.value, 1e-9))

    # unit transform (F 1)(lam) = 1
    f, env, _ = TestFunction("const").build(p)
    worst = (0.0, None)
    for lam in (0.5, 1.5, 3.0):
        r = transform_I(f, lam, p, cfg, env)
        dev = abs(r.value - 1.0)
        if dev > worst[0]:
            worst = (dev, (lam, r.value))
    dev, (lam, val) = worst
    cases.append(Case("unit-transform", {"worst_lam": lam}, val, 1.0, dev, 1e-6))

    # Jacobi-composite image (explicit 2F1 transform)
    worst = (0.0, None)
    for u in (0.5, 1.5):
        f, env, _ = TestFunction("jacobi_phi", u=u).build(p)
        for lam in (0.5, 1.5, 3.0):
            r = transform_I(f, lam, p, cfg, env)
            rhs = jacobi_transform_rhs(lam, u, p)
            dev = abs(r.value - rhs) / abs(rhs)
            if dev > worst[0]:
                worst = (dev, (u, lam, r.value, rhs))
    dev, (u, lam, lhs, rhs) = worst
    cases.append(Case("jacobi-image", {"worst_u": u, "lam": lam}, lhs, rhs, dev, 1e-6))

    # gamma-damped polynomial image (terminating 4F3 transform)
    ff, gg = 0.8, 0.6
    worst = (0.0, None)
    for n in (0, 1, 2):
        f, env, _ = TestFunction("gamma_damped_poly", n=n, f=ff, g=gg).build(p)
        for lam in (0.5, 1.7):
            r = transform_I(f, lam, p, cfg, env)
            rhs = gamma_damped_transform_rhs(n, lam, p, ff, gg)
            dev = abs(r.value - rhs) / abs(rhs)
            if dev > worst[0]:
                worst = (dev, (n, lam, r.value, rhs))
    dev, (n, lam, lhs, rhs) = worst
    cases.append(Case("gamma-damped-image", {"worst_n": n, "lam": lam}, lhs, rhs, dev, 1e-6))
    return cases


def suite_round_trip(seed=42, tol=1e-5):
    """Unitarity: inverse-after-forward on polynomial test functions and
    the Parseval identity, all by honest nested quadrature."""
    from .transforms import transform_pair_inner

    p = P_MAIN
    cfg = QuadratureConfig(rel_tol=1e-7)
    cases = []
    dev = round_trip("I", TestFunction("const"), p, [0.3, 1.0], cfg)
    cases.append(Case("round-trip-const", {"points": [0.3, 1.0]}, dev, 0.0, dev, 1e-6))
    for n in (1, 2):
        dev = round_trip("I", TestFunction("wilson_poly", n=n), p, [0.3, 1.0, 2.2], cfg)
        cases.append(Case(f"round-trip-R{n}", {"points": [0.3, 1.0, 2.2]}, dev, 0.0, dev, tol))
    # Parseval on the polynomial span, normalized by the norms
    basis = ParameterSet(p.a, p.b, p.c, 1 - p.d)
    for (i, j) in ((0, 0), (2, 2), (1, 3)):
        lhs, rhs = transform_pair_inner(
            TestFunction("wilson_poly", n=i), TestFunction("wilson_poly", n=j), p, cfg
        )
        scale = math.sqrt(wilson_norm(i, basis) * wilson_norm(j, basis))
        dev = abs(lhs - rhs) / scale
        cases.append(Case(f"parseval-{i}{j}", {"pair": [i, j]}, lhs, rhs, dev, tol))
    return cases


def suite_wil_jac(seed=42, tol=1e-6):
    """The product-of-Jacobi-functions integral against its closed form,
    the basic Beta/Gauss integral, and the 2F1 connection formula."""
    rng = np.random.default_rng(seed)
    cases = []
    # the spec-listed tuple is not absolutely integrable; flag it honestly
    listed = WilJacParams(0.6, 0.2, 0.3, 0.8, 0.4, 0.5)
    try:
        verify_wil_jac(listed)
        detected = 0.0
    except DivergenceError:
        detected = 1.0
    cases.append(
        Case("divergence-detected", {"point": [0.6, 0.2, 0.3, 0.8, 0.4, 0.5]}, detected, 1.0, abs(detected - 1.0), 0.5)
    )
    # admissible neighbours of the listed point
    for wp in (
        WilJacParams(0.6, 0.2, 0.3, 1.3, 0.4, 0.5),
        WilJacParams(0.55, -0.15, 0.25, 1.1, 0.3, 0.35),
    ):
        lhs, rhs, dev = verify_wil_jac(wp)
        cases.append(
            Case("wil-jac", {"point": [wp.alpha, wp.beta, wp.gamma, wp.delta, wp.mu, wp.rho]}, lhs, rhs, dev, tol)
        )
    # W-route cross-check where the 7F6 converges
    wp = WilJacParams(0.6, 0.2, 0.3, 1.3, 0.4, 0.5)
    cases.append(
        _case("wil-jac-w76-route", {"point": [0.6, 0.2, 0.3, 1.3, 0.4, 0.5]}, wil_jac_rhs_w76(wp), wil_jac_rhs(wp), 1e-12)
    )
    # the Beta/Gauss integral at random admissible points
    worst = (0.0, None)
    for _ in range(10):
        al = float(rng.uniform(0.3, 1.2))
        be = float(rng.uniform(-0.3, 0.6))
        ga = float(rng.uniform(0.2, 0.8))
        de = float(rng.uniform(0.5, 1.4))
        rho = float(rng.uniform(0.05, min(ga + de - 0.05, 0.9)))
        lhs, rhs, dev = verify_h1(al, be, ga, de, rho, rel_tol=1e-10)
        if dev > worst[0]:
            worst = (dev, ([al, be, ga, de, rho], lhs, rhs))
    dev, (pt, lhs, rhs) = worst
    cases.append(Case("h1-integral", {"worst_point": [round(v, 4) for v in pt]}, lhs, rhs, dev, 1e-7))
    # 2F1 connection formula away from degenerate 2*gamma
    worst = (0.0, None)
    for _ in range(10):
        y = float(rng.uniform(0.05, 0.95))
        dev = connection_2f1_deviation(0.6, 0.3, 0.4, y)
        if dev > worst[0]:
            worst = (dev, y)
    cases.append(Case("2f1-connection", {"worst_y": round(worst[1], 4)}, worst[0], 0.0, worst[0], 1e-9))
    return cases


def suite_koornwinder(seed=42, tol=1e-6):
    """Koornwinder's Jacobi-to-Wilson integral and the Jacobi orthogonality."""
    cases = []
    for n in (0, 1, 2):
        lhs, rhs, dev = verify_koornwinder(n, 0.6, 0.2, 0.3, 0.8, 0.5)
        cases.append(Case(f"koornwinder-n{n}", {"point": [0.6, 0.2, 0.3, 0.8, 0.5], "n": n}, lhs, rhs, dev, tol))
    jp = JacobiParams(0.7, 0.4)
    worst = (0.0, None)
    for (n, m) in ((0, 0), (1, 1), (3, 3), (0, 1), (1, 3), (2, 3)):
        lhs, rhs, dev = verify_jacobi_orthogonality(n, m, jp)
        if dev > worst[0]:
            worst = (dev, ((n, m), lhs, rhs))
    dev, ((n, m), lhs, rhs) = worst
    cases.append(Case("jacobi-orth", {"worst_nm": [n, m]}, lhs, rhs, dev, 1e-9))
    # the product expansion converges to the Wilson function (slow power
    # law; ~1500 terms reach the 1e-6 neighbourhood)
    p = P_MAIN
    ref = wilson_fn(0.5, 0.7, p)
    val, _ = expansion_4f3_products(0.5, 0.7, p, 1.0, 1.0, 1500)
    cases.append(_case("product-expansion", {"x": 0.5, "lam": 0.7, "n_max": 1500}, val, ref, 1e-6))
    return cases


def suite_neretin(seed=42, tol=1e-6):
    """The finite orthogonality relation with the Gamma-quotient weight.

    The weight decays like a pure power of x (its exponential factors
    cancel), so each degree pair gets its own far-field reach.
    """
    p = P_NERETIN
    a, b, c, d = (v.real for v in p.as_tuple())
    spec = measure_neretin(p)
    s = a + b + c + d
    cases = []
    pref = gammaprod([a + b, a + c, b + c, 1 - s], [1 - a - d, 1 - b - d, 1 - c - d]).real

    def closed_norm(n):
        return complex(
            (s - 1)
            / (s + 2 * n - 1)
            * math.factorial(n)
            * pochhammer(b + c, n)
            * pochhammer(b + d, n)
            * pochhammer(c + d, n)
            / (
                pochhammer(a + b, n)
                * pochhammer(a + c, n)
                * pochhammer(a + d, n)
                * pochhammer(s - 1, n)
            )
            * pref
        )

    for n in range(0, 2):
        for m in range(n, 3 - n):   # n + m <= 2
            grid = build_grid(
                spec,
                QuadratureConfig(rel_tol=1e-9),
                GrowthEnvelope(power=2.0 * (n + m), rate=0.0),
            )
            fn = wilson_poly(n, grid.nodes.astype(complex), p, "recurrence")
            fm = wilson_poly(m, grid.nodes.astype(complex), p, "recurrence")
            val, _ = grid.integrate(fn * fm)
            val = complex(val).real
            if n == m:
                cases.append(_case(f"neretin-{n}{m}", {"n": n, "m": m}, val, closed_norm(n), tol))
            else:
                scale = math.sqrt(abs(closed_norm(n) * closed_norm(m)))
                cases.append(Case(f"neretin-{n}{m}", {"n": n, "m": m}, val, 0.0, abs(val) / scale, tol))
    return cases


def suite_type2(seed=42, tol=1e-5):
    """Everything type II: the sin-damped polynomial image, the d-expansion,
    mass positivity and decay, the dual-shift involution, and the
    discrete-spectrum norm."""
    cases = []
    ctx = type2_context(0.25)
    C = ctx.norm_const
    # context involution and the invariance of C
    ctx_d = ctx.dual()
    cases.append(_case("shift-involution", {"t": ctx.t}, validate_type_II(ctx_d.params, ctx_d.t).t_dual, ctx.t, 1e-12))
    cases.append(_case("C-self-dual", {"t": ctx.t}, validate_type_II(ctx_d.params, ctx_d.t).norm_const, C, 1e-12))
    cases.append(_case("k0", {"t": 0.25}, k0_type_II(0.25), 1.0, 0.0))

    # mass positivity and power-law decay
    ms = masses_type_II(ctx, 400)
    all_pos = 1.0 if all(m > 0 for _, m in ms) else 0.0
    cases.append(Case("mass-positivity", {"k_max": 400}, all_pos, 1.0, abs(all_pos - 1.0), 0.5))
    quad = ctx.params.type_i_quad()
    q = 2 * sum(e.real for e in quad) - 3
    ratio = ms[-1][1] * C / (2 * math.pi**2 * 400.0**q)
    cases.append(Case("mass-decay", {"k": 400}, ratio, 1.0, abs(ratio - 1.0), 2e-3))

    # closed-form residue against numerical extraction at k = 1
    z0 = 1j * (ctx.t - 1)
    vals = []
    for th in np.linspace(0, 2 * math.pi, 8, endpoint=False):
        z = z0 + 1e-5 * np.exp(1j * th)
        w = weight_at_complex(z, quad)
        w /= np.sin(math.pi * (ctx.t + 1j * z)) * np.sin(math.pi * (ctx.t - 1j * z))
        vals.append((z - z0) * w)
    res_num = 1j * np.mean(vals) * C
    cases.append(_case("mass-residue-oracle", {"k": 1}, res_num, ms[0][1], 1e-9))

    # H * sin-product = M on the real line
    xs = np.linspace(0.3, 6.0, 7)
    h = weight_H(xs, ctx)
    m_ = weight_M(xs, ctx.params)
    sinprod = np.sin(math.pi * ctx.t) ** 2 + np.sinh(math.pi * xs) ** 2
    dev = float(np.max(np.abs(h * sinprod - m_) / np.abs(m_)))
    cases.append(Case("H-sin-M", {"points": 7}, dev, 0.0, dev, 1e-12))

    # d-expansion reconstruction at mass points (the k <= 3 references come
    # from the independent two-4F3 representation inside wilson_fn)
    worst = (0.0, None)
    for k in (1, 2, 5, 9):
        for lam in (0.4, 1.3):
            de = d_expansion(k, lam, ctx)
            ref = wilson_fn(1j * (ctx.t - k), lam, ctx.params)
            dev = abs(de.reconstruct() - ref) / abs(ref)
            if dev > worst[0]:
                worst = (dev, (k, lam, de.reconstruct(), ref))
    dev, (k, lam, lhs, rhs) = worst
    cases.append(Case("d-expansion", {"worst_k": k, "lam": lam}, lhs, rhs, dev, 1e-9))

    # d~ vanishes on the dual discrete spectrum; d~(lam) d~(-lam) inverts H~
    lam0 = 1j * ctx.t_dual   # the k = 0 dual mass point (t~ = -0.05)
    cases.append(
        _case("d-discrete-zero", {"lam": _fmt(lam0)}, d_tilde(-lam0, ctx), 0.0, 1e-12, floor=abs(d_tilde(lam0, ctx)))
    )
    lam_r = 0.9
    lhs = d_tilde(lam_r, ctx) * d_tilde(-lam_r, ctx) * weight_H(lam_r, ctx_d)
    cases.append(_case("H-dual-link", {"lam": lam_r}, lhs, 1.0, 1e-10))

    # the sin-damped polynomial image of the type-II transform
    cfg = QuadratureConfig(rel_tol=1e-9)
    worst = (0.0, None)
    for n in (0, 1, 2):
        tf = TestFunction("sin_damped_wilson_poly", n=n)
        f, env, vanishes = tf.build(ctx.params, ctx)
        res = transform_II_many(f, [0.4, 1.1, 2.2], ctx, cfg, env, vanishes)
        for lam, r in zip([0.4, 1.1, 2.2], res):
            rhs = C * poly_transform_rhs(n, lam, ctx.params)
            dev = abs(r.value - rhs) / abs(rhs)
            if dev > worst[0]:
                worst = (dev, (n, lam, r.value, rhs))
    dev, (n, lam, lhs, rhs) = worst
    cases.append(Case("sin-damped-poly-map", {"worst_n": n, "lam": lam}, lhs, rhs, dev, tol))

    # type-II Jacobi-composite image
    tf = TestFunction("jacobi_phi", u=0.5)
    f, env, vanishes = tf.build(ctx.params, ctx)
    r = transform_II_many(f, [0.8], ctx, cfg, env, vanishes)[0]
    rhs = C * jacobi_transform_rhs(0.8, 0.5, ctx.params)
    cases.append(_case("sin-damped-jacobi-map", {"u": 0.5, "lam": 0.8}, r.value, rhs, 1e-6))

    # discrete-spectrum norm (type II) at t = 0.95 (dual shift ~ -0.75)
    cases.append(_discrete_norm_type_ii_case())
    return cases


def _discrete_norm_type_ii_case():
    ctx = type2_context(0.95)
    ctx_d = ctx.dual()
    lam = 1j * ctx.t_dual   # the k = 0 dual mass point
    dual_mass = masses_type_II(ctx_d, 2)[0][1]
    spec = measure_type_ii(ctx, 400)
    pw = 2 * (ctx.params.d - ctx.params.a - ctx.params.b - ctx.params.c).real + 4 * lam.imag

    def f(x):
        if isinstance(x, np.ndarray):
            return wilson_fn_row(x, lam, ctx.params) ** 2
        k = int(round(ctx.t - (complex(x) / 1j).real))
        return complex(phi_type2_masses([k], lam, ctx)[0]) ** 2

    res = integrate(f, spec, QuadratureConfig(rel_tol=1e-9, k_max=400), GrowthEnvelope(power=pw, rate=2 * math.pi))
    return _case(
        "discrete-norm-II",
        {"t": ctx.t, "lam": _fmt(lam)},
        res.value,
        1.0 / dual_mass,
        1e-5,
    )


SUITES = {
    "duality": suite_duality,
    "eigen": suite_eigen,
    "orthogonality": suite_orthogonality,
    "c-expansion": suite_c_expansion,
    "transforms-poly": suite_transforms_poly,
    "round-trip": suite_round_trip,
    "wil-jac": suite_wil_jac,
    "koornwinder": suite_koornwinder,
    "neretin": suite_neretin,
    "type2": suite_type2,
}


def run_suite(name: str, seed: int = 42, tol: float | None = None) -> VerifyReport:
    """Run one named suite (or 'all'); ``tol`` overrides the headline
    tolerance of the suite's primary cases."""
    if name == "all":
        cases = []
        for key in SUITES:
            sub = run_suite(key, seed=seed, tol=None)
            cases.extend(sub.cases)
        return VerifyReport(suite="all", seed=seed, cases=cases)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    fn = SUITES[name]
    cases = fn(seed=seed) if tol is None else fn(seed=seed, tol=tol)
    return VerifyReport(suite=name, seed=seed, cases=cases)
