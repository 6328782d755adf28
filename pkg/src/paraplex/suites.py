"""Named verification suites.

Each suite turns a family of claims into Check records (residual vs
tolerance).  Upper-bound checks pass when residual <= tolerance; nonzero
claims are encoded as residual = max(0, threshold - value) with tolerance 0,
so a pass means the quantity clears the threshold.  Boolean claims encode
pass as residual 0/1.

Sampling is deterministic per seed (PCG64); identical seeds give identical
reports modulo the wall-time field.
"""

from __future__ import annotations

import numpy as np

from . import linespace as LS
from . import pde, planefields, products, spaceforms, tensor, topology
from .errors import NotIsometric, UnknownSuite
from .fields import Chart, MetricField, constant_structure
from .jets import ComplexJet, abs2, complex_pair, cos, fd_oracle, jet_apply, sin
from .report import Check, Timer, VerificationReport
from .structures import classify, isometry_sign, parallel_residual, two_form_values

SUITE_NAMES = ("linespace", "geodesic-spaces", "products", "planefields", "pde", "topology", "engine")


class _Collector:
    def __init__(self, prefix: str, scale: float):
        self.prefix = prefix
        self.scale = scale
        self.checks: list[Check] = []

    def le(self, num: int, desc: str, claim: str, residual: float, tol: float, **extra):
        self.checks.append(
            Check(f"{self.prefix}.{num:02d}", desc, claim, float(residual), tol * self.scale, extra or {})
        )

    def ge(self, num: int, desc: str, claim: str, value: float, threshold: float, **extra):
        thr = threshold / self.scale
        self.checks.append(
            Check(
                f"{self.prefix}.{num:02d}",
                desc,
                claim,
                float(max(0.0, thr - value)),
                0.0,
                {"value": float(value), "threshold": thr, **extra},
            )
        )

    def boolean(self, num: int, desc: str, claim: str, ok: bool, **extra):
        self.checks.append(Check(f"{self.prefix}.{num:02d}", desc, claim, 0.0 if ok else 1.0, 0.0, extra or {}))


def _linespace_points(rng: np.random.Generator, n: int) -> np.ndarray:
    r = rng.uniform(0.1, 0.85, n)
    a = rng.uniform(0.0, 2 * np.pi, n)
    eta = 0.6 * (rng.normal(size=n) + 1j * rng.normal(size=n))
    xi = r * np.exp(1j * a)
    return np.column_stack([xi.real, xi.imag, eta.real, eta.imag])


# ---------------------------------------------------------------------------
# line space
# ---------------------------------------------------------------------------

def linespace_suite(rng: np.random.Generator, scale: float = 1.0) -> list[Check]:
    c = _Collector("linespace", scale)
    G = LS.metric_G()
    pts = _linespace_points(rng, 20)

    sig_ok = all(G.signature_counts(p) == (2, 2) for p in pts)
    c.boolean(1, "metric signature at 20 seeded points", "neutral (2,2) signature", sig_ok)

    inv = tensor.scalar_invariants(G, pts, need_pm=True)
    c.le(2, "scalar curvature over sample", "scalar flat", np.max(np.abs(inv["S"])), 1e-8)
    c.le(3, "Weyl norm over sample", "conformally flat", np.max(np.abs(inv["w2"])), 1e-8)
    emax = min(
        float(np.max(np.abs(tensor.curvature(G, p, need_pm=False).einstein))) for p in pts
    )
    c.ge(4, "traceless Ricci component sup", "not Einstein", emax, 1e-3)

    J0, J1, J2 = LS.structures_J012()
    sq_err = comm_err = prod_err = 0.0
    iso_ok = True
    for p in pts[:10]:
        vs = [J.value(p) for J in (J0, J1, J2)]
        for v, s in zip(vs, (-1, 1, -1)):
            sq_err = max(sq_err, float(np.max(np.abs(v @ v - s * np.eye(4)))))
        comm_err = max(
            comm_err,
            float(np.max(np.abs(vs[0] @ vs[1] - vs[1] @ vs[0]))),
            float(np.max(np.abs(vs[0] @ vs[2] - vs[2] @ vs[0]))),
        )
        prod_err = max(prod_err, float(np.max(np.abs(vs[0] @ vs[1] - vs[2]))))
        g0 = G.value(p)
        iso_ok = iso_ok and [isometry_sign(g0, v)[0] for v in vs] == [1, -1, -1]
    c.le(5, "structure squares (-id, +id, -id)", "commuting complex/para/complex triple", sq_err, 1e-12)
    c.le(6, "pairwise commutation and the product relation", "triple commutes, third = product", max(comm_err, prod_err), 1e-10)
    c.boolean(7, "isometry pattern (+,-,-)", "first isometric, others anti-isometric", iso_ok)

    c.le(8, "covariant derivative of the first structure", "only the complex structure is parallel", parallel_residual(G, J0, pts), 1e-9)
    c.ge(9, "covariant derivative of the reflection structure", "reflection structure not parallel", parallel_residual(G, J1, pts), 1e-3)
    c.ge(10, "covariant derivative of the product structure", "product structure not parallel", parallel_residual(G, J2, pts), 1e-3)

    c.le(11, "Nijenhuis tensor of the first structure", "integrable", float(np.max(np.abs(tensor.nijenhuis(J0, pts)))), 1e-9)
    c.ge(12, "Nijenhuis tensor of the reflection structure", "not integrable", float(np.max(np.abs(tensor.nijenhuis(J1, pts)))), 1e-3)
    # The product structure is stated to be non-integrable, but its +i
    # eigendistribution span(d/dxi + (c/2) d/deta, d/deta-bar) with
    # c = 4 conj(xi) eta / (1 + |xi|^2) is involutive (c carries no conj(eta)
    # dependence), so its Nijenhuis tensor vanishes identically.  The check is
    # kept exactly as stated and fails deliberately to flag the discrepancy;
    # do not weaken it.
    nj2 = float(np.max(np.abs(tensor.nijenhuis(J2, pts))))
    c.checks.append(
        Check(
            "linespace.12b",
            "Nijenhuis tensor of the product structure (stated nonzero)",
            "stated as not integrable; measured identically zero (involutive eigendistribution)",
            max(0.0, 1e-3 / scale - nj2),
            0.0,
            {"value": nj2, "threshold": 1e-3 / scale, "documented_defect": True},
        )
    )

    dmax = anti = 0.0
    for J in (J0, J1):
        w, dw = two_form_values(G, J, pts)
        anti = max(anti, float(np.max(np.abs(w + np.swapaxes(w, -1, -2)))))
        dmax = max(dmax, float(np.max(np.abs(dw))))
    c.le(13, "two-forms from the metric and (para)complex structures", "antisymmetric and closed", max(anti, dmax), 1e-9)

    Gt = LS.metric_G_tilde()
    inv_t = tensor.scalar_invariants(Gt, pts, need_pm=True)
    c.le(14, "second neutral metric: scalar and Weyl", "conformally flat, scalar flat", max(np.max(np.abs(inv_t["S"])), np.max(np.abs(inv_t["w2"]))), 1e-8)
    pb = tensor.pullback_metric(LS.eta_rotation_map(), Gt, pts)
    c.le(15, "isometry with the second metric", "pullback under the quarter-turn equals the metric", float(np.max(np.abs(pb - G.value(pts)))), 1e-10)
    c.le(16, "parallel structure for the second metric", "the complex structure stays parallel", parallel_residual(Gt, J0, pts), 1e-9)
    c.ge(17, "other structures for the second metric", "others stay non-parallel", min(parallel_residual(Gt, J1, pts), parallel_residual(Gt, J2, pts)), 1e-3)

    # conformal representation
    rt = 0.0
    pts100 = _linespace_points(rng, 100)
    for p in pts100:
        line = LS.LinePoint.from_coords(p)
        back = LS.from_conformal(LS.to_conformal(line))
        rt = max(rt, abs(back.xi - line.xi), abs(back.eta - line.eta))
    c.le(18, "conformal chart roundtrip on 100 points", "coordinates invert", rt, 1e-10)

    pb2 = tensor.pullback_metric(LS.conformal_transition(), LS.conformal_metric(), pts)
    c.le(19, "pullback of the conformal-form metric", "conformal factor (1/4)(1 + |dZ|^2/4)^(-1)", float(np.max(np.abs(pb2 - G.value(pts)))), 1e-9)

    axis = LS.pluecker(np.array([0.0, 0.0, 0.0]), np.array([0.0, 0.0, -1.0]))
    c.le(20, "vertical axis maps to the conformal origin", "reflection fixed point", float(np.max(np.abs(LS.conformal_from_pluecker(axis)))), 1e-12)

    refl_err = 0.0
    for p in pts[:10]:
        line = LS.LinePoint.from_coords(p)
        rv = float(rng.normal())
        a = LS.phi(LS.reflect_line(line), -rv)
        b = LS.phi(line, rv) * np.array([-1.0, -1.0, 1.0])
        refl_err = max(refl_err, float(np.max(np.abs(a - b))))
        rr = LS.reflect_line(LS.reflect_line(line))
        refl_err = max(refl_err, abs(rr.xi - line.xi), abs(rr.eta - line.eta))
    c.le(21, "reflection in the vertical axis", "holomorphic formula acts as (x,y,z) -> (-x,-y,z)", refl_err, 1e-9)

    pl_err = 0.0
    count = 0
    while count < 50:
        s = rng.normal(size=3)
        t = rng.normal(size=3)
        q = s - t
        nq = np.linalg.norm(q)
        if nq < 0.3 or q[2] / nq < 0.05:
            continue
        line = LS.line_from_points(s, t)
        if abs(line.xi) >= 0.98:
            continue
        X = LS.conformal_from_pluecker(LS.pluecker(s, t))
        pl_err = max(pl_err, float(np.max(np.abs(X - LS.to_conformal(line).coords()))))
        lam = float(rng.uniform(0.3, 3.0))
        px = LS.pluecker(s, t)
        scaled = LS.PlueckerSextet(lam * px.p, lam * px.q)
        pl_err = max(pl_err, float(np.max(np.abs(LS.conformal_from_pluecker(scaled) - X))))
        count += 1
    c.le(22, "line-coordinate routes agree on 50 lines", "two-point sextet route equals holomorphic route", pl_err, 1e-9)

    pf_err = 0.0
    for p in pts[:10]:
        line = LS.LinePoint.from_coords(p)
        rv = float(rng.normal())
        pf = LS.phi_pushforward(line, rv)
        num = LS.phi_wirtinger_jacobian(line, rv)
        fr = pf["frame"]
        closed_dxi = pf["dxi"]["e_plus"] * fr.e_plus + pf["dxi"]["e0"] * fr.e0
        closed_deta = pf["deta"]["e_plus"] * fr.e_plus
        pf_err = max(
            pf_err,
            float(np.max(np.abs(closed_dxi - num["dxi"]))),
            float(np.max(np.abs(closed_deta - num["deta"]))),
        )
    c.le(23, "point-map pushforwards vs jet evaluation", "closed-form frame decomposition", pf_err, 1e-9)

    omega = lambda xs: (1.0 + 0.25 * abs2(complex_pair(xs)[0] - complex_pair(xs)[1])) ** (-0.5)
    uh = max(pde.ultrahyperbolic_residual(omega, p) for p in _linespace_points(rng, 50))
    c.le(24, "conformal factor satisfies the ultrahyperbolic equation", "scalar flatness in conformal form", uh, 1e-10)
    return c.checks


# ---------------------------------------------------------------------------
# geodesic spaces
# ---------------------------------------------------------------------------

def geodesic_spaces_suite(rng: np.random.Generator, scale: float = 1.0) -> list[Check]:
    c = _Collector("geodesic", scale)
    num = 0
    for p, eps in spaceforms.ADMISSIBLE:
        sig = spaceforms.AmbientSignature(p, eps)
        pts = rng.uniform(-0.35, 0.35, size=(10, 4))
        g = spaceforms.metric_Gp(sig)
        row = spaceforms.table1_verify(sig, pts[:3])
        num += 1
        c.boolean(num, f"{sig.name}: structure table row", "squared signs and isometry classes as tabulated", row["match"], entries=row["entries"])

        Js = spaceforms.structures_JJpJstar(sig)
        par = max(parallel_residual(g, J, pts) for J in Js)
        num += 1
        c.le(num, f"{sig.name}: covariant derivatives of all three structures", "all parallel", par, 1e-8)

        hr = spaceforms.hodge_restriction_residual(sig, pts[:6])
        num += 1
        c.le(num, f"{sig.name}: star operator restricted to the tangent space", "restriction equals minus the composite structure", hr, 1e-9)

        emax = max(float(np.max(np.abs(tensor.curvature(g, u, need_pm=False).einstein))) for u in pts[:6])
        num += 1
        c.le(num, f"{sig.name}: traceless Ricci of the Grassmannian metric", "Einstein metric", emax, 1e-8)

        dec = max(spaceforms.decomposability_residual(sig, u) for u in pts[:6])
        num += 1
        c.le(num, f"{sig.name}: embedded points on the decomposability quadric", "pure bivectors", dec, 1e-10)

        if spaceforms.TABLE1[(p, eps)][2][1] == "isometric":
            gp = spaceforms.metric_Gp_prime(sig)
            ok_neutral = all(gp.signature_counts(u) == (2, 2) for u in pts[:4])
            inv = tensor.scalar_invariants(gp, pts[:6], need_pm=True)
            num += 1
            c.boolean(num, f"{sig.name}: associated metric signature", "neutral", ok_neutral)
            num += 1
            c.le(
                num,
                f"{sig.name}: associated metric curvature",
                "scalar flat and conformally flat",
                max(float(np.max(np.abs(inv["S"]))), float(np.max(np.abs(inv["w2"])))),
                1e-8,
            )
        else:
            try:
                spaceforms.metric_Gp_prime(sig).value(pts[0])
                refused = False
            except NotIsometric:
                refused = True
            num += 1
            c.boolean(num, f"{sig.name}: associated metric refusal", "anti-isometric rows cannot form the associated metric", refused)
    return c.checks


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def products_suite(rng: np.random.Generator, scale: float = 1.0) -> list[Check]:
    c = _Collector("products", scale)
    pts = rng.uniform(-0.4, 0.4, size=(6, 4))
    fixtures = ((1.0, 1.0), (1.0, 0.0), (1.0, 2.0), (1.0, -1.0))

    worst = {"R": 0.0, "ric2": 0.0, "ein2": 0.0}
    factors = []
    for k1, k2 in fixtures:
        for eps in (+1, -1):
            geo = products.build_product(products.sphere_factor(k1), products.sphere_factor(k2), eps)
            cf = products.closed_form_curvature(k1, k2, eps)
            for ptt in pts:
                pack = tensor.curvature(geo.metric, ptt, need_pm=False)
                worst["R"] = max(worst["R"], abs(pack.scalar - cf["R"]))
                worst["ric2"] = max(worst["ric2"], abs(pack.norms["ric2"] - cf["ric2"]))
                worst["ein2"] = max(worst["ein2"], abs(pack.norms["ein2"] - cf["ein2"]))
                if cf["weyl_shape"] > 1e-12:
                    factors.append(pack.norms["w2"] / cf["weyl_shape"])
    c.le(1, "scalar curvature of constant-curvature products", "R = 2(k1 + eps k2)", worst["R"], 1e-7)
    c.le(2, "Ricci norm of constant-curvature products", "|Ric|^2 = 2(k1^2 + k2^2)", worst["ric2"], 1e-7)
    c.le(3, "traceless-Ricci norm of constant-curvature products", "|Ein|^2 = (k1 - eps k2)^2", worst["ein2"], 1e-7)
    spread = max(factors) - min(factors) if factors else 0.0
    c.le(
        4,
        "Weyl norm proportional to (k1 + eps k2)^2 with one global factor",
        "single convention factor across fixtures",
        spread,
        1e-7,
        measured_factor=float(np.mean(factors)),
        published_coefficient=products.PUBLISHED_WEYL_FACTOR,
        measured_over_published=float(np.mean(factors)) / products.PUBLISHED_WEYL_FACTOR,
    )

    ga = products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), +1)
    gb = products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), -1)
    ric_eq = max(
        float(np.max(np.abs(tensor.curvature(ga.metric, ptt, need_pm=False).ricci - tensor.curvature(gb.metric, ptt, need_pm=False).ricci)))
        for ptt in pts
    )
    c.le(5, "Ricci tensors of the two product metrics", "equal componentwise for unequal curvatures", ric_eq, 1e-8)

    for i, (k1, k2, eps, expect) in enumerate((
        (1.0, 1.0, -1, True),
        (1.0, 2.0, -1, False),
        (1.0, -1.0, +1, True),
    )):
        rep = products.corollary_check(k1, k2, eps, pts[:3])
        ok = rep["equivalent"] and rep["curvature_match"] == expect
        c.boolean(6 + i, f"three-way equivalence at (k1,k2,eps)=({k1},{k2},{eps:+d})", "curvature relation <=> conformal flatness <=> opposite metric Einstein", ok, **{k: v for k, v in rep.items() if isinstance(v, (bool, float))})

    par = 0.0
    ok_cls = True
    for geo in (
        products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), +1),
        products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), -1),
        products.build_product(products.bumpy_sphere_factor(0.3), products.sphere_factor(1.0), +1),
        products.build_product(products.bumpy_sphere_factor(0.3), products.flat_factor(), -1),
    ):
        par = max(par, parallel_residual(geo.metric, geo.J, pts))
        ok_cls = ok_cls and all(classify(geo.metric.value(ptt), geo.J.value(ptt)).kind == "isometric" for ptt in pts[:3])
    c.le(9, "parallel residual of the factor-swap structure", "parallel on every product fixture", par, 1e-8)
    c.boolean(10, "classification of the factor-swap structure", "isometric on every product fixture", ok_cls)
    return c.checks


# ---------------------------------------------------------------------------
# plane fields
# ---------------------------------------------------------------------------

def planefields_suite(rng: np.random.Generator, scale: float = 1.0) -> list[Check]:
    c = _Collector("planefields", scale)
    pts = rng.uniform(-0.4, 0.4, size=(4, 4))

    geo = products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), +1)
    span1 = lambda xs: ([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0])
    worst = max(planefields.np_invariants(geo.metric, span1, p).max_invariant() for p in pts)
    c.le(1, "factor-tangent plane invariants on a product", "totally geodesic leaves", worst, 1e-9)

    flat = MetricField(
        Chart("flat"),
        lambda xs: [[1.0 if i == j else 0.0 for j in range(4)] for i in range(4)],
        "riemannian",
        name="flat",
    )

    def sphere_span(xs):
        x0, x1, x2, x3 = xs
        return [-x1, x0, 0.0, 0.0], [x0 * x2, x1 * x2, -(x0 * x0 + x1 * x1), 0.0]

    kerr = 0.0
    for r in (1.0, 2.0):
        u = rng.normal(size=3)
        u = r * u / np.linalg.norm(u)
        if abs(u[2]) > 0.9 * r:
            u = np.array([r * 0.6, r * 0.64, r * np.sqrt(1 - 0.36 - 0.4096)])
        q = np.array([u[0], u[1], u[2], float(rng.normal())])
        inv = planefields.np_invariants(flat, sphere_span, q)
        kerr = max(kerr, abs(inv.leaf_gauss_curvature() - 1.0 / r**2), abs(inv.lam))
    c.le(2, "sphere-slice leaves at radii 1 and 2", "leaf curvature 1/r^2 from twist-free invariants", kerr, 1e-6)

    # three zero and three nonzero equivalence fixtures
    zero_fixtures = [
        ("product of round spheres", geo.metric, geo.J),
        ("flat space, constant splitting", flat, constant_structure(flat.chart, np.diag([1.0, 1.0, -1.0, -1.0]), +1)),
        (
            "product with non-constant factor",
            (geo2 := products.build_product(products.bumpy_sphere_factor(0.3), products.sphere_factor(1.0), +1)).metric,
            geo2.J,
        ),
    ]

    def rot_j(xs):
        x0 = xs[0]
        cth, sth = cos(0.2 * x0), sin(0.2 * x0)
        z = 0.0
        return [
            [-1.0, z, z, z],
            [z, cth, sth, z],
            [z, sth, -1.0 * cth, z],
            [z, z, z, 1.0],
        ]

    def slice_j(xs):
        # +1 eigenplane tangent to the concentric spheres inside x3-slices
        x0, x1, x2, x3 = xs
        r2 = x0 * x0 + x1 * x1 + x2 * x2
        n = [x0, x1, x2]
        out = [[0.0] * 4 for _ in range(4)]
        for a in range(3):
            for b in range(3):
                out[a][b] = (1.0 if a == b else 0.0) - (2.0 / r2) * (n[a] * n[b])
        out[3][3] = -1.0
        return out

    def shear_j(xs):
        x3 = xs[3]
        cth, sth = cos(0.3 * x3), sin(0.3 * x3)
        z = 0.0
        return [
            [cth, z, sth, z],
            [z, 1.0, z, z],
            [sth, z, -1.0 * cth, z],
            [z, z, z, -1.0],
        ]

    from .fields import StructureField

    nonzero_fixtures = [
        ("rotating plane family", flat, StructureField(flat.chart, rot_j, +1, name="rotating")),
        ("sphere tangent splitting", flat, StructureField(flat.chart, slice_j, +1, name="sphere-slices")),
        ("sheared plane family", flat, StructureField(flat.chart, shear_j, +1, name="sheared")),
    ]

    num = 3
    for name, g, j in zero_fixtures:
        rep = planefields.parallel_equivalence_check(g, j, pts)
        c.boolean(num, f"equivalence on zero fixture: {name}", "invariants vanish and structure parallel", rep["equivalent"] and rep["parallel"], **{k: float(v) for k, v in rep.items() if not isinstance(v, (bool, np.bool_))})
        num += 1
    off_axis = pts + np.array([0.8, 0.7, 0.9, 0.0])
    for name, g, j in nonzero_fixtures:
        sample = off_axis if name == "sphere tangent splitting" else pts
        rep = planefields.parallel_equivalence_check(g, j, sample)
        c.boolean(num, f"equivalence on nonzero fixture: {name}", "invariants and parallel residual both clear 1e-3", rep["equivalent"] and not rep["parallel"], **{k: float(v) for k, v in rep.items() if not isinstance(v, (bool, np.bool_))})
        num += 1
    return c.checks


# ---------------------------------------------------------------------------
# PDE residual systems
# ---------------------------------------------------------------------------

def pde_suite(rng: np.random.Generator, scale: float = 1.0) -> list[Check]:
    c = _Collector("pde", scale)
    pts = rng.uniform(-0.6, 0.6, size=(6, 4))
    omega_one = lambda xs: 1.0 + 0.0 * xs[0]
    omega_ls = lambda xs: (1.0 + 0.25 * abs2(complex_pair(xs)[0] - complex_pair(xs)[1])) ** (-0.5)
    omega_bad = lambda xs: 1.0 + abs2(complex_pair(xs)[0])

    c.le(1, "ultrahyperbolic residual of the constant factor", "trivially scalar flat", max(pde.ultrahyperbolic_residual(omega_one, p) for p in pts), 1e-12)
    pts50 = rng.uniform(-0.8, 0.8, size=(50, 4))
    c.le(2, "ultrahyperbolic residual of the line-space factor", "scalar flat conformal representative", max(pde.ultrahyperbolic_residual(omega_ls, p) for p in pts50), 1e-10)
    c.le(3, "ultrahyperbolic residual of 1 + |Z1|^2", "constant unit residual", abs(pde.ultrahyperbolic_residual(omega_bad, pts[0]) - 1.0), 1e-12)

    # zero fixtures: constants for each system family
    zero_alpha = [
        (omega_one, lambda xs: 0.0 * xs[0], lambda xs: 0.0 * xs[0] + np.pi),
        (lambda xs: 2.5 + 0.0 * xs[0], lambda xs: 0.0 * xs[0] + 1.0, lambda xs: 0.0 * xs[0] + 4.0),
    ]
    worst_sys = worst_par = 0.0
    for om, p1, p2 in zero_alpha:
        g = pde.metric_from_omega(om)
        for J, res_fn in ((pde.alpha_structure(p1, p2), pde.alpha_parallel_residual), (pde.beta_structure(p1, p2), pde.beta_parallel_residual)):
            worst_sys = max(worst_sys, max(res_fn(om, p1, p2, p)[0] for p in pts))
            worst_par = max(worst_par, parallel_residual(g, J, pts))
    al0 = lambda xs: ComplexJet._lift(2.0) + 0.0 * xs[0]
    be0 = lambda xs: ComplexJet._lift(0.3 + 0.2j) + 0.0 * xs[0]
    for om in (omega_one, lambda xs: 1.7 + 0.0 * xs[0]):
        g = pde.metric_from_omega(om)
        worst_sys = max(worst_sys, max(pde.isometric_parallel_residual(om, al0, be0, p)[0] for p in pts))
        worst_par = max(worst_par, parallel_residual(g, pde.isometric_structure(al0, be0), pts))
    c.le(4, "system residuals on zero fixtures", "all displayed equations hold", worst_sys, 1e-9)
    c.le(5, "covariant-derivative route on zero fixtures", "assembled structures parallel", worst_par, 1e-9)
    szero = max(
        float(np.max(np.abs(tensor.scalar_invariants(pde.metric_from_omega(om), pts, need_pm=False)["S"])))
        for om, _, _ in zero_alpha
    )
    c.le(6, "scalar curvature on zero fixtures", "parallel structures force scalar flatness", szero, 1e-8)

    # nonzero fixtures: both routes must clear the threshold together
    phi_var = lambda xs: xs[0]
    phi2c = lambda xs: 0.0 * xs[0] + 2.0
    pairs = []
    g1 = pde.metric_from_omega(omega_one)
    gl = pde.metric_from_omega(omega_ls)
    pairs.append((max(pde.alpha_parallel_residual(omega_one, phi_var, phi2c, p)[0] for p in pts), parallel_residual(g1, pde.alpha_structure(phi_var, phi2c), pts)))
    pairs.append((max(pde.alpha_parallel_residual(omega_ls, lambda xs: 0.0 * xs[0] + 0.3, phi2c, p)[0] for p in pts), parallel_residual(gl, pde.alpha_structure(lambda xs: 0.0 * xs[0] + 0.3, phi2c), pts)))
    pairs.append((max(pde.beta_parallel_residual(omega_ls, lambda xs: 0.0 * xs[0] + 0.3, phi2c, p)[0] for p in pts), parallel_residual(gl, pde.beta_structure(lambda xs: 0.0 * xs[0] + 0.3, phi2c), pts)))
    pairs.append((max(pde.isometric_parallel_residual(omega_ls, al0, be0, p)[0] for p in pts), parallel_residual(gl, pde.isometric_structure(al0, be0), pts)))
    al_var = lambda xs: ComplexJet._lift(2.0) + 0.3 * sin(xs[0])
    be_var = lambda xs: ComplexJet._lift(0.4) + 0.2 * (xs[2] * xs[3])
    pairs.append((max(pde.isometric_parallel_residual(omega_one, al_var, be_var, p)[0] for p in pts), parallel_residual(g1, pde.isometric_structure(al_var, be_var), pts)))
    c.ge(7, "system residuals on nonzero fixtures", "no spurious zeros", min(p[0] for p in pairs), 1e-3)
    c.ge(8, "covariant-derivative route on nonzero fixtures", "both routes flag the same fixtures", min(p[1] for p in pairs), 1e-3)

    # polar form == complex form through the exact recombination
    a_p = lambda xs: 1.3 + 0.2 * sin(xs[0]) + 0.1 * xs[2]
    b_p = lambda xs: 0.7 + 0.1 * cos(xs[1])
    th_p = lambda xs: 0.4 * xs[0] + 0.1 * xs[3]
    ph_p = lambda xs: -0.3 + 0.2 * (xs[1] * xs[2])
    om_p = lambda xs: 1.0 + 0.3 * abs2(complex_pair(xs)[0])
    from .jets import exp as jexp
    from .jets import imaginary_unit, seed_point

    alpha_p = lambda xs: ComplexJet._lift(a_p(xs)) * jexp(imaginary_unit() * th_p(xs))
    beta_p = lambda xs: ComplexJet._lift(b_p(xs)) * jexp(imaginary_unit() * ph_p(xs))
    worst_rec = 0.0
    for p in pts:
        _, peqs = pde.polar_parallel_residual(om_p, a_p, b_p, th_p, ph_p, p)
        _, ceqs = pde.isometric_parallel_residual(om_p, alpha_p, beta_p, p)
        xs = seed_point(p)
        th0 = float(np.min(np.asarray(th_p(xs).value)))
        ph0 = float(np.min(np.asarray(ph_p(xs).value)))
        rec = pde.polar_recombination(ceqs, th0, ph0)
        worst_rec = max(worst_rec, float(np.max(np.abs(np.array(rec) - np.array(peqs)))))
    c.le(9, "polar system equals the complex system", "exact phase recombination", worst_rec, 1e-10)
    return c.checks


# ---------------------------------------------------------------------------
# topology
# ---------------------------------------------------------------------------

def topology_suite(rng: np.random.Generator, scale: float = 1.0, grid_n: int = 64) -> list[Check]:
    c = _Collector("topology", scale)
    half = max(4, grid_n // 2)

    g_plus, blocks_plus = topology.latlong_product_metric(+1)
    grid = topology.sphere_product_grid(grid_n)
    tot = topology.evaluate_grid(g_plus, grid, need_pm=True, blocks=blocks_plus)
    chi = topology.cgb_estimate(g_plus, grid, totals=tot)
    tau = topology.signature_estimate(g_plus, grid, totals=tot)
    c.le(1, f"Euler integral on the sphere product ({grid_n}^2 nodes per factor)", "chi = 4 by curvature quadrature", abs(chi - 4.0), 1e-3, estimate=chi, volume_rel_err=tot["volume_rel_err"])
    c.le(2, "signature integral on the sphere product", "tau = 0", abs(tau), 1e-3, estimate=tau)

    g_t, blocks_t = topology.flat_torus_metric()
    grid_t = topology.torus_grid(6)
    tot_t = topology.evaluate_grid(g_t, grid_t, need_pm=True, blocks=blocks_t)
    c.le(3, "flat torus integrals", "chi = tau = 0", max(abs(topology.cgb_estimate(g_t, grid_t, totals=tot_t)), abs(topology.signature_estimate(g_t, grid_t, totals=tot_t))), 1e-12)

    g_minus, blocks_minus = topology.latlong_product_metric(-1)
    grid_h = topology.sphere_product_grid(half)
    tot_m = topology.evaluate_grid(g_minus, grid_h, need_pm=True, blocks=blocks_minus)
    chi_m = topology.cgb_estimate(g_minus, grid_h, totals=tot_m)
    chi_ric = topology.ricci_route_chi(tot_m)
    tau_m = topology.signature_estimate(g_minus, grid_h, totals=tot_m)
    c.le(4, "neutral metric on the same manifold", "Euler integral with eps = -1 still gives chi = 4", abs(chi_m - 4.0), 1e-3, estimate=chi_m)
    c.le(5, "neutral Euler integral vs the Ricci-only route", "scalar-flat conformally-flat reduction", abs(chi_m - chi_ric), 1e-6, ricci_route=chi_ric)
    c.le(6, "signature of the neutral product", "tau = 0", abs(tau_m), 1e-3, estimate=tau_m)

    # the perturbed factor's near-interval pole needs a minimum rule size to
    # clear the volume gate; the convergence pair is meaningful from 48 up
    if grid_n >= 48:
        pert = topology.bump(0.05, 1.05)
        gp, blocks_p = topology.latlong_product_metric(+1, perturb1=pert)
        grid32 = topology.sphere_product_grid(half, perturb1=pert)
        grid64 = topology.sphere_product_grid(grid_n, perturb1=pert)
        tot32 = topology.evaluate_grid(gp, grid32, need_pm=True, blocks=blocks_p)
        tot64 = topology.evaluate_grid(gp, grid64, need_pm=False, blocks=blocks_p)
        err32 = abs(topology.cgb_estimate(gp, grid32, totals=tot32) - 4.0)
        err64 = abs(topology.cgb_estimate(gp, grid64, totals=tot64) - 4.0)
        converged = err64 <= err32 / 4.0 or (err32 < 1e-8 and err64 < 1e-8)
        c.boolean(7, f"grid refinement {half}^2 -> {grid_n}^2 on a perturbed factor", "quadrature error falls at least fourfold", converged, err_coarse=err32, err_fine=err64)
        tau_p = topology.signature_estimate(gp, grid32, totals=tot32)
        c.le(8, "signature of the perturbed product", "topological invariance", abs(tau_p), 1e-2, estimate=tau_p)

    k3 = topology.obstruction_report(topology.k3_profile())
    ok = (
        k3["chi"] == 24
        and k3["tau"] == 16
        and k3["hitchin_thorpe"]
        and k3["neutral_metric_congruences"]
        and k3["parallel_obstruction"]
    )
    c.boolean(9, "K3 profile", "Einstein and isometric structure allowed, parallel excluded", ok, **{k: v for k, v in k3.items() if k != "verdict"})

    table_ok = True
    rows = []
    for k in range(10):
        rep = topology.obstruction_report(topology.cp2_connected_sum_profile(k))
        expect_ht = k <= 9
        expect_neutral = k % 2 == 1
        expect_obstructed = k != 1
        row_ok = (
            rep["chi"] == 3 + k
            and rep["tau"] == 1 - k
            and rep["hitchin_thorpe"] == expect_ht
            and rep["neutral_metric_congruences"] == expect_neutral
            and rep["parallel_obstruction"] == expect_obstructed
            and (rep["chi"] + rep["tau"] == 4)
            and (rep["chi"] - rep["tau"] == 2 + 2 * k)
        )
        table_ok = table_ok and row_ok
        rows.append({"k": k, **{kk: rep[kk] for kk in ("chi", "tau", "hitchin_thorpe", "neutral_metric_congruences", "parallel_obstruction")}})
    ht_cut = topology.obstruction_report(topology.cp2_connected_sum_profile(10))["hitchin_thorpe"] is False
    c.boolean(10, "connected-sum profiles for k = 0..9", "chi = 3+k, tau = 1-k, congruences, obstruction flags", table_ok and ht_cut, rows=rows)

    s2 = topology.obstruction_report(topology.s2xs2_profile())
    c.boolean(11, "sphere-product profile", "tau = 0: no obstruction", not s2["parallel_obstruction"] and s2["chi"] == 4)
    return c.checks


# ---------------------------------------------------------------------------
# engine self-checks
# ---------------------------------------------------------------------------

def engine_suite(rng: np.random.Generator, scale: float = 1.0) -> list[Check]:
    c = _Collector("engine", scale)

    # jet vs finite differences on the fixture scalar programs
    programs = {
        "line-space conformal factor": lambda x0, x1, x2, x3: (1.0 + 0.25 * abs2(complex_pair((x0, x1, x2, x3))[0] - complex_pair((x0, x1, x2, x3))[1])) ** (-0.5),
        "sphere conformal block": lambda x0, x1, x2, x3: 4.0 / (1.0 + x0 * x0 + x1 * x1) ** 2,
        "trig mix": lambda x0, x1, x2, x3: sin(x0 * x1) * cos(x2) + (1.0 + x3 * x3) ** 0.5,
        "rational": lambda x0, x1, x2, x3: (x0 + 2.0) / (2.0 + x1 * x2) + 1.0 / (3.0 + x3),
    }
    worst = 0.0
    for f in programs.values():
        for _ in range(4):
            p = rng.uniform(-0.7, 0.7, 4)
            j = jet_apply(f, p)
            gr, he = fd_oracle(f, p)
            worst = max(worst, float(np.max(np.abs(j.grad - gr))), float(np.max(np.abs(j.hess - he))))
    c.le(1, "jet derivatives vs central differences", "second-order propagation is exact", worst, 1e-5)

    # curvature symmetries on every built-in geometry
    geoms = [
        (LS.metric_G(), _linespace_points(rng, 20)),
        (LS.metric_G_tilde(), _linespace_points(rng, 20)),
        (LS.conformal_metric(), rng.uniform(-0.7, 0.7, (20, 4))),
        (products.build_product(products.sphere_factor(1.0), products.sphere_factor(2.0), -1).metric, rng.uniform(-0.5, 0.5, (20, 4))),
        (spaceforms.metric_Gp(spaceforms.AmbientSignature(0, 1)), rng.uniform(-0.3, 0.3, (20, 4))),
        (spaceforms.metric_Gp(spaceforms.AmbientSignature(2, -1)), rng.uniform(-0.3, 0.3, (20, 4))),
    ]
    sym = tracefree = pmsum = 0.0
    for g, pts in geoms:
        for p in pts[:20]:
            pack = tensor.curvature(g, p, need_pm=g.signature != "lorentz")
            R = pack.riemann
            sym = max(
                sym,
                float(np.max(np.abs(R + R.transpose(1, 0, 2, 3)))),
                float(np.max(np.abs(R + R.transpose(0, 1, 3, 2)))),
                float(np.max(np.abs(R - R.transpose(2, 3, 0, 1)))),
                float(np.max(np.abs(R + np.einsum("ijkl->iklj", R) + np.einsum("ijkl->iljk", R)))),
            )
            ginv = np.linalg.inv(g.value(p))
            tracefree = max(tracefree, float(np.max(np.abs(np.einsum("ik,ijkl->jl", ginv, pack.weyl)))))
            if "wp2" in pack.norms:
                pmsum = max(pmsum, abs(pack.norms["wp2"] + pack.norms["wm2"] - pack.norms["w2"]))
    c.le(2, "Riemann symmetries and first Bianchi identity", "curvature tensor algebra", sym, 1e-9)
    c.le(3, "Weyl full tracelessness", "conformal part carries no Ricci", tracefree, 1e-9)
    c.le(4, "self-dual/anti-self-dual norm split", "|W+|^2 + |W-|^2 = |W|^2", pmsum, 1e-8)

    # chart independence of scalar invariants between the two line-space charts
    G = LS.metric_G()
    Gc = LS.conformal_metric()
    tr = LS.conformal_transition()
    worst_s = 0.0
    for p in _linespace_points(rng, 10):
        s1 = tensor.curvature(G, p, need_pm=False)
        target = tr.value(p)
        s2 = tensor.curvature(Gc, target, need_pm=False)
        worst_s = max(worst_s, abs(s1.scalar - s2.scalar))
        worst_s = max(worst_s, abs(s1.norms["ein2"] - s2.norms["ein2"]))
    c.le(5, "scalar invariants across the two line-space charts", "chart independence", worst_s, 1e-9)

    # christoffels vs the finite-difference oracle on a random analytic metric
    def random_metric(seed: int) -> MetricField:
        r = np.random.default_rng(seed)
        A = r.normal(size=(4, 4, 4)) * 0.1

        def components(xs):
            out = [[0.0] * 4 for _ in range(4)]
            for i in range(4):
                for j in range(i, 4):
                    e = 1.0 if i == j else 0.0
                    for k in range(4):
                        e = e + A[i, j, k] * sin(xs[k] + 0.3 * (i + j))
                    out[i][j] = e
                    out[j][i] = e
            return out

        return MetricField(Chart("random"), components, "riemannian", name=f"random-{seed}")

    worst_g = 0.0
    for seed in (1, 2):
        g = random_metric(seed)
        p = rng.uniform(-0.3, 0.3, 4)
        Gamma = tensor.christoffels(g, p)

        def gamma_fd(k, i, j):
            def entry(a, b):
                return lambda *xs: g.components(xs)[a][b]

            ginv = np.linalg.inv(g.value(p))
            acc = 0.0
            for l in range(4):
                acc += ginv[k, l] * (
                    fd_oracle(entry(l, j), p)[0][i] + fd_oracle(entry(l, i), p)[0][j] - fd_oracle(entry(i, j), p)[0][l]
                )
            return 0.5 * acc

        for k, i, j in ((0, 1, 2), (3, 0, 0), (2, 2, 3)):
            worst_g = max(worst_g, abs(Gamma[k, i, j] - gamma_fd(k, i, j)))
    c.le(6, "Levi-Civita symbols vs the finite-difference oracle", "independent derivative route", worst_g, 1e-5)

    # fast kernel agreement with the einsum engine
    from .fastkernel import HAVE_NUMBA

    if HAVE_NUMBA:
        from .fastkernel import invariants_fast
        from .tensor import curvature_arrays

        gm = products.build_product(products.bumpy_sphere_factor(0.25), products.sphere_factor(1.5), -1).metric
        pts = rng.uniform(-0.4, 0.4, (30, 4))
        g0, dg, d2g = gm.jets(pts)
        ref = curvature_arrays(g0, dg, d2g, need_pm=True, signature="neutral")
        fast = invariants_fast(g0, dg, d2g, True)
        worst_k = max(
            float(np.max(np.abs(np.atleast_1d(ref[k]) - fast[k])))
            for k in ("S", "ric2", "ein2", "w2", "wp2", "wm2", "sqrtdet")
        )
        c.le(7, "compiled kernel vs einsum engine", "two implementations of the same invariants agree", worst_k, 1e-10)
    return c.checks


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

_SUITES = {
    "linespace": linespace_suite,
    "geodesic-spaces": geodesic_spaces_suite,
    "products": products_suite,
    "planefields": planefields_suite,
    "pde": pde_suite,
    "topology": topology_suite,
    "engine": engine_suite,
}


def run_suite(name: str, seed: int = 42, tolerance_scale: float = 1.0, grid_n: int = 64) -> VerificationReport:
    """Execute one named suite (or 'all') and assemble the report."""
    if name != "all" and name not in _SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {SUITE_NAMES + ('all',)}")
    names = list(_SUITES) if name == "all" else [name]
    checks: list[Check] = []
    with Timer() as t:
        for n in names:
            rng = np.random.default_rng(seed)
            if n == "topology":
                checks.extend(_SUITES[n](rng, tolerance_scale, grid_n=grid_n))
            else:
                checks.extend(_SUITES[n](rng, tolerance_scale))
    return VerificationReport(name, seed, tolerance_scale, checks, t.seconds)
