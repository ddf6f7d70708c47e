"""Executable axiom suites over a parameter grid.

Each suite is a pure function of (config, seed): per-suite RNG streams
derive from (seed, crc32(suite name)), so suites can run in any order or
in parallel without changing their reports.
"""

from __future__ import annotations

import zlib
from dataclasses import replace

import numpy as np

from .config import tolerance
from .functor import (
    algebra_of,
    alpha,
    check_causality,
    check_covariance,
    check_isotony,
    check_time_slice,
    nested_cone_chain,
)
from .modular import (
    StandardPair,
    check_commutant,
    check_flow_invariance,
    check_kms,
    random_density_matrix,
    tomita_operators,
)
from .natfield import (
    check_causal_factorization,
    check_relative_factorization,
    check_naturality,
    relative_s_matrix,
    s_matrix,
    weyl_field,
)
from .oracles import AnalyticBump, propagator_points
from .reports import Report
from .sampling import random_bump_in_cone
from .spacetime import (
    Embedding,
    Spacetime2D,
    boost_embedding,
    compose_embeddings,
    cylinder,
    double_cone,
    identity_embedding,
    minkowski_plane,
    translation_embedding,
    validate_embedding,
)
from .testfun import bump, zero_function
from .weyl import (
    adjoint,
    cylinder_vacuum,
    generator,
    label_space,
    max_coeff_distance,
    multiply,
    unit,
)


def suite_rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def run_suite(name: str, cfg: dict) -> list[Report]:
    return _SUITES[name](cfg)


def run_all(cfg: dict) -> dict[str, list[Report]]:
    return {name: run_suite(name, cfg) for name in cfg["suites"]}


def _n_samples(cfg: dict, default: int) -> int:
    return cfg["samples"] if cfg["samples"] else default


# --------------------------------------------------------------------------
# functor laws


def suite_functor_laws(cfg: dict) -> list[Report]:
    h = 1.0 / 64
    m = 1.0
    rng = suite_rng(cfg["seed"], "functor_laws")
    M1 = minkowski_plane(h, (-1.0, 1.0), (-3.0, 3.0), m)
    M2 = minkowski_plane(h, (-1.75, 1.75), (-4.5, 4.5), m)
    M3 = minkowski_plane(h, (-3.0, 3.0), (-7.0, 7.0), m)
    cone = double_cone(M1, (0.0, 0.0), 1.0)
    n = _n_samples(cfg, 50)

    def draw(r):
        # resampling error scales with the bump's fourth derivatives, so
        # the generator population keeps radii moderate
        return random_bump_in_cone(M1, cone, r, amp_range=(0.5, 1.2),
                                   radius_frac=(0.33, 0.45))

    # identity acts identically
    ident = identity_embedding(M1)
    act_id = alpha(ident)
    sp1 = label_space(M1)
    dev_id = 0.0
    for _ in range(10):
        f = draw(rng)
        g = draw(rng)
        a = generator(M1, f) + generator(M1, g).scaled(0.5 + 0.25j)
        b = act_id(a)
        dev_id = max(dev_id, max_coeff_distance(a, b))
        for (l1, _), (l2, _) in zip(a.terms, b.terms):
            dev_id = max(dev_id, sp1.distance(l1, l2))
    reports = [Report.from_deviation(
        "functor_identity", {"h": h}, 10, dev_id, tolerance(cfg, "functor_id"))]

    def random_shift(rng, max_cells_t, max_cells_x):
        return (int(rng.integers(-max_cells_t, max_cells_t + 1)) * h,
                int(rng.integers(-max_cells_x, max_cells_x + 1)) * h)

    # translation chains: alpha(psi2 . psi1) == alpha(psi2) . alpha(psi1)
    dev_tr = 0.0
    sp3 = label_space(M3)
    for _ in range(n):
        dt1, dx1 = random_shift(rng, 32, 32)
        dt2, dx2 = random_shift(rng, 32, 32)
        p1 = validate_embedding(translation_embedding(M1, M2, dt1, dx1))
        p2 = validate_embedding(translation_embedding(M2, M3, dt2, dx2))
        p21 = compose(p2, p1)
        f = draw(rng)
        a = generator(M1, f)
        lhs = alpha(p21)(a)
        rhs = alpha(p2)(alpha(p1)(a))
        (l1, c1), = lhs.terms
        (l2, c2), = rhs.terms
        dev_tr = max(dev_tr, sp3.distance(l1, l2), abs(c1 - c2))
    reports.append(Report.from_deviation(
        "functor_translation_chains", {"h": h}, n, dev_tr,
        tolerance(cfg, "functor_translation_chain")))

    # one-boost chains
    chi = 0.2
    dev_b = 0.0
    for k in range(n):
        dt1, dx1 = random_shift(rng, 24, 24)
        if k % 2 == 0:
            p1 = validate_embedding(translation_embedding(M1, M2, dt1, dx1))
            p2 = validate_embedding(boost_embedding(M2, M3, chi))
        else:
            p1 = validate_embedding(boost_embedding(M1, M2, chi))
            p2 = validate_embedding(translation_embedding(M2, M3, dt1, dx1))
        p21 = compose(p2, p1)
        f = draw(rng)
        a = generator(M1, f)
        lhs = alpha(p21)(a)
        rhs = alpha(p2)(alpha(p1)(a))
        (l1, c1), = lhs.terms
        (l2, c2), = rhs.terms
        dev_b = max(dev_b, sp3.distance(l1, l2), abs(c1 - c2))
    reports.append(Report.from_deviation(
        "functor_one_boost_chains", {"h": h, "rapidity": chi}, n, dev_b,
        tolerance(cfg, "functor_one_boost_chain")))
    return reports


def compose(outer: Embedding, inner: Embedding) -> Embedding:
    return compose_embeddings(outer, inner)


# --------------------------------------------------------------------------
# isotony


def suite_isotony(cfg: dict) -> list[Report]:
    h = 1.0 / 64
    rng = suite_rng(cfg["seed"], "isotony")
    out = []
    plane = minkowski_plane(h, (-1.5, 1.5), (-6.0, 6.0), 1.0)
    cyl = cylinder(h, 12.0, (-1.5, 1.5), 1.0)
    for M, label in ((plane, "plane"), (cyl, "cylinder")):
        chain = nested_cone_chain(M, (0.0, 0.5), [0.5, 0.8, 1.1, 1.4])
        rep = check_isotony(M, chain, n_samples=10, rng=rng)
        out.append(replace(rep, check_id=f"isotony_{label}"))
    return out


# --------------------------------------------------------------------------
# covariance


def suite_covariance(cfg: dict) -> list[Report]:
    rng = suite_rng(cfg["seed"], "covariance")
    n = _n_samples(cfg, 25)
    out = []

    # grid translations on the plane (exact to rounding)
    h = 1.0 / 64
    plane = minkowski_plane(h, (-1.5, 1.5), (-6.0, 6.0), 1.0)
    regions = [double_cone(plane, (0.0, -1.0), 1.0), double_cone(plane, (0.25, 1.5), 0.8)]
    motion = Embedding(plane, plane, shift_t=16 * h, shift_x=-24 * h)
    out.append(replace(check_covariance(
        plane, motion, regions, n, rng, tolerance(cfg, "covariance_translation")),
        check_id="covariance_plane_translation"))

    # cylinder rotation (one cell and many cells) and time translation
    cyl = cylinder(h, 12.0, (-1.5, 1.5), 1.0)
    regions_c = [double_cone(cyl, (0.0, 3.0), 1.0)]
    rot = Embedding(cyl, cyl, shift_x=h)
    out.append(replace(check_covariance(
        cyl, rot, regions_c, n, rng, tolerance(cfg, "covariance_translation")),
        check_id="covariance_cylinder_rotation"))
    tshift = Embedding(cyl, cyl, shift_t=h, shift_x=37 * h)
    out.append(replace(check_covariance(
        cyl, tshift, regions_c, n, rng, tolerance(cfg, "covariance_translation")),
        check_id="covariance_cylinder_time_translation"))

    # boost chi = 0.2, with an h-refinement pair for the convergence order;
    # the refinement reuses identical continuum bumps at both spacings
    chi = 0.2
    devs = {}
    for hh in (1.0 / 32, 1.0 / 64):
        Mb = minkowski_plane(hh, (-1.5, 1.5), (-6.0, 6.0), 1.0)
        O = double_cone(Mb, (0.0, 0.0), 1.0)
        boost = Embedding(Mb, Mb, rapidity=chi)
        samples = [bump(Mb, c, r, a) for c, r, a in REFINEMENT_BUMPS]
        devs[hh] = _covariance_deviation(Mb, boost, O, samples)
        out.append(Report.from_deviation(
            f"covariance_boost_h{round(1 / hh)}",
            {"h": hh, "rapidity": chi}, len(samples), devs[hh],
            tolerance(cfg, "covariance_boost_coeff") * hh * hh))
    ratio = devs[1.0 / 32] / max(devs[1.0 / 64], 1e-300)
    lo = tolerance(cfg, "order_ratio_lo")
    out.append(Report(
        "covariance_boost_refinement",
        {"ratio": ratio, "dev_coarse": devs[1.0 / 32], "dev_fine": devs[1.0 / 64],
         "requires": f"ratio >= {lo}"},
        2, max(0.0, lo - ratio), 0.0, ratio >= lo))
    return out


#: Fixed bumps for the boost-naturality refinement (inside radius 0.8).
NATURALITY_BUMPS = [
    ((0.125, -0.125), (0.25, 0.28), 0.9),
    ((-0.125, 0.0625), (0.28, 0.25), -0.8),
    ((0.0, 0.1875), (0.24, 0.26), 1.1),
    ((0.1875, 0.0), (0.26, 0.24), 0.7),
]

#: Fixed localized bumps inside the unit double cone at the origin; the
#: centers sit on the 1/32 grid so every refinement spacing snaps them
#: identically.
REFINEMENT_BUMPS = [
    ((0.125, -0.1875), (0.30, 0.35), 0.9),
    ((-0.1875, 0.125), (0.35, 0.30), -0.7),
    ((0.0, 0.25), (0.28, 0.32), 1.2),
    ((0.25, 0.0), (0.32, 0.28), 0.8),
    ((-0.125, -0.125), (0.40, 0.30), 1.0),
    ((0.0625, 0.09375), (0.33, 0.27), -1.1),
]


def _covariance_deviation(M, motion, O, samples) -> float:
    """Worst transport-vs-recompute label distance over given samples."""
    from dataclasses import replace as _r

    from .functor import _image_region_mask
    from .testfun import pushforward

    kappa = validate_embedding(_r(motion, source_region=O, validated=False))
    act = alpha(kappa)
    patch = algebra_of(M, O)
    A = algebra_of(M)
    img_mask = _image_region_mask(kappa, O)
    supp_tol = 0.0 if kappa.is_translation else 1e-9
    worst = 0.0
    for f in samples:
        fk = pushforward(kappa, f)
        if np.any(fk.support_mask(supp_tol) & ~img_mask):
            raise AssertionError("pushforward support leaves the image region")
        (l1, _), = act(patch.generator(f)).terms
        (l2, _), = A.generator(fk).terms
        worst = max(worst, A.space.distance(l1, l2))
    return worst


# --------------------------------------------------------------------------
# causality


def _causality_pairs(M: Spacetime2D):
    return [
        (double_cone(M, (0.0, -3.0), 1.0), double_cone(M, (0.0, 3.0), 1.0)),
        (double_cone(M, (0.5, -2.8), 0.8), double_cone(M, (-0.25, 2.9), 0.9)),
        (double_cone(M, (0.0, -2.2), 0.7), double_cone(M, (0.25, 2.4), 0.6)),
    ]


def suite_causality(cfg: dict) -> list[Report]:
    n = _n_samples(cfg, 50)
    tol = tolerance(cfg, "causality")
    out = []
    for h in (1.0 / 32, 1.0 / 64):
        plane = minkowski_plane(h, (-1.5, 1.5), (-7.0, 7.0), 1.0)
        cyl = cylinder(h, 12.0, (-1.5, 1.5), 1.0)
        for M, label in ((plane, "plane"), (cyl, "cylinder")):
            rng = suite_rng(cfg["seed"], f"causality_{label}_{h}")
            worst = 0.0
            for O1, O2 in _causality_pairs(M):
                rep = check_causality(M, O1, O2, n, rng, tol)
                worst = max(worst, rep.max_deviation)
            out.append(Report.from_deviation(
                f"causality_{label}_h{round(1 / h)}",
                {"h": h, "pairs": 3}, 3 * n, worst, tol))
    return out


# --------------------------------------------------------------------------
# time slice


def suite_time_slice(cfg: dict) -> list[Report]:
    n = _n_samples(cfg, 30)
    out = []
    devs = {}
    for h in (1.0 / 32, 1.0 / 64):
        M = minkowski_plane(h, (-1.0, 1.0), (-4.5, 4.5), 1.0)
        rng = suite_rng(cfg["seed"], f"time_slice_{h}")
        rep = check_time_slice(M, (-4 * h, 4 * h), n, rng,
                               tolerance(cfg, "time_slice_coeff") * h * h)
        devs[h] = rep.max_deviation
        out.append(replace(rep, check_id=f"time_slice_h{round(1 / h)}"))
    floor = tolerance(cfg, "time_slice_floor")
    lo = tolerance(cfg, "order_ratio_lo")
    hi = tolerance(cfg, "order_ratio_hi")
    ratio = devs[1.0 / 32] / max(devs[1.0 / 64], 1e-300)
    at_floor = devs[1.0 / 32] <= floor and devs[1.0 / 64] <= floor
    ok = at_floor or (lo <= ratio <= hi)
    out.append(Report(
        "time_slice_refinement",
        {"ratio": ratio, "dev_coarse": devs[1.0 / 32], "dev_fine": devs[1.0 / 64],
         "floor": floor, "at_floor": at_floor,
         "requires": f"ratio in [{lo}, {hi}] or both deviations <= floor"},
        2, 0.0 if ok else 1.0, 0.0, ok))
    return out


# --------------------------------------------------------------------------
# naturality


def suite_naturality(cfg: dict) -> list[Report]:
    h = 1.0 / 64
    m = 0.5
    rng = suite_rng(cfg["seed"], "naturality")
    n = _n_samples(cfg, 20)
    field = weyl_field()
    host = minkowski_plane(h, (-2.0, 2.0), (-6.0, 6.0), m)
    cone = double_cone(host, (0.0, 0.0), 1.5)
    plane_tgt = minkowski_plane(h, (-2.0, 2.0), (-6.0, 6.0), m)
    cyl_tgt = cylinder(h, 16.0, (-2.0, 2.0), m)
    tol = tolerance(cfg, "naturality_translation")
    out = []

    samples = [random_bump_in_cone(host, cone, rng) for _ in range(n)]
    into_plane = validate_embedding(
        translation_embedding(host, plane_tgt, 16 * h, 48 * h, region=cone))
    rep = check_naturality(field, into_plane, samples, tol)
    out.append(replace(rep, check_id="naturality_cone_into_plane"))
    into_cyl = validate_embedding(
        translation_embedding(host, cyl_tgt, 16 * h, 3.0, region=cone))
    rep = check_naturality(field, into_cyl, samples, tol)
    out.append(replace(rep, check_id="naturality_cone_into_cylinder"))

    # boost square, with refinement order on identical continuum bumps
    chi = 0.25
    devs = {}
    for hh in (1.0 / 32, 1.0 / 64):
        src = minkowski_plane(hh, (-1.0, 1.0), (-3.0, 3.0), m)
        tgt = minkowski_plane(hh, (-2.5, 2.5), (-4.5, 4.5), m)
        fs = [bump(src, c, r, a) for c, r, a in NATURALITY_BUMPS]
        psi = validate_embedding(boost_embedding(src, tgt, chi))
        rep = check_naturality(field, psi, fs,
                               tolerance(cfg, "naturality_boost_coeff") * hh * hh)
        devs[hh] = rep.max_deviation
        out.append(replace(rep, check_id=f"naturality_boost_h{round(1 / hh)}"))
    lo = tolerance(cfg, "order_ratio_lo")
    ratio = devs[1.0 / 32] / max(devs[1.0 / 64], 1e-300)
    out.append(Report(
        "naturality_boost_refinement",
        {"ratio": ratio, "dev_coarse": devs[1.0 / 32], "dev_fine": devs[1.0 / 64],
         "requires": f"ratio >= {lo}"},
        2, max(0.0, lo - ratio), 0.0, ratio >= lo))
    return out


# --------------------------------------------------------------------------
# S-matrix


def suite_smatrix(cfg: dict) -> list[Report]:
    h = 1.0 / 64
    M = minkowski_plane(h, (-1.25, 1.25), (-5.0, 5.0), 1.0)
    rng = suite_rng(cfg["seed"], "smatrix")
    out = []

    zero = zero_function(M)
    s0 = s_matrix(M, zero)
    out.append(Report.from_deviation(
        "smatrix_zero_is_unit", {"h": h}, 1,
        max_coeff_distance(s0.element, unit(s0.element.space)),
        tolerance(cfg, "smatrix_zero")))

    def past_bump():
        return bump(M, (rng.uniform(-0.85, -0.55), rng.uniform(-1.2, 1.2)),
                    (rng.uniform(0.2, 0.32), rng.uniform(0.2, 0.35)),
                    rng.uniform(0.5, 1.5) * rng.choice([-1.0, 1.0]))

    def mid_bump():
        return bump(M, (rng.uniform(-0.15, 0.15), rng.uniform(-1.2, 1.2)),
                    (rng.uniform(0.2, 0.3), rng.uniform(0.2, 0.35)),
                    rng.uniform(0.5, 1.5) * rng.choice([-1.0, 1.0]))

    def future_bump():
        return bump(M, (rng.uniform(0.55, 0.85), rng.uniform(-1.2, 1.2)),
                    (rng.uniform(0.2, 0.32), rng.uniform(0.2, 0.35)),
                    rng.uniform(0.5, 1.5) * rng.choice([-1.0, 1.0]))

    n = _n_samples(cfg, 10)
    dev_u = 0.0
    for _ in range(n):
        s = s_matrix(M, mid_bump())
        dev_u = max(dev_u, max_coeff_distance(
            multiply(adjoint(s.element), s.element), unit(s.element.space)))
    out.append(Report.from_deviation(
        "smatrix_unitarity", {"h": h}, n, dev_u, tolerance(cfg, "smatrix_unitarity")))

    dev_f = 0.0
    for _ in range(n):
        rep = check_causal_factorization(
            M, future_bump(), mid_bump(), past_bump(),
            tolerance(cfg, "smatrix_factorization"))
        dev_f = max(dev_f, rep.max_deviation)
    out.append(Report.from_deviation(
        "smatrix_causal_factorization", {"h": h}, n, dev_f,
        tolerance(cfg, "smatrix_factorization")))

    dev_r = 0.0
    for _ in range(5):
        rep = check_relative_factorization(
            M, mid_bump(), future_bump(), past_bump(),
            tolerance(cfg, "smatrix_relative"))
        dev_r = max(dev_r, rep.max_deviation)
    out.append(Report.from_deviation(
        "smatrix_relative_factorization", {"h": h}, 5, dev_r,
        tolerance(cfg, "smatrix_relative")))

    lam = mid_bump()
    dev_m0 = max_coeff_distance(relative_s_matrix(M, zero, lam),
                                s_matrix(M, lam).element)
    out.append(Report.from_deviation(
        "smatrix_relative_at_zero", {"h": h}, 1, dev_m0, 1e-15))

    # vacuum expectation cross-check on the cylinder
    cyl = cylinder(h, 12.0, (-1.25, 1.25), 1.0)
    state = cylinder_vacuum(cyl)
    dev_v = 0.0
    rng_v = suite_rng(cfg["seed"], "smatrix_vacuum")
    for _ in range(5):
        lam_c = bump(cyl, (rng_v.uniform(-0.4, 0.4), rng_v.uniform(0.0, 12.0)),
                     (rng_v.uniform(0.2, 0.3), rng_v.uniform(0.2, 0.35)),
                     rng_v.uniform(0.5, 1.2))
        s = s_matrix(cyl, lam_c)
        (lab, _), = s.element.terms
        expected = np.exp(1j * s.gamma - 0.5 * state.covariance(lab, lab))
        dev_v = max(dev_v, abs(state.expectation(s.element) - expected))
    out.append(Report.from_deviation(
        "smatrix_vacuum_expectation", {"h": h}, 5, dev_v,
        tolerance(cfg, "smatrix_vacuum")))
    return out


# --------------------------------------------------------------------------
# modular


def suite_modular(cfg: dict) -> list[Report]:
    rng = suite_rng(cfg["seed"], "modular")
    tol_id = tolerance(cfg, "modular_identities")
    tol_kms = tolerance(cfg, "modular_kms")
    out = []
    for n in (2, 3, 4):
        worst_id = 0.0
        worst_comm = 0.0
        worst_flow = 0.0
        worst_kms = 0.0
        n_rho = 100
        for _ in range(n_rho):
            rho = random_density_matrix(n, rng)
            pair = StandardPair.from_rho(rho)
            data = tomita_operators(pair)
            U = data.J.matrix
            worst_id = max(
                worst_id,
                float(np.abs(U @ np.conj(U) - np.eye(n * n)).max()),
                float(np.abs(data.J.apply(pair.omega) - pair.omega).max()),
                float(np.abs(data.delta @ pair.omega - pair.omega).max()),
                float(np.abs(data.J.sandwich(data.delta)
                             - np.linalg.inv(data.delta)).max()),
            )
            worst_comm = max(worst_comm, check_commutant(
                pair, data, 2, rng, tol_id)["max_commutator"])
            flow = check_flow_invariance(pair, data, 1, rng, tolerance=tol_id)
            worst_flow = max(worst_flow, flow["max_subspace_distance"])
            kms = check_kms(pair, data, 1, rng, tolerance=tol_kms)
            worst_kms = max(worst_kms, kms["max_kms_defect"])
        out.append(Report.from_deviation(
            f"modular_identities_n{n}", {"n": n}, n_rho, worst_id, tol_id))
        out.append(Report.from_deviation(
            f"modular_commutant_n{n}", {"n": n}, n_rho, worst_comm, tol_id))
        out.append(Report.from_deviation(
            f"modular_flow_n{n}", {"n": n}, n_rho, worst_flow, tol_id))
        out.append(Report.from_deviation(
            f"modular_kms_n{n}", {"n": n}, n_rho, worst_kms, tol_kms))

    pair = StandardPair.from_rho(np.diag([0.3, 0.7]))
    data = tomita_operators(pair)
    spec = np.sort(np.linalg.eigvalsh(data.delta))
    expected = np.sort([1.0, 1.0, 0.3 / 0.7, 0.7 / 0.3])
    out.append(Report.from_deviation(
        "modular_spectrum_n2", {"rho": [0.3, 0.7]}, 1,
        float(np.abs(spec - expected).max()), tolerance(cfg, "modular_spectrum")))
    return out


_SUITES = {
    "functor_laws": suite_functor_laws,
    "isotony": suite_isotony,
    "covariance": suite_covariance,
    "causality": suite_causality,
    "time_slice": suite_time_slice,
    "naturality": suite_naturality,
    "smatrix": suite_smatrix,
    "modular": suite_modular,
}


# --------------------------------------------------------------------------
# convergence family (CLI `convergence`, acceptance criterion material)

#: Fixed evaluation points (grid-aligned at h = 1/16 and finer).
CONVERGENCE_POINTS = [
    (0.5, -1.0), (0.5, -0.5), (0.5, 0.0), (0.5, 0.5), (0.5, 1.0),
    (0.75, -1.25), (0.75, -0.75), (0.75, 0.25), (0.75, 1.0),
    (1.0, -0.5), (1.0, 0.0), (1.0, 0.75),
    (-0.625, -0.25), (-0.8125, 0.5),
]

CONVERGENCE_BUMP = AnalyticBump((-0.5, 0.0), (0.5, 0.6), 1.0)


def greens_convergence_errors(masses, h_values) -> dict:
    """RMS solver-vs-kernel errors at the fixed evaluation points."""
    from .greens import causal_propagator

    out = {}
    for mass in masses:
        oracle = propagator_points(mass, CONVERGENCE_BUMP, CONVERGENCE_POINTS)
        for h in h_values:
            M = minkowski_plane(h, (-1.25, 1.25), (-4.0, 4.0), mass)
            f = bump(M, CONVERGENCE_BUMP.center, CONVERGENCE_BUMP.radii,
                     CONVERGENCE_BUMP.amplitude)
            u = causal_propagator(f)
            vals = np.array([u.values[M.row_of_time(t), M.col_of_position(x)]
                             for t, x in CONVERGENCE_POINTS])
            out[(mass, h)] = float(np.sqrt(np.mean((vals - oracle) ** 2)))
    return out


def convergence_rows(cfg: dict) -> list[dict]:
    """Rows {h, suite, max_deviation} for the convergence CSV."""
    hs = list(cfg["convergence"]["h_values"])
    masses = list(cfg["convergence"]["masses"])
    errs = greens_convergence_errors(masses, hs)
    rows = []
    for mass in masses:
        for h in hs:
            rows.append({"h": h, "suite": f"greens_m{mass:g}",
                         "max_deviation": errs[(mass, h)]})
    for h in hs:
        M = minkowski_plane(h, (-1.0, 1.0), (-6.0, 6.0), 1.0)
        rng = suite_rng(cfg["seed"], f"conv_causality_{h}")
        O1 = double_cone(M, (0.0, -2.5), 0.8)
        O2 = double_cone(M, (0.0, 2.5), 0.8)
        rep = check_causality(M, O1, O2, 10, rng, tolerance(cfg, "causality"))
        rows.append({"h": h, "suite": "causality", "max_deviation": rep.max_deviation})
    return rows
