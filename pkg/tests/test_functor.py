import numpy as np
import pytest

from lcqft.errors import (
    DomainMismatch,
    NotCausallyConvex,
    NotCausallySeparated,
    ValidationMissing,
)
from lcqft.functor import (
    algebra_of,
    alpha,
    check_causality,
    check_covariance,
    check_isotony,
    check_time_slice,
    local_algebra,
    nested_cone_chain,
)
from lcqft.greens import slab_compress
from lcqft.spacetime import (
    Embedding,
    double_cone,
    grid_set,
    minkowski_plane,
    translation_embedding,
    validate_embedding,
)
from lcqft.testfun import bump
from lcqft.weyl import (
    LABEL_TOLERANCE,
    adjoint,
    label_space,
    max_coeff_distance,
    multiply,
)


def test_alpha_requires_validation(plane32):
    psi = translation_embedding(plane32, plane32, 0.0, 0.0)
    with pytest.raises(ValidationMissing):
        alpha(psi)


def test_alpha_identity_acts_identically(plane32, rng):
    from lcqft.spacetime import identity_embedding

    act = alpha(identity_embedding(plane32))
    A = algebra_of(plane32)
    f = bump(plane32, (0.1, -0.3), (0.4, 0.5), 1.2)
    g = bump(plane32, (-0.2, 0.4), (0.5, 0.4), 0.8)
    a = A.generator(f) + A.generator(g).scaled(0.3 - 0.7j)
    assert max_coeff_distance(act(a), a) == 0.0
    for (l1, _), (l2, _) in zip(act(a).terms, a.terms):
        assert l1 is l2


def test_alpha_is_homomorphism_translations(plane32):
    big = minkowski_plane(plane32.spacing, (-2.0, 2.0), (-7.0, 7.0), plane32.mass)
    psi = validate_embedding(translation_embedding(plane32, big, 0.25, -0.5))
    act = alpha(psi)
    A = algebra_of(plane32)
    f = bump(plane32, (-0.4, -0.3), (0.4, 0.5), 1.1)
    g = bump(plane32, (0.4, 0.2), (0.4, 0.5), 0.7)
    a, b = A.generator(f), A.generator(g)
    lhs = act(multiply(a, b))
    rhs = multiply(act(a), act(b))
    assert max_coeff_distance(lhs, rhs) <= 1e-9
    assert act(A.unit()).is_unit()


def test_alpha_star_preserving(plane32):
    big = minkowski_plane(plane32.spacing, (-2.0, 2.0), (-7.0, 7.0), plane32.mass)
    psi = validate_embedding(translation_embedding(plane32, big, 0.125, 0.25))
    act = alpha(psi)
    A = algebra_of(plane32)
    a = A.generator(bump(plane32, (0.0, 0.0), (0.4, 0.5), 1.2)).scaled(0.6 + 0.2j)
    assert max_coeff_distance(act(adjoint(a)), adjoint(act(a))) <= 1e-12


def test_alpha_well_defined_on_labels(plane32):
    # two sources with the same E-image transport to the same label
    from oracle_tools import discrete_kg_operator
    from lcqft.testfun import from_grid

    big = minkowski_plane(plane32.spacing, (-2.0, 2.0), (-7.0, 7.0), plane32.mass)
    psi = validate_embedding(translation_embedding(plane32, big, 0.25, -0.5))
    act = alpha(psi)
    sp = label_space(plane32)
    f = bump(plane32, (-0.2, 0.1), (0.35, 0.45), 1.0)
    g = bump(plane32, (0.1, -0.2), (0.3, 0.4), 0.5)
    ker = from_grid(plane32, discrete_kg_operator(plane32, g.on_grid()))
    l1 = sp.label_of(f)
    l2 = sp.label_of(f + ker)
    assert l1 is l2
    assert act.on_label(l1) is act.on_label(l2)


def test_alpha_injectivity_surrogate(plane32, rng):
    # distinct generators stay separated by well over the snap tolerance
    big = minkowski_plane(plane32.spacing, (-2.0, 2.0), (-7.0, 7.0), plane32.mass)
    psi = validate_embedding(translation_embedding(plane32, big, 0.25, -0.5))
    act = alpha(psi)
    sp_big = label_space(big)
    sp = label_space(plane32)
    labels = [sp.label_of(bump(plane32, (rng.uniform(-0.3, 0.3), rng.uniform(-1, 1)),
                               (rng.uniform(0.3, 0.5), rng.uniform(0.3, 0.5)),
                               rng.uniform(0.5, 1.5)))
              for _ in range(6)]
    for i, li in enumerate(labels):
        for lj in labels[i + 1:]:
            if li is lj:
                continue
            assert sp_big.distance(act.on_label(li), act.on_label(lj)) \
                >= 10 * LABEL_TOLERANCE


def test_isometric_windows_isomorphic(plane32):
    # a window and its translate carry isomorphic algebras via alpha
    big = minkowski_plane(plane32.spacing, (-2.0, 2.0), (-7.0, 7.0), plane32.mass)
    fwd = validate_embedding(translation_embedding(plane32, big, 0.25, -0.5))
    act = alpha(fwd)
    A = algebra_of(plane32)
    f = bump(plane32, (0.2, 0.4), (0.4, 0.5), 1.3)
    g = bump(plane32, (-0.3, -0.6), (0.5, 0.4), 0.9)
    a = multiply(A.generator(f), A.generator(g))
    b = multiply(act(A.generator(f)), act(A.generator(g)))
    assert max_coeff_distance(act(a), b) <= 1e-12


# --------------------------------------------------------------------------
# local algebras


def test_local_algebra_isotony(plane32, rng):
    chain = nested_cone_chain(plane32, (0.0, 0.5), [0.5, 0.8, 1.1])
    rep = check_isotony(plane32, chain, n_samples=5, rng=rng)
    assert rep.passed
    small = local_algebra(plane32, chain[0])
    big = local_algebra(plane32, chain[-1])
    f = bump(plane32, (0.0, 0.5), (0.2, 0.2), 1.0)
    assert small.admits(f) and big.admits(f)
    assert max_coeff_distance(small.generator(f), big.generator(f)) == 0.0


def test_local_algebra_rejects_nonconvex(plane32):
    lower = double_cone(plane32, (-0.8, 0.0), 0.5)
    upper = double_cone(plane32, (0.8, 0.0), 0.5)
    cells = {(n + plane32.it0, j + plane32.ix0)
             for n, j in zip(*np.nonzero(lower.mask() | upper.mask()))}
    with pytest.raises(NotCausallyConvex):
        local_algebra(plane32, grid_set(plane32, cells))


def test_local_algebra_support_restriction(plane32):
    O = double_cone(plane32, (0.0, 0.0), 0.6)
    A_O = local_algebra(plane32, O)
    inside = bump(plane32, (0.0, 0.0), (0.2, 0.25), 1.0)
    outside = bump(plane32, (0.0, 2.0), (0.3, 0.4), 1.0)
    assert A_O.admits(inside) and not A_O.admits(outside)
    with pytest.raises(DomainMismatch):
        A_O.generator(outside)


def test_empty_region_admits_only_scalars(plane32):
    from lcqft.testfun import zero_function

    empty = grid_set(plane32, set())
    A_E = local_algebra(plane32, empty)
    assert A_E.admits(zero_function(plane32))
    assert not A_E.admits(bump(plane32, (0.0, 0.0), (0.2, 0.2), 1.0))
    assert A_E.generator(zero_function(plane32)).is_unit()


def test_slab_algebra_contains_global_labels(plane32):
    # the time-slice engine: every global generator has an equal-label
    # twin supported in a slab around the reference surface
    from lcqft.spacetime import time_slab

    h = plane32.spacing
    slab = time_slab(plane32, -4 * h, 4 * h)
    A_slab = local_algebra(plane32, slab)
    sp = label_space(plane32)
    f = bump(plane32, (-0.9, 0.2), (0.3, 0.4), 1.1)
    f2 = slab_compress(f, -4 * h, 4 * h)
    assert A_slab.admits(f2)
    assert sp.label_of(f) is sp.label_of(f2)


# --------------------------------------------------------------------------
# axiom checks


def test_check_causality_pass_and_precondition(plane32, rng):
    O1 = double_cone(plane32, (0.0, -2.5), 0.8)
    O2 = double_cone(plane32, (0.0, 2.5), 0.8)
    rep = check_causality(plane32, O1, O2, 5, rng)
    assert rep.passed and rep.max_deviation <= 1e-10
    overlapping = double_cone(plane32, (0.0, -2.0), 0.8)
    with pytest.raises(NotCausallySeparated):
        check_causality(plane32, O1, overlapping, 2, rng)


def test_check_causality_cylinder(cyl32, rng):
    O1 = double_cone(cyl32, (0.0, 3.0), 1.0)
    O2 = double_cone(cyl32, (0.0, 9.0), 1.0)
    rep = check_causality(cyl32, O1, O2, 5, rng)
    assert rep.passed


def test_check_time_slice(plane32, rng):
    h = plane32.spacing
    rep = check_time_slice(plane32, (-4 * h, 4 * h), 5, rng, tolerance=h * h)
    assert rep.passed
    with pytest.raises(ValueError):
        check_time_slice(plane32, (0.25, 0.5), 2, rng)
    with pytest.raises(TypeError):
        check_time_slice(plane32, double_cone(plane32, (0, 0), 0.5), 2, rng)


def test_check_covariance_translation_exact(plane32, rng):
    motion = Embedding(plane32, plane32, shift_t=0.25, shift_x=-0.5)
    regions = [double_cone(plane32, (0.0, -1.0), 0.8)]
    rep = check_covariance(plane32, motion, regions, 5, rng, 1e-12)
    assert rep.passed


def test_check_covariance_boost(plane32, rng):
    h = plane32.spacing
    motion = Embedding(plane32, plane32, rapidity=0.2)
    regions = [double_cone(plane32, (0.0, 0.0), 1.0)]
    rep = check_covariance(plane32, motion, regions, 5, rng, 2.0 * h * h,
                           amp_range=(0.5, 1.0))
    assert rep.passed
    assert rep.max_deviation > 0.0  # genuinely measured, not interned away
