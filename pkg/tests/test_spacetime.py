import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcqft.errors import (
    CausalConvexityViolated,
    GridMismatch,
    MassMismatch,
    NotInjective,
    OrientationViolated,
    OutOfDomain,
)
from lcqft.spacetime import (
    CausalClass,
    Embedding,
    boost_embedding,
    causal_relation,
    compose_embeddings,
    cylinder,
    double_cone,
    grid_set,
    identity_embedding,
    is_causally_convex,
    minkowski_plane,
    regions_spacelike,
    time_slab,
    translation_embedding,
    validate_embedding,
)
from oracle_tools import brute_force_convex

H = 1 / 16


def small_plane(mass=0.0):
    return minkowski_plane(H, (-2.0, 2.0), (-4.0, 4.0), mass)


# --------------------------------------------------------------------------
# causal relation


def test_causal_relation_examples():
    M = minkowski_plane(H, (-3.0, 3.0), (-4.0, 4.0))
    assert causal_relation(M, (0, 0), (2, 1)) is CausalClass.TIMELIKE
    assert causal_relation(M, (0, 0), (1, 1)) is CausalClass.LIGHTLIKE
    assert causal_relation(M, (0, 0), (1, 2)) is CausalClass.SPACELIKE


def test_causal_relation_cylinder_winding():
    C = cylinder(1 / 10, 10.0, (-2.0, 2.0))
    # going the short way around the circle: dx_eff = -0.1
    assert causal_relation(C, (0, 0), (0.5, 9.9)) is CausalClass.TIMELIKE
    assert causal_relation(C, (0, 0), (0.1, 9.9)) is CausalClass.LIGHTLIKE
    assert causal_relation(C, (0, 0), (0.5, 5.0)) is CausalClass.SPACELIKE


@settings(max_examples=60, deadline=None)
@given(st.integers(-20, 20), st.integers(-40, 40),
       st.integers(-20, 20), st.integers(-40, 40))
def test_causal_relation_symmetric(n1, j1, n2, j2):
    M = minkowski_plane(1 / 16, (-2.0, 2.0), (-4.0, 4.0))
    p = (n1 * M.spacing / 8, j1 * M.spacing / 8)
    q = (n2 * M.spacing / 8, j2 * M.spacing / 8)
    assert causal_relation(M, p, q) is causal_relation(M, q, p)


def test_causal_relation_out_of_domain():
    M = small_plane()
    with pytest.raises(OutOfDomain):
        causal_relation(M, (0, 0), (10.0, 0))


# --------------------------------------------------------------------------
# causal convexity


def test_double_cones_causally_convex_on_plane():
    M = small_plane()
    for center, r in (((0.0, 0.0), 1.5), ((0.5, -1.0), 0.8), ((-0.25, 2.0), 1.1)):
        assert is_causally_convex(M, double_cone(M, center, r))


def test_time_separated_cone_union_not_convex():
    # a causal path connects the lower cone to the upper one through the gap
    M = minkowski_plane(H, (-4.0, 4.0), (-4.0, 4.0))
    lower = double_cone(M, (-2.0, 0.0), 1.5)
    upper = double_cone(M, (2.0, 0.0), 1.5)
    cells = {(n + M.it0, j + M.ix0)
             for n, j in zip(*np.nonzero(lower.mask() | upper.mask()))}
    union = grid_set(M, cells)
    assert not is_causally_convex(M, union)


def test_spacelike_cone_union_is_convex():
    # no causal curve joins spacelike-separated cones, so their union
    # contains every connecting causal curve vacuously
    M = small_plane()
    a = double_cone(M, (0.0, -2.0), 1.0)
    b = double_cone(M, (0.0, 2.0), 1.0)
    assert regions_spacelike(a, b)
    cells = {(n + M.it0, j + M.ix0)
             for n, j in zip(*np.nonzero(a.mask() | b.mask()))}
    assert is_causally_convex(M, grid_set(M, cells))


def test_slab_on_cylinder_convex():
    C = cylinder(1 / 10, 10.0, (-2.0, 2.0))
    assert is_causally_convex(C, time_slab(C, -0.5, 0.5))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_reachability_matches_bfs_oracle(seed):
    rng = np.random.default_rng(seed)
    periodic = bool(rng.integers(2))
    if periodic:
        M = cylinder(1 / 4, 3.0, (-1.5, 1.5))
    else:
        M = minkowski_plane(1 / 4, (-1.5, 1.5), (-1.5, 1.5))
    mask = rng.random((M.n_t, M.n_x)) < rng.uniform(0.2, 0.8)
    cells = {(int(n) + M.it0, int(j) + M.ix0) for n, j in zip(*np.nonzero(mask))}
    region = grid_set(M, cells)
    assert is_causally_convex(M, region) == brute_force_convex(M, cells)


def test_rectangles_convex_via_interval_path():
    M = minkowski_plane(1 / 64, (-2.0, 2.0), (-4.0, 4.0))
    cells = {(n, j) for n in range(-64, 65) for j in range(-32, 33)}
    assert is_causally_convex(M, grid_set(M, cells))


# --------------------------------------------------------------------------
# embeddings


def test_identity_is_valid():
    M = small_plane()
    e = validate_embedding(Embedding(M, M))
    assert e.validated and e.is_translation


def test_cone_r3_into_cylinder_L10_valid():
    host = minkowski_plane(H, (-3.5, 3.5), (-3.5, 3.5), 0.5)
    C = cylinder(H, 10.0, (-3.5, 3.5), 0.5)
    cone = double_cone(host, (0.0, 0.0), 3.0)
    e = translation_embedding(host, C, 0.0, 5.0, region=cone)
    assert validate_embedding(e).validated


def test_cone_r6_into_cylinder_L10_not_injective():
    host = minkowski_plane(H, (-6.5, 6.5), (-6.5, 6.5), 0.5)
    C = cylinder(H, 10.0, (-6.5, 6.5), 0.5)
    cone = double_cone(host, (0.0, 0.0), 6.0)
    with pytest.raises(NotInjective):
        validate_embedding(translation_embedding(host, C, 0.0, 5.0, region=cone))


def test_window_into_small_cylinder_convexity_violated():
    # a rectangle wider than half the circle admits wrap-around causal
    # paths through its complement once it is tall enough
    host = minkowski_plane(H, (-2.0, 2.0), (0.0, 3.0), 0.5)
    C = cylinder(H, 4.0, (-2.0, 2.0), 0.5)
    with pytest.raises(CausalConvexityViolated):
        validate_embedding(translation_embedding(host, C, 0.0, 0.0))


def test_orientation_violations_rejected():
    M = small_plane()
    with pytest.raises(OrientationViolated):
        validate_embedding(Embedding(M, M, time_reflect=True))
    with pytest.raises(OrientationViolated):
        validate_embedding(Embedding(M, M, space_reflect=True))


def test_grid_and_mass_mismatch():
    M = small_plane()
    M_fine = minkowski_plane(H / 2, (-2.0, 2.0), (-4.0, 4.0))
    with pytest.raises(GridMismatch):
        validate_embedding(Embedding(M, M_fine))
    M_heavy = small_plane(mass=1.0)
    with pytest.raises(MassMismatch):
        validate_embedding(Embedding(M, M_heavy))


def test_translation_out_of_domain():
    M = small_plane()
    big = minkowski_plane(H, (-2.5, 2.5), (-4.5, 4.5))
    with pytest.raises(OutOfDomain):
        validate_embedding(translation_embedding(M, big, 2.0, 0.0))


# --------------------------------------------------------------------------
# the category laws on affine data


def test_unit_laws_exact():
    M = small_plane()
    big = minkowski_plane(H, (-3.0, 3.0), (-5.0, 5.0))
    psi = translation_embedding(M, big, 0.5, -0.75)
    assert compose_embeddings(psi, identity_embedding(M)) == psi
    assert compose_embeddings(identity_embedding(big), psi) == psi


def test_translation_composition_adds_offsets():
    M1 = small_plane()
    M2 = minkowski_plane(H, (-3.0, 3.0), (-5.0, 5.0))
    M3 = minkowski_plane(H, (-4.0, 4.0), (-6.0, 6.0))
    a = translation_embedding(M1, M2, 0.0, 1.0)
    b = translation_embedding(M2, M3, 0.0, 2.0)
    c = compose_embeddings(b, a)
    assert (c.shift_t, c.shift_x) == (0.0, 3.0)


def test_rapidity_additivity():
    M1 = small_plane()
    M2 = minkowski_plane(H, (-4.0, 4.0), (-6.0, 6.0))
    M3 = minkowski_plane(H, (-8.0, 8.0), (-11.0, 11.0))
    a = boost_embedding(M1, M2, 0.25)
    b = boost_embedding(M2, M3, 0.125)
    assert compose_embeddings(b, a).rapidity == 0.375


@settings(max_examples=40, deadline=None)
@given(st.integers(-8, 8), st.integers(-8, 8), st.integers(-8, 8),
       st.integers(-8, 8), st.integers(-8, 8), st.integers(-8, 8))
def test_associativity_exact_on_affine_data(a1, b1, a2, b2, a3, b3):
    M1 = minkowski_plane(H, (-1.0, 1.0), (-1.0, 1.0))
    M2 = minkowski_plane(H, (-2.0, 2.0), (-2.0, 2.0))
    M3 = minkowski_plane(H, (-3.0, 3.0), (-3.0, 3.0))
    M4 = minkowski_plane(H, (-4.0, 4.0), (-4.0, 4.0))
    p1 = translation_embedding(M1, M2, a1 * H, b1 * H)
    p2 = translation_embedding(M2, M3, a2 * H, b2 * H)
    p3 = translation_embedding(M3, M4, a3 * H, b3 * H)
    left = compose_embeddings(compose_embeddings(p3, p2), p1)
    right = compose_embeddings(p3, compose_embeddings(p2, p1))
    assert left == right


def test_validated_embedding_preserves_causal_type(rng):
    M = small_plane()
    big = minkowski_plane(H, (-4.0, 4.0), (-7.0, 7.0))
    psi = validate_embedding(boost_embedding(M, big, 0.3, dt=0.25, dx=-0.5))
    for _ in range(40):
        p = (rng.uniform(-1.5, 1.5), rng.uniform(-3, 3))
        q = (rng.uniform(-1.5, 1.5), rng.uniform(-3, 3))
        # snap first so both sides classify the same lattice points
        p = (round(p[0] / H) * H, round(p[1] / H) * H)
        q = (round(q[0] / H) * H, round(q[1] / H) * H)
        rel = causal_relation(M, p, q)
        if rel is CausalClass.SPACELIKE:
            continue
        assert causal_relation(big, psi.map_point(p), psi.map_point(q)) is rel


def test_boosts_into_cylinder_rejected():
    M = small_plane(mass=0.5)
    C = cylinder(H, 10.0, (-2.0, 2.0), 0.5)
    from lcqft.errors import UnsupportedMorphism

    with pytest.raises(UnsupportedMorphism):
        boost_embedding(M, C, 0.2)


def test_spacetime_json_roundtrip():
    from lcqft.spacetime import spacetime_from_json

    M = small_plane(mass=0.5)
    assert spacetime_from_json(M.to_json()) == M
    C = cylinder(H, 10.0, (-2.0, 2.0), 0.5)
    assert spacetime_from_json(C.to_json()) == C


def test_scene_json_roundtrip():
    from lcqft.spacetime import scene_from_json, scene_to_json

    M = small_plane(mass=0.5)
    regions = [double_cone(M, (0.0, 1.0), 0.75), time_slab(M, -0.25, 0.25),
               grid_set(M, {(0, 0), (1, 1)})]
    M2, rs2 = scene_from_json(scene_to_json(M, regions))
    assert M2 == M
    assert len(rs2) == 3
    for a, b in zip(regions, rs2):
        assert np.array_equal(a.mask(), b.mask())
