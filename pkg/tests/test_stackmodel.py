"""Faces, special closures, cones and signatures of linear quotient stacks.

The frozen tables below were derived by hand from the defining data of the
small examples (two weights and one root pair in rank 2, one weight in
rank 1, the rank-3 root arrangement) before the implementation existed.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from complat.arrangement import cells, chambers, sign_vector_of, witness_point
from complat.errors import SpecError
from complat.qlinalg import mat_vec, qvec, span
from complat.stackmodel import (
    Face,
    central_rank,
    component_signature,
    constancy_check,
    cotangent_arrangement,
    enumerate_special_cones,
    cell_orbits,
    enumerate_special_faces,
    global_arrangement,
    is_special,
    load_spec,
    nondegenerate_quotient,
    special_cone_closure,
    special_face_closure,
    surjection_invariance_check,
)

A2_GL2 = {
    "type": "linear_quotient",
    "rank": 2,
    "weights": [[1, 0], [0, 1]],
    "roots": [[1, -1], [-1, 1]],
    "weyl_generators": [[[0, 1], [1, 0]]],
}
A1_GM = {"type": "linear_quotient", "rank": 1, "weights": [[1]], "roots": [], "weyl_generators": []}
B_GM = {"type": "linear_quotient", "rank": 1, "weights": [], "roots": [], "weyl_generators": []}
B_GL3 = {
    "type": "linear_quotient",
    "rank": 3,
    "weights": [],
    "roots": [[1, -1, 0], [-1, 1, 0], [1, 0, -1], [-1, 0, 1], [0, 1, -1], [0, -1, 1]],
    "weyl_generators": [[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[1, 0, 0], [0, 0, 1], [0, 1, 0]]],
}
RANK3_MIXED = {
    "type": "linear_quotient",
    "rank": 3,
    "weights": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]],
    "roots": [[1, -1, 0], [-1, 1, 0]],
    "weyl_generators": [[[0, 1, 0], [1, 0, 0], [0, 0, 1]]],
}

ALL_DOCS = [B_GM, A1_GM, A2_GL2, B_GL3, RANK3_MIXED]


@pytest.fixture(scope="module")
def a2gl2():
    return load_spec(A2_GL2)


@pytest.fixture(scope="module")
def bgl3():
    return load_spec(B_GL3)


@pytest.fixture(scope="module", params=range(len(ALL_DOCS)), ids=["bgm", "a1gm", "a2gl2", "bgl3", "rank3"])
def anyspec(request):
    return load_spec(ALL_DOCS[request.param])


# -- loading -------------------------------------------------------------------


def test_load_spec_enumerates_weyl(a2gl2, bgl3):
    assert len(a2gl2.weyl_group) == 2
    assert len(bgl3.weyl_group) == 6
    assert len(load_spec(B_GM).weyl_group) == 1
    ident = tuple(tuple(int(i == j) for j in range(3)) for i in range(3))
    assert ident in bgl3.weyl_group


@pytest.mark.parametrize(
    "mangle",
    [
        lambda d: d.update(type="quiver"),
        lambda d: d.pop("roots"),
        lambda d: d.update(extra_field=1),
        lambda d: d.update(rank=-1),
        lambda d: d.update(weights=[[1]]),
        lambda d: d.update(roots=[[1, -1]]),
        lambda d: d.update(roots=[[0, 0], [0, 0]]),
        lambda d: d.update(weyl_generators=[[[1, 1], [0, 1]]]),
        lambda d: d.update(weyl_generators=[[[2, 0], [0, 1]]]),
    ],
)
def test_load_spec_rejects_malformed(mangle):
    doc = {k: ([list(x) for x in v] if isinstance(v, list) else v) for k, v in A2_GL2.items()}
    mangle(doc)
    with pytest.raises(SpecError):
        load_spec(doc)


def test_load_spec_rejects_symmetry_violations():
    doc = dict(A2_GL2, weights=[[1, 0], [0, 2]])
    with pytest.raises(SpecError, match="weight multiset"):
        load_spec(doc)
    doc = dict(B_GL3, roots=[[1, -1, 0], [-1, 1, 0]])
    with pytest.raises(SpecError, match="root set"):
        load_spec(doc)


# -- graded and filtered signatures on the rank-2 picture -----------------------

# one representative point per cell of the rank-2 arrangement {x=0, y=0, x=y};
# expected data was read off by hand: a weight/root lands in the fixed/Levi
# part iff it vanishes at the point, in the attractor/parabolic iff it is
# nonnegative on the whole closure cone of the point's ray
GRAD_TABLE = {
    (0, 0): (((0, 1), (1, 0)), ((-1, 1), (1, -1))),
    (0, 1): (((1, 0),), ()),
    (1, 2): ((), ()),
    (1, 1): ((), ((-1, 1), (1, -1))),
    (2, 1): ((), ()),
    (1, 0): (((0, 1),), ()),
    (1, -1): ((), ()),
    (0, -1): (((1, 0),), ()),
    (-1, -2): ((), ()),
    (-1, -1): ((), ((-1, 1), (1, -1))),
    (-2, -1): ((), ()),
    (-1, 0): (((0, 1),), ()),
    (-1, 1): ((), ()),
}

FILT_TABLE = {
    (0, 0): (((0, 1), (1, 0)), ((-1, 1), (1, -1)), ()),
    (0, 1): (((0, 1), (1, 0)), ((-1, 1),), ((0, 1),)),
    (1, 2): (((0, 1), (1, 0)), ((-1, 1),), ((0, 1), (1, 1))),
    (1, 1): (((0, 1), (1, 0)), ((-1, 1), (1, -1)), ((1, 1),)),
    (2, 1): (((0, 1), (1, 0)), ((1, -1),), ((1, 0), (1, 1))),
    (1, 0): (((0, 1), (1, 0)), ((1, -1),), ((1, 0),)),
    (1, -1): (((1, 0),), ((1, -1),), ((0, -1), (1, 1))),
    (0, -1): (((1, 0),), ((1, -1),), ((0, -1),)),
    (-1, -2): ((), ((1, -1),), ((-1, -1), (0, -1), (1, 1))),
    (-1, -1): ((), ((-1, 1), (1, -1)), ((-1, -1), (1, 1))),
    (-2, -1): ((), ((-1, 1),), ((-1, -1), (0, 1), (1, 1))),
    (-1, 0): (((0, 1),), ((-1, 1),), ((-1, 0),)),
    (-1, 1): (((0, 1),), ((-1, 1),), ((-1, 0), (1, 1))),
}


def test_component_signatures_match_table(a2gl2):
    for p, (fixed, levi) in GRAD_TABLE.items():
        sig = component_signature(a2gl2, Face.from_vectors([p], 2))
        assert (sig.fixed_weights, sig.levi_roots) == (fixed, levi), p


def test_attractor_signatures_match_table(a2gl2):
    for p, (attr, parab, rays) in FILT_TABLE.items():
        sig = special_cone_closure(a2gl2, [p])
        assert sig.attractor_weights == attr, p
        assert sig.parabolic_roots == parab, p
        assert sig.ambient_rays == rays, p


def test_fixed_weight_and_parabolic_sign_convention(a2gl2):
    # the ray (0,1): the weight pairing to 0 is fixed, the root pairing
    # nonnegatively ((-1,1), not its negative) generates the parabolic
    sig = special_cone_closure(a2gl2, [(0, 1)])
    assert (1, 0) in sig.levi_part.fixed_weights
    assert sig.parabolic_roots == ((-1, 1),)
    assert (1, -1) not in sig.parabolic_roots


def test_cell_and_orbit_counts(a2gl2):
    arr = global_arrangement(a2gl2)
    all_cells = cells(arr)
    assert len(all_cells) == 13
    assert len(chambers(arr)) == 6

    orbits = set()
    for s in all_cells:
        p = witness_point(arr, s)
        orbit = frozenset(sign_vector_of(arr, mat_vec(g, p)) for g in a2gl2.weyl_group)
        orbits.add(orbit)
    assert len(orbits) == 8

    packaged = cell_orbits(a2gl2)
    assert {frozenset(o) for o in packaged} == orbits
    assert [len(o) for o in packaged] == [1, 1, 1, 2, 2, 2, 2, 2]
    assert sum(len(o) for o in packaged) == 13

    faces = enumerate_special_faces(a2gl2)
    assert [(o.dim, o.orbit_size) for o in faces] == [(2, 1), (1, 2), (1, 1), (0, 1)]
    assert sum(o.orbit_size for o in faces) == 5


def test_special_face_orbit_representatives(a2gl2):
    faces = enumerate_special_faces(a2gl2)
    bases = [tuple(tuple(x) for x in o.flat.subspace.basis) for o in faces]
    assert bases == [
        ((1, 0), (0, 1)),
        ((0, 1),),
        ((1, 1),),
        (),
    ]


# -- closure laws ---------------------------------------------------------------


def _random_vectors(rng, rank, count):
    return [tuple(rng.randint(-3, 3) for _ in range(rank)) for _ in range(count)]


def test_closure_is_extensive_idempotent_monotone():
    rng = random.Random(91)
    specs = [load_spec(d) for d in ALL_DOCS]
    for _ in range(120):
        spec = rng.choice(specs)
        vecs = _random_vectors(rng, spec.rank, rng.randint(0, 3))
        face = Face.from_vectors(vecs, spec.rank)
        flat = special_face_closure(spec, face)
        assert flat.subspace.contains(face.subspace)
        again = special_face_closure(spec, Face(flat.subspace))
        assert again == flat
        sub_face = Face.from_vectors(vecs[: len(vecs) // 2], spec.rank)
        sub_flat = special_face_closure(spec, sub_face)
        assert flat.subspace.contains(sub_flat.subspace)


def test_central_rank_detects_special_faces():
    rng = random.Random(17)
    specs = [load_spec(d) for d in ALL_DOCS]
    for _ in range(150):
        spec = rng.choice(specs)
        face = Face.from_vectors(_random_vectors(rng, spec.rank, rng.randint(0, 3)), spec.rank)
        crk = central_rank(spec, face)
        assert crk >= face.dim
        flat = special_face_closure(spec, face)
        assert is_special(spec, face) == (flat.subspace == face.subspace)
        # the closure itself is always special, of the same central rank
        assert is_special(spec, Face(flat.subspace))


@given(st.integers(0, 4), st.data())
@settings(max_examples=60, deadline=None)
def test_closure_laws_hypothesis(spec_idx, data):
    spec = load_spec(ALL_DOCS[spec_idx])
    vec = st.tuples(*([st.integers(-2, 2)] * spec.rank))
    vecs = data.draw(st.lists(vec, max_size=3))
    more = data.draw(st.lists(vec, max_size=2))
    small = special_face_closure(spec, Face.from_vectors(vecs, spec.rank))
    big = special_face_closure(spec, Face.from_vectors(vecs + more, spec.rank))
    assert big.subspace.contains(small.subspace)
    assert special_face_closure(spec, Face(small.subspace)) == small


def test_spot_values_of_central_rank(a2gl2):
    # generic line: nothing vanishes, kernel of nothing is the plane
    assert central_rank(a2gl2, Face.from_vectors([(1, 2)], 2)) == 2
    assert not is_special(a2gl2, Face.from_vectors([(1, 2)], 2))
    # the diagonal kills both roots and nothing else
    assert central_rank(a2gl2, Face.from_vectors([(1, 1)], 2)) == 1
    assert is_special(a2gl2, Face.from_vectors([(1, 1)], 2))
    assert central_rank(a2gl2, Face.from_vectors([], 2)) == 0


# -- map-form faces --------------------------------------------------------------


def test_nondegenerate_quotient_reduces_maps(a2gl2):
    face = Face.from_map([[1, 1], [2, 2]], 2)
    assert face.dim == 1
    assert face.as_map is not None
    reduced = nondegenerate_quotient(face)
    assert reduced.as_map is None
    assert reduced.subspace == face.subspace
    with pytest.raises(SpecError):
        cotangent_arrangement(a2gl2, face)
    assert cotangent_arrangement(a2gl2, reduced).size == 1


def test_surjection_invariance(anyspec):
    rng = random.Random(5)
    for _ in range(20):
        face = nondegenerate_quotient(
            Face.from_vectors(_random_vectors(rng, anyspec.rank, rng.randint(1, 3)), anyspec.rank)
        )
        if face.dim == 0:
            continue
        k = face.dim
        while True:
            proj = [[rng.randint(-2, 2) for _ in range(k)] for _ in range(k + rng.randint(0, 1))]
            if span(proj, k).dim == k:
                break
        assert surjection_invariance_check(anyspec, face, proj)


def test_surjection_check_rejects_non_surjections(a2gl2):
    face = Face.from_vectors([(1, 0), (0, 1)], 2)
    with pytest.raises(SpecError):
        surjection_invariance_check(a2gl2, face, [[1, 0], [2, 0]])


# -- special cones ----------------------------------------------------------------


def test_special_cones_of_the_multiplicative_line():
    spec = load_spec(A1_GM)
    cones = enumerate_special_cones(spec)
    assert [c.signature.ambient_rays for c in cones] == [((-1,), (1,)), ((1,),), ()]
    # the closure of the negative ray is the whole line, not a half line
    down = special_cone_closure(spec, [(-1,)])
    assert down.ambient_rays == ((-1,), (1,))
    up = special_cone_closure(spec, [(1,)])
    assert up.ambient_rays == ((1,),)
    assert up.attractor_weights == ((1,),)
    assert down.attractor_weights == ()


def test_central_cone_of_the_rank3_borel(bgl3):
    sig = special_cone_closure(bgl3, [(0, 0, 0)])
    assert sig.flat.dim == 1
    assert sig.ambient_rays == ((-1, -1, -1), (1, 1, 1))
    # the filtration is central, so nothing is truncated away
    assert set(sig.parabolic_roots) == set(bgl3.roots)


def test_special_cone_orbits_rank2(a2gl2):
    cones = enumerate_special_cones(a2gl2)
    assert len(cones) == 12
    assert sum(c.orbit_size for c in cones) == 19
    table = {c.signature.ambient_rays: (c.dim, c.orbit_size) for c in cones}
    assert table[((0, 1), (1, 0))] == (2, 1)  # the dominant quadrant is symmetric
    assert table[((1, 1),)] == (1, 1)
    assert table[((0, 1),)] == (1, 2)
    assert table[()] == (0, 1)
    assert table[((-1, 0), (0, -1), (0, 1), (1, 0))] == (2, 1)  # the whole plane


def test_cone_closure_is_idempotent_and_extensive(anyspec):
    rng = random.Random(23)
    arr = global_arrangement(anyspec)
    for _ in range(25):
        rays = _random_vectors(rng, anyspec.rank, rng.randint(1, 3))
        sig = special_cone_closure(anyspec, rays)
        for r in rays:
            assert sig.cone.contains_point(
                cotangent_arrangement(anyspec, Face(sig.flat.subspace)),
                sig.flat.subspace.coords_in(qvec(r)),
            )
        again = special_cone_closure(anyspec, [qvec(r) for r in sig.ambient_rays] or [(0,) * anyspec.rank])
        assert again.ambient_rays == sig.ambient_rays
        assert again.flat == sig.flat


def test_attractor_monotone_under_ray_growth(a2gl2):
    # adding rays can only shrink the attractor and parabolic
    rng = random.Random(41)
    for _ in range(40):
        rays = _random_vectors(rng, 2, rng.randint(1, 2))
        more = rays + _random_vectors(rng, 2, 1)
        small = special_cone_closure(a2gl2, rays)
        big = special_cone_closure(a2gl2, more)
        assert set(big.attractor_weights) <= set(small.attractor_weights)
        assert set(big.parabolic_roots) <= set(small.parabolic_roots)


# -- constancy --------------------------------------------------------------------


def test_signatures_constant_on_chambers(a2gl2):
    faces = enumerate_special_faces(a2gl2)
    chamber_counts = []
    for orbit in faces:
        report = constancy_check(a2gl2, orbit.flat, samples=40, seed=7)
        assert report["ok"], report["discrepancies"]
        chamber_counts.append(len(report["chambers"]))
    assert chamber_counts == [6, 2, 2, 1]


def test_constancy_on_the_rank3_mixed_example():
    spec = load_spec(RANK3_MIXED)
    full = enumerate_special_faces(spec)[0]
    assert full.dim == 3
    report = constancy_check(spec, full.flat, samples=15, seed=3)
    assert report["ok"]


# -- determinism ------------------------------------------------------------------


def test_enumerations_are_deterministic():
    a = load_spec(A2_GL2)
    b = load_spec(dict(A2_GL2))
    assert a == b
    assert enumerate_special_faces(a) == enumerate_special_faces(b)
    assert enumerate_special_cones(a) == enumerate_special_cones(b)
    r1 = constancy_check(a, enumerate_special_faces(a)[0].flat, samples=5, seed=11)
    r2 = constancy_check(b, enumerate_special_faces(b)[0].flat, samples=5, seed=11)
    assert r1 == r2
