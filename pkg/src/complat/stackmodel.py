"""Component lattice of a linear quotient stack.

The model of V/G is combinatorial: the rank of a maximal torus, the weight
multiset of the representation V, the root set of G, and matrices
generating the Weyl group on the cocharacter lattice. Everything the
package computes about such a stack lives in Q^rank:

- graded points correspond to faces (subspaces of the rational cocharacter
  space, possibly presented as maps); their isomorphism type is a
  ComponentSignature: the weights and roots vanishing on the face,
- special faces are the flats of the arrangement cut by all weight and
  root hyperplanes; the special face closure is the minimal flat over a
  face,
- filtered points correspond to cones; the special cone closure of a ray
  set is the minimal cone cut by the tangent functionals taken with their
  own signs (weights are one-sided, roots come in +/- pairs), and its
  AttractorSignature records which weights attract and which roots sit in
  the parabolic,
- the Hall category has special-face orbits as objects and chambers of
  restricted sub-arrangements as morphisms, composed by the Tits rule.

Weyl symmetry is handled by explicit enumeration of the group, which is
assumed small (cap 100000); orbits of faces and cones are deduped by
canonical representatives, so all outputs are deterministic.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .arrangement import (
    ArrCone,
    Flat,
    HyperplaneArrangement,
    SignVector,
    cells,
    chambers,
    flats,
    minimal_cone_containing,
    minimal_flat_containing,
    rays_of_constraints,
    restrict,
    saturated_cone,
    sign_vector_of,
    witness_point,
)
from .errors import CapExceeded, SpecError
from .qlinalg import (
    IntVec,
    Scalar,
    Subspace,
    Vec,
    canonical_covector,
    canonical_covector_signed,
    covector_times_mat,
    determinant,
    dot,
    kernel,
    mat_mul,
    mat_vec,
    primitive,
    qvec,
    span,
    vec_neg,
    vec_scale,
)

WEYL_CAP = 100_000
CONE_CONSTRAINT_CAP = 12

Matrix = tuple[IntVec, ...]


@dataclass(frozen=True)
class QuotientStackSpec:
    """Combinatorial model of V/G on a rank-n maximal torus."""

    rank: int
    weights: tuple[IntVec, ...]
    roots: tuple[IntVec, ...]
    weyl_generators: tuple[Matrix, ...]
    weyl_group: tuple[Matrix, ...]


def _as_int_vec(v, rank: int, what: str) -> IntVec:
    if not isinstance(v, (list, tuple)) or len(v) != rank:
        raise SpecError(f"{what} must be a length-{rank} integer vector, got {v!r}")
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise SpecError(f"{what} must contain integers, got {v!r}")
    return tuple(v)


def _enumerate_weyl(generators: Sequence[Matrix], rank: int) -> tuple[Matrix, ...]:
    ident = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                prod = tuple(
                    tuple(sum(g[i][k] * h[k][j] for k in range(rank)) for j in range(rank))
                    for i in range(rank)
                )
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
                    if len(seen) > WEYL_CAP:
                        raise CapExceeded(f"weyl group larger than cap {WEYL_CAP}")
        frontier = nxt
    return tuple(sorted(seen))


def load_spec(doc: dict) -> QuotientStackSpec:
    """Validate and load a linear_quotient document.

    Checks the schema strictly (unknown fields are errors), enumerates the
    Weyl group from the generators, and verifies it is a symmetry of the
    data: unimodular matrices preserving the weight multiset and the root
    set.
    """
    if not isinstance(doc, dict):
        raise SpecError("spec document must be a JSON object")
    expected = {"type", "rank", "weights", "roots", "weyl_generators"}
    extra = set(doc) - expected
    if extra:
        raise SpecError(f"unknown spec fields: {sorted(extra)}")
    missing = expected - set(doc)
    if missing:
        raise SpecError(f"missing spec fields: {sorted(missing)}")
    if doc["type"] != "linear_quotient":
        raise SpecError(f"expected type 'linear_quotient', got {doc['type']!r}")
    rank = doc["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
        raise SpecError(f"rank must be a nonnegative integer, got {rank!r}")
    for field in ("weights", "roots", "weyl_generators"):
        if not isinstance(doc[field], (list, tuple)):
            raise SpecError(f"{field} must be a list")

    weights = tuple(sorted(_as_int_vec(w, rank, "weight") for w in doc["weights"]))
    roots = tuple(sorted(_as_int_vec(r, rank, "root") for r in doc["roots"]))
    if len(set(roots)) != len(roots):
        raise SpecError("roots must be a duplicate-free set")
    for r in roots:
        if all(x == 0 for x in r):
            raise SpecError("roots must be nonzero")
        if vec_neg(r) not in roots:
            raise SpecError(f"root set is not closed under negation: missing {vec_neg(r)}")

    gens = []
    for g in doc["weyl_generators"]:
        if not isinstance(g, (list, tuple)) or len(g) != rank:
            raise SpecError(f"weyl generator must be a {rank}x{rank} matrix, got {g!r}")
        mat = tuple(_as_int_vec(row, rank, "weyl generator row") for row in g)
        if abs(determinant(mat)) != 1:
            raise SpecError(f"weyl generator {mat} is not unimodular")
        gens.append(mat)

    root_set = set(roots)
    for g in gens:
        moved_w = sorted(tuple(int(x) for x in covector_times_mat(w, g)) for w in weights)
        if tuple(moved_w) != weights:
            raise SpecError(f"weyl generator {g} does not preserve the weight multiset")
        moved_r = {tuple(int(x) for x in covector_times_mat(r, g)) for r in roots}
        if moved_r != root_set:
            raise SpecError(f"weyl generator {g} does not preserve the root set")

    group = _enumerate_weyl(tuple(gens), rank)
    return QuotientStackSpec(rank, weights, roots, tuple(gens), group)


@dataclass(frozen=True)
class Face:
    """A face of the component lattice: a subspace of Q^rank, optionally
    remembered as the map that presented it (possibly non-injective)."""

    subspace: Subspace
    as_map: Optional[tuple[Vec, ...]] = None

    @staticmethod
    def from_vectors(vectors: Iterable[Sequence[Scalar]], rank: int) -> "Face":
        return Face(span(vectors, rank))

    @staticmethod
    def from_map(rows: Sequence[Sequence[Scalar]], rank: int) -> "Face":
        rows = tuple(qvec(r) for r in rows)
        for r in rows:
            if len(r) != rank:
                raise SpecError(f"face map row of length {len(r)}, expected {rank}")
        return Face(span(rows, rank), as_map=rows)

    @property
    def dim(self) -> int:
        return self.subspace.dim


def nondegenerate_quotient(face: Face) -> Face:
    """Replace a map-form face by its image, the induced injective face."""
    if face.as_map is None:
        return face
    return Face(face.subspace)


@dataclass(frozen=True)
class ComponentSignature:
    """Isomorphism data of a graded point: the face dimension, the multiset
    of weights fixed by the face, and the roots of its Levi."""

    face_dim: int
    fixed_weights: tuple[IntVec, ...]
    levi_roots: tuple[IntVec, ...]


@dataclass(frozen=True)
class AttractorSignature:
    """Isomorphism data of a filtered point: the cone inside its carrier
    flat, the weights with nonnegative pairing (the attractor) and the
    roots of the parabolic, plus the signature of the cone's span."""

    cone: ArrCone
    flat: Flat
    ambient_rays: tuple[IntVec, ...]
    attractor_weights: tuple[IntVec, ...]
    parabolic_roots: tuple[IntVec, ...]
    levi_part: ComponentSignature

    def __post_init__(self):
        fixed = Counter(self.levi_part.fixed_weights)
        attr = Counter(self.attractor_weights)
        assert not fixed - attr, "fixed weights of the span must attract"
        assert set(self.levi_part.levi_roots) <= set(self.parabolic_roots)


@lru_cache(maxsize=None)
def global_arrangement(spec: QuotientStackSpec) -> HyperplaneArrangement:
    """Hyperplanes dual to all nonzero weights and roots."""
    vecs = {canonical_covector(w) for w in spec.weights + spec.roots if any(w)}
    return HyperplaneArrangement(tuple(sorted(vecs)), spec.rank)


def cotangent_arrangement(spec: QuotientStackSpec, face: Face) -> HyperplaneArrangement:
    """Weights and roots restricted to an injective face, deduped, in the
    face's basis coordinates."""
    if face.as_map is not None:
        raise SpecError("face is in map form: reduce with nondegenerate_quotient")
    return restrict(global_arrangement(spec), face.subspace)


def component_signature(spec: QuotientStackSpec, face: Face | Subspace) -> ComponentSignature:
    sub = face.subspace if isinstance(face, Face) else face
    fixed = tuple(w for w in spec.weights if all(dot(w, b) == 0 for b in sub.basis))
    levi = tuple(r for r in spec.roots if all(dot(r, b) == 0 for b in sub.basis))
    return ComponentSignature(sub.dim, fixed, levi)


def special_face_closure(spec: QuotientStackSpec, face: Face) -> Flat:
    """Minimal flat of the global arrangement containing the face.

    Map-form faces are reduced first; the closure only sees the image.
    """
    face = nondegenerate_quotient(face)
    return minimal_flat_containing(global_arrangement(spec), face.subspace)


def central_rank(spec: QuotientStackSpec, face: Face) -> int:
    """Dimension of the common kernel of the face's fixed weights and Levi
    roots. Always >= the face dimension, with equality iff the face is a
    flat (a special face)."""
    face = nondegenerate_quotient(face)
    sig = component_signature(spec, face)
    cov = [w for w in sig.fixed_weights + sig.levi_roots if any(w)]
    return kernel(cov, spec.rank).dim


def is_special(spec: QuotientStackSpec, face: Face) -> bool:
    face = nondegenerate_quotient(face)
    return central_rank(spec, face) == face.dim


# -- Weyl orbits ---------------------------------------------------------------


def _act_subspace(g: Matrix, s: Subspace) -> Subspace:
    return span([mat_vec(g, b) for b in s.basis], s.ambient_dim)


def _subspace_key(s: Subspace):
    return tuple(x for row in s.basis for x in row)


@dataclass(frozen=True)
class FaceOrbit:
    """A Weyl orbit of special faces, named by its representative: the
    orbit member with the lexicographically least basis."""

    flat: Flat
    orbit_size: int
    signature: ComponentSignature

    @property
    def dim(self) -> int:
        return self.flat.dim


def enumerate_special_faces(spec: QuotientStackSpec) -> tuple[FaceOrbit, ...]:
    """All Weyl orbits of flats of the global arrangement."""
    arr = global_arrangement(spec)
    seen: set[Subspace] = set()
    orbits = []
    for fl in flats(arr):
        if fl.subspace in seen:
            continue
        orbit = sorted({_act_subspace(g, fl.subspace) for g in spec.weyl_group}, key=_subspace_key)
        seen.update(orbit)
        rep = orbit[0]
        rep_flat = minimal_flat_containing(arr, rep)
        assert rep_flat.subspace == rep, "weyl image of a flat must be a flat"
        orbits.append(FaceOrbit(rep_flat, len(orbit), component_signature(spec, rep)))
    orbits.sort(key=lambda o: (-o.dim, _subspace_key(o.flat.subspace)))
    return tuple(orbits)


def cell_orbits(spec: QuotientStackSpec) -> tuple[tuple[SignVector, ...], ...]:
    """Weyl orbits of the relatively open cells of the global arrangement.

    A group element carries a cell to the cell of the image of any interior
    witness point; exact witnesses make this safe.
    """
    arr = global_arrangement(spec)
    seen: set[SignVector] = set()
    orbits = []
    for s in cells(arr):
        if s in seen:
            continue
        point = witness_point(arr, s)
        orbit = {sign_vector_of(arr, mat_vec(g, point)) for g in spec.weyl_group}
        assert s in orbit, "identity must fix the cell"
        seen.update(orbit)
        orbits.append(tuple(sorted(orbit)))
    return tuple(sorted(orbits, key=lambda o: (len(o), o)))


# -- special cones -------------------------------------------------------------


def _signed_restrictions(spec: QuotientStackSpec, space: Subspace) -> tuple[IntVec, ...]:
    """Nonzero restrictions of the tangent functionals, keeping their own
    sign. Weights restrict one-sidedly; roots come in +/- pairs, so their
    restrictions do too. Coinciding restrictions merge."""
    out = set()
    for w in spec.weights + spec.roots:
        vals = tuple(dot(w, b) for b in space.basis)
        if any(v != 0 for v in vals):
            out.add(primitive(vals))
    return tuple(sorted(out))


def special_cone_closure(
    spec: QuotientStackSpec, rays: Sequence[Sequence[Scalar]]
) -> AttractorSignature:
    """Minimal special cone containing the given rays, with its signature.

    The carrier is the special face closure of the rays' span; inside it
    the cone is cut by every restricted tangent functional that is
    nonnegative on all rays, each with its own sign. No restriction can
    vanish on all the rays: the carrier flat would not be minimal.
    """
    rays = [qvec(r) for r in rays]
    flat = special_face_closure(spec, Face.from_vectors(rays, spec.rank))
    carrier = flat.subspace
    coords = []
    for r in rays:
        c = carrier.coords_in(r)
        assert c is not None, "closure must contain the rays"
        coords.append(c)
    ineqs = []
    for l in _signed_restrictions(spec, carrier):
        vals = [dot(l, c) for c in coords]
        assert any(vals) or not any(any(c) for c in coords), (
            "restricted functional vanishing on the rays contradicts flat minimality"
        )
        if all(v >= 0 for v in vals):
            ineqs.append(l)
    cone_rays = rays_of_constraints([], ineqs, carrier.dim)
    return _signature_from_cone_rays(spec, flat, cone_rays)


def _signature_from_cone_rays(
    spec: QuotientStackSpec, flat: Flat, cone_rays: tuple[IntVec, ...]
) -> AttractorSignature:
    carrier = flat.subspace
    arr_f = restrict(global_arrangement(spec), carrier)
    cone = saturated_cone(arr_f, cone_rays)
    ambient = tuple(sorted(primitive(carrier.lift(r)) for r in cone_rays))
    attractor = tuple(w for w in spec.weights if all(dot(w, a) >= 0 for a in ambient))
    parabolic = tuple(r for r in spec.roots if all(dot(r, a) >= 0 for a in ambient))
    levi = component_signature(spec, span(ambient, spec.rank))
    return AttractorSignature(cone, flat, ambient, attractor, parabolic, levi)


@dataclass(frozen=True)
class ConeOrbit:
    """A Weyl orbit of special cones, named by its representative."""

    signature: AttractorSignature
    orbit_size: int

    @property
    def dim(self) -> int:
        return self.signature.cone.dim


def _act_cone(
    spec: QuotientStackSpec, ambient_rays: tuple[IntVec, ...], g: Matrix
) -> tuple[IntVec, ...]:
    """Canonical ambient rays of the image cone. Mapping rays pointwise is
    not enough: the canonical form reduces pointed rays mod lineality, so
    the image set must be re-canonicalized through its own carrier."""
    if not ambient_rays:
        return ambient_rays
    moved = [mat_vec(g, r) for r in ambient_rays]
    carrier = span(moved, spec.rank)
    arr_f = restrict(global_arrangement(spec), carrier)
    cone = minimal_cone_containing(arr_f, [carrier.coords_in(v) for v in moved])
    return tuple(sorted(primitive(carrier.lift(r)) for r in cone.extreme_rays))


def enumerate_special_cones(
    spec: QuotientStackSpec, constraint_cap: int = CONE_CONSTRAINT_CAP
) -> tuple[ConeOrbit, ...]:
    """All Weyl orbits of special cones.

    A special cone is full-dimensional in its carrier flat and cut by
    one-sided restricted tangent constraints; lower-dimensional cones of a
    flat occur as full-dimensional cones on a smaller flat. Enumerates
    constraint subsets per flat, so the constraint count is capped.
    """
    arr = global_arrangement(spec)
    found: dict[tuple[IntVec, ...], Flat] = {}
    for fl in flats(arr):
        carrier = fl.subspace
        restr = _signed_restrictions(spec, carrier)
        if len(restr) > constraint_cap:
            raise CapExceeded(
                f"special cones: {len(restr)} constraints on a flat exceeds cap {constraint_cap}"
            )
        for mask in range(1 << len(restr)):
            ineqs = [restr[i] for i in range(len(restr)) if mask >> i & 1]
            cone_rays = rays_of_constraints([], ineqs, carrier.dim)
            if span(cone_rays, carrier.dim).dim != carrier.dim:
                continue
            ambient = tuple(sorted(primitive(carrier.lift(qvec(r))) for r in cone_rays))
            found.setdefault(ambient, fl)
    seen: set[tuple[IntVec, ...]] = set()
    orbits = []
    for ambient in sorted(found):
        if ambient in seen:
            continue
        orbit = {_act_cone(spec, ambient, g) for g in spec.weyl_group}
        assert orbit <= set(found), "weyl image of a special cone must be special"
        seen.update(orbit)
        rep = min(orbit)
        rep_rays = [qvec(r) for r in rep] or [qvec((0,) * spec.rank)]
        sig = special_cone_closure(spec, rep_rays)
        assert sig.ambient_rays == rep, "a special cone is the closure of its own rays"
        orbits.append(ConeOrbit(sig, len(orbit)))
    orbits.sort(key=lambda o: (-o.dim, o.signature.ambient_rays))
    return tuple(orbits)


# -- constancy -----------------------------------------------------------------


def constancy_check(
    spec: QuotientStackSpec,
    flat: Flat,
    samples: int = 100,
    seed: int = 0,
) -> dict:
    """Sample every chamber of the flat's cotangent arrangement and check
    that the graded and filtered signatures are constant on it.

    Points are strictly positive rational combinations of the chamber's
    pointed extreme rays plus arbitrary lineality components, with
    coefficients from a seeded PRNG over denominators <= 64. Every
    constraint covector vanishes on the lineality, so such points are
    always interior. Returns a JSON-able report.
    """
    carrier = flat.subspace
    arr_f = restrict(global_arrangement(spec), carrier)
    rng = random.Random(seed)
    report = {
        "flat_basis": [[str(x) for x in row] for row in carrier.basis],
        "seed": seed,
        "samples_per_chamber": samples,
        "chambers": [],
        "discrepancies": [],
    }
    for ch in chambers(arr_f):
        cone_rays = rays_of_constraints(
            [], [vec_scale(s, w) for w, s in zip(arr_f.covectors, ch)], carrier.dim
        )
        ray_set = set(cone_rays)
        pointed = [r for r in cone_rays if vec_neg(r) not in ray_set]
        lin_basis = [r for r in cone_rays if vec_neg(r) in ray_set and r < vec_neg(r)]
        seen_comp: set[ComponentSignature] = set()
        seen_attr: set[AttractorSignature] = set()
        for _ in range(samples):
            v = [Fraction(0)] * carrier.dim
            for r in pointed:
                c = Fraction(rng.randint(1, 64), rng.randint(1, 64))
                for j, x in enumerate(r):
                    v[j] += c * x
            for b in lin_basis:
                c = Fraction(rng.randint(-64, 64), rng.randint(1, 64))
                for j, x in enumerate(b):
                    v[j] += c * x
            v = tuple(v)
            assert sign_vector_of(arr_f, v) == ch, "interior sample left its chamber"
            p = carrier.lift(v)
            seen_comp.add(component_signature(spec, span([p], spec.rank)))
            seen_attr.add(special_cone_closure(spec, [p]))
        entry = {
            "signs": list(ch),
            "samples": samples,
            "component_signatures": len(seen_comp),
            "attractor_signatures": len(seen_attr),
        }
        if len(seen_comp) > 1 or len(seen_attr) > 1:
            report["discrepancies"].append(entry)
        report["chambers"].append(entry)
    report["ok"] = not report["discrepancies"]
    return report


def surjection_invariance_check(
    spec: QuotientStackSpec,
    face: Face,
    projection: Sequence[Sequence[Scalar]],
) -> bool:
    """Precomposing a face with a surjection onto its source must change
    neither the signature nor the closure."""
    face = nondegenerate_quotient(face)
    k = face.dim
    proj = [qvec(row) for row in projection]
    if any(len(row) != k for row in proj):
        raise SpecError(f"projection rows must have length {k}")
    if span(proj, k).dim != k:
        raise SpecError("projection is not surjective onto the face's source")
    composed = Face.from_map(mat_mul(proj, face.subspace.basis), spec.rank)
    reduced = nondegenerate_quotient(composed)
    return (
        component_signature(spec, reduced) == component_signature(spec, face)
        and special_face_closure(spec, reduced) == special_face_closure(spec, face)
    )


# -- Hall category -------------------------------------------------------------


@dataclass(frozen=True)
class HallMorphism:
    """A morphism of the Hall category: a Weyl-twisted embedding of one
    special-face representative in another, together with a chamber of the
    sub-arrangement of target hyperplanes containing the embedded source.

    The embedding is a source-dim x target-dim matrix in the bases of the
    two representatives; sub_covectors lists the target cotangent
    covectors vanishing on its image, in the chamber's coordinate order.
    """

    source: int
    target: int
    embedding: tuple[Vec, ...]
    chamber: SignVector
    sub_covectors: tuple[IntVec, ...]


@dataclass
class HallCategory:
    objects: tuple[FaceOrbit, ...]
    morphisms: tuple[HallMorphism, ...]
    identities: tuple[int, ...]
    composition: dict[tuple[int, int], int]

    def compose(self, first: int, then: int) -> int:
        return self.composition[(first, then)]


def _identity_rows(k: int) -> tuple[Vec, ...]:
    return tuple(tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k))


def hall_category(spec: QuotientStackSpec) -> HallCategory:
    """The category of special-face orbits.

    Morphisms A -> B: an embedding matrix (image of A's representative
    under some Weyl element, written in B's basis; equal matrices merge)
    plus a chamber of the hyperplanes of B's cotangent arrangement that
    contain the embedded copy. Composition embeds the first chamber and
    falls through to the second by the Tits rule; the table is verified
    closed under composition.
    """
    objects = enumerate_special_faces(spec)
    reps = [o.flat.subspace for o in objects]
    arr = global_arrangement(spec)
    cot = [restrict(arr, s) for s in reps]

    morphisms: list[HallMorphism] = []
    for si, a in enumerate(reps):
        for ti, b in enumerate(reps):
            if a.dim > b.dim:
                continue
            embeddings = set()
            for g in spec.weyl_group:
                rows = []
                for v in a.basis:
                    c = b.coords_in(mat_vec(g, v))
                    if c is None:
                        break
                    rows.append(c)
                else:
                    embeddings.add(tuple(rows))
            for emb in sorted(embeddings):
                sub = tuple(w for w in cot[ti].covectors if all(dot(w, row) == 0 for row in emb))
                for ch in chambers(HyperplaneArrangement(sub, b.dim)):
                    morphisms.append(HallMorphism(si, ti, emb, ch, sub))
    morphisms.sort(key=lambda m: (m.source, m.target, m.embedding, m.chamber))
    index = {(m.source, m.target, m.embedding, m.chamber): i for i, m in enumerate(morphisms)}

    identities = tuple(index[(oi, oi, _identity_rows(s.dim), ())] for oi, s in enumerate(reps))

    composition: dict[tuple[int, int], int] = {}
    for i, m1 in enumerate(morphisms):
        for j, m2 in enumerate(morphisms):
            if m1.target != m2.source:
                continue
            c = _compose_morphisms(m1, m2, cot[m2.target])
            k = index.get((c.source, c.target, c.embedding, c.chamber))
            assert k is not None, "composite fell outside the morphism set"
            composition[(i, j)] = k
    return HallCategory(objects, tuple(morphisms), identities, composition)


def _compose_morphisms(
    m1: HallMorphism, m2: HallMorphism, target_arr: HyperplaneArrangement
) -> HallMorphism:
    """Tits composition: a hyperplane through the composite image either
    pulls back along the second embedding to a hyperplane through the
    first image (keep the first chamber's sign, corrected for the
    canonicalization flip) or dies there (fall through to the second)."""
    emb = mat_mul(m1.embedding, m2.embedding)
    sub = tuple(w for w in target_arr.covectors if all(dot(w, row) == 0 for row in emb))
    signs = []
    for w in sub:
        pull = tuple(dot(w, row) for row in m2.embedding)
        if any(pull):
            canon, sgn = canonical_covector_signed(pull)
            signs.append(sgn * m1.chamber[m1.sub_covectors.index(canon)])
        else:
            signs.append(m2.chamber[m2.sub_covectors.index(w)])
    return HallMorphism(m1.source, m2.target, emb, tuple(signs), sub)


def verify_hall_category(cat: HallCategory) -> dict:
    """Exhaustively check unit laws and associativity of the table."""
    pairs = 0
    triples = 0
    for (i, j), k in cat.composition.items():
        pairs += 1
        assert cat.morphisms[k].source == cat.morphisms[i].source
        assert cat.morphisms[k].target == cat.morphisms[j].target
    for i, m1 in enumerate(cat.morphisms):
        if cat.compose(cat.identities[m1.source], i) != i:
            return {"ok": False, "law": "left unit", "morphism": i}
        if cat.compose(i, cat.identities[m1.target]) != i:
            return {"ok": False, "law": "right unit", "morphism": i}
        for j, m2 in enumerate(cat.morphisms):
            if m1.target != m2.source:
                continue
            ij = cat.compose(i, j)
            for k, m3 in enumerate(cat.morphisms):
                if m2.target != m3.source:
                    continue
                triples += 1
                if cat.compose(ij, k) != cat.compose(i, cat.compose(j, k)):
                    return {"ok": False, "law": "associativity", "triple": (i, j, k)}
    return {
        "ok": True,
        "objects": len(cat.objects),
        "morphisms": len(cat.morphisms),
        "pairs": pairs,
        "triples": triples,
    }


def _morphism_cone_ambient(cat: HallCategory, idx: int) -> tuple[IntVec, ...]:
    """Extreme rays, in Q^rank, of a morphism's closed chamber cone."""
    m = cat.morphisms[idx]
    carrier = cat.objects[m.target].flat.subspace
    rays = rays_of_constraints(
        [], [vec_scale(s, w) for w, s in zip(m.sub_covectors, m.chamber)], carrier.dim
    )
    return tuple(sorted(primitive(carrier.lift(qvec(r))) for r in rays))


def hall_composition_weight_identity(spec: QuotientStackSpec, cat: HallCategory) -> bool:
    """Check, on every composable pair, that the composite's one-sided
    tangent data splits into the part the first chamber sees and the part
    that degenerates to the second:

      {w >= 0 on composite} = {w >= 0, not identically 0, on the embedded
      first chamber} + {w identically 0 on the first, >= 0 on the second}

    as multisets of weights, and likewise for roots.
    """
    for (i, j), k in cat.composition.items():
        m2 = cat.morphisms[j]
        mid_carrier = cat.objects[cat.morphisms[i].target].flat.subspace
        out_carrier = cat.objects[m2.target].flat.subspace
        pushed = []
        for r in _morphism_cone_ambient(cat, i):
            c = mid_carrier.coords_in(qvec(r))
            assert c is not None
            pushed.append(out_carrier.lift(covector_times_mat(c, m2.embedding)))
        second = _morphism_cone_ambient(cat, j)
        comp = _morphism_cone_ambient(cat, k)

        def split_ok(vectors) -> bool:
            whole = Counter(v for v in vectors if all(dot(v, r) >= 0 for r in comp))
            seen_part = Counter(
                v
                for v in vectors
                if all(dot(v, r) >= 0 for r in pushed) and any(dot(v, r) != 0 for r in pushed)
            )
            degen_part = Counter(
                v
                for v in vectors
                if all(dot(v, r) == 0 for r in pushed) and all(dot(v, r) >= 0 for r in second)
            )
            return whole == seen_part + degen_part

        if not split_ok(spec.weights) or not split_ok(spec.roots):
            return False
    return True
