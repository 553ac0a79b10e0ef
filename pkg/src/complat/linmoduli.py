"""Quiver representations over small finite fields and decomposition
combinatorics of dimension vectors.

The counting side is exact and brute-force: field arithmetic is
table-driven, every representation of a dimension vector is enumerated,
isomorphism classes come from a full orbit sweep, and Hall numbers count
actual subrepresentations. Everything is guarded by caps and enumerated in
lexicographic order, so results are deterministic and independent of the
process.

The combinatorial side mirrors the geometry of the moduli of objects: the
special faces of the stack of representations with dimension vector gamma
are the multiset decompositions of gamma, and ordered tuples of nonzero
dimension vectors form a category under ordered refinement. The
correspondence with the flats of the associated linear quotient model is
checked by cross_check_special_faces.
"""

from __future__ import annotations

import itertools
import json
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

from .errors import CapExceeded, SpecError
from .jsonio import canonical_json, document_digest

SWEEP_CAP = 10_000_000

DimVector = tuple[int, ...]
GFMatrix = tuple[tuple[int, ...], ...]
Rep = tuple[GFMatrix, ...]
GFSubspace = tuple[GFMatrix, tuple[int, ...]]  # RREF rows plus their pivot columns
ClassRef = tuple[DimVector, int]

# irreducible polynomials (coefficients low to high, monic) for the
# supported non-prime field sizes
_IRREDUCIBLE = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 0, 1),
    27: (1, 2, 0, 1),
}


class GF:
    """Arithmetic tables for a finite field of order q.

    Elements are the integers 0..q-1. For a prime power p^k the element
    sum(c_i * p^i) stands for the polynomial sum(c_i * x^i) modulo a fixed
    irreducible, so 0 and 1 are always the additive and multiplicative
    units.
    """

    def __init__(self, q: int):
        if q < 2:
            raise SpecError(f"field size must be at least 2, got {q}")
        p = next((d for d in range(2, q + 1) if q % d == 0), q)
        k = 0
        m = q
        while m % p == 0:
            m //= p
            k += 1
        if m != 1:
            raise SpecError(f"field size must be a prime power, got {q}")
        if k > 1 and q not in _IRREDUCIBLE:
            raise SpecError(f"unsupported field size {q}")
        self.q = q
        self.p = p

        def digits(a):
            out = []
            for _ in range(k):
                out.append(a % p)
                a //= p
            return out

        def undigits(cs):
            a = 0
            for c in reversed(cs):
                a = a * p + c
            return a

        def poly_mul(a, b):
            da, db = digits(a), digits(b)
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] = (prod[i + j] + x * y) % p
            if k > 1:
                red = _IRREDUCIBLE[q]
                for i in range(len(prod) - 1, k - 1, -1):
                    c = prod[i]
                    if c:
                        prod[i] = 0
                        for j, cj in enumerate(red[:-1]):
                            prod[i - k + j] = (prod[i - k + j] - c * cj) % p
            return undigits(prod[:k])

        self._add = tuple(
            tuple(undigits([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q))
            for a in range(q)
        )
        self._mul = tuple(tuple(poly_mul(a, b) for b in range(q)) for a in range(q))
        self._neg = tuple(undigits([(-x) % p for x in digits(a)]) for a in range(q))
        inv = [0] * q
        for a in range(1, q):
            inv[a] = next(b for b in range(1, q) if self._mul[a][b] == 1)
        self._inv = tuple(inv)

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[a]

    @property
    def elements(self) -> range:
        return range(self.q)


@lru_cache(maxsize=None)
def gf(q: int) -> GF:
    return GF(q)


# -- matrices over GF(q) --------------------------------------------------------


def gf_mat_vec(F: GF, m: GFMatrix, v: Sequence[int]) -> tuple[int, ...]:
    out = []
    for row in m:
        acc = 0
        for x, y in zip(row, v):
            acc = F.add(acc, F.mul(x, y))
        out.append(acc)
    return tuple(out)


def gf_mat_mul(F: GF, a: GFMatrix, b: GFMatrix) -> GFMatrix:
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(
            _dotcol(F, row, b, j)
            for j in range(cols)
        )
        for row in a
    )


def _dotcol(F: GF, row, b, j):
    acc = 0
    for x, brow in zip(row, b):
        acc = F.add(acc, F.mul(x, brow[j]))
    return acc


def gf_rref(F: GF, rows: Sequence[Sequence[int]], width: int) -> GFSubspace:
    work = [list(r) for r in rows]
    out: list[list[int]] = []
    pivots: list[int] = []
    col = 0
    r = 0
    while col < width:
        pr = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if pr is None:
            col += 1
            continue
        work[r], work[pr] = work[pr], work[r]
        c = F.inv(work[r][col])
        work[r] = [F.mul(c, x) for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                f = work[i][col]
                work[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        col += 1
    out = work[:r]
    return tuple(tuple(row) for row in out), tuple(pivots)


def gf_reduce(F: GF, rows: GFMatrix, pivots: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    """v minus its projection onto the RREF rows; zero iff v is in the span."""
    w = list(v)
    for row, p in zip(rows, pivots):
        c = w[p]
        if c:
            for j, x in enumerate(row):
                if x:
                    w[j] = F.sub(w[j], F.mul(c, x))
    return tuple(w)


def gf_invertible(F: GF, m: GFMatrix) -> bool:
    n = len(m)
    if any(len(row) != n for row in m):
        return False
    _, pivots = gf_rref(F, m, n)
    return len(pivots) == n


def gf_inverse(F: GF, m: GFMatrix) -> GFMatrix:
    n = len(m)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    rows, pivots = gf_rref(F, aug, 2 * n)
    if pivots[:n] != tuple(range(n)):
        raise ZeroDivisionError("matrix is not invertible")
    return tuple(tuple(row[n:]) for row in rows)


@lru_cache(maxsize=None)
def all_subspaces(q: int, n: int) -> tuple[GFSubspace, ...]:
    """Every subspace of F_q^n as an RREF row basis with its pivots."""
    F = gf(q)
    out: list[GFSubspace] = []
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [
                (i, j)
                for i in range(k)
                for j in range(pivots[i] + 1, n)
                if j not in pivots
            ]
            for values in itertools.product(F.elements, repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for i in range(k):
                    rows[i][pivots[i]] = 1
                for (i, j), v in zip(free, values):
                    rows[i][j] = v
                out.append((tuple(tuple(r) for r in rows), pivots))
    return tuple(sorted(out))


# -- quivers and representations -------------------------------------------------


@dataclass(frozen=True)
class Quiver:
    """A finite quiver; arrows are (source, target) vertex indices and may
    repeat or loop."""

    vertices: tuple[str, ...]
    arrows: tuple[tuple[int, int], ...]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)


def load_quiver(doc: dict) -> Quiver:
    """Validate and load a quiver document (strict schema)."""
    if not isinstance(doc, dict):
        raise SpecError("quiver document must be a JSON object")
    expected = {"type", "vertices", "arrows"}
    if set(doc) - expected:
        raise SpecError(f"unknown quiver fields: {sorted(set(doc) - expected)}")
    if expected - set(doc):
        raise SpecError(f"missing quiver fields: {sorted(expected - set(doc))}")
    if doc["type"] != "quiver":
        raise SpecError(f"expected type 'quiver', got {doc['type']!r}")
    verts = doc["vertices"]
    if (
        not isinstance(verts, (list, tuple))
        or not verts
        or not all(isinstance(v, str) for v in verts)
    ):
        raise SpecError("vertices must be a nonempty list of names")
    if len(set(verts)) != len(verts):
        raise SpecError("vertex names must be distinct")
    index = {v: i for i, v in enumerate(verts)}
    arrows = []
    for a in doc["arrows"]:
        if not isinstance(a, (list, tuple)) or len(a) != 2 or any(v not in index for v in a):
            raise SpecError(f"arrow must be a pair of vertex names, got {a!r}")
        arrows.append((index[a[0]], index[a[1]]))
    return Quiver(tuple(verts), tuple(arrows))


def _check_gamma(quiver: Quiver, gamma: Sequence[int]) -> DimVector:
    gamma = tuple(gamma)
    if len(gamma) != quiver.n_vertices or any(
        not isinstance(x, int) or isinstance(x, bool) or x < 0 for x in gamma
    ):
        raise SpecError(f"dimension vector must be {quiver.n_vertices} nonnegative ints")
    return gamma


def rep_space_dim(quiver: Quiver, gamma: Sequence[int]) -> int:
    gamma = _check_gamma(quiver, gamma)
    return sum(gamma[s] * gamma[t] for s, t in quiver.arrows)


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def stacky_count(quiver: Quiver, gamma: Sequence[int], q: int) -> Fraction:
    """Groupoid cardinality of representations with this dimension vector:
    the point count of the space divided by the order of the base-change
    group."""
    gamma = _check_gamma(quiver, gamma)
    gf(q)
    denom = 1
    for g in gamma:
        denom *= gl_order(g, q)
    return Fraction(q ** rep_space_dim(quiver, gamma), denom)


def _all_matrices(q: int, n_rows: int, n_cols: int) -> Iterator[GFMatrix]:
    rows = itertools.product(range(q), repeat=n_cols)
    for flat in itertools.product(rows, repeat=n_rows):
        yield flat


def all_reps(quiver: Quiver, gamma: Sequence[int], q: int) -> Iterator[Rep]:
    """Every representation, lexicographically."""
    gamma = _check_gamma(quiver, gamma)
    per_arrow = [tuple(_all_matrices(q, gamma[t], gamma[s])) for s, t in quiver.arrows]
    for combo in itertools.product(*per_arrow):
        yield combo


@lru_cache(maxsize=None)
def _general_linear(q: int, n: int) -> tuple[tuple[GFMatrix, GFMatrix], ...]:
    """All of GL_n(F_q) as (matrix, inverse) pairs, lexicographically."""
    F = gf(q)
    out = []
    for m in _all_matrices(q, n, n):
        if gf_invertible(F, m):
            out.append((m, gf_inverse(F, m)))
    return tuple(out)


def _act(quiver: Quiver, F: GF, g: Sequence[tuple[GFMatrix, GFMatrix]], rep: Rep) -> Rep:
    # base change: conjugate each arrow matrix by the vertex transforms
    out = []
    for m, (s, t) in zip(rep, quiver.arrows):
        gt = g[t][0]
        gs_inv = g[s][1]
        if len(m) and len(m[0]):
            m = gf_mat_mul(F, gf_mat_mul(F, gt, m), gs_inv)
        out.append(m)
    return tuple(out)


_CACHE_DIR: Optional[str] = None


def set_cache_dir(path: Optional[str]) -> None:
    """Directory for persisting class data across processes; None disables.

    The cache is an optimization only: results are identical with or
    without it, an unreadable or stale entry is silently recomputed, and a
    request over the sweep cap fails whether or not it is cached.
    """
    global _CACHE_DIR
    _CACHE_DIR = path


def _cache_path(quiver: Quiver, gamma: DimVector, q: int) -> Optional[str]:
    if _CACHE_DIR is None:
        return None
    key = document_digest(
        {
            "vertices": list(quiver.vertices),
            "arrows": [list(a) for a in quiver.arrows],
            "gamma": list(gamma),
            "q": q,
        }
    )
    return os.path.join(_CACHE_DIR, f"classes-{key}.json")


def _deep_rep(data) -> Rep:
    return tuple(tuple(tuple(int(x) for x in row) for row in m) for m in data)


def _cache_load(quiver: Quiver, gamma: DimVector, q: int) -> Optional["IsoClasses"]:
    path = _cache_path(quiver, gamma, q)
    if path is None:
        return None
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        reps = tuple(_deep_rep(r) for r in data["reps"])
        classes = IsoClasses(
            quiver,
            gamma,
            q,
            reps,
            tuple(int(n) for n in data["orbit_sizes"]),
            tuple(int(n) for n in data["aut_orders"]),
            int(data["group_order"]),
            {_deep_rep(r): int(i) for r, i in data["class_of"]},
        )
        if sum(Fraction(1, a) for a in classes.aut_orders) != stacky_count(quiver, gamma, q):
            return None
        if len(classes.class_of) != sum(classes.orbit_sizes):
            return None
        return classes
    except (OSError, ValueError, KeyError, TypeError):
        return None


def _cache_store(classes: "IsoClasses") -> None:
    path = _cache_path(classes.quiver, classes.gamma, classes.q)
    if path is None:
        return
    doc = {
        "reps": list(classes.reps),
        "orbit_sizes": list(classes.orbit_sizes),
        "aut_orders": list(classes.aut_orders),
        "group_order": classes.group_order,
        "class_of": sorted((rep, idx) for rep, idx in classes.class_of.items()),
    }
    try:
        os.makedirs(_CACHE_DIR, exist_ok=True)
        tmp = f"{path}.tmp.{os.getpid()}"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(doc) + "\n")
        os.replace(tmp, path)
    except OSError:
        pass


@dataclass
class IsoClasses:
    """The isomorphism classes of representations of one dimension vector:
    lexicographically least representatives, orbit and automorphism-group
    sizes, and a lookup from every representation to its class index."""

    quiver: Quiver
    gamma: DimVector
    q: int
    reps: tuple[Rep, ...]
    orbit_sizes: tuple[int, ...]
    aut_orders: tuple[int, ...]
    group_order: int
    class_of: dict


@lru_cache(maxsize=None)
def iso_classes(quiver: Quiver, gamma: DimVector, q: int, cap: int = SWEEP_CAP) -> IsoClasses:
    """Full orbit sweep of the base-change action.

    The cost is (number of representations) x (group order), checked
    against the cap before starting. The mass of the classes, each
    weighted by 1/|Aut|, must equal the stacky count; that identity is
    asserted on every sweep.
    """
    gamma = _check_gamma(quiver, gamma)
    F = gf(q)
    n_reps = q ** rep_space_dim(quiver, gamma)
    group_order = 1
    for g in gamma:
        group_order *= gl_order(g, q)
    if n_reps * group_order > cap:
        raise CapExceeded(
            f"orbit sweep of {n_reps} representations x group of {group_order} exceeds cap {cap}"
        )
    cached = _cache_load(quiver, gamma, q)
    if cached is not None:
        return cached
    per_vertex = [_general_linear(q, g) for g in gamma]
    class_of: dict = {}
    reps: list[Rep] = []
    orbit_sizes: list[int] = []
    aut_orders: list[int] = []
    for rep in all_reps(quiver, gamma, q):
        if rep in class_of:
            continue
        idx = len(reps)
        orbit = {_act(quiver, F, g, rep) for g in itertools.product(*per_vertex)}
        for member in orbit:
            class_of[member] = idx
        assert min(orbit) == rep
        assert group_order % len(orbit) == 0
        reps.append(rep)
        orbit_sizes.append(len(orbit))
        aut_orders.append(group_order // len(orbit))
    assert sum(Fraction(1, a) for a in aut_orders) == stacky_count(quiver, gamma, q)
    out = IsoClasses(
        quiver, gamma, q, tuple(reps), tuple(orbit_sizes), tuple(aut_orders), group_order, class_of
    )
    _cache_store(out)
    return out


# -- subrepresentations and Hall numbers ------------------------------------------


def subrep_spaces(
    quiver: Quiver, rep: Rep, gamma: DimVector, q: int
) -> Iterator[tuple[GFSubspace, ...]]:
    """All invariant tuples of subspaces (one per vertex) of a representation."""
    F = gf(q)
    per_vertex = [all_subspaces(q, g) for g in gamma]
    for spaces in itertools.product(*per_vertex):
        ok = True
        for m, (s, t) in zip(rep, quiver.arrows):
            rows_t, piv_t = spaces[t]
            for b in spaces[s][0]:
                if any(gf_reduce(F, rows_t, piv_t, gf_mat_vec(F, m, b))):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield spaces


def sub_gamma(spaces: Sequence[GFSubspace]) -> DimVector:
    return tuple(len(rows) for rows, _ in spaces)


def sub_rep(quiver: Quiver, rep: Rep, spaces: Sequence[GFSubspace], q: int) -> Rep:
    """The induced representation on an invariant tuple of subspaces, in
    their RREF bases; coordinates are pivot reads."""
    F = gf(q)
    out = []
    for m, (s, t) in zip(rep, quiver.arrows):
        rows_s = spaces[s][0]
        piv_t = spaces[t][1]
        cols = [tuple(gf_mat_vec(F, m, b)[p] for p in piv_t) for b in rows_s]
        out.append(tuple(tuple(col[i] for col in cols) for i in range(len(piv_t))))
    return tuple(out)


def quotient_rep(
    quiver: Quiver, gamma: DimVector, rep: Rep, spaces: Sequence[GFSubspace], q: int
) -> Rep:
    """The induced representation on the quotients, in the bases given by
    the non-pivot coordinates."""
    F = gf(q)
    nonpiv = [
        [j for j in range(gamma[v]) if j not in spaces[v][1]] for v in range(quiver.n_vertices)
    ]
    out = []
    for m, (s, t) in zip(rep, quiver.arrows):
        rows_t, piv_t = spaces[t]
        cols = []
        for j in nonpiv[s]:
            image = tuple(row[j] for row in m)
            red = gf_reduce(F, rows_t, piv_t, image)
            cols.append(tuple(red[jj] for jj in nonpiv[t]))
        out.append(tuple(tuple(col[i] for col in cols) for i in range(len(nonpiv[t]))))
    return tuple(out)


def count_subreps_by_dim(quiver: Quiver, q: int, ref: ClassRef) -> dict[DimVector, int]:
    """Subrepresentation counts of a class representative, by dimension
    vector. On the one-vertex arrowless quiver these are the Gaussian
    binomial coefficients."""
    gamma, idx = ref
    classes = iso_classes(quiver, gamma, q)
    out: Counter = Counter()
    for spaces in subrep_spaces(quiver, classes.reps[idx], gamma, q):
        out[sub_gamma(spaces)] += 1
    return dict(out)


def class_refs(quiver: Quiver, q: int, gamma: Sequence[int]) -> list[ClassRef]:
    gamma = _check_gamma(quiver, gamma)
    return [(gamma, i) for i in range(len(iso_classes(quiver, gamma, q).reps))]


def hall_number(quiver: Quiver, q: int, whole: ClassRef, quot: ClassRef, sub: ClassRef) -> int:
    """The number of subrepresentations of `whole` isomorphic to `sub`
    with quotient isomorphic to `quot`."""
    lgam, li = whole
    mgam, mi = quot
    ngam, ni = sub
    if tuple(a + b for a, b in zip(mgam, ngam)) != lgam:
        return 0
    rep = iso_classes(quiver, lgam, q).reps[li]
    subs = iso_classes(quiver, ngam, q)
    quots = iso_classes(quiver, mgam, q)
    count = 0
    for spaces in subrep_spaces(quiver, rep, lgam, q):
        if sub_gamma(spaces) != ngam:
            continue
        if subs.class_of[sub_rep(quiver, rep, spaces, q)] != ni:
            continue
        if quots.class_of[quotient_rep(quiver, lgam, rep, spaces, q)] != mi:
            continue
        count += 1
    return count


def hall_product(quiver: Quiver, q: int, f: dict, g: dict) -> dict:
    """Convolution of class functions: (f*g)(L) = sum over subreps S of L
    of f(L/S) * g(S). f and g map ClassRef -> value; zero results are
    dropped."""
    out: dict = {}
    for df in sorted({ref[0] for ref in f}):
        for dg in sorted({ref[0] for ref in g}):
            gamma = tuple(a + b for a, b in zip(df, dg))
            whole = iso_classes(quiver, gamma, q)
            subs = iso_classes(quiver, dg, q)
            quots = iso_classes(quiver, df, q)
            for li, rep in enumerate(whole.reps):
                total = 0
                for spaces in subrep_spaces(quiver, rep, gamma, q):
                    if sub_gamma(spaces) != dg:
                        continue
                    sc = subs.class_of[sub_rep(quiver, rep, spaces, q)]
                    qc = quots.class_of[quotient_rep(quiver, gamma, rep, spaces, q)]
                    total += f.get((df, qc), 0) * g.get((dg, sc), 0)
                if total:
                    ref = (gamma, li)
                    out[ref] = out.get(ref, 0) + total
    return {k: v for k, v in out.items() if v}


def dim_vectors(n: int, total: int) -> list[DimVector]:
    """All length-n vectors of nonnegative ints summing to total."""
    if n == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        for rest in dim_vectors(n - 1, total - first):
            out.append((first,) + rest)
    return out


def verify_counting_hall(quiver: Quiver, q: int, max_total: int) -> dict:
    """Associativity of the convolution on every triple of classes with
    total dimension at most max_total, cross-checked against direct
    two-step flag counts."""
    refs: list[ClassRef] = []
    for total in range(max_total + 1):
        for gamma in dim_vectors(quiver.n_vertices, total):
            refs.extend(class_refs(quiver, q, gamma))
    triples = 0
    flag_checks = 0
    for ra, rb, rc in itertools.product(refs, repeat=3):
        if sum(sum(r[0]) for r in (ra, rb, rc)) > max_total:
            continue
        triples += 1
        left = hall_product(quiver, q, hall_product(quiver, q, {ra: 1}, {rb: 1}), {rc: 1})
        right = hall_product(quiver, q, {ra: 1}, hall_product(quiver, q, {rb: 1}, {rc: 1}))
        if left != right:
            return {"ok": False, "triple": (ra, rb, rc), "left": left, "right": right}
        gamma = tuple(x + y + z for x, y, z in zip(ra[0], rb[0], rc[0]))
        whole = iso_classes(quiver, gamma, q)
        for li, rep in enumerate(whole.reps):
            flags = _count_flags(quiver, q, gamma, rep, ra, rb, rc)
            if flags != left.get((gamma, li), 0):
                return {"ok": False, "triple": (ra, rb, rc), "class": (gamma, li), "flags": flags}
            flag_checks += 1
    return {"ok": True, "classes": len(refs), "triples": triples, "flag_checks": flag_checks}


def _count_flags(
    quiver: Quiver, q: int, gamma: DimVector, rep: Rep, ra: ClassRef, rb: ClassRef, rc: ClassRef
) -> int:
    """Chains S1 <= S2 <= rep with S1 of class rc, S2/S1 of class rb and
    rep/S2 of class ra. Inner subspaces are enumerated inside S2 written
    in its own basis, which identifies them with subspaces of the ambient
    representation."""
    quots_a = iso_classes(quiver, ra[0], q)
    subs_c = iso_classes(quiver, rc[0], q)
    quots_b = iso_classes(quiver, rb[0], q)
    mid_gamma = tuple(a + b for a, b in zip(rb[0], rc[0]))
    count = 0
    for spaces2 in subrep_spaces(quiver, rep, gamma, q):
        g2 = sub_gamma(spaces2)
        if g2 != mid_gamma:
            continue
        if quots_a.class_of.get(quotient_rep(quiver, gamma, rep, spaces2, q)) != ra[1]:
            continue
        mid = sub_rep(quiver, rep, spaces2, q)
        for spaces1 in subrep_spaces(quiver, mid, g2, q):
            if sub_gamma(spaces1) != rc[0]:
                continue
            if subs_c.class_of[sub_rep(quiver, mid, spaces1, q)] != rc[1]:
                continue
            if quots_b.class_of[quotient_rep(quiver, g2, mid, spaces1, q)] != rb[1]:
                continue
            count += 1
    return count


# -- decomposition combinatorics ---------------------------------------------------


def multiset_decompositions(gamma: Sequence[int]) -> tuple[tuple[DimVector, ...], ...]:
    """All multisets of nonzero dimension vectors summing to gamma, each
    as a tuple with parts in nonincreasing order."""
    gamma = tuple(gamma)
    if any(not isinstance(x, int) or x < 0 for x in gamma):
        raise SpecError("dimension vector entries must be nonnegative ints")

    def nonzero_parts(bound):
        for v in itertools.product(*(range(b + 1) for b in bound)):
            if any(v):
                yield v

    def rec(remaining, max_part):
        if not any(remaining):
            yield ()
            return
        for part in nonzero_parts(remaining):
            if part > max_part:
                continue
            rest = tuple(r - p for r, p in zip(remaining, part))
            for tail in rec(rest, part):
                yield (part,) + tail

    return tuple(sorted(rec(gamma, gamma)))


def special_face_decompositions(gamma: Sequence[int]) -> tuple[tuple[DimVector, ...], ...]:
    """The special faces of the stack of representations with dimension
    vector gamma, in their combinatorial form: a face splits the
    representation into a multiset of nonzero summands."""
    return multiset_decompositions(gamma)


@dataclass(frozen=True)
class LmsMorphism:
    """An ordered refinement: for each source index, the ordered tuple of
    target indices whose dimension vectors sum to it."""

    source: int
    target: int
    orders: tuple[tuple[int, ...], ...]


@dataclass
class LmsCategory:
    objects: tuple[tuple[DimVector, ...], ...]
    morphisms: tuple[LmsMorphism, ...]
    identities: tuple[int, ...]
    composition: dict
    identification: dict

    def compose(self, first: int, then: int) -> int:
        return self.composition[(first, then)]


def hall_category_lms(
    n_vertices: int,
    max_total: int,
    identify: Optional[Callable[[tuple[DimVector, ...]], object]] = None,
) -> LmsCategory:
    """The category of ordered tuples of nonzero dimension vectors with
    total dimension at most max_total.

    A morphism refines each source entry into an ordered run of target
    entries; composition concatenates runs. Objects are never merged; the
    identification report says how many objects the `identify` key (by
    default: forgetting the order of the tuple) would merge.
    """
    vectors = [v for t in range(1, max_total + 1) for v in dim_vectors(n_vertices, t)]
    vectors = [v for v in vectors if any(v)]
    objects: list[tuple[DimVector, ...]] = [()]
    frontier: list[tuple[DimVector, ...]] = [()]
    while frontier:
        nxt = []
        for obj in frontier:
            used = sum(sum(v) for v in obj)
            for v in vectors:
                if used + sum(v) <= max_total:
                    nxt.append(obj + (v,))
        objects.extend(nxt)
        frontier = nxt
    objects.sort()

    morphisms: list[LmsMorphism] = []
    for si, a in enumerate(objects):
        for ti, b in enumerate(objects):
            if len(b) < len(a):
                continue
            for assignment in itertools.product(range(len(a)), repeat=len(b)) if a else ([()] if not b else []):
                blocks = [[j for j, x in enumerate(assignment) if x == i] for i in range(len(a))]
                if any(
                    tuple(sum(b[j][v] for j in blk) for v in range(n_vertices)) != a[i]
                    for i, blk in enumerate(blocks)
                ):
                    continue
                for orders in itertools.product(*(itertools.permutations(blk) for blk in blocks)):
                    morphisms.append(LmsMorphism(si, ti, tuple(orders)))
    morphisms.sort(key=lambda m: (m.source, m.target, m.orders))
    index = {(m.source, m.target, m.orders): i for i, m in enumerate(morphisms)}

    identities = tuple(
        index[(oi, oi, tuple((j,) for j in range(len(obj))))] for oi, obj in enumerate(objects)
    )

    composition: dict = {}
    for i, m1 in enumerate(morphisms):
        for j, m2 in enumerate(morphisms):
            if m1.target != m2.source:
                continue
            orders = tuple(
                tuple(k for jj in blk for k in m2.orders[jj]) for blk in m1.orders
            )
            composition[(i, j)] = index[(m1.source, m2.target, orders)]

    key = identify if identify is not None else (lambda obj: tuple(sorted(obj)))
    classes = len({key(o) for o in objects})
    identification = {
        "objects": len(objects),
        "identification_classes": classes,
        "would_merge": len(objects) - classes,
        "applied": False,
    }
    return LmsCategory(tuple(objects), tuple(morphisms), identities, composition, identification)


def verify_lms_category(cat: LmsCategory) -> dict:
    """Exhaustive unit and associativity check of the refinement category."""
    for i, m in enumerate(cat.morphisms):
        if cat.compose(cat.identities[m.source], i) != i:
            return {"ok": False, "law": "left unit", "morphism": i}
        if cat.compose(i, cat.identities[m.target]) != i:
            return {"ok": False, "law": "right unit", "morphism": i}
    triples = 0
    for (i, j), ij in cat.composition.items():
        for k, m3 in enumerate(cat.morphisms):
            if m3.source != cat.morphisms[j].target:
                continue
            triples += 1
            if cat.compose(ij, k) != cat.compose(i, cat.compose(j, k)):
                return {"ok": False, "law": "associativity", "triple": (i, j, k)}
    return {
        "ok": True,
        "objects": len(cat.objects),
        "morphisms": len(cat.morphisms),
        "triples": triples,
    }


# -- cross-model comparison ---------------------------------------------------------


def quotient_spec_doc(quiver: Quiver, gamma: Sequence[int]) -> dict:
    """The linear quotient model of the representations of a quiver with a
    fixed dimension vector: one coordinate per (vertex, slot), arrow
    weights between slots, root pairs and adjacent transpositions within
    each vertex block."""
    gamma = _check_gamma(quiver, gamma)
    rank = sum(gamma)
    offset = [0] * quiver.n_vertices
    acc = 0
    for v, g in enumerate(gamma):
        offset[v] = acc
        acc += g

    def unit(i, j, rank):
        row = [0] * rank
        row[i] += 1
        row[j] -= 1
        return row

    weights = []
    for s, t in quiver.arrows:
        for a in range(gamma[s]):
            for b in range(gamma[t]):
                weights.append(unit(offset[t] + b, offset[s] + a, rank))
    roots = []
    for v, g in enumerate(gamma):
        for a in range(g):
            for b in range(g):
                if a != b:
                    roots.append(unit(offset[v] + a, offset[v] + b, rank))
    gens = []
    for v, g in enumerate(gamma):
        for a in range(g - 1):
            i, j = offset[v] + a, offset[v] + a + 1
            m = [[int(r == c) for c in range(rank)] for r in range(rank)]
            m[i][i] = m[j][j] = 0
            m[i][j] = m[j][i] = 1
            gens.append(m)
    return {
        "type": "linear_quotient",
        "rank": rank,
        "weights": weights,
        "roots": roots,
        "weyl_generators": gens,
    }


def cross_check_special_faces(quiver: Quiver, gamma: Sequence[int]) -> dict:
    """Compare the two models of the special faces of the representations
    with dimension vector gamma: flats of the linear quotient model up to
    its Weyl group, against multiset decompositions of gamma. A flat of
    dimension k must correspond to a decomposition into k parts."""
    from .stackmodel import enumerate_special_faces, load_spec

    gamma = _check_gamma(quiver, gamma)
    spec = load_spec(quotient_spec_doc(quiver, gamma))
    orbits = enumerate_special_faces(spec)
    by_dim = Counter(o.dim for o in orbits)
    decomps = multiset_decompositions(gamma)
    by_parts = Counter(len(d) for d in decomps)
    return {
        "ok": dict(by_dim) == dict(by_parts),
        "flat_orbits": len(orbits),
        "decompositions": len(decomps),
        "flat_orbits_by_dim": {str(k): v for k, v in sorted(by_dim.items())},
        "decompositions_by_parts": {str(k): v for k, v in sorted(by_parts.items())},
    }
