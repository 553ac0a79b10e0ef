"""Exact rational linear algebra over Q^n.

Conventions shared by the whole package:

- points and rays are tuples of ``fractions.Fraction``,
- covectors (linear functionals) are primitive integer tuples: gcd of the
  entries is 1 and the first nonzero entry is positive, so equal
  hyperplanes compare equal bitwise,
- subspaces are stored by their reduced row echelon basis, the unique
  canonical form, so equal subspaces compare equal bitwise and are usable
  as dict keys.

No floats anywhere. Denominators grow as they like; everything downstream
relies on these comparisons being exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Scalar = int | Fraction
Vec = tuple[Fraction, ...]
IntVec = tuple[int, ...]

ZERO = Fraction(0)


def qvec(entries: Iterable[Scalar]) -> Vec:
    """Coerce a sequence of ints/Fractions to a tuple of Fractions."""
    return tuple(Fraction(e) for e in entries)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    total = ZERO
    for a, b in zip(u, v):
        if a and b:
            total += Fraction(a) * Fraction(b)
    return total


def vec_add(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vec:
    return tuple(Fraction(a) + Fraction(b) for a, b in zip(u, v))


def vec_sub(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vec:
    return tuple(Fraction(a) - Fraction(b) for a, b in zip(u, v))


def vec_scale(c: Scalar, v: Sequence[Scalar]) -> Vec:
    c = Fraction(c)
    return tuple(c * Fraction(x) for x in v)


def vec_neg(v: Sequence[Scalar]) -> tuple:
    return tuple(-x for x in v)


def is_zero_vec(v: Sequence[Scalar]) -> bool:
    return all(x == 0 for x in v)


def primitive(entries: Sequence[Scalar]) -> IntVec:
    """Clear denominators and divide by the gcd. Keeps the sign.

    The zero vector is rejected: primitive vectors are direction data and
    a zero direction is always a caller bug.
    """
    vals = [Fraction(e) for e in entries]
    if all(v == 0 for v in vals):
        raise ValueError("zero vector has no primitive form")
    mult = lcm(*(v.denominator for v in vals)) if vals else 1
    ints = [int(v * mult) for v in vals]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


def canonical_covector(entries: Sequence[Scalar]) -> IntVec:
    """Primitive integer form with the first nonzero entry positive."""
    p = primitive(entries)
    for x in p:
        if x != 0:
            return p if x > 0 else vec_neg(p)
    raise ValueError("unreachable: zero covector")  # pragma: no cover


def canonical_covector_signed(entries: Sequence[Scalar]) -> tuple[IntVec, int]:
    """Canonical covector plus the sign s with entries ~ s * canonical.

    s = +1 when the input already points the canonical way, -1 otherwise.
    """
    p = primitive(entries)
    for x in p:
        if x != 0:
            return (p, 1) if x > 0 else (vec_neg(p), -1)
    raise ValueError("unreachable: zero covector")  # pragma: no cover


def sign(x: Scalar) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def rref(rows: Sequence[Sequence[Scalar]], width: int) -> tuple[tuple[Vec, ...], IntVec]:
    """Reduced row echelon form with unit pivots.

    Returns (nonzero rows, pivot columns). The output is the canonical
    representative of the row space: unique regardless of input order.
    """
    mat = [list(qvec(r)) for r in rows]
    for r in mat:
        if len(r) != width:
            raise ValueError(f"row of length {len(r)} in width-{width} matrix")
    pivots: list[int] = []
    row = 0
    for col in range(width):
        sel = next((i for i in range(row, len(mat)) if mat[i][col] != 0), None)
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        pv = mat[row][col]
        mat[row] = [x / pv for x in mat[row]]
        for i in range(len(mat)):
            if i != row and mat[i][col] != 0:
                c = mat[i][col]
                mat[i] = [a - c * b for a, b in zip(mat[i], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    out = tuple(tuple(r) for r in mat[:row])
    return out, tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n in reduced row echelon form.

    Construct through span()/kernel(); the constructor validates that the
    basis really is RREF so that structural equality means equality of
    subspaces.
    """

    basis: tuple[Vec, ...]
    ambient_dim: int

    def __post_init__(self):
        redone, _ = rref(self.basis, self.ambient_dim)
        if redone != self.basis:
            raise ValueError("basis is not in reduced row echelon form")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> IntVec:
        piv = []
        for row in self.basis:
            piv.append(next(i for i, x in enumerate(row) if x != 0))
        return tuple(piv)

    def reduce(self, v: Sequence[Scalar]) -> Vec:
        """Subtract the projection onto this subspace's pivot coordinates.

        The result is the canonical representative of v modulo the
        subspace; it is zero iff v lies in the subspace.
        """
        w = list(qvec(v))
        if len(w) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c != 0:
                for j in range(self.ambient_dim):
                    if row[j]:
                        w[j] -= c * row[j]
        return tuple(w)

    def contains_vector(self, v: Sequence[Scalar]) -> bool:
        return is_zero_vec(self.reduce(v))

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(b) for b in other.basis)

    def coords_in(self, v: Sequence[Scalar]) -> Optional[Vec]:
        """Coordinates of v in the RREF basis, or None if v is outside.

        RREF bases are the identity on their pivot columns, so the
        coordinate vector is just v restricted to the pivots.
        """
        if not self.contains_vector(v):
            return None
        vv = qvec(v)
        return tuple(vv[p] for p in self.pivots)

    def lift(self, coords: Sequence[Scalar]) -> Vec:
        """The ambient vector with the given basis coordinates."""
        if len(coords) != self.dim:
            raise ValueError("coordinate length mismatch")
        out = [ZERO] * self.ambient_dim
        for c, row in zip(coords, self.basis):
            c = Fraction(c)
            if c:
                for j, x in enumerate(row):
                    if x:
                        out[j] += c * x
        return tuple(out)


def span(vectors: Iterable[Sequence[Scalar]], ambient_dim: int) -> Subspace:
    rows, _ = rref(list(vectors), ambient_dim)
    return Subspace(rows, ambient_dim)


def full_space(n: int) -> Subspace:
    eye = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    return Subspace(eye, n)


def kernel(covectors: Iterable[Sequence[Scalar]], ambient_dim: int) -> Subspace:
    """Common kernel of the given functionals, as a canonical Subspace."""
    rows, pivots = rref(list(covectors), ambient_dim)
    free = [j for j in range(ambient_dim) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ambient_dim
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return span(basis, ambient_dim)


def annihilator(space: Subspace) -> tuple[IntVec, ...]:
    """Canonical covectors spanning the annihilator of the subspace."""
    ker = kernel(space.basis, space.ambient_dim)
    return tuple(sorted(canonical_covector(row) for row in ker.basis))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    cov = list(annihilator(a)) + list(annihilator(b))
    return kernel(cov, a.ambient_dim)


def restrict_covector(w: Sequence[Scalar], space: Subspace) -> Optional[IntVec]:
    """The functional w pulled back to basis coordinates of the subspace.

    Returns the canonical primitive covector, or None when w vanishes on
    the whole subspace (in particular for the zero subspace).
    """
    vals = [dot(w, b) for b in space.basis]
    if all(v == 0 for v in vals):
        return None
    return canonical_covector(vals)


def mat_vec(m: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> Vec:
    """Matrix times column vector, exact."""
    return tuple(dot(row, v) for row in m)


def covector_times_mat(w: Sequence[Scalar], m: Sequence[Sequence[Scalar]]) -> tuple:
    """Row vector times matrix: the pullback of w along the map m."""
    n = len(m[0]) if m else 0
    return tuple(sum((Fraction(w[i]) * Fraction(m[i][j]) for i in range(len(m))), ZERO) for j in range(n))


def mat_mul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> tuple[Vec, ...]:
    """Product of rational matrices (rows-of-rows convention)."""
    if a and b and len(a[0]) != len(b):
        raise ValueError("matrix shape mismatch")
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum((Fraction(a[i][k]) * Fraction(b[k][j]) for k in range(len(b))), ZERO) for j in range(cols))
        for i in range(len(a))
    )


def determinant(m: Sequence[Sequence[Scalar]]) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    mat = [list(qvec(r)) for r in m]
    det = Fraction(1)
    for col in range(n):
        sel = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if sel is None:
            return ZERO
        if sel != col:
            mat[col], mat[sel] = mat[sel], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for i in range(col + 1, n):
            if mat[i][col]:
                c = mat[i][col] * inv
                mat[i] = [a - c * b for a, b in zip(mat[i], mat[col])]
    return det
