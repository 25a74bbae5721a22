"""The rank-2 and rank-3 orthogonal isogenies at the Lie level.

Implements the group maps (tensor product of a pair of unimodular 2x2
matrices; exterior square of a unimodular 4x4 matrix), their derivatives,
the invariant bilinear forms they preserve, the split-basis block
extraction for symmetric traceless arguments, and the star-operator
decomposition of the 6-dimensional wedge representation.

Sign conventions are fixed once and recorded here:

* the 4-dimensional form is omega (x) omega in the lexicographic tensor
  basis, the 6-dimensional form is the wedge pairing in the fixed wedge
  basis (antidiagonal 1,-1,1,1,-1,1; determinant -1);
* orientation parameters default to +1 and flip the relevant form or
  star operator by an overall sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .exact_algebra import (
    InternalError,
    RingMatrix,
    UniPoly,
    ValidationError,
    WEDGE_PAIRS,
    exterior_square,
    fraction_sqrt,
    kronecker,
    ring_is_zero,
)

__all__ = [
    "QuadraticForm",
    "LieElement",
    "HodgeSplit",
    "HiggsBlockField",
    "OMEGA",
    "q4",
    "q6",
    "iso2_group",
    "iso3_group",
    "d_iso2",
    "d_iso3",
    "alpha_block",
    "split_basis_matrix",
    "to_split_basis",
    "build_block_higgs_so33",
    "hodge_split",
]

#: The symplectic form on the plane preserved by unit-determinant matrices.
OMEGA = RingMatrix([[0, 1], [-1, 0]])


@dataclass(frozen=True)
class QuadraticForm:
    """A symmetric invertible Gram matrix plus a chosen orientation sign."""

    gram: RingMatrix
    orientation_sign: int = 1

    def __post_init__(self):
        if self.orientation_sign not in (1, -1):
            raise ValidationError("orientation sign must be +1 or -1")
        if not self.gram.is_symmetric():
            raise ValidationError("quadratic form requires a symmetric Gram matrix")
        if ring_is_zero(self.gram.det()):
            raise ValidationError("quadratic form must be non-degenerate")


@dataclass(frozen=True)
class LieElement:
    """Matrices tagged with the algebra they are asserted to lie in.

    ``sl2xsl2`` elements are pairs of traceless 2x2 matrices; every other
    tag carries a single matrix (traceless for ``sl4``, skew with respect
    to the module's fixed form for ``so4``/``so6``)."""

    matrices: Tuple[RingMatrix, ...]
    algebra_tag: str  # sl2xsl2 | sl4 | so4 | so6

    def __post_init__(self):
        tag = self.algebra_tag
        mats = tuple(self.matrices) if isinstance(self.matrices, (tuple, list)) else (self.matrices,)
        object.__setattr__(self, "matrices", mats)
        if tag == "sl2xsl2":
            if len(mats) != 2:
                raise ValidationError("sl2xsl2 elements are pairs of matrices")
            for m in mats:
                if (m.rows, m.cols) != (2, 2) or not ring_is_zero(m.trace()):
                    raise ValidationError("sl2xsl2 factors are traceless 2x2 matrices")
            return
        if len(mats) != 1:
            raise ValidationError(f"{tag} elements carry a single matrix")
        m = mats[0]
        if tag == "sl4":
            if (m.rows, m.cols) != (4, 4) or not ring_is_zero(m.trace()):
                raise ValidationError("sl4 elements are traceless 4x4 matrices")
        elif tag in ("so4", "so6"):
            n = 4 if tag == "so4" else 6
            if (m.rows, m.cols) != (n, n):
                raise ValidationError(f"{tag} elements are {n}x{n}")
            q = q4().gram if tag == "so4" else q6().gram
            if not (m.transpose() * q + q * m).is_zero():
                raise ValidationError(f"{tag} elements must be skew with respect to the fixed form")
        else:
            raise ValidationError(f"unknown algebra tag {tag!r}")

    @property
    def matrix(self) -> RingMatrix:
        if len(self.matrices) != 1:
            raise ValidationError("this element is a pair; use .matrices")
        return self.matrices[0]


def q4() -> QuadraticForm:
    """The 4-dimensional form omega (x) omega; antidiagonal (1, -1, -1, 1)."""
    return QuadraticForm(kronecker(OMEGA, OMEGA))


def q6() -> QuadraticForm:
    """The wedge-pairing form on the fixed wedge basis; antidiagonal
    (1, -1, 1, 1, -1, 1), determinant -1."""
    return QuadraticForm(RingMatrix.antidiagonal([1, -1, 1, 1, -1, 1]))


def _require_shape(m: RingMatrix, n: int, what: str):
    if (m.rows, m.cols) != (n, n):
        raise ValidationError(f"{what} requires a {n}x{n} matrix, got {m.rows}x{m.cols}")


def _require_unit_det(m: RingMatrix, what: str):
    if m.det() != Fraction(1):
        raise ValidationError(f"{what} requires determinant 1, got {m.det()}")


def _require_traceless(m: RingMatrix, what: str):
    if not ring_is_zero(m.trace()):
        raise ValidationError(f"{what} requires a traceless matrix")


def iso2_group(a1: RingMatrix, a2: RingMatrix) -> RingMatrix:
    """Tensor product of two unimodular 2x2 matrices; lands in the
    orthogonal group of the 4-dimensional form."""
    _require_shape(a1, 2, "rank-2 isogeny")
    _require_shape(a2, 2, "rank-2 isogeny")
    _require_unit_det(a1, "rank-2 isogeny")
    _require_unit_det(a2, "rank-2 isogeny")
    return kronecker(a1, a2)


def iso3_group(a: RingMatrix) -> RingMatrix:
    """Exterior square of a unimodular 4x4 matrix; lands in the orthogonal
    group of the 6-dimensional wedge form."""
    _require_shape(a, 4, "rank-3 isogeny")
    _require_unit_det(a, "rank-3 isogeny")
    return exterior_square(a)


def d_iso2(a1dot: RingMatrix, a2dot: RingMatrix) -> RingMatrix:
    """Derivative of the rank-2 isogeny: A1 (x) I + I (x) A2 on the tensor
    square; skew for the 4-dimensional form, eigenvalues add."""
    _require_shape(a1dot, 2, "rank-2 derivative")
    _require_shape(a2dot, 2, "rank-2 derivative")
    _require_traceless(a1dot, "rank-2 derivative")
    _require_traceless(a2dot, "rank-2 derivative")
    ident = RingMatrix.identity(2)
    return kronecker(a1dot, ident) + kronecker(ident, a2dot)


def d_iso3(adot: RingMatrix) -> RingMatrix:
    """Derivative of the rank-3 isogeny: v^w -> (Av)^w + v^(Aw) in the
    fixed wedge basis; skew for the 6-dimensional form, eigenvalues are
    the pairwise sums of the input's eigenvalues."""
    _require_shape(adot, 4, "rank-3 derivative")
    _require_traceless(adot, "rank-3 derivative")
    a = adot.entries
    out = []
    for (i, j) in WEDGE_PAIRS:
        row = []
        for (k, l) in WEDGE_PAIRS:
            val = Fraction(0)
            if j == l:
                val = val + a[i][k]
            if i == l:
                val = val - a[j][k]
            if i == k:
                val = val + a[j][l]
            if j == k:
                val = val - a[i][l]
            row.append(val)
        out.append(row)
    return RingMatrix(out)


def alpha_block(adot: RingMatrix) -> RingMatrix:
    """The 3x3 block of the rank-3 derivative of a symmetric traceless
    matrix, written in the fixed split basis (see ``split_basis_matrix``)."""
    _require_shape(adot, 4, "alpha block")
    _require_traceless(adot, "alpha block")
    if not adot.is_symmetric():
        raise ValidationError("alpha block requires a symmetric matrix")
    a = adot.entries
    return RingMatrix(
        [
            [a[0][2] + a[1][3], -a[0][3] + a[1][2], a[0][0] + a[1][1]],
            [-a[0][1] + a[2][3], a[0][0] + a[2][2], a[0][3] + a[1][2]],
            [-a[1][1] - a[2][2], a[0][1] + a[2][3], -a[0][2] + a[1][3]],
        ]
    )


#: Columns of the fixed change of basis that diagonalizes the wedge form to
#: 2*diag(I3, -I3).  The first three columns span the positive part, the
#: last three the negative part; each column is a +/- combination of two
#: wedge basis vectors, normalized with positive first entry.  This is the
#: unique such choice (up to global sign) for which the conjugated rank-3
#: derivative of a symmetric traceless matrix is exactly
#: [[0, alpha], [alpha^t, 0]] with alpha as in ``alpha_block``.
_SPLIT_COLUMNS = (
    (1, 0, 0, 0, 0, 1),    # e1^e2 + e3^e4
    (0, 1, 0, 0, -1, 0),   # e1^e3 - e2^e4
    (0, 0, 1, 1, 0, 0),    # e1^e4 + e2^e3
    (0, 0, 1, -1, 0, 0),   # e1^e4 - e2^e3
    (0, 1, 0, 0, 1, 0),    # e1^e3 + e2^e4
    (1, 0, 0, 0, 0, -1),   # e1^e2 - e3^e4
)


def split_basis_matrix() -> RingMatrix:
    """Change of basis P with P^T Q6 P = 2 diag(I3, -I3)."""
    return RingMatrix([[col[r] for col in _SPLIT_COLUMNS] for r in range(6)])


def to_split_basis(x: RingMatrix) -> RingMatrix:
    """Conjugate a 6x6 matrix into the fixed split basis."""
    _require_shape(x, 6, "split-basis conjugation")
    p = split_basis_matrix()
    return p.inverse() * x * p


@dataclass(frozen=True)
class HiggsBlockField:
    """A two-block Higgs field [[phi11, phi12], [phi21, phi22]] with
    orthogonal structures q1, q2 on the two summands.

    The stored invariant is the block anti-symmetry
    phi21 = -q2^{-1} phi12^T q1 (orthogonal transpose), with phi12^T the
    plain matrix transpose.
    """

    phi11: RingMatrix
    phi12: RingMatrix
    phi21: RingMatrix
    phi22: RingMatrix
    q1: RingMatrix
    q2: RingMatrix
    degrees: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        n1, n2 = self.phi11.rows, self.phi22.rows
        if (self.phi12.rows, self.phi12.cols) != (n1, n2) or (
            self.phi21.rows,
            self.phi21.cols,
        ) != (n2, n1):
            raise ValidationError("Higgs block shapes are inconsistent")
        expected = -(self.q2.inverse() * self.phi12.transpose() * self.q1)
        if self.phi21 != expected:
            raise InternalError("Higgs block anti-symmetry violated")

    @property
    def alpha(self) -> RingMatrix:
        return self.phi12

    def as_matrix(self) -> RingMatrix:
        n1, n2 = self.phi11.rows, self.phi22.rows
        rows = []
        for i in range(n1):
            rows.append(list(self.phi11.entries[i]) + list(self.phi12.entries[i]))
        for i in range(n2):
            rows.append(list(self.phi21.entries[i]) + list(self.phi22.entries[i]))
        return RingMatrix(rows)


def build_block_higgs_so33(adot: RingMatrix) -> HiggsBlockField:
    """Assemble the split-signature block Higgs field of a symmetric
    traceless 4x4 argument (entries may be polynomial sections): conjugate
    the rank-3 derivative into the fixed split basis and read off the
    off-diagonal blocks.  The diagonal blocks vanish identically and the
    top-right block matches ``alpha_block``."""
    x = d_iso3(adot)
    if not adot.is_symmetric():
        raise ValidationError("block Higgs assembly requires a symmetric matrix")
    conj = to_split_basis(x)
    phi11 = conj.block(0, 0, 3, 3)
    phi12 = conj.block(0, 3, 3, 3)
    phi21 = conj.block(3, 0, 3, 3)
    phi22 = conj.block(3, 3, 3, 3)
    if not (phi11.is_zero() and phi22.is_zero()):
        raise InternalError("diagonal blocks of the split-basis Higgs field must vanish")
    if phi12 != alpha_block(adot):
        raise InternalError("split-basis block disagrees with the direct alpha formula")
    p = split_basis_matrix()
    restricted = p.transpose() * q6().gram * p
    q1 = restricted.block(0, 0, 3, 3)
    q2 = restricted.block(3, 3, 3, 3)
    return HiggsBlockField(phi11, phi12, phi21, phi22, q1, q2)


@dataclass(frozen=True)
class HodgeSplit:
    """The star-operator eigenspace decomposition of the wedge square."""

    star: RingMatrix
    plus_basis: Tuple[Tuple[Fraction, ...], ...]
    minus_basis: Tuple[Tuple[Fraction, ...], ...]
    q_plus: QuadraticForm
    q_minus: QuadraticForm

    def __post_init__(self):
        if self.star * self.star != RingMatrix.identity(6):
            raise InternalError("star operator must square to the identity")
        if len(self.plus_basis) != 3 or len(self.minus_basis) != 3:
            raise InternalError("star eigenspaces must have rank 3 each")


def _canonical_basis(vectors):
    """Normalize each vector to leading coefficient 1 and sort by pivot."""
    cleaned = []
    for vec in vectors:
        lead_idx = next(i for i, c in enumerate(vec) if c != 0)
        inv = Fraction(1) / vec[lead_idx]
        cleaned.append((lead_idx, tuple(c * inv for c in vec)))
    cleaned.sort(key=lambda item: item[0])
    return tuple(vec for _, vec in cleaned)


def hodge_split(q, orientation: int = 1) -> HodgeSplit:
    """Build the involution star = (induced form)^{-1} . Q6, normalized by
    the square root of det(q) (the choice of compatible determinant
    trivialization), and return its +/-1 eigenspace data.

    ``q`` is the 4x4 orthogonal structure (a QuadraticForm or raw Gram
    matrix); its determinant must be a nonzero rational square so that the
    normalization exists over the rationals.  Orientation -1 flips the
    star and therefore swaps the two eigenspaces.
    """
    if isinstance(q, QuadraticForm):
        gram = q.gram
    else:
        gram = q
    if orientation not in (1, -1):
        raise ValidationError("orientation must be +1 or -1")
    _require_shape(gram, 4, "star-operator construction")
    if not gram.is_symmetric():
        raise ValidationError("star-operator construction requires a symmetric form")
    det = gram.det()
    if det == 0:
        raise ValidationError("star-operator construction requires a non-degenerate form")
    scale = fraction_sqrt(det)  # ValidationError if det is not a rational square
    induced = exterior_square(gram)
    star = induced.inverse() * q6().gram
    star = star.scale(Fraction(orientation) * scale)
    if star * star != RingMatrix.identity(6):
        raise InternalError("normalized star operator failed to square to the identity")
    ident = RingMatrix.identity(6)
    plus = _canonical_basis((star - ident).nullspace())
    minus = _canonical_basis((star + ident).nullspace())
    if len(plus) != 3 or len(minus) != 3:
        raise InternalError("star eigenspaces do not have rank 3 each")
    q6_gram = q6().gram

    def restrict(basis):
        b = RingMatrix([[vec[i] for vec in basis] for i in range(6)])
        return b.transpose() * q6_gram * b

    q_plus = QuadraticForm(restrict(plus), orientation)
    q_minus = QuadraticForm(restrict(minus), orientation)
    return HodgeSplit(star, plus, minus, q_plus, q_minus)
