"""The spin-1/2 representation of osp(1,2).

Generators are 3x3 graded matrices.  Two single-site orderings are in use:

* the *textbook* order ``(e1, e2, e3)`` with ``e1`` the bosonic excitation,
  ``e2`` the lowest-weight vector and ``e3 = F+ e2`` the fermionic state; this
  is what :func:`generator` returns;
* the *site* order ``(e2, e3, e1)`` used by the chain basis (digit 0, 1, 2),
  returned by :func:`site_generator`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Tuple

from .exact_linalg import DimensionError, SparseMatrix, StateVector, format_scalar
from .report import VerificationReport

GENERATOR_NAMES = ("H", "Eplus", "Eminus", "Fplus", "Fminus")
PARITY = {"H": 0, "Eplus": 0, "Eminus": 0, "Fplus": 1, "Fminus": 1}

TEXTBOOK_GRADING = (0, 0, 1)
SITE_GRADING = (0, 1, 0)
# textbook index -> site index (e1 -> 2, e2 -> 0, e3 -> 1)
TEXTBOOK_TO_SITE = [2, 0, 1]

_MATRICES = {
    "H": [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
    "Eplus": [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
    "Eminus": [[0, 0, 0], [1, 0, 0], [0, 0, 0]],
    "Fplus": [[0, 0, 1], [0, 0, 0], [0, 1, 0]],
    "Fminus": [[0, 0, 0], [0, 0, -1], [1, 0, 0]],
}


class ParityError(ValueError):
    """An operation needed an operator of definite parity."""


@dataclass(frozen=True, eq=False)
class GradedMatrix:
    """A sparse matrix with a parity tag, acting on a graded space.

    ``grading[i]`` is the parity of basis vector ``i``.  ``parity`` is 0 (even)
    or 1 (odd).
    """

    matrix: SparseMatrix
    parity: int
    grading: Tuple[int, ...]

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ParityError(f"parity must be 0 or 1, got {self.parity!r}")
        if len(self.grading) != self.matrix.dim:
            raise DimensionError("grading length does not match matrix dimension")

    @property
    def dim(self) -> int:
        return self.matrix.dim

    def _compatible(self, other: "GradedMatrix") -> None:
        if not isinstance(other, GradedMatrix):
            raise TypeError("expected a GradedMatrix")
        if self.dim != other.dim:
            raise DimensionError(f"dimensions differ: {self.dim} vs {other.dim}")
        if self.grading is not other.grading and self.grading != other.grading:
            raise DimensionError("operators act on differently graded spaces")

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        self._compatible(other)
        if self.parity != other.parity:
            raise ParityError("sum of operators with different parity")
        return GradedMatrix(self.matrix + other.matrix, self.parity, self.grading)

    def __sub__(self, other: "GradedMatrix") -> "GradedMatrix":
        return self + (-other)

    def __neg__(self) -> "GradedMatrix":
        return GradedMatrix(-self.matrix, self.parity, self.grading)

    def scale(self, c) -> "GradedMatrix":
        return GradedMatrix(self.matrix.scale(c), self.parity, self.grading)

    def __mul__(self, c) -> "GradedMatrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, StateVector):
            return self.matrix @ other
        self._compatible(other)
        return GradedMatrix(self.matrix @ other.matrix, (self.parity + other.parity) % 2, self.grading)

    def __pow__(self, n: int) -> "GradedMatrix":
        if n < 0:
            raise ValueError("negative power")
        out = identity_like(self)
        for _ in range(n):
            out = out @ self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (
            self.parity == other.parity
            and tuple(self.grading) == tuple(other.grading)
            and self.matrix == other.matrix
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def respects_grading(self) -> bool:
        """True if every entry maps parity ``g`` to parity ``g + self.parity``."""
        g = self.grading
        return all((g[i] - g[j] - self.parity) % 2 == 0 for i, j, _ in self.matrix.entries())

    def to_site_order(self) -> "GradedMatrix":
        """Re-express a textbook-ordered 3x3 operator in site order."""
        if self.dim != 3 or tuple(self.grading) != TEXTBOOK_GRADING:
            raise ValueError("only textbook-ordered single-site operators can be reordered")
        return GradedMatrix(self.matrix.permute(TEXTBOOK_TO_SITE), self.parity, SITE_GRADING)

    def __repr__(self) -> str:
        kind = "odd" if self.parity else "even"
        return f"GradedMatrix(dim={self.dim}, {kind}, nnz={self.matrix.nnz})"


def identity_like(X: GradedMatrix) -> GradedMatrix:
    return GradedMatrix(SparseMatrix.identity(X.dim), 0, X.grading)


def zero_like(X: GradedMatrix, parity: int = 0) -> GradedMatrix:
    return GradedMatrix(SparseMatrix.zero(X.dim), parity, X.grading)


def generator(name: str) -> GradedMatrix:
    """Generator ``name`` in the textbook basis ``(e1, e2, e3)``."""
    if name not in _MATRICES:
        raise KeyError(f"unknown generator {name!r}; expected one of {GENERATOR_NAMES}")
    return GradedMatrix(SparseMatrix.from_dense(_MATRICES[name]), PARITY[name], TEXTBOOK_GRADING)


def site_generator(name: str) -> GradedMatrix:
    """Generator ``name`` in the chain's site order ``(e2, e3, e1)``."""
    return generator(name).to_site_order()


def representation(site_order: bool = False) -> Dict[str, GradedMatrix]:
    make = site_generator if site_order else generator
    return {name: make(name) for name in GENERATOR_NAMES}


def supercommutator(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    """``AB - (-1)^(|A||B|) BA``: the anticommutator when both are odd."""
    A._compatible(B)
    AB, BA = A @ B, B @ A
    return AB + BA if A.parity and B.parity else AB - BA


def commutator(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    A._compatible(B)
    return A @ B - B @ A


def _relations(rep: Mapping[str, GradedMatrix]):
    H, Ep, Em, Fp, Fm = (rep[n] for n in GENERATOR_NAMES)
    sc = supercommutator
    return [
        ("[H,E+-] = +-2E+-", [(sc(H, Ep), Ep * 2), (sc(H, Em), Em * -2)]),
        ("[E+,E-] = H", [(sc(Ep, Em), H)]),
        ("[H,F+-] = +-F+-", [(sc(H, Fp), Fp), (sc(H, Fm), -Fm)]),
        ("[F+,F-]_+ = H", [(sc(Fp, Fm), H)]),
        ("[E+-,F-+] = -F+-", [(sc(Ep, Fm), -Fp), (sc(Em, Fp), -Fm)]),
        ("[F+-,F+-]_+ = +-2E+-", [(sc(Fp, Fp), Ep * 2), (sc(Fm, Fm), Em * -2)]),
    ]


def describe_difference(got: GradedMatrix, want: GradedMatrix) -> str:
    if got.parity != want.parity:
        return f"parity {got.parity} != {want.parity}"
    pos = got.matrix.first_difference(want.matrix)
    if pos is None:
        return "equal"
    i, j = pos
    return (
        f"entry ({i}, {j}): got {format_scalar(got.matrix[i, j])}, "
        f"expected {format_scalar(want.matrix[i, j])}"
    )


def verify_defining_relations(rep: Mapping[str, GradedMatrix], suite: str = "relations") -> VerificationReport:
    """Check the six defining (anti)commutation relations by exact equality."""
    missing = [n for n in GENERATOR_NAMES if n not in rep]
    if missing:
        raise KeyError(f"missing generators: {missing}")
    dims = {rep[n].dim for n in GENERATOR_NAMES}
    if len(dims) != 1:
        raise DimensionError("generators have different dimensions")
    report = VerificationReport(suite)
    for name, pairs in _relations(rep):
        witness = None
        for got, want in pairs:
            if got != want:
                witness = describe_difference(got, want)
                break
        report.add(name, witness is None, witness)
    return report


def casimir_parts(rep: Mapping[str, GradedMatrix]) -> Tuple[GradedMatrix, GradedMatrix, GradedMatrix]:
    """Return ``(C, C_b, C_f)`` with ``C = C_b + C_f``.

    ``C_b = H^2 + 2(E+E- + E-E+)`` and ``C_f = F-F+ - F+F-``.
    """
    H, Ep, Em, Fp, Fm = (rep[n] for n in GENERATOR_NAMES)
    c_b = H @ H + (Ep @ Em + Em @ Ep) * 2
    c_f = Fm @ Fp - Fp @ Fm
    return c_b + c_f, c_b, c_f
