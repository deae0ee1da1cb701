"""Exact rational scalars, sparse matrices and vectors.

Scalars are ``int`` or :class:`fractions.Fraction`; a fraction with unit
denominator is always collapsed back to ``int`` so that the common case
(integer coefficients) stays on the fast path.  Nothing here ever touches a
float.

Matrices are stored as a dict of sparse rows ``{row: {col: value}}`` with no
zero entries, in the spirit of sympy's ``SDM``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

Scalar = Union[int, Fraction]

__all__ = [
    "Scalar",
    "DimensionError",
    "exact",
    "format_scalar",
    "parse_scalar",
    "SparseMatrix",
    "StateVector",
    "mat_apply",
    "nullspace_basis",
    "rank",
]


class DimensionError(ValueError):
    """Operands have incompatible dimensions."""


def exact(x) -> Scalar:
    """Coerce ``x`` to an exact scalar in canonical form.

    Accepts ints, Fractions, any :class:`numbers.Rational` and strings such as
    ``"3/4"``.  Floats are rejected on purpose.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return exact(Fraction(x.strip()))
    if isinstance(x, Rational):
        return exact(Fraction(x.numerator, x.denominator))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def format_scalar(x: Scalar) -> str:
    """Canonical ``"p/q"`` (or ``"p"``) form used in every serialized output."""
    return str(Fraction(x))


def parse_scalar(text: str) -> Scalar:
    return exact(text)


def _clean(x: Scalar) -> Scalar:
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


class StateVector:
    """Sparse vector of exact scalars; zero entries are never stored."""

    __slots__ = ("dim", "_entries")

    def __init__(self, dim: int, entries: Mapping[int, Scalar] | None = None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        clean: Dict[int, Scalar] = {}
        for i, v in (entries or {}).items():
            if not 0 <= i < dim:
                raise IndexError(f"index {i} out of range for dimension {dim}")
            v = exact(v)
            if v:
                clean[i] = v
        self._entries = clean

    @classmethod
    def _raw(cls, dim: int, entries: Dict[int, Scalar]) -> "StateVector":
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._entries = entries
        return obj

    @classmethod
    def basis(cls, dim: int, index: int) -> "StateVector":
        return cls(dim, {index: 1})

    @classmethod
    def zero(cls, dim: int) -> "StateVector":
        return cls._raw(dim, {})

    @property
    def entries(self) -> Dict[int, Scalar]:
        return dict(self._entries)

    def items(self) -> List[Tuple[int, Scalar]]:
        return sorted(self._entries.items())

    def __getitem__(self, i: int) -> Scalar:
        return self._entries.get(i, 0)

    def __len__(self) -> int:
        return self.dim

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def _check(self, other: "StateVector") -> None:
        if not isinstance(other, StateVector):
            raise TypeError("expected a StateVector")
        if other.dim != self.dim:
            raise DimensionError(f"dimensions differ: {self.dim} vs {other.dim}")

    def __add__(self, other: "StateVector") -> "StateVector":
        self._check(other)
        out = dict(self._entries)
        for i, v in other._entries.items():
            s = out.get(i, 0) + v
            if s:
                out[i] = _clean(s)
            else:
                out.pop(i, None)
        return StateVector._raw(self.dim, out)

    def __neg__(self) -> "StateVector":
        return StateVector._raw(self.dim, {i: -v for i, v in self._entries.items()})

    def __sub__(self, other: "StateVector") -> "StateVector":
        return self + (-other)

    def scale(self, c) -> "StateVector":
        c = exact(c)
        if not c:
            return StateVector.zero(self.dim)
        return StateVector._raw(self.dim, {i: _clean(c * v) for i, v in self._entries.items()})

    def __mul__(self, c) -> "StateVector":
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.dim == other.dim and self._entries == other._entries

    def __hash__(self):
        return hash((self.dim, frozenset(self._entries.items())))

    def first_difference(self, other: "StateVector"):
        """Smallest index where the two vectors disagree, or ``None``."""
        self._check(other)
        keys = sorted(set(self._entries) | set(other._entries))
        for i in keys:
            if self[i] != other[i]:
                return i
        return None

    def is_multiple_of(self, other: "StateVector"):
        """Return ``c`` with ``self == c * other`` or ``None`` if no such ``c``.

        ``other`` must be nonzero.
        """
        self._check(other)
        if other.is_zero():
            raise ValueError("reference vector is zero")
        pivot, ref = next(iter(sorted(other._entries.items())))
        c = _clean(Fraction(self[pivot]) / ref)
        return c if self == other.scale(c) else None

    def __repr__(self) -> str:
        body = ", ".join(f"{i}: {format_scalar(v)}" for i, v in self.items())
        return f"StateVector({self.dim}, {{{body}}})"


class SparseMatrix:
    """Square sparse matrix of exact scalars, dict-of-rows storage."""

    __slots__ = ("dim", "_rows", "_cols")

    def __init__(self, dim: int, entries: Mapping[Tuple[int, int], Scalar] | None = None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        rows: Dict[int, Dict[int, Scalar]] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"entry ({i}, {j}) out of range for dimension {dim}")
            v = exact(v)
            if v:
                rows.setdefault(i, {})[j] = v
        self._rows = rows
        self._cols = None

    @classmethod
    def _raw(cls, dim: int, rows: Dict[int, Dict[int, Scalar]]) -> "SparseMatrix":
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._rows = rows
        obj._cols = None
        return obj

    @classmethod
    def identity(cls, dim: int) -> "SparseMatrix":
        return cls._raw(dim, {i: {i: 1} for i in range(dim)})

    @classmethod
    def zero(cls, dim: int) -> "SparseMatrix":
        return cls._raw(dim, {})

    @classmethod
    def diagonal(cls, values: Iterable) -> "SparseMatrix":
        values = [exact(v) for v in values]
        return cls._raw(len(values), {i: {i: v} for i, v in enumerate(values) if v})

    @classmethod
    def from_dense(cls, rows: List[List]) -> "SparseMatrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("dense input must be square")
        return cls(n, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    def to_dense(self) -> List[List[Scalar]]:
        out = [[0] * self.dim for _ in range(self.dim)]
        for i, row in self._rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def row(self, i: int) -> Dict[int, Scalar]:
        return dict(self._rows.get(i, {}))

    def entries(self) -> Iterator[Tuple[int, int, Scalar]]:
        for i in sorted(self._rows):
            row = self._rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def __getitem__(self, key: Tuple[int, int]) -> Scalar:
        i, j = key
        return self._rows.get(i, {}).get(j, 0)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    def _columns(self) -> Dict[int, Dict[int, Scalar]]:
        if self._cols is None:
            cols: Dict[int, Dict[int, Scalar]] = {}
            for i, row in self._rows.items():
                for j, v in row.items():
                    cols.setdefault(j, {})[i] = v
            self._cols = cols
        return self._cols

    def _check(self, other: "SparseMatrix") -> None:
        if not isinstance(other, SparseMatrix):
            raise TypeError("expected a SparseMatrix")
        if other.dim != self.dim:
            raise DimensionError(f"dimensions differ: {self.dim} vs {other.dim}")

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check(other)
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, orow in other._rows.items():
            row = rows.setdefault(i, {})
            for j, v in orow.items():
                s = row.get(j, 0) + v
                if s:
                    row[j] = _clean(s)
                else:
                    del row[j]
            if not row:
                del rows[i]
        return SparseMatrix._raw(self.dim, rows)

    def __neg__(self) -> "SparseMatrix":
        return SparseMatrix._raw(
            self.dim, {i: {j: -v for j, v in r.items()} for i, r in self._rows.items()}
        )

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, c) -> "SparseMatrix":
        c = exact(c)
        if not c:
            return SparseMatrix.zero(self.dim)
        if c == 1:
            return self
        return SparseMatrix._raw(
            self.dim,
            {i: {j: _clean(c * v) for j, v in r.items()} for i, r in self._rows.items()},
        )

    def __mul__(self, c) -> "SparseMatrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, StateVector):
            return mat_apply(self, other)
        self._check(other)
        orows = other._rows
        rows: Dict[int, Dict[int, Scalar]] = {}
        for i, row in self._rows.items():
            acc: Dict[int, Scalar] = {}
            for k, a in row.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for j, b in brow.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: _clean(v) for j, v in acc.items() if v}
            if acc:
                rows[i] = acc
        return SparseMatrix._raw(self.dim, rows)

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        """Ordinary (ungraded) Kronecker product, ``self`` as the slow index."""
        n = other.dim
        rows: Dict[int, Dict[int, Scalar]] = {}
        for i, arow in self._rows.items():
            for k, brow in other._rows.items():
                rows[i * n + k] = {
                    j * n + l: _clean(a * b) for j, a in arow.items() for l, b in brow.items()
                }
        return SparseMatrix._raw(self.dim * n, rows)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix._raw(self.dim, {j: dict(c) for j, c in self._columns().items()})

    def permute(self, perm: List[int]) -> "SparseMatrix":
        """Relabel basis index ``i`` as ``perm[i]`` on both sides."""
        if sorted(perm) != list(range(self.dim)):
            raise ValueError("not a permutation of the basis")
        return SparseMatrix._raw(
            self.dim,
            {perm[i]: {perm[j]: v for j, v in r.items()} for i, r in self._rows.items()},
        )

    def first_difference(self, other: "SparseMatrix"):
        """``(row, col)`` of the first entry where the matrices differ, else ``None``."""
        self._check(other)
        for i in sorted(set(self._rows) | set(other._rows)):
            a, b = self._rows.get(i, {}), other._rows.get(i, {})
            if a != b:
                for j in sorted(set(a) | set(b)):
                    if a.get(j, 0) != b.get(j, 0):
                        return i, j
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.dim == other.dim and self._rows == other._rows

    def __hash__(self):
        return hash((self.dim, self.nnz))

    def __repr__(self) -> str:
        return f"SparseMatrix(dim={self.dim}, nnz={self.nnz})"


def mat_apply(M: SparseMatrix, v: StateVector) -> StateVector:
    """Exact product ``M @ v``."""
    if M.dim != v.dim:
        raise DimensionError(f"matrix dimension {M.dim} does not match vector dimension {v.dim}")
    cols = M._columns()
    acc: Dict[int, Scalar] = {}
    for j, x in v._entries.items():
        col = cols.get(j)
        if not col:
            continue
        for i, a in col.items():
            acc[i] = acc.get(i, 0) + a * x
    return StateVector._raw(v.dim, {i: _clean(s) for i, s in acc.items() if s})


# --- elimination -----------------------------------------------------------

def _primitive(row: Dict[int, Scalar]) -> Dict[int, int]:
    """Scale a rational row to coprime integers with positive leading entry."""
    den = 1
    for v in row.values():
        if type(v) is Fraction:
            den = den * v.denominator // gcd(den, v.denominator)
    ints = {j: int(v * den) for j, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = ints[min(ints)]
    if lead < 0:
        g = -g
    if g != 1:
        ints = {j: v // g for j, v in ints.items()}
    return ints


def _echelon(rows: Iterable[Dict[int, Scalar]]) -> Dict[int, Dict[int, int]]:
    """Integer row echelon form keyed by leading column.

    Each incoming row is reduced against the existing pivots by cross
    multiplication (no division), then divided by its content, so every stored
    row is a primitive integer vector.  Pivot selection is deterministic: a row
    is always reduced at its smallest nonzero column.
    """
    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        if not row:
            continue
        r = _primitive(row)
        while r:
            lead = min(r)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = r
                break
            a, b = p[lead], r[lead]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {j: fa * v for j, v in r.items()}
            for j, v in p.items():
                s = new.get(j, 0) - fb * v
                if s:
                    new[j] = s
                else:
                    new.pop(j, None)
            r = _primitive(new) if new else new
    return pivots


def _nullspace_from_pivots(pivots: Dict[int, Dict[int, int]], ncols: int) -> List[Dict[int, Scalar]]:
    free = [c for c in range(ncols) if c not in pivots]
    order = sorted(pivots, reverse=True)
    basis = []
    for f in free:
        x: Dict[int, Scalar] = {f: 1}
        # descending pivot order: every column right of c is already solved
        for c in order:
            row = pivots[c]
            s = 0
            for j, v in row.items():
                if j != c and j in x:
                    s += v * x[j]
            if s:
                x[c] = _clean(Fraction(-s, row[c]))
        basis.append(x)
    return basis


def nullspace_basis(M: SparseMatrix) -> List[StateVector]:
    """Exact basis of ``{v : M v = 0}``.

    One basis vector per free column, in ascending column order; the vector
    for free column ``f`` has a 1 at ``f`` and 0 at every other free column.
    """
    pivots = _echelon(M._rows[i] for i in sorted(M._rows))
    return [StateVector._raw(M.dim, x) for x in _nullspace_from_pivots(pivots, M.dim)]


def solve_homogeneous(columns: List[StateVector]) -> List[List[Scalar]]:
    """Basis of coefficient tuples ``a`` with ``sum(a[i] * columns[i]) == 0``."""
    if not columns:
        return []
    dim = columns[0].dim
    if any(c.dim != dim for c in columns):
        raise DimensionError("columns must share a dimension")
    rows: Dict[int, Dict[int, Scalar]] = {}
    for j, col in enumerate(columns):
        for i, v in col._entries.items():
            rows.setdefault(i, {})[j] = v
    pivots = _echelon(rows[i] for i in sorted(rows))
    out = []
    for x in _nullspace_from_pivots(pivots, len(columns)):
        out.append([x.get(j, 0) for j in range(len(columns))])
    return out


def rank(vectors: List[StateVector]) -> int:
    """Exact rank over the rationals; 0 for an empty list."""
    if not vectors:
        return 0
    dim = vectors[0].dim
    if any(v.dim != dim for v in vectors):
        raise DimensionError("all vectors must share a dimension")
    return len(_echelon(v._entries for v in vectors))
