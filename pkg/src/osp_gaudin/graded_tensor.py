"""Graded tensor products and the N-site chain basis.

Chain basis: site ``s`` (1-based) carries a digit in ``{0, 1, 2}`` meaning
``e2`` (lowest weight), ``e3`` (fermion), ``e1`` (boson).  The global index is
``sum(digit_s * 3**(N - s))`` so site 1 is the most significant digit and the
pseudovacuum is index 0.

Odd operators placed at site ``i`` pick up a parity string on sites ``1..i-1``
(the Koszul sign of moving them past the odd states to their left).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from .algebra import SITE_GRADING, TEXTBOOK_GRADING, GradedMatrix, ParityError
from .exact_linalg import SparseMatrix, StateVector

LABEL_TO_DIGIT = {"e2": 0, "e3": 1, "e1": 2}
DIGIT_TO_LABEL = {d: label for label, d in LABEL_TO_DIGIT.items()}


def digits_of(index: int, n_sites: int) -> Tuple[int, ...]:
    if not 0 <= index < 3**n_sites:
        raise IndexError(f"index {index} out of range for {n_sites} sites")
    out = []
    for _ in range(n_sites):
        index, d = divmod(index, 3)
        out.append(d)
    return tuple(reversed(out))


def index_of(digits: Sequence[int]) -> int:
    idx = 0
    for d in digits:
        if d not in (0, 1, 2):
            raise ValueError(f"bad site digit {d!r}")
        idx = idx * 3 + d
    return idx


def product_state(labels: Iterable[str], coeff=1) -> StateVector:
    """Product basis state such as ``product_state(["e3", "e2"])``."""
    digits = [LABEL_TO_DIGIT[label] for label in labels]
    return StateVector(3 ** len(digits), {index_of(digits): coeff})


def state_from_terms(terms: Iterable[Tuple[int, Sequence[str]]]) -> StateVector:
    """Build ``sum(c * e_a (x) e_b (x) ...)`` from ``(c, labels)`` pairs."""
    terms = list(terms)
    n = len(terms[0][1])
    out = StateVector.zero(3**n)
    for c, labels in terms:
        out = out + product_state(labels, c)
    return out


def basis_label(index: int, n_sites: int) -> str:
    return "".join(DIGIT_TO_LABEL[d] for d in digits_of(index, n_sites))


def basis_parity(index: int, n_sites: int) -> int:
    return sum(1 for d in digits_of(index, n_sites) if d == 1) % 2


@lru_cache(maxsize=None)
def chain_grading(n_sites: int) -> Tuple[int, ...]:
    grading: Tuple[int, ...] = (0,)
    for _ in range(n_sites):
        grading = tuple((g + s) % 2 for g in grading for s in SITE_GRADING)
    return grading


def parity_operator(grading: Sequence[int] = TEXTBOOK_GRADING) -> GradedMatrix:
    """``diag((-1)**parity)``; in the textbook order this is ``diag(1, 1, -1)``."""
    grading = tuple(grading)
    return GradedMatrix(SparseMatrix.diagonal((-1) ** g for g in grading), 0, grading)


def tensor_degree(parities: Iterable[int]) -> int:
    return sum(parities) % 2


def graded_kron(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    """Matrix of ``A (x) B`` with the Koszul action.

    ``(A (x) B)(v (x) w) = (-1)**(|B||v|) (Av) (x) (Bw)``, so that
    ``(A (x) B)(C (x) D) = (-1)**(|B||C|) AC (x) BD``.
    """
    for X in (A, B):
        if not isinstance(X, GradedMatrix):
            raise ParityError("graded_kron needs operators of definite parity")
    left = A.matrix
    if B.parity:
        left = left @ parity_operator(A.grading).matrix
    grading = tuple((a + b) % 2 for a in A.grading for b in B.grading)
    return GradedMatrix(left.kron(B.matrix), (A.parity + B.parity) % 2, grading)


def _site_order(X: GradedMatrix) -> GradedMatrix:
    if X.dim != 3:
        raise ValueError("expected a single-site (3x3) operator")
    g = tuple(X.grading)
    if g == SITE_GRADING:
        return X
    if g == TEXTBOOK_GRADING:
        return X.to_site_order()
    raise ValueError(f"unrecognised single-site grading {g}")


def embed_at_site(X: GradedMatrix, site: int, n_sites: int, graded: bool = True) -> GradedMatrix:
    """Place a single-site operator at ``site`` (1-based) of an N-site chain.

    Odd operators carry a parity string on the sites to their left.  Passing
    ``graded=False`` drops it, which is wrong and exists only so the oracle can
    show that it notices.
    """
    if n_sites < 1:
        raise ValueError("need at least one site")
    if not 1 <= site <= n_sites:
        raise ValueError(f"site {site} out of range 1..{n_sites}")
    X = _site_order(X)
    stride = 3 ** (n_sites - site)
    cols = {}
    for r, c, v in X.matrix.entries():
        cols.setdefault(c, []).append((r, v))
    string = graded and X.parity == 1
    rows = {}
    for j in range(3**n_sites):
        digits = digits_of(j, n_sites)
        d = digits[site - 1]
        targets = cols.get(d)
        if not targets:
            continue
        sign = -1 if string and sum(1 for x in digits[: site - 1] if x == 1) % 2 else 1
        for r, v in targets:
            i = j + (r - d) * stride
            rows.setdefault(i, {})[j] = sign * v
    return GradedMatrix(SparseMatrix._raw(3**n_sites, rows), X.parity, chain_grading(n_sites))


def kron_chain(factors: List[GradedMatrix]) -> GradedMatrix:
    """Left-nested graded product ``((f1 (x) f2) (x) f3) ...``."""
    if not factors:
        raise ValueError("empty product")
    out = factors[0]
    for f in factors[1:]:
        out = graded_kron(out, f)
    return out


def pad_identity(X: GradedMatrix, extra_sites: int) -> GradedMatrix:
    """``X (x) id`` on ``extra_sites`` further sites (no signs for even ``X``)."""
    if extra_sites == 0:
        return X
    n = 3**extra_sites
    grading = chain_grading(_sites_for(X.dim) + extra_sites)
    if X.parity:
        return graded_kron(X, GradedMatrix(SparseMatrix.identity(n), 0, chain_grading(extra_sites)))
    return GradedMatrix(X.matrix.kron(SparseMatrix.identity(n)), 0, grading)


def _sites_for(dim: int) -> int:
    n, d = 0, 1
    while d < dim:
        d *= 3
        n += 1
    if d != dim:
        raise ValueError(f"dimension {dim} is not a power of 3")
    return n
