"""N-fold coproducts, partial Casimirs and the Gaudin Hamiltonians."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, Tuple

from .algebra import (
    GENERATOR_NAMES,
    GradedMatrix,
    casimir_parts,
    commutator,
    describe_difference,
    site_generator,
)
from .exact_linalg import Scalar, SparseMatrix, exact
from .graded_tensor import chain_grading, embed_at_site, graded_kron, pad_identity
from .report import VerificationReport


@dataclass(frozen=True)
class HamiltonianParams:
    lam: Scalar = 1
    mu: Scalar = 1

    def __post_init__(self):
        object.__setattr__(self, "lam", exact(self.lam))
        object.__setattr__(self, "mu", exact(self.mu))


def _check_sites(n_sites: int) -> None:
    if not isinstance(n_sites, int) or n_sites < 1:
        raise ValueError(f"number of sites must be a positive integer, got {n_sites!r}")


@lru_cache(maxsize=256)
def coproduct(name: str, n_sites: int, sites: int | None = None, graded: bool = True) -> GradedMatrix:
    """``Delta^(h)(X)`` acting on the first ``h = sites`` sites of an N-site chain.

    With ``sites=None`` this is the full ``Delta^(N)(X)``.
    """
    _check_sites(n_sites)
    h = n_sites if sites is None else sites
    if not 1 <= h <= n_sites:
        raise ValueError(f"coproduct order {h} out of range 1..{n_sites}")
    X = site_generator(name)
    out = embed_at_site(X, 1, n_sites, graded)
    for i in range(2, h + 1):
        out = out + embed_at_site(X, i, n_sites, graded)
    return out


def coproduct_recursive(name: str, n_sites: int, left: bool = True) -> GradedMatrix:
    """Coproduct by literal recursion with graded tensor products.

    ``left=True`` iterates ``(Delta (x) id) Delta``; ``left=False`` iterates
    ``(id (x) Delta) Delta``.  Kept independent of :func:`coproduct`.
    """
    _check_sites(n_sites)
    X = site_generator(name)
    ident = GradedMatrix(SparseMatrix.identity(3), 0, chain_grading(1))
    out = X
    for h in range(2, n_sites + 1):
        big = GradedMatrix(SparseMatrix.identity(3 ** (h - 1)), 0, chain_grading(h - 1))
        if left:
            out = graded_kron(out, ident) + graded_kron(big, X)
        else:
            out = graded_kron(X, big) + graded_kron(ident, out)
    return out


def coproduct_images(n_sites: int, sites: int | None = None, graded: bool = True) -> Dict[str, GradedMatrix]:
    return {name: coproduct(name, n_sites, sites, graded) for name in GENERATOR_NAMES}


@lru_cache(maxsize=64)
def partial_casimir(h: int, n_sites: int) -> GradedMatrix:
    """``C_h = Delta^(h)(C)`` built on h sites and padded by identity to N."""
    _check_sites(n_sites)
    if not 2 <= h <= n_sites:
        raise ValueError(f"partial Casimir index {h} out of range 2..{n_sites}")
    casimir, _, _ = casimir_parts(coproduct_images(h))
    return pad_identity(casimir, n_sites - h)


@lru_cache(maxsize=32)
def casimir_split(n_sites: int) -> Tuple[GradedMatrix, GradedMatrix, GradedMatrix]:
    """``(Delta(C), Delta(C_b), Delta(C_f))`` on the full chain."""
    return casimir_parts(coproduct_images(n_sites))


def general_hamiltonian(n_sites: int, params: HamiltonianParams = HamiltonianParams()) -> GradedMatrix:
    """``lam * Delta(C_b) + mu * Delta(C_f)``."""
    _, c_b, c_f = casimir_split(n_sites)
    return c_b * params.lam + c_f * params.mu


def gaudin_spin_form(n_sites: int, constant=None) -> GradedMatrix:
    """Gaudin Hamiltonian written as explicit two-site couplings.

    ``sum_{i != j} [H_i H_j + 2(E+_i E-_j + E-_i E+_j) - F+_i F-_j + F-_i F+_j]``
    plus ``constant * identity``.  The constant defaults to ``2N``, the value
    for which this equals ``Delta^(N)(C)``.
    """
    _check_sites(n_sites)
    if n_sites < 2:
        raise ValueError("the spin form needs at least two sites")
    const = 2 * n_sites if constant is None else exact(constant)
    ops = {
        name: [embed_at_site(site_generator(name), i, n_sites) for i in range(1, n_sites + 1)]
        for name in GENERATOR_NAMES
    }
    H, Ep, Em, Fp, Fm = (ops[n] for n in GENERATOR_NAMES)
    total = GradedMatrix(SparseMatrix.identity(3**n_sites).scale(const), 0, chain_grading(n_sites))
    for i in range(n_sites):
        for j in range(n_sites):
            if i == j:
                continue
            total = total + H[i] @ H[j] + (Ep[i] @ Em[j] + Em[i] @ Ep[j]) * 2
            total = total - Fp[i] @ Fm[j] + Fm[i] @ Fp[j]
    return total


@dataclass
class ObservableFamily:
    n_sites: int
    delta_h: GradedMatrix
    partial_casimirs: Dict[int, GradedMatrix] = field(default_factory=dict)

    def members(self) -> Dict[str, GradedMatrix]:
        out = {"Delta(H)": self.delta_h}
        out.update({f"C_{h}": c for h, c in sorted(self.partial_casimirs.items())})
        return out


def observable_family(n_sites: int) -> ObservableFamily:
    _check_sites(n_sites)
    return ObservableFamily(
        n_sites,
        coproduct("H", n_sites),
        {h: partial_casimir(h, n_sites) for h in range(2, n_sites + 1)},
    )


def commuting_pairs(named: Dict[str, GradedMatrix]):
    """Yield ``(name_a, name_b, [A, B])`` over all unordered pairs."""
    for (a, A), (b, B) in combinations(named.items(), 2):
        yield a, b, commutator(A, B)


def verify_coassociativity(n_sites: int = 3) -> VerificationReport:
    """Compare both parenthesisations of the iterated coproduct."""
    report = VerificationReport("coassociativity")
    for name in GENERATOR_NAMES:
        left = coproduct_recursive(name, n_sites, left=True)
        right = coproduct_recursive(name, n_sites, left=False)
        report.add(
            f"(Delta x id)Delta = (id x Delta)Delta for {name}, N={n_sites}",
            left == right,
            None if left == right else describe_difference(left, right),
        )
    return report
