"""Brute-force verification of every closed-form claim.

Everything here is recomputed from raw matrices: commutators, nullspaces,
matrix-vector products and ranks.  The closed forms from
:mod:`osp_gaudin.eigenbasis` only ever appear as the *claimed* values being
checked.  All checks are exact; a single differing entry fails with a witness.
"""

from __future__ import annotations

from typing import Callable, Iterable, List, Sequence, Tuple

from .algebra import describe_difference, verify_defining_relations
from .coproduct import (
    HamiltonianParams,
    casimir_split,
    commuting_pairs,
    coproduct,
    coproduct_images,
    gaudin_spin_form,
    general_hamiltonian,
    observable_family,
    partial_casimir,
    verify_coassociativity,
)
from .eigenbasis import (
    LabelChain,
    casimir_eigenvalue,
    enumerate_label_chains,
    full_spectrum,
    hamiltonian_eigenvalue,
    irrep_counts,
    kernel_state,
    ladder_states,
)
from .exact_linalg import StateVector, format_scalar, nullspace_basis, rank
from .graded_tensor import basis_label
from .reference import REFERENCE_KERNEL_STATES, printed_state, reference_state
from .report import VerificationReport

DEFAULT_PARAMS: Tuple[HamiltonianParams, ...] = (
    HamiltonianParams(1, 0),
    HamiltonianParams(0, 1),
    HamiltonianParams(2, 3),
)

SUITES = ("relations", "family", "kernel", "eigen", "spinform")


def _vector_witness(got: StateVector, want: StateVector, n_sites: int, what: str) -> str:
    i = got.first_difference(want)
    return (
        f"{what}: component {i} ({basis_label(i, n_sites)}) is "
        f"{format_scalar(got[i])}, expected {format_scalar(want[i])}"
    )


def _params_name(p: HamiltonianParams) -> str:
    return f"H(lambda={format_scalar(p.lam)}, mu={format_scalar(p.mu)})"


def verify_homomorphism(n_sites: int, graded: bool = True) -> VerificationReport:
    """Defining relations for the N-fold coproduct images, plus coassociativity."""
    if n_sites < 2:
        raise ValueError("homomorphism check needs N >= 2")
    images = coproduct_images(n_sites, graded=graded)
    report = verify_defining_relations(images, suite="relations")
    for check in report.checks:
        check.name = f"{check.name} (N={n_sites})"
    for e, f, sign in (("Eplus", "Fplus", 1), ("Eminus", "Fminus", -1)):
        got = images[f] @ images[f]
        want = images[e] * sign
        report.add(
            f"Delta({e}) = {'+' if sign > 0 else '-'}Delta({f})^2 (N={n_sites})",
            got == want,
            None if got == want else describe_difference(got, want),
        )
    report.extend(verify_coassociativity(3))
    return report


def verify_commuting_family(
    n_sites: int, params: Sequence[HamiltonianParams] = DEFAULT_PARAMS
) -> VerificationReport:
    """All pairwise commutators among ``Delta(H), C_2..C_N`` and the Hamiltonians."""
    if n_sites < 2:
        raise ValueError("commuting family needs N >= 2")
    members = observable_family(n_sites).members()
    for p in params:
        members[_params_name(p)] = general_hamiltonian(n_sites, p)
    report = VerificationReport("family")
    for a, b, comm in commuting_pairs(members):
        witness = None
        if not comm.is_zero():
            i, j, v = next(comm.matrix.entries())
            witness = f"[{a}, {b}] has entry ({i}, {j}) = {format_scalar(v)}"
        report.add(f"[{a}, {b}] = 0 (N={n_sites})", witness is None, witness)
    return report


def brute_kernel_check(n_sites: int) -> VerificationReport:
    """Nullspace of ``Delta(F-)`` against chain counting and the constructed states."""
    report = VerificationReport("kernel")
    lowering = coproduct("Fminus", n_sites)
    basis = nullspace_basis(lowering.matrix)
    dim = len(basis)
    chains = enumerate_label_chains(n_sites)
    counted = sum(irrep_counts(n_sites).values())
    report.add(
        f"dim ker Delta(F-) = number of label chains (N={n_sites})",
        dim == len(chains),
        f"nullspace dimension {dim}, {len(chains)} chains",
    )
    report.add(
        f"dim ker Delta(F-) = irrep count (N={n_sites})",
        dim == counted,
        f"nullspace dimension {dim}, recurrence gives {counted}",
    )
    residual_bad = [c for c in chains if not (lowering @ kernel_state(c)).is_zero()]
    report.add(
        f"Delta(F-) annihilates every kernel state (N={n_sites})",
        not residual_bad,
        residual_bad and f"nonzero residual for {residual_bad[0].label()}",
    )
    states = [kernel_state(c) for c in chains]
    r_basis = rank(basis)
    outside = [c for c, v in zip(chains, states) if rank(basis + [v]) != r_basis]
    report.add(
        f"kernel states lie in the brute-force nullspace (N={n_sites})",
        not outside,
        outside and f"{outside[0].label()} is outside the nullspace",
    )
    r = rank(states)
    report.add(
        f"kernel states are linearly independent (N={n_sites})",
        r == len(states),
        f"rank {r} for {len(states)} states",
    )
    return report


def verify_kernel_states(n_sites: int) -> VerificationReport:
    """Per-chain weight and annihilation checks, including the partial chain."""
    report = VerificationReport("kernel")
    dH = coproduct("H", n_sites)
    lowering = coproduct("Fminus", n_sites)
    raising = coproduct("Fplus", n_sites)
    for chain in enumerate_label_chains(n_sites):
        v = kernel_state(chain)
        tag = f"{chain.label()} (N={n_sites})"
        s = chain.steps[-1][1] if chain.steps else None

        got, want = dH @ v, v.scale(chain.m - n_sites)
        report.add(f"Delta(H) weight m-N for {tag}", got == want,
                   got != want and _vector_witness(got, want, n_sites, "Delta(H)"))
        got = lowering @ v
        report.add(f"Delta(F-) annihilates {tag}", got.is_zero(),
                   not got.is_zero() and _vector_witness(got, got.scale(0), n_sites, "Delta(F-)"))
        if s is not None:
            part_h = coproduct("H", n_sites, s)
            got, want = part_h @ v, v.scale(chain.m - s)
            report.add(f"Delta^(s)(H) weight m-s for {tag}", got == want,
                       got != want and _vector_witness(got, want, n_sites, "Delta^(s)(H)"))
            got = coproduct("Fminus", n_sites, s) @ v
            report.add(f"Delta^(s)(F-) annihilates {tag}", got.is_zero(),
                       not got.is_zero() and _vector_witness(got, got.scale(0), n_sites, "Delta^(s)(F-)"))
        top = ladder_states(chain)[-1][1]
        beyond = raising @ top
        report.add(f"ladder of {tag} ends after {chain.ladder_length} states", beyond.is_zero(),
                   not beyond.is_zero() and "Delta(F+) does not annihilate the top state")
    return report


def _eigen_check(
    report: VerificationReport,
    name: str,
    op,
    items: Iterable[Tuple[str, StateVector, object]],
    n_sites: int,
) -> None:
    count = 0
    for tag, vec, value in items:
        count += 1
        got, want = op @ vec, vec.scale(value)
        if got != want:
            report.add(f"{name} eigenvalues", False, _vector_witness(got, want, n_sites, f"{name} on {tag}"))
            return
    report.add(f"{name} eigenvalues ({count} states)", True)


def verify_eigenstates(
    n_sites: int, params: Sequence[HamiltonianParams] = DEFAULT_PARAMS
) -> VerificationReport:
    """Matrix application reproduces every closed-form eigenvalue; basis is complete."""
    report = VerificationReport("eigen")
    records = full_spectrum(n_sites, max_sites=max(n_sites, 1))
    tagged = [(f"{r.label.chain.label()} k={r.label.k}", r) for r in records]
    _eigen_check(report, f"Delta(H) (N={n_sites})", coproduct("H", n_sites),
                 ((t, r.vector, r.h_eigenvalue) for t, r in tagged), n_sites)
    for h in range(2, n_sites + 1):
        _eigen_check(report, f"C_{h} (N={n_sites})", partial_casimir(h, n_sites),
                     ((t, r.vector, casimir_eigenvalue(h, r.label.chain)) for t, r in tagged), n_sites)
    for p in params:
        _eigen_check(
            report, f"{_params_name(p)} (N={n_sites})", general_hamiltonian(n_sites, p),
            ((t, r.vector, hamiltonian_eigenvalue(r.label.k, r.label.chain.m, n_sites, p)) for t, r in tagged),
            n_sites,
        )
    r = rank([rec.vector for rec in records])
    report.add(f"rank of eigenbasis = 3^{n_sites} = {3 ** n_sites}", r == 3**n_sites,
               f"rank {r} for {len(records)} states")
    return report


def verify_reference_states(n_sites: int) -> VerificationReport:
    """Constructed kernel states against the hand-written two- and three-site lists."""
    if n_sites not in REFERENCE_KERNEL_STATES:
        raise ValueError(f"no reference states for N={n_sites}")
    report = VerificationReport("reference")
    lowering = coproduct("Fminus", n_sites)
    for steps in REFERENCE_KERNEL_STATES[n_sites]:
        chain = LabelChain(steps, n_sites)
        built, ref = kernel_state(chain), reference_state(n_sites, steps)
        report.add(f"{chain.label()} matches reference (N={n_sites})", built == ref,
                   built != ref and _vector_witness(built, ref, n_sites, chain.label()))
        printed = printed_state(n_sites, steps)
        if printed != ref:
            residual = lowering @ printed
            report.add(
                f"printed {chain.label()} is not in the kernel (known erratum)",
                not residual.is_zero(),
                "printed state unexpectedly satisfies the kernel condition",
            )
    return report


def verify_spin_form(n_sites: int, constant=None) -> VerificationReport:
    """Two-site coupling form of the Hamiltonian equals ``Delta^(N)(C)``."""
    if n_sites < 2:
        raise ValueError("spin form needs N >= 2")
    report = VerificationReport("spinform")
    got = gaudin_spin_form(n_sites, constant)
    want = casimir_split(n_sites)[0]
    const = 2 * n_sites if constant is None else constant
    report.add(
        f"spin form with constant {format_scalar(const)} = Delta(C) (N={n_sites})",
        got == want,
        got != want and describe_difference(got, want),
    )
    return report


def run_suite(name: str, n_sites: int, params: Sequence[HamiltonianParams] = DEFAULT_PARAMS) -> VerificationReport:
    runners: dict[str, Callable[[], VerificationReport]] = {
        "relations": lambda: verify_homomorphism(n_sites),
        "family": lambda: verify_commuting_family(n_sites, params),
        "kernel": lambda: _merge("kernel", brute_kernel_check(n_sites), verify_kernel_states(n_sites)),
        "eigen": lambda: verify_eigenstates(n_sites, params),
        "spinform": lambda: verify_spin_form(n_sites),
    }
    if name not in runners:
        raise KeyError(f"unknown suite {name!r}; expected one of {SUITES} or 'all'")
    return runners[name]()


def _merge(suite: str, *reports: VerificationReport) -> VerificationReport:
    out = VerificationReport(suite)
    for r in reports:
        out.extend(r)
    return out
