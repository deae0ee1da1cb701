import json

import pytest

from osp_gaudin.coproduct import HamiltonianParams
from osp_gaudin.eigenbasis import irrep_counts
from osp_gaudin.oracle import (
    brute_kernel_check,
    run_suite,
    verify_commuting_family,
    verify_eigenstates,
    verify_homomorphism,
    verify_kernel_states,
    verify_reference_states,
    verify_spin_form,
)
from osp_gaudin.reference import printed_state, reference_state
from osp_gaudin.coproduct import coproduct


@pytest.mark.parametrize("n", [2, 4])
def test_homomorphism_passes(n):
    report = verify_homomorphism(n)
    assert report.passed, report.failures()


def test_dropping_parity_strings_is_caught():
    report = verify_homomorphism(3, graded=False)
    assert not report.passed
    bad = report["[F+,F-]_+ = H (N=3)"]
    assert not bad.passed and bad.witness.startswith("entry")


def test_family_two_sites_one_pair():
    report = verify_commuting_family(2, params=())
    assert report.passed and len(report.checks) == 1


def test_family_four_sites_six_pairs():
    report = verify_commuting_family(4, params=())
    assert report.passed and len(report.checks) == 6


def test_family_with_hamiltonian():
    report = verify_commuting_family(3, params=(HamiltonianParams(2, 3),))
    assert report.passed
    assert any("lambda=2, mu=3" in c.name for c in report.checks)


@pytest.mark.parametrize("n, dim", [(2, 3), (3, 7)])
def test_kernel_dimensions(n, dim):
    report = brute_kernel_check(n)
    assert report.passed
    assert sum(irrep_counts(n).values()) == dim


def test_kernel_five_sites_matches_recurrence():
    assert brute_kernel_check(5).passed
    assert sum(irrep_counts(5).values()) == 51


def test_kernel_state_checks():
    assert verify_kernel_states(4).passed


def test_eigenstates_two_sites():
    report = verify_eigenstates(2, params=(HamiltonianParams(1, 1),))
    assert report.passed
    assert report["rank of eigenbasis = 3^2 = 9"].passed


def test_eigenstates_three_sites():
    report = verify_eigenstates(3, params=(HamiltonianParams(1, 0), HamiltonianParams(0, 1)))
    assert report.passed
    assert any("27 states" in c.name for c in report.checks)


def test_reference_states_and_erratum():
    report = verify_reference_states(3)
    assert report.passed
    erratum = [c for c in report.checks if "erratum" in c.name]
    assert len(erratum) == 1


def test_printed_erratum_fails_kernel_condition():
    steps = ((1, 2), (2, 3))
    printed, fixed = printed_state(3, steps), reference_state(3, steps)
    assert printed != fixed
    diff = printed - fixed
    assert diff.nnz == 2  # only the last two terms differ
    Fm = coproduct("Fminus", 3)
    assert (Fm @ fixed).is_zero()
    assert not (Fm @ printed).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_spin_form(n):
    assert verify_spin_form(n).passed


def test_spin_form_literal_constant_fails_with_diagonal_witness():
    report = verify_spin_form(3, constant=3)
    assert not report.passed
    witness = report.checks[0].witness
    assert witness.startswith("entry (0, 0)")


def test_report_json_shape():
    payload = run_suite("spinform", 2).to_dict()
    assert set(payload) == {"suite", "checks", "pass"}
    assert set(payload["checks"][0]) == {"name", "pass", "witness"}
    json.dumps(payload)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", 2)
