import pytest

from osp_gaudin.algebra import GENERATOR_NAMES, commutator, supercommutator
from osp_gaudin.coproduct import (
    HamiltonianParams,
    casimir_split,
    coproduct,
    coproduct_recursive,
    gaudin_spin_form,
    general_hamiltonian,
    observable_family,
    partial_casimir,
    verify_coassociativity,
)
from osp_gaudin.eigenbasis import LabelChain, kernel_state, pseudovacuum
from osp_gaudin.exact_linalg import SparseMatrix
from osp_gaudin.graded_tensor import digits_of, product_state, state_from_terms


def test_total_h_on_vacuum():
    assert coproduct("H", 2) @ pseudovacuum(2) == pseudovacuum(2).scale(-2)


def test_total_fplus_on_vacuum():
    expected = state_from_terms([(1, ["e3", "e2"]), (1, ["e2", "e3"])])
    assert coproduct("Fplus", 2) @ pseudovacuum(2) == expected


def test_single_site_coproduct_is_generator():
    from osp_gaudin.algebra import site_generator

    for name in GENERATOR_NAMES:
        assert coproduct(name, 1) == site_generator(name)


def test_bad_site_count():
    with pytest.raises(ValueError):
        coproduct("H", 0)
    with pytest.raises(ValueError):
        partial_casimir(1, 3)
    with pytest.raises(ValueError):
        partial_casimir(4, 3)
    with pytest.raises(ValueError):
        gaudin_spin_form(1)


@pytest.mark.parametrize("n_sites", [2, 3, 4])
def test_sum_of_embeddings_equals_recursion(n_sites):
    for name in GENERATOR_NAMES:
        assert coproduct(name, n_sites) == coproduct_recursive(name, n_sites)


def test_homomorphism_three_sites():
    Fp, Fm, H = (coproduct(n, 3) for n in ("Fplus", "Fminus", "H"))
    assert supercommutator(Fp, Fm) == H


@pytest.mark.parametrize("n_sites", [2, 3, 4])
def test_bosonic_from_fermionic(n_sites):
    Fp, Fm = coproduct("Fplus", n_sites), coproduct("Fminus", n_sites)
    assert Fp @ Fp == coproduct("Eplus", n_sites)
    assert Fm @ Fm == -coproduct("Eminus", n_sites)


@pytest.mark.parametrize("n_sites", [1, 2, 3, 4])
def test_total_h_is_weight_diagonal(n_sites):
    weight = {0: -1, 1: 0, 2: 1}
    H = coproduct("H", n_sites).matrix
    expected = SparseMatrix.diagonal(sum(weight[d] for d in digits_of(i, n_sites)) for i in range(3**n_sites))
    assert H == expected


def test_two_site_casimir_on_vacuum():
    assert partial_casimir(2, 2) @ pseudovacuum(2) == pseudovacuum(2).scale(6)


def test_partial_casimirs_commute():
    assert commutator(partial_casimir(2, 3), partial_casimir(3, 3)).is_zero()


@pytest.mark.parametrize("n_sites", [2, 3, 4])
def test_family_commutes(n_sites):
    members = list(observable_family(n_sites).members().values())
    assert len(members) == n_sites
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            assert commutator(members[a], members[b]).is_zero()


def test_partial_casimir_preserves_weight_sectors():
    C = partial_casimir(2, 3).matrix
    H = coproduct("H", 3).matrix
    for i, j, _ in C.entries():
        assert H[i, i] == H[j, j]


def test_partial_casimir_padding_is_plain_identity():
    C2 = partial_casimir(2, 2)
    padded = partial_casimir(2, 3)
    assert padded.matrix == C2.matrix.kron(SparseMatrix.identity(3))


def test_general_hamiltonian_equal_weights_is_casimir():
    for n in (2, 3):
        assert general_hamiltonian(n, HamiltonianParams(1, 1)) == partial_casimir(n, n)


def test_general_hamiltonian_identity():
    for lam, mu in [(1, 0), (0, 1), (2, 3), ("1/2", "-5/3")]:
        p = HamiltonianParams(lam, mu)
        C, C_b, _ = casimir_split(3)
        assert general_hamiltonian(3, p) == C * p.mu + C_b * (p.lam - p.mu)


def test_general_hamiltonian_bosonic_on_ladder():
    # k=2 over the (1,2) kernel state at N=2: 1*(1)(3) - 0 + (0-1)(2)(3/2) = 0
    psi = kernel_state(LabelChain(((1, 2),), 2))
    phi = coproduct("Fplus", 2) @ psi
    assert not phi.is_zero()
    assert (general_hamiltonian(2, HamiltonianParams(1, 0)) @ phi).is_zero()


def test_general_hamiltonian_fermionic_on_vacuum():
    vac = pseudovacuum(2)
    assert general_hamiltonian(2, HamiltonianParams(0, 1)) @ vac == vac.scale(-2)


@pytest.mark.parametrize("n_sites", [2, 3, 4])
def test_spin_form_equals_casimir(n_sites):
    assert gaudin_spin_form(n_sites) == partial_casimir(n_sites, n_sites)


def test_spin_form_with_unit_per_site_constant_fails():
    assert gaudin_spin_form(3, constant=3) != partial_casimir(3, 3)


def test_spin_form_vacuum_expectation():
    for n in (2, 3):
        H = gaudin_spin_form(n)
        vac = pseudovacuum(n)
        out = H @ vac
        assert out[0] == 2 * n + (n * n - n)  # constant plus sum_{i!=j} H_i H_j = 1 each
        shifted = H.matrix - SparseMatrix.identity(3**n).scale(2 * n)
        # only the diagonal H_i H_j terms survive on the vacuum diagonal
        assert shifted[0, 0] == n * (n - 1)


def test_coassociativity():
    report = verify_coassociativity(3)
    assert report.passed and len(report.checks) == 5
    assert coproduct_recursive("Fplus", 3, left=True) == coproduct_recursive("Fplus", 3, left=False)
