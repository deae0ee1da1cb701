import csv
import io
import json
from fractions import Fraction
from pathlib import Path

import pytest

from osp_gaudin.cli import main
from osp_gaudin.eigenbasis import LabelChain, hamiltonian_eigenvalue
from osp_gaudin.coproduct import HamiltonianParams
from osp_gaudin.exact_linalg import StateVector, rank
from osp_gaudin.reference import reference_state

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def vector_of(entries, dim):
    return StateVector(dim, {e["index"]: Fraction(e["coeff"]) for e in entries})


# --- spectrum ------------------------------------------------------------------

def test_spectrum_one_site(capsys):
    code, out, _ = run(capsys, "spectrum", "--sites", "1")
    assert code == 0
    states = json.loads(out)["states"]
    assert [s["h_eigenvalue"] for s in states] == [-1, 0, 1]


def test_spectrum_two_sites(capsys):
    code, out, _ = run(capsys, "spectrum", "--sites", "2")
    payload = json.loads(out)
    assert code == 0 and payload["sites"] == 2
    assert payload["lambda"] == "1" and payload["mu"] == "1"
    assert len(payload["states"]) == 9
    assert payload["states"][0]["casimir_eigenvalues"] == {"2": 6}


def test_spectrum_three_sites_bosonic(capsys):
    code, out, _ = run(capsys, "spectrum", "--sites", "3", "--lambda", "1", "--mu", "0")
    states = json.loads(out)["states"]
    assert code == 0 and len(states) == 27
    p = HamiltonianParams(1, 0)
    for s in states:
        m = s["chain"][-1][0] if s["chain"] else 0
        assert Fraction(s["hamiltonian_eigenvalue"]) == hamiltonian_eigenvalue(s["k"], m, 3, p)
    keys = [(s["chain"], s["k"]) for s in states]
    assert keys == sorted(keys, key=lambda t: ([x for pair in t[0] for x in pair], t[1]))


def test_spectrum_rational_params(capsys):
    code, out, _ = run(capsys, "spectrum", "--sites", "2", "--lambda", "1/2", "--mu=-3/4")
    payload = json.loads(out)
    assert code == 0 and payload["lambda"] == "1/2" and payload["mu"] == "-3/4"


def test_decimal_params_are_exact(capsys):
    _, out, _ = run(capsys, "spectrum", "--sites", "1", "--lambda", "0.5")
    assert json.loads(out)["lambda"] == "1/2"


def test_spectrum_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--sites", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 9
    assert rows[0]["vector"] == "0:1"
    assert rows[0]["casimir_eigenvalues"] == "2:6"


def test_spectrum_guard(capsys):
    code, out, err = run(capsys, "spectrum", "--sites", "7")
    assert code == 3 and out == "" and "max-sites" in err


def test_spectrum_guard_override(capsys):
    code, _, _ = run(capsys, "spectrum", "--sites", "3", "--max-sites", "2")
    assert code == 3


@pytest.mark.parametrize("argv", [
    ["spectrum", "--sites", "0"],
    ["spectrum", "--sites", "x"],
    ["spectrum", "--sites", "2", "--lambda", "pi"],
    ["spectrum", "--sites", "2", "--format", "xml"],
    ["spectrum"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


# --- verify --------------------------------------------------------------------

def test_verify_all_three_sites(capsys):
    code, out, _ = run(capsys, "verify", "--sites", "3", "--suite", "all")
    payload = json.loads(out)
    assert code == 0 and payload["pass"] is True
    assert [r["suite"] for r in payload["reports"]] == ["relations", "family", "kernel", "eigen", "spinform"]


def test_verify_family_two_sites(capsys):
    code, out, _ = run(capsys, "verify", "--sites", "2", "--suite", "family", "--lambda", "1", "--mu", "1")
    checks = json.loads(out)["reports"][0]["checks"]
    assert code == 0
    # the observable pair plus the Hamiltonian against each observable
    assert sum(1 for c in checks if "lambda" not in c["name"]) == 1


def test_verify_unknown_suite(capsys):
    code, out, err = run(capsys, "verify", "--sites", "3", "--suite", "nope")
    assert code == 2 and out == "" and "unknown suite" in err


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--sites", "2", "--suite", "spinform", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows and all(r["pass"] == "True" for r in rows)


def test_verify_failure_exit_code(capsys, monkeypatch):
    from osp_gaudin import cli, oracle

    def broken(name, n, params=oracle.DEFAULT_PARAMS):
        if name == "spinform":
            return oracle.verify_spin_form(n, constant=n)
        return oracle.run_suite(name, n, params)

    monkeypatch.setattr(cli, "run_suite", broken)
    code, out, _ = run(capsys, "verify", "--sites", "2", "--suite", "spinform")
    payload = json.loads(out)
    assert code == 1 and payload["pass"] is False
    assert payload["reports"][0]["checks"][0]["witness"]


# --- count ---------------------------------------------------------------------

def test_count_two_sites(capsys):
    code, out, _ = run(capsys, "count", "--sites", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload == {"sites": 2, "irreps": {"0": 1, "1/2": 1, "1": 1}, "kernel_dim": 3, "total_dim": 9}


def test_count_three_sites(capsys):
    _, out, _ = run(capsys, "count", "--sites", "3")
    assert json.loads(out)["kernel_dim"] == 7


def test_count_ten_sites_has_no_guard(capsys):
    code, out, _ = run(capsys, "count", "--sites", "10")
    payload = json.loads(out)
    assert code == 0 and payload["total_dim"] == 3**10
    total = sum(c * (4 * Fraction(s) + 1) for s, c in payload["irreps"].items())
    assert total == 3**10


def test_count_csv(capsys):
    _, out, _ = run(capsys, "count", "--sites", "2", "--format", "csv")
    assert out == "spin,count\n0,1\n1/2,1\n1,1\n"


# --- basis ---------------------------------------------------------------------

def test_basis_two_sites_kernel(capsys):
    code, out, _ = run(capsys, "basis", "--sites", "2", "--kernel-only")
    states = json.loads(out)["states"]
    assert code == 0 and len(states) == 3
    for s in states:
        steps = tuple(tuple(p) for p in s["chain"])
        assert vector_of(s["vector"], 9) == reference_state(2, steps)


def test_basis_three_sites_kernel(capsys):
    code, out, _ = run(capsys, "basis", "--sites", "3", "--kernel-only")
    states = json.loads(out)["states"]
    assert code == 0 and len(states) == 7
    for s in states:
        steps = tuple(tuple(p) for p in s["chain"])
        assert s["label"] == LabelChain(steps, 3).label()
        assert vector_of(s["vector"], 27) == reference_state(3, steps)


def test_basis_two_sites_full(capsys):
    code, out, _ = run(capsys, "basis", "--sites", "2")
    states = json.loads(out)["states"]
    assert code == 0 and len(states) == 9
    assert rank([vector_of(s["vector"], 9) for s in states]) == 9


def test_basis_csv(capsys):
    _, out, _ = run(capsys, "basis", "--sites", "2", "--kernel-only", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["chain"] for r in rows] == ["[]", "[[1,2]]", "[[2,2]]"]
    assert rows[0]["vector"] == "0:1"


@pytest.mark.parametrize("n", [2, 3])
def test_basis_matches_golden_bytes(tmp_path, n):
    out = tmp_path / "basis.json"
    assert main(["basis", "--sites", str(n), "--kernel-only", "--out", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / f"basis_N{n}_kernel.json").read_bytes()


@pytest.mark.parametrize("argv", [
    ["spectrum", "--sites", "3", "--lambda", "2", "--mu", "3"],
    ["basis", "--sites", "3"],
    ["verify", "--sites", "2"],
    ["count", "--sites", "8", "--format", "csv"],
])
def test_output_is_byte_stable(tmp_path, argv):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(argv + ["--out", str(a)]) == main(argv + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
