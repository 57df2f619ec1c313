import subprocess
import sys
import tempfile
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelian_cs import matrix
from abelian_cs.cli import RunConfig, format_complex, main, run
from abelian_cs.exact_linalg import format_matrix, parse_matrix
from abelian_cs.phases import GaussSum, InvariantValue


@pytest.fixture
def write(tmp_path):
    def _write(name, rows):
        path = tmp_path / name
        path.write_text(format_matrix(matrix(rows)))
        return str(path)
    return _write


def invoke(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_format_complex():
    assert format_complex(-2 + 1e-15j) == "re -2.00000000000 im 0.00000000000"
    assert format_complex(1 / 3 + 2j) == "re 0.333333333333 im 2.00000000000"


def test_lens(capsys):
    status, out, _ = invoke(capsys, "lens", "-k", "1", "-p", "2", "--mode", "float")
    assert status == 0
    assert "Z: re -2.00000000000 im 0.00000000000" in out
    assert "RT: re -1.00000000000 im 0.00000000000" in out
    residual = float(out.split("residual Z - p*RT: ")[1])
    assert residual < 1e-12


def test_lens_exact_block_parses(capsys):
    status, out, _ = invoke(capsys, "lens", "-k", "1", "-p", "2", "--mode", "exact")
    assert status == 0
    blocks = out.split("[RT exact]\n")
    z_text = blocks[0].split("[Z exact]\n")[1]
    assert GaussSum.parse(z_text).to_complex() == pytest.approx(-2)
    assert InvariantValue.parse(blocks[1].split("residual")[0]).to_complex() == pytest.approx(-1)


def test_group(capsys, write):
    status, out, _ = invoke(capsys, "group", write("k.txt", [[2, 1], [1, 2]]))
    assert status == 0
    assert out.splitlines()[0] == "factors: 3"
    assert "order: 3" in out


def test_det_signature_snf(capsys, write):
    path = write("m.txt", [[4, 2], [2, 4]])
    assert invoke(capsys, "det", path)[1] == "12\n"
    assert invoke(capsys, "signature", path)[1] == "2\n"
    status, out, _ = invoke(capsys, "snf", path)
    assert status == 0
    d_text = out.split("# U")[0]
    assert parse_matrix(d_text) == matrix([[2, 0], [0, 6]])


def test_partition_and_rt(capsys, write):
    c, l = write("c.txt", [[1, 1], [0, 1]]), write("l.txt", [[2]])
    status, out, _ = invoke(capsys, "partition", "-C", c, "-L", l, "--mode", "float")
    assert (status, out) == (0, "Z: re -2.00000000000 im 0.00000000000\n")
    k = write("k.txt", [[2, 1], [1, 2]])
    status, out, _ = invoke(capsys, "rt", "-K", k, "-L", l, "--mode", "float")
    assert (status, out) == (0, "RT: re -1.00000000000 im 0.00000000000\n")


def test_reciprocity(capsys, write):
    status, out, _ = invoke(capsys, "reciprocity", "-K", write("k.txt", [[2, 1], [1, 2]]),
                            "-L", write("l.txt", [[4]]))
    assert status == 0
    assert "reciprocity: holds" in out


def test_duality_reports_second_equality(capsys, write):
    status, out, _ = invoke(capsys, "duality", "-C", write("c.txt", [[1, 1], [0, 1]]),
                            "-L", write("l.txt", [[2]]))
    assert status == 2
    assert "|det L|^(n/2) RT_K(L): re -2.00000000000 im 0.00000000000" in out
    assert "|det K|^(m/2) RT_L(K): re 0.00000000000 im 1.73205080757" in out
    assert "duality: FAILS" in out


def test_duality_holds_when_determinants_balance(capsys, write):
    # |det K| = |det L| = 2 with n = m = 1
    status, out, _ = invoke(capsys, "duality", "-C", write("c.txt", [[1]]), "-L", write("l.txt", [[2]]))
    assert status == 0
    assert "duality: holds" in out


def test_moves(capsys, write, tmp_path):
    write("p.txt", [[1, 1], [0, 1]])
    moves = tmp_path / "moves.txt"
    moves.write_text("slide p.txt\nstab H\nstab E8\n")
    status, out, _ = invoke(capsys, "moves", "-K", write("k.txt", [[2]]),
                            "-L", write("l.txt", [[2, 1], [1, 2]]), "-M", str(moves))
    assert status == 0
    assert "exact=yes" in out
    assert "invariance: holds" in out


@pytest.mark.parametrize("rows, key, error", [
    ([[1, 2, 3]], "C", "NonSquare: -C"),
    ([[3]], "L", "NotEven: -L"),
])
def test_input_errors(capsys, write, rows, key, error):
    good = {"C": write("c.txt", [[1]]), "L": write("l.txt", [[2]])}
    good[key] = write("bad.txt", rows)
    status, out, err = invoke(capsys, "partition", "-C", good["C"], "-L", good["L"])
    assert status == 1
    assert out == ""
    assert err.startswith("error: " + error)


def test_odd_k_names_index(capsys, write):
    status, _, err = invoke(capsys, "rt", "-K", write("k.txt", [[1, 0], [0, 3]]), "-L", write("l.txt", [[2]]))
    assert status == 1
    assert "NotEven" in err and "diagonal entry 0" in err


def test_parse_error_reports_line(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2\n1 2\n3 x\n")
    status, _, err = invoke(capsys, "det", str(bad))
    assert status == 1
    assert "ParseError" in err and "line 3" in err


def test_missing_file(capsys, tmp_path):
    status, _, err = invoke(capsys, "det", str(tmp_path / "nope.txt"))
    assert status == 1
    assert "file not found" in err


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("det", {}, tolerance=0)
    with pytest.raises(ValueError):
        RunConfig("det", {}, budget=0)
    with pytest.raises(ValueError):
        RunConfig("det", {}, mode="json")


def test_budget_exceeded_is_input_error(write):
    cfg = RunConfig("partition", {"C": write("c.txt", [[1, 0], [0, 1]]), "L": write("l.txt", [[12]])},
                    budget=10)
    status, text = run(cfg)
    assert status == 1
    assert "BudgetExceeded" in text


def test_reports_are_deterministic(write):
    inputs = {"K": write("k.txt", [[4, 2], [2, 4]]), "L": write("l.txt", [[2, 1], [1, 4]])}
    a = run(RunConfig("reciprocity", inputs, seed=3))
    b = run(RunConfig("reciprocity", inputs, seed=3))
    assert a == b


def test_selftest_prints_seed_and_fails_on_duality(capsys):
    status, out, _ = invoke(capsys, "selftest", "--seed", "0")
    assert out.startswith("seed: 0\n")
    assert "PASS gauss-milgram" in out
    # the second duality equality is part of the suite and does not hold
    assert "FAIL duality Z = |det K|^(m/2) RT_L(K)" in out
    assert status == 2


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_output_round_trips(r, c, data):
    rows = data.draw(st.lists(st.lists(st.integers(-50, 50), min_size=c, max_size=c),
                              min_size=r, max_size=r))
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "m.txt"
        path.write_text(format_matrix(matrix(rows)))
        status, text = run(RunConfig("snf", {"file": str(path)}))
    assert status == 0
    sections = text.split("# U\n")
    u_text, v_text = sections[1].split("# V\n")
    for block in (sections[0].replace("# D\n", ""), u_text, v_text):
        m = parse_matrix(block)
        assert format_matrix(m) == block


def test_module_entry_point(tmp_path):
    path = tmp_path / "k.txt"
    path.write_text("2 2\n2 1\n1 2\n")
    proc = subprocess.run([sys.executable, "-m", "abelian_cs", "det", str(path)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "3\n"
