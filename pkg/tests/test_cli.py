import io
import json
import subprocess
import sys

import pytest

from groupbounds import cli, verify
from groupbounds.verify import Check


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


# --- examples -------------------------------------------------------------------


def test_minkowski_example():
    assert call("minkowski", "--n", "8") == (0, "1393459200 = 2^15·3^5·5^2·7\n", "")
    assert call("minkowski", "--n", "8", "--ell", "3")[1] == "M(8,3) = 5\n"


def test_e8_m_bound_all_primes():
    code, out, _ = call("bound", "--kind", "m", "--root", "E8", "--field", "Q", "--ell", "all")
    assert code == 0
    first = out.splitlines()[0]
    assert first.endswith("2^30·3^13·5^5·7^4·11^2·13^2·19·31")


def test_invariants_example():
    assert call("invariants", "--field", "F:9", "--ell", "2") == (0, "t=1 m=3 type=a\n", "")
    assert call("invariants", "--field", "Qbar", "--ell", "5")[1] == "t=1 m=inf\n"


def test_infinite_bound_names_the_criterion():
    code, out, _ = call("bound", "--kind", "m", "--root", "E8", "--field", "R", "--ell", "7")
    assert code == 0
    assert "inf (m = inf and t divides a degree)" in out
    code, out, _ = call("--json", "bound", "--kind", "m", "--root", "E8", "--field", "R", "--ell", "7")
    assert json.loads(out)["bound"] == {"value": "inf", "source": "M"}


def test_achievable_reports_optimality():
    _, out, _ = call("bound", "--kind", "achievable", "--root", "A:2", "--field", "Q", "--ell", "2")
    assert ": 3 " in out and "not known optimal" in out


def test_mass_output():
    code, out, _ = call("mass", "--root", "G2", "--ell", "7")
    assert code == 0
    assert out.startswith("mass(G2) = 1/12096    denominator = 2^6·3^3·7\n")
    assert "v(denominator) = 1, M-bound = 1" in out


def test_json_schema_for_factored_values():
    _, out, _ = call("--json", "minkowski", "--n", "4")
    assert json.loads(out)["bound"] == {"value": "5760", "factors": [[2, 7], [3, 2], [5, 1]]}


def test_witness_commands():
    _, out, _ = call("witness", "--kind", "wreath", "--n", "4", "--ell", "2")
    assert "v = 7, M(n,ell) = 7" in out
    _, out, _ = call("witness", "--kind", "gl2", "--p", "3", "--ell", "2")
    assert "48 elements" in out and "v_2 = 4 (formula 4)" in out
    _, out, _ = call("witness", "--kind", "schur", "--N", "3", "--ell", "3", "--field", "QzN:3")
    assert "v(A_N) = 4, v(A_N^1) = 3" in out


# --- tables ---------------------------------------------------------------------


def test_minkowski_table_text():
    _, out, _ = call("table", "--name", "minkowski8")
    lines = out.splitlines()
    assert lines[0] == "M(1) = 2"
    assert lines[1] == "M(2) = 2^3·3 = 24"
    assert lines[7] == "M(8) = 2^15·3^5·5^2·7 = 1393459200"


def test_e8_table_flags_the_missing_eleven():
    _, out, _ = call("table", "--name", "e8")
    lines = out.splitlines()
    assert lines[0] == "M(Q,E8) = 2^30·3^13·5^5·7^4·11^2·13^2·19·31"
    assert lines[1] == "M_S(Q,E8) = 2^30·3^13·5^6·7^5·11^2·13^2·17·19·31"
    assert lines[2] == "M_S/M = 5·7·17"
    assert lines[3].startswith("# ") and "11^2" in lines[3]


def test_f4_table():
    _, out, _ = call("table", "--name", "f4mass")
    assert out.splitlines()[0] == "1/2^15·3^6·5^2·7 + 1/2^12·3^5·7^2·13 = 691/2^15·3^6·5^2·7^2·13"


# --- round trip -------------------------------------------------------------------


COMMANDS = [
    ["minkowski", "--n", "8"],
    ["minkowski", "--n", "30", "--ell", "5"],
    ["schur", "--n", "6", "--ell", "2", "--field", "F:7"],
    ["invariants", "--field", "explicit:t=2,m=3,type=c", "--ell", "2"],
    ["invariants", "--field", "R", "--ell", "2"],
    ["bound", "--kind", "s", "--root", "E8", "--field", "Q", "--ell", "11"],
    ["bound", "--kind", "m", "--root", "F4", "--field", "F:4", "--ell", "all"],
    ["bound", "--kind", "torus", "--root", "A:3", "--field", "Q", "--ell", "2", "--dim", "5"],
    ["bound", "--kind", "achievable", "--root", "E8", "--field", "Q", "--ell", "2"],
    ["bound", "--kind", "corank", "--root", "E6", "--field", "R", "--ell", "3"],
    ["bound", "--kind", "m", "--root", "GL:3", "--field", "Qbar", "--ell", "3"],
    ["mass", "--root", "F4"],
    ["mass", "--root", "E8", "--ell", "5"],
    ["witness", "--kind", "wreath", "--n", "10", "--ell", "3"],
    ["witness", "--kind", "gl2", "--p", "5", "--ell", "3"],
    ["witness", "--kind", "schur", "--N", "2", "--ell", "5", "--field", "Q"],
    ["table", "--name", "e8"],
    ["table", "--name", "minkowski8"],
    ["table", "--name", "f4mass"],
    ["verify", "--suite", "schur", "--suite", "mass"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a))
def test_json_round_trip(argv):
    code, text, _ = call(*argv)
    code_j, js, _ = call("--json", *argv)
    assert code == code_j == 0
    assert cli.render_text(json.loads(js)) + "\n" == text


def test_json_flag_after_subcommand():
    assert call("minkowski", "--n", "3", "--json") == call("--json", "minkowski", "--n", "3")


# --- exit codes -----------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["invariants", "--field", "Z", "--ell", "3"],
    ["bound", "--kind", "m", "--root", "E9", "--field", "Q", "--ell", "3"],
    ["invariants", "--field", "Q", "--ell", "x"],
    ["bound", "--kind", "m", "--root", "E8", "--field", "Q", "--ell", "3", "--dim", "2"],
    ["witness", "--kind", "wreath", "--ell", "3"],
    ["minkowski"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert call(*argv)[0] == 2


@pytest.mark.parametrize("argv, message", [
    (["invariants", "--field", "F:25", "--ell", "5"], "divides"),
    (["invariants", "--field", "F:6", "--ell", "5"], "prime power"),
    (["minkowski", "--n", "4", "--ell", "4"], "not prime"),
    (["schur", "--n", "4", "--ell", "3", "--field", "Qbar"], "finite m"),
    (["mass", "--root", "E6"], "odd degree 5"),
    (["bound", "--kind", "corank", "--root", "E8", "--field", "Q", "--ell", "5"], "m = inf"),
    (["bound", "--kind", "m", "--root", "E8", "--field", "R", "--ell", "all"], "m = inf"),
    (["witness", "--kind", "gl2", "--p", "11", "--ell", "3"], "refusing"),
])
def test_domain_errors_exit_1(argv, message):
    code, out, err = call(*argv)
    assert code == 1 and out == ""
    assert message in err


def test_failed_verification_exits_3(monkeypatch):
    monkeypatch.setitem(verify.SUITES, "zz_broken", lambda: [Check("zz_broken", "always fails", False, {"x": 1})])
    code, out, _ = call("verify", "--suite", "zz_broken")
    assert code == 3
    assert out.splitlines()[0].startswith("FAIL  zz_broken")
    assert out.splitlines()[-1] == "0 passed, 1 failed"


def test_verify_small_suites_pass():
    code, out, _ = call("verify", "--suite", "schur", "--suite", "sbound")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    # suites come out sorted by name
    suites = [line.split()[1] for line in lines[:-1]]
    assert suites == sorted(suites)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "groupbounds", "minkowski", "--n", "8"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "1393459200 = 2^15·3^5·5^2·7\n"
