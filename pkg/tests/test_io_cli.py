import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from sepcomp.cli import run
from sepcomp.errors import DanglingReference, DuplicateName, ParseError
from sepcomp.io import format_code, format_group, parse_text, parse_workspace
from sepcomp.codes import hamming_7_4
from sepcomp.groups import make_symmetric

ROOT = Path(__file__).resolve().parent.parent
Z2WS = str(ROOT / "workspaces" / "z2.txt")
CODEWS = str(ROOT / "workspaces" / "codes.txt")
GOLDEN = Path(__file__).resolve().parent / "golden"

Z2 = """group Z2
order 2
table
0 1
1 0
"""


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_group_and_full_fgroup():
    ws = parse_text(Z2 + "fgroup F\ngroup Z2\ndomain 2\ngen 1 0\ngen 0 1\n")
    assert list(ws.groups) == ["Z2"] and list(ws.fgroups) == ["F"]
    assert len(ws.fgroups["F"]) == 4


def test_group_block_after_fgroup():
    text = Z2 + "fgroup F\ngroup Z2\ndomain 1\ngen 1\ngroup Z1\norder 1\ntable\n0\n"
    ws = parse_text(text)
    assert set(ws.groups) == {"Z2", "Z1"}


def test_dangling_reference():
    with pytest.raises(DanglingReference):
        parse_text(Z2 + "hom H\nsource nope\ntarget nope\n")


def test_duplicate_name():
    with pytest.raises(DuplicateName):
        parse_text(Z2 + Z2)


def test_bad_row_length():
    with pytest.raises(ParseError) as exc:
        parse_text("group G\norder 2\ntable\n0 1\n1\n", path="g.txt")
    assert exc.value.line == 5
    assert str(exc.value).startswith("g.txt:5:")


@pytest.mark.parametrize(
    "text",
    [
        "order 2\n",
        "group G\norder two\n",
        "group G\norder 2\ntable\n0 1\n1 1\n",
        Z2 + "fgroup F\ngroup Z2\ndomain 2\ngen 1\n",
        Z2 + "fgroup F\ngroup Z2\ndomain 2\ngen 1 2\n",
        "code C\nfield 2\nlength 3\ndim 2\nrow 101\n",
        "code C\nfield 4\nlength 2\ndim 1\nrow 10\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_text(text)


def test_format_roundtrip():
    S3 = make_symmetric(3)
    ws = parse_text(format_group(S3, "S3") + format_code(hamming_7_4(), "H"))
    assert ws.groups["S3"].table == S3.table
    assert ws.codes["H"] == hamming_7_4()


def test_sample_workspaces_parse():
    ws = parse_workspace([Z2WS, CODEWS])
    assert len(ws.fgroups) == 4 and len(ws.homs) == 5 and len(ws.codes) == 4


GOLDEN_CASES = [
    ("analyze", ["full3", "even3", "diag2"], Z2WS),
    ("represent", ["id2"], Z2WS),
    ("represent", ["swap3"], Z2WS),
    ("represent", ["shrink"], Z2WS),
    ("represent", ["spread"], Z2WS),
    ("equiv", ["hamming", "hamming_perm"], CODEWS),
    ("aut", ["ternary"], CODEWS),
    ("wenum", ["hamming", "other", "ternary"], CODEWS),
]


@pytest.mark.parametrize("cmd, names, ws", GOLDEN_CASES, ids=lambda v: v if isinstance(v, str) and "/" not in v else None)
def test_golden_output(cmd, names, ws):
    code, out, err = cli(cmd, *names, "--workspace", ws)
    assert code == 0 and err == ""
    assert out == (GOLDEN / f"{cmd}_{'_'.join(names)}.txt").read_text()


def test_analyze_reports():
    code, out, _ = cli("analyze", "full3", "even3", "diag2", "-w", Z2WS)
    assert code == 0
    full3, even3, diag2 = out.split("\n\n")
    for key in ("faithful", "separates_points", "pointwise_dense", "controllable", "normal"):
        assert f"{key}: true" in full3
    assert "controllable: false witness f=(1 1 0) D1={0} D2={1}" in even3
    assert "function_group: false" in diag2


def test_represent_identity():
    code, out, _ = cli("represent", "id2", "-w", Z2WS)
    assert code == 0
    assert "h: 0 1" in out and "w[0]: 0->0 1->1 (identity)" in out
    assert "hypotheses:" in out


def test_represent_non_separating_exits_2():
    code, out, err = cli("represent", "sum2", "-w", Z2WS)
    assert code == 2
    assert err.startswith("ERR 2 weakly_separating:") and err.count("\n") == 1
    assert "(1 0),(0 1)" in err


def test_equiv_and_not_equivalent():
    code, out, _ = cli("equiv", "hamming", "hamming_perm", "-w", CODEWS)
    assert code == 0 and "sigma: " in out and "lambda: 1 1 1 1 1 1 1" in out
    code, _, err = cli("equiv", "hamming", "other", "-w", CODEWS)
    assert code == 3 and err.startswith("ERR 3 not-equivalent:")


def test_input_errors_exit_4(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("group G\norder 2\ntable\n0 1\n")
    code, _, err = cli("analyze", "x", "-w", str(bad))
    assert code == 4 and err.startswith("ERR 4 parse-error:")
    code, _, err = cli("wenum", "nope", "-w", CODEWS)
    assert code == 4 and err.startswith("ERR 4 dangling-reference:")
    code, _, err = cli("equiv", "hamming", "-w", CODEWS)
    assert code == 4


def test_json_mode():
    code, out, _ = cli("equiv", "hamming", "hamming_perm", "-w", CODEWS, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["exit"] == 0
    (res,) = doc["results"]
    assert res["equivalent"] and len(res["sigma"]) == 7
    code, out, _ = cli("represent", "sum2", "-w", Z2WS, "--json")
    doc = json.loads(out)
    assert doc["exit"] == 2 and doc["error"]["kind"] == "weakly_separating"


def test_closure_bound_env(monkeypatch):
    monkeypatch.setenv("SEPCOMP_MAX_CLOSURE", "3")
    code, _, err = cli("analyze", "full3", "-w", Z2WS)
    assert code == 4 and err.startswith("ERR 4 ")


def test_byte_identical_across_processes():
    argv = [sys.executable, "-m", "sepcomp.cli", "aut", "ternary", "-w", CODEWS, "--json"]
    runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] and runs[0]
