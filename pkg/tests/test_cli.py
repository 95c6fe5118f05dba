import io
import subprocess
import sys

import pytest

from socle.cli import main
from socle.report import HEADER, parse_record


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_corpus_list():
    code, text = run("corpus", "list")
    assert code == 0
    assert "buchsbaum_two_planes" in text and "quadric_cone" in text


def test_invariants_command():
    code, text = run("invariants", "buchsbaum_two_planes")
    assert code == 0
    for line in ("d=2", "depth=1", "s=(0,1,2)", "h=(0,1)", "n0=1"):
        assert line in text.splitlines()


def test_ir_seq_csv():
    code, text = run("ir-seq", "buchsbaum_two_planes", "--params", "q0", "--max-n", "2")
    assert code == 0
    rows = [line.split(",") for line in text.strip().splitlines()]
    assert rows[0] == ["n", "ir", "bound", "slack"]
    assert [int(r[1]) for r in rows[1:]][0] == 2
    assert [int(r[2]) for r in rows[1:]] == [4, 7, 10]


def test_hilbert_command():
    code, text = run("hilbert", "poly_xy", "--ideal", "m", "--max-n", "5")
    assert code == 0
    assert "# fit e=(1,0,0) stable_from=0" in text


def test_gb_colon_intersect():
    code, text = run("gb", "buchsbaum_two_planes")
    assert code == 0 and sorted(text.split()) == sorted(["x*z", "y*z", "x*w", "y*w"])
    code, text = run("colon", "buchsbaum_two_planes", "--a", "q0")
    assert code == 0 and sorted(text.split()) == ["w", "x", "y", "z"]
    code, text = run("intersect", "poly_xy", "--a", "x", "--b", "y")
    assert code == 0 and text.split() == ["x*y"]
    code, text = run("gb", "poly_xy", "--gens", "x^2, x*y + y^2", "--order", "lex")
    assert code == 0 and "y^3" in text


def test_standard_check():
    code, text = run("standard-check", "buchsbaum_two_planes", "--params", "q")
    assert code == 0 and text.strip() == "standard=true"


def test_field_flag_reruns_exactly():
    a = run("invariants", "buchsbaum_two_planes")[1]
    b = run("--field", "rational", "invariants", "buchsbaum_two_planes")[1]
    assert a == b


def test_errors_give_nonzero_exit(capsys):
    assert run("invariants", "no_such_ring")[0] == 2
    assert run("ir-seq", "buchsbaum_two_planes", "--params", "zz")[0] == 2
    with pytest.raises(SystemExit):
        run("frobnicate")


def test_verify_single_check():
    code, text = run("verify", "--check", "theorem-a", "--ring", "buchsbaum_two_planes")
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith(HEADER)
    recs = [parse_record(l) for l in lines[1:]]
    assert recs and all(r["check"] == "theorem-a" for r in recs)
    assert list(recs[0])[:7] == ["check", "ring", "n", "pass", "lhs", "rhs", "ms"]


def test_verify_failure_exit(tmp_path):
    bad = tmp_path / "bad.ring"
    bad.write_text("vars x y\nideal:\nexpect s = [0, 0, 2] # deliberately wrong\n", encoding="utf-8")
    code, text = run("verify", "--all", "--ring", str(bad))
    assert code == 1
    assert "pass=false" in text


def test_verify_all_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    csv = tmp_path / "t.csv"
    assert run("verify", "--all", "--no-timing", "-o", str(a), "--csv", str(csv))[0] == 0
    assert run("verify", "--all", "--no-timing", "--jobs", "3", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert csv.read_text().splitlines()[0] == "ring,params,n,ir,bound,slack"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "socle", "corpus", "list"],
                          capture_output=True, text=True, check=True)
    assert "poly_xy" in proc.stdout
