import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from rigidlab import structfile
from rigidlab.cli import main
from rigidlab.constructions import make_prime_field, make_zmod
from rigidlab.core import regular_module


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def lines(text):
    return [json.loads(x) for x in text.splitlines() if x.strip()]


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, R in (("z12", make_zmod(12)), ("f2", make_prime_field(2))):
        p = tmp_path / f"{name}.json"
        structfile.dump(structfile.to_dict(name, regular_module(R), regular=True), p)
        paths[name] = str(p)
    doc = structfile.to_dict("bad", regular_module(make_zmod(5)), regular=True)
    doc["ring"]["mul"][2][3] = 0
    bad = tmp_path / "broken.json"
    bad.write_text(json.dumps(doc))
    paths["broken"] = str(bad)
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    paths["junk"] = str(junk)
    return paths


def test_check_z12(files):
    code, out = run("check", files["z12"], "--properties", "rigid")
    assert code == 0
    (row,) = lines(out)
    assert row["property"] == "rigid" and row["verdict"] == "fails"
    assert [3, 2] in row["witnesses"]
    assert row["witnesses"] == sorted(row["witnesses"])


def test_check_f2_holds(files):
    code, out = run("check", files["f2"], "--properties", "rigid,reduced,abelian")
    assert code == 0
    assert [r["verdict"] for r in lines(out)] == ["holds"] * 3


def test_check_broken_exits_2(files, capsys):
    code, _ = run("check", files["broken"])
    assert code == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "invalid structure" and err["witness"]


def test_check_io_errors(files, tmp_path):
    assert run("check", files["junk"])[0] == 1
    assert run("check", str(tmp_path / "missing.json"))[0] == 1
    assert run("check", files["f2"], "--properties", "nonsense")[0] == 1


def test_usage_errors():
    assert run()[0] == 1
    assert run("frobnicate")[0] == 1
    assert run("search", "--target", "rigid", "--budget", "0")[0] == 1
    assert run("search", "--target", "rigid &")[0] == 1


def test_verify_paper_all():
    code, out = run("verify-paper", "--example", "all")
    assert code == 0
    rows = lines(out)
    assert [r["result"] for r in rows if "example" in r] == ["PASS"] * 5
    assert rows[-1] == {"summary": "5/5 PASS"}


def test_verify_paper_matrices():
    code, out = run("verify-paper", "--example", "2.5")
    assert code == 0
    row = lines(out)[0]
    assert row["result"] == "PASS"
    assert "((0,0;0,0),(0,2;0,0))" in " ".join(row["details"])


def test_extend_f2(files, tmp_path):
    target = tmp_path / "v2.json"
    code, out = run("extend", files["f2"], "--vn", "2", "--check", "rigid,semicommutative",
                    "--out", str(target))
    assert code == 0
    rigid, semi = lines(out)
    assert rigid["verdict"] == "fails" and rigid["witnesses"][0] == [2, 1]
    assert semi["verdict"] == "holds"
    s = structfile.load(target)
    assert s.ring.size == 4
    again = structfile.to_dict(s.name, s.module, s.endo, regular=s.module_is_regular)
    assert structfile.from_dict(again).ring.content_hash == s.ring.content_hash


def test_extend_zero_module(tmp_path):
    p = tmp_path / "zero.json"
    structfile.dump(structfile.to_dict("zero", regular_module(make_zmod(1)), regular=True), p)
    code, out = run("extend", str(p), "--vn", "3")
    assert code == 0
    assert lines(out)[0]["ring"]["size"] == 1


def test_extend_budget(files):
    assert run("extend", files["z12"], "--vn", "4")[0] == 4
    assert run("extend", files["f2"], "--vn", "1")[0] == 1


def test_search_targets():
    code, out = run("search", "--target", "q2.9", "--max-size", "4")
    assert code == 0
    hit = lines(out)[0]
    assert hit["result"] == "found" and hit["name"] == "F2"
    code, out = run("search", "--target", "abelian & !rigid")
    assert lines(out)[0]["name"] == "Z/12"
    code, out = run("search", "--target", "false", "--max-size", "2")
    assert code == 0 and lines(out)[0]["result"] == "not_found"


def test_atlas_small_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("atlas", "--max-size", "2", "--out", str(a))[0] == 0
    assert run("atlas", "--max-size", "2", "--out", str(b), "--assert")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["entries"][0]["name"] == "F2"


def test_atlas_corpus_file(files, tmp_path):
    corpus = tmp_path / "corpus.json"
    docs = [json.loads(Path(files[k]).read_text()) for k in ("f2", "z12")]
    corpus.write_text(json.dumps({"entries": docs}))
    code, out = run("atlas", "--corpus", str(corpus), "--vn", "2")
    assert code == 0
    assert [e["name"] for e in json.loads(out)["entries"]] == ["f2", "z12"]
    assert run("atlas", "--vn", "x")[0] == 1


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "rigidlab", "check", files["z12"]],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and '"verdict":"fails"' in res.stdout
