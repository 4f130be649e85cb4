import json
from pathlib import Path

import pytest

from bassline.cli import main

POSETS = Path(__file__).resolve().parent.parent / "posets"
C3 = str(POSETS / "C3.json")
V = str(POSETS / "V.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def fn(tmp_path):
    def make(values, poset="C3", **extra):
        return write(tmp_path, "fn.json", {"poset": poset, "values": values, **extra})

    return make


def test_validate_poset_only(capsys):
    code, out, _ = run(capsys, "validate", V)
    assert code == 0
    d = json.loads(out)
    assert d["structure"]["assh"] == ["p"]


def test_validate_good_function(capsys, fn):
    code, out, _ = run(capsys, "validate", C3, "--fn", fn({"a": 0, "b": 1, "c": 2}))
    assert code == 0
    assert json.loads(out)["function"]["level"] == 2


def test_validate_bad_function(capsys, fn):
    code, out, _ = run(capsys, "validate", C3, "--fn", fn({"a": "inf", "b": 1, "c": 1}))
    assert code == 1
    v = json.loads(out)["function"]["violations"]
    assert v[0]["rule"] == "B2"


def test_validate_level_exceeded(capsys, fn):
    code, out, _ = run(capsys, "validate", C3, "--fn", fn({"a": 0, "b": 1, "c": 2}), "--level", "1")
    assert code == 1
    assert json.loads(out)["function"]["level_exceeded"] == 1


def test_validate_sequence(capsys, tmp_path):
    good = write(tmp_path, "s.json", {"poset": "C3", "phi": [["a"], ["a", "b"]]})
    assert run(capsys, "validate", C3, "--seq", good)[0] == 0
    assert run(capsys, "validate", C3, "--seq", good, "--level", "1")[0] == 1
    bad = write(tmp_path, "t.json", {"poset": "C3", "phi": [["a"], ["a"]]})
    assert run(capsys, "validate", C3, "--seq", bad)[0] == 1


def test_enumerate_matches_classify(capsys):
    code, out, _ = run(capsys, "enumerate", C3, "--level", "2")
    assert code == 0
    d = json.loads(out)
    assert d["count"] == 9 == len(d["functions"])
    code, out, _ = run(capsys, "classify", C3, "--json")
    assert json.loads(out)["counts"]["2"] == d["count"]


def test_enumerate_help_mentions_chain_note(capsys):
    with pytest.raises(SystemExit):
        main(["enumerate", "--help"])
    assert "bare chain" in capsys.readouterr().out


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", C3)
    assert code == 0
    assert out.splitlines()[-1] == "ke_equals_torf: false"


def test_canonicalize(capsys, fn):
    path = fn({"a": 0, "b": 0, "c": 2})
    for mode in ("brute", "witness", "propagate"):
        code, out, _ = run(capsys, "canonicalize", C3, "--fn", path, "--mode", mode)
        assert code == 0
        assert json.loads(out)["values"] == {"a": 0, "b": 1, "c": 2}


def test_canonicalize_bad_value(capsys, fn):
    code, _, err = run(capsys, "canonicalize", C3, "--fn", fn({"a": 0, "b": 0, "c": 3}))
    assert code == 2 and "error" in err


def test_seq_and_fct(capsys, fn, tmp_path):
    code, out, _ = run(capsys, "seq", C3, "--fn", fn({"a": 0, "b": 1, "c": 2}))
    assert code == 0
    d = json.loads(out)
    assert d["phi"] == [["a"], ["a", "b"]]
    path = write(tmp_path, "seq.json", d)
    code, out, _ = run(capsys, "fct", C3, "--seq", path)
    assert json.loads(out)["values"] == {"a": 0, "b": 1, "c": 2}


def test_seq_rejects_non_bass(capsys, fn):
    assert run(capsys, "seq", C3, "--fn", fn({"a": "inf", "b": 1, "c": 1}))[0] == 1


def test_fct_rejects_bad_sequence(capsys, tmp_path):
    path = write(tmp_path, "s.json", {"phi": [["a"], ["a"]]})
    assert run(capsys, "fct", C3, "--seq", path)[0] == 1


@pytest.mark.parametrize("raw", ["p,q", '["p", "q"]'])
def test_smallest_ke(capsys, raw):
    code, out, _ = run(capsys, "smallest-ke", V, "--set", raw)
    assert code == 0
    assert json.loads(out) == {"poset": "V", "phi": ["p", "q"], "psi": ["p", "q", "r", "m"]}


def test_smallest_ke_unknown(capsys):
    assert run(capsys, "smallest-ke", V, "--set", "z")[0] == 2


def test_top_classes(capsys):
    code, out, _ = run(capsys, "top-classes", V)
    assert code == 0
    d = json.loads(out)
    assert d["classes"] == [{"assh_subset": ["p"], "values": {"p": 0, "q": "inf", "r": 1, "m": 2}}]


def test_diagram_check(capsys):
    assert run(capsys, "diagram-check", V)[0] == 0
    code, out, _ = run(capsys, "diagram-check", C3, "--generator", "s1")
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_dot(capsys, fn):
    code, out, _ = run(capsys, "dot", C3, "--fn", fn({"a": 0, "b": 1, "c": "inf"}))
    assert code == 0
    assert out.startswith('digraph "C3"') and '"c:inf"' in out


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.txt"
    assert run(capsys, "-o", str(target), "classify", C3)[1] == ""
    assert "KE-closed" in target.read_text()


def test_deterministic_output(capsys):
    outs = [run(capsys, "enumerate", V, "--level", "2")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert run(capsys, "validate", str(broken))[0] == 2
    cyclic = write(tmp_path, "cyc.json", {"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]})
    code, _, err = run(capsys, "validate", cyclic)
    assert code == 2 and "cycle" in err


def test_function_for_other_poset(capsys, fn):
    assert run(capsys, "validate", C3, "--fn", fn({"a": 0, "b": 0, "c": 0}, poset="V"))[0] == 2


def test_name_from_file_stem(capsys, tmp_path):
    path = write(tmp_path, "mychain.json", {"elements": ["a", "b"], "covers": [["a", "b"]]})
    code, out, _ = run(capsys, "classify", path, "--json")
    assert json.loads(out)["poset"] == "mychain"


def test_top_classes_non_local(capsys, tmp_path):
    path = write(tmp_path, "A2.json", {"elements": ["a", "b"], "covers": []})
    assert run(capsys, "top-classes", path)[0] == 2
