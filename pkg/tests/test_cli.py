import json

import pytest

from hsmc.cli import main, read_spec
from hsmc.kripke import parse_model, serialize_model
from hsmc.tiling import gen_kripke, make_instance, serialize_instance

from conftest import K0_TEXT


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_sat(files, capsys):
    m, f = files("k0.model", K0_TEXT), files("f", "{p . true*}\n")
    code, out, _ = run(capsys, "check", "--model", m, "--formula", f, "--witness")
    assert code == 0
    assert "RESULT: SAT" in out and "COMPLETE: yes" in out and "WITNESS:" in out


def test_check_unsat(files, capsys):
    m, f = files("k0.model", K0_TEXT), files("f", "{p . q*}")
    code, out, _ = run(capsys, "check", "--model", m, "--formula", f, "--stats")
    assert code == 1
    assert "RESULT: UNSAT" in out and "COUNTEREXAMPLE: s0 s1 s0" in out
    assert "mode_switches" in out


def test_check_json(files, capsys):
    m, f = files("k0.model", K0_TEXT), files("f", "[~B]<A>{q}")
    code, out, _ = run(capsys, "check", "--model", m, "--formula", f, "--json")
    data = json.loads(out)
    assert {"result", "complete", "witness", "stats"} <= set(data)
    assert set(data["stats"]) >= {"certificates_explored", "contractions", "mode_switches"}
    assert code == (0 if data["result"] == "SAT" else 1)
    again = run(capsys, "check", "--model", m, "--formula", f, "--json")[1]
    assert json.loads(again) == data


def test_check_capped_and_oracle(files, capsys):
    m, f = files("k0.model", K0_TEXT), files("f", "{p . q*}")
    code, out, _ = run(capsys, "check", "--model", m, "--formula", f, "--max-trace", "4")
    assert code == 1 and "COMPLETE: no" in out and "COUNTEREXAMPLE: s0 s1 s0" in out
    code, out, _ = run(capsys, "check", "--model", m, "--formula", f, "--mode", "oracle", "--max-trace", "4")
    assert code == 1 and "COUNTEREXAMPLE: s0 s1 s0" in out
    code, _, err = run(capsys, "check", "--model", m, "--formula", f, "--mode", "oracle")
    assert code == 2 and "max-trace" in err


def test_check_errors(files, capsys):
    m = files("k0.model", K0_TEXT)
    with pytest.raises(SystemExit) as e:
        main(["check", "--model", m])
    assert e.value.code == 2
    assert run(capsys, "check", "--model", m, "--formula", files("f", "<B>{p} & <E>{q}"))[0] == 2
    assert run(capsys, "check", "--model", m, "--formula", files("g", "{p . }"))[0] == 2
    assert run(capsys, "check", "--model", m + ".missing", "--formula", files("h", "{p}"))[0] == 2


def test_contract(files, capsys):
    m, s = files("k0.model", K0_TEXT), files("spec", "# one per line\np\n")
    code, out, _ = run(capsys, "contract", "--model", m, "--spec", s, "--trace", " ".join(["s1"] * 10), "--h", "0")
    assert code == 0
    lines = dict(line.split(": ", 1) for line in out.splitlines())
    before, after = map(int, lines["LENGTH"].split(" -> "))
    assert before == 10 and after < 10
    assert lines["SAMPLING-WORD-EQUAL"] == "yes"
    s2 = files("spec2", "p . q . q . p\n")
    out = run(capsys, "contract", "--model", m, "--spec", s2, "--trace", "s0 s1", "--h", "0")[1]
    assert "TRACE: s0 s1" in out and "LENGTH: 2 -> 2" in out
    assert run(capsys, "contract", "--model", m, "--spec", s, "--trace", "s0 s0", "--h", "0")[0] == 2


def test_read_spec():
    assert len(read_spec("p\n# skip\n\nq . p*\n")) == 2


def test_gen_tiling(files, capsys, tmp_path):
    inst = make_instance(2, ["a", "b"], initial=["a"], accepting=["b"])
    src = files("inst", serialize_instance(inst))
    out = str(tmp_path / "k.model")
    assert run(capsys, "gen-tiling", "--instance", src, "--out", out)[0] == 0
    k = parse_model(open(out, encoding="utf-8").read())
    assert len(k.states) == 8
    assert serialize_model(k) == serialize_model(gen_kripke(inst))
    code, text, _ = run(capsys, "gen-tiling", "--instance", src, "--out", "-")
    assert code == 0 and parse_model(text).states == k.states
    odd = files("odd", "n: 3\ndominoes: a\n")
    assert run(capsys, "gen-tiling", "--instance", odd, "--out", out)[0] == 2
