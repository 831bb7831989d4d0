import json
import subprocess
import sys

import pytest

from groupoidcard import jsonio
from groupoidcard.cli import COMMANDS, run
from groupoidcard.groupoids import connected_groupoid, groupoid_cardinality
from groupoidcard.groups import cyclic


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        p = tmp_path / name
        p.write_text(json.dumps(data))
        return str(p)

    return write


C2 = {"order": 2, "table": [[0, 1], [1, 0]]}
C3 = {"order": 3, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}
CYCLE3 = {"signature": [2], "n": 3, "relations": [[[0, 1], [1, 2], [2, 0]]]}
PATH3 = {"signature": [2], "n": 3, "relations": [[[0, 1], [1, 2]]]}
EDGE = {"signature": [2], "n": 2, "relations": [[[0, 1]]]}


def cli(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_card(files, capsys):
    assert cli(capsys, "card", files("bc3.json", C3)) == (0, "1/3", "")
    code, out, _ = cli(capsys, "card", files("bc3.json", C3), "--float")
    assert out == "0.333333333333333"
    code, out, _ = cli(capsys, "card", files("bc3.json", C3), "--json")
    assert json.loads(out) == {"cardinality": "1/3"}


def test_card_of_explicit_groupoid(files, capsys):
    g = connected_groupoid(cyclic(2), 3)
    path = files("g.json", jsonio.groupoid_to_json(g))
    assert cli(capsys, "card", path)[1] == str(groupoid_cardinality(g))


def test_gset_egf(files, capsys):
    code, out, _ = cli(capsys, "gset-egf", files("c2.json", C2), "--N", 4)
    assert (code, out) == (0, "1 + x + x^2 + 2/3 x^3 + 5/12 x^4")
    code, out, _ = cli(capsys, "gset-egf", files("c2.json", C2), "--N", 4, "--json")
    assert json.loads(out)["coeffs"] == ["1", "1", "1", "2/3", "5/12"]


def test_functor_card(files, capsys):
    disc2 = {"components": [{"aut_order_table": [[0]]}, {"aut_order_table": [[0]]}]}
    code, out, _ = cli(capsys, "functor-card", files("h.json", C2), files("g.json", disc2), "--brute")
    assert (code, out) == (0, "2 (brute force: 2)")


def test_factorize(files, capsys):
    c4 = {"name": "C4"}
    src = jsonio.groupoid_from_json(c4)
    tgt = jsonio.groupoid_from_json(C2)
    f = {
        "object_map": [[jsonio.thaw(x), jsonio.thaw(tgt.objects[0])] for x in src.objects],
        "morphism_map": [[jsonio.thaw(m.id), jsonio.thaw(tgt.identity(tgt.objects[0]))] for m in src.morphisms],
    }
    code, out, _ = cli(capsys, "factorize", files("s.json", c4), files("t.json", C2), files("f.json", f), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["im2_card"] == "1" and data["im1_card"] == "1/2"
    assert not data["classification"]["faithful"]


def test_gset_card_and_gl_and_rep(files, capsys):
    code, out, _ = cli(capsys, "gset-card", files("c2.json", C2))
    assert code == 0 and out.startswith("exp(3/2) = 4.48168907033")
    assert cli(capsys, "gl-order", 3, 2)[1] == "168"
    assert cli(capsys, "gl-order", 2, 6)[0] == 2
    code, out, _ = cli(capsys, "rep-series", "--dim", 1, "--q", 2, "--N", 3)
    assert code == 0 and out.splitlines()[0] == "1 + x + 1/6 x^2 + 1/168 x^3"
    assert "bound holds: true" in out


def test_relfin_commands(files, capsys):
    ident = {"base": C2, "components": [{"group": C2, "map": [0, 1]}]}
    triv = {"base": C2, "components": [{"group": C2, "map": [0, 0]}]}
    a, b = files("a.json", ident), files("b.json", triv)
    assert cli(capsys, "relfin-hom", a, a)[1] == "1"
    assert cli(capsys, "relfin-hom", a, b, "--faithful")[1] == "0"
    assert cli(capsys, "relfin-equiv", a, a)[1] == "equivalent: true; matching: [0]"
    assert cli(capsys, "relfin-equiv", a, b)[1] == "equivalent: false"
    code, out, _ = cli(capsys, "relfin-distinguish", a, b)
    assert code == 0 and out.endswith("cardinalities: 1 vs 0")
    assert cli(capsys, "relfin-distinguish", a, a, "--exhaustive")[1] == "NoneFound"
    c3 = {"base": C3, "components": [{"group": C3, "map": [0, 1, 2]}]}
    code, _, err = cli(capsys, "relfin-hom", a, files("c.json", c3))
    assert code == 2 and "BaseMismatch" in err


def test_structure_commands(files, capsys):
    e, c, p = files("e.json", EDGE), files("c.json", CYCLE3), files("p.json", PATH3)
    assert cli(capsys, "homcount", e, c)[1] == "3"
    assert cli(capsys, "homcount", e, p, "--injective")[1] == "2"
    assert cli(capsys, "lovasz-test", c, c, "--bound", 4)[1] == "indistinguishable; isomorphic: true"
    code, out, _ = cli(capsys, "lovasz-test", c, p, "--bound", 4)
    assert code == 0
    assert out.splitlines() == [
        'distinguished by: {"n": 2, "relations": [[[0, 1]]], "signature": [2]}',
        "hom counts: 3 vs 2; isomorphic: false",
    ]
    code, out, _ = cli(capsys, "lovasz-test", c, p, "--json")
    assert json.loads(out)["hom_counts"] == [3, 2]


def test_homotopy(files, capsys):
    assert cli(capsys, "homotopy-card", files("x.json", {"components": [[3], [1, 2]]}))[1] == "7/3"
    code, _, err = cli(capsys, "homotopy-card", files("y.json", {"components": [[0]]}))
    assert code == 2 and "positive" in err


def test_exit_codes(files, tmp_path, capsys):
    assert cli(capsys, "frobnicate", "x")[0] == 64
    assert cli(capsys, "card", tmp_path / "missing.json")[0] == 66
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = cli(capsys, "card", bad)
    assert code == 2 and "invalid JSON" in err
    code, _, err = cli(capsys, "card", files("na.json", {"table": [[0, 1, 2], [1, 2, 0], [2, 1, 0]]}))
    assert code == 2 and "NotAssociative" in err
    assert cli(capsys, "card")[0] == 2


def test_help_documents_schemas(capsys):
    assert run(["--help"]) == 0
    out = capsys.readouterr().out
    for cmd in COMMANDS:
        assert cmd in out
    for word in ("group", "groupoid", "functor", "relfin", "structure", "space"):
        assert f"\n  {word} " in out


def test_output_is_deterministic(files, capsys):
    a = files("a.json", CYCLE3)
    b = files("b.json", PATH3)
    first = cli(capsys, "lovasz-test", a, b, "--json")
    assert all(cli(capsys, "lovasz-test", a, b, "--json") == first for _ in range(3))


def test_emitted_json_reparses(files, capsys):
    _, out, _ = cli(capsys, "gset-egf", files("c3.json", C3), "--N", 6, "--json")
    s = jsonio.series_from_json(json.loads(out))
    assert jsonio.series_to_json(s) == json.loads(out)
    _, out, _ = cli(capsys, "lovasz-test", files("c.json", CYCLE3), files("p.json", PATH3), "--json")
    w = jsonio.structure_from_json(json.loads(out)["distinguished_by"])
    assert w.n == 2


def test_module_entry_point(files):
    r = subprocess.run(
        [sys.executable, "-m", "groupoidcard", "card", files("bc2.json", C2)], capture_output=True, text=True
    )
    assert r.returncode == 0 and r.stdout.strip() == "1/2"
