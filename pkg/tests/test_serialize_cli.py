import io
import json
import random

import pytest

from orbit_tiebreak.cli import EXIT_CAP, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_OK, EXIT_USAGE, main, run
from orbit_tiebreak.corpus import NAMES, builtin_example
from orbit_tiebreak.infospaces import KINDS
from orbit_tiebreak.perm import Permutation
from orbit_tiebreak.randomgen import random_input
from orbit_tiebreak.serialize import (
    SCHEMA,
    completion_to_doc,
    dump_input,
    parse_completion,
    parse_input,
    parse_rational,
    permutation_from_doc,
    permutation_to_doc,
)
from orbit_tiebreak.stabilizer import ValidationError
from orbit_tiebreak.tiebreak import default_completion

TWO_PAIRS_DOC = {
    "players": ["a", "b", "c", "d"],
    "standings": [["a", "b", "c", "d"]],
    "info": {
        "kind": "voting",
        "ballots": [
            {"order": [["a"], ["b"], ["c"], ["d"]], "count": 2},
            {"order": [["b"], ["a"], ["c"], ["d"]], "count": 2},
            {"order": [["a"], ["b"], ["d"], ["c"]], "count": 2},
            {"order": [["b"], ["a"], ["d"], ["c"]], "count": 2},
        ],
    },
}


def _errors(doc):
    with pytest.raises(ValidationError) as err:
        parse_input(json.dumps(doc))
    return err.value.violations


def test_parse_two_pairs():
    inp = parse_input(json.dumps(TWO_PAIRS_DOC).encode())
    assert inp.n == 4 and inp.item.kind == "voting" and inp.item.total() == 8
    assert inp == builtin_example("two-pairs")


def test_standings_must_cover_players():
    doc = dict(TWO_PAIRS_DOC, standings=[["a", "b", "c"]])
    assert _errors(doc) == ["standings: standings must cover all players"]


def test_roundrobin_missing_pair():
    doc = {
        "players": ["a", "b", "c"],
        "standings": [["a", "b", "c"]],
        "info": {"kind": "roundrobin", "matches": [{"x": "a", "y": "b", "diff": 0}, {"x": "b", "y": "c", "diff": 0}]},
    }
    assert "missing match (a,c)" in _errors(doc)


@pytest.mark.parametrize("doc, needle", [
    ({"players": ["a", "a"], "standings": [["a"]], "info": {"kind": "graph"}}, "duplicate"),
    ({"players": ["a"], "standings": [["a"]], "info": {"kind": "chess"}}, "unknown kind"),
    ({"players": ["a"], "standings": [["a"]], "info": {"kind": "graph", "edges": [["a", "z"]]}}, "info.edges[0][1]"),
    ({"players": ["a", "b"], "standings": [["a", "b"]], "info": {"kind": "coalition", "values": {"": "0.5"}}}, "p/q"),
])
def test_malformed_documents(doc, needle):
    assert any(needle in e for e in _errors(doc))


def test_malformed_json():
    with pytest.raises(ValidationError):
        parse_input(b"{not json")


def test_parse_rational():
    assert parse_rational("-3/4") * 4 == -3
    assert parse_rational(5) == 5
    for bad in ("1.5", True, "x", 0.5):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_multichar_coalition_keys():
    doc = {
        "players": ["p1", "p2"],
        "standings": [["p1", "p2"]],
        "info": {"kind": "coalition", "values": {"": "0", "p1": "1", "p2": "1", "p1|p2": "3"}},
    }
    inp = parse_input(json.dumps(doc))
    assert json.loads(dump_input(inp))["info"]["values"]["p1|p2"] == "3"


@pytest.mark.parametrize("name", NAMES + tuple(f"empty:{k}:3" for k in KINDS))
def test_corpus_round_trip_is_canonical(name):
    inp = builtin_example(name)
    text = dump_input(inp)
    again = parse_input(text)
    assert again == inp
    assert dump_input(again) == text


def test_random_round_trips(seed):
    rng = random.Random(seed)
    for _ in range(100):
        inp = random_input(rng)
        text = dump_input(inp)
        assert parse_input(text) == inp and dump_input(parse_input(text)) == text


def test_permutation_and_completion_docs():
    labels = ["a", "b", "c"]
    sigma = Permutation.from_cycles(3, (0, 1, 2))
    assert permutation_to_doc(sigma, labels) == {"a": "b", "b": "c", "c": "a"}
    assert permutation_from_doc(permutation_to_doc(sigma, labels), labels) == sigma
    inp = builtin_example("two-pairs")
    comp = default_completion(inp)
    doc = completion_to_doc(comp, inp.labels)
    assert doc == {"beta": {"a|b": ["a", "b"], "c|d": ["c", "d"]}, "gamma": {"class0": [["a", "b"], ["c", "d"]]}}
    assert parse_completion(json.dumps(doc), inp.labels) == comp


# CLI


def _json(capsys, argv):
    code, _ = run(argv + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_orbits_condorcet(capsys):
    code, doc = _json(capsys, ["orbits", "example:condorcet"])
    assert code == EXIT_OK and doc["schema"] == SCHEMA and doc["command"] == "orbits"
    assert doc["orbit_partition"] == [["a", "b", "c"]]
    assert doc["symmetric_witness"]["sigma"] == {"a": "b", "b": "c", "c": "a"}


def test_count_three_way(capsys):
    code, _ = run(["count", "example:three-way", "--oracle"])
    assert code == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "6"


def test_tiebreak_three_way(capsys):
    code, doc = _json(capsys, ["tiebreak", "example:three-way", "--default-completion"])
    assert code == EXIT_OK
    assert doc["ranking"] == ["a", "b", "c", "d"]
    tags = {(p["upper"], p["lower"]): p["tag"] for p in doc["provenance"]}
    assert {k for k, t in tags.items() if t == "beta"} == {("a", "b"), ("a", "c"), ("b", "c")}
    assert {k for k, t in tags.items() if t == "standings"} == {("a", "d"), ("b", "d"), ("c", "d")}
    run(["tiebreak", "example:three-way", "--default-completion"])
    assert "notice: 3 comparisons decided by the alphabetical default" in capsys.readouterr().out


def test_provenance_accounting_random(tmp_path, capsys, seed):
    rng = random.Random(seed)
    for i in range(20):
        inp = random_input(rng, max_n=6)
        path = tmp_path / f"in{i}.json"
        path.write_text(dump_input(inp))
        code, doc = _json(capsys, ["tiebreak", str(path), "--default-completion"])
        assert code == EXIT_OK
        ci = {lab: k for k, cls in enumerate(doc["input"]["standings"] ) for lab in cls}
        for p in doc["provenance"]:
            assert (p["tag"] == "standings") == (ci[p["upper"]] != ci[p["lower"]])
        assert len(doc["provenance"]) == inp.n * (inp.n - 1) // 2


def test_tiebreak_and_extract_files(tmp_path, capsys):
    comp = tmp_path / "c.json"
    comp.write_text(json.dumps({"beta": {"a|b": ["b", "a"], "c|d": ["d", "c"]}, "gamma": {"class0": [["c", "d"], ["a", "b"]]}}))
    code, doc = _json(capsys, ["tiebreak", "example:two-pairs", "--completion", str(comp)])
    assert code == EXIT_OK and doc["ranking"] == ["d", "c", "b", "a"]
    ranking = tmp_path / "r.json"
    ranking.write_text(json.dumps(["d", "c", "b", "a"]))
    code, doc = _json(capsys, ["extract", "example:two-pairs", "--ranking", str(ranking)])
    assert code == EXIT_OK and doc["completion"] == json.loads(comp.read_text())
    ranking.write_text(json.dumps(["a", "c", "b", "d"]))
    code, _ = run(["extract", "example:two-pairs", "--ranking", str(ranking)])
    assert code == EXIT_INVALID
    assert "block {a,b} split by c" in capsys.readouterr().err


def test_stdin_input(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.TextIOWrapper(io.BytesIO(json.dumps(TWO_PAIRS_DOC).encode())))
    code, doc = _json(capsys, ["stabilizer", "-"])
    assert code == EXIT_OK and doc["stabilizer"]["order"] == 4


def test_example_command(capsys):
    assert main(["example", "path4", "--format", "json"]) == EXIT_OK
    assert parse_input(capsys.readouterr().out) == builtin_example("path4")


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(dict(TWO_PAIRS_DOC, standings=[["a"]])))
    assert main(["orbits", str(bad)]) == EXIT_INVALID
    assert main(["orbits", str(tmp_path / "missing.json")]) == EXIT_INVALID
    assert main(["orbits", "example:empty:graph:8", "--node-cap", "100"]) == EXIT_CAP
    assert main(["count", "example:petersen", "--oracle", "--oracle-cap", "8"]) == EXIT_CAP
    assert main(["orbits", "example:nope"]) == EXIT_USAGE
    assert main(["tiebreak", "example:condorcet"]) == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["orbits", "example:condorcet", "--bogus"])
    assert exc.value.code == EXIT_USAGE
    assert EXIT_CHECK_FAILED == 1


def test_cap_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("ORBIT_TIEBREAK_NODE_CAP", "50")
    assert main(["orbits", "example:empty:graph:8"]) == EXIT_CAP


@pytest.mark.parametrize("name", NAMES)
def test_verify_corpus(name, capsys):
    argv = ["verify", f"example:{name}", "--format", "json"]
    if name != "petersen":
        argv.append("--oracle")
    code, _ = run(argv)
    doc = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK, [c for c in doc["checks"] if not c["passed"]]
    assert all(c["passed"] for c in doc["checks"])
