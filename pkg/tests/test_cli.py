"""
Test the ordlab command line: rendered output and exit codes.

Commands are driven through run(), which returns (output, exit code) without
touching stdout.
"""

import json

import ordlab.__main__ as cli
from ordlab.__main__ import build_parser, main, run


def _json(argv):
    output, code = run(argv)
    return json.loads(output), code


def test_parse_word_output():
    output, code = run(["--n", "2", "parse", "b^-1 a b"])
    assert output == '{"r":"2/2^0","s":0}'
    assert code == 0
    print("[OK] parse")


def test_member_output():
    output, code = run(["--n", "2", "member", "--cone", "P+", "--base", "quad:0,1,2", "--elem", "b"])
    assert output == '{"member":false}'
    assert code == 0


def test_group_commands():
    assert _json(["--n", "2", "mul", "a b", "a"]) == ({"r": "3/2^1", "s": 1}, 0)
    assert _json(["--n", "2", "inv", "a b"]) == ({"r": "-2/2^0", "s": -1}, 0)
    assert _json(["--n", "2", "normalize", "6", "1"]) == ({"m": "3", "k": 0}, 0)
    assert _json(["--n", "2", "enumerate", "3"]) == ({"index": 3, "r": "0/2^0", "s": 1}, 0)
    assert _json(["--n", "2", "enumerate", "--index-of", "b"]) == ({"index": 3}, 0)
    data, code = _json(["--n", "2", "ball", "--radius", "2"])
    assert data["size"] == 17 and code == 0


def test_action_commands():
    assert _json(["--n", "2", "act", "--elem", "a b", "--point", "rat:0"]) == (
        {"image": {"kind": "rat", "p": "1", "q": "1"}}, 0
    )
    assert _json(["--n", "2", "fix", "--elem", "a b"]) == ({"fixed_point": "2"}, 0)
    data, code = _json(["--n", "2", "stab", "--point", "1/3"])
    assert data == {"generator": {"r": "-1/2^0", "s": -2}, "s": 2}
    data, _ = _json(["--n", "2", "orbit-eq", "--x", "1/3", "--y", "2/3"])
    assert data == {"equivalent": True, "witness": {"r": "0/2^0", "s": -1}}
    data, _ = _json(["--n", "2", "orbit-eq", "--x", "quad:0,1,2", "--y", "quad:0,1,3"])
    assert data == {"equivalent": "not_equivalent"}


def test_real_commands():
    assert _json(["--n", "2", "sign", "--point", "quad:0,1,2", "--elem", "b"]) == ({"sign": "negative"}, 0)
    assert _json(["--n", "2", "digits", "--point", "1/3", "--count", "6"]) == ({"digits": "010101"}, 0)
    assert _json(["--n", "2", "compare", "--point", "quad:0,1,2", "--q", "3/2"]) == ({"sign": "negative"}, 0)


def test_cone_commands():
    assert _json(["--n", "2", "reverse", "--cone", "Pinf++"]) == ({"tag": "Pinf--"}, 0)
    data, _ = _json(["--n", "2", "conjugate", "--cone", "Q++", "--base", "rat:1/3", "--elem", "a"])
    assert data == {"tag": "Q++", "base": {"kind": "rat", "p": "4", "q": "3"}}
    assert _json(["--n", "2", "order", "--cone", "Pinf++", "--g", "a", "--h", "b"]) == ({"order": "<"}, 0)
    assert _json(["--n", "2", "from-action", "--points", "0", "1", "--elem", "b"]) == ({"member": False}, 0)
    assert _json(["--n", "2", "cut-member", "--cone", "P+", "--left", "7/5", "--right", "17/12", "--elem", "b"]) == (
        {"member": False}, 0
    )
    data, _ = _json(["--n", "2", "cone-conj", "--cone", "Pinf+-", "--to-cone", "Pinf+-"])
    assert data == {"equivalent": True, "witness": {"r": "0/2^0", "s": 0}}


def test_identify_command():
    data, code = _json(["--n", "2", "identify", "--cone", "Q++", "--base", "rat:1/3", "--radius", "8"])
    assert code == 0
    assert data["tags"] == ["Q++", "P+"]
    assert data["resolved"] is False
    assert data["exact_base"] == "1/3"


def test_check_cone_command():
    data, code = _json(["--n", "2", "check-cone", "--cone", "P-", "--base", "quad:0,1,3", "--radius", "3"])
    assert code == 0
    assert data["passed"] is True


def test_realize_command(tmp_path):
    target = tmp_path / "stage.csv"
    data, code = _json(["--n", "2", "realize", "--cone", "Pinf++", "--stage", "3", "--csv", str(target)])
    assert code == 0
    assert [row["tag"] for row in data] == ["0", "1", "-1"]
    lines = target.read_text().splitlines()
    assert lines[0] == "index,element,tag"
    assert len(lines) == 4


def test_reduction_commands():
    data, code = _json(["--n", "2", "tail-eq", "--x", "1/3", "--y", "2/3"])
    assert code == 0
    assert (data["p"], data["q"]) == (0, 1)
    assert data["element"] == {"r": "1/2^1", "s": 1}
    assert _json(["--n", "2", "reduce", "--point", "5/4"]) == ({"pre": "01", "period": "0"}, 0)
    data, code = _json(["--n", "2", "roundtrip", "--x", "1/3", "--elem", "b^2"])
    assert code == 0
    assert data["witness"] == [0, 2]


def test_exit_codes():
    """0 success, 2 usage errors, 3 exhausted budgets."""
    assert run(["--n", "1", "parse", "a"])[1] == 2
    assert run(["--n", "2", "parse", "a^"])[1] == 2
    assert run(["--n", "2", "parse", "b^{1/2}"])[1] == 2
    assert run(["--n", "2", "fix", "--elem", "a"])[1] == 2
    assert run(["--n", "2", "member", "--cone", "P+", "--base", "rat:1", "--elem", "a"])[1] == 2
    assert run(["--n", "2", "--budget", "16", "digits", "--point", "stream:sqrt2", "--count", "40"])[1] == 3
    assert run([])[1] == 2
    print("[OK] Exit codes")


def test_output_formats():
    output, code = run(["--n", "2", "--format", "text", "parse", "a b"])
    assert code == 0
    assert output.splitlines() == ["r: 1/2^0", "s: 1"]
    output, _ = run(["--n", "2", "--format", "csv", "enumerate", "--count", "2"])
    assert output.splitlines() == ["index,r,s", "0,0/2^0,0", "1,1/2^0,0"]


def test_check_all_is_deterministic():
    argv = ["--n", "2", "--seed", "7", "check-all", "--radius", "2", "--stage", "numeric", "--stage", "reduction"]
    first, code = run(argv)
    second, _ = run(argv)
    assert code == 0
    assert first == second
    assert json.loads(first)["status"] == "complete"


def test_main_prints(capsys):
    assert main(["--n", "3", "parse", "b^-1 a b"]) == 0
    assert capsys.readouterr().out.strip() == '{"r":"3/3^0","s":0}'


def test_every_operation_has_a_verb():
    subparsers = next(action for action in build_parser()._actions if action.dest == "command")
    verbs = set(subparsers.choices)
    expected = {
        "normalize", "add", "sub", "product", "neg", "cmp", "scale", "to-rat",
        "parse", "mul", "inv", "enumerate", "ball",
        "act", "fix", "stab", "orbit-eq", "sign", "digits", "compare",
        "member", "cut-member", "reverse", "conjugate", "cone-conj", "order", "from-action",
        "identify", "check-cone",
        "realize", "partial-act", "recover", "free-orbit", "embedding",
        "reduce", "tail-eq", "roundtrip", "check-all",
    }
    assert expected <= verbs


def test_nadic_commands():
    assert _json(["--n", "2", "add", "1/2^1", "3"]) == ({"m": "7", "k": 1}, 0)
    assert _json(["--n", "2", "sub", "1/2^1", "1/4"]) == ({"m": "1", "k": 2}, 0)
    assert _json(["--n", "2", "product", "3/2^1", "2"]) == ({"m": "3", "k": 0}, 0)
    assert _json(["--n", "2", "neg", "5/2^3"]) == ({"m": "-5", "k": 3}, 0)
    assert _json(["--n", "2", "neg", "-3"]) == ({"m": "3", "k": 0}, 0)
    assert _json(["--n", "2", "cmp", "1/2^1", "3/8"]) == ({"sign": "positive"}, 0)
    assert _json(["--n", "2", "cmp", "2/2^2", "1/2"]) == ({"sign": "zero"}, 0)
    assert _json(["--n", "2", "scale", "3", "-2"]) == ({"m": "3", "k": 2}, 0)
    assert _json(["--n", "2", "to-rat", "6/2^2"]) == ({"value": "3/2"}, 0)
    assert _json(["--n", "10", "add", "5/10^1", "1/2"]) == ({"m": "1", "k": 0}, 0)
    assert run(["--n", "2", "add", "1/3", "1"])[1] == 2
    print("[OK] Z[1/n] commands")


def test_realization_commands():
    stage = ["--cone", "Pinf++", "--stage", "3"]
    assert _json(["--n", "2", "partial-act", *stage, "--elem", "a", "--index", "0"]) == (
        {"index": 0, "image": "1"}, 0
    )
    assert _json(["--n", "2", "partial-act", *stage, "--elem", "a", "--index", "1"]) == (
        {"index": 1, "image": None}, 0
    )
    assert _json(["--n", "2", "recover", *stage, "--elem", "a"]) == ({"member": True}, 0)
    assert _json(["--n", "2", "recover", *stage, "--elem", "A"]) == ({"member": False}, 0)
    assert _json(["--n", "2", "recover", *stage, "--elem", "a^2"]) == ({"member": "untagged"}, 3)
    assert _json(["--n", "2", "recover", *stage, "--elem", "a", "--conj", "a"]) == ({"member": True}, 0)


def test_stage_checks():
    assert _json(["--n", "2", "free-orbit", "--cone", "Pinf++", "--stage", "16"]) == (
        {"stage": 16, "passed": True}, 0
    )
    data, code = _json(["--n", "2", "embedding", "--cone", "P+", "--base", "quad:0,1,2", "--stage", "16"])
    assert code == 0
    assert data == {"stage": 16, "passed": True, "violations": []}


def test_budget_reaches_digit_words(monkeypatch):
    data, code = _json(["--n", "2", "--budget", "16", "reduce", "--point", "quad:0,1,2"])
    assert code == 0
    assert len(data["pre"]) == 16
    data, _ = _json(["--n", "2", "--budget", "16", "reduce", "--point", "quad:0,1,2", "--count", "20"])
    assert len(data["pre"]) == 20

    budgets = []
    original = cli.reduce

    def recording(x, n, budget=None):
        budgets.append(budget)
        return original(x, n, budget)

    monkeypatch.setattr(cli, "reduce", recording)
    run(["--n", "2", "--budget", "32", "tail-eq", "--x", "quad:0,1,2", "--y", "quad:0,1,3"])
    assert budgets == [32, 32]


def test_check_all_with_custom_bases():
    base = ["--n", "2", "check-all", "--radius", "2", "--stage", "cone_axioms"]
    default, code = _json(base)
    assert code == 0
    custom, code = _json(base + ["--irrational", "quad:1/2,1,5", "--rational", "1/7"])
    assert code == 0
    assert custom["status"] == "complete"
    # two checks per cone: ten cones instead of twenty
    assert custom["stages"][0]["checked"] == default["stages"][0]["checked"] - 20
    assert run(base + ["--irrational", "rat:1/2"])[1] == 2
