import json

import pytest

from defreq.cli import main
from defreq.data import path as data_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check_and_extensions(capsys):
    code, out, _ = run(capsys, "check", data_path("logistic.dr"))
    assert code == 0 and out.startswith("ok:")
    code, out, _ = run(capsys, "extensions", data_path("nixon.dr"), "--method", "iterative")
    assert code == 0 and "2 extension(s)" in out


def test_ask(capsys):
    code, out, _ = run(capsys, "ask", data_path("nixon.dr"), "--goal", "p")
    assert code == 0 and out.splitlines() == ["EntailedInSome", "skeptical: no"]
    _, out, _ = run(capsys, "ask", data_path("nixon.dr"), "--goal", "p", "--mode", "credulous")
    assert out.splitlines()[1] == "credulous: yes"
    _, out, _ = run(capsys, "ask", data_path("cascade.dr"), "--goal", 'isOnTime("Planes&Co")', "--flatten")
    assert out.splitlines()[0] == "EntailedInAll"


def test_restrict_reports_dropped_instances(capsys):
    code, out, _ = run(capsys, "extensions", data_path("logistic.dr"), "--restrict")
    assert code == 0 and "# dropped D[Trains&Co]" in out


def test_lint_exit_codes(capsys):
    assert run(capsys, "lint", data_path("logistic.dr"))[0] == 0
    code, out, _ = run(capsys, "lint", data_path("table1.dr"))
    assert code == 3 and "items, rules" in out


def test_cascade(capsys):
    code, out, _ = run(capsys, "cascade", data_path("cascade.dr"))
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "cascade", data_path("cascade.dr"), "--gaps")
    assert out.strip() == "no elicitation gaps"


def test_doc_formats(capsys):
    _, out, _ = run(capsys, "doc", data_path("table1.dr"))
    assert "| Proposition" in out
    _, out, _ = run(capsys, "doc", data_path("table1.dr"), "--format", "structured")
    assert json.loads(out)["version"] == 1


def test_benchmark_commands(capsys):
    code, out, _ = run(capsys, "classify", data_path("boats_trains.yaml"))
    assert code == 0 and out.splitlines()[0] == "Benchmark"
    code, out, _ = run(capsys, "suite", data_path("boats_trains.yaml"))
    assert code == 0 and out.count("answer changes") == 6


def test_proportions(capsys):
    code, out, _ = run(capsys, "proportions", data_path("table6.csv"))
    assert code == 0 and len(out.splitlines()) == 25
    code, _, err = run(capsys, "proportions", data_path("table6.csv"), "--strict")
    assert code == 2 and "1.031" in err


def test_error_exit_codes(capsys, tmp_path):
    code, _, err = run(capsys, "check", data_path("malformed/missing_m.dr"))
    assert code == 2 and ":6:7: ParseError" in err
    big = tmp_path / "big.dr"
    big.write_text("".join(f"default d{i} {{ : M a{i} / a{i} }}\n" for i in range(16)))
    assert run(capsys, "extensions", big)[0] == 4
    assert run(capsys, "extensions", big, "--max-defaults", "16")[0] == 0
    assert run(capsys, "check", tmp_path / "missing.dr")[0] == 1
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["ask", str(data_path("nixon.dr"))])
    assert info.value.code == 1
