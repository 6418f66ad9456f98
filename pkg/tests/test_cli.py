"""Command-line interface: flags, outputs, exit codes."""

import json

import pytest

from portwalk.cli import main, parse_stop, resolve_agent, UsageError
from portwalk.graphs import PathLabeling, build_path, serialize


@pytest.fixture
def path_graph_file(tmp_path):
    g = build_path(PathLabeling(4, (1, 1)))
    f = tmp_path / "g.json"
    f.write_text(serialize(g))
    return str(f)


class TestHelpers:
    def test_resolve_builtin(self):
        assert resolve_agent("rotor-router").name == "rotor-router"

    def test_resolve_unknown(self):
        with pytest.raises(UsageError):
            resolve_agent("no-such-agent")

    def test_resolve_script_file(self, tmp_path):
        f = tmp_path / "a.json"
        f.write_text('{"tables": {"2": [1, 2]}, "extension": "cycle"}')
        agent = resolve_agent(str(f))
        assert agent.outport(2, 2) == 2

    def test_parse_stop(self):
        assert parse_stop("covered") == "covered"
        assert parse_stop("target:3") == ("target", 3)
        assert parse_stop("steps:100") == ("steps", 100)
        with pytest.raises(UsageError):
            parse_stop("sideways")


class TestSimulateCommand:
    def test_trace_to_stdout(self, path_graph_file, capsys):
        code = main(["simulate", "--graph", path_graph_file,
                     "--agent", "rotor-router", "--start", "3",
                     "--stop", "target:0"])
        assert code == 0
        out = capsys.readouterr().out
        assert out.startswith("step,node,outport,next_node\n")
        assert "covered_at,9" in out

    def test_trace_to_file(self, path_graph_file, tmp_path):
        out = tmp_path / "trace.csv"
        code = main(["simulate", "--graph", path_graph_file,
                     "--agent", "rotor-router", "--stop", "covered",
                     "--out", str(out)])
        assert code == 0
        assert out.read_text().startswith("step,node,outport,next_node")

    def test_missing_graph_file(self, tmp_path):
        code = main(["simulate", "--graph", str(tmp_path / "nope.json"),
                     "--agent", "rotor-router"])
        assert code == 2

    def test_malformed_graph(self, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text('{"n": 2}')
        code = main(["simulate", "--graph", str(f), "--agent", "rotor-router"])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_bad_stop_flag(self, path_graph_file):
        code = main(["simulate", "--graph", path_graph_file,
                     "--agent", "rotor-router", "--stop", "whenever"])
        assert code == 2


class TestAdversaryPathCommand:
    def test_pass_exit_zero(self, capsys):
        code = main(["adversary-path", "--agent", "rotor-router", "--n", "10"])
        assert code == 0
        out = capsys.readouterr().out
        assert "experiment,agent,n,param,bound,measured,verdict" in out
        assert "adversary-path,rotor-router,10,steps-to-target,81,81,pass" in out

    def test_json_format(self, capsys):
        code = main(["adversary-path", "--agent", "rotor-router", "--n", "5",
                     "--format", "json"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["aggregate"] == "pass"

    def test_unknown_agent(self):
        assert main(["adversary-path", "--agent", "bogus", "--n", "5"]) == 2


class TestAdversaryCubicCommand:
    def test_pass_with_saved_instance(self, tmp_path, capsys):
        prefix = str(tmp_path / "inst")
        code = main(["adversary-cubic", "--agent", "rotor-router", "--n", "18",
                     "--save-instance", prefix])
        assert code == 0
        out = capsys.readouterr().out
        assert ",cover-time,180," in out
        graph_doc = json.loads((tmp_path / "inst.graph.json").read_text())
        assert graph_doc["n"] == 18
        sidecar = json.loads((tmp_path / "inst.instance.json").read_text())
        assert sidecar["bound"] == 180
        assert set(sidecar["log"]) == {"p", "v_star", "alpha"}

    def test_start_override(self, capsys):
        code = main(["adversary-cubic", "--agent", "rotor-router", "--n", "18",
                     "--start", "3"])
        assert code == 0

    def test_bad_start(self):
        code = main(["adversary-cubic", "--agent", "rotor-router", "--n", "18",
                     "--start", "99"])
        assert code == 2


class TestBruteforceCommand:
    def test_rotor(self, capsys):
        code = main(["bruteforce-path", "--agent", "rotor-router", "--n", "6"])
        assert code == 0
        assert ",25,25,pass" in capsys.readouterr().out

    def test_refuses_large_n(self):
        assert main(["bruteforce-path", "--agent", "rotor-router",
                     "--n", "20"]) == 2


class TestRotorUpperCommand:
    def test_cases_pass(self, capsys):
        code = main(["rotor-upper", "--case", "2,1,0", "--case", "20,30,7"])
        assert code == 0
        out = capsys.readouterr().out
        assert out.count("pass") >= 2

    def test_failing_verdict_exit_one(self):
        code = main(["rotor-upper", "--case", "10,15,3", "--factor", "0.001"])
        assert code == 1

    def test_single_case_flags(self, capsys):
        code = main(["rotor-upper", "--n", "12", "--m", "20", "--seed", "5"])
        assert code == 0
        assert "m=20;seed=5" in capsys.readouterr().out

    def test_bad_case_syntax(self):
        assert main(["rotor-upper", "--case", "10;15;3"]) == 2

    def test_no_cases(self):
        assert main(["rotor-upper"]) == 2

    def test_n_without_m(self):
        assert main(["rotor-upper", "--n", "12"]) == 2

    def test_out_file(self, tmp_path):
        out = tmp_path / "report.csv"
        code = main(["rotor-upper", "--case", "6,8,1", "--out", str(out)])
        assert code == 0
        assert out.read_text().startswith("experiment,agent,n,param")


class TestUsageErrors:
    def test_missing_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_missing_required_flag(self):
        with pytest.raises(SystemExit) as exc:
            main(["adversary-path", "--n", "5"])
        assert exc.value.code == 2
