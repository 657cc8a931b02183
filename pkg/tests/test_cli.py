import json
import subprocess
import sys

import pytest

RUN = [sys.executable, "-m", "linkage_lab.cli"]


def run_cli(*args):
    proc = subprocess.run(RUN + list(args), capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


class TestExitCodes:
    def test_linked_true_exit_zero(self, tmp_path):
        g = write(tmp_path, "k4.json",
                  {"n": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2],
                                     [1, 3], [2, 3]]})
        code, out, _ = run_cli("check-linked", "--graph", g, "--k", "1")
        assert code == 0
        assert json.loads(out)["linked"] is True

    def test_linked_false_exit_one(self, tmp_path):
        code, out, _ = run_cli("gen", "--family", "jorgensen", "--k", "2",
                               "-o", str(tmp_path / "j2.json"))
        assert code == 0
        code, out, _ = run_cli("check-linked", "--graph",
                               str(tmp_path / "j2.json"), "--k", "2")
        assert code == 1
        doc = json.loads(out)
        assert doc["linked"] is False
        assert sorted(map(tuple, doc["witness"])) == [(0, 1), (2, 3)]

    def test_guard_exit_three(self, tmp_path):
        g = write(tmp_path, "path.json",
                  {"n": 20, "edges": [[i, i + 1] for i in range(19)]})
        code, _, err = run_cli("disjoint-paths", "--graph", g,
                               "--pairs", "0:19", "--guard", "16")
        assert code == 3
        assert "inconclusive" in err

    def test_malformed_json_exit_two(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"n": 3, "edges": [[0, 1]')
        code, _, err = run_cli("check-linked", "--graph", str(path),
                               "--k", "1")
        assert code == 2
        assert "line" in err and "column" in err

    def test_unknown_flag_exit_two(self):
        code, _, _ = run_cli("check-linked", "--bogus", "1")
        assert code == 2


class TestDeterminism:
    def test_identical_runs_identical_bytes(self, tmp_path):
        outs = set()
        for _ in range(2):
            code, out, _ = run_cli("cross-or-rural-sweep", "--count", "5",
                                   "--n", "7", "--seed", "11")
            assert code == 0
            outs.add(out)
        assert len(outs) == 1

    def test_config_echoed(self, tmp_path):
        g = write(tmp_path, "tri.json",
                  {"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]})
        code, out, _ = run_cli("rural", "--graph", g, "--omega", "0,1,2")
        doc = json.loads(out)
        assert doc["config"]["cmd"] == "rural"
        assert doc["config"]["omega"] == "0,1,2"


class TestRoundTrips:
    def test_solve_and_verify_movement(self, tmp_path):
        g = write(tmp_path, "k3.json",
                  {"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]})
        pairing = write(tmp_path, "L.json",
                        {"x": [0], "y": [2],
                         "edges": [[[0, 0], [2, "inf"]]]})
        code, out, _ = run_cli("solve-tokens", "--graph", g,
                               "--pairing", pairing, "--lemma", "wilson")
        assert code == 0
        movement = json.loads(out)["movement"]
        mv = write(tmp_path, "m.json", movement)
        code, out, _ = run_cli("verify-movement", "--graph", g,
                               "--movement", mv)
        assert code == 0 and json.loads(out)["valid"] is True

    def test_nested_cover_path(self, tmp_path):
        g = write(tmp_path, "p5.json",
                  {"n": 5, "edges": [[0, 1], [1, 2], [2, 3], [3, 4]]})
        code, out, _ = run_cli("nested-cover", "--graph", g,
                               "--x", "0", "--y", "4", "--z", "1,2,3")
        assert code == 0
        seps = json.loads(out)["separations"]
        assert [s["a"] for s in seps] == [[0, 1], [0, 1, 2], [0, 1, 2, 3]]

    def test_slim_pipeline(self, tmp_path):
        from linkage_lab.fixtures import ladder_fixture
        from linkage_lab.graph_core import graph_to_dict

        fx = ladder_fixture(5, 2, 1, gamma_edges=[(0, 1)])
        g = write(tmp_path, "g.json", graph_to_dict(fx.graph))
        sd = write(tmp_path, "sd.json", fx.sd.to_json_obj())
        fl = write(tmp_path, "fl.json", fx.linkage.to_json_obj())
        code, out, _ = run_cli("verify-slim", "--graph", g,
                               "--decomposition", sd)
        assert code == 0 and json.loads(out)["adhesion"] == 3
        code, out, _ = run_cli("verify-regular", "--graph", g,
                               "--decomposition", sd, "--linkage", fl,
                               "--p", str(fx.attachedness_p))
        assert code == 0
        doc = json.loads(out)
        assert doc["l6"] and doc["l7"] and doc["l8"]
        code, out, _ = run_cli("aux-graph", "--graph", g,
                               "--decomposition", sd, "--linkage", fl)
        assert code == 0
        assert json.loads(out)["auxiliary"]["edges"] == [[0, 1]]

    def test_stabilize_seeded(self, tmp_path):
        from linkage_lab.fixtures import ladder_fixture
        from linkage_lab.graph_core import graph_to_dict

        fx = ladder_fixture(6, 3, 0, gamma_edges=[(0, 1), (1, 2)],
                            seed="bridging")
        g = write(tmp_path, "g.json", graph_to_dict(fx.graph))
        sd = write(tmp_path, "sd.json", fx.sd.to_json_obj())
        fl = write(tmp_path, "fl.json", fx.linkage.to_json_obj())
        code, out, _ = run_cli("stabilize", "--graph", g,
                               "--decomposition", sd, "--linkage", fl,
                               "--p", str(fx.attachedness_p),
                               "--target-length", "5")
        assert code == 0
        doc = json.loads(out)
        assert doc["stable"] is True and doc["rounds"] == 1

    def test_euler_check(self, tmp_path):
        g = write(tmp_path, "c4.json",
                  {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]})
        code, out, _ = run_cli("euler-check", "--graph", g,
                               "--omega", "0,1,2,3")
        assert code == 0
        doc = json.loads(out)
        assert doc["holds"] and doc["boundary_degree_sum"] == 8

    def test_report_writes_files(self, tmp_path):
        out_dir = tmp_path / "report"
        code, out, _ = run_cli("report", "--out", str(out_dir),
                               "--seed", "3", "--count", "6")
        assert code == 0
        written = json.loads(out)["written"]
        assert any(p.endswith("report.csv") for p in written)
        assert sum(1 for p in written if p.endswith(".png")) >= 2
        for p in written:
            assert (tmp_path / "report").exists()
