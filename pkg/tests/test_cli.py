"""Exchange format round trips, CLI subcommands, exit codes, replay."""

import json
import subprocess
import sys

from spikes.cli import (
    dump_payload,
    main,
    matroid_payload,
    payload_matroid,
    read_matroid,
    replay_provenance,
    write_matroid,
)
from spikes.matroid import Matroid, matroids_equal, sort_labels
from spikes.spike import binary_spike, build_spike, phi_family


def run_cli(*args):
    return main(list(args))


def gen(tmp_path, name, *args):
    out = tmp_path / name
    assert run_cli(*args, "--out", str(out)) == 0
    return out


def test_round_trip_is_canonical_idempotent(tmp_path):
    path = gen(tmp_path, "z4.json", "gen-spike", "--rank", "4", "--binary")
    m, payload = read_matroid(path)
    emitted = dump_payload(matroid_payload(m, payload["name"],
                                           payload["metadata"]["provenance"]))
    assert emitted == path.read_text()
    again = payload_matroid(json.loads(emitted))
    assert matroids_equal(m, again)


def test_round_trip_circuits_kind(tmp_path):
    path = gen(tmp_path, "free.json", "gen-spike", "--rank", "4", "--free")
    m, payload = read_matroid(path)
    assert payload["rep"]["kind"] == "circuits"
    assert len(payload["rep"]["circuits"]) == 58
    emitted = dump_payload(matroid_payload(m, payload["name"],
                                           payload["metadata"]["provenance"]))
    assert emitted == path.read_text()


def test_gen_spike_binary_content(tmp_path):
    path = gen(tmp_path, "z3.json", "gen-spike", "--rank", "3", "--binary")
    payload = json.loads(path.read_text())
    assert payload["ground"] == ["x1", "x2", "x3", "y1", "y2", "y3", "t"]
    assert payload["rep"]["rows"] == ["1000111", "0101011", "0011101"]


def test_gen_spike_c3_file(tmp_path):
    c3 = tmp_path / "c3.txt"
    c3.write_text(
        "\n".join(",".join(sort_labels(c)) for c in phi_family(3, 3)) + "\n"
    )
    path = gen(tmp_path, "spike.json", "gen-spike", "--rank", "3", "--c3", str(c3))
    m, _ = read_matroid(path)
    assert matroids_equal(m, binary_spike(3))


def test_gen_spike_rank_too_small(tmp_path):
    assert run_cli("gen-spike", "--rank", "2", "--binary",
                   "--out", str(tmp_path / "x.json")) == 2


def test_essplit_even_theorem_reproduces_z5(tmp_path):
    z4 = gen(tmp_path, "z4.json", "gen-spike", "--rank", "4", "--binary")
    z5 = gen(tmp_path, "z5.json", "gen-spike", "--rank", "5", "--binary")
    x = sorted(sort_labels(next(iter(phi_family(4, 4)))))
    split = gen(tmp_path, "split.json", "essplit", str(z4),
                "--x", ",".join(x), "--e", "t", "--relabel", "auto")
    a, b = json.loads(split.read_text()), json.loads(z5.read_text())
    assert a["ground"] == b["ground"] and a["rep"] == b["rep"]


def test_essplit_records_not_3connected(tmp_path):
    z4 = gen(tmp_path, "z4.json", "gen-spike", "--rank", "4", "--binary")
    split = gen(tmp_path, "tip.json", "essplit", str(z4), "--x", "t", "--e", "t")
    m, _ = read_matroid(split)
    from spikes.matroid import is_3connected

    assert not is_3connected(m)


def test_essplit_exit_codes(tmp_path):
    z4 = gen(tmp_path, "z4.json", "gen-spike", "--rank", "4", "--binary")
    out = str(tmp_path / "x.json")
    assert run_cli("essplit", str(z4), "--x", "x1,y1", "--e", "t", "--out", out) == 2
    assert run_cli("essplit", str(z4), "--x", "zz", "--e", "zz", "--out", out) == 2
    # a non-binary circuits-kind input is unsupported: exit 3
    z3 = gen(tmp_path, "z3.json", "gen-spike", "--rank", "3", "--binary")
    relaxed = gen(tmp_path, "r.json", "relax", str(z3), "--circuit", "x1,x2,y3")
    assert run_cli("essplit", str(relaxed), "--x", "t", "--e", "t", "--out", out) == 3


def test_relax_chain_reaches_free_spike(tmp_path):
    current = gen(tmp_path, "z3.json", "gen-spike", "--rank", "3", "--binary")
    for i, c in enumerate(phi_family(3, 3)):
        nxt = tmp_path / f"step{i}.json"
        assert run_cli("relax", str(current), "--circuit",
                       ",".join(sort_labels(c)), "--out", str(nxt)) == 0
        current = nxt
    m, payload = read_matroid(current)
    assert matroids_equal(m, build_spike(3))
    assert len(payload["metadata"]["provenance"]) == 5


def test_relax_rejects_non_hyperplane(tmp_path):
    z3 = gen(tmp_path, "z3.json", "gen-spike", "--rank", "3", "--binary")
    assert run_cli("relax", str(z3), "--circuit", "x1,y1,x2,y2",
                   "--out", str(tmp_path / "x.json")) == 2


def test_props_json(tmp_path, capsys):
    z5 = gen(tmp_path, "z5.json", "gen-spike", "--rank", "5", "--binary")
    assert run_cli("props", str(z5), "--json") == 0
    props = json.loads(capsys.readouterr().out)
    assert props["rank"] == 5
    assert props["elements"] == 11
    assert props["circuits"] == 47
    assert props["size_histogram"]["4"] == 10
    assert props["binary"] and props["three_connected"]
    assert props["spike_tips"] == ["t"]


def test_props_text_non_spike(tmp_path, capsys):
    m = Matroid.from_circuits(
        ("a", "b", "c", "d"),
        [("a", "b", "c"), ("a", "b", "d"), ("a", "c", "d"), ("b", "c", "d")],
    )
    path = tmp_path / "u24.json"
    write_matroid(path, m, "u24")
    assert run_cli("props", str(path)) == 0
    out = capsys.readouterr().out
    assert "binary: no" in out
    assert "(not a spike)" in out


def test_props_bad_file(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert run_cli("props", str(path)) == 2


def test_free_spike_props(tmp_path, capsys):
    free = gen(tmp_path, "free.json", "gen-spike", "--rank", "4", "--free")
    assert run_cli("props", str(free), "--json") == 0
    props = json.loads(capsys.readouterr().out)
    assert props["binary"] is False
    assert props["spike_tips"] == ["t"]


def test_verify_remark14_report(tmp_path, capsys):
    report = tmp_path / "report.json"
    code = run_cli("verify", "--suites", "remark14", "--report", str(report))
    assert code == 0
    payload = json.loads(report.read_text())
    assert payload["suites"] == ["remark14"]
    (entry,) = payload["reports"]
    assert entry["verdict"] == "pass"
    assert "note: good_pairs=35" in entry["witnesses"]
    assert entry["elapsed_seconds"] is None


def test_verify_flag_errors():
    assert run_cli("verify", "--suites", "bogus") == 2
    assert run_cli("verify", "--max-rank", "2") == 2


def test_verify_reports_byte_identical_across_jobs(tmp_path):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    args = ["verify", "--suites", "thm5,parity", "--max-rank", "4", "--seed", "7"]
    assert run_cli(*args, "--jobs", "1", "--report", str(r1)) == 0
    assert run_cli(*args, "--jobs", "2", "--report", str(r2)) == 0
    assert r1.read_bytes() == r2.read_bytes()


def test_verify_timings_flag(tmp_path):
    report = tmp_path / "r.json"
    assert run_cli("verify", "--suites", "parity", "--max-rank", "3",
                   "--timings", "--report", str(report)) == 0
    payload = json.loads(report.read_text())
    assert payload["reports"][0]["elapsed_seconds"] is not None


def test_provenance_replay(tmp_path):
    z4 = gen(tmp_path, "z4.json", "gen-spike", "--rank", "4", "--binary")
    x = sorted(sort_labels(next(iter(phi_family(4, 4)))))
    split = gen(tmp_path, "split.json", "essplit", str(z4),
                "--x", ",".join(x), "--e", "t", "--relabel", "auto")
    c = next(iter(phi_family(5, 3)))
    relaxed = gen(tmp_path, "relaxed.json", "relax", str(split),
                  "--circuit", ",".join(sort_labels(c)))
    m, payload = read_matroid(relaxed)
    replayed = replay_provenance(payload)
    assert replayed is not None
    assert matroids_equal(m, replayed)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "spikes", "props", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "usage" in proc.stdout
