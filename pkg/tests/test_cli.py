import json

import pytest

from sawkit.cli import build_property_report, main
from sawkit.constructions import lightning, middle_layers, star
from sawkit.familyio import document_from_family, emit_family_text


@pytest.fixture
def window_file(tmp_path):
    path = tmp_path / "window.txt"
    path.write_text(emit_family_text(document_from_family(middle_layers(5, 1))))
    return str(path)


def test_property_report_middle_window():
    report = build_property_report(middle_layers(5, 1))
    assert report["size"] == 20
    assert report["min_saw_t"] == 1
    assert report["intersecting"]["holds"] is False
    assert report["lym_sum"] == "2/1"
    assert report["expected_weight"] == "20/1"
    assert report["chain_lemma"]["applicable"] is True
    assert report["chain_lemma"]["equality"] is True


def test_property_report_lightning():
    report = build_property_report(lightning(2))
    assert report["size"] == 7
    assert report["min_saw_t"] == 1
    assert report["intersecting"]["holds"] is True
    # lightning contains 3-sunflowers ({1,2},{1,3},{1,4} share core {1}),
    # which are odd-sunflowers; the bridge implication is one-way only
    assert report["odd_sunflower"]["status"] == "found"


def test_property_report_star_even_sunflower():
    report = build_property_report(star(3, 1))
    assert report["even_sunflower"]["status"] == "found"
    members = report["even_sunflower"]["members"]
    assert members is not None and len(members) >= 1


def test_check_command_asserts(window_file, capsys):
    assert main(["check", window_file, "--assert", "t-saw=1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["size"] == 20
    assert main(["check", window_file, "--assert", "t-saw=0"]) == 1
    assert main(["check", window_file, "--assert", "intersecting"]) == 1
    assert main(["check", window_file, "--assert", "bogus"]) == 2


def test_check_command_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("n=2\n5\n")
    assert main(["check", str(bad)]) == 2
    assert main(["check", str(tmp_path / "missing.txt")]) == 2


def test_construct_roundtrip(tmp_path, capsys):
    out = tmp_path / "l2.txt"
    assert main(["construct", "lightning", "2", "-o", str(out)]) == 0
    assert main(["check", str(out), "--assert", "t-saw=1", "--assert", "intersecting"]) == 0
    capsys.readouterr()
    assert main(["construct", "middle-layers", "4", "1"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("n=4\n")
    assert main(["construct", "star", "not-an-int"]) == 2


def test_search_command(capsys):
    assert main(["search", "--n", "4", "--t", "1", "--mode", "exhaustive", "--all-optima"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["optimum"] == 10
    assert len(payload["optima"]) == 2

    assert main(["search", "--n", "3", "--t", "1", "--intersecting", "--oracle"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["optimum"] == 4

    assert main(["search", "--n", "5", "--t", "2", "--budget", "40"]) == 3
    payload = json.loads(capsys.readouterr().out)
    assert payload["status"] == "budget_exhausted"


def test_search_command_rejects_bad_problem(capsys):
    assert main(["search", "--n", "5", "--t", "1", "--mode", "exhaustive"]) == 2


def test_chains_command(window_file, capsys):
    assert main(["chains", window_file, "--trials", "2000", "--seed", "3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["lym_sum"] == "2/1"
    assert payload["expected_weight"] == "20/1"
    assert payload["monte_carlo"]["trials"] == 2000


def test_chains_deterministic_across_workers(window_file, capsys):
    assert main(["chains", window_file, "--trials", "4097", "--seed", "9", "--workers", "1"]) == 0
    first = capsys.readouterr().out
    assert main(["chains", window_file, "--trials", "4097", "--seed", "9", "--workers", "6"]) == 0
    second = capsys.readouterr().out
    assert first == second
