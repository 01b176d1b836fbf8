"""CLI contract and golden-output tests.

Run this file as a script to rewrite the golden files after an intended
output change.
"""

import sys
from pathlib import Path

import pytest

from conceptspaces import fixture_path
from conceptspaces.cli import run_cli

GOLDEN = Path(__file__).parent / "fixtures" / "cli_golden"


def F(name):
    return str(fixture_path(name))


CASES = {
    "validate_animals": ["validate", "--space", F("animals.cspace")],
    "categorize_animals": ["categorize", "--space", F("animals.cspace"), "--point", "5,6.5"],
    "typicality_zebra": ["typicality", "--space", F("polka_dot_zebra.cspace"),
                         "--concept", "zebra", "--point", "Pina"],
    "combine_polka_dot_zebra": ["combine", "--space", F("polka_dot_zebra.cspace"),
                                "--a", "zebra", "--b", "polka_dot_thing", "--point", "Pina"],
    "combine_seed7": ["combine", "--space", F("polka_dot_zebra.cspace"), "--seed", "7",
                      "--a", "zebra", "--b", "polka_dot_thing"],
    "tessellate_animals": ["tessellate", "--space", F("animals.cspace"),
                           "--concepts", "dog,cat,bird", "--bbox", "0,0,10,10"],
    "fuzzy_check": ["fuzzy-check", "--space", F("osherson_smith.cspace")],
    "fuzzy_check_csv": ["fuzzy-check", "--space", F("osherson_smith.cspace"), "--format", "csv"],
    "fuzzy_check_inline": ["fuzzy-check", "--asserted", "0.15", "--conjuncts", "0.2,0.95"],
    "rbf_train_fruit": ["rbf-train", "--space", F("fruit.cspace"), "--k", "2", "--seed", "3"],
    "rbf_classify_chimera": ["rbf-classify", "--space", F("chimera.cspace"), "--point", "chimera"],
    "rbf_classify_cub": ["rbf-classify", "--space", F("chimera.cspace"), "--point", "cub"],
    "track_crossing": ["track", "--space", F("crossing.cspace")],
    "rightof_round_table": ["rightof", "--space", F("round_table.cspace"), "--x", "C", "--y", "A"],
    "rightof_round_table_check": ["rightof", "--space", F("round_table.cspace"), "--check"],
    "rightof_bench_check": ["rightof", "--space", F("bench.cspace"), "--check"],
    "classify_dog": ["classify", "--space", F("animals.cspace"), "--label", "dog"],
    "classify_point": ["classify", "--space", F("animals.cspace"), "--point", "5.2,6.1"],
}


def render(argv):
    r = run_cli(argv)
    return f"exit={r.code}\n{r.stdout}"


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    out = render(CASES[name])
    assert out == render(CASES[name])
    assert out == (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")


def test_golden_files_cover_cases():
    assert {p.stem for p in GOLDEN.glob("*.txt")} == set(CASES)


def test_typicality_prints_one_real():
    r = run_cli(CASES["typicality_zebra"])
    assert r.code == 0
    assert 0 < float(r.stdout.strip()) <= 1 and r.stdout.count("\n") == 1


def test_fuzzy_check_line():
    r = run_cli(CASES["fuzzy_check"])
    assert r.code == 0 and "violated bound=0.2" in r.stdout


def test_combine_disjoint(tmp_path):
    f = tmp_path / "d.cspace"
    f.write_text("dim a.x linear 0 10\ndim a.y linear 0 10\n"
                 "concept p box 0..1 0..1\nconcept q box 5..6 5..6\n")
    r = run_cli(["combine", "--space", str(f), "--a", "p", "--b", "q"])
    assert r.code == 1 and "empty conjunction" in r.stderr


def test_parse_error_exit_2(tmp_path):
    f = tmp_path / "bad.cspace"
    f.write_text("dim a.x linear 0 1\nisa dog animol\n")
    r = run_cli(["validate", "--space", str(f)])
    assert r.code == 2 and f"{f}:2:" in r.stderr


def test_usage_errors_exit_2():
    assert run_cli([]).code == 2
    assert run_cli(["categorize", "--space", F("animals.cspace")]).code == 2
    assert run_cli(["frobnicate"]).code == 2


def test_missing_input_exit_2(tmp_path):
    r = run_cli(["validate", "--space", str(tmp_path / "nope.cspace")])
    assert r.code == 2 and "cannot read file" in r.stderr


def test_unwritable_output_exit_1(tmp_path):
    out = tmp_path / "missing_dir" / "x.svg"
    assert run_cli(CASES["rightof_bench_check"] + ["--out", str(out)]).code == 1


def test_unknown_concept_exit_1():
    r = run_cli(["typicality", "--space", F("animals.cspace"), "--concept", "unicorn",
                 "--point", "1,1"])
    assert r.code == 1 and "unicorn" in r.stderr


def test_seed_header_recorded():
    r = run_cli(CASES["combine_seed7"])
    assert r.stdout.startswith("# seed=7\n")


def test_svg_outputs(tmp_path):
    for argv in (CASES["combine_polka_dot_zebra"], CASES["tessellate_animals"],
                 CASES["track_crossing"], CASES["rightof_round_table_check"]):
        out = tmp_path / f"{argv[0]}.svg"
        assert run_cli(argv + ["--out", str(out)]).code == 0
        assert out.read_text().startswith("<?xml")


def test_rbf_train_round_trips(tmp_path):
    out = tmp_path / "net.cspace"
    r = run_cli(["rbf-train", "--space", F("fruit.cspace"), "--out", str(out)])
    assert r.code == 0 and out.read_text() == r.stdout
    again = run_cli(["rbf-classify", "--space", str(out), "--point", "1.2,8.9"])
    assert again.stdout.splitlines()[1].startswith("lemon,")


if __name__ == "__main__":
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in CASES.items():
        (GOLDEN / f"{name}.txt").write_text(render(argv), encoding="utf-8")
    sys.exit(0)
