"""Write the JSON fixtures under tests/fixtures and the CLI golden files under tests/golden.

Run from the repository root: ``python3 scripts/make_fixtures.py``.
"""
from __future__ import annotations

import io
import sys
from contextlib import redirect_stdout
from pathlib import Path

from segalis.cli import main

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "tests" / "fixtures"
GOLD = ROOT / "tests" / "golden"

FIXTURES = {
    "nerve.json": ["gen", "nerve", "--category", "cyclic:2", "--N", "5"],
    "pmonoid.json": ["gen", "pmonoid", "--monoid", "disjoint:2", "--N", "5"],
    "doldkan_m1.json": ["gen", "doldkan", "--dims", "1,2", "--N", "5"],
    "doldkan_m2.json": ["gen", "doldkan", "--dims", "1,1,1", "--N", "5"],
    "sdot.json": ["gen", "sdot", "--p", "2", "--N", "3", "--cutoff", "1"],
}

# name -> argv, with {fix} standing for the fixture directory
GOLDEN = {
    "boundary_4_3_upper.txt": ["boundary", "--n", "4", "--d", "3", "--side", "upper"],
    "boundary_4_3_lower.json": ["boundary", "--n", "4", "--d", "3", "--format", "json"],
    "boundary_4_2_lower.txt": ["boundary", "--n", "4", "--d", "2"],
    "tri_4_2_count.txt": ["triangulations", "--n", "4", "--d", "2", "--emit", "count"],
    "tri_5_2_count.txt": ["triangulations", "--n", "5", "--d", "2", "--emit", "count"],
    "tri_4_3_count.txt": ["triangulations", "--n", "4", "--d", "3", "--emit", "count"],
    "tri_5_2.dot": ["triangulations", "--n", "5", "--d", "2", "--emit", "dot"],
    "tri_5_2_hasse.dot": ["triangulations", "--n", "5", "--d", "2", "--emit", "hasse"],
    "tri_6_3.json": ["triangulations", "--n", "6", "--d", "3", "--format", "json"],
    "oriental_3_0.txt": ["oriental", "--n", "3", "--d", "0"],
    "oriental_3_1.txt": ["oriental", "--n", "3", "--d", "1"],
    "oriental_3_axioms.txt": ["oriental", "--n", "3", "--axioms"],
    "oriental_3_list.txt": ["oriental", "--n", "3", "--emit", "list"],
    "oriental_3_2.dot": ["oriental", "--n", "3", "--d", "2", "--emit", "dot"],
    "check_nerve_lower1.txt": ["check", "--input", "{fix}/nerve.json", "--lower", "1"],
    "check_nerve_all.json": ["check", "--input", "{fix}/nerve.json", "--lower", "1", "--upper", "1", "--lower", "2",
                             "--upper", "2", "--thin", "--n", "3", "--constant", "--format", "json"],
    "check_dk1.json": ["check", "--input", "{fix}/doldkan_m1.json", "--lower", "2", "--upper", "2", "--dk", "1",
                       "--format", "json"],
    "check_dk2_lower1.txt": ["check", "--input", "{fix}/doldkan_m2.json", "--lower", "1"],
    "check_pmonoid_independence.json": ["check", "--input", "{fix}/pmonoid.json", "--independence", "--n", "5",
                                        "--d", "2", "--pathspace", "--format", "json"],
    "check_sdot.json": ["check", "--input", "{fix}/sdot.json", "--lower", "2", "--upper", "2", "--format", "json"],
}


def run(argv: list[str]) -> tuple[str, int]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return buf.getvalue(), code


def golden_argv(name: str, fix: Path = FIX) -> list[str]:
    return [a.replace("{fix}", str(fix)) for a in GOLDEN[name]]


def write_all() -> None:
    FIX.mkdir(parents=True, exist_ok=True)
    GOLD.mkdir(parents=True, exist_ok=True)
    for name, argv in FIXTURES.items():
        text, code = run(argv)
        assert code == 0, name
        (FIX / name).write_text(text, encoding="utf-8")
    for name in GOLDEN:
        text, code = run(golden_argv(name))
        (GOLD / name).write_text(text, encoding="utf-8")
        print(f"{name}: exit {code}, {len(text)} bytes")


if __name__ == "__main__":
    sys.exit(write_all())
