import io
import json
import tempfile
import unittest
from contextlib import redirect_stdout
from pathlib import Path
from typing import Any, Dict, List, Tuple

from kangaroo import build_parser, main
from kangaroo_core.groups import MERSENNE_61, make_group

# Test the command line front door as a library


def run(argv: List[str]) -> Tuple[int, str]:
    output = io.StringIO()
    with redirect_stdout(output):
        status = main(argv)
    return status, output.getvalue()


def without_duration(path: Path) -> Dict[str, Any]:
    document = json.loads(path.read_text(encoding="utf-8"))
    document.pop("duration_seconds")
    return document


class TestCommandLine(unittest.TestCase):

    def test_bounds(self) -> None:
        status, output = run(["bounds", "--sbar", "4", "--tbar", "9", "--b", "0", "--eps", "0"])
        self.assertEqual(status, 0)
        self.assertEqual(json.loads(output), {"lower": 5.0, "upper": 26.0})

    def test_bounds_rejects_epsilon(self) -> None:
        status, _ = run(["bounds", "--sbar", "4", "--tbar", "9", "--b", "0", "--eps", "1.5"])
        self.assertEqual(status, 2)

    def test_solve(self) -> None:
        group = make_group("mul", MERSENNE_61, 37, MERSENNE_61 - 1)
        h = group.pow(group.generator, 3000)
        status, output = run([
            "solve", "--kind", "mul", "--modulus", str(MERSENNE_61), "--generator", "37",
            "--order", str(MERSENNE_61 - 1), "--h", str(h), "--a", "0", "--b", "4096", "--c", "8", "--seed", "5",
        ])
        self.assertEqual(status, 0)
        result = json.loads(output)
        self.assertEqual(result["x"], 3000)
        self.assertEqual(set(result), {"x", "group_ops", "tame_steps", "wild_steps", "restarts", "collision_point_hex"})

    def test_solve_bad_group(self) -> None:
        status, _ = run([
            "solve", "--kind", "mul", "--modulus", "23", "--generator", "5", "--order", "11",
            "--h", "1", "--a", "0", "--b", "16",
        ])
        self.assertEqual(status, 2)

    def test_reproduce_is_deterministic_across_workers(self) -> None:
        with tempfile.TemporaryDirectory() as directory:
            outputs = []
            for name, workers in (("first", "1"), ("second", "1"), ("third", "2")):
                out = str(Path(directory) / name)
                status, _ = run([
                    "reproduce", "theorem1", "--width", "4096", "--trials", "5", "--c", "8",
                    "--seed", "17", "--out", out, "--workers", workers,
                ])
                self.assertEqual(status, 0)
                outputs.append(out)
            csvs = [Path(out + ".csv").read_bytes() for out in outputs]
            self.assertEqual(csvs[0], csvs[1])
            self.assertEqual(csvs[0], csvs[2])
            documents = [without_duration(Path(out + ".json")) for out in outputs]
            for document in documents:
                document["spec"].pop("output")
            self.assertEqual(documents[0], documents[1])
            self.assertEqual(documents[0], documents[2])
            self.assertEqual(documents[0]["spec"]["kind"], "solve-average")

    def test_reproduce_kinds(self) -> None:
        parser = build_parser()
        worst = parser.parse_args(["reproduce", "theorem1", "--width", "64", "--trials", "1", "--worst", "--seed", "1", "--out", "x"])
        self.assertTrue(worst.worst)
        base = parser.parse_args(["reproduce", "theorem1", "--width", "64", "--trials", "1", "--base", "3", "--seed", "1", "--out", "x"])
        self.assertEqual(base.base, 3)

    def test_simulate(self) -> None:
        with tempfile.TemporaryDirectory() as directory:
            out = str(Path(directory) / "hitting")
            status, output = run([
                "simulate", "hitting", "--width", "64", "--trials", "20", "--base", "2",
                "--seed", "3", "--out", out, "--uniform-d", "1", "--workers", "1",
            ])
            self.assertEqual(status, 0)
            self.assertEqual(json.loads(output)["spec"]["kind"], "hitting")
            self.assertTrue(Path(out + ".csv").exists())

    def test_simulate_needs_base(self) -> None:
        with self.assertRaises(SystemExit):
            build_parser().parse_args(["simulate", "hitting", "--width", "64", "--trials", "2", "--seed", "1", "--out", "x"])
