"""End-to-end checks of the command-line tool: exit codes, determinism and
solve/verify round trips."""

import json
import os
import subprocess
import sys
import tempfile
import unittest

CLI = sys.argv.pop(1)
FIXTURES = sys.argv.pop(1)


def fixture(name):
    return os.path.join(FIXTURES, name)


def run(*args):
    proc = subprocess.run([CLI, "-q", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def write_temp(directory, name, payload):
    path = os.path.join(directory, name)
    with open(path, "w") as f:
        if isinstance(payload, str):
            f.write(payload)
        else:
            json.dump(payload, f)
    return path


class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = self.tmp.name

    def tearDown(self):
        self.tmp.cleanup()

    def test_generator_is_byte_identical(self):
        first = run("gen", "random", "--seed", "7")
        second = run("gen", "random", "--seed", "7")
        self.assertEqual(first[0], 0)
        self.assertEqual(first[1], second[1])
        self.assertNotEqual(first[1], run("gen", "random", "--seed", "8")[1])

    def test_two_cycle_is_a_no_instance(self):
        code, out, _ = run("co", "solve", "--method", "k1", "--instance", fixture("two_cycle.json"))
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out)["result"], "no")

    def test_committed_solution_verifies(self):
        code, out, _ = run("co", "verify", "--instance", fixture("four_vars_reversed.json"),
                           "--solution", fixture("four_vars_reversed_solution.json"))
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["result"], "valid")

    def test_invalid_solution_exits_one(self):
        bad = write_temp(self.dir, "bad.json", {"order": ["u", "v"], "labels": [1, 1]})
        inst = write_temp(self.dir, "inst.json",
                          {"k": 1, "vertices": ["u", "v"], "pairs": [{"A": [["u", "v"]], "B": []}]})
        code, out, _ = run("co", "verify", "--instance", inst, "--solution", bad)
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out)["result"], "invalid")

    def test_usage_and_parse_errors_exit_two(self):
        self.assertEqual(run("co", "solve")[0], 2)
        self.assertEqual(run("co", "solve", "--method", "bogus", "--instance", fixture("two_cycle.json"))[0], 2)
        broken = write_temp(self.dir, "broken.json", "{\"k\": 1,")
        code, _, _ = run("co", "solve", "--instance", broken)
        self.assertEqual(code, 2)
        missing = os.path.join(self.dir, "absent.json")
        self.assertEqual(run("co", "solve", "--instance", missing)[0], 2)

    def test_solve_outputs_verify(self):
        for seed in range(1, 13):
            _, text, _ = run("gen", "random", "--seed", str(seed), "--n", "6", "--k", "2", "--arc-density", "0.2")
            inst = write_temp(self.dir, "g.json", text)
            for method in ("auto", "brute", "treewidth"):
                code, out, _ = run("co", "solve", "--method", method, "--instance", inst)
                self.assertIn(code, (0, 1))
                doc = json.loads(out)
                if code == 0:
                    sol = write_temp(self.dir, "s.json", doc["ordering"])
                    self.assertEqual(run("co", "verify", "--instance", inst, "--solution", sol)[0], 0)

    def test_modular_solve_with_generated_decomposition(self):
        _, text, _ = run("gen", "random", "--kind", "md", "--seed", "3", "--n", "7")
        doc = json.loads(text)
        inst = write_temp(self.dir, "i.json", doc["instance"])
        md = write_temp(self.dir, "md.json", doc["md"])
        code, out, _ = run("co", "solve", "--method", "modular", "--instance", inst, "--md", md)
        self.assertIn(code, (0, 1))
        if code == 0:
            sol = write_temp(self.dir, "s.json", json.loads(out)["ordering"])
            self.assertEqual(run("co", "verify", "--instance", inst, "--solution", sol)[0], 0)

    def test_reduction_witness_verifies(self):
        code, out, _ = run("co", "reduce", "sat-reversed", "--cnf", fixture("four_vars.cnf"), "--witness")
        self.assertEqual(code, 0)
        doc = json.loads(out)
        inst = write_temp(self.dir, "r.json", doc["instance"])
        sol = write_temp(self.dir, "rs.json", doc["ordering"])
        self.assertEqual(run("co", "verify", "--instance", inst, "--solution", sol)[0], 0)

    def test_ramp_pipeline(self):
        code, out, _ = run("ramp", "solve", "--scene", fixture("five_arms.json"))
        self.assertEqual(code, 0)
        sched = write_temp(self.dir, "sched.json", json.loads(out)["schedule"])
        self.assertEqual(run("ramp", "verify", "--scene", fixture("five_arms.json"), "--schedule", sched)[0], 0)
        code, _, _ = run("ramp", "verify", "--scene", fixture("five_arms.json"),
                         "--schedule", fixture("five_arms_schedule.json"))
        self.assertEqual(code, 0)
        code, svg, _ = run("ramp", "render", "--scene", fixture("five_arms.json"),
                           "--schedule", fixture("five_arms_schedule.json"))
        self.assertEqual(code, 0)
        with open(fixture("five_arms.svg")) as f:
            self.assertEqual(svg, f.read())

    def test_arrangement_pipeline(self):
        arr = write_temp(self.dir, "arr.json", {
            "k": 1, "vertices": ["u", "v"], "pairs": [{"A": [["u", "v"]], "B": []}],
            "start": [], "target": ["u", "v"]})
        code, out, _ = run("arr", "solve", "--instance", arr)
        self.assertEqual(code, 0)
        moves = write_temp(self.dir, "moves.json", {"moves": json.loads(out)["moves"]})
        self.assertEqual(run("arr", "verify", "--instance", arr, "--moves", moves)[0], 0)
        wrong = write_temp(self.dir, "wrong.json", {"moves": [
            {"op": "add", "vertex": "v", "label": 1}, {"op": "add", "vertex": "u", "label": 1}]})
        self.assertEqual(run("arr", "verify", "--instance", arr, "--moves", wrong)[0], 1)

    def test_version_lists_schemas(self):
        code, out, _ = run("--version")
        self.assertEqual(code, 0)
        self.assertIn("instance", json.loads(out)["schemas"])


if __name__ == "__main__":
    unittest.main()
