import csv
import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

from harmonic_ctc.cli.main import DISTORTION_COLUMNS, main
from harmonic_ctc.config.settings import Settings

EXAMPLE_TWO = {
    "label": "z + 99/200 conj(z)^2",
    "u": [[0, 0], [1, 0]],
    "v": [[0, 0], [0, 0], [0.495, 0]],
    "k": 2,
    "gamma": 0.01,
}

NON_MEMBER = {
    "label": "z + 3 z^2",
    "u": [[0, 0], [1, 0], [3, 0]],
    "k": 2,
    "gamma": 0.0,
}

BAD_GENERATOR = {
    "u": [[0, 0], [1, 0]],
    "phi": [[0, 0], [1, 0], [0.6, 0]],
    "k": 2,
    "gamma": 0.0,
}

FAST = ["-q", "--grid-angles", "256"]


class CliTestCase(unittest.TestCase):
    """Runs main() with captured streams and fresh settings per test."""

    def setUp(self):
        Settings.reset()
        self.temp_dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        Settings.reset()
        self.temp_dir.cleanup()

    def write(self, name, payload):
        path = os.path.join(self.temp_dir.name, name)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(payload if isinstance(payload, str) else json.dumps(payload))
        return path

    def run_cli(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with redirect_stdout(stdout), redirect_stderr(stderr):
            code = main(list(argv))
        Settings.reset()
        return code, stdout.getvalue(), stderr.getvalue()


class TestCheckCommand(CliTestCase):
    """Test cases for the check subcommand."""

    def test_member_passes(self):
        """Test that Example 2 passes every check in a fixed order."""
        code, out, _ = self.run_cli("check", self.write("ex2.json", EXAMPLE_TWO), *FAST)
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report["command"], "check")
        self.assertEqual(report["verdict"], "PASS")
        self.assertEqual([c["name"] for c in report["checks"]],
                         ["phi-order", "membership", "necessary-coefficients",
                          "sufficient-coefficients", "sense-preservation"])
        self.assertTrue(all(c["status"] == "PASS" for c in report["checks"]))
        self.assertEqual(report["grid"]["angles"], 256)
        self.assertEqual(len(report["input_digest"]), 64)
        self.assertNotIn("timestamp", report)

    def test_non_member_fails(self):
        """Test that z + 3 z^2 fails membership and the necessary bound."""
        code, out, _ = self.run_cli("check", self.write("bad.json", NON_MEMBER), *FAST)
        self.assertEqual(code, 1)
        statuses = {c["name"]: c["status"] for c in json.loads(out)["checks"]}
        self.assertEqual(statuses["membership"], "FAIL")
        self.assertEqual(statuses["necessary-coefficients"], "FAIL")

    def test_failed_generator_skips_remaining_checks(self):
        """Test that a generator of too low an order skips the later checks."""
        code, out, _ = self.run_cli("check", self.write("phi.json", BAD_GENERATOR), *FAST)
        self.assertEqual(code, 1)
        checks = json.loads(out)["checks"]
        self.assertEqual(checks[0]["status"], "FAIL")
        self.assertEqual([c["status"] for c in checks[1:]], ["SKIPPED"] * 4)

    def test_malformed_file(self):
        """Test that malformed JSON exits 3 with nothing on stdout."""
        code, out, err = self.run_cli("check", self.write("broken.json", "{\"u\": [[0, 0], [1, 0]"), "-q")
        self.assertEqual(code, 3)
        self.assertEqual(out, "")
        self.assertIn("error", err)

    def test_invalid_field(self):
        """Test that an invalid field exits 3 and is named on stderr."""
        code, _, err = self.run_cli("check", self.write("gamma.json", dict(EXAMPLE_TWO, gamma=1.5)), "-q")
        self.assertEqual(code, 3)
        self.assertIn("gamma", err)

    def test_output_is_deterministic(self):
        """Test byte-identical reports across runs and worker counts."""
        path = self.write("ex2.json", EXAMPLE_TWO)
        first = self.run_cli("check", path, *FAST)[1]
        second = self.run_cli("check", path, *FAST)[1]
        threaded = self.run_cli("check", path, *FAST, "--workers", "4")[1]
        self.assertEqual(first, second)
        self.assertEqual(first, threaded)

    def test_timestamp_is_converted_to_utc(self):
        """Test that --timestamp is normalized to UTC."""
        path = self.write("ex2.json", EXAMPLE_TWO)
        _, out, _ = self.run_cli("check", path, *FAST, "--timestamp", "2024-01-02T03:04:05+08:00")
        self.assertEqual(json.loads(out)["timestamp"], "2024-01-01T19:04:05+00:00")

    def test_config_file(self):
        """Test that --config overrides the grid."""
        config = self.write("settings.json", {"grid_angles": 128})
        _, out, _ = self.run_cli("check", self.write("ex2.json", EXAMPLE_TWO), "-q", "--config", config)
        self.assertEqual(json.loads(out)["grid"]["angles"], 128)

    def test_out_file(self):
        """Test that --out writes the report to a file instead of stdout."""
        target = os.path.join(self.temp_dir.name, "report.json")
        code, out, _ = self.run_cli("check", self.write("ex2.json", EXAMPLE_TWO), *FAST, "--out", target)
        self.assertEqual(code, 0)
        self.assertEqual(out, "")
        with open(target, encoding="utf-8") as handle:
            self.assertEqual(json.load(handle)["verdict"], "PASS")


class TestUsage(CliTestCase):
    """Test cases for argparse usage errors."""

    def test_missing_subcommand(self):
        """Test that no subcommand exits 3."""
        with redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as cm:
                main([])
        self.assertEqual(cm.exception.code, 3)

    def test_unknown_flag(self):
        """Test that an unknown flag exits 3."""
        with redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as cm:
                main(["verify", "--no-such-flag"])
        self.assertEqual(cm.exception.code, 3)


class TestDistortionCommand(CliTestCase):
    """Test cases for the distortion subcommand."""

    def test_csv(self):
        """Test the CSV columns and values at r = 0 and r = 0.5."""
        code, out, _ = self.run_cli("distortion", "-q", "--gamma", "0", "--radii", "0,0.5")
        self.assertEqual(code, 0)
        rows = list(csv.DictReader(io.StringIO(out)))
        self.assertEqual(len(rows), 2)
        self.assertEqual(tuple(rows[0]), DISTORTION_COLUMNS)
        self.assertEqual(rows[0]["upper_modulus"], "0")
        self.assertAlmostEqual(float(rows[1]["upper_derivative"]), 12.0, places=12)

    def test_json(self):
        """Test the JSON variant."""
        code, out, _ = self.run_cli("distortion", "-q", "--gamma", "0.5", "--radii", "0.3", "--format", "json")
        self.assertEqual(code, 0)
        document = json.loads(out)
        self.assertEqual(document["command"], "distortion")
        self.assertEqual(document["rows"][0]["radius"], 0.3)

    def test_radius_out_of_range(self):
        """Test that r = 1 exits 3."""
        code, _, _ = self.run_cli("distortion", "-q", "--gamma", "0", "--radii", "1")
        self.assertEqual(code, 3)


class TestRenderCommand(CliTestCase):
    """Test cases for the render subcommand."""

    def test_render_is_deterministic(self):
        """Test repeatable SVG output with the requested ray count."""
        path = self.write("ex2.json", EXAMPLE_TWO)
        code, first, _ = self.run_cli("render", path, "-q", "--rays", "6")
        second = self.run_cli("render", path, "-q", "--rays", "6")[1]
        self.assertEqual(code, 0)
        self.assertEqual(first, second)
        self.assertIn("<svg", first)
        self.assertEqual(first.count("data-ray="), 6)

    def test_bad_radii(self):
        """Test that decreasing radii exit 3."""
        code, _, _ = self.run_cli("render", self.write("ex2.json", EXAMPLE_TWO), "-q", "--radii", "0.5,0.2")
        self.assertEqual(code, 3)


class TestVerifyCommand(CliTestCase):
    """Test cases for the verify subcommand."""

    def test_filtered_json(self):
        """Test that --filter keeps only the named group."""
        code, out, _ = self.run_cli("verify", *FAST, "--filter", "distortion", "--format", "json")
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual([c["name"] for c in report["checks"]], ["envelope-identity"])
        self.assertEqual(report["verdict"], "PASS")
        self.assertEqual(report["subject"]["filter"], "distortion")

    def test_table(self):
        """Test the plain-text table output."""
        code, out, _ = self.run_cli("verify", *FAST, "--filter", "phi-k")
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertTrue(lines[0].startswith("name"))
        self.assertIn("phi-k-identity", lines[1])

    def test_unknown_filter(self):
        """Test that an unknown filter exits 3 and is named on stderr."""
        code, _, err = self.run_cli("verify", "-q", "--filter", "nothing")
        self.assertEqual(code, 3)
        self.assertIn("nothing", err)

    def test_full_suite_passes(self):
        """Test the whole regression suite passes and covers Examples 2 to 7."""
        code, out, _ = self.run_cli("verify", *FAST, "--format", "json", "--random-corpus", "5")
        report = json.loads(out)
        failed = [c["name"] for c in report["checks"] if c["status"] != "PASS"]
        self.assertEqual(failed, [])
        self.assertEqual(code, 0)
        anchors = {c.get("anchor") for c in report["checks"]}
        self.assertTrue({f"Example {i}" for i in range(2, 8)} <= anchors)


if __name__ == "__main__":
    unittest.main()
