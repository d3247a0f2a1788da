"""
╔══════════════════════════════════════════╗
║     ROTDIFF — Test Suite: CLI            ║
╚══════════════════════════════════════════╝

CommandExecutor commands against a temp run directory, exit
codes of rotdiff.main, and config precedence.
"""

import os
import sys
import tempfile
import unittest
from fractions import Fraction
from unittest.mock import patch

import yaml

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))
import rotdiff
from executor import ALPHA_HEADERS, STAGE_HEADERS, CommandExecutor
from reports.report_gen import read_csv_table, read_json
from utils.errors import INTERNAL_ERROR_EXIT

SMALL_VERIFY = {
    "max_index": 6, "parity_N": 10, "fourier_K": 2, "witness_count": 2,
    "growth": {"N": 3, "scan_limit": 1000}, "plan": {"N": 3},
}


def make_config(out_dir, **sections):
    alpha = sections.pop("alpha", {"kind": "golden"})
    config = rotdiff.deep_merge(rotdiff.DEFAULT_CONFIG, sections)
    config["output"]["dir"] = out_dir
    config["alpha"] = alpha
    return config


def read_bytes(path):
    with open(path, "rb") as f:
        return f.read()


class TestAlphaCommand(unittest.TestCase):

    def test_golden_table(self):
        with tempfile.TemporaryDirectory() as tmp:
            result = CommandExecutor(make_config(tmp)).execute("alpha", N=10)
            self.assertEqual(result["exit_code"], 0)
            headers, rows = read_csv_table(os.path.join(tmp, "alpha.csv"))
            self.assertEqual(headers, ALPHA_HEADERS)
            self.assertEqual([int(r[3]) for r in rows], [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89])
            self.assertEqual(rows[4][4], "odd")
            self.assertEqual(rows[5][4], "even")

    def test_explicit_list_too_short(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = make_config(tmp, alpha={"kind": "explicit", "quotients": [2, 2, 2]})
            result = CommandExecutor(config).execute("alpha", N=5)
            self.assertFalse(result["success"])
            self.assertEqual(result["exit_code"], 2)
            self.assertEqual(result["details"]["available"], 3)

    def test_unknown_command(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.assertEqual(CommandExecutor(make_config(tmp)).execute("plot")["exit_code"], 2)

    def test_unexpected_exception(self):
        with tempfile.TemporaryDirectory() as tmp:
            executor = CommandExecutor(make_config(tmp))
            with patch.object(executor, "cmd_alpha", side_effect=ValueError("boom")):
                result = executor.execute("alpha", N=3)
            self.assertFalse(result["success"])
            self.assertEqual(result["exit_code"], INTERNAL_ERROR_EXIT)
            self.assertIn("boom", result["content"])
            self.assertEqual(result["details"]["error"], "ValueError")


class TestExperimentCommand(unittest.TestCase):

    def test_golden_run(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = make_config(tmp, plan={"N": 4}, experiment={"record_limit": 10})
            result = CommandExecutor(config).execute("experiment")
            self.assertEqual(result["exit_code"], 0)
            headers, rows = read_csv_table(os.path.join(tmp, "stages.csv"))
            self.assertEqual(headers, STAGE_HEADERS)
            self.assertEqual([r[1] for r in rows], ["1", "3", "6", "11"])
            self.assertEqual(float(rows[0][2]), 1.0)
            self.assertTrue(all(r[-1] == "exact" for r in rows))
            # σ_1 = 1 rendered to 10 significant digits
            self.assertIn("σ_n=1 ", result["content"])
            for k in range(1, 5):
                self.assertTrue(os.path.exists(os.path.join(tmp, f"law_n{k}.csv")))
                self.assertTrue(os.path.exists(os.path.join(tmp, f"hist_n{k}.dat")))
            plan = read_json(os.path.join(tmp, "plan.json"))
            self.assertEqual(plan["plan"]["indices"], ["1", "3", "6", "11"])
            self.assertIn("config_sha256", plan["header"])
            _, records = read_csv_table(os.path.join(tmp, "records.csv"))
            self.assertEqual(len(records), 11)

    def test_symmetry_defect_column(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = make_config(tmp, plan={"N": 4}, experiment={"write_sums": False})
            result = CommandExecutor(config).execute("experiment")
            col = STAGE_HEADERS.index("symmetry_defect")
            # y_1 = ψ* is ±1 with mass 1/2 each
            self.assertEqual(float(result["rows"][0][col]), 0.0)
            _, rows = read_csv_table(os.path.join(tmp, "stages.csv"))
            for row in rows:
                self.assertEqual(len(row), len(STAGE_HEADERS))
                self.assertTrue(0.0 <= float(row[col]) <= 1.0)

    def test_sum_and_fourier_exports(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = make_config(tmp, plan={"N": 4}, experiment={"fourier_K": 4})
            CommandExecutor(config).execute("experiment")
            for r in (1, 3, 6, 11):
                headers, rows = read_csv_table(os.path.join(tmp, f"y_n{r}.csv"))
                self.assertEqual(headers, ["breakpoint", "value", "x", "y"])
                starts = [Fraction(row[0]) for row in rows]
                self.assertEqual(starts, sorted(starts))
                # ψ* sums take values of the parity of n
                self.assertTrue(all((int(row[1]) - r) % 2 == 0 for row in rows), r)
                data = read_json(os.path.join(tmp, f"fourier_n{r}.json"))
                self.assertEqual(data["n"], r)
                coeffs = data["coefficients"]
                self.assertEqual([c["k"] for c in coeffs], [1, 2, 3, 4])
                for c in coeffs:
                    self.assertEqual(set(c), {"k", "re_lo", "re_hi", "im_lo", "im_hi"})
                    self.assertLessEqual(c["re_lo"], c["re_hi"])
                    self.assertLessEqual(c["im_lo"], c["im_hi"])
                # jumps of ψ* at 0 and 1/2 cancel at even k
                self.assertEqual([coeffs[1][key] for key in ("re_lo", "re_hi", "im_lo", "im_hi")],
                                 [0.0, 0.0, 0.0, 0.0])
            _, rows = read_csv_table(os.path.join(tmp, "y_n1.csv"))
            self.assertEqual([row[:2] for row in rows], [["0", "1"], ["1/2", "-1"]])

    def test_sum_exports_off(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = make_config(tmp, plan={"N": 2}, experiment={"write_sums": False})
            CommandExecutor(config).execute("experiment")
            names = os.listdir(tmp)
            self.assertFalse(any(name.startswith(("y_n", "fourier_n")) for name in names))

    def test_rerun_is_byte_identical(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = make_config(tmp, plan={"N": 3})
            CommandExecutor(config).execute("experiment")
            names = sorted(os.listdir(tmp))
            first = {name: read_bytes(os.path.join(tmp, name)) for name in names}
            CommandExecutor(config).execute("experiment")
            self.assertEqual(sorted(os.listdir(tmp)), names)
            for name in names:
                self.assertEqual(read_bytes(os.path.join(tmp, name)), first[name], name)

    def test_parseval_rows_past_max_exact(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = make_config(tmp, plan={"N": 4},
                                 experiment={"max_exact": 5, "parseval_K": 50,
                                             "write_laws": False})
            result = CommandExecutor(config).execute("experiment")
            methods = [row[-1] for row in result["rows"]]
            self.assertEqual(methods, ["exact", "exact", "parseval_lower", "parseval_lower"])
            self.assertFalse(os.path.exists(os.path.join(tmp, "law_n1.csv")))
            self.assertTrue(os.path.exists(os.path.join(tmp, "y_n3.csv")))
            self.assertFalse(os.path.exists(os.path.join(tmp, "y_n6.csv")))

    def test_greedy_plan(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = make_config(tmp, plan={"kind": "greedy", "J": 2},
                                 experiment={"horizon": 2000, "write_laws": False})
            result = CommandExecutor(config).execute("experiment")
            self.assertEqual(result["exit_code"], 0)
            plan = read_json(os.path.join(tmp, "plan.json"))
            self.assertEqual(plan["plan"]["kind"], "greedy")
            self.assertIn("delta_budget", plan)

    def test_nonzero_mean_psi(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = make_config(tmp, psi={"kind": "custom", "breakpoints": ["0", "1/3"],
                                           "values": [1, 0]})
            result = CommandExecutor(config).execute("experiment")
            self.assertEqual(result["exit_code"], 2)
            self.assertEqual(result["details"]["error"], "ConfigError")


class TestVerifyAndReport(unittest.TestCase):

    def test_verify_then_report(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = make_config(tmp, plan={"N": 3}, verify=SMALL_VERIFY)
            executor = CommandExecutor(config)
            result = executor.execute("verify", workers=2)
            self.assertEqual(result["exit_code"], 0)
            data = read_json(os.path.join(tmp, "verify_report.json"))
            self.assertEqual(data["report"]["kind"], "group")
            self.assertIn("parity", result["content"])

            executor.execute("experiment")
            report = executor.execute("report", xlsx=True)
            self.assertEqual(report["exit_code"], 0)
            self.assertTrue(os.path.exists(os.path.join(tmp, "report.xlsx")))
            self.assertIn("denjoy_koksma", report["content"])

    def test_report_on_empty_dir(self):
        with tempfile.TemporaryDirectory() as tmp:
            result = CommandExecutor(make_config(tmp)).execute("report", run_dir=tmp)
            self.assertEqual(result["exit_code"], 2)


class TestMain(unittest.TestCase):

    def run_main(self, argv):
        with patch("sys.stdout"), patch("sys.stderr"):
            return rotdiff.main(argv)

    def test_alpha_ok(self):
        with tempfile.TemporaryDirectory() as tmp:
            code = self.run_main(["alpha", "--golden", "-N", "5", "--quiet", "--out", tmp])
            self.assertEqual(code, 0)
            self.assertTrue(os.path.exists(os.path.join(tmp, "alpha.csv")))

    def test_usage_errors(self):
        with tempfile.TemporaryDirectory() as tmp:
            cases = [
                ["bogus"],
                ["alpha", "--ead", "A=5,x=2", "--quiet", "--out", tmp],
                ["alpha", "--ead", "A=5,d=2", "--quiet", "--out", tmp],
                ["alpha", "--golden", "--seed", "3", "--quiet", "--out", tmp],
                ["alpha", "--golden", "-N", "-1", "--quiet", "--out", tmp],
                ["experiment", "--golden", "--horizon", "0", "--quiet", "--out", tmp],
                ["alpha", "--golden", "--explicit", "1,2"],
            ]
            for argv in cases:
                self.assertEqual(self.run_main(argv), 2, argv)

    def test_empty_config_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "empty.yaml")
            open(path, "w").close()
            self.assertEqual(self.run_main(["alpha", "--config", path, "--quiet"]), 2)

    def test_internal_error_exit_code(self):
        with tempfile.TemporaryDirectory() as tmp:
            with patch.object(CommandExecutor, "cmd_alpha", side_effect=KeyError("n")):
                code = self.run_main(["alpha", "--golden", "--quiet", "--out", tmp])
            self.assertEqual(code, INTERNAL_ERROR_EXIT)

    def test_custom_psi_with_nonzero_mean(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "config.yaml")
            with open(path, "w") as f:
                yaml.safe_dump({"psi": {"kind": "custom", "breakpoints": ["0", "1/3"],
                                        "values": [1, 0]}}, f)
            code = self.run_main(["experiment", "--config", path, "--golden",
                                  "--quiet", "--out", tmp])
            self.assertEqual(code, 2)


class TestConfig(unittest.TestCase):

    def test_precedence(self):
        with tempfile.TemporaryDirectory() as tmp:
            with patch.dict(os.environ, {"ROTDIFF_OUT_DIR": "from-env"}):
                self.assertEqual(rotdiff.load_config()["output"]["dir"], "from-env")
                path = os.path.join(tmp, "config.yaml")
                with open(path, "w") as f:
                    yaml.safe_dump({"output": {"dir": "from-file"},
                                    "alpha": {"kind": "ead", "A": 5, "d": 2, "seed": 1}}, f)
                config = rotdiff.load_config(path)
                self.assertEqual(config["output"]["dir"], "from-file")
                self.assertEqual(config["alpha"], {"kind": "ead", "A": 5, "d": 2, "seed": 1})
                self.assertEqual(config["plan"]["N"], 5)

                args = rotdiff.build_parser().parse_args(
                    ["experiment", "--config", path, "--out", "from-flag", "--seed", "9"])
                config = rotdiff.apply_flags(config, args)
                self.assertEqual(config["output"]["dir"], "from-flag")
                self.assertEqual(config["alpha"]["seed"], 9)

    def test_unknown_section(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "config.yaml")
            with open(path, "w") as f:
                yaml.safe_dump({"plots": {"dpi": 300}}, f)
            with self.assertRaises(rotdiff.UsageError):
                rotdiff.load_config(path)

    def test_parse_ead(self):
        self.assertEqual(rotdiff.parse_ead("A=5,d=2,seed=1"),
                         {"kind": "ead", "A": 5, "d": 2, "seed": 1})
        with self.assertRaises(rotdiff.UsageError):
            rotdiff.parse_ead("d=2")

    def test_example_config_loads(self):
        path = os.path.join(os.path.dirname(__file__), "..", "config.example.yaml")
        config = rotdiff.load_config(path)
        self.assertEqual(config["alpha"]["kind"], "ead")
        self.assertIsNotNone(config["alpha"]["seed"])


if __name__ == "__main__":
    unittest.main()
