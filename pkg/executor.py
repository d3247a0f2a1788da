"""
╔══════════════════════════════════════════════════════════════╗
║      ROTDIFF — Command Executor                              ║
╠══════════════════════════════════════════════════════════════╣
║  Routes the CLI's commands to the library and writes every   ║
║  artifact of a run from this single place, in a fixed order. ║
║                                                              ║
║    alpha       convergent table (p, q, parity, β)            ║
║    experiment  plan → laws → σ_n → KS / moments / char-fn    ║
║    verify      the verification suite, one JSON report       ║
║    report      summary of a run directory (+ optional xlsx)  ║
║                                                              ║
║  Every command returns the result dict                       ║
║    {"success", "error", "content", "exit_code", ...}          ║
║  and never raises: library errors come back with the exit    ║
║  code their class maps to.                                   ║
╚══════════════════════════════════════════════════════════════╝
"""

import logging
import os
import time
from fractions import Fraction

from birkhoff.config import BirkhoffConfig, psi_star
from birkhoff.fourier import fourier_y, parseval_lower_bound
from contfrac.convergents import certified_quality, convergents
from contfrac.quotients import PartialQuotients
from limits.greedy import greedy_subsequence
from limits.plans import delta_budget, r_sequence, running_max_l2, sigma_of, stage_sums
from reports.report_gen import (
    generate_excel, header_block, read_csv_table, read_json, write_csv, write_histogram,
    write_json,
)
from stats.compare import char_fn, ks_distance, moments
from stats.gaussian import GaussianRef, gaussian_char
from stepfun.io import ROW_HEADERS as Y_HEADERS
from stepfun.io import from_json as psi_from_json
from stepfun.io import rows as y_rows
from stepfun.measures import distribution, norms
from utils.certified import CInterval, lower, midpoint, precision, render, to_iv, upper
from utils.errors import INTERNAL_ERROR_EXIT, QuotientsExhaustedError, RotdiffError, UsageError
from utils.event_bus import event_bus
from verify.suite import run_suite, suite_horizon, suite_params

STAGE_HEADERS = ["n", "r_n", "sigma_n", "sigma_lo", "ks", "m2", "m4",
                 "char_gap_at_lambda1", "symmetry_defect", "method"]
ALPHA_HEADERS = ["n", "a_n", "p_n", "q_n", "q_parity", "beta", "beta_good"]
DEFAULT_GREEDY_HORIZON = 1_000_000


def _fmt(x):
    return "" if x is None else repr(float(x))


class CommandExecutor:
    def __init__(self, config, logger=None):
        self.config = config
        self.logger = logger or logging.getLogger("rotdiff")

    def execute(self, command, **options):
        """Run one command and return its result dict."""
        self.logger.info(f"▶ {command}")
        t0 = time.perf_counter()
        try:
            result = self._dispatch(command, options)
        except RotdiffError as e:
            result = {"success": False, "error": True, "content": str(e),
                      "exit_code": e.exit_code, "details": e.to_dict()}
        except OSError as e:
            result = {"success": False, "error": True, "content": f"I/O error: {e}",
                      "exit_code": 2}
        except Exception as e:
            self.logger.exception(f"internal error in {command}")
            result = {"success": False, "error": True, "content": f"internal error: {e}",
                      "exit_code": INTERNAL_ERROR_EXIT, "details": {"error": type(e).__name__}}
        result.setdefault("exit_code", 0 if result.get("success") else 1)
        status = "✅" if result.get("success") else "❌"
        self.logger.info(f"  {status} {command} in {time.perf_counter() - t0:.1f}s")
        return result

    def _dispatch(self, command, options):
        if command == "alpha":
            return self.cmd_alpha(options.get("N", 10))
        elif command == "experiment":
            return self.cmd_experiment()
        elif command == "verify":
            return self.cmd_verify(options.get("workers", 1))
        elif command == "report":
            return self.cmd_report(options.get("run_dir"), options.get("xlsx", False))
        raise UsageError(f"unknown command {command!r}")

    # ─── Shared setup ────────────────────────────

    @property
    def out_dir(self):
        path = self.config["output"]["dir"]
        os.makedirs(path, exist_ok=True)
        return path

    def _path(self, name):
        return os.path.join(self.out_dir, name)

    def _header(self, title):
        return header_block(self.config, title)

    def alpha(self):
        return PartialQuotients.from_dict(self.config.get("alpha"))

    def psi(self):
        spec = self.config.get("psi") or {"kind": "psi_star"}
        if spec.get("kind", "psi_star") == "psi_star":
            return psi_star()
        if spec["kind"] == "custom":
            return psi_from_json(spec)
        raise UsageError(f"unknown psi kind {spec['kind']!r}")

    def birkhoff_config(self, alpha, horizon):
        prec = self.config.get("precision", {})
        return BirkhoffConfig.build(alpha, horizon, self.psi(),
                                    bits=prec.get("bits", 128),
                                    max_bits=prec.get("max_bits", 2048))

    # ─── alpha ───────────────────────────────────

    def cmd_alpha(self, N):
        alpha = self.alpha()
        table = convergents(alpha, N)
        rows = []
        for c in table:
            try:
                q = certified_quality(alpha, c.index)
                beta, good = _fmt(q.beta), str(q.good).lower()
            except QuotientsExhaustedError:
                beta, good = "", ""
            rows.append([c.index, alpha.a(c.index), str(c.p), str(c.q),
                         "odd" if c.q % 2 else "even", beta, good])
        written = write_csv(self._path("alpha.csv"), ALPHA_HEADERS, rows,
                            self._header(f"convergents of {alpha.label}"))
        return {"success": True, "error": False, "content": written["content"],
                "headers": ALPHA_HEADERS, "rows": rows, "label": alpha.label}

    # ─── experiment ──────────────────────────────

    def _plan(self, alpha):
        """(plan or None, horizon); greedy needs the config before it has a plan."""
        p = self.config["plan"]
        exp = self.config["experiment"]
        if p["kind"] == "r_sequence":
            plan = r_sequence(alpha, p["N"])
            return plan, exp.get("horizon") or plan.indices[-1]
        if p["kind"] == "greedy":
            return None, exp.get("horizon") or DEFAULT_GREEDY_HORIZON
        raise UsageError(f"unknown plan kind {p['kind']!r}")

    def _stage_row(self, k, r, y, write_laws, bits):
        """One stages.csv row for y = y_r at stage k, and the σ it used."""
        with precision(bits):
            sigma = sigma_of(norms(y).l2_sq, k)
            law = distribution(y, root_scale=k)
            ks = ks_distance(law, GaussianRef(sigma))
            m = moments(law, 4)
            gap = (char_fn(law, 1) - CInterval(gaussian_char(sigma, 1), to_iv(0))).modulus()
        if write_laws:
            header = self._header(f"law of y_{r}/sqrt({k})")
            write_csv(self._path(f"law_n{k}.csv"), law.ROW_HEADERS, law.rows(), header)
            write_histogram(self._path(f"hist_n{k}.dat"), law, header)
        row = [k, str(r), _fmt(midpoint(sigma)), _fmt(lower(sigma)), _fmt(upper(ks)),
               _fmt(_mid(m[1])), _fmt(_mid(m[3])), _fmt(upper(gap)),
               _fmt(law.symmetry_defect()), "exact"]
        return sigma, row

    def _write_sum(self, cfg, k, r, y, K):
        """y_r as (breakpoint, value) rows, and its first K Fourier enclosures."""
        write_csv(self._path(f"y_n{r}.csv"), Y_HEADERS, y_rows(y),
                  self._header(f"y_{r}, stage {k}"))
        coeffs = [fourier_y(cfg, r, j).to_dict(j) for j in range(1, K + 1)]
        write_json(self._path(f"fourier_n{r}.json"), {"n": r, "stage": k, "coefficients": coeffs},
                   self._header(f"Fourier coefficients of y_{r}"))

    def cmd_experiment(self):
        exp = self.config["experiment"]
        alpha = self.alpha()
        plan, horizon = self._plan(alpha)
        cfg = self.birkhoff_config(alpha, horizon)
        if plan is None:
            p = self.config["plan"]
            plan = greedy_subsequence(cfg, p["J"], p.get("deltas"))

        max_exact = exp.get("max_exact", 2_000_000)
        exact_upto = sum(1 for r in plan.indices if r <= max_exact)
        rows, summary = [], []
        sigmas = []
        for k, r, y in stage_sums(cfg, plan, exact_upto):
            sigma, row = self._stage_row(k, r, y, exp.get("write_laws", True), cfg.bits)
            if exp.get("write_sums", True):
                self._write_sum(cfg, k, r, y, exp.get("fourier_K", 8))
            rows.append(row)
            sigmas.append(sigma)
            event_bus.emit("stage_done", {"n": k, "r": str(r)})
            summary.append(f"n={k:<3} r_n={r:<12} σ_n={render(sigma, 10):<14} KS={row[4][:8]}")
        for k in range(exact_upto + 1, len(plan) + 1):
            r = plan.index(k)
            low = sigma_of(parseval_lower_bound(cfg, r, exp.get("parseval_K", 2000)), k)
            rows.append([k, str(r), "", _fmt(lower(low)), "", "", "", "", "", "parseval_lower"])
            event_bus.emit("stage_done", {"n": k, "r": str(r)})
            summary.append(f"n={k:<3} r_n={r:<12} σ_n ≥ {float(lower(low)):.6f} (Fourier bound)")
        plan.sigma = sigmas

        write_csv(self._path("stages.csv"), STAGE_HEADERS, rows,
                  self._header(f"{plan.kind} stages for {alpha.label}"))
        payload = {"alpha": alpha.to_dict(), "label": alpha.label, "plan": plan.to_dict(),
                   "shadow": cfg.shadow.to_dict()}
        if plan.kind == "greedy":
            payload["delta_budget"] = [
                {"k": k, "sum": str(total), "over_sqrt_k": float(upper(scaled))}
                for k, (total, scaled) in enumerate(delta_budget(plan), start=1)
            ]
        write_json(self._path("plan.json"), payload, self._header("subsequence plan"))

        record_limit = min(exp.get("record_limit", 0), plan.indices[exact_upto - 1] if exact_upto else 0)
        if record_limit:
            rec = running_max_l2(cfg, record_limit)
            rec_rows = [[m, a, str(v)] for m, (a, v) in enumerate(zip(rec.argmax, rec.l2_sq))]
            write_csv(self._path("records.csv"), ["m", "argmax", "l2_sq"], rec_rows,
                      self._header("running maximum of the L2 norm"))
        return {"success": True, "error": False, "content": "\n".join(summary),
                "rows": rows, "plan": plan}

    # ─── verify ──────────────────────────────────

    def cmd_verify(self, workers=1):
        alpha = self.alpha()
        params = suite_params(self.config.get("verify"))
        horizon = max(suite_horizon(alpha, params), self.config["experiment"].get("horizon") or 0)
        cfg = self.birkhoff_config(alpha, horizon)
        suite = run_suite(cfg, params, workers)
        payload = {"label": alpha.label, "alpha": alpha.to_dict(), "horizon": horizon,
                   "report": suite.to_dict()}
        write_json(self._path("verify_report.json"), payload, self._header("verification suite"))
        lines = [f"{'check':<28}{'kind':<7}{'pass':<6}{'instances':>10}  worst_ratio"]
        for report in suite.sub_reports:
            for leaf in report.leaves():
                worst = "" if leaf.worst_ratio is None else f"{float(leaf.worst_ratio):.6g}"
                lines.append(f"{leaf.lemma_id:<28}{leaf.kind:<7}{str(leaf.passed).lower():<6}"
                             f"{leaf.instances_checked:>10}  {worst}")
        failed = suite.hard_failed
        return {"success": not failed, "error": False, "content": "\n".join(lines),
                "exit_code": 1 if failed else 0, "report": suite}

    # ─── report ──────────────────────────────────

    def cmd_report(self, run_dir=None, xlsx=False):
        run_dir = run_dir or self.config["output"]["dir"]
        stages_path = os.path.join(run_dir, "stages.csv")
        verify_path = os.path.join(run_dir, "verify_report.json")
        if not os.path.exists(stages_path) and not os.path.exists(verify_path):
            raise UsageError(f"no stages.csv or verify_report.json in {run_dir}")

        sheets, lines, summary = [], [], {}
        if os.path.exists(stages_path):
            headers, rows = read_csv_table(stages_path)
            sheets.append(("stages", headers, rows))
            lines.append("  ".join(f"{h:>12}" for h in headers[:5]))
            lines += ["  ".join(f"{c[:12]:>12}" for c in row[:5]) for row in rows]
        if os.path.exists(verify_path):
            data = read_json(verify_path)
            checks = [[leaf["lemma_id"], leaf["kind"], str(leaf["pass"]).lower(),
                       leaf["instances_checked"], leaf.get("worst_ratio")]
                      for leaf in _leaves(data["report"])]
            sheets.append(("verify", ["check", "kind", "pass", "instances", "worst_ratio"], checks))
            summary = {"alpha": data.get("label"), "hard checks failed": sum(
                1 for c in checks if c[1] == "hard" and c[2] == "false")}
            lines.append("")
            lines += [f"{c[0]:<28}{c[1]:<7}{c[2]}" for c in checks]

        result = {"success": True, "error": False, "content": "\n".join(lines)}
        if xlsx:
            written = generate_excel("rotdiff run", sheets, os.path.join(run_dir, "report.xlsx"),
                                     summary=summary)
            if not written.get("success"):
                return {**written, "exit_code": 2}
            result["content"] += f"\n\n{written['content']}"
        return result


def _leaves(report):
    subs = report.get("sub_reports")
    if not subs:
        return [report]
    return [leaf for sub in subs for leaf in _leaves(sub)]


def _mid(x):
    return x if isinstance(x, (int, Fraction)) else midpoint(x)

