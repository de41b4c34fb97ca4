from __future__ import annotations

import json
import subprocess
import sys

import pytest

from qcong.congruence import Verdict
from qcong.families import registry
from qcong.families.registry import CONJECTURE, Family, Param
from qcong.harness.cli import main, split_params, UsageError
from qcong.harness.config import ConfigError, evaluate, expand_values, load_config, parse_config
from qcong.harness.log import format_table, read_log, repair_tail, strip_timing, summarise
from qcong.harness.sweep import exit_status, run_sweep

THM1_CONFIG = """\
# single-argument case
family = thm1
m = 1
n = 1..3
j = 0..1
r = 0..1
variants = plus, minus
workers = 1
output = thm1.jsonl
"""


@pytest.fixture
def thm1_cfg(tmp_path):
    path = tmp_path / "thm1.cfg"
    path.write_text(THM1_CONFIG)
    return load_config(str(path))


def stripped(path):
    return [strip_timing(r) for r in read_log(path)]


class TestConfig:
    def test_parse(self):
        cfg = parse_config(THM1_CONFIG)
        assert cfg.family == "thm1"
        assert cfg.ranges == {"m": "1", "n": "1..3", "j": "0..1", "r": "0..1"}
        assert cfg.variants == ("plus", "minus")
        assert cfg.workers == 1

    def test_round_trip(self):
        cfg = parse_config(THM1_CONFIG)
        again = parse_config(cfg.to_text())
        assert again == cfg
        assert again.to_text() == cfg.to_text()

    def test_output_relative_to_config(self, thm1_cfg, tmp_path):
        assert thm1_cfg.output == str(tmp_path / "thm1.jsonl")

    def test_lattice_order_and_size(self):
        tasks = list(parse_config(THM1_CONFIG).tasks())
        assert len(tasks) == 24
        assert tasks[0] == ({"m": 1, "n": (1,), "j": 0, "r": 0}, "plus")
        assert tasks[1] == ({"m": 1, "n": (1,), "j": 0, "r": 0}, "minus")
        assert tasks[-1] == ({"m": 1, "n": (3,), "j": 1, "r": 1}, "minus")

    def test_dependent_ranges(self):
        cfg = parse_config("family = thm1\nm = 1..2\nn = 1..2\nj = 0..m\n")
        tasks = list(cfg.tasks())
        # m=1: 2 tuples x 2 j; m=2: 4 tuples x 3 j; two variants each
        assert len(tasks) == (2 * 2 + 4 * 3) * 2

    def test_expressions(self):
        env = {"m": 3, "n": (1, 2, 4)}
        assert evaluate("m + 3", env) == 6
        assert evaluate("sum(n) // 2 - 1", env) == 2
        assert evaluate("max(n) * len(n)", env) == 12
        assert expand_values("0..m, 7", env) == [0, 1, 2, 3, 7]
        assert expand_values("standard, remark", env) == ["standard", "remark"]
        with pytest.raises(ConfigError):
            evaluate("__import__('os')", env)
        with pytest.raises(ConfigError):
            evaluate("k + 1", env)

    @pytest.mark.parametrize("text", [
        "m = 1\n",
        "family = thm1\nfamily = thm2\n",
        "family = thm1\njunk\n",
        "family = thm1\nresume = maybe\n",
    ])
    def test_errors(self, text):
        with pytest.raises(ConfigError):
            parse_config(text)

    def test_unknown_parameter_in_tasks(self):
        with pytest.raises(ConfigError):
            list(parse_config("family = thm3\nn = 1\ns = 1\nq = 2\n").tasks())

    def test_unknown_variant(self):
        with pytest.raises(ConfigError):
            list(parse_config("family = thm3\nn = 1\ns = 1\nvariants = up\n").tasks())

    def test_worker_env_override(self, monkeypatch):
        cfg = parse_config(THM1_CONFIG)
        monkeypatch.setenv("QCONG_WORKERS", "3")
        assert cfg.effective_workers() == 3


class TestSweep:
    def test_single_argument_lattice(self, thm1_cfg):
        report = run_sweep(thm1_cfg)
        assert report.verified == 24 and report.executed == 24
        assert exit_status(report) == 0
        records = read_log(thm1_cfg.output)
        assert len(records) == 24
        assert all(r["holds"] and r["status"] == "verified" for r in records)
        assert {r["schema"] for r in records} == {"qcong.verdict/1"}

    def test_resume_over_complete_log(self, thm1_cfg):
        run_sweep(thm1_cfg)
        before = stripped(thm1_cfg.output)
        thm1_cfg.resume = True
        report = run_sweep(thm1_cfg)
        assert report.executed == 0
        assert report.resumed == 24 and report.skipped == 24
        assert stripped(thm1_cfg.output) == before

    def test_resume_after_interruption(self, thm1_cfg, tmp_path):
        run_sweep(thm1_cfg)
        full = stripped(thm1_cfg.output)
        lines = open(thm1_cfg.output).read().splitlines(keepends=True)
        # keep 10 whole records plus half of the next one
        with open(thm1_cfg.output, "w") as fh:
            fh.writelines(lines[:10])
            fh.write(lines[10][: len(lines[10]) // 2])
        thm1_cfg.resume = True
        report = run_sweep(thm1_cfg)
        assert report.resumed == 10 and report.executed == 14
        assert stripped(thm1_cfg.output) == full

    def test_repair_tail(self, tmp_path):
        p = tmp_path / "log.jsonl"
        p.write_text('{"a":1}\n{"b":')
        assert repair_tail(str(p)) == 5
        assert p.read_text() == '{"a":1}\n'
        assert repair_tail(str(p)) == 0

    def test_deterministic_across_runs_and_workers(self, thm1_cfg, tmp_path):
        run_sweep(thm1_cfg)
        first = open(thm1_cfg.output).read()
        one = stripped(thm1_cfg.output)
        thm1_cfg.workers = 2
        run_sweep(thm1_cfg, output=str(tmp_path / "two.jsonl"))
        assert stripped(str(tmp_path / "two.jsonl")) == one
        thm1_cfg.workers = 1
        run_sweep(thm1_cfg)
        strip = lambda text: [json.dumps(strip_timing(json.loads(x)), sort_keys=True)  # noqa: E731
                              for x in text.splitlines()]
        assert strip(open(thm1_cfg.output).read()) == strip(first)

    def test_report_replays_counts(self, thm1_cfg):
        report = run_sweep(thm1_cfg)
        summary = summarise(read_log(thm1_cfg.output))
        assert dict(summary.counts) == {k: v for k, v in report.counts().items() if v}
        table = format_table(summary)
        assert "thm1" in table and "24" in table

    def test_constraint_violations_are_skipped(self, tmp_path):
        cfg = parse_config("family = thm3\nn = 1\ns = 1\nr = 0..1\nj = 0\nworkers = 1\n")
        report = run_sweep(cfg, output=str(tmp_path / "t3.jsonl"))
        assert report.verified == 2 and report.skipped == 2
        assert all("odd" in r for r in report.skip_reasons)

    def test_counterexample_stops_sweep_and_sets_status(self, tmp_path, monkeypatch):
        def fake(p, variant, strategy, conjectural):
            return Verdict(holds=p["j"] != 2, strategy=strategy, elapsed=0.0,
                           failed_factor="Φ2" if p["j"] == 2 else None)

        fam = Family("ConjAllJ", CONJECTURE, (Param("m"), Param("j")), fake)
        monkeypatch.setitem(registry.FAMILIES, "ConjAllJ", fam)
        cfg = parse_config("family = ConjAllJ\nm = 1\nj = 0..4\nvariants = plus\nworkers = 1\n")
        report = run_sweep(cfg, output=str(tmp_path / "c.jsonl"))
        assert report.counterexamples == 1 and report.stopped_early
        assert report.counterexample_records[0]["params"] == {"m": 1, "j": 2}
        assert "COUNTEREXAMPLE" in report.render()
        assert exit_status(report) == 2
        cfg.stop_on_counterexample = False
        report = run_sweep(cfg, output=str(tmp_path / "c.jsonl"))
        assert report.executed == 5 and report.counterexamples == 1


class TestCli:
    def run(self, *argv, capsys):
        code = main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err

    def test_verify_shows_quotient(self, capsys):
        code, out, _ = self.run("verify", "thm1", "--params", "m=1,n=1,j=0,r=0", "--variant", "plus",
                                "--show-quotient", capsys=capsys)
        assert code == 0
        assert out.splitlines()[-1] == "q^-1"

    def test_factor(self, capsys):
        code, out, _ = self.run("factor", "--qbinomial", "4", "2", capsys=capsys)
        assert code == 0 and out.strip() == "Φ3 · Φ4"
        code, out, _ = self.run("factor", "--poly", "1 - q^6", capsys=capsys)
        assert out.strip() == "-Φ1 · Φ2 · Φ3 · Φ6"
        code, out, _ = self.run("factor", "--super-catalan", "1", "1", capsys=capsys)
        assert out.strip() == "Φ2"

    def test_empty_report(self, tmp_path, capsys):
        log = tmp_path / "empty.jsonl"
        log.write_text("")
        code, out, _ = self.run("report", "--log", str(log), capsys=capsys)
        assert code == 0 and "all" in out

    def test_usage_errors(self, capsys):
        assert self.run("verify", "thm9", capsys=capsys)[0] == 64
        assert self.run("verify", "thm1", "--params", "m=1,n=1,j=5", capsys=capsys)[0] == 64
        assert self.run("verify", "thm1", "--params", "n=[1,2", capsys=capsys)[0] == 64
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 64

    def test_conjectural_flag(self, capsys):
        code, out, _ = self.run("verify", "thm1", "--params", "m=1,n=1,j=5", "--conjectural",
                                capsys=capsys)
        assert code == 0 and "holds" in out

    def test_failure_exit_codes(self, capsys):
        code, out, _ = self.run("identity", "lemma21", "--params", "n=2,s=2", "--variant", "3",
                                capsys=capsys)
        assert code == 1 and "FAILS" in out

    def test_sweep_and_report(self, tmp_path, capsys):
        cfg = tmp_path / "s.cfg"
        cfg.write_text(THM1_CONFIG)
        code, out, _ = self.run("sweep", "--config", str(cfg), capsys=capsys)
        assert code == 0 and "verified 24" in out
        code, out, _ = self.run("sweep", "--config", str(cfg), "--resume", capsys=capsys)
        assert "executed 0, resumed 24" in out
        code, out, _ = self.run("report", "--log", str(tmp_path / "thm1.jsonl"), capsys=capsys)
        assert code == 0 and "24" in out

    def test_list(self, capsys):
        code, out, _ = self.run("list", "--kind", "conjecture", capsys=capsys)
        ids = [line.split()[0] for line in out.splitlines()]
        assert code == 0 and "ConjFinal" in ids
        assert all(i.startswith("Conj") for i in ids)

    def test_split_params(self):
        assert split_params("m=2,n=[1,3],j=0") == {"m": "2", "n": "[1,3]", "j": "0"}
        with pytest.raises(UsageError):
            split_params("m=1,m=2")
        with pytest.raises(UsageError):
            split_params("m")

    def test_module_entry_point(self):
        out = subprocess.run([sys.executable, "-m", "qcong", "factor", "--qint", "6"],
                             capture_output=True, text=True)
        assert out.returncode == 0 and out.stdout.strip() == "Φ2 · Φ3 · Φ6"
