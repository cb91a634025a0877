import json
import math
import tempfile
from dataclasses import replace
from pathlib import Path

import numpy as np
from numpy.testing import assert_array_equal

from antipode.control import ControllerKind
from antipode.dynamics import SimulationMode
from antipode.errors import HelpfulException
from antipode.harness import (
    RUN_COLUMNS,
    CellStats,
    CheckResult,
    ExperimentConfig,
    OutputFormat,
    RunLog,
    SweepSummary,
    VerifyReport,
    altitude_drop,
    emit,
    pfm,
    read_run_csv,
    run_experiment,
)
from antipode.harness.emit import SWEEP_COLUMNS, default_file_name, report_document, run_document
from antipode.harness.errors import InvalidConfiguration, OutputFailure
from antipode.reference import YawManeuverProfile
from antipode.utils_for_tests import (
    TestCaseWithOutputFixtures,
    synthetic_run_log,
    validate_output,
)

SHORT = ExperimentConfig(
    noise=None, window=0.2, profile=YawManeuverProfile(t_hover=0.2, t_final=1.2)
)


def _summary() -> SweepSummary:
    return SweepSummary(
        ic_pairs=((3.0, 120.0),),
        controllers=(ControllerKind.BENCHMARK, ControllerKind.SWITCHING),
        repeats=1,
        rng_seed=0,
        cells={
            (0, ControllerKind.BENCHMARK): CellStats.from_samples([(2.0, 8.0)]),
            (0, ControllerKind.SWITCHING): CellStats.from_samples([(1.0, 4.0)]),
        },
    )


class TestEmit(TestCaseWithOutputFixtures):
    log: RunLog

    @classmethod
    def setUpClass(cls) -> None:
        super().setUpClass()
        cls.log = run_experiment(SHORT, ControllerKind.SWITCHING)

    def setUp(self) -> None:
        super().setUp()
        self._tmp = tempfile.TemporaryDirectory()
        self.out = Path(self._tmp.name)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_run_csv_header_and_rows(self) -> None:
        path = emit(self.log, OutputFormat.CSV, self.out / "run.csv")
        lines = path.read_text(encoding="utf-8").splitlines()
        self.assertEqual(lines[0], ",".join(RUN_COLUMNS))
        self.assertEqual(len(lines), len(self.log) + 1)

    def test_run_csv_keeps_every_digit(self) -> None:
        path = emit(self.log, OutputFormat.CSV, self.out / "run.csv")
        assert_array_equal(read_run_csv(path).as_table(), self.log.as_table())

    def test_empty_log_is_a_bare_header(self) -> None:
        path = emit(RunLog.empty(), OutputFormat.CSV, self.out / "empty.csv")
        self.assertEqual(path.read_text(encoding="utf-8"), ",".join(RUN_COLUMNS) + "\n")
        self.assertEqual(len(read_run_csv(path)), 0)

    def test_creates_missing_directories(self) -> None:
        path = emit(self.log, OutputFormat.JSON, self.out / "a" / "b" / "run.json")
        document = json.loads(path.read_text(encoding="utf-8"))
        self.assertEqual(document["controller"], "switching")
        self.assertEqual(len(document["t"]), len(self.log))
        self.assertEqual(len(document["q"][0]), 4)
        self.assertNotIn("r", document)
        self.assertNotIn("altitude_drop", document)
        figures = pfm(self.log, SHORT.t0, SHORT.tf)
        self.assertEqual(document["window"], [SHORT.t0, SHORT.tf])
        self.assertEqual(document["gamma_tau"], figures.gamma_tau)
        self.assertEqual(document["gamma_p"], figures.gamma_p)

    def test_run_svg_has_two_panels(self) -> None:
        path = emit(self.log, OutputFormat.SVG, self.out / "run.svg")
        svg = path.read_text(encoding="utf-8")
        self.assertTrue(svg.lstrip().startswith("<?xml"))
        self.assertEqual(svg.count('<g id="axes_'), 2)

    def test_sweep_csv(self) -> None:
        path = emit(_summary(), OutputFormat.CSV, self.out / "sweep.csv")
        lines = path.read_text(encoding="utf-8").splitlines()
        self.assertEqual(lines[0], ",".join(SWEEP_COLUMNS))
        self.assertEqual(lines[1], "3,120,benchmark,2,nan,8,nan,1,0")
        self.assertEqual(lines[2], "3,120,switching,1,nan,4,nan,1,0")

    def test_sweep_json_writes_null_for_missing_deviation(self) -> None:
        path = emit(_summary(), OutputFormat.JSON, self.out / "sweep.json")
        document = json.loads(path.read_text(encoding="utf-8"))
        self.assertIsNone(document["cells"][0]["esd_gamma_tau"])
        self.assertEqual(document["cells"][1]["controller"], "switching")
        self.assertEqual(document["reductions_percent"][0]["gamma_tau"], 50.0)

    def test_sweep_svg_has_two_panels(self) -> None:
        path = emit(_summary(), OutputFormat.SVG, self.out / "sweep.svg")
        self.assertEqual(path.read_text(encoding="utf-8").count('<g id="axes_'), 2)

    def test_report_document(self) -> None:
        report = VerifyReport(
            (
                CheckResult("fixed_points", True, 0.0, 1e-12),
                CheckResult("integration_order", False, math.nan, 4.0, detail="diverged"),
            )
        )
        document = report_document(report)
        self.assertFalse(document["passed"])
        self.assertEqual(document["checks"][1]["name"], "integration_order")
        self.assertIsNone(document["checks"][1]["measured"])
        self.assertEqual(document["checks"][1]["detail"], "diverged")

    @validate_output
    def test_rejects_report_as_csv(self) -> HelpfulException:
        with self.assertRaises(InvalidConfiguration) as ctx:
            emit(VerifyReport(()), OutputFormat.CSV, self.out / "verify.csv")
        return ctx.exception

    def test_unwritable_path(self) -> None:
        blocker = self.out / "file"
        blocker.write_text("", encoding="utf-8")
        with self.assertRaises(OutputFailure):
            emit(self.log, OutputFormat.CSV, blocker / "run.csv")

    def test_default_file_names(self) -> None:
        self.assertEqual(default_file_name(self.log, OutputFormat.CSV), "run_switching.csv")
        self.assertEqual(default_file_name(RunLog.empty(), OutputFormat.SVG), "run_run.svg")
        self.assertEqual(default_file_name(_summary(), OutputFormat.JSON), "sweep.json")
        self.assertEqual(default_file_name(VerifyReport(()), OutputFormat.JSON), "verify.json")


class TestReadRunCsv(TestCaseWithOutputFixtures):
    def setUp(self) -> None:
        super().setUp()
        self._tmp = tempfile.TemporaryDirectory()
        self.out = Path(self._tmp.name)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_rejects_foreign_header(self) -> None:
        path = self.out / "other.csv"
        path.write_text("a,b,c\n1,2,3\n", encoding="utf-8")
        with self.assertRaises(OutputFailure):
            read_run_csv(path)

    def test_rejects_non_numeric_cells(self) -> None:
        path = self.out / "broken.csv"
        row = ["0"] * len(RUN_COLUMNS)
        row[3] = "abc"
        path.write_text(",".join(RUN_COLUMNS) + "\n" + ",".join(row) + "\n", encoding="utf-8")
        with self.assertRaises(OutputFailure):
            read_run_csv(path)

    def test_missing_file(self) -> None:
        with self.assertRaises(OutputFailure):
            read_run_csv(self.out / "missing.csv")

    def test_reads_synthetic_rows(self) -> None:
        table = np.arange(2 * len(RUN_COLUMNS), dtype=float).reshape(2, -1) / 7.0
        path = self.out / "rows.csv"
        emit(RunLog.from_table(table), OutputFormat.CSV, path)
        assert_array_equal(read_run_csv(path).as_table(), table)


class TestRunDocument(TestCaseWithOutputFixtures):
    def test_six_dof_runs_report_the_altitude_drop(self) -> None:
        cfg = replace(SHORT, mode=SimulationMode.SIX_DOF)
        log = run_experiment(cfg, ControllerKind.SWITCHING)
        document = run_document(log)
        self.assertEqual(len(document["r"]), len(log))
        self.assertEqual(document["altitude_drop"], altitude_drop(log, cfg.t0, cfg.tf))
        self.assertGreaterEqual(document["altitude_drop"], 0.0)

    def test_logs_without_a_window_carry_no_figures(self) -> None:
        document = run_document(synthetic_run_log([0.0, 0.5, 1.0]))
        self.assertNotIn("gamma_tau", document)
        self.assertNotIn("window", document)
