import json

import pytest

from ncdet.algebra import quasidet as quasidet_module
from ncdet.algebra.matrices import LabeledMatrix
from ncdet.algebra.scalars import ScalarKind
from ncdet.components import verification
from ncdet.components.report_summary import SUMMARY_COLUMNS, VerificationSummary
from ncdet.components.verification import IdentityVerification, run_trial, suite_supports
from ncdet.constants import SUITES
from ncdet.entity.config_entity import EvaluationConfig, LimitsConfig, VerificationConfig
from ncdet.entity.report_entity import RunReport
from ncdet.exceptions import CapExceededError, DimensionMismatchError, QuasidetUndefinedError, UnsupportedScalarError


def _config(tmp_path, suite, n, trials=2, scalar=ScalarKind.RATIONAL_QUATERNION, **kwargs):
    return VerificationConfig(
        root_dir=tmp_path / "verification",
        suite=suite,
        n=n,
        trials=trials,
        seed=42,
        scalar=scalar,
        save_report=False,
        **kwargs,
    )


def _run(tmp_path, suite, n, **kwargs) -> RunReport:
    return IdentityVerification(_config(tmp_path, suite, n, **kwargs)).run()


@pytest.mark.parametrize(
    "suite, n",
    [
        ("homology", 3),
        ("heredity", 3),
        ("sylvester", 3),
        ("rowcol", 3),
        ("oracle", 3),
        ("predet", 3),
        ("thm33", 3),
        ("moore", 3),
        ("study", 2),
        ("norm", 2),
        ("census", 4),
    ],
)
def test_exact_suites_pass(tmp_path, suite, n):
    report = _run(tmp_path, suite, n)
    assert report.ok, report.failures
    assert report.passes == report.trials
    assert report.checks_run > 0


def test_commutative_suite(tmp_path):
    report = _run(tmp_path, "commutative", 3, scalar=ScalarKind.RATIONAL_COMPLEX)
    assert report.ok
    assert report.checks_run == 2 * 9


def test_larger_orders(tmp_path):
    assert _run(tmp_path, "predet", 4, trials=1).ok
    assert _run(tmp_path, "thm33", 4, trials=1).ok
    assert _run(tmp_path, "norm", 3, trials=1).ok


@pytest.mark.parametrize("suite", ["homology", "heredity", "sylvester", "rowcol", "thm33", "moore", "oracle"])
def test_float_suites_pass_within_tolerance(tmp_path, suite):
    assert _run(tmp_path, suite, 3, scalar=ScalarKind.F64_QUATERNION).ok


def test_one_by_one_runs(tmp_path):
    assert _run(tmp_path, "study", 1).ok
    assert _run(tmp_path, "census", 1, trials=1).ok


def test_trials_use_consecutive_seeds(tmp_path):
    config = _config(tmp_path, "oracle", 2, trials=3)
    outcomes = [run_trial(config, t) for t in range(3)]
    assert [o.seed for o in outcomes] == [42, 43, 44]
    assert run_trial(config, 1) == outcomes[1]


def test_validation(tmp_path):
    with pytest.raises(DimensionMismatchError):
        IdentityVerification(_config(tmp_path, "homology", 1))
    with pytest.raises(UnsupportedScalarError):
        IdentityVerification(_config(tmp_path, "commutative", 2))
    with pytest.raises(UnsupportedScalarError):
        IdentityVerification(_config(tmp_path, "study", 2, scalar=ScalarKind.RATIONAL_COMPLEX))
    with pytest.raises(CapExceededError):
        IdentityVerification(_config(tmp_path, "thm33", 4, limits=LimitsConfig(permanent_max_n=3)))
    with pytest.raises(ValueError):
        IdentityVerification(_config(tmp_path, "oracle", 2, trials=0))


def test_suite_support_table():
    assert set(verification.SUITE_CHECKS) == set(SUITES)
    assert suite_supports("commutative", ScalarKind.F64_COMPLEX)
    assert not suite_supports("study", ScalarKind.RATIONAL)
    assert suite_supports("thm33", ScalarKind.RATIONAL_COMPLEX)


def test_failures_are_recorded_with_reproduction_data(tmp_path, monkeypatch):
    def broken(ctx):
        ctx.sample()
        ctx.check("always false", False, "forced")

    monkeypatch.setitem(verification.SUITE_CHECKS, "oracle", broken)
    report = _run(tmp_path, "oracle", 2, trials=2)
    assert not report.ok
    assert report.passes == 0
    assert [f.seed for f in report.failures] == [42, 43]
    failure = report.failures[0]
    assert failure.checks == ["always false"]
    assert failure.detail == "forced"
    assert failure.matrices[0]["n"] == 2


def test_runs_without_a_passing_trial_are_not_ok(tmp_path, monkeypatch):
    monkeypatch.setitem(verification.SUITE_CHECKS, "oracle", lambda ctx: ctx.check("undefined", None))
    report = _run(tmp_path, "oracle", 2, trials=3)
    assert report.skips == 3
    assert report.checks_run == 0
    assert not report.ok


def test_undefined_values_on_generic_samples_are_failures(tmp_path, monkeypatch):
    def undefined(ctx):
        ctx.sample()
        raise QuasidetUndefinedError(1, 2)

    monkeypatch.setitem(verification.SUITE_CHECKS, "oracle", undefined)
    report = _run(tmp_path, "oracle", 2, trials=2)
    assert not report.ok
    assert report.skips == 0
    assert [f.seed for f in report.failures] == [42, 43]
    failure = report.failures[0]
    assert failure.checks == ["defined on a generic sample: QuasidetUndefinedError"]
    assert "A^{ij} not invertible" in failure.detail
    assert failure.matrices[0]["n"] == 2


def test_broken_schur_complement_fails_heredity(tmp_path, monkeypatch):
    def zero_block(A, k):
        return LabeledMatrix.zeros(A.kind, A.row_labels[:k], A.col_labels[:k])

    monkeypatch.setattr(quasidet_module, "schur_complement", zero_block)
    report = _run(tmp_path, "heredity", 3, trials=5)
    assert not report.ok
    assert report.passes == 0
    assert report.skips == 0
    assert len(report.failures) == 5


def test_parallel_run_matches_serial(tmp_path):
    serial = _run(tmp_path, "oracle", 2, trials=4)
    parallel = _run(tmp_path, "oracle", 2, trials=4, n_jobs=2)
    assert parallel.passes == serial.passes
    assert parallel.checks_run == serial.checks_run


def test_report_is_saved_and_summarized(tmp_path):
    config = _config(tmp_path, "oracle", 2, trials=2)
    config.save_report = True
    config.root_dir.mkdir(parents=True)
    job = IdentityVerification(config)
    report = job.run()
    path = job.save_report(report)
    assert path.name == "oracle_n2_rational-quaternion.json"
    saved = json.loads(path.read_text())
    assert saved["failure_count"] == 0
    assert saved["ok"] is True
    assert saved["trials"] == 2

    summary_file = tmp_path / "summary.csv"
    summary = VerificationSummary(
        EvaluationConfig(root_dir=tmp_path, reports_dir=config.root_dir, summary_file=summary_file)
    )
    table = summary.save_summary()
    assert list(table.columns) == SUMMARY_COLUMNS
    assert table.loc[0, "suite"] == "oracle"
    assert summary_file.exists()


def test_report_counts_must_add_up():
    with pytest.raises(ValueError):
        RunReport("oracle", "rational", 2, 42, trials=3, passes=1, skips=1, failures=[], checks_run=0, wall_time=0.0)
