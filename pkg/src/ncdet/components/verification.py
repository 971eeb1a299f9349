"""Seeded verification suites.

Each suite is a function of a ``TrialContext``: it draws generic samples from
the trial's own generator (seed = run seed + trial index) and records named
checks. A check is True, False, or None when one side is undefined on the
sample. A trial fails if any check is False, is skipped if nothing could be
checked, and passes otherwise.
"""
import json
import time
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from joblib import Parallel, delayed
from tqdm import tqdm

from ncdet import logger
from ncdet.algebra.dets import (
    Ordering,
    delta,
    dieudonne_pre,
    dieudonne_sq,
    gauss_udl,
    moore,
    nu_2x2_closed_form,
    nu_matrix,
    nu_via_moore,
    predet,
    study,
)
from ncdet.algebra.matrices import ElementaryOp, LabeledMatrix, SubmatrixSpec, col_op, determinant, row_op
from ncdet.algebra.permanents import (
    ExpansionTables,
    enumerate_paths,
    evaluate_terms,
    monomial_census,
    mu_count,
    q_polynomial,
    rhs_theorem33,
)
from ncdet.algebra.quasidet import (
    QuasidetResult,
    QuasiminorTable,
    check_heredity,
    check_homological,
    invert,
    quasidet,
    quasidet_block,
    quasidet_recursive,
    sylvester_compress,
)
from ncdet.algebra.scalars import ScalarKind, Tolerance, close, conjugate, format_scalar, is_zero, norm, real_part
from ncdet.components.generator import RandomMatrixGenerator
from ncdet.components.matrix_io import serialize_matrix
from ncdet.entity.config_entity import LimitsConfig, VerificationConfig
from ncdet.entity.report_entity import FailureRecord, RunReport, TrialOutcome
from ncdet.exceptions import (
    CapExceededError,
    DegenerateStreamError,
    DimensionMismatchError,
    QuasidetUndefinedError,
    SingularMatrixError,
    UnsupportedScalarError,
)
from ncdet.utils.common import save_json

SUITE_MIN_N = {"homology": 2, "heredity": 2, "sylvester": 2, "rowcol": 2}

# Above this order the predeterminant identities run on a random subset of ordering pairs
ALL_ORDERINGS_MAX_N = 3
SAMPLED_ORDERING_PAIRS = 12


@dataclass
class TrialContext:
    trial: int
    seed: int
    n: int
    kind: ScalarKind
    tolerance: Tolerance
    limits: LimitsConfig
    generator: RandomMatrixGenerator
    checks: List[Tuple[str, Optional[bool], str]] = field(default_factory=list)
    samples: List[LabeledMatrix] = field(default_factory=list)

    @property
    def tol(self) -> Optional[Tolerance]:
        return None if self.kind.is_exact else self.tolerance

    @property
    def labels(self) -> Tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def sample(self, hermitian: bool = False) -> LabeledMatrix:
        if hermitian:
            A = self.generator.generic_hermitian(self.n)
        else:
            A = self.generator.generic(self.n)
        self.samples.append(A)
        return A

    def pick(self, choices, exclude=()):
        pool = [x for x in choices if x not in exclude]
        return pool[int(self.generator.rng.integers(len(pool)))]

    def close(self, x, y) -> bool:
        return close(x, y, self.tol)

    def check(self, name: str, ok: Optional[bool], detail: str = ""):
        self.checks.append((name, ok, detail))

    def expect_equal(self, name: str, x, y):
        ok = self.close(x, y)
        detail = "" if ok else f"{format_scalar(x)} != {format_scalar(y)}"
        self.check(name, ok, detail)

    def expect_same(self, name: str, before: QuasidetResult, after: QuasidetResult, expected=None):
        if not (before.defined and after.defined):
            self.check(name, None)
            return
        self.expect_equal(name, after.value, before.value if expected is None else expected)

    def is_real(self, x) -> bool:
        return self.close(x, self.kind.embed(real_part(x)))


def _all_entries(A: LabeledMatrix):
    return [(i, j) for i in A.row_labels for j in A.col_labels]


def _singular_variant(ctx: TrialContext, A: LabeledMatrix) -> LabeledMatrix:
    """A with its first row replaced by a left multiple of its second (the zero matrix at n = 1)."""
    if ctx.n == 1:
        return LabeledMatrix.zeros(ctx.kind, A.row_labels, A.col_labels)
    lam = ctx.generator.nonzero_scalar()
    rows = A.to_lists()
    rows[0] = [lam * x for x in rows[1]]
    return LabeledMatrix.from_rows(ctx.kind, rows, A.row_labels, A.col_labels)


def _ordering_pairs(ctx: TrialContext) -> List[Tuple[Ordering, Ordering]]:
    if ctx.n <= ALL_ORDERINGS_MAX_N:
        orderings = list(Ordering.all(ctx.labels))
        return [(I, J) for I in orderings for J in orderings]
    rng = ctx.generator.rng
    pairs = []
    for _ in range(SAMPLED_ORDERING_PAIRS):
        I = Ordering(tuple(ctx.labels[p] for p in rng.permutation(ctx.n)))
        J = Ordering(tuple(ctx.labels[p] for p in rng.permutation(ctx.n)))
        pairs.append((I, J))
    return pairs


# -- suites -------------------------------------------------------------------


def suite_homology(ctx: TrialContext):
    A = ctx.sample()
    table = QuasiminorTable(A)
    labels = ctx.labels
    for i, j in _all_entries(A):
        for l in labels:
            for s in labels:
                if l != j and s != i:
                    row_ok, _ = check_homological(A, i, j, l, s, None, None, ctx.tol, table)
                    ctx.check(f"homological row relation i={i} j={j} l={l} s={s}", row_ok)
        for k in labels:
            for t in labels:
                if k != i and t != j:
                    _, col_ok = check_homological(A, i, j, None, None, k, t, ctx.tol, table)
                    ctx.check(f"homological column relation i={i} j={j} k={k} t={t}", col_ok)


def suite_heredity(ctx: TrialContext):
    A = ctx.sample()
    for k in range(1, ctx.n):
        for i in A.row_labels[:k]:
            for j in A.col_labels[:k]:
                ctx.check(f"heredity k={k} ({i},{j})", check_heredity(A, k, i, j, ctx.tol))


def suite_sylvester(ctx: TrialContext):
    A = ctx.sample()
    whole = {(i, j): quasidet(A, i, j) for i, j in _all_entries(A)}
    for size in range(1, ctx.n):
        for chosen in combinations(ctx.labels, size):
            B = sylvester_compress(A, SubmatrixSpec(chosen, chosen))
            for i in B.row_labels:
                for j in B.col_labels:
                    ctx.expect_equal(f"sylvester pivot={chosen} ({i},{j})", quasidet(B, i, j), whole[i, j])


def suite_rowcol(ctx: TrialContext):
    A = ctx.sample()
    rng = ctx.generator.rng
    labels = ctx.labels
    base = {(i, j): quasidet_block(A, i, j) for i, j in _all_entries(A)}

    row_order = [labels[p] for p in rng.permutation(ctx.n)]
    col_order = [labels[p] for p in rng.permutation(ctx.n)]
    P = A.permute(row_order, col_order)
    for (i, j), before in base.items():
        ctx.expect_same(f"permutation ({i},{j})", before, quasidet_block(P, i, j))

    lam = ctx.generator.nonzero_scalar()
    i0 = ctx.pick(labels)
    B = row_op(A, ElementaryOp.SCALE, i0, None, lam)
    for (i, j), before in base.items():
        expected = lam * before.value if (i == i0 and before.defined) else None
        ctx.expect_same(f"left row scaling row={i0} ({i},{j})", before, quasidet_block(B, i, j), expected)

    j0 = ctx.pick(labels)
    C = col_op(A, ElementaryOp.SCALE, j0, None, lam)
    for (i, j), before in base.items():
        expected = before.value * lam if (j == j0 and before.defined) else None
        ctx.expect_same(f"right column scaling col={j0} ({i},{j})", before, quasidet_block(C, i, j), expected)

    p0 = ctx.pick(labels)
    k0 = ctx.pick(labels, exclude=(p0,))
    D = row_op(A, ElementaryOp.ADD, p0, k0, lam)
    for (i, j), before in base.items():
        if i != k0:
            ctx.expect_same(f"row addition p={p0} k={k0} ({i},{j})", before, quasidet_block(D, i, j))

    q0 = ctx.pick(labels)
    l0 = ctx.pick(labels, exclude=(q0,))
    E = col_op(A, ElementaryOp.ADD, q0, l0, lam)
    for (i, j), before in base.items():
        if j != l0:
            ctx.expect_same(f"column addition q={q0} l={l0} ({i},{j})", before, quasidet_block(E, i, j))


def suite_oracle(ctx: TrialContext):
    A = ctx.sample()
    for i, j in _all_entries(A):
        ctx.expect_same(f"block vs recursive ({i},{j})", quasidet_block(A, i, j), quasidet_recursive(A, i, j))


def suite_commutative(ctx: TrialContext):
    A = ctx.sample()
    det = determinant(A)
    for p, q in _all_entries(A):
        minor = determinant(A.delete_rc({p}, {q}))
        signed = det if (p + q) % 2 == 0 else -det
        ctx.expect_equal(f"ratio law ({p},{q})", quasidet(A, p, q) * minor, signed)


def suite_predet(ctx: TrialContext):
    A = ctx.sample()
    factors = gauss_udl(A)
    rebuilt = factors.product()
    ctx.check(
        "U D L = A",
        all(ctx.close(x, y) for x, y in zip(rebuilt.entries.flat, A.entries.flat)),
    )
    d = delta(A)
    ctx.expect_equal("dieudonne predeterminant = Delta", dieudonne_pre(A), d)

    pairs = _ordering_pairs(ctx)
    squared = dieudonne_sq(A)
    for I, J in pairs:
        ctx.expect_equal(f"nu(D_I,J) I={I.seq} J={J.seq}", norm(predet(A, I, J)), squared)

    H = ctx.sample(hermitian=True)
    dH = delta(H)
    ctx.check("Delta of a Hermitian matrix is real", ctx.is_real(dH))
    # p(I)p(J) D_I,J = Delta holds for I = J at every order and for every pair at n = 2;
    # beyond that only the norms agree
    for I in dict.fromkeys(I for I, _ in pairs):
        ctx.expect_equal(f"Hermitian Delta = D_I,I I={I.seq}", predet(H, I, I), dH)
    for I, J in pairs:
        if ctx.n == 2:
            sign = I.parity() * J.parity()
            ctx.expect_equal(f"Hermitian Delta = p(I)p(J) D_I,J I={I.seq} J={J.seq}", sign * predet(H, I, J), dH)
        elif I != J:
            ctx.expect_equal(f"Hermitian nu(D_I,J) = Delta^2 I={I.seq} J={J.seq}", norm(predet(H, I, J)), norm(dH))


def suite_thm33(ctx: TrialContext):
    A = ctx.sample()
    tables = ExpansionTables(A, ctx.limits.permanent_max_n)
    nu_A = tables.nu(A.row_labels, A.col_labels)
    for i, j in _all_entries(A):
        rhs = rhs_theorem33(A, i, j, max_n=tables.max_n, tables=tables)
        nu_sub = tables.nu(set(A.row_labels) - {i}, set(A.col_labels) - {j})
        result = quasidet_block(A, i, j)
        if result.defined:
            ctx.expect_equal(f"expansion = nu(A^ij) |A|_ij ({i},{j})", rhs, nu_sub * result.value)
        else:
            ctx.check(f"expansion = nu(A^ij) |A|_ij ({i},{j})", None)
        ctx.expect_equal(f"Q recurrence ({i},{j})", q_polynomial(A, i, j, tables=tables), rhs)
        # nu(B^c) is real, so conjugating every pi conjugates the whole sum
        ctx.expect_equal(
            f"expansion times conjugate expansion = nu(A) nu(A^ij) ({i},{j})",
            rhs * conjugate(rhs),
            ctx.kind.embed(nu_A * nu_sub),
        )

    H = ctx.sample(hermitian=True)
    h_tables = ExpansionTables(H, ctx.limits.permanent_max_n)
    for p, q in _all_entries(H):
        q_pq = q_polynomial(H, p, q, tables=h_tables)
        ctx.expect_equal(
            f"Hermitian conj(Q_pq) = Q_qp ({p},{q})", conjugate(q_pq), q_polynomial(H, q, p, tables=h_tables)
        )
        ctx.expect_equal(
            f"Hermitian Q recurrence ({p},{q})", q_polynomial(H, p, q, hermitian=True, tables=h_tables), q_pq
        )


def suite_moore(ctx: TrialContext):
    H = ctx.sample(hermitian=True)
    cap = ctx.limits.moore_max_n
    M = moore(H, max_n=cap)
    ctx.expect_equal("Delta(H) = M(H)", delta(H), M)
    ctx.check("Moore determinant of a Hermitian matrix is real", ctx.is_real(M))
    ctx.expect_equal("cycles led by their largest element", moore(H, leader="max", max_n=cap), M)


def suite_study(ctx: TrialContext):
    A = ctx.sample()
    cap = ctx.limits.moore_max_n
    S = study(A)
    M = moore(A @ A.hermitian_dual(), max_n=cap)
    ctx.expect_equal("S(A) = M(AA*)", S, real_part(M))
    ctx.check("M(AA*) is real", ctx.is_real(M))
    ctx.check("S(A) > 0 on an invertible sample", S > 0)
    if ctx.kind.is_exact:
        singular = _singular_variant(ctx, A)
        ctx.check("S(A) = 0 on a singular sample", study(singular) == 0)
        ctx.check("M(AA*) = 0 on a singular sample", is_zero(moore(singular @ singular.hermitian_dual(), max_n=cap)))


def suite_norm(ctx: TrialContext):
    A, B = ctx.sample(), ctx.sample()
    nu_A = nu_via_moore(A)
    A_star = A.hermitian_dual()
    ctx.expect_equal("nu(AB) = nu(A) nu(B)", nu_via_moore(A @ B), nu_A * nu_via_moore(B))
    ctx.expect_equal("nu(A) = Delta(AA*)", delta(A @ A_star), ctx.kind.embed(nu_A))
    ctx.expect_equal("nu(Delta(A) Delta(A*)) = nu(A)^2", norm(delta(A) * delta(A_star)), nu_A * nu_A)
    ctx.expect_equal("recursive nu = nu via Moore", nu_matrix(A), nu_A)
    ctx.expect_equal("nu(A*) = nu(A)", nu_via_moore(A_star), nu_A)

    try:
        invert(A)
        invertible = True
    except SingularMatrixError:
        invertible = False
    ctx.check("nu(A) != 0 iff A is invertible", invertible and not is_zero(nu_A))

    if ctx.n >= 2:
        p = ctx.pick(ctx.labels)
        k = ctx.pick(ctx.labels, exclude=(p,))
        shifted = row_op(A, ElementaryOp.ADD, p, k, ctx.generator.scalar())
        ctx.expect_equal(f"nu invariant under row addition p={p} k={k}", nu_via_moore(shifted), nu_A)
    if ctx.n == 2:
        ctx.expect_equal("2x2 closed form", nu_2x2_closed_form(A), nu_A)
    if ctx.kind.is_exact:
        singular = _singular_variant(ctx, A)
        try:
            invert(singular)
            inverted = True
        except SingularMatrixError:
            inverted = False
        ctx.check("nu = 0 on a non-invertible sample", not inverted and is_zero(nu_via_moore(singular)))


def suite_census(ctx: TrialContext):
    n = ctx.n
    mu = mu_count(n)
    ctx.check("mu recurrence", mu == (1 if n == 1 else 1 + (n - 1) ** 2 * mu_count(n - 1)))
    ctx.check("census by submatrix order sums to mu", sum(monomial_census(n).values()) == mu)
    i, j = ctx.pick(ctx.labels), ctx.pick(ctx.labels)
    terms = enumerate_paths(n, i, j, max_n=ctx.limits.permanent_max_n)
    ctx.check(f"enumerated monomials at ({i},{j})", len(terms) == mu)
    if n <= 4:
        A = ctx.sample()
        ctx.expect_equal(
            f"symbolic expansion evaluates to the numeric one ({i},{j})",
            evaluate_terms(A, terms),
            rhs_theorem33(A, i, j, max_n=ctx.limits.permanent_max_n),
        )


SUITE_CHECKS: Dict[str, Callable[[TrialContext], None]] = {
    "homology": suite_homology,
    "heredity": suite_heredity,
    "sylvester": suite_sylvester,
    "rowcol": suite_rowcol,
    "oracle": suite_oracle,
    "commutative": suite_commutative,
    "predet": suite_predet,
    "thm33": suite_thm33,
    "moore": suite_moore,
    "study": suite_study,
    "norm": suite_norm,
    "census": suite_census,
}


def suite_supports(suite: str, kind: ScalarKind) -> bool:
    if suite == "commutative":
        return kind.is_commutative
    if suite == "study":
        return kind.is_quaternion
    return True


def run_trial(config: VerificationConfig, trial: int) -> TrialOutcome:
    seed = config.seed + trial
    ctx = TrialContext(
        trial=trial,
        seed=seed,
        n=config.n,
        kind=config.scalar,
        tolerance=config.tolerance,
        limits=config.limits,
        generator=RandomMatrixGenerator(config.scalar, seed, config.generator),
    )
    try:
        SUITE_CHECKS[config.suite](ctx)
    except DegenerateStreamError as e:
        logger.debug(f"trial {trial} skipped: {e}")
        return TrialOutcome(trial, seed, "skip")
    except (QuasidetUndefinedError, SingularMatrixError) as e:
        # samples are certified generic, so an undefined value is a failed identity
        ctx.check(f"defined on a generic sample: {type(e).__name__}", False, str(e))

    failed = [c for c in ctx.checks if c[1] is False]
    ran = sum(1 for c in ctx.checks if c[1] is not None)
    skipped = len(ctx.checks) - ran
    if failed:
        record = FailureRecord(
            trial=trial,
            seed=seed,
            checks=[name for name, _, _ in failed],
            detail=failed[0][2],
            matrices=[json.loads(serialize_matrix(A)) for A in ctx.samples],
        )
        logger.warning(f"{config.suite}: trial {trial} failed (seed={seed}): {', '.join(record.checks[:3])}")
        return TrialOutcome(trial, seed, "fail", ran, skipped, record)
    return TrialOutcome(trial, seed, "pass" if ran else "skip", ran, skipped)


class IdentityVerification:
    def __init__(self, config: VerificationConfig):
        self.config = config
        self._validate()

    def _validate(self):
        config = self.config
        if config.suite not in SUITE_CHECKS:
            raise ValueError(f"unknown suite {config.suite!r}")
        if config.trials < 1:
            raise ValueError(f"trials must be positive, got {config.trials}")
        min_n = SUITE_MIN_N.get(config.suite, 1)
        if config.n < min_n:
            raise DimensionMismatchError(f"suite {config.suite} needs n >= {min_n}, got {config.n}")
        if not suite_supports(config.suite, config.scalar):
            raise UnsupportedScalarError(f"suite {config.suite} does not run on {config.scalar.value}")
        if config.suite in ("thm33", "census") and config.n > config.limits.permanent_max_n:
            raise CapExceededError(config.suite, config.n, config.limits.permanent_max_n)
        if config.suite in ("moore", "study", "norm") and config.n > config.limits.moore_max_n:
            raise CapExceededError(config.suite, config.n, config.limits.moore_max_n)

    def run(self) -> RunReport:
        config = self.config
        logger.info(
            f"suite {config.suite}: n={config.n}, trials={config.trials}, seed={config.seed}, "
            f"scalar={config.scalar.value}"
        )
        start = time.perf_counter()
        trials = range(config.trials)
        if config.n_jobs == 1:
            progress = tqdm(trials, desc=f"{config.suite} n={config.n}", disable=not config.progress, leave=False)
            outcomes = [run_trial(config, t) for t in progress]
        else:
            outcomes = Parallel(n_jobs=config.n_jobs)(delayed(run_trial)(config, t) for t in trials)
        outcomes = sorted(outcomes, key=lambda o: o.trial)

        report = RunReport(
            suite=config.suite,
            scalar=config.scalar.value,
            n=config.n,
            seed=config.seed,
            trials=config.trials,
            passes=sum(1 for o in outcomes if o.status == "pass"),
            skips=sum(1 for o in outcomes if o.status == "skip"),
            failures=[o.failure for o in outcomes if o.status == "fail"],
            checks_run=sum(o.checks_run for o in outcomes),
            wall_time=round(time.perf_counter() - start, 3),
        )
        logger.info(
            f"suite {config.suite} n={config.n}: {report.passes} passed, {report.skips} skipped, "
            f"{len(report.failures)} failed ({report.checks_run} checks, {report.wall_time}s)"
        )
        return report

    def report_path(self) -> Path:
        config = self.config
        return Path(config.root_dir) / f"{config.suite}_n{config.n}_{config.scalar.value}.json"

    def save_report(self, report: RunReport) -> Path:
        path = self.report_path()
        save_json(path=path, data=report.to_dict())
        return path
