"""
gapdex: detect a two-cluster split in a univariate sample from its spacings,
simulate the statistic's null law and verify the supporting bounds
"""
import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from checks.analytic import verify_inequalities, verify_truncated_moments
from checks.base_check import LemmaCheckReport
from checks.half_limit import verify_half_limit
from checks.lemma31 import Lemma31Check
from checks.max_spacing import max_spacing_scaling
from checks.power import verify_power
from checks.remainder import verify_remainder_terms
from checks.uniform_ratio import verify_uniform_ratio
from config.settings import (
    DEFAULT_DIRECTIONS,
    DEFAULT_GRID,
    DEFAULT_N,
    DEFAULT_REPS,
    DEFAULT_SEED,
    DEFAULT_WORKERS,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    HALF_LIMIT_N,
    HALF_LIMIT_REPS,
    LEMMA31_EPS,
    LEMMA31_N,
    LEMMA31_REPS,
    MAX_SPACING_REPS,
    MAX_SPACING_SIZES,
    POWER_N,
    POWER_REPS,
    REMAINDER_REPS,
    REMAINDER_SIZES,
    SEED_ENV_VAR,
    TOP_COMPONENTS,
    UNIFORM_RATIO_N,
    UNIFORM_RATIO_REPS,
)
from evaluation.statistical_evaluator import (
    MonteCarloReport,
    SimConfig,
    convert_to_native,
    dumps_report,
    simulate_cluster_statistic,
    simulate_half_statistic,
)
from inference.gumbel import GumbelTest, cluster_test
from projection.scan import ProjectionResult, project_scan
from spacings.decomposition import ClusterSplit, Component, cluster_index, decompose
from spacings.sample import Sample, make_sample
from utils.errors import DomainError, GapdexError
from utils.series_io import load_series, load_table, parse_grid

logger = logging.getLogger("gapdex")

CHECK_NAMES = ('inequalities', 'truncated', 'lemma31', 'half_limit', 'uniform_ratio',
               'max_spacing', 'remainder', 'power')


@dataclass
class RunConfig:
    """Everything one invocation needs, assembled from the command line"""
    command: str
    input_path: Optional[str] = None
    column: Optional[str] = None
    n: Optional[int] = None
    reps: Optional[int] = None
    seed: int = 0
    grid: str = DEFAULT_GRID
    output_format: str = 'json'
    directions: int = DEFAULT_DIRECTIONS
    half: bool = False
    side: str = 'upper'
    check: str = 'all'
    eps: Optional[float] = None
    i_list: Tuple[int, ...] = ()
    sizes: Tuple[int, ...] = ()
    workers: int = DEFAULT_WORKERS


@dataclass(frozen=True)
class DetectionOutput:
    split: ClusterSplit
    test: GumbelTest
    components: Tuple[Component, ...]
    digest: Dict[str, float]
    projection: Optional[Dict[str, object]] = None

    def to_dict(self) -> dict:
        payload = {
            'split': self.split.to_dict(),
            'test': self.test.to_dict(),
            'top_components': [c.to_dict() for c in self.components],
            'input': dict(self.digest),
        }
        if self.projection is not None:
            payload['projection'] = dict(self.projection)
        return convert_to_native(payload)


def resolve_seed(flag_value: Optional[int] = None) -> int:
    """
    Pick the master seed: flag, then GAPDEX_SEED, then DEFAULT_SEED
    """
    if flag_value is not None:
        return int(flag_value)

    env_value = os.environ.get(SEED_ENV_VAR)
    if env_value is None or env_value.strip() == "":
        return DEFAULT_SEED

    try:
        return int(env_value)
    except ValueError:
        raise DomainError(f"{SEED_ENV_VAR} must be an integer, got {env_value!r}")


def input_digest(sample: Sample, variance: float) -> Dict[str, float]:
    return {
        'count': sample.n,
        'min': float(sample.values[0]),
        'max': float(sample.values[-1]),
        'mean': sample.mean,
        'variance': variance,
    }


def detect(values: Sequence[float]) -> DetectionOutput:
    """Split, p-value and leading components for one sample"""
    sample = make_sample(values)
    d = decompose(sample)
    split = cluster_index(d, sample)
    return DetectionOutput(
        split=split,
        test=cluster_test(sample.n, min(split.statistic, 1.0)),
        components=tuple(d.top_components(TOP_COMPONENTS)),
        digest=input_digest(sample, d.sample_variance),
    )


def cmd_detect(cfg: RunConfig) -> DetectionOutput:
    if cfg.input_path is None:
        raise DomainError("detect needs --input")
    output = detect(load_series(cfg.input_path, cfg.column))
    logger.info("✓ split after X_(%d): statistic %.6f, p-value %.4g",
                output.split.j, output.split.statistic, output.test.p_value)
    return output


def cmd_simulate(cfg: RunConfig) -> MonteCarloReport:
    sim = SimConfig(
        n=DEFAULT_N if cfg.n is None else cfg.n,
        reps=DEFAULT_REPS if cfg.reps is None else cfg.reps,
        seed=cfg.seed,
        grid=parse_grid(cfg.grid),
    )
    if cfg.half:
        return simulate_half_statistic(sim, side=cfg.side, workers=cfg.workers)
    return simulate_cluster_statistic(sim, workers=cfg.workers)


def _lemma31_indices(n: int) -> Tuple[int, ...]:
    candidates = (n // 2 + 1, int(0.9 * n), n - 10, n - 1)
    return tuple(sorted({i for i in candidates if n / 2 < i <= n - 1}))


def _check_runners(cfg: RunConfig) -> Dict[str, Callable[[], LemmaCheckReport]]:
    def pick(value, default):
        return default if value is None else value

    lemma_n = pick(cfg.n, LEMMA31_N)
    eps_list = (cfg.eps,) if cfg.eps is not None else LEMMA31_EPS

    return {
        'inequalities': verify_inequalities,
        'truncated': verify_truncated_moments,
        'lemma31': lambda: Lemma31Check(
            lemma_n, cfg.i_list or _lemma31_indices(lemma_n), eps_list,
            pick(cfg.reps, LEMMA31_REPS), cfg.seed, cfg.workers).run(),
        'half_limit': lambda: verify_half_limit(
            pick(cfg.n, HALF_LIMIT_N), pick(cfg.reps, HALF_LIMIT_REPS), cfg.seed,
            side=cfg.side, workers=cfg.workers),
        'uniform_ratio': lambda: verify_uniform_ratio(
            pick(cfg.n, UNIFORM_RATIO_N), pick(cfg.reps, UNIFORM_RATIO_REPS), cfg.seed,
            workers=cfg.workers),
        'max_spacing': lambda: max_spacing_scaling(
            cfg.sizes or MAX_SPACING_SIZES, pick(cfg.reps, MAX_SPACING_REPS), cfg.seed,
            workers=cfg.workers),
        'remainder': lambda: verify_remainder_terms(
            cfg.sizes or REMAINDER_SIZES, pick(cfg.reps, REMAINDER_REPS), cfg.seed,
            workers=cfg.workers),
        'power': lambda: verify_power(
            pick(cfg.n, POWER_N), pick(cfg.reps, POWER_REPS), cfg.seed, workers=cfg.workers),
    }


def cmd_verify(cfg: RunConfig) -> List[LemmaCheckReport]:
    if cfg.check != 'all' and cfg.check not in CHECK_NAMES:
        raise DomainError(f"unknown check {cfg.check!r}; choose from {', '.join(CHECK_NAMES)}, all")

    runners = _check_runners(cfg)
    names = CHECK_NAMES if cfg.check == 'all' else (cfg.check,)
    reports = []
    for name in names:
        logger.info("running check %s", name)
        report = runners[name]()
        if report.indeterminate:
            logger.warning("⚠ %s: too few replicates for a verdict", name)
        elif report.overall_pass:
            logger.info("✓ %s passed", name)
        else:
            logger.warning("⚠ %s failed", name)
        reports.append(report)
    return reports


def verification_failed(reports: Sequence[LemmaCheckReport]) -> bool:
    """Indeterminate reports carry no verdict and never fail the run"""
    return any(not r.overall_pass and not r.indeterminate for r in reports)


def cmd_project(cfg: RunConfig) -> DetectionOutput:
    if cfg.input_path is None:
        raise DomainError("project needs --input")
    table = load_table(cfg.input_path)
    result: ProjectionResult = project_scan(table.rows, cfg.directions, cfg.seed)
    logger.warning("⚠ p-value is per direction, not corrected for %d directions tried",
                   result.directions_tried)
    return DetectionOutput(
        split=result.split,
        test=result.test,
        components=tuple(result.decomposition.top_components(TOP_COMPONENTS)),
        digest=input_digest(result.sample, result.decomposition.sample_variance),
        projection=result.to_dict(),
    )


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows([[repr(v) if isinstance(v, float) else v for v in row] for row in rows])
    return buffer.getvalue()


def _flatten(payload: dict, prefix: str = '') -> List[Tuple[str, object]]:
    items: List[Tuple[str, object]] = []
    for key in sorted(payload):
        value = payload[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            items.extend(_flatten(value, name + '.'))
        elif isinstance(value, list):
            items.append((name, json.dumps(value)))
        else:
            items.append((name, value))
    return items


def render(result, output_format: str) -> str:
    if output_format == 'json':
        if isinstance(result, list):
            return dumps_report({
                'checks': [r.to_dict() for r in result],
                'overall_pass': not verification_failed(result),
            }) + '\n'
        return dumps_report(result.to_dict()) + '\n'

    if isinstance(result, list):
        rows = [
            [r.name, json.dumps(convert_to_native(c.parameters), sort_keys=True), c.kind,
             float(c.observed), float(c.reference), c.standard_error, c.passed]
            for r in result for c in r.cases
        ]
        return _csv_text(['check', 'parameters', 'kind', 'observed', 'reference',
                          'standard_error', 'passed'], rows)
    if isinstance(result, MonteCarloReport):
        return _csv_text(['x', 'empirical_cdf', 'reference_cdf'],
                         [[row['x'], row['empirical_cdf'], row['reference_cdf']] for row in result.table()])
    return _csv_text(['key', 'value'], _flatten(result.to_dict()))


def _int_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(',') if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='gapdex', description='Spacings-based cluster detection')
    parser.add_argument('--verbose', action='store_true', help='Debug logging on stderr')
    sub = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None, help='Master seed (default: $GAPDEX_SEED, else 0)')
    common.add_argument('--format', dest='output_format', choices=('json', 'csv'), default='json')
    common.add_argument('--workers', type=int, default=DEFAULT_WORKERS, help='Process pool size')
    common.add_argument('--verbose', action='store_true', default=argparse.SUPPRESS)

    detect_p = sub.add_parser('detect', parents=[common], help='Cluster split of a univariate series')
    detect_p.add_argument('--input', dest='input_path', required=True)
    detect_p.add_argument('--column', default=None, help='Column name or 0-based index')

    simulate_p = sub.add_parser('simulate', parents=[common], help='Null law of the statistic')
    simulate_p.add_argument('--n', type=int, default=None)
    simulate_p.add_argument('--reps', type=int, default=None)
    simulate_p.add_argument('--grid', default=DEFAULT_GRID, help='start:stop:step')
    simulate_p.add_argument('--half', action='store_true', help='One-sided statistic instead')
    simulate_p.add_argument('--side', choices=('upper', 'lower'), default='upper')

    verify_p = sub.add_parser('verify', parents=[common], help='Run verification checks')
    verify_p.add_argument('--check', default='all', help=f"One of {', '.join(CHECK_NAMES)}, all")
    verify_p.add_argument('--n', type=int, default=None)
    verify_p.add_argument('--reps', type=int, default=None)
    verify_p.add_argument('--eps', type=float, default=None)
    verify_p.add_argument('--i', dest='i_list', type=_int_list, default=(), help='Comma-separated indices')
    verify_p.add_argument('--sizes', type=_int_list, default=(), help='Comma-separated sample sizes')
    verify_p.add_argument('--side', choices=('upper', 'lower'), default='upper')

    project_p = sub.add_parser('project', parents=[common], help='Best random 1-D projection')
    project_p.add_argument('--input', dest='input_path', required=True)
    project_p.add_argument('--directions', type=int, default=DEFAULT_DIRECTIONS)

    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    values['seed'] = resolve_seed(args.seed)
    return RunConfig(**values)


COMMANDS = {
    'detect': cmd_detect,
    'simulate': cmd_simulate,
    'verify': cmd_verify,
    'project': cmd_project,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(message)s', stream=sys.stderr, force=True)

    try:
        cfg = run_config(args)
        result = COMMANDS[cfg.command](cfg)
    except GapdexError as exc:
        logger.error("error: %s", exc)
        return exc.exit_code
    except OSError as exc:
        logger.error("error: %s", exc)
        return EXIT_USAGE

    sys.stdout.write(render(result, cfg.output_format))
    if cfg.command == 'verify' and verification_failed(result):
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
