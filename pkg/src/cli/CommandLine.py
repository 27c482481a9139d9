import argparse
import logging
import sys
from dataclasses import replace
from typing import List, Optional

from ..config.Configs import GridConfig, MasterConfig
from ..config.loaders.ConfigLoader import LOG_LEVELS, ConfigLoader
from ..core.errors.Errors import SrdError
from ..gaussian.GaussianBounds import GaussianSpec
from .Commands import build_engine, cmd_analyze, cmd_curves, cmd_gaussian, cmd_oracle, parse_bounds
from .OutputWriter import CURVE_HEADER, curve_rows, dumps, write_curves

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger(__name__)


def setup_logging(level: str = "INFO", log_file: Optional[str] = None) -> None:
    """日志写到 stderr（可选再写文件），stdout 只输出文档"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))
    logging.basicConfig(level=getattr(logging, level.upper()), format=LOG_FORMAT,
                        handlers=handlers, force=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='srd',
        description='Rate-distortion bounds for distortion measures with one-step memory',
    )
    parser.add_argument('--log-level', choices=LOG_LEVELS, default=None,
                        help='overrides system.log_level of the problem file')
    sub = parser.add_subparsers(dest='command', required=True)

    analyze = sub.add_parser('analyze', help='memory span, feasible distortion range and convexity report')
    analyze.add_argument('file')
    analyze.add_argument('--dump-normalized', metavar='PATH',
                         help='write the problem with presets expanded to an explicit tensor')

    curves = sub.add_parser('curves', help='bound curves as CSV plus metadata.json')
    curves.add_argument('file')
    curves.add_argument('--bounds', default='R1,R2',
                        help='comma separated subset of R_I1,R_I2,ENV_I1,ENV_I2,R_O1,R_O2,THM3,R1,R2')
    curves.add_argument('--grid', help='start:stop:count, overrides the grid section')
    curves.add_argument('--seed', type=int, help='overrides solver.seed')
    curves.add_argument('--out', required=True, metavar='DIR')
    curves.add_argument('--verify', action='store_true', help='replay every witness kernel')
    curves.add_argument('--strict', action='store_true',
                        help='exit 3 on non-converged points or failed replays')

    oracle = sub.add_parser('oracle', help='exhaustive finite-blocklength optimum')
    oracle.add_argument('file')
    oracle.add_argument('--n', type=int, required=True)
    oracle.add_argument('--messages', type=int, required=True)
    oracle.add_argument('--no-bounds', action='store_true', help='skip R1/R2 in the sandwich check')
    oracle.add_argument('--no-trend', action='store_true', help='skip D*(n) at fixed rate')

    gaussian = sub.add_parser('gaussian', help='closed-form Gaussian inner bound')
    gaussian.add_argument('--sigma2', type=float, required=True)
    gaussian.add_argument('--gamma', type=float, required=True)
    gaussian.add_argument('--grid', default='0:4:81')
    gaussian.add_argument('--out', metavar='DIR', help='write R_I2.csv and metadata.json instead of stdout')
    return parser


def _load(args) -> MasterConfig:
    config = ConfigLoader.load_from_file(args.file)
    system = config.system
    setup_logging(args.log_level or system.log_level, system.log_file)
    return config


def _run(args) -> int:
    if args.command == 'analyze':
        config = _load(args)
        document = cmd_analyze(config)
        if args.dump_normalized:
            ConfigLoader.dump_normalized(config, args.dump_normalized)
            logger.info(f"normalized problem written to {args.dump_normalized}")
        print(dumps(document))
        return 0

    if args.command == 'curves':
        config = _load(args)
        if args.grid:
            config = replace(config, grid=GridConfig.parse(args.grid))
        if args.seed is not None:
            config = replace(config, solver=replace(config.solver, seed=args.seed))
        summary = cmd_curves(config, parse_bounds(args.bounds), args.out,
                             verify=args.verify, strict=args.strict, engine=build_engine(config))
        print(dumps(summary))
        return 0

    if args.command == 'oracle':
        config = _load(args)
        document = cmd_oracle(config, args.n, args.messages,
                              with_bounds=not args.no_bounds, with_trend=not args.no_trend,
                              engine=build_engine(config))
        print(dumps(document))
        return 0

    setup_logging(args.log_level or 'INFO')
    spec = GaussianSpec(args.sigma2, args.gamma)
    curve = cmd_gaussian(spec, GridConfig.parse(args.grid).values())
    if args.out:
        write_curves([curve], args.out, {'bounds': {curve.bound_id.value: curve.metadata}})
    else:
        sys.stdout.write(','.join(CURVE_HEADER) + '\n')
        for row in curve_rows(curve):
            sys.stdout.write(','.join(row) + '\n')
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    """返回进程退出码：0 成功，1 其它错误，2 校验错误，3 未收敛，4 规模上限"""
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except SrdError as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception(f"unexpected failure in {args.command}")
        print(f"error: {e}", file=sys.stderr)
        return 1
