import argparse
import logging
import sys

from src.config import LOG_LEVEL, OUTPUT_DIR
from src.core.scenario import run_scenario
from src.schemas.enums import Task

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="porolab",
        description="1D two-solute poroelastic model: exact solutions, IBVP solver and residual checks",
    )
    parser.add_argument("task", choices=[task.value for task in Task], help="scenario task to run")
    parser.add_argument("--config", required=True, help="scenario JSON document")
    parser.add_argument("--out-dir", default=OUTPUT_DIR, help="output root (artifacts go to <out-dir>/<name>/)")
    parser.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    parser.add_argument("--parallel", action="store_true", help="run independent sweep points concurrently")
    parser.add_argument("--log-level", default=LOG_LEVEL, help="logging level (default from POROLAB_LOG_LEVEL)")
    return parser


def main(argv: list[str] | None = None) -> int:
    """porolab <task> --config <file> [--out-dir <dir>] [--seed N] [--parallel]

    종료 코드: 0 성공, 1 검증/입력 오류, 2 수용 검사 실패
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    outcome = run_scenario(args.config, args.out_dir, seed=args.seed, parallel=args.parallel, task=args.task)
    for path in outcome.artifacts:
        logger.debug("wrote %s", path)
    if outcome.status and outcome.message:
        print(outcome.message, file=sys.stderr)
    return outcome.status


if __name__ == "__main__":
    sys.exit(main())
