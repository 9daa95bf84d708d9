import sys
import logging

from qconformal.argparse import UsageError, parse_args, suite_config
from qconformal.printer import to_string
from qconformal.utils import read_config
from qconformal.waves import ExpPoly
from qconformal.verify import run_suite

logger = logging.getLogger(__name__)


def main(args) -> int:
    logging.basicConfig(
        format='%(asctime)s - %(levelname)s - %(name)s - %(message)s',
        level=logging.CRITICAL if args.silent else logging.INFO
    )

    try:
        file_config = read_config(args.config) if args.config else None
        cfg = suite_config(args, file_config)
        if cfg.poly_spec:
            ExpPoly.parse(cfg.poly_spec)
    except (UsageError, ValueError) as e:
        logger.error('%s', e)
        print(f'verify: error: {e}', file=sys.stderr)
        return 2

    reports, code = run_suite(cfg)
    output = to_string(reports, format=cfg.format)

    if args.out is not None:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(output)
    else:
        sys.stdout.write(output)
        sys.stdout.flush()
    return code


if __name__ == '__main__':
    sys.exit(parse_args(main))
