#!/usr/bin/env python3

import sys
import warnings

from pyoptcurve.cli import run_cli


warnings.filterwarnings("ignore", category=DeprecationWarning)


if __name__ == '__main__':
    sys.exit(run_cli(sys.argv[1:]))
