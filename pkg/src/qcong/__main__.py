import sys

from qcong.harness.cli import main

sys.exit(main())
