import sys

from antipode.harness.cli import main

sys.exit(main())
