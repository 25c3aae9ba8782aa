import sys

from plapflow.cli import main

sys.exit(main())
