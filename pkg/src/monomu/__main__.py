import sys

from monomu.cli import main

sys.exit(main())
