import sys

from edgeideal.cli import main

sys.exit(main())
