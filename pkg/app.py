#!/usr/bin/env python3
import sys

from edgeideal.cli import main

sys.exit(main())
