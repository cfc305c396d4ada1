import sys

from weightedproj.cli import main

sys.exit(main())
