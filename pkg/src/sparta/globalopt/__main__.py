import sys

from sparta.globalopt.cli import main

sys.exit(main())
